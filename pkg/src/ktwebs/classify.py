"""Orbit classification of the six-parameter tensor families.

The decision procedure is purely algebraic.  Exact signs and vanishing of
the fundamental invariants (gamma, delta) in the Euclidean plane and
(gamma, Z+, Z-) in the Minkowski plane, refined on the degenerate strata
by the surface membership predicates, select one of five Euclidean
classes E1..E5 or fourteen Minkowski classes M1..M14.  Each class knows
the separable coordinate web it generates (if any), the expected rank of
the generator matrix on the class, and whether its members are
characteristic.

The singular set of a tensor, the locus where its eigenvalues fail to be
real and simple (discriminant <= 0), is described symbolically per class
with exact defining data, so that the description can be cross-checked
pointwise against the discriminant polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
import math

from .core import KTParams, MetricSignature, SignatureError, ktparams
from .groups import generator_rank
from .invariants import (
    EuclideanInvariants,
    MinkowskiInvariants,
    SurfaceFlags,
    euclid_invariants,
    mink_invariants,
    surface_flags,
)
from .linalg import as_rational, exact_sqrt, rat_sign


@dataclass(frozen=True)
class OrbitClass:
    label: str
    web_name: str
    sc_labels: tuple[str, ...]
    expected_rank: int
    characteristic: bool


ORBIT_CLASSES: dict[str, OrbitClass] = {
    c.label: c
    for c in (
        OrbitClass("E1", "elliptic-hyperbolic coordinates", (), 6, True),
        OrbitClass("E2", "parabolic coordinates", (), 5, True),
        OrbitClass("E3", "polar coordinates", (), 4, True),
        OrbitClass("E4", "Cartesian coordinates", (), 3, True),
        OrbitClass("E5", "none (multiples of the metric)", (), 1, False),
        OrbitClass("M1", "elliptic coordinates of type I", ("SC9",), 6, True),
        OrbitClass("M2", "hyperbolic coordinates of type I", ("SC8",), 6, True),
        OrbitClass("M3", "elliptic coordinates of type II", ("SC5", "SC10"), 6, True),
        OrbitClass("M4", "hyperbolic coordinates of type II", ("SC6",), 5, True),
        OrbitClass("M5", "hyperbolic coordinates of type III", ("SC7",), 5, True),
        OrbitClass("M6", "polar coordinates", ("SC2",), 4, True),
        OrbitClass("M7", "parabolic coordinates of type I, first web", ("SC4",), 5, True),
        OrbitClass("M8", "parabolic coordinates of type I, second web", ("SC4",), 5, True),
        OrbitClass("M9", "parabolic coordinates of type II", ("SC3",), 4, True),
        OrbitClass("M10", "none", (), 3, False),
        OrbitClass("M11", "Cartesian coordinates", ("SC1",), 3, True),
        OrbitClass("M12", "none", (), 3, False),
        OrbitClass("M13", "none", (), 2, False),
        OrbitClass("M14", "none (multiples of the metric)", (), 1, False),
    )
}

EUCLIDEAN_LABELS = ("E1", "E2", "E3", "E4", "E5")
MINKOWSKI_LABELS = tuple(f"M{i}" for i in range(1, 15))


# -- singular set descriptions -------------------------------------------------


class SingularVariant(Enum):
    EMPTY = "empty"
    ONE_POINT = "one_point"
    TWO_POINTS = "two_points"
    LINE = "line"
    TWO_ORTHOGONAL_LINES = "two_orthogonal_lines"
    STRIP = "strip"
    STRIP_PLUS_ORTHOGONAL_LINE = "strip_plus_orthogonal_line"
    TWO_STRIPS_MINUS_INTERSECTION = "two_strips_minus_intersection"
    HALF_PLANE = "half_plane"
    TWO_OPPOSITE_QUADRANTS = "two_opposite_quadrants"
    WHOLE_PLANE = "whole_plane"


# Null-direction geometry in the (u, v) plane: the coordinate functions
# "sum" = u + v and "diff" = v - u are constant along the two null
# directions of the Minkowski plane.
AXIS_SUM = "sum"
AXIS_DIFF = "diff"


def _axis_value(axis: str, u, v):
    return u + v if axis == AXIS_SUM else v - u


@dataclass(frozen=True)
class NullLine:
    """The line {axis(u, v) = offset}."""

    axis: str
    offset: Fraction


@dataclass(frozen=True)
class NullStrip:
    """The closed strip {(axis(u, v) - center)^2 <= halfwidth_sq}."""

    axis: str
    center: Fraction
    halfwidth_sq: Fraction


@dataclass(frozen=True)
class HalfPlaneSpec:
    """The closed half-plane {side * (axis(u, v) - boundary) >= 0}."""

    axis: str
    boundary: Fraction
    side: int


@dataclass(frozen=True)
class QuadrantSpec:
    """Two opposite closed quadrants cut out by the null lines
    {u + v = sum_offset} and {v - u = diff_offset}:
    {orientation * (u+v-sum_offset) * (v-u-diff_offset) <= 0}."""

    sum_offset: Fraction
    diff_offset: Fraction
    orientation: int


@dataclass(frozen=True)
class SingularSetDescription:
    """Symbolic description of {discriminant <= 0}, with exact data.

    ``plane_sign`` is meaningful for WHOLE_PLANE only: 0 when the
    discriminant vanishes identically, -1 when it is negative everywhere.
    For TWO_POINTS the points solve, in coordinates centered at
    ``center``, the system X*Y = centered_product and
    Y^2 - X^2 = centered_difference; ``points`` holds them exactly when
    they are rational, and :meth:`float_points` always recovers them
    numerically.
    """

    variant: SingularVariant
    points: tuple[tuple[Fraction, Fraction], ...] = ()
    center: tuple[Fraction, Fraction] | None = None
    centered_product: Fraction | None = None
    centered_difference: Fraction | None = None
    lines: tuple[NullLine, ...] = ()
    strips: tuple[NullStrip, ...] = ()
    half_plane: HalfPlaneSpec | None = None
    quadrants: QuadrantSpec | None = None
    plane_sign: int = 0

    # -- exact pointwise sign ---------------------------------------------

    def discriminant_sign(self, u, v) -> int:
        """Predicted exact sign of the discriminant at a rational point."""
        u = as_rational(u)
        v = as_rational(v)
        var = self.variant
        if var is SingularVariant.EMPTY:
            return 1
        if var is SingularVariant.WHOLE_PLANE:
            return self.plane_sign
        if var is SingularVariant.ONE_POINT:
            return 0 if (u, v) == self.points[0] else 1
        if var is SingularVariant.TWO_POINTS:
            cx, cy = self.center
            x = u - cx
            y = v - cy
            on_set = (
                x * y == self.centered_product
                and y * y - x * x == self.centered_difference
            )
            return 0 if on_set else 1
        if var is SingularVariant.LINE:
            return 0 if _axis_value(self.lines[0].axis, u, v) == self.lines[0].offset else 1
        if var is SingularVariant.TWO_ORTHOGONAL_LINES:
            on_any = any(
                _axis_value(line.axis, u, v) == line.offset for line in self.lines
            )
            return 0 if on_any else 1
        if var is SingularVariant.STRIP:
            return self._strip_sign(self.strips[0], u, v)
        if var is SingularVariant.STRIP_PLUS_ORTHOGONAL_LINE:
            line = self.lines[0]
            if _axis_value(line.axis, u, v) == line.offset:
                return 0
            return self._strip_sign(self.strips[0], u, v)
        if var is SingularVariant.TWO_STRIPS_MINUS_INTERSECTION:
            s1 = self._strip_sign(self.strips[0], u, v)
            s2 = self._strip_sign(self.strips[1], u, v)
            return s1 * s2
        if var is SingularVariant.HALF_PLANE:
            hp = self.half_plane
            t = hp.side * (_axis_value(hp.axis, u, v) - hp.boundary)
            return -rat_sign(t)
        if var is SingularVariant.TWO_OPPOSITE_QUADRANTS:
            q = self.quadrants
            a = u + v - q.sum_offset
            b = v - u - q.diff_offset
            return q.orientation * rat_sign(a) * rat_sign(b)
        raise ValueError(f"unknown variant {var!r}")

    @staticmethod
    def _strip_sign(strip: NullStrip, u, v) -> int:
        a = _axis_value(strip.axis, u, v) - strip.center
        return rat_sign(a * a - strip.halfwidth_sq)

    # -- numeric points ------------------------------------------------------

    def float_points(self) -> list[tuple[float, float]]:
        """Numeric coordinates of the singular points (point variants only)."""
        if self.points:
            return [(float(p[0]), float(p[1])) for p in self.points]
        if self.variant is not SingularVariant.TWO_POINTS:
            return []
        cx, cy = float(self.center[0]), float(self.center[1])
        c1 = float(self.centered_product)
        c2 = float(self.centered_difference)
        w = math.hypot(c2, 2 * c1)
        if c1 == 0.0:
            if c2 > 0:
                x, y = 0.0, math.sqrt(c2)
            else:
                x, y = math.sqrt(-c2), 0.0
        else:
            x = math.sqrt((w - c2) / 2)
            y = c1 / x
        return [(cx + x, cy + y), (cx - x, cy - y)]

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        out: dict = {"variant": self.variant.value}
        if self.points:
            out["points"] = [[str(x), str(y)] for x, y in self.points]
        if self.center is not None:
            out["center"] = [str(self.center[0]), str(self.center[1])]
        if self.centered_product is not None:
            out["centered_product"] = str(self.centered_product)
        if self.centered_difference is not None:
            out["centered_difference"] = str(self.centered_difference)
        if self.lines:
            out["lines"] = [
                {"axis": ln.axis, "offset": str(ln.offset)} for ln in self.lines
            ]
        if self.strips:
            out["strips"] = [
                {
                    "axis": st.axis,
                    "center": str(st.center),
                    "halfwidth_sq": str(st.halfwidth_sq),
                }
                for st in self.strips
            ]
        if self.half_plane is not None:
            hp = self.half_plane
            out["half_plane"] = {
                "axis": hp.axis,
                "boundary": str(hp.boundary),
                "side": hp.side,
            }
        if self.quadrants is not None:
            q = self.quadrants
            out["quadrants"] = {
                "sum_offset": str(q.sum_offset),
                "diff_offset": str(q.diff_offset),
                "orientation": q.orientation,
            }
        if self.variant is SingularVariant.WHOLE_PLANE:
            out["plane_sign"] = self.plane_sign
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SingularSetDescription":
        frac = Fraction
        return cls(
            variant=SingularVariant(data["variant"]),
            points=tuple(
                (frac(x), frac(y)) for x, y in data.get("points", ())
            ),
            center=(
                (frac(data["center"][0]), frac(data["center"][1]))
                if "center" in data
                else None
            ),
            centered_product=(
                frac(data["centered_product"])
                if "centered_product" in data
                else None
            ),
            centered_difference=(
                frac(data["centered_difference"])
                if "centered_difference" in data
                else None
            ),
            lines=tuple(
                NullLine(d["axis"], frac(d["offset"]))
                for d in data.get("lines", ())
            ),
            strips=tuple(
                NullStrip(d["axis"], frac(d["center"]), frac(d["halfwidth_sq"]))
                for d in data.get("strips", ())
            ),
            half_plane=(
                HalfPlaneSpec(
                    data["half_plane"]["axis"],
                    frac(data["half_plane"]["boundary"]),
                    int(data["half_plane"]["side"]),
                )
                if "half_plane" in data
                else None
            ),
            quadrants=(
                QuadrantSpec(
                    frac(data["quadrants"]["sum_offset"]),
                    frac(data["quadrants"]["diff_offset"]),
                    int(data["quadrants"]["orientation"]),
                )
                if "quadrants" in data
                else None
            ),
            plane_sign=int(data.get("plane_sign", 0)),
        )


# -- decision procedure ---------------------------------------------------------


def _label_of(k: KTParams) -> tuple[str, object, SurfaceFlags]:
    if k.signature is MetricSignature.EUCLIDEAN:
        inv = euclid_invariants(k)
        flags = surface_flags(k)
        if inv.gamma != 0:
            label = "E1" if inv.delta != 0 else "E3"
        elif k.alpha != 0 or k.beta != 0:
            label = "E2"
        elif k.A != k.B or k.C != 0:
            label = "E4"
        else:
            label = "E5"
        return label, inv, flags

    inv = mink_invariants(k)
    flags = surface_flags(k)
    zp = rat_sign(inv.z_plus)
    zm = rat_sign(inv.z_minus)
    if inv.gamma != 0:
        if zp > 0 and zm > 0:
            label = "M1"
        elif zp * zm < 0:
            label = "M2"
        elif zp < 0 and zm < 0:
            label = "M3"
        elif zp == 0 and zm == 0:
            label = "M6"
        elif zp + zm > 0:
            label = "M4"
        else:
            label = "M5"
    else:
        asq = k.alpha * k.alpha
        bsq = k.beta * k.beta
        if asq != bsq:
            label = "M7" if asq > bsq else "M8"
        elif k.alpha != 0 or k.beta != 0:
            on_s4 = flags.in_s4_c1 or flags.in_s4_c2
            label = "M10" if on_s4 else "M9"
        else:
            p = rat_sign(inv.p_cart)
            if p > 0:
                label = "M11"
            elif p < 0:
                label = "M12"
            elif k.A + k.B != 0 or k.C != 0:
                label = "M13"
            else:
                label = "M14"
    return label, inv, flags


def classify_label(k: KTParams) -> str:
    """Just the class label; cheaper than :func:`classify`."""
    return _label_of(k)[0]


@dataclass(frozen=True)
class ClassificationReport:
    orbit: OrbitClass
    invariants: EuclideanInvariants | MinkowskiInvariants
    surface_flags: SurfaceFlags
    rank: int
    is_zero: bool
    singular_set: SingularSetDescription


def classify(k: KTParams) -> ClassificationReport:
    """Full classification: class, invariants, flags, rank, singular set."""
    label, inv, flags = _label_of(k)
    return ClassificationReport(
        orbit=ORBIT_CLASSES[label],
        invariants=inv,
        surface_flags=flags,
        rank=generator_rank(k),
        is_zero=k.is_zero,
        singular_set=singular_set(k),
    )


def same_orbit(k1: KTParams, k2: KTParams) -> bool:
    """Whether two tensors lie on the same orbit (equal class labels)."""
    if k1.signature is not k2.signature:
        raise SignatureError("cannot compare tensors of different signatures")
    return classify_label(k1) == classify_label(k2)


# -- singular sets ---------------------------------------------------------------


def _exact_two_points(center, c1: Fraction, c2: Fraction):
    """Rational solutions of X*Y = c1, Y^2 - X^2 = c2, when they exist."""
    w = exact_sqrt(c2 * c2 + 4 * c1 * c1)
    if w is None:
        return ()
    if c1 == 0:
        if c2 > 0:
            y = exact_sqrt(c2)
            if y is None:
                return ()
            x = Fraction(0)
        else:
            x = exact_sqrt(-c2)
            if x is None:
                return ()
            y = Fraction(0)
    else:
        x = exact_sqrt((w - c2) / 2)
        if x is None or x == 0:
            return ()
        y = c1 / x
    cx, cy = center
    return ((cx + x, cy + y), (cx - x, cy - y))


def singular_set(k: KTParams) -> SingularSetDescription:
    """Symbolic description of the locus where the eigenvalues of ``k``
    fail to be real and simple."""
    label, inv, _ = _label_of(k)
    V = SingularVariant

    if k.signature is MetricSignature.EUCLIDEAN:
        if label == "E1":
            g = inv.gamma
            center = (-k.beta / g, -k.alpha / g)
            c1 = (k.alpha * k.beta + g * k.C) / (g * g)
            c2 = (k.alpha * k.alpha - k.beta * k.beta - g * (k.A - k.B)) / (g * g)
            return SingularSetDescription(
                V.TWO_POINTS,
                points=_exact_two_points(center, c1, c2),
                center=center,
                centered_product=c1,
                centered_difference=c2,
            )
        if label == "E2":
            norm = k.alpha * k.alpha + k.beta * k.beta
            half = (k.B - k.A) / 2
            x = (k.alpha * k.C - k.beta * half) / norm
            y = (k.beta * k.C + k.alpha * half) / norm
            return SingularSetDescription(V.ONE_POINT, points=((x, y),))
        if label == "E3":
            g = inv.gamma
            return SingularSetDescription(
                V.ONE_POINT, points=((-k.beta / g, -k.alpha / g),)
            )
        if label == "E4":
            return SingularSetDescription(V.EMPTY)
        return SingularSetDescription(V.WHOLE_PLANE, plane_sign=0)

    # Minkowski.  The discriminant factors as P(u+v) * Q(v-u) with
    #   P(s) = gamma s^2 + 2 (alpha+beta) s + (A+B+2C)
    #   Q(r) = gamma r^2 + 2 (alpha-beta) r + (A+B-2C)
    # and Z- / Z+ control the roots of P / Q respectively.
    g = inv.gamma
    if g != 0:
        sum_center = -(k.alpha + k.beta) / g
        diff_center = -(k.alpha - k.beta) / g
        sum_strip = NullStrip(AXIS_SUM, sum_center, -inv.z_minus / (g * g))
        diff_strip = NullStrip(AXIS_DIFF, diff_center, -inv.z_plus / (g * g))
        sum_line = NullLine(AXIS_SUM, sum_center)
        diff_line = NullLine(AXIS_DIFF, diff_center)
        if label == "M1":
            return SingularSetDescription(V.EMPTY)
        if label == "M2":
            strip = diff_strip if inv.z_plus < 0 else sum_strip
            return SingularSetDescription(V.STRIP, strips=(strip,))
        if label == "M3":
            return SingularSetDescription(
                V.TWO_STRIPS_MINUS_INTERSECTION, strips=(sum_strip, diff_strip)
            )
        if label == "M4":
            line = diff_line if inv.z_plus == 0 else sum_line
            return SingularSetDescription(V.LINE, lines=(line,))
        if label == "M5":
            if inv.z_plus == 0:
                return SingularSetDescription(
                    V.STRIP_PLUS_ORTHOGONAL_LINE,
                    lines=(diff_line,),
                    strips=(sum_strip,),
                )
            return SingularSetDescription(
                V.STRIP_PLUS_ORTHOGONAL_LINE,
                lines=(sum_line,),
                strips=(diff_strip,),
            )
        # M6
        return SingularSetDescription(
            V.TWO_ORTHOGONAL_LINES, lines=(sum_line, diff_line)
        )

    if label in ("M7", "M8"):
        sum_offset = -(k.A + k.B + 2 * k.C) / (2 * (k.alpha + k.beta))
        diff_offset = -(k.A + k.B - 2 * k.C) / (2 * (k.alpha - k.beta))
        orientation = rat_sign(k.alpha * k.alpha - k.beta * k.beta)
        return SingularSetDescription(
            V.TWO_OPPOSITE_QUADRANTS,
            quadrants=QuadrantSpec(sum_offset, diff_offset, orientation),
        )
    if label == "M9":
        if k.alpha + k.beta != 0:
            # Q is a nonzero constant; P is genuinely linear in u + v.
            const = k.A + k.B - 2 * k.C
            boundary = -(k.A + k.B + 2 * k.C) / (2 * (k.alpha + k.beta))
            side = -rat_sign(const * (k.alpha + k.beta))
            return SingularSetDescription(
                V.HALF_PLANE,
                half_plane=HalfPlaneSpec(AXIS_SUM, boundary, side),
            )
        const = k.A + k.B + 2 * k.C
        boundary = -(k.A + k.B - 2 * k.C) / (2 * (k.alpha - k.beta))
        side = -rat_sign(const * (k.alpha - k.beta))
        return SingularSetDescription(
            V.HALF_PLANE,
            half_plane=HalfPlaneSpec(AXIS_DIFF, boundary, side),
        )
    if label == "M11":
        return SingularSetDescription(V.EMPTY)
    if label == "M12":
        return SingularSetDescription(V.WHOLE_PLANE, plane_sign=-1)
    # M10, M13, M14: the discriminant vanishes identically.
    return SingularSetDescription(V.WHOLE_PLANE, plane_sign=0)


# -- representatives ---------------------------------------------------------------


_EUC = MetricSignature.EUCLIDEAN
_MIN = MetricSignature.MINKOWSKI

_REPRESENTATIVE_COEFFS: dict[str, tuple[tuple[int, ...], ...]] = {
    "E1": ((0, 0, 1, 0, 0, 1),),
    "E2": ((0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 1, 0)),
    "E3": ((0, 0, 0, 0, 0, 1),),
    "E4": ((1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0)),
    "E5": ((1, 1, 0, 0, 0, 0),),
    "M1": ((0, 1, 0, 0, 0, 1),),
    "M2": ((0, 0, 1, 0, 0, 1),),
    "M3": ((0, -1, 0, 0, 0, 1),),
    "M4": ((1, 1, 1, 0, 0, 1), (1, 1, -1, 0, 0, 1)),
    "M5": ((-1, -1, -1, 0, 0, 1), (-1, -1, 1, 0, 0, 1)),
    "M6": ((0, 0, 0, 0, 0, 1),),
    "M7": ((0, 0, 0, 1, 0, 0),),
    "M8": ((0, 0, 0, 0, 1, 0),),
    "M9": ((1, 1, 0, 1, 1, 0), (1, 1, -1, 1, 1, 0)),
    "M10": ((0, 0, 0, 1, 1, 0),),
    "M11": ((1, 0, 0, 0, 0, 0),),
    "M12": ((0, 0, 1, 0, 0, 0),),
    "M13": ((1, 1, 1, 0, 0, 0),),
    "M14": ((1, -1, 0, 0, 0, 0),),
}


def representative(label: str) -> list[KTParams]:
    """The catalogued representative tensors for a class label."""
    if label not in ORBIT_CLASSES:
        raise KeyError(f"unknown class label {label!r}")
    sig = _EUC if label.startswith("E") else _MIN
    return [ktparams(sig, *coeffs) for coeffs in _REPRESENTATIVE_COEFFS[label]]


def atlas() -> list[tuple[str, KTParams]]:
    """All catalogued representatives as (label, tensor) pairs."""
    out = []
    for label in EUCLIDEAN_LABELS + MINKOWSKI_LABELS:
        for k in representative(label):
            out.append((label, k))
    return out
