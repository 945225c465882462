"""The web-preserving transformation group acting on the tensor family.

Six one-parameter subgroups act on the six-parameter family: the two
translations of the plane, the rotation (Euclidean) or boost (Minkowski),
the dilatation, the addition of a multiple of the metric, and the
rescaling of the whole tensor.  Finite actions of the first four are
computed by exact polynomial substitution: transform the coordinates,
conjugate the component matrix by the Jacobian, and read the six
parameters back off the resulting component polynomials.  Rotations and
boosts are parametrized rationally so that exact inputs give exact
outputs.

Parameter conventions for :func:`apply_finite`:

* ``V1`` / ``V2``: translation distance along the first / second
  coordinate (identity at 0, parameters add).
* ``V3``: rotation through angle ``2*atan(t/2)``, or boost through
  rapidity ``2*atanh(t/2)``; ``t`` agrees with the angle/rapidity to
  second order near 0 (identity at 0).  Boosts require ``|t| < 1``.
  The rotation angle pi is not reached by any ``t``; it is available
  separately as :func:`apply_half_turn`.
* ``V4``: dilatation scale factor, must be positive (identity at 1,
  parameters multiply).
* ``V5``: coefficient of the added metric multiple (identity at 0).
* ``V6``: overall scale factor, must be nonzero (identity at 1).
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .core import KTParams, MetricSignature, component_polys
from .linalg import RatMatrix, RationalLike, as_rational, rat_rank, solve_linear
from .poly import Poly


class GeneratorId(Enum):
    V1 = "V1"
    V2 = "V2"
    V3 = "V3"
    V4 = "V4"
    V5 = "V5"
    V6 = "V6"


class DiscreteId(Enum):
    R0 = "R0"          # change of sign of the tensor
    R1 = "R1"          # C -> -C, alpha -> -alpha (reflection of the second coordinate)
    R2 = "R2"          # C -> -C, beta -> -beta (reflection of the first coordinate)
    RSWAP = "RSwap"    # A <-> B, alpha <-> beta (coordinate exchange / signature flip)


GENERATOR_ORDER = (
    GeneratorId.V1,
    GeneratorId.V2,
    GeneratorId.V3,
    GeneratorId.V4,
    GeneratorId.V5,
    GeneratorId.V6,
)


class ParameterError(ValueError):
    """Raised for group parameters outside their admissible range."""


class FamilyClosureError(RuntimeError):
    """A transformed tensor failed to land back in the six-parameter family.

    This would falsify the construction; it is checked on every finite
    action and should never trigger.
    """


class BracketDecompositionError(RuntimeError):
    """A Lie bracket failed to decompose over the generator span."""


# -- infinitesimal generators -------------------------------------------------

_VARS = ("A", "B", "C", "alpha", "beta", "gamma")


def _lin(const=0, **coeffs) -> Poly:
    terms = {(0,) * 6: as_rational(const)}
    for name, c in coeffs.items():
        idx = _VARS.index(name)
        mono = tuple(int(i == idx) for i in range(6))
        terms[mono] = as_rational(c)
    return Poly(6, terms)


@lru_cache(maxsize=None)
def generator_polys(sig: MetricSignature) -> tuple[tuple[Poly, ...], ...]:
    """Components of V1..V6 as polynomials in the six coordinates,
    ordered (dA, dB, dC, dalpha, dbeta, dgamma)."""
    zero = Poly.zero(6)
    if sig is MetricSignature.EUCLIDEAN:
        v1 = (zero, _lin(beta=-2), _lin(alpha=1), zero, _lin(gamma=-1), zero)
        v2 = (_lin(alpha=-2), zero, _lin(beta=1), _lin(gamma=-1), zero, zero)
        v3 = (_lin(C=-2), _lin(C=2), _lin(A=1, B=-1), _lin(beta=1), _lin(alpha=-1), zero)
        v5 = (_lin(1), _lin(1), zero, zero, zero, zero)
    else:
        v1 = (zero, _lin(beta=-2), _lin(alpha=-1), zero, _lin(gamma=-1), zero)
        v2 = (_lin(alpha=-2), zero, _lin(beta=-1), _lin(gamma=-1), zero, zero)
        v3 = (_lin(C=2), _lin(C=2), _lin(A=1, B=1), _lin(beta=1), _lin(alpha=1), zero)
        v5 = (_lin(1), _lin(-1), zero, zero, zero, zero)
    v4 = (_lin(A=2), _lin(B=2), _lin(C=2), _lin(alpha=1), _lin(beta=1), zero)
    v6 = tuple(_lin(**{name: 1}) for name in _VARS)
    return (v1, v2, v3, v4, v5, v6)


def generator_vector(gid: GeneratorId, k: KTParams) -> tuple[Fraction, ...]:
    """The generator's components evaluated at ``k``."""
    polys = generator_polys(k.signature)[GENERATOR_ORDER.index(gid)]
    coeffs = k.coefficients()
    return tuple(p.evaluate(coeffs) for p in polys)


def generator_matrix(k: KTParams) -> RatMatrix:
    """6x6 matrix whose rows are the generators V1..V6 evaluated at ``k``."""
    return RatMatrix.from_rows(
        [generator_vector(gid, k) for gid in GENERATOR_ORDER]
    )


def generator_rank(k: KTParams) -> int:
    """Exact rank of the generator matrix; the local orbit dimension."""
    return rat_rank(generator_matrix(k))


# -- finite actions -----------------------------------------------------------


def _extract_params(sig: MetricSignature, p11: Poly, p12: Poly, p22: Poly) -> KTParams:
    out = KTParams(
        sig,
        p11.coeff((0, 0)),
        p22.coeff((0, 0)),
        p12.coeff((0, 0)),
        p11.coeff((0, 1)) / 2,
        p22.coeff((1, 0)) / 2,
        p11.coeff((0, 2)),
    )
    e11, e12, e22 = component_polys(out)
    if e11 != p11 or e12 != p12 or e22 != p22:
        raise FamilyClosureError("transformed tensor left the six-parameter family")
    return out


def pushforward(k: KTParams, jac, shift=(0, 0)) -> KTParams:
    """Induced action on ``k`` of the affine map q -> jac . q + shift.

    ``jac`` is a row-major 2x2 of rationals with nonzero determinant.
    Implemented by substituting the inverse map into the component
    polynomials and conjugating by the Jacobian.
    """
    a11, a12, a21, a22 = (as_rational(x) for x in jac)
    s1, s2 = (as_rational(x) for x in shift)
    det = a11 * a22 - a12 * a21
    if det == 0:
        raise ParameterError("coordinate map must be invertible")
    i11, i12 = a22 / det, -a12 / det
    i21, i22 = -a21 / det, a11 / det
    u = Poly.var(2, 0)
    v = Poly.var(2, 1)
    sub_u = i11 * u + i12 * v + (-(i11 * s1 + i12 * s2))
    sub_v = i21 * u + i22 * v + (-(i21 * s1 + i22 * s2))
    k11, k12, k22 = component_polys(k)
    t11 = k11.subs([sub_u, sub_v])
    t12 = k12.subs([sub_u, sub_v])
    t22 = k22.subs([sub_u, sub_v])
    n11 = a11 * a11 * t11 + 2 * a11 * a12 * t12 + a12 * a12 * t22
    n12 = a11 * a21 * t11 + (a11 * a22 + a12 * a21) * t12 + a12 * a22 * t22
    n22 = a21 * a21 * t11 + 2 * a21 * a22 * t12 + a22 * a22 * t22
    return _extract_params(k.signature, n11, n12, n22)


def finite_coordinate_map(
    sig: MetricSignature, gid: GeneratorId, t: RationalLike
) -> tuple[tuple[Fraction, Fraction, Fraction, Fraction], tuple[Fraction, Fraction]]:
    """The plane transformation (jacobian, shift) behind V1..V4.

    V5 and V6 do not move the plane; requesting them raises ParameterError.
    """
    t = as_rational(t)
    one = Fraction(1)
    zero = Fraction(0)
    if gid is GeneratorId.V1:
        return (one, zero, zero, one), (t, zero)
    if gid is GeneratorId.V2:
        return (one, zero, zero, one), (zero, t)
    if gid is GeneratorId.V3:
        w = t / 2
        if sig is MetricSignature.EUCLIDEAN:
            den = 1 + w * w
            c = (1 - w * w) / den
            s = 2 * w / den
            return (c, -s, s, c), (zero, zero)
        if abs(t) >= 1:
            raise ParameterError("boost parameter must satisfy |t| < 1")
        den = 1 - w * w
        ch = (1 + w * w) / den
        sh = 2 * w / den
        return (ch, sh, sh, ch), (zero, zero)
    if gid is GeneratorId.V4:
        if t <= 0:
            raise ParameterError("dilatation factor must be positive")
        return (t, zero, zero, t), (zero, zero)
    raise ParameterError(f"{gid.value} does not act on the plane")


def apply_finite(k: KTParams, gid: GeneratorId, t: RationalLike) -> KTParams:
    """Finite action of the one-parameter subgroup generated by ``gid``."""
    t = as_rational(t)
    if gid in (GeneratorId.V1, GeneratorId.V2, GeneratorId.V3, GeneratorId.V4):
        jac, shift = finite_coordinate_map(k.signature, gid, t)
        return pushforward(k, jac, shift)
    if gid is GeneratorId.V5:
        g11, g22 = k.signature.metric_diag
        return KTParams(
            k.signature, k.A + t * g11, k.B + t * g22,
            k.C, k.alpha, k.beta, k.gamma,
        )
    if gid is GeneratorId.V6:
        if t == 0:
            raise ParameterError("scale factor must be nonzero")
        return KTParams(k.signature, *(t * c for c in k.coefficients()))
    raise ParameterError(f"unknown generator {gid!r}")


def apply_half_turn(k: KTParams) -> KTParams:
    """Pushforward along q -> -q, the point not covered by the rational
    rotation parametrization."""
    return pushforward(k, (-1, 0, 0, -1))


def compose_parameter(
    sig: MetricSignature, gid: GeneratorId, t1: RationalLike, t2: RationalLike
) -> Fraction:
    """Parameter t3 with apply(apply(k, t1), t2) = apply(k, t3)."""
    t1 = as_rational(t1)
    t2 = as_rational(t2)
    if gid in (GeneratorId.V1, GeneratorId.V2, GeneratorId.V5):
        return t1 + t2
    if gid in (GeneratorId.V4, GeneratorId.V6):
        return t1 * t2
    if gid is GeneratorId.V3:
        if sig is MetricSignature.EUCLIDEAN:
            den = 1 - t1 * t2 / 4
            if den == 0:
                raise ParameterError("composition reaches the half turn")
            return (t1 + t2) / den
        return (t1 + t2) / (1 + t1 * t2 / 4)
    raise ParameterError(f"unknown generator {gid!r}")


def apply_discrete(k: KTParams, did: DiscreteId) -> KTParams:
    """One of the discrete web-preserving transformations."""
    if did is DiscreteId.R0:
        return KTParams(k.signature, *(-c for c in k.coefficients()))
    if did is DiscreteId.R1:
        return KTParams(k.signature, k.A, k.B, -k.C, -k.alpha, k.beta, k.gamma)
    if did is DiscreteId.R2:
        return KTParams(k.signature, k.A, k.B, -k.C, k.alpha, -k.beta, k.gamma)
    if did is DiscreteId.RSWAP:
        return KTParams(k.signature, k.B, k.A, k.C, k.beta, k.alpha, k.gamma)
    raise ParameterError(f"unknown discrete transformation {did!r}")


# -- Lie algebra structure -----------------------------------------------------


def lie_bracket(
    sig: MetricSignature, i: GeneratorId, j: GeneratorId
) -> tuple[Poly, ...]:
    """[V_i, V_j] componentwise, as polynomials in the six coordinates."""
    gens = generator_polys(sig)
    x = gens[GENERATOR_ORDER.index(i)]
    y = gens[GENERATOR_ORDER.index(j)]
    out = []
    for comp in range(6):
        acc = Poly.zero(6)
        for var in range(6):
            acc = acc + x[var] * y[comp].diff(var) - y[var] * x[comp].diff(var)
        out.append(acc)
    return tuple(out)


def decompose_over_generators(
    sig: MetricSignature, target: tuple[Poly, ...]
) -> tuple[Fraction, ...]:
    """Constant coefficients c with target = sum c_k V_k, if they exist."""
    gens = generator_polys(sig)
    monos = sorted(
        {m for g in gens for p in g for m in p.terms}
        | {m for p in target for m in p.terms}
    )
    rows = []
    rhs = []
    for comp in range(6):
        for mono in monos:
            rows.append([gens[g][comp].coeff(mono) for g in range(6)])
            rhs.append(target[comp].coeff(mono))
    solution = solve_linear(rows, rhs)
    if solution is None:
        raise BracketDecompositionError(
            "bracket does not lie in the constant-coefficient generator span"
        )
    return solution


def lie_bracket_decompose(
    sig: MetricSignature, i: GeneratorId, j: GeneratorId
) -> tuple[Fraction, ...]:
    """Structure constants c with [V_i, V_j] = sum c_k V_k."""
    return decompose_over_generators(sig, lie_bracket(sig, i, j))
