"""Separable web rendering for characteristic tensors.

A characteristic tensor has real simple eigenvalues with orthogonal
eigendirections away from its singular set, so the two eigenvector fields
integrate to a pair of mutually orthogonal foliations, the separable web.
This module traces both foliations numerically (floats only; exactness
stays upstream in the classifier):

* streamlines start from a regular seed grid and are integrated with a
  fixed-step fourth-order Runge-Kutta scheme;
* the eigenvector sign ambiguity is resolved by propagation: each sampled
  direction is aligned with the previous one;
* curves stop at the box edge, at a maximum arc length, or when the
  eigenvalue discriminant drops below ``singular_tol``.

The resulting document carries the two families of polylines plus the
boundaries and filled regions of the singular set, and renders to a
deterministic standalone SVG (identical inputs give identical bytes).
Overlapping singular regions are drawn in a single even-odd path, so the
overlap of two strips is left unfilled, matching the set they describe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .classify import (
    AXIS_DIFF,
    AXIS_SUM,
    SingularSetDescription,
    SingularVariant,
    classify_label,
    ORBIT_CLASSES,
    singular_set,
)
from .core import EigenKind, KTParams, eigenstructure_at

Point = tuple[float, float]
Polyline = list[Point]


class NonCharacteristicError(ValueError):
    """Raised when asked to trace the web of a non-characteristic tensor."""

    def __init__(self, label: str):
        super().__init__(
            f"tensors of class {label} are not characteristic and define no web"
        )
        self.label = label


@dataclass(frozen=True)
class WebRenderConfig:
    box: tuple[float, float, float, float] = (-3.0, 3.0, -3.0, 3.0)
    seed_spacing: float = 0.75
    step: float = 0.05
    max_arc: float = 12.0
    singular_tol: float = 1e-6
    samples_per_curve: int = 400

    def validate(self) -> None:
        u0, u1, v0, v1 = self.box
        if not (u0 < u1 and v0 < v1):
            raise ValueError("box must be nonempty")
        if self.step <= 0:
            raise ValueError("integration step must be positive")
        if self.singular_tol <= 0:
            raise ValueError("singular tolerance must be positive")
        if self.seed_spacing <= 0:
            raise ValueError("seed spacing must be positive")
        if self.samples_per_curve < 2:
            raise ValueError("need at least two samples per curve")


@dataclass
class WebDocument:
    foliation_solid: list[Polyline] = field(default_factory=list)
    foliation_dashed: list[Polyline] = field(default_factory=list)
    singular_boundaries: list[Polyline] = field(default_factory=list)
    singular_regions: list[Polyline] = field(default_factory=list)


# -- eigenvector fields ---------------------------------------------------------


def eigen_directions(
    k: KTParams, p, singular_tol: float = 1e-9
) -> tuple[Point, Point] | None:
    """Two unit eigendirections at ``p``, or None where the discriminant
    is not safely positive (the degenerate marker)."""
    report = eigenstructure_at(k, p, tol=singular_tol)
    if report.kind is not EigenKind.REAL_SIMPLE or report.eigenvectors is None:
        return None
    return report.eigenvectors


def _float_field(k: KTParams):
    """Bake the coefficients to floats and return p -> eigen pair or None."""
    A, B, C, al, be, ga = (float(c) for c in k.coefficients())
    s12 = float(k.signature.k12_sign)
    eps = float(k.signature.metric_diag[1])

    def directions(p: Point, tol: float):
        u, v = p
        k11 = A + 2 * al * v + ga * v * v
        k12 = C + s12 * (al * u + be * v + ga * u * v)
        k22 = B + 2 * be * u + ga * u * u
        m11, m12 = k11, eps * k12
        m21, m22 = k12, eps * k22
        tr = m11 + m22
        disc = tr * tr - 4 * (m11 * m22 - m12 * m21)
        if disc <= tol:
            return None
        root = math.sqrt(disc)
        out = []
        for lam in ((tr + root) / 2, (tr - root) / 2):
            c1 = (m12, lam - m11)
            c2 = (lam - m22, m21)
            n1 = math.hypot(*c1)
            n2 = math.hypot(*c2)
            vec, norm = (c1, n1) if n1 >= n2 else (c2, n2)
            if norm == 0.0:
                return None
            out.append((vec[0] / norm, vec[1] / norm))
        return out[0], out[1]

    return directions


def _inside(p: Point, box) -> bool:
    u0, u1, v0, v1 = box
    return u0 <= p[0] <= u1 and v0 <= p[1] <= v1


def _trace_from(field_fn, seed: Point, idx: int, forward: bool, cfg: WebRenderConfig) -> Polyline:
    pair = field_fn(seed, cfg.singular_tol)
    if pair is None:
        return []

    def aligned(p: Point, ref: Point) -> Point | None:
        d = field_fn(p, cfg.singular_tol)
        if d is None:
            return None
        du, dv = d[idx]
        if du * ref[0] + dv * ref[1] < 0:
            return (-du, -dv)
        return (du, dv)

    sgn = 1.0 if forward else -1.0
    ref = (sgn * pair[idx][0], sgn * pair[idx][1])
    pts: Polyline = [seed]
    p = seed
    arc = 0.0
    h = cfg.step
    while len(pts) < cfg.samples_per_curve and arc < cfg.max_arc:
        k1 = aligned(p, ref)
        if k1 is None:
            break
        k2 = aligned((p[0] + h / 2 * k1[0], p[1] + h / 2 * k1[1]), k1)
        if k2 is None:
            break
        k3 = aligned((p[0] + h / 2 * k2[0], p[1] + h / 2 * k2[1]), k2)
        if k3 is None:
            break
        k4 = aligned((p[0] + h * k3[0], p[1] + h * k3[1]), k3)
        if k4 is None:
            break
        du = h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        dv = h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        q = (p[0] + du, p[1] + dv)
        if not _inside(q, cfg.box):
            break
        dq = aligned(q, k1)
        if dq is None:
            break
        pts.append(q)
        arc += math.hypot(du, dv)
        ref = dq
        p = q
    return pts


def _seed_grid(cfg: WebRenderConfig) -> list[Point]:
    u0, u1, v0, v1 = cfg.box
    seeds = []
    u = u0 + cfg.seed_spacing / 2
    while u < u1:
        v = v0 + cfg.seed_spacing / 2
        while v < v1:
            seeds.append((u, v))
            v += cfg.seed_spacing
        u += cfg.seed_spacing
    return seeds


def trace_web(k: KTParams, cfg: WebRenderConfig | None = None) -> WebDocument:
    """Trace both foliations of the web defined by a characteristic tensor."""
    cfg = cfg or WebRenderConfig()
    cfg.validate()
    label = classify_label(k)
    if not ORBIT_CLASSES[label].characteristic:
        raise NonCharacteristicError(label)
    field_fn = _float_field(k)
    doc = WebDocument()
    foliations = (doc.foliation_solid, doc.foliation_dashed)
    for idx in (0, 1):
        for seed in _seed_grid(cfg):
            back = _trace_from(field_fn, seed, idx, forward=False, cfg=cfg)
            fore = _trace_from(field_fn, seed, idx, forward=True, cfg=cfg)
            if not fore and not back:
                continue
            polyline = list(reversed(back[1:])) + (fore if fore else [seed])
            if len(polyline) >= 2:
                foliations[idx].append(polyline)
    boundaries, regions = singular_geometry(singular_set(k), cfg.box)
    doc.singular_boundaries = boundaries
    doc.singular_regions = regions
    return doc


# -- singular set geometry ---------------------------------------------------------


def _box_polygon(box) -> Polyline:
    u0, u1, v0, v1 = box
    return [(u0, v0), (u1, v0), (u1, v1), (u0, v1)]


def _clip_halfplane(poly: Polyline, a: float, b: float, c: float) -> Polyline:
    """Keep the part of a convex polygon with a*u + b*v + c >= 0."""
    out: Polyline = []
    n = len(poly)
    for i in range(n):
        p = poly[i]
        q = poly[(i + 1) % n]
        fp = a * p[0] + b * p[1] + c
        fq = a * q[0] + b * q[1] + c
        if fp >= 0:
            out.append(p)
        if (fp > 0 > fq) or (fp < 0 < fq):
            s = fp / (fp - fq)
            out.append((p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])))
    return out


def _axis_normal(axis: str) -> tuple[float, float]:
    # Coefficients (a, b) with axis(u, v) = a*u + b*v.
    return (1.0, 1.0) if axis == AXIS_SUM else (-1.0, 1.0)


def _clip_line(axis: str, offset: float, box) -> Polyline:
    """The segment of {axis(u,v) = offset} inside the box (Liang-Barsky)."""
    if axis == AXIS_SUM:
        p0 = (offset / 2, offset / 2)
        d = (1.0, -1.0)
    else:
        p0 = (-offset / 2, offset / 2)
        d = (1.0, 1.0)
    u0, u1, v0, v1 = box
    t_lo, t_hi = -math.inf, math.inf
    for pos, vel, lo, hi in ((p0[0], d[0], u0, u1), (p0[1], d[1], v0, v1)):
        if vel == 0:
            if not (lo <= pos <= hi):
                return []
            continue
        ta = (lo - pos) / vel
        tb = (hi - pos) / vel
        if ta > tb:
            ta, tb = tb, ta
        t_lo = max(t_lo, ta)
        t_hi = min(t_hi, tb)
    if t_lo >= t_hi:
        return []
    return [
        (p0[0] + t_lo * d[0], p0[1] + t_lo * d[1]),
        (p0[0] + t_hi * d[0], p0[1] + t_hi * d[1]),
    ]


def _strip_edges(strip) -> list[tuple[str, float]]:
    w = math.sqrt(float(strip.halfwidth_sq))
    c = float(strip.center)
    return [(strip.axis, c - w), (strip.axis, c + w)]


def _strip_polygon(strip, box) -> Polyline:
    w = math.sqrt(float(strip.halfwidth_sq))
    c = float(strip.center)
    a, b = _axis_normal(strip.axis)
    poly = _box_polygon(box)
    poly = _clip_halfplane(poly, a, b, -(c - w))
    poly = _clip_halfplane(poly, -a, -b, c + w)
    return poly


def _point_marker(p: Point, box) -> list[Polyline]:
    if not _inside(p, box):
        return []
    u0, u1, v0, v1 = box
    r = 0.015 * max(u1 - u0, v1 - v0)
    return [
        [(p[0] - r, p[1] - r), (p[0] + r, p[1] + r)],
        [(p[0] - r, p[1] + r), (p[0] + r, p[1] - r)],
    ]


def singular_geometry(
    desc: SingularSetDescription, box
) -> tuple[list[Polyline], list[Polyline]]:
    """Boundary polylines and filled region polygons for a singular set,
    clipped to the viewing box."""
    V = SingularVariant
    boundaries: list[Polyline] = []
    regions: list[Polyline] = []

    def add_line(axis: str, offset: float) -> None:
        seg = _clip_line(axis, offset, box)
        if seg:
            boundaries.append(seg)

    if desc.variant in (V.ONE_POINT, V.TWO_POINTS):
        for p in desc.float_points():
            boundaries.extend(_point_marker(p, box))
    elif desc.variant is V.LINE:
        add_line(desc.lines[0].axis, float(desc.lines[0].offset))
    elif desc.variant is V.TWO_ORTHOGONAL_LINES:
        for line in desc.lines:
            add_line(line.axis, float(line.offset))
    elif desc.variant in (V.STRIP, V.STRIP_PLUS_ORTHOGONAL_LINE, V.TWO_STRIPS_MINUS_INTERSECTION):
        for strip in desc.strips:
            for axis, offset in _strip_edges(strip):
                add_line(axis, offset)
            poly = _strip_polygon(strip, box)
            if len(poly) >= 3:
                regions.append(poly)
        for line in desc.lines:
            add_line(line.axis, float(line.offset))
    elif desc.variant is V.HALF_PLANE:
        hp = desc.half_plane
        add_line(hp.axis, float(hp.boundary))
        a, b = _axis_normal(hp.axis)
        sgn = float(hp.side)
        poly = _clip_halfplane(
            _box_polygon(box), sgn * a, sgn * b, -sgn * float(hp.boundary)
        )
        if len(poly) >= 3:
            regions.append(poly)
    elif desc.variant is V.TWO_OPPOSITE_QUADRANTS:
        q = desc.quadrants
        add_line(AXIS_SUM, float(q.sum_offset))
        add_line(AXIS_DIFF, float(q.diff_offset))
        sa, sb = _axis_normal(AXIS_SUM)
        da, db = _axis_normal(AXIS_DIFF)
        s_off = float(q.sum_offset)
        d_off = float(q.diff_offset)
        # The singular quadrants are where the two axis offsets have
        # opposite signs (orientation +1) or equal signs (orientation -1).
        pairs = ((1.0, -1.0), (-1.0, 1.0)) if q.orientation > 0 else ((1.0, 1.0), (-1.0, -1.0))
        for es, ed in pairs:
            poly = _clip_halfplane(_box_polygon(box), es * sa, es * sb, -es * s_off)
            poly = _clip_halfplane(poly, ed * da, ed * db, -ed * d_off)
            if len(poly) >= 3:
                regions.append(poly)
    elif desc.variant is V.WHOLE_PLANE:
        regions.append(_box_polygon(box))
    return boundaries, regions


# -- SVG ------------------------------------------------------------------------


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def _path(points: Polyline, close: bool = False) -> str:
    # SVG has v pointing down; flip the second coordinate.
    bits = []
    for i, (u, v) in enumerate(points):
        cmd = "M" if i == 0 else "L"
        bits.append(f"{cmd}{_fmt(u)} {_fmt(-v)}")
    if close:
        bits.append("Z")
    return " ".join(bits)


def render_svg(doc: WebDocument, cfg: WebRenderConfig | None = None) -> bytes:
    """Deterministic standalone SVG for a web document."""
    cfg = cfg or WebRenderConfig()
    u0, u1, v0, v1 = cfg.box
    width = u1 - u0
    height = v1 - v0
    sw = 0.006 * max(width, height)
    dash = f"{_fmt(4 * sw)} {_fmt(3 * sw)}"
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        (
            f'<svg xmlns="http://www.w3.org/2000/svg" '
            f'viewBox="{_fmt(u0)} {_fmt(-v1)} {_fmt(width)} {_fmt(height)}">'
        ),
        "<style>",
        f".fol1 {{ fill: none; stroke: #1f3b70; stroke-width: {_fmt(sw)}; }}",
        (
            f".fol2 {{ fill: none; stroke: #8c2d2d; stroke-width: {_fmt(sw)}; "
            f"stroke-dasharray: {dash}; }}"
        ),
        f".sing-boundary {{ fill: none; stroke: #808080; stroke-width: {_fmt(1.4 * sw)}; }}",
        ".sing-region { fill: #d9d9d9; stroke: none; }",
        "</style>",
    ]
    if doc.singular_regions:
        d = " ".join(_path(poly, close=True) for poly in doc.singular_regions)
        lines.append(f'<path class="sing-region" fill-rule="evenodd" d="{d}"/>')
    for poly in doc.singular_boundaries:
        lines.append(f'<path class="sing-boundary" d="{_path(poly)}"/>')
    for poly in doc.foliation_solid:
        lines.append(f'<path class="fol1" d="{_path(poly)}"/>')
    for poly in doc.foliation_dashed:
        lines.append(f'<path class="fol2" d="{_path(poly)}"/>')
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")
