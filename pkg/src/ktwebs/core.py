"""Killing tensor families on the flat Euclidean and Minkowski planes.

Parameter convention.  A member of the six-parameter family is stored as
``(A, B, C, alpha, beta, gamma)`` together with a metric signature.  In
coordinates ``(u, v)``, where ``(u, v) = (x, y)`` in the Euclidean plane
and ``(u, v) = (t, x)`` in the Minkowski plane, the contravariant
components are::

    K11 = A + 2*alpha*v + gamma*v**2
    K12 = C + s * (alpha*u + beta*v + gamma*u*v)    s = -1 Euclidean, +1 Minkowski
    K22 = B + 2*beta*u + gamma*u**2

The contravariant metric is diag(1, 1) or diag(1, -1); covariant and
contravariant components coincide for both.  Mixed components follow the
convention ``K^i_j = K^{im} g_{mj}``.

Discriminant convention.  ``discriminant_poly`` returns
``trace(K^i_j)**2 - 4*det(K^i_j)``, the discriminant of the
characteristic polynomial of the mixed tensor.  In the Euclidean plane
this equals the sum of squares

    [gamma*(v^2-u^2) + 2*(alpha*v - beta*u) + A - B]^2
        + 4*[gamma*u*v + alpha*u + beta*v - C]^2

so its zero set is the simultaneous zero set of the two bracketed
expressions; the factor 4 on the second square is fixed by the trace/det
normalization above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .linalg import RationalLike, as_rational
from .poly import Poly


class SignatureError(ValueError):
    """Raised when an operation receives a tensor of the wrong signature."""


class MetricSignature(Enum):
    EUCLIDEAN = "euclidean"
    MINKOWSKI = "minkowski"

    @property
    def metric_diag(self) -> tuple[Fraction, Fraction]:
        """Diagonal of the (contravariant = covariant) metric."""
        if self is MetricSignature.EUCLIDEAN:
            return (Fraction(1), Fraction(1))
        return (Fraction(1), Fraction(-1))

    @property
    def k12_sign(self) -> int:
        """Sign of the linear terms in the off-diagonal component."""
        return -1 if self is MetricSignature.EUCLIDEAN else 1


@dataclass(frozen=True)
class KTParams:
    """A member of the six-parameter family, with exact coefficients."""

    signature: MetricSignature
    A: Fraction
    B: Fraction
    C: Fraction
    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def coefficients(self) -> tuple[Fraction, ...]:
        return (self.A, self.B, self.C, self.alpha, self.beta, self.gamma)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients())


def ktparams(
    signature: MetricSignature,
    A: RationalLike = 0,
    B: RationalLike = 0,
    C: RationalLike = 0,
    alpha: RationalLike = 0,
    beta: RationalLike = 0,
    gamma: RationalLike = 0,
) -> KTParams:
    """Build a :class:`KTParams`, coercing every coefficient to a Fraction."""
    return KTParams(
        signature,
        as_rational(A),
        as_rational(B),
        as_rational(C),
        as_rational(alpha),
        as_rational(beta),
        as_rational(gamma),
    )


def metric_tensor(signature: MetricSignature) -> KTParams:
    """The metric itself as a member of the family."""
    g11, g22 = signature.metric_diag
    return ktparams(signature, A=g11, B=g22)


@dataclass(frozen=True)
class SymMatrix2:
    """Symmetric 2x2 contravariant components at one point."""

    k11: object
    k12: object
    k22: object


@dataclass(frozen=True)
class Covector2:
    """Momentum covector (p1, p2)."""

    p1: Fraction
    p2: Fraction


class EigenKind(Enum):
    REAL_SIMPLE = "real_simple"
    REAL_DOUBLE = "real_double"
    COMPLEX_PAIR = "complex_pair"


@dataclass(frozen=True)
class EigenReport:
    """Eigenvalues and unit eigenvectors of the mixed tensor at a point."""

    kind: EigenKind
    eigenvalues: tuple
    eigenvectors: tuple[tuple[float, float], tuple[float, float]] | None


# -- components -------------------------------------------------------------


def component_polys(k: KTParams) -> tuple[Poly, Poly, Poly]:
    """The three contravariant components of ``k`` as polynomials in (u, v)."""
    u = Poly.var(2, 0)
    v = Poly.var(2, 1)
    s = k.signature.k12_sign
    k11 = k.A + 2 * k.alpha * v + k.gamma * v * v
    k12 = k.C + s * (k.alpha * u + k.beta * v + k.gamma * u * v)
    k22 = k.B + 2 * k.beta * u + k.gamma * u * u
    return k11, k12, k22


def components_at(k: KTParams, p) -> SymMatrix2:
    """Contravariant components at a point (exact for rational points)."""
    u, v = p
    s = k.signature.k12_sign
    k11 = k.A + 2 * k.alpha * v + k.gamma * v * v
    k12 = k.C + s * (k.alpha * u + k.beta * v + k.gamma * u * v)
    k22 = k.B + 2 * k.beta * u + k.gamma * u * u
    return SymMatrix2(k11, k12, k22)


def mixed_components_at(k: KTParams, p) -> tuple:
    """Mixed components ((m11, m12), (m21, m22)) = K^i_j at a point."""
    c = components_at(k, p)
    _, g22 = k.signature.metric_diag
    return ((c.k11, g22 * c.k12), (c.k12, g22 * c.k22))


# -- Killing property --------------------------------------------------------


@dataclass(frozen=True)
class QuadraticTensorField:
    """A symmetric 2-tensor field with polynomial components of degree <= 2.

    More general than the six-parameter family; used to verify that the
    family members, and only fields of their shape, commute with the
    geodesic Hamiltonian.
    """

    signature: MetricSignature
    k11: Poly
    k12: Poly
    k22: Poly

    def __post_init__(self) -> None:
        for comp in (self.k11, self.k12, self.k22):
            if comp.nvars != 2:
                raise ValueError("components must be polynomials in (u, v)")
            if comp.total_degree() > 2:
                raise ValueError("components must have degree <= 2")


def field_from_params(k: KTParams) -> QuadraticTensorField:
    k11, k12, k22 = component_polys(k)
    return QuadraticTensorField(k.signature, k11, k12, k22)


def poisson_bracket_with_H(field: QuadraticTensorField) -> Poly:
    """Poisson bracket of the field's momentum function with the geodesic
    Hamiltonian, as an exact polynomial in (u, v, p1, p2).

    The result is identically zero exactly when the field is a Killing
    tensor of the flat metric.
    """
    g11, g22 = field.signature.metric_diag
    into4 = (0, 1)
    k11 = field.k11.embed(4, into4)
    k12 = field.k12.embed(4, into4)
    k22 = field.k22.embed(4, into4)
    p1 = Poly.var(4, 2)
    p2 = Poly.var(4, 3)
    momentum_fn = k11 * p1 * p1 + 2 * k12 * p1 * p2 + k22 * p2 * p2
    # H = (g11 p1^2 + g22 p2^2)/2 has no coordinate dependence, so the
    # bracket reduces to dI/du * dH/dp1 + dI/dv * dH/dp2.
    return momentum_fn.diff(0) * (g11 * p1) + momentum_fn.diff(1) * (g22 * p2)


def first_integral_along_geodesic(k: KTParams, q0, direction) -> Poly:
    """The momentum function of ``k`` along the straight geodesic
    ``q(s) = q0 + s*direction`` with momentum ``p = g . direction``.

    Returns an exact polynomial in the single variable ``s``; for a
    Killing tensor it has degree zero.
    """
    v1 = as_rational(direction[0])
    v2 = as_rational(direction[1])
    if v1 == 0 and v2 == 0:
        raise ValueError("direction must be nonzero")
    q1 = as_rational(q0[0])
    q2 = as_rational(q0[1])
    g11, g22 = k.signature.metric_diag
    p = Covector2(g11 * v1, g22 * v2)
    s = Poly.var(1, 0)
    u_of_s = q1 + v1 * s
    v_of_s = q2 + v2 * s
    k11, k12, k22 = (c.subs([u_of_s, v_of_s]) for c in component_polys(k))
    return k11 * p.p1 * p.p1 + 2 * k12 * p.p1 * p.p2 + k22 * p.p2 * p.p2


# -- eigenstructure ----------------------------------------------------------


def discriminant_poly(k: KTParams) -> Poly:
    """Discriminant of the characteristic polynomial of the mixed tensor,
    as an exact polynomial in (u, v): trace^2 - 4 det.
    """
    k11, k12, k22 = component_polys(k)
    _, g22 = k.signature.metric_diag
    m11, m12 = k11, g22 * k12
    m21, m22 = k12, g22 * k22
    tr = m11 + m22
    det = m11 * m22 - m12 * m21
    return tr * tr - 4 * det


def _unit_eigenvector(m11, m12, m21, m22, lam):
    cand1 = (m12, lam - m11)
    cand2 = (lam - m22, m21)
    n1 = math.hypot(*cand1)
    n2 = math.hypot(*cand2)
    vec, norm = (cand1, n1) if n1 >= n2 else (cand2, n2)
    if norm == 0.0:
        return None
    return (vec[0] / norm, vec[1] / norm)


def eigenstructure_at(k: KTParams, p, tol: float = 1e-9) -> EigenReport:
    """Float eigenvalues/eigenvectors of the mixed tensor at a point.

    The report kind is REAL_SIMPLE, REAL_DOUBLE or COMPLEX_PAIR according
    to the sign of the discriminant at float tolerance ``tol``.
    """
    (m11, m12), (m21, m22) = mixed_components_at(k, (float(p[0]), float(p[1])))
    m11, m12, m21, m22 = float(m11), float(m12), float(m21), float(m22)
    tr = m11 + m22
    det = m11 * m22 - m12 * m21
    disc = tr * tr - 4 * det
    if disc > tol:
        root = math.sqrt(disc)
        lam1 = (tr + root) / 2
        lam2 = (tr - root) / 2
        v1 = _unit_eigenvector(m11, m12, m21, m22, lam1)
        v2 = _unit_eigenvector(m11, m12, m21, m22, lam2)
        if v1 is not None and v2 is not None:
            return EigenReport(EigenKind.REAL_SIMPLE, (lam1, lam2), (v1, v2))
        return EigenReport(EigenKind.REAL_SIMPLE, (lam1, lam2), None)
    if disc < -tol:
        root = math.sqrt(-disc)
        lam = complex(tr / 2, root / 2)
        return EigenReport(EigenKind.COMPLEX_PAIR, (lam, lam.conjugate()), None)
    return EigenReport(EigenKind.REAL_DOUBLE, (tr / 2, tr / 2), None)
