"""Fundamental invariants and exact surface membership predicates.

Every predicate here is an exact equality of Fractions; no tolerance is
used anywhere in classification.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import KTParams, MetricSignature, SignatureError


@dataclass(frozen=True)
class EuclideanInvariants:
    gamma: Fraction
    delta: Fraction


@dataclass(frozen=True)
class MinkowskiInvariants:
    gamma: Fraction
    z_plus: Fraction
    z_minus: Fraction
    p_cart: Fraction


@dataclass(frozen=True)
class EuclideanSurfaceFlags:
    in_s1: bool
    in_s2: bool
    in_s3: bool


@dataclass(frozen=True)
class MinkowskiSurfaceFlags:
    in_s1: bool
    in_s2: bool
    in_b1: bool
    in_b2: bool
    in_s3: bool
    in_s4_c1: bool
    in_s4_c2: bool
    in_s5: bool


SurfaceFlags = EuclideanSurfaceFlags | MinkowskiSurfaceFlags


def euclid_invariants(k: KTParams) -> EuclideanInvariants:
    """gamma and delta; delta is a sum of two squares, hence >= 0."""
    if k.signature is not MetricSignature.EUCLIDEAN:
        raise SignatureError("expected a Euclidean tensor")
    first = k.alpha * k.alpha - k.beta * k.beta - k.gamma * (k.A - k.B)
    second = k.alpha * k.beta + k.gamma * k.C
    return EuclideanInvariants(k.gamma, first * first + 4 * second * second)


def mink_invariants(k: KTParams) -> MinkowskiInvariants:
    """gamma, Z+, Z-, and the constant-tensor discriminant (A+B)^2 - 4C^2."""
    if k.signature is not MetricSignature.MINKOWSKI:
        raise SignatureError("expected a Minkowski tensor")
    dmin = k.alpha - k.beta
    dplu = k.alpha + k.beta
    z_plus = k.gamma * (k.A + k.B - 2 * k.C) - dmin * dmin
    z_minus = k.gamma * (k.A + k.B + 2 * k.C) - dplu * dplu
    ab = k.A + k.B
    return MinkowskiInvariants(k.gamma, z_plus, z_minus, ab * ab - 4 * k.C * k.C)


def surface_flags(k: KTParams) -> SurfaceFlags:
    """Exact membership in the named degeneracy surfaces."""
    if k.signature is MetricSignature.EUCLIDEAN:
        in_s1 = k.gamma == 0
        in_s2 = (
            k.alpha * k.alpha - k.beta * k.beta == k.gamma * (k.A - k.B)
            and k.alpha * k.beta == -k.gamma * k.C
        )
        in_s3 = (
            k.alpha == 0 and k.beta == 0 and k.gamma == 0
            and k.C == 0 and k.A == k.B
        )
        return EuclideanSurfaceFlags(in_s1, in_s2, in_s3)

    inv = mink_invariants(k)
    in_s1 = k.gamma == 0
    in_b1 = inv.z_plus == 0
    in_b2 = inv.z_minus == 0
    # S3 is defined by its own pair of equations; it coincides with B1 & B2.
    in_s3 = (
        k.gamma * (k.A + k.B) == k.alpha * k.alpha + k.beta * k.beta
        and k.gamma * k.C == k.alpha * k.beta
    )
    in_s4_c1 = k.gamma == 0 and k.alpha == k.beta and k.A + k.B == 2 * k.C
    in_s4_c2 = k.gamma == 0 and k.alpha == -k.beta and k.A + k.B == -2 * k.C
    in_s5 = (
        k.alpha == 0 and k.beta == 0 and k.gamma == 0
        and k.B == -k.A and k.C == 0
    )
    return MinkowskiSurfaceFlags(
        in_s1, in_b1 or in_b2, in_b1, in_b2, in_s3, in_s4_c1, in_s4_c2, in_s5
    )
