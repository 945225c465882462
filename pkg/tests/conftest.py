"""Shared helpers for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from ktwebs import MetricSignature, ktparams

EUC = MetricSignature.EUCLIDEAN
MIN = MetricSignature.MINKOWSKI


def kt(sig, *coeffs):
    return ktparams(sig, *coeffs)


def random_fraction(rng: random.Random, max_num: int = 3, max_den: int = 8) -> Fraction:
    return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def random_tensor(rng: random.Random, sig):
    return ktparams(sig, *(random_fraction(rng) for _ in range(6)))
