"""Independent oracles and property harnesses.

Everything here deliberately recomputes results along a second route:
ranks by exhaustive minor enumeration instead of elimination, generator
components by finite differences of the finite actions, discriminants from
their factored closed form instead of trace/determinant expansion, and
class labels before and after random group words.  The main code never
calls into this module; it exists so the test suite and the ``verify``
command can cross-check the two routes against each other.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .classify import atlas, classify_label, singular_set, ORBIT_CLASSES
from .core import KTParams, MetricSignature, discriminant_poly, ktparams
from .groups import (
    DiscreteId,
    GENERATOR_ORDER,
    GeneratorId,
    apply_discrete,
    apply_finite,
    generator_polys,
    generator_vector,
    decompose_over_generators,
    lie_bracket,
    BracketDecompositionError,
)
from .linalg import RatMatrix, as_rational, rat_rank, rat_sign
from .poly import Poly


# -- second-route linear algebra -------------------------------------------------


def det_cofactor(m: RatMatrix) -> Fraction:
    """Determinant by cofactor expansion along the first row."""
    if not m.is_square:
        raise ValueError("determinant requires a square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    if n == 1:
        return m.at(0, 0)
    total = Fraction(0)
    sign = 1
    rest_rows = range(1, n)
    for j in range(n):
        a = m.at(0, j)
        if a != 0:
            cols = [c for c in range(n) if c != j]
            total += sign * a * det_cofactor(m.submatrix(rest_rows, cols))
        sign = -sign
    return total


def rank_oracle(m: RatMatrix) -> int:
    """Rank by exhaustive enumeration of minors (inputs at most 6 x 6)."""
    if m.rows > 6 or m.cols > 6:
        raise ValueError("rank oracle accepts matrices up to 6 x 6")
    for size in range(min(m.rows, m.cols), 0, -1):
        for rows in itertools.combinations(range(m.rows), size):
            for cols in itertools.combinations(range(m.cols), size):
                if det_cofactor(m.submatrix(rows, cols)) != 0:
                    return size
    return 0


def poly_det(rows: list[list[Poly]]) -> Poly:
    """Determinant of a square matrix of polynomials, by cofactor expansion."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return rows[0][0]
    nvars = rows[0][0].nvars
    total = Poly.zero(nvars)
    sign = 1
    for j in range(n):
        entry = rows[0][j]
        if not entry.is_zero:
            minor = [[r[c] for c in range(n) if c != j] for r in rows[1:]]
            total = total + sign * entry * poly_det(minor)
        sign = -sign
    return total


# -- factored discriminants -------------------------------------------------------


def factored_discriminant(k: KTParams) -> Poly:
    """The discriminant assembled from its closed factored form, as an
    independent route to :func:`ktwebs.core.discriminant_poly`."""
    u = Poly.var(2, 0)
    v = Poly.var(2, 1)
    if k.signature is MetricSignature.MINKOWSKI:
        s = u + v
        r = v - u
        p = k.gamma * s * s + 2 * (k.alpha + k.beta) * s + (k.A + k.B + 2 * k.C)
        q = k.gamma * r * r + 2 * (k.alpha - k.beta) * r + (k.A + k.B - 2 * k.C)
        return p * q
    first = k.gamma * (v * v - u * u) + 2 * (k.alpha * v - k.beta * u) + (k.A - k.B)
    second = k.gamma * u * v + k.alpha * u + k.beta * v - k.C
    return first * first + 4 * second * second


# -- generator / flow consistency ----------------------------------------------


def generator_fd_check(k: KTParams, gid: GeneratorId, h: float) -> float:
    """Max absolute difference between the central finite difference of the
    finite action at the identity and the printed generator components.

    The identity parameter is 0 for V1, V2, V3, V5 and 1 for the
    multiplicative V4, V6.  The error is O(h^2); for actions polynomial of
    degree <= 2 in the parameter it vanishes up to float rounding.
    """
    if not (0 < h <= 0.1):
        raise ValueError("h must lie in (0, 0.1]")
    hr = as_rational(h)
    if gid in (GeneratorId.V4, GeneratorId.V6):
        plus = apply_finite(k, gid, 1 + hr)
        minus = apply_finite(k, gid, 1 - hr)
    else:
        plus = apply_finite(k, gid, hr)
        minus = apply_finite(k, gid, -hr)
    vec = generator_vector(gid, k)
    err = 0.0
    for pc, mc, vc in zip(plus.coefficients(), minus.coefficients(), vec):
        err = max(err, abs(float((pc - mc) / (2 * hr) - vc)))
    return err


# -- random tensors and group words ----------------------------------------------


def random_rational(rng: random.Random, max_num: int = 3, max_den: int = 8) -> Fraction:
    return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def random_kt(rng: random.Random, sig: MetricSignature) -> KTParams:
    return ktparams(sig, *(random_rational(rng) for _ in range(6)))


WordStep = tuple[str, object, Fraction | None]


def random_word(rng: random.Random, sig: MetricSignature, max_len: int) -> list[WordStep]:
    """A random word in the exact finite actions and the discrete maps.

    The Minkowski coordinate swap is excluded: it merges the two webs of
    the shared parabolic type and is not web-preserving in the sense used
    for orbit invariance.
    """
    steps: list[WordStep] = []
    for _ in range(rng.randint(0, max_len)):
        if rng.random() < 0.7:
            gid = rng.choice(GENERATOR_ORDER)
            if gid is GeneratorId.V3 and sig is MetricSignature.MINKOWSKI:
                t = Fraction(rng.randint(-7, 7), 8)
            elif gid is GeneratorId.V4:
                t = Fraction(rng.randint(1, 8), rng.randint(1, 8))
            elif gid is GeneratorId.V6:
                t = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
            else:
                t = random_rational(rng)
            steps.append(("finite", gid, t))
        else:
            choices = [DiscreteId.R0, DiscreteId.R1, DiscreteId.R2]
            if sig is MetricSignature.EUCLIDEAN:
                choices.append(DiscreteId.RSWAP)
            steps.append(("discrete", rng.choice(choices), None))
    return steps


def apply_word(k: KTParams, word: list[WordStep]) -> KTParams:
    for kind, op, t in word:
        if kind == "finite":
            k = apply_finite(k, op, t)
        else:
            k = apply_discrete(k, op)
    return k


@dataclass
class FuzzReport:
    trials: int
    failures: list[tuple[KTParams, list[WordStep], str, str]] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures


def fuzz_orbit_invariance(n: int, max_word: int, rng_seed: int) -> FuzzReport:
    """Check that random group words never change the class label."""
    rng = random.Random(rng_seed)
    report = FuzzReport(trials=n)
    start = time.perf_counter()
    for _ in range(n):
        sig = rng.choice((MetricSignature.EUCLIDEAN, MetricSignature.MINKOWSKI))
        k = random_kt(rng, sig)
        word = random_word(rng, sig, max_word)
        before = classify_label(k)
        after = classify_label(apply_word(k, word))
        if before != after:
            report.failures.append((k, word, before, after))
    report.elapsed = time.perf_counter() - start
    return report


# -- discriminant sampling --------------------------------------------------------


@dataclass(frozen=True)
class SignCensus:
    negative: int
    zero: int
    positive: int


def grid_discriminant_signs(k: KTParams, box, n: int):
    """Exact discriminant sign at every node of an n x n rational grid."""
    if n < 2:
        raise ValueError("need at least a 2 x 2 grid")
    u0, u1, v0, v1 = (as_rational(b) for b in box)
    poly = discriminant_poly(k)
    out = []
    for i in range(n):
        u = u0 + (u1 - u0) * i / (n - 1)
        for j in range(n):
            v = v0 + (v1 - v0) * j / (n - 1)
            out.append(((u, v), rat_sign(poly.evaluate((u, v)))))
    return out

def grid_discriminant_census(k: KTParams, box, n: int) -> SignCensus:
    """Counts of negative / zero / positive discriminant samples."""
    signs = [s for _, s in grid_discriminant_signs(k, box, n)]
    return SignCensus(
        negative=sum(s < 0 for s in signs),
        zero=sum(s == 0 for s in signs),
        positive=sum(s > 0 for s in signs),
    )


def census_matches_description(k: KTParams, box, n: int) -> bool:
    """Compare the symbolic singular-set description against exact
    discriminant signs on a grid, point by point."""
    desc = singular_set(k)
    return all(
        desc.discriminant_sign(u, v) == s
        for (u, v), s in grid_discriminant_signs(k, box, n)
    )


# -- verification suite -----------------------------------------------------------


def check_lie_closure(sig: MetricSignature, inject_defect: bool = False) -> bool:
    """All 15 brackets decompose with constant coefficients.

    ``inject_defect`` deliberately corrupts one bracket (negative control
    for the verification harness).
    """
    for a in range(6):
        for b in range(a + 1, 6):
            bracket = lie_bracket(sig, GENERATOR_ORDER[a], GENERATOR_ORDER[b])
            if inject_defect and (a, b) == (0, 1):
                spoiled = Poly(6, {(2, 0, 0, 0, 0, 0): 1})
                bracket = (bracket[0] + spoiled,) + bracket[1:]
            try:
                decompose_over_generators(sig, bracket)
            except BracketDecompositionError:
                return False
    return True


def structure_constants(sig: MetricSignature) -> dict[tuple[str, str], tuple[Fraction, ...]]:
    out = {}
    for a in range(6):
        for b in range(a + 1, 6):
            i, j = GENERATOR_ORDER[a], GENERATOR_ORDER[b]
            out[(i.value, j.value)] = decompose_over_generators(
                sig, lie_bracket(sig, i, j)
            )
    return out


def _symbolic_det_identity(sig: MetricSignature) -> bool:
    """det of the generator matrix as a polynomial identity in the six
    parameters: -2*gamma*delta (Euclidean) and 2*gamma*Z+*Z- (Minkowski)."""
    gens = generator_polys(sig)
    det = poly_det([list(row) for row in gens])
    A, B, C, al, be, ga = (Poly.var(6, i) for i in range(6))
    if sig is MetricSignature.EUCLIDEAN:
        first = al * al - be * be - ga * (A - B)
        second = al * be + ga * C
        expected = -2 * ga * (first * first + 4 * second * second)
    else:
        zp = ga * (A + B - 2 * C) - (al - be) * (al - be)
        zm = ga * (A + B + 2 * C) - (al + be) * (al + be)
        expected = 2 * ga * zp * zm
    return det == expected


def run_verification(
    trials: int = 200, seed: int = 0, inject_bad_generator: bool = False
) -> tuple[bool, list[dict]]:
    """The checks behind the ``verify`` command; returns (ok, item list)."""
    items: list[dict] = []

    def add(name: str, ok: bool, detail: str) -> None:
        items.append({"name": name, "ok": bool(ok), "detail": detail})

    for sig in MetricSignature:
        ok = check_lie_closure(sig, inject_defect=inject_bad_generator)
        add(f"lie_closure_{sig.value}", ok, "15 brackets decompose over V1..V6")

    for sig in MetricSignature:
        ok = _symbolic_det_identity(sig)
        add(
            f"det_identity_{sig.value}",
            ok,
            "det of generator matrix matches the invariant product",
        )

    rng = random.Random(seed)
    worst = 0.0
    fd_ok = True
    for sig in MetricSignature:
        samples = [random_kt(rng, sig) for _ in range(5)]
        samples.append(ktparams(sig, 0, 0, 1, 0, 0, 1))
        for k in samples:
            for gid in GENERATOR_ORDER:
                err = generator_fd_check(k, gid, 1e-3)
                worst = max(worst, err)
                fd_ok = fd_ok and err < 1e-5
    add("generator_flow_consistency", fd_ok, f"max central-difference error {worst:.2e}")

    atlas_ok = all(classify_label(k) == label for label, k in atlas())
    add("atlas_labels", atlas_ok, f"{len(atlas())} representatives classify to their labels")

    rank_ok = True
    for label, k in atlas():
        from .groups import generator_matrix

        m = generator_matrix(k)
        expected = ORBIT_CLASSES[label].expected_rank
        if rat_rank(m) != expected or rank_oracle(m) != expected:
            rank_ok = False
    add("rank_table", rank_ok, "generator ranks match the class table, both routes")

    census_ok = all(
        census_matches_description(k, (-3, 3, -3, 3), 11) for _, k in atlas()
    )
    add("singular_census", census_ok, "singular descriptions match discriminant signs")

    if trials > 0:
        report = fuzz_orbit_invariance(trials, 8, seed)
        add(
            "orbit_invariance_fuzz",
            report.ok,
            f"{report.trials} trials, {len(report.failures)} failures, "
            f"{report.elapsed:.2f}s",
        )
    else:
        add("orbit_invariance_fuzz", True, "skipped (0 trials)")

    return all(item["ok"] for item in items), items
