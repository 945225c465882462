"""Sparse exact multivariate polynomials over the rationals.

Coefficients are Fractions, monomials are exponent tuples.  This is just
enough polynomial algebra for the package: sums, products, derivatives,
substitution of polynomials for variables, and exact evaluation.  It is
meant for tiny polynomials (a handful of variables, total degree below
ten), not general computer algebra.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import RationalLike, as_rational

Monomial = tuple[int, ...]


class Poly:
    """Polynomial with Fraction coefficients in a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(
        self,
        nvars: int,
        terms: Mapping[Monomial, RationalLike] | None = None,
    ) -> None:
        self.nvars = nvars
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                mono = tuple(mono)
                if len(mono) != nvars or any(e < 0 for e in mono):
                    raise ValueError(f"bad monomial {mono} for {nvars} variables")
                c = clean.get(mono, Fraction(0)) + as_rational(coeff)
                if c == 0:
                    clean.pop(mono, None)
                else:
                    clean[mono] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, value: RationalLike) -> "Poly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def var(cls, nvars: int, index: int) -> "Poly":
        mono = tuple(int(i == index) for i in range(nvars))
        return cls(nvars, {mono: 1})

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("mixed variable counts")
            return other
        try:
            return Poly.const(self.nvars, as_rational(other))
        except TypeError:
            return None

    def __add__(self, other) -> "Poly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("negative exponent")
        out = Poly.const(self.nvars, 1)
        for _ in range(exponent):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            c = as_rational(other)
        except TypeError:
            return NotImplemented
        return self.terms == Poly.const(self.nvars, c).terms

    __hash__ = None  # mutable dict inside; not hashable

    # -- calculus and composition ------------------------------------------

    def diff(self, index: int) -> "Poly":
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = m[index]
            if e == 0:
                continue
            dm = m[:index] + (e - 1,) + m[index + 1 :]
            out[dm] = out.get(dm, Fraction(0)) + c * e
        return Poly(self.nvars, out)

    def subs(self, replacements: Sequence["Poly"]) -> "Poly":
        """Substitute ``replacements[i]`` for variable ``i``.

        All replacement polynomials must share a common variable count,
        which becomes the variable count of the result.
        """
        if len(replacements) != self.nvars:
            raise ValueError("need one replacement per variable")
        if replacements:
            m = replacements[0].nvars
            if any(r.nvars != m for r in replacements):
                raise ValueError("replacements have mixed variable counts")
        else:
            m = 0
        out = Poly.zero(m)
        for mono, c in self.terms.items():
            term = Poly.const(m, c)
            for i, e in enumerate(mono):
                for _ in range(e):
                    term = term * replacements[i]
            out = out + term
        return out

    def embed(self, nvars: int, positions: Sequence[int]) -> "Poly":
        """Reinterpret in a larger variable set; ``positions[i]`` is the
        new index of old variable ``i``."""
        if len(positions) != self.nvars:
            raise ValueError("need one position per variable")
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            nm = [0] * nvars
            for old, e in enumerate(m):
                nm[positions[old]] += e
            out[tuple(nm)] = c
        return Poly(nvars, out)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, values: Sequence[RationalLike]) -> Fraction:
        """Exact evaluation at rational arguments."""
        vals = [as_rational(v) for v in values]
        if len(vals) != self.nvars:
            raise ValueError("wrong number of arguments")
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for v, e in zip(vals, m):
                for _ in range(e):
                    term *= v
            total += term
        return total

    def evaluate_float(self, values: Sequence[float]) -> float:
        if len(values) != self.nvars:
            raise ValueError("wrong number of arguments")
        total = 0.0
        for m, c in self.terms.items():
            term = float(c)
            for v, e in zip(values, m):
                term *= v**e
            total += term
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "Poly(0)"
        bits = []
        for m in sorted(self.terms, key=lambda t: (sum(t), t), reverse=True):
            c = self.terms[m]
            mono = "*".join(
                f"x{i}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(m)
                if e
            )
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "Poly(" + " + ".join(bits) + ")"
