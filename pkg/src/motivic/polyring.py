"""Exact arithmetic in Z[q, q^-1] and its localisation at the factors q^i - 1.

The single variable ``q`` plays two roles at once: it is the class of the
affine line in the Grothendieck ring and it is the Hodge variable ``uv``
after taking E-polynomials.  Every class that occurs for toric strata is a
polynomial in that one variable, so nothing is lost by the identification.

Two value types live here:

``LaurentPoly``
    sparse ``{exponent: coefficient}`` with Python integers.
``CycloRational``
    a ``LaurentPoly`` over a product of factors ``(q^i - 1)``, the
    denominator being kept as a sorted multiset of the indices ``i``.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import NotPolynomial, PoleAtPoint

__all__ = [
    "NEG_INFINITY",
    "LaurentPoly",
    "CycloRational",
    "Q",
    "ONE",
    "ZERO",
    "arith",
    "reduce",
    "as_polynomial",
    "eval_int",
    "top_exponent",
    "cyclo_factor",
]

NEG_INFINITY = -math.inf


class LaurentPoly:
    """Immutable sparse Laurent polynomial in ``q`` with integer coefficients.

    >>> p = LaurentPoly({4: 1, 2: 3})
    >>> str(p)
    'q^4 + 3*q^2'
    >>> p(1)
    Fraction(4, 1)
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            if int(c) != c:
                raise TypeError(f"non-integral coefficient {c!r}")
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        self._terms = tuple(sorted(((e, c) for e, c in acc.items() if c), reverse=True))
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def from_pairs(cls, pairs) -> "LaurentPoly":
        return cls((int(e), int(c)) for e, c in pairs)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], shift: int = 0) -> "LaurentPoly":
        """``coeffs[k]`` is the coefficient of ``q^(k + shift)``."""
        return cls({k + shift: c for k, c in enumerate(coeffs)})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        """Terms in decreasing exponent order."""
        return iter(self._terms)

    def coeff(self, exponent: int) -> int:
        for e, c in self._terms:
            if e == exponent:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self._terms

    def top_exponent(self):
        return self._terms[0][0] if self._terms else NEG_INFINITY

    def bottom_exponent(self):
        return self._terms[-1][0] if self._terms else math.inf

    def is_polynomial(self) -> bool:
        """True when no negative exponent occurs."""
        return not self._terms or self._terms[-1][0] >= 0

    def window(self, lo=None, hi=None) -> "LaurentPoly":
        """Keep the terms with ``lo <= exponent <= hi`` (either bound optional)."""
        return LaurentPoly(
            (e, c)
            for e, c in self._terms
            if (lo is None or e >= lo) and (hi is None or e <= hi)
        )

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly((e, -c) for e, c in self._terms)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self._terms) == 1:
                (e, c), = self._terms
                if c in (1, -1):
                    return LaurentPoly({-e * -k: c ** (-k)})
            raise ValueError("only monomials with unit coefficient are invertible")
        result = ONE_POLY
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``q^k``."""
        return LaurentPoly((e + k, c) for e, c in self._terms)

    def divmod_cyclo(self, i: int) -> tuple["LaurentPoly", "LaurentPoly"]:
        """Long division by the monic ``q^i - 1``.

        The remainder has all exponents in ``[bottom, bottom + i)``.  Since the
        divisor is monic with integer coefficients the quotient is integral.
        """
        if i <= 0:
            raise ValueError("factor index must be positive")
        if not self._terms:
            return ZERO_POLY, ZERO_POLY
        low = self._terms[-1][0]
        work = dict(self._terms)
        quot: dict[int, int] = {}
        for d in range(self._terms[0][0], low + i - 1, -1):
            c = work.pop(d, 0)
            if c:
                quot[d - i] = quot.get(d - i, 0) + c
                work[d - i] = work.get(d - i, 0) + c
        return LaurentPoly(quot), LaurentPoly(work)

    def __call__(self, q0) -> Fraction:
        q0 = Fraction(q0)
        if q0 == 0 and self._terms and self._terms[-1][0] < 0:
            raise PoleAtPoint("negative power of q at q = 0")
        return sum((c * q0 ** e for e, c in self._terms), Fraction(0))

    # -- comparison / rendering ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if isinstance(other, CycloRational):
            return other == self
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPoly({dict(self._terms)!r})"

    def __str__(self):
        return render_terms(self._terms)

    def to_pairs(self) -> list[list[int]]:
        return [[e, c] for e, c in self._terms]


def _monomial_text(e: int, c: int) -> str:
    if e == 0:
        return str(c)
    base = "q" if e == 1 else f"q^{e}"
    return base if c == 1 else f"{c}*{base}"


def render_terms(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for k, (e, c) in enumerate(terms):
        if k == 0:
            parts.append("-" + _monomial_text(e, -c) if c < 0 else _monomial_text(e, c))
        else:
            parts.append(("- " if c < 0 else "+ ") + _monomial_text(e, abs(c)))
    return " ".join(parts)


ZERO_POLY = LaurentPoly()
ONE_POLY = LaurentPoly({0: 1})
Q = LaurentPoly({1: 1})


def cyclo_factor(i: int) -> LaurentPoly:
    """The polynomial ``q^i - 1``."""
    return LaurentPoly({i: 1, 0: -1})


def top_exponent(x: LaurentPoly):
    """Largest exponent carrying a nonzero coefficient, ``-inf`` for zero."""
    return x.top_exponent()


class CycloRational:
    """``numerator / prod(q^i - 1 for i in denominator)``, kept reduced.

    Construction always reduces: every denominator factor that divides the
    numerator exactly is cancelled.  Equality is equality of rational
    functions, not of representations.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator: Iterable[int] = (), *, _reduce: bool = True):
        if isinstance(numerator, int):
            numerator = LaurentPoly({0: numerator})
        if not isinstance(numerator, LaurentPoly):
            raise TypeError(f"numerator must be LaurentPoly, not {type(numerator).__name__}")
        den = tuple(sorted(int(i) for i in denominator))
        if any(i <= 0 for i in den):
            raise ValueError("denominator factor indices must be positive")
        if _reduce:
            numerator, den = _cancel(numerator, den)
        self.numerator = numerator
        self.denominator = den

    @classmethod
    def lift(cls, x) -> "CycloRational":
        if isinstance(x, CycloRational):
            return x
        return cls(x)

    def is_polynomial(self) -> bool:
        return not self.denominator

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (CycloRational, LaurentPoly, int)):
            return NotImplemented
        other = CycloRational.lift(other)
        ca, cb = Counter(self.denominator), Counter(other.denominator)
        common = ca | cb
        num = self.numerator * _product(common - ca) + other.numerator * _product(common - cb)
        return CycloRational(num, common.elements())

    __radd__ = __add__

    def __neg__(self):
        return CycloRational(-self.numerator, self.denominator, _reduce=False)

    def __sub__(self, other):
        if not isinstance(other, (CycloRational, LaurentPoly, int)):
            return NotImplemented
        return self + (-CycloRational.lift(other))

    def __rsub__(self, other):
        return CycloRational.lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, (CycloRational, LaurentPoly, int)):
            return NotImplemented
        other = CycloRational.lift(other)
        return CycloRational(
            self.numerator * other.numerator, self.denominator + other.denominator
        )

    __rmul__ = __mul__

    def shift(self, k: int) -> "CycloRational":
        return CycloRational(self.numerator.shift(k), self.denominator, _reduce=False)

    def __call__(self, q0) -> Fraction:
        return eval_int(self, q0)

    def expand(self, lowest: int) -> LaurentPoly:
        """Laurent expansion in ``q^-1`` keeping every exponent ``>= lowest``.

        Uses ``1/(q^i - 1) = sum_{m >= 1} q^(-i m)``, the expansion valid in
        the completion where ``q^-1`` is small.
        """
        acc = self.numerator.window(lo=lowest)
        for i in self.denominator:
            top = acc.top_exponent()
            if top == NEG_INFINITY:
                return ZERO_POLY
            m_max = (top - lowest) // i
            series = LaurentPoly({-i * m: 1 for m in range(1, m_max + 1)})
            acc = (acc * series).window(lo=lowest)
        return acc

    # -- comparison / rendering ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = CycloRational.lift(other)
        if not isinstance(other, CycloRational):
            return NotImplemented
        ca, cb = Counter(self.denominator), Counter(other.denominator)
        return self.numerator * _product(cb - ca) == other.numerator * _product(ca - cb)

    def __hash__(self):
        # equal rational functions agree at q = 2, which is never a pole
        return hash(eval_int(self, 2))

    def __repr__(self):
        return f"CycloRational({self.numerator!r}, {list(self.denominator)!r})"

    def __str__(self):
        body = str(self.numerator)
        if not self.denominator:
            return body
        if len(self.numerator._terms) > 1:
            body = f"({body})"
        den = "".join("(q-1)" if i == 1 else f"(q^{i}-1)" for i in self.denominator)
        return f"{body} / {den}"

    def to_json(self) -> dict:
        return {"terms": self.numerator.to_pairs(), "den": list(self.denominator)}

    @classmethod
    def from_json(cls, obj) -> "CycloRational":
        return cls(LaurentPoly.from_pairs(obj["terms"]), obj.get("den", ()))


def _product(factors: Counter) -> LaurentPoly:
    out = ONE_POLY
    for i in sorted(factors.elements()):
        out = out * cyclo_factor(i)
    return out


def _cancel(num: LaurentPoly, den: tuple[int, ...]) -> tuple[LaurentPoly, tuple[int, ...]]:
    if num.is_zero():
        return num, ()
    kept = []
    for i in den:
        quot, rem = num.divmod_cyclo(i)
        if rem.is_zero():
            num = quot
        else:
            kept.append(i)
    return num, tuple(kept)


ONE = CycloRational(ONE_POLY)
ZERO = CycloRational(ZERO_POLY)


def arith(a, b, op: str) -> CycloRational:
    """Ring operation ``op`` in {'add', 'sub', 'mul'} on two elements."""
    a, b = CycloRational.lift(a), CycloRational.lift(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def reduce(x) -> CycloRational:
    """Canonical form; cancelling is already done on construction."""
    x = CycloRational.lift(x)
    return CycloRational(x.numerator, x.denominator)


def as_polynomial(x) -> LaurentPoly:
    x = reduce(x)
    if x.denominator:
        raise NotPolynomial(f"{x} has an uncancelled denominator")
    return x.numerator


def eval_int(x, q0) -> Fraction:
    """Exact value at the integer (or rational) point ``q0``."""
    x = reduce(x)
    q0 = Fraction(q0)
    den = Fraction(1)
    for i in x.denominator:
        f = q0 ** i - 1
        if f == 0:
            raise PoleAtPoint(f"q = {q0} is a root of q^{i} - 1")
        den *= f
    return x.numerator(q0) / den
