"""Overlattices of abelian quotient singularities and their box points.

A quotient ``C^n / G`` with ``G`` abelian diagonal is described by generators
``(1/r)(a_1, ..., a_n)``.  All lattice vectors are stored as integers scaled
by one global denominator ``R = lcm(r)``: the vector ``c`` stands for
``c / R``.  With that convention the overlattice ``N`` is the integer
row-span of ``R * e_i`` and the scaled generators, and the group
``G = N / Z^n`` is the set of scaled vectors with entries in ``[0, R)``.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NonIntegralAge, ParseError

__all__ = [
    "QuotientSpec",
    "BoxPoint",
    "LatticePoint",
    "make_box_point",
    "make_lattice_point",
    "LatticeBasis",
    "Classification",
    "parse_spec",
    "group_elements",
    "box_points",
    "age",
    "classify",
    "lattice_basis",
    "hermite_normal_form",
    "inverse_point",
    "is_small",
]


@dataclass(frozen=True)
class QuotientSpec:
    """Ambient dimension plus generators ``(r, alpha)`` with ``0 <= alpha_j < r``.

    Smallness of a single generator is checked on request with
    :meth:`check_small`; construction itself only validates the normal form,
    so that non-Gorenstein or non-small input can still be classified.
    """

    n: int
    generators: tuple[tuple[int, tuple[int, ...]], ...]

    def __post_init__(self):
        gens = tuple((int(r), tuple(int(a) for a in alpha)) for r, alpha in self.generators)
        object.__setattr__(self, "generators", gens)
        if self.n <= 0:
            raise ValueError("dimension must be positive")
        if not gens:
            raise ValueError("at least one generator is required")
        for r, alpha in gens:
            if r <= 0:
                raise ValueError(f"generator order must be positive, got {r}")
            if len(alpha) != self.n:
                raise ValueError(f"generator {alpha} does not have {self.n} entries")
            if any(not 0 <= a < r for a in alpha):
                raise ValueError(f"entries of 1/{r}{alpha} must lie in [0, {r})")

    @classmethod
    def cyclic(cls, r: int, alpha: Sequence[int]) -> "QuotientSpec":
        return cls(len(alpha), ((r, tuple(alpha)),))

    @classmethod
    def trivial(cls, n: int) -> "QuotientSpec":
        return cls(n, ((1, (0,) * n),))

    @property
    def denominator(self) -> int:
        return math.lcm(*(r for r, _ in self.generators))

    def scaled_generators(self) -> list[tuple[int, ...]]:
        R = self.denominator
        return [tuple(a * (R // r) for a in alpha) for r, alpha in self.generators]

    def check_small(self, strict: bool | None = None) -> bool:
        """Verify the smallness condition on every generator.

        ``strict`` defaults to raising for single-generator input and to a
        warning when several generators are given.
        """
        ok = is_small(self)
        if not ok:
            if strict is None:
                strict = len(self.generators) == 1
            msg = f"group action of {self.label()} is not small"
            if strict:
                raise ValueError(msg)
            warnings.warn(msg, stacklevel=2)
        return ok

    def label(self) -> str:
        return " + ".join(f"1/{r}({','.join(map(str, a))})" for r, a in self.generators)

    def __str__(self):
        return self.label()

    def to_json(self) -> dict:
        return {"n": self.n, "generators": [[r, list(a)] for r, a in self.generators]}

    @classmethod
    def from_json(cls, obj) -> "QuotientSpec":
        return cls(int(obj["n"]), tuple((r, tuple(a)) for r, a in obj["generators"]))


def is_small(spec: QuotientSpec) -> bool:
    """``gcd(r, a_1, .., (a_j omitted), .., a_n) == 1`` for every generator and ``j``."""
    for r, alpha in spec.generators:
        if r == 1:
            continue
        for j in range(spec.n):
            if math.gcd(r, *(a for k, a in enumerate(alpha) if k != j)) != 1:
                return False
    return True


_SPEC_RE = re.compile(r"^\s*1\s*/\s*(\d+)\s*\(\s*([-\d\s,]*)\)\s*$")


def parse_spec(text: str | None = None, gens: Iterable[str] = ()) -> QuotientSpec:
    """Parse ``"1/r(a1,...,an)"`` and/or repeated ``"r:a1,...,an"`` strings.

    Entries are reduced mod ``r`` so that ``1/3(1,-1)`` is accepted.
    """
    pairs = []
    if text:
        for chunk in text.split("+"):
            m = _SPEC_RE.match(chunk)
            if not m:
                raise ParseError(f"cannot parse quotient type {chunk.strip()!r}; expected 1/r(a1,...,an)")
            pairs.append((int(m.group(1)), m.group(2)))
    for g in gens:
        r, sep, rest = g.partition(":")
        if not sep or not r.strip().isdigit():
            raise ParseError(f"cannot parse generator {g!r}; expected r:a1,...,an")
        pairs.append((int(r), rest))
    if not pairs:
        raise ParseError("no generators given")
    generators = []
    for r, body in pairs:
        try:
            alpha = tuple(int(x) for x in body.split(",") if x.strip())
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        if r <= 0:
            raise ParseError("generator order must be positive")
        generators.append((r, tuple(a % r for a in alpha)))
    n = len(generators[0][1])
    if n == 0 or any(len(a) != n for _, a in generators):
        raise ParseError("generators must all have the same positive length")
    return QuotientSpec(n, tuple(generators))


@dataclass(frozen=True, order=True)
class LatticePoint:
    """A point ``coords / denominator`` of ``N`` in the orthant.

    ``age`` is the value of the linear function with ``psi(e_i) = 1``, so
    the discrepancy of the divisor of its ray is ``age - 1``; ``order`` is the
    least ``m`` with ``m * point`` integral.
    """

    coords: tuple[int, ...]
    denominator: int
    age: int = field(compare=False)
    order: int = field(compare=False)

    @property
    def vector(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.denominator) for c in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def label(self) -> str:
        g = math.gcd(self.denominator, *self.coords)
        return f"1/{self.denominator // g}({','.join(str(c // g) for c in self.coords)})"

    def to_json(self) -> dict:
        return {"coords": list(self.coords), "denominator": self.denominator,
                "age": self.age, "order": self.order}

    @classmethod
    def from_json(cls, obj) -> "LatticePoint":
        return make_lattice_point(tuple(obj["coords"]), int(obj["denominator"]))


class BoxPoint(LatticePoint):
    """Representative of a group element in the half-open unit box ``[0, 1)^n``."""

    def __post_init__(self):
        if any(not 0 <= c < self.denominator for c in self.coords):
            raise ValueError(f"{self.coords}/{self.denominator} is not in the unit box")


def make_lattice_point(coords: Sequence[int], R: int) -> LatticePoint:
    """A point of the orthant with integral ``psi``; box points come back as :class:`BoxPoint`."""
    coords = tuple(int(c) for c in coords)
    if any(c < 0 for c in coords):
        raise ValueError(f"{coords}/{R} is not in the positive orthant")
    if all(c < R for c in coords):
        return make_box_point(coords, R)
    s = sum(coords)
    if s % R:
        raise NonIntegralAge(f"psi of {coords}/{R} is {Fraction(s, R)}, not an integer")
    return LatticePoint(coords, R, s // R, R // math.gcd(R, *coords))


def make_box_point(coords: Sequence[int], R: int) -> BoxPoint:
    coords = tuple(int(c) % R for c in coords)
    s = sum(coords)
    if s % R:
        raise NonIntegralAge(f"age of {coords}/{R} is {Fraction(s, R)}, not an integer")
    return BoxPoint(coords, R, s // R, R // math.gcd(R, *coords))


def group_elements(spec: QuotientSpec) -> list[tuple[int, ...]]:
    """Scaled representatives of every element of ``G``, lexicographically sorted.

    Breadth-first additive closure of the generators modulo ``R``.
    """
    R = spec.denominator
    gens = spec.scaled_generators()
    start = (0,) * spec.n
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % R for a, b in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(seen)


def box_points(spec: QuotientSpec) -> list[BoxPoint]:
    """One :class:`BoxPoint` per group element, identity first.

    Raises :class:`NonIntegralAge` when some element has fractional age.
    """
    R = spec.denominator
    return [make_box_point(c, R) for c in group_elements(spec)]


def age(p: BoxPoint) -> int:
    s = sum(p.coords)
    if s % p.denominator:
        raise NonIntegralAge(f"age of {p.coords}/{p.denominator} is not an integer")
    return s // p.denominator


def inverse_point(p: BoxPoint) -> BoxPoint:
    R = p.denominator
    return make_box_point(tuple((R - c) % R for c in p.coords), R)


@dataclass(frozen=True)
class Classification:
    gorenstein: bool
    terminal: bool
    canonical: bool
    group_order: int

    def to_json(self) -> dict:
        return {"gorenstein": self.gorenstein, "terminal": self.terminal,
                "canonical": self.canonical, "group_order": self.group_order}


def classify(spec: QuotientSpec) -> Classification:
    """Gorenstein, terminal and canonical flags from the ages of ``G``.

    Terminal means every nontrivial element has age strictly above 1,
    canonical means age at least 1.  Ages are rational here, so the test
    also applies to non-Gorenstein input.
    """
    R = spec.denominator
    elems = group_elements(spec)
    nonzero = [Fraction(sum(c), R) for c in elems if any(c)]
    return Classification(
        gorenstein=all(sum(c) % R == 0 for c in elems),
        terminal=all(a > 1 for a in nonzero),
        canonical=all(a >= 1 for a in nonzero),
        group_order=len(elems),
    )


def hermite_normal_form(rows: Iterable[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix.

    Upper triangular pivots, positive pivot entries, entries above a pivot
    reduced into ``[0, pivot)``; zero rows are dropped.
    """
    A = [list(map(int, r)) for r in rows]
    if not A:
        return []
    ncols = len(A[0])
    top = 0
    for col in range(ncols):
        while True:
            live = [i for i in range(top, len(A)) if A[i][col]]
            if not live:
                break
            best = min(live, key=lambda i: abs(A[i][col]))
            A[top], A[best] = A[best], A[top]
            piv = A[top][col]
            done = True
            for i in range(top + 1, len(A)):
                if A[i][col]:
                    f = A[i][col] // piv
                    A[i] = [x - f * y for x, y in zip(A[i], A[top])]
                    if A[i][col]:
                        done = False
            if done:
                break
        if top < len(A) and A[top][col]:
            if A[top][col] < 0:
                A[top] = [-x for x in A[top]]
            piv = A[top][col]
            for i in range(top):
                f = A[i][col] // piv
                if f:
                    A[i] = [x - f * y for x, y in zip(A[i], A[top])]
            top += 1
            if top == len(A):
                break
    return [r for r in A[:top]]


@dataclass(frozen=True)
class LatticeBasis:
    """Rows ``b_i`` with ``N = span_Z(b_i / denominator)``."""

    basis: tuple[tuple[int, ...], ...]
    denominator: int
    det_index: int

    @property
    def n(self) -> int:
        return len(self.basis)

    def coordinates(self, scaled: Sequence[int]) -> tuple[int, ...]:
        """Integer coordinates ``x`` with ``x . basis = scaled``.

        Raises ``ValueError`` when the vector is not in ``N``.
        """
        B = self.basis
        x: list[int] = []
        for j in range(self.n):
            rest = scaled[j] - sum(x[i] * B[i][j] for i in range(j))
            q, r = divmod(rest, B[j][j])
            if r:
                raise ValueError(f"{tuple(scaled)}/{self.denominator} is not in the lattice N")
            x.append(q)
        return tuple(x)

    def scaled(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Inverse of :meth:`coordinates`."""
        return tuple(sum(c * self.basis[i][j] for i, c in enumerate(coords)) for j in range(self.n))

    def to_json(self) -> dict:
        return {"scaled_basis": [list(r) for r in self.basis], "denominator": self.denominator}


def lattice_basis(spec: QuotientSpec) -> LatticeBasis:
    """Triangular basis of ``R * N`` from ``R * e_i`` and the scaled generators."""
    R = spec.denominator
    rows = [[R if i == j else 0 for j in range(spec.n)] for i in range(spec.n)]
    rows += [list(g) for g in spec.scaled_generators()]
    H = hermite_normal_form(rows)
    det = math.prod(H[i][i] for i in range(spec.n))
    return LatticeBasis(tuple(tuple(r) for r in H), R, det)
