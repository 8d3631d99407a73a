"""Stringy E-functions of Gorenstein abelian quotients, three ways.

* from a smooth toric resolution: strata E-polynomials, discrepancies and
  the closed motivic-integral formula;
* from the ages of the group elements;
* from a truncated sum over the lattice points of the orthant.

Stratum classes ``[D_J°]`` and their E-polynomials ``E(D_J°)`` are the same
object here: every stratum is a disjoint union of tori, so both are the
same polynomial in ``q`` (``q = L`` on one side, ``q = uv`` on the other).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import MixedTerms, NotPolynomial, NotSmooth
from .fan import Fan, count_cones, is_smooth, resolve_with_rays
from .lattice import LatticePoint, QuotientSpec, box_points
from .polyring import ZERO_POLY, CycloRational, LaurentPoly, as_polynomial

__all__ = [
    "StrataTable",
    "StringyResult",
    "epoly_from_counts",
    "epoly_of_fan",
    "strata_epolys",
    "strata_by_inclusion_exclusion",
    "closed_strata_epolys",
    "motivic_integral_closed",
    "stringy_from_resolution",
    "stringy_from_fan",
    "stringy_age",
    "stringy_lattice_sum",
    "betti_readout",
    "euler_number",
]

TORUS = LaurentPoly({1: 1, 0: -1})


def epoly_from_counts(d: Sequence[int], n: int) -> LaurentPoly:
    """``sum_k d[k] (q - 1)^(n - k)``: one torus orbit per cone."""
    if len(d) != n + 1:
        raise ValueError(f"need {n + 1} cone counts, got {len(d)}")
    if any(x < 0 for x in d):
        raise ValueError("cone counts must be nonnegative")
    return sum((c * TORUS ** (n - k) for k, c in enumerate(d)), ZERO_POLY)


def epoly_of_fan(f: Fan) -> LaurentPoly:
    return epoly_from_counts(count_cones(f), f.dim)


@dataclass(frozen=True)
class StrataTable:
    """Open strata ``D_J°`` of the exceptional divisor and the discrepancies.

    ``entries`` maps a sorted tuple ``J`` of exceptional ray indices to the
    class of ``D_J°``.  Zero strata are dropped, except ``J = ()``.
    """

    n: int
    entries: dict[tuple[int, ...], LaurentPoly]
    discrepancies: dict[int, int]

    def __post_init__(self):
        if () not in self.entries:
            raise ValueError("the open stratum J = () must be present")
        if any(a < 0 for a in self.discrepancies.values()):
            raise ValueError("discrepancies must be nonnegative")

    def total(self) -> LaurentPoly:
        """The class of ``Y``, by additivity over the partition."""
        return sum(self.entries.values(), ZERO_POLY)

    def exceptional_part(self) -> LaurentPoly:
        return sum((p for J, p in self.entries.items() if J), ZERO_POLY)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "a": [self.discrepancies[j] for j in sorted(self.discrepancies)],
            "rays": sorted(self.discrepancies),
            "strata": {
                ",".join(map(str, J)): p.to_pairs() for J, p in sorted(self.entries.items())
            },
        }


def _require_smooth(f: Fan) -> None:
    report = is_smooth(f)
    if not report:
        raise NotSmooth(f"cone {report.witness} has multiplicity {report.multiplicity}")


def _discrepancies(f: Fan) -> dict[int, int]:
    out = {}
    for j, p in f.exceptional:
        if p.age < 1:
            raise ValueError(f"exceptional ray {p.label()} has age {p.age} < 1")
        out[j] = p.age - 1
    return out


def strata_epolys(f: Fan) -> StrataTable:
    """Open strata by scanning orbits: each cone adds ``(q-1)^(n - dim)`` to its exact J."""
    _require_smooth(f)
    exc = set(f.exceptional_rays)
    acc: dict[tuple[int, ...], LaurentPoly] = {(): ZERO_POLY}
    for c in f.cones:
        J = tuple(i for i in c if i in exc)
        acc[J] = acc.get(J, ZERO_POLY) + TORUS ** (f.dim - len(c))
    entries = {J: p for J, p in acc.items() if p or not J}
    return StrataTable(f.dim, entries, _discrepancies(f))


def closed_strata_epolys(f: Fan) -> dict[tuple[int, ...], LaurentPoly]:
    """``E(D_J)`` for every subset J of exceptional rays, from star-fan cone counts."""
    exc = f.exceptional_rays
    out = {}
    for k in range(len(exc) + 1):
        for J in combinations(exc, k):
            out[J] = epoly_from_counts(count_cones(f, J), f.dim - k)
    return out


def strata_by_inclusion_exclusion(f: Fan) -> StrataTable:
    """Open strata from closed ones: ``E(D_J°) = sum_{K >= J} (-1)^{|K-J|} E(D_K)``."""
    _require_smooth(f)
    closed = closed_strata_epolys(f)
    entries = {}
    for J in closed:
        s = set(J)
        p = ZERO_POLY
        for K, e in closed.items():
            if s <= set(K):
                p = p + (-1) ** (len(K) - len(J)) * e
        if p or not J:
            entries[J] = p
    return StrataTable(f.dim, entries, _discrepancies(f))


def motivic_integral_closed(t: StrataTable) -> CycloRational:
    """``sum_J [D_J°] prod_{j in J} (q-1)/(q^(a_j+1)-1) * q^(-n)``."""
    total = CycloRational(ZERO_POLY)
    for J, cls in t.entries.items():
        num = cls * TORUS ** len(J)
        total = total + CycloRational(num, [t.discrepancies[j] + 1 for j in J])
    return total.shift(-t.n)


@dataclass(frozen=True)
class StringyResult:
    """``e_st`` is ``integral * q^n``.

    ``betti_kind`` is ``"crepant"`` when the resolution behind the result has
    every discrepancy zero; otherwise the Betti readout is only an age
    histogram and is labelled ``"virtual"``.
    """

    integral: CycloRational
    e_st: CycloRational
    n: int
    methods_agreed: tuple[str, ...] = ("resolution",)
    fan: Fan | None = field(default=None, compare=False, repr=False)
    strata: StrataTable | None = field(default=None, compare=False, repr=False)

    @property
    def polynomial(self) -> LaurentPoly:
        return as_polynomial(self.e_st)

    @property
    def betti_kind(self) -> str:
        if self.strata is not None and not any(self.strata.discrepancies.values()):
            return "crepant"
        return "virtual"

    def to_json(self) -> dict:
        poly = self.polynomial
        return {
            "e_st": poly.to_pairs(),
            "integral_num": self.integral.numerator.to_pairs(),
            "integral_den_factors": list(self.integral.denominator),
            "euler": euler_number(poly),
            "betti": {str(k): b for k, b in betti_readout(poly, self.n).items()},
            "betti_kind": self.betti_kind,
            "methods": list(self.methods_agreed),
        }


def stringy_from_fan(f: Fan) -> StringyResult:
    """Stringy E-function from an already-built smooth fan."""
    table = strata_epolys(f)
    integral = motivic_integral_closed(table)
    e_st = integral.shift(f.dim)
    try:
        as_polynomial(e_st)
    except NotPolynomial as exc:
        # cannot happen for a Gorenstein quotient: it would contradict the age formula
        raise AssertionError(f"stringy E-function is not a polynomial: {e_st}") from exc
    return StringyResult(integral, e_st, f.dim, ("resolution",), f, table)


def stringy_from_resolution(spec: QuotientSpec, rays: Sequence[LatticePoint]) -> StringyResult:
    """Resolve by star subdivisions at ``rays`` and apply the closed formula."""
    return stringy_from_fan(resolve_with_rays(spec, rays))


def stringy_age(spec: QuotientSpec) -> LaurentPoly:
    """``sum_g q^(n - age(g))`` over the group elements."""
    return sum((LaurentPoly({spec.n - p.age: 1}) for p in box_points(spec)), ZERO_POLY)


def stringy_lattice_sum(spec: QuotientSpec, S: int) -> LaurentPoly:
    """``(q-1)^n`` times the sum of ``q^(-psi(v))`` over ``v in N`` in the orthant with ``psi <= S``.

    Lattice points are the box points translated by ``Z^n_{>=0}``; the
    translates of ``p`` with ``psi = age(p) + t`` number ``C(t+n-1, n-1)``.
    The result agrees with the full series on exponents ``> n - 1 - S``.
    """
    if S < 0:
        raise ValueError("truncation bound must be nonnegative")
    n = spec.n
    acc: dict[int, int] = {}
    for p in box_points(spec):
        for t in range(0, S - p.age + 1):
            acc[-(p.age + t)] = acc.get(-(p.age + t), 0) + comb(t + n - 1, n - 1)
    return TORUS ** n * LaurentPoly(acc)


def euler_number(e_st: LaurentPoly) -> int:
    return int(e_st(1))


def betti_readout(e_st: LaurentPoly | CycloRational, n: int) -> dict[int, int]:
    """``k -> dim H^{2k}`` read off as the coefficient of ``q^(n-k)``."""
    if isinstance(e_st, CycloRational):
        e_st = as_polynomial(e_st)
    out = {}
    for e, c in sorted(e_st.items(), key=lambda t: n - t[0]):
        if c < 0 or e > n or e < 0:
            raise MixedTerms(f"term {c}*q^{e} has no Betti interpretation in dimension {n}")
        out[n - e] = c
    return out
