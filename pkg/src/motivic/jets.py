"""Arc-space side of the theory, at the level of measures of level sets.

Arcs themselves are never built.  What is computed are the index sets
``M_{J,s}``, the cylinder measure of each ``ord``-tuple and the partial sums
of ``sum_s mu(F_D = s) q^-s``, each with a certified filtration floor: an
integer ``m`` with ``top_exponent(value) <= -m``.

Components with multiplicity ``a_i = 0`` do not change ``ord_D``, so for
them ``M_{J,s}`` is infinite.  ``level_set_measure`` sums those coordinates
in closed form, using ``(q - 1) * sum_{m >= 1} q^-m = 1``;
``enumerate_M`` needs an explicit ``max_total`` to list them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import ceil
from typing import Iterator, Mapping, Sequence

from .polyring import CycloRational, LaurentPoly, ZERO_POLY
from .stringy import TORUS, StrataTable

__all__ = [
    "SncDivisorData",
    "MeasureTerm",
    "Truncation",
    "enumerate_M",
    "tuple_measure",
    "level_set_measure",
    "truncated_integral",
    "tail_floor",
    "agrees_above",
]


@dataclass(frozen=True)
class SncDivisorData:
    """``D = sum a_i D_i`` on a smooth ``Y`` of dimension ``n``.

    ``strata`` maps sorted component-index tuples ``J`` (0-based positions in
    ``multiplicities``) to ``[D_J°]``; missing keys are empty strata.
    """

    n: int
    multiplicities: tuple[int, ...]
    strata: Mapping[tuple[int, ...], LaurentPoly]

    def __post_init__(self):
        if any(a < 0 for a in self.multiplicities):
            raise ValueError("multiplicities must be nonnegative")
        r = len(self.multiplicities)
        for J in self.strata:
            if tuple(sorted(set(J))) != tuple(J) or any(not 0 <= j < r for j in J):
                raise ValueError(f"bad stratum index {J}")

    @property
    def r(self) -> int:
        return len(self.multiplicities)

    @property
    def max_a(self) -> int:
        return max((*self.multiplicities, 1))

    def stratum(self, J: Sequence[int]) -> LaurentPoly:
        return self.strata.get(tuple(J), ZERO_POLY)

    def total(self) -> LaurentPoly:
        """``[Y]`` as the sum over the partition."""
        return sum(self.strata.values(), ZERO_POLY)

    @classmethod
    def from_strata(cls, t: StrataTable) -> "SncDivisorData":
        rays = sorted(t.discrepancies)
        pos = {j: i for i, j in enumerate(rays)}
        strata = {tuple(pos[j] for j in J): p for J, p in t.entries.items()}
        return cls(t.n, tuple(t.discrepancies[j] for j in rays), strata)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "a": list(self.multiplicities),
            "strata": {json.dumps(list(J)): p.to_pairs() for J, p in sorted(self.strata.items())},
        }

    @classmethod
    def from_json(cls, obj) -> "SncDivisorData":
        strata = {tuple(json.loads(k)): LaurentPoly.from_pairs(v) for k, v in obj["strata"].items()}
        return cls(int(obj["n"]), tuple(obj["a"]), strata)


@dataclass(frozen=True)
class MeasureTerm:
    value: LaurentPoly
    filtration_floor: int

    def __post_init__(self):
        if self.value.top_exponent() > -self.filtration_floor:
            raise ValueError(
                f"top exponent {self.value.top_exponent()} exceeds floor -{self.filtration_floor}"
            )


def _compositions(weights: Sequence[int], s: int, positive: bool) -> Iterator[tuple[int, ...]]:
    """Tuples ``m`` with ``sum w_i m_i = s`` and every ``m_i`` >= 1 (or >= 0). All weights > 0."""
    if not weights:
        if s == 0:
            yield ()
        return
    w, rest = weights[0], weights[1:]
    lo = 1 if positive else 0
    for m in range(lo, s // w + 1):
        for tail in _compositions(rest, s - w * m, positive):
            yield (m, *tail)


def _bounded_positive(k: int, total: int) -> Iterator[tuple[int, ...]]:
    """All ``k``-tuples of positive integers with sum at most ``total``."""
    if k == 0:
        yield ()
        return
    for m in range(1, total - (k - 1) + 1):
        for tail in _bounded_positive(k - 1, total - m):
            yield (m, *tail)


def enumerate_M(d: SncDivisorData, J: Sequence[int], s: int,
                max_total: int | None = None) -> list[tuple[int, ...]]:
    """``M_{J,s}``: tuples with ``sum a_i m_i = s`` and support exactly ``J``, sorted.

    When ``J`` contains a component with ``a_i = 0`` the set is infinite and
    ``max_total`` (a cap on ``sum m_i``) is required.
    """
    J = sorted(set(J))
    if s < 0:
        return []
    zero = [j for j in J if d.multiplicities[j] == 0]
    live = [j for j in J if d.multiplicities[j] > 0]
    if zero and max_total is None:
        raise ValueError("M_{J,s} is infinite for a crepant component; pass max_total")
    out = []
    for mv in _compositions([d.multiplicities[j] for j in live], s, positive=True):
        room = None if max_total is None else max_total - sum(mv)
        if room is not None and room < len(zero):
            continue
        for mz in _bounded_positive(len(zero), room) if zero else [()]:
            m = [0] * d.r
            for j, x in zip(live, mv):
                m[j] = x
            for j, x in zip(zero, mz):
                m[j] = x
            out.append(tuple(m))
    return sorted(out)


def tuple_measure(d: SncDivisorData, m: Sequence[int]) -> MeasureTerm:
    """``[D_J°] q^(-sum m) (q-1)^|J| q^-n`` with ``J = supp(m)``."""
    J = tuple(i for i, x in enumerate(m) if x)
    total = sum(m)
    value = (d.stratum(J) * TORUS ** len(J)).shift(-total - d.n)
    return MeasureTerm(value, total)


def level_set_measure(d: SncDivisorData, s: int) -> MeasureTerm:
    """``mu(F_D^{-1}(s))``, the sum over the finite partition by ``(J, m)``.

    Crepant coordinates of ``m`` are summed exactly, so a crepant ``j`` in
    ``J`` contributes the factor 1 in place of ``(q-1) q^(-m_j)``; its
    minimal ``m_j = 1`` enters the floor.
    """
    value = ZERO_POLY
    floor = None
    for J in _subsets(d.r):
        cls = d.stratum(J)
        if not cls:
            continue
        live = [j for j in J if d.multiplicities[j] > 0]
        n_zero = len(J) - len(live)
        for mv in _compositions([d.multiplicities[j] for j in live], s, positive=True):
            value = value + (cls * TORUS ** len(live)).shift(-sum(mv) - d.n)
            f = sum(mv) + n_zero
            floor = f if floor is None else min(floor, f)
    if floor is None:
        floor = s + ceil(s / d.max_a)
    return MeasureTerm(value, floor)


def _subsets(r: int) -> Iterator[tuple[int, ...]]:
    for k in range(r + 1):
        yield from combinations(range(r), k)


def tail_floor(d: SncDivisorData, S: int) -> int:
    """Certified floor of ``sum_{s > S} mu(F_D = s) q^-s``."""
    return S + 1 + ceil((S + 1) / d.max_a)


@dataclass(frozen=True)
class Truncation:
    """Partial sum through ``s = S`` and the floor of everything discarded."""

    partial: LaurentPoly
    S: int
    tail_floor: int

    def window(self) -> LaurentPoly:
        """The exponents certified to match the full series."""
        return self.partial.window(lo=-self.tail_floor + 1)


def truncated_integral(d: SncDivisorData, S: int) -> Truncation:
    if S < 0:
        raise ValueError("truncation bound must be nonnegative")
    acc = ZERO_POLY
    for s in range(S + 1):
        acc = acc + level_set_measure(d, s).value.shift(-s)
    return Truncation(acc, S, tail_floor(d, S))


def agrees_above(partial: LaurentPoly, closed: CycloRational | LaurentPoly, floor: int) -> bool:
    """Do ``partial`` and the ``q^-1``-expansion of ``closed`` match on exponents ``> -floor``?"""
    lo = -floor + 1
    if isinstance(closed, LaurentPoly):
        closed = CycloRational(closed)
    return partial.window(lo=lo) == closed.expand(lo)

