"""Worked examples shipped as JSON fixtures.

Each fixture holds the quotient type, the subdivision rays, the resulting
fan, and hand-entered expected values (cone counts, ``E(Y)``, strata,
``E_st``).  The expected values are typed in here, never computed, so a
fixture can check the library rather than just restate it.

Fixture names use ``r.alphas`` (``"3.1212"`` is ``1/3(1,2,1,2)``).
``STRINGY_FIXTURES`` overrides the directory the fixtures are read from.
Exceptional rays are numbered from 1 in the order they are listed, matching
``tau_1, tau_2, ...``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from math import comb
from pathlib import Path

from .errors import FixtureMissing
from .fan import Fan, count_cones, is_smooth, resolve_with_rays
from .lattice import LatticePoint, QuotientSpec, make_box_point
from .polyring import LaurentPoly
from .stringy import (epoly_from_counts, epoly_of_fan, strata_epolys, stringy_age,
                      stringy_from_fan)

__all__ = ["Example", "EXAMPLES", "Fixture", "fixture_dir", "load_fixture",
           "fixture_names", "build_fixture", "write_fixtures", "Check", "verify_fixture"]


def _p(*coeffs_by_exp: tuple[int, int]) -> LaurentPoly:
    return LaurentPoly(dict(coeffs_by_exp))


@dataclass(frozen=True)
class Example:
    name: str
    r: int
    alpha: tuple[int, ...]
    rays: tuple[tuple[int, ...], ...]   # numerators over r
    d: tuple[int, ...]
    e_y: LaurentPoly
    e_st: LaurentPoly
    discrepancies: tuple[int, ...]
    closed: dict[str, LaurentPoly] = field(default_factory=dict)    # E(D_J), J as "1,2"
    open: dict[str, LaurentPoly] = field(default_factory=dict)      # E(D_J°)
    star_d: dict[str, tuple[int, ...]] = field(default_factory=dict)
    source: str = "worked example"

    @property
    def spec(self) -> QuotientSpec:
        return QuotientSpec.cyclic(self.r, self.alpha)

    @property
    def label(self) -> str:
        return self.spec.label()


def _ones(r: int, k: int) -> Example:
    """``1/r(1,..,1)`` with ``n = kr``: one blow-up, ``D = P^(n-1)``."""
    n = r * k
    d = tuple(comb(n + 1, j) for j in range(n)) + (n,)
    # E(Y) = (q^n - 1) + E(P^(n-1)); E_st replaces E(P^(n-1)) by its (q-1)/(q^k-1) multiple
    e_y = LaurentPoly({e: 1 for e in range(1, n + 1)})
    e_st = LaurentPoly({n - i * k: 1 for i in range(r)})
    return Example(
        name=f"{r}.{'1' * n}", r=r, alpha=(1,) * n, rays=((1,) * n,), d=d, e_y=e_y,
        e_st=e_st, discrepancies=(k - 1,),
        closed={"1": LaurentPoly({e: 1 for e in range(n)})},
        source="family 1/r(1,...,1)" if (r, k) != (2, 2) else "worked example",
    )


_TAU_FACE = _p((3, 1), (2, 2), (1, 2), (0, 1))
_EDGE = _p((2, 1), (1, 2), (0, 1))

EXAMPLES: dict[str, Example] = {}
for _ex in (
    _ones(2, 2),
    Example(
        name="3.1212", r=3, alpha=(1, 2, 1, 2), rays=((1, 2, 1, 2), (2, 1, 2, 1)),
        d=(1, 6, 15, 18, 8), e_y=_p((4, 1), (3, 2), (2, 3), (1, 2)), e_st=_p((4, 1), (2, 2)),
        discrepancies=(1, 1),
        closed={"1": _TAU_FACE, "2": _TAU_FACE, "1,2": _EDGE},
        open={"": _p((4, 1), (0, -1)), "1": _p((3, 1), (2, 1)), "2": _p((3, 1), (2, 1)),
              "1,2": _EDGE},
        star_d={"1": (1, 5, 9, 6), "2": (1, 5, 9, 6), "1,2": (1, 4, 4)},
    ),
    Example(
        name="4.1313", r=4, alpha=(1, 3, 1, 3), rays=((1, 3, 1, 3), (2, 2, 2, 2), (3, 1, 3, 1)),
        d=(1, 7, 20, 26, 12), e_y=_p((4, 1), (3, 3), (2, 5), (1, 3)), e_st=_p((4, 1), (2, 3)),
        discrepancies=(1, 1, 1),
        closed={"1": _TAU_FACE, "3": _TAU_FACE, "2": _p((3, 1), (2, 3), (1, 3), (0, 1)),
                "1,2": _EDGE, "2,3": _EDGE, "1,3": LaurentPoly(), "1,2,3": LaurentPoly()},
        open={"": _p((4, 1), (0, -1)), "1": _p((3, 1), (2, 1)), "3": _p((3, 1), (2, 1)),
              "2": _p((3, 1), (2, 1), (1, -1), (0, -1)), "1,2": _EDGE, "2,3": _EDGE,
              "1,3": LaurentPoly(), "1,2,3": LaurentPoly()},
        star_d={"2": (1, 6, 12, 8)},
    ),
    Example(
        name="3.121212", r=3, alpha=(1, 2, 1, 2, 1, 2),
        rays=((1, 2, 1, 2, 1, 2), (2, 1, 2, 1, 2, 1)),
        d=(1, 8, 28, 56, 68, 48, 15),
        e_y=_p((6, 1), (5, 2), (4, 3), (3, 4), (2, 3), (1, 2)), e_st=_p((6, 1), (3, 2)),
        discrepancies=(2, 2),
    ),
    _ones(2, 1), _ones(2, 3), _ones(3, 1), _ones(3, 2), _ones(4, 1), _ones(2, 4),
):
    EXAMPLES[_ex.name] = _ex
del _ex


@dataclass(frozen=True)
class Fixture:
    name: str
    spec: QuotientSpec
    rays: tuple[LatticePoint, ...]
    fan: Fan
    expected: dict

    def poly(self, key: str) -> LaurentPoly:
        return LaurentPoly.from_pairs(self.expected[key])

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "label": self.spec.label(),
            "spec": self.spec.to_json(),
            "rays": [p.to_json() for p in self.rays],
            "fan": self.fan.to_json(),
            "expected": self.expected,
        }

    @classmethod
    def from_json(cls, obj) -> "Fixture":
        return cls(obj["name"], QuotientSpec.from_json(obj["spec"]),
                   tuple(LatticePoint.from_json(p) for p in obj["rays"]),
                   Fan.from_json(obj["fan"]), obj["expected"])


def _expected(ex: Example) -> dict:
    return {
        "d": list(ex.d),
        "E_Y": ex.e_y.to_pairs(),
        "E_st": ex.e_st.to_pairs(),
        "E_st_text": str(ex.e_st),
        "discrepancies": list(ex.discrepancies),
        "closed": {k: v.to_pairs() for k, v in ex.closed.items()},
        "open": {k: v.to_pairs() for k, v in ex.open.items()},
        "star_d": {k: list(v) for k, v in ex.star_d.items()},
        "source": ex.source,
    }


def build_fixture(ex: Example) -> Fixture:
    spec = ex.spec
    R = spec.denominator
    rays = tuple(make_box_point(tuple(a * (R // ex.r) for a in v), R) for v in ex.rays)
    return Fixture(ex.name, spec, rays, resolve_with_rays(spec, rays), _expected(ex))


def _packaged_dir() -> Path:
    return Path(str(resources.files(__package__) / "fixtures"))


def fixture_dir() -> Path:
    env = os.environ.get("STRINGY_FIXTURES")
    return Path(env) if env else _packaged_dir()


def fixture_names(directory: Path | None = None) -> list[str]:
    directory = directory or fixture_dir()
    if not directory.is_dir():
        return []
    return sorted(p.stem for p in directory.glob("*.json"))


def load_fixture(name: str, directory: Path | None = None) -> Fixture:
    path = (directory or fixture_dir()) / f"{name}.json"
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise FixtureMissing(f"no fixture {name!r} in {path.parent}") from None
    return Fixture.from_json(json.loads(text))


def write_fixtures(directory: Path | None = None) -> list[Path]:
    """Regenerate every fixture file from :data:`EXAMPLES`."""
    directory = Path(directory) if directory else _packaged_dir()
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name, ex in EXAMPLES.items():
        path = directory / f"{name}.json"
        path.write_text(json.dumps(build_fixture(ex).to_json(), indent=1, sort_keys=True) + "\n")
        out.append(path)
    return out


@dataclass(frozen=True)
class Check:
    fixture: str
    quantity: str
    expected: str
    computed: str

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


def _exc_index(fx: Fixture, label: str) -> tuple[int, ...]:
    exc = [i for i, _ in fx.fan.exceptional]
    return tuple(sorted(exc[int(k) - 1] for k in label.split(",") if k))


def verify_fixture(fx: Fixture) -> list[Check]:
    """Recompute everything a fixture states and compare, one row per quantity."""
    e = fx.expected
    f = fx.fan
    rows = [Check(fx.name, "smooth", "True", str(bool(is_smooth(f))))]
    rows.append(Check(fx.name, "d", str(e["d"]), str(count_cones(f))))
    rows.append(Check(fx.name, "E(Y)", str(fx.poly("E_Y")), str(epoly_of_fan(f))))
    got_a = [p.age - 1 for _, p in f.exceptional]
    rows.append(Check(fx.name, "discrepancies", str(e["discrepancies"]), str(got_a)))
    for label, d in sorted(e.get("star_d", {}).items()):
        J = _exc_index(fx, label)
        rows.append(Check(fx.name, f"d(Star {label})", str(d), str(count_cones(f, J))))
    for label, pairs in sorted(e.get("closed", {}).items()):
        J = _exc_index(fx, label)
        got = epoly_from_counts(count_cones(f, J), f.dim - len(J))
        rows.append(Check(fx.name, f"E(D_{{{label}}})", str(LaurentPoly.from_pairs(pairs)), str(got)))
    if e.get("open"):
        table = strata_epolys(f)
        for label, pairs in sorted(e["open"].items()):
            got = table.entries.get(_exc_index(fx, label), LaurentPoly())
            rows.append(Check(fx.name, f"E(D°_{{{label}}})", str(LaurentPoly.from_pairs(pairs)), str(got)))
    want = str(fx.poly("E_st"))
    rows.append(Check(fx.name, "E_st (resolution)", want, str(stringy_from_fan(f).polynomial)))
    rows.append(Check(fx.name, "E_st (age)", want, str(stringy_age(fx.spec))))
    return rows
