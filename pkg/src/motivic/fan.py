"""Fans refining the positive orthant in the overlattice ``N``.

Rays are primitive integer vectors written in the coordinates of the
triangular basis returned by :func:`motivic.lattice.lattice_basis`, so a
cone is smooth exactly when its ray matrix is part of a unimodular matrix.
Cones are sorted tuples of ray indices; the zero cone is ``()``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import _linalg as la
from .errors import NotSimplicial, RayAlreadyPresent, RayOutsideSupport
from .lattice import (
    LatticeBasis,
    LatticePoint,
    QuotientSpec,
    box_points,
    lattice_basis,
    make_lattice_point,
)

__all__ = [
    "Fan",
    "SmoothnessReport",
    "primitive_box_points",
    "quotient_fan",
    "star_subdivide",
    "triangulate",
    "placing_triangulation",
    "is_smooth",
    "count_cones",
    "resolve_with_rays",
    "multiplicity",
]

Cone = tuple[int, ...]


@dataclass(frozen=True)
class Fan:
    dim: int
    basis: LatticeBasis
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[Cone, ...]
    exceptional: tuple[tuple[int, LatticePoint], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(r) for r in self.rays))
        object.__setattr__(self, "max_cones", tuple(sorted(tuple(sorted(c)) for c in self.max_cones)))
        object.__setattr__(self, "exceptional", tuple(sorted(self.exceptional)))
        for r in self.rays:
            if math.gcd(*r) != 1:
                raise ValueError(f"ray {r} is not primitive in N")

    @property
    def exceptional_labels(self) -> dict[int, LatticePoint]:
        return dict(self.exceptional)

    @property
    def exceptional_rays(self) -> list[int]:
        return [i for i, _ in self.exceptional]

    def ray_vectors(self, cone: Iterable[int]) -> list[tuple[int, ...]]:
        return [self.rays[i] for i in cone]

    @cached_property
    def simplicial(self) -> bool:
        return all(la.rank(self.ray_vectors(c)) == len(c) for c in self.max_cones)

    @cached_property
    def cones(self) -> tuple[Cone, ...]:
        """Every cone of the fan (face closure of the maximal cones)."""
        seen: set[Cone] = set()
        for c in self.max_cones:
            seen.update(_faces(self, c))
        return tuple(sorted(seen, key=lambda c: (len(c), c)))

    def scaled_ray(self, i: int) -> tuple[int, ...]:
        return self.basis.scaled(self.rays[i])

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "scaled_basis": [list(r) for r in self.basis.basis],
            "denominator": self.basis.denominator,
            "rays": [list(r) for r in self.rays],
            "max_cones": [list(c) for c in self.max_cones],
            "exceptional": {
                str(i): {"coords": list(p.coords), "age": p.age} for i, p in self.exceptional
            },
        }

    @classmethod
    def from_json(cls, obj) -> "Fan":
        R = int(obj["denominator"])
        basis = tuple(tuple(int(x) for x in r) for r in obj["scaled_basis"])
        det = abs(la.det(basis))
        lb = LatticeBasis(basis, R, det)
        exc = []
        for key, val in obj.get("exceptional", {}).items():
            p = make_lattice_point(val["coords"], R)
            if "age" in val and int(val["age"]) != p.age:
                raise ValueError(f"ray {key}: stored age {val['age']} disagrees with coords")
            exc.append((int(key), p))
        return cls(int(obj["dim"]), lb, obj["rays"], obj["max_cones"], tuple(exc))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _faces(f: Fan, cone: Cone) -> set[Cone]:
    vecs = f.ray_vectors(cone)
    if la.rank(vecs) == len(cone):
        return {sub for k in range(len(cone) + 1) for sub in combinations(cone, k)}
    out = {cone}
    for facet in _facets(f, cone):
        out |= _faces(f, facet)
    return out


def _functional(vectors: Sequence[Sequence[int]], cols: Sequence[int]):
    """Linear form ``v -> det(vectors, v)`` on the span projected to ``cols``."""
    base = [la.project(v, cols) for v in vectors]
    return lambda v: la.det(base + [la.project(v, cols)])


def _facets(f: Fan, cone: Cone) -> list[Cone]:
    """Facets of a (possibly non-simplicial) cone, as ray-index tuples."""
    vecs = f.ray_vectors(cone)
    d = la.rank(vecs)
    if d == len(cone):
        return [tuple(x for x in cone if x != i) for i in cone]
    cols = la.projection_columns(vecs)
    found: set[Cone] = set()
    for sub in combinations(cone, d - 1):
        sv = f.ray_vectors(sub)
        if la.rank(sv) < d - 1:
            continue
        w = _functional(sv, cols)
        vals = {i: w(f.rays[i]) for i in cone}
        if all(v >= 0 for v in vals.values()) or all(v <= 0 for v in vals.values()):
            found.add(tuple(i for i in cone if vals[i] == 0))
    return sorted(found)


def _in_cone(f: Fan, cone: Cone, x: Sequence[int]) -> bool:
    vecs = f.ray_vectors(cone)
    if la.rank(vecs) == len(cone):
        lam = la.solve_combination(vecs, x)
        return lam is not None and all(v >= 0 for v in lam)
    if la.rank(vecs + [tuple(x)]) > la.rank(vecs):
        return False
    cols = la.projection_columns(vecs)
    for facet in _facets(f, cone):
        w = _functional(f.ray_vectors(_minimal_spanning(f, facet)), cols)
        inside = next(w(f.rays[i]) for i in cone if i not in facet)
        if w(x) * inside < 0:
            return False
    return True


def _minimal_spanning(f: Fan, cone: Cone) -> Cone:
    """A linearly independent subset of ``cone`` with the same span."""
    chosen: list[int] = []
    for i in cone:
        if la.rank(f.ray_vectors(chosen + [i])) > len(chosen):
            chosen.append(i)
    return tuple(chosen)


def quotient_fan(spec: QuotientSpec) -> Fan:
    """The cone over the orthant, ``C^n / G`` as the affine toric variety."""
    lb = lattice_basis(spec)
    R = spec.denominator
    rays = []
    for i in range(spec.n):
        x = lb.coordinates([R if j == i else 0 for j in range(spec.n)])
        g = math.gcd(*x)
        rays.append(tuple(c // g for c in x))
    return Fan(spec.n, lb, rays, [tuple(range(spec.n))])


def _rescale(f: Fan, p: LatticePoint) -> LatticePoint:
    R = f.basis.denominator
    if p.denominator == R:
        return p
    if R % p.denominator:
        raise ValueError(f"{p.label()} is not in the lattice N")
    return make_lattice_point([c * (R // p.denominator) for c in p.coords], R)


def _ray_of(f: Fan, p: LatticePoint) -> tuple[int, ...]:
    x = f.basis.coordinates(p.coords)
    if math.gcd(*x) != 1:
        raise ValueError(f"box point {p.label()} is not primitive in N")
    return x


def primitive_box_points(spec: QuotientSpec) -> list[LatticePoint]:
    """Nonzero box points whose rays are primitive in ``N``, by age then coordinates.

    Subdividing at all of them, in this order, is a reasonable first try at
    a resolution; the result is not smooth in general.
    """
    base = quotient_fan(spec)
    out = []
    for p in box_points(spec):
        if p.is_zero():
            continue
        if math.gcd(*base.basis.coordinates(p.coords)) == 1:
            out.append(p)
    return sorted(out, key=lambda p: (p.age, p.coords))


def star_subdivide(f: Fan, p: LatticePoint) -> Fan:
    """Insert the ray through ``p``, coning it over the faces it does not lie on.

    ``p`` is normally a box point, but any primitive point of ``N`` in the
    support is accepted.
    """
    p = _rescale(f, p)
    x = _ray_of(f, p)
    if x in f.rays:
        raise RayAlreadyPresent(f"ray {p.label()} is already in the fan")
    containing = [c for c in f.max_cones if _in_cone(f, c, x)]
    if not containing:
        raise RayOutsideSupport(f"{p.label()} is outside the support of the fan")
    new = len(f.rays)
    rays = f.rays + (x,)
    cones = [c for c in f.max_cones if c not in containing]
    for c in containing:
        for facet in _facets(f, c):
            if not _in_cone(f, facet, x):
                cones.append(tuple(sorted(facet + (new,))))
    return Fan(f.dim, f.basis, rays, cones, f.exceptional + ((new, p),))


def _place(f: Fan, indices: Sequence[int]) -> list[Cone]:
    """Placing triangulation of the given rays in the given order.

    A ray outside the current support is joined to every boundary facet it
    sees; a ray inside the support is inserted by stellar subdivision, so
    every ray is used.
    """
    tri: list[Cone] = []
    placed: list[int] = []
    for r in indices:
        x = f.rays[r]
        if not tri:
            tri = [(r,)]
            placed.append(r)
            continue
        d = la.rank(f.ray_vectors(placed))
        if la.rank(f.ray_vectors(placed + [r])) > d:
            tri = [c + (r,) for c in tri]
        else:
            inside = [c for c in tri if _in_cone(f, c, x)]
            if inside:
                tri = [c for c in tri if c not in inside]
                for c in inside:
                    lam = la.solve_combination(f.ray_vectors(c), x)
                    for i, v in zip(c, lam):
                        if v > 0:
                            tri.append(tuple(y for y in c if y != i) + (r,))
            else:
                cols = la.projection_columns(f.ray_vectors(placed))
                owners: dict[Cone, list[Cone]] = {}
                for c in tri:
                    for facet in combinations(sorted(c), len(c) - 1):
                        owners.setdefault(facet, []).append(c)
                added = []
                for facet, cs in owners.items():
                    if len(cs) != 1:
                        continue
                    w = _functional(f.ray_vectors(facet), cols)
                    opp = next(i for i in cs[0] if i not in facet)
                    if w(x) * w(f.rays[opp]) < 0:
                        added.append(facet + (r,))
                tri += added
        placed.append(r)
    return [tuple(sorted(c)) for c in tri]


def triangulate(f: Fan) -> Fan:
    """Refine every non-simplicial maximal cone by placing its rays in index order.

    A simplicial fan is returned unchanged.
    """
    if f.simplicial:
        return f
    cones: list[Cone] = []
    for c in f.max_cones:
        if la.rank(f.ray_vectors(c)) == len(c):
            cones.append(c)
        else:
            cones.extend(_place(f, sorted(c)))
    return Fan(f.dim, f.basis, f.rays, cones, f.exceptional)


def placing_triangulation(spec: QuotientSpec, rays: Sequence[LatticePoint],
                          order: Sequence[int] | None = None) -> Fan:
    """Triangulate the orthant using its rays plus ``rays``, placed in ``order``.

    Ray indices are ``0..n-1`` for ``e_1..e_n`` and ``n + k`` for ``rays[k]``.
    The default order (orthant first) reproduces successive star
    subdivisions.
    """
    base = quotient_fan(spec)
    all_rays = list(base.rays)
    exc = []
    for k, p in enumerate(rays):
        p = _rescale(base, p)
        x = _ray_of(base, p)
        if x in all_rays:
            raise RayAlreadyPresent(f"ray {p.label()} given twice")
        all_rays.append(x)
        exc.append((spec.n + k, p))
    if order is None:
        order = range(len(all_rays))
    order = list(order)
    if sorted(order) != list(range(len(all_rays))):
        raise ValueError("order must be a permutation of the ray indices")
    full = Fan(spec.n, base.basis, all_rays, [tuple(range(len(all_rays)))], tuple(exc))
    for k in range(spec.n, len(all_rays)):
        if not _in_cone(base, base.max_cones[0], all_rays[k]):
            raise RayOutsideSupport(f"{rays[k - spec.n].label()} is outside the orthant")
    return Fan(spec.n, base.basis, all_rays, _place(full, order), tuple(exc))


@dataclass(frozen=True)
class SmoothnessReport:
    smooth: bool
    witness: Cone | None = None
    multiplicity: int = 1

    def __bool__(self):
        return self.smooth


def multiplicity(f: Fan, cone: Cone) -> int:
    """Lattice index of the sublattice generated by the cone's rays in its saturation."""
    vecs = f.ray_vectors(cone)
    if la.rank(vecs) != len(cone):
        raise NotSimplicial(f"cone {cone} is not simplicial")
    if len(cone) == f.dim:
        return abs(la.det(vecs))
    return la.lattice_index(vecs)


def is_smooth(f: Fan) -> SmoothnessReport:
    for c in f.max_cones:
        m = multiplicity(f, c)
        if m != 1:
            return SmoothnessReport(False, c, m)
    return SmoothnessReport(True)


def count_cones(f: Fan, containing: Iterable[int] | None = None) -> list[int]:
    """Cone counts by dimension, optionally restricted to cones containing a set.

    With ``containing = T`` the counts are graded by ``dim - |T|``, i.e. they
    are the cone counts of the star fan of ``T`` in the quotient lattice.
    """
    if not f.simplicial:
        raise NotSimplicial("count_cones needs a simplicial fan")
    T = frozenset(containing or ())
    d = [0] * (f.dim - len(T) + 1)
    for c in f.cones:
        if T <= set(c):
            d[len(c) - len(T)] += 1
    return d


def resolve_with_rays(spec: QuotientSpec, rays: Sequence[LatticePoint]) -> Fan:
    """Star-subdivide the orthant at each box point in turn, then triangulate."""
    f = quotient_fan(spec)
    for p in rays:
        f = star_subdivide(f, p)
    return triangulate(f)
