import itertools
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from motivic import (CycloRational, LaurentPoly, MixedTerms, NotSmooth, QuotientSpec, StrataTable,
                     betti_readout, box_points, classify, count_cones, epoly_from_counts,
                     epoly_of_fan, euler_number, is_smooth, lattice_basis, make_box_point,
                     motivic_integral_closed, parse_spec, placing_triangulation,
                     primitive_box_points, resolve_with_rays, strata_by_inclusion_exclusion,
                     strata_epolys, stringy_age, stringy_from_fan, stringy_from_resolution,
                     stringy_lattice_sum)
from motivic.stringy import TORUS

from strategies import gorenstein_abelian, gorenstein_cyclic


def P(d):
    return LaurentPoly(d)


def res(label, rays):
    spec = parse_spec(label)
    return spec, stringy_from_resolution(spec, [make_box_point(c, spec.denominator) for c in rays])


def brute_lattice_sum(spec, S):
    """Enumerate N in the orthant with psi <= S directly on the grid (1/R) Z^n."""
    R = spec.denominator
    lb = lattice_basis(spec)
    acc = {}
    for c in itertools.product(range(S * R + 1), repeat=spec.n):
        if sum(c) > S * R or sum(c) % R:
            continue
        try:
            lb.coordinates(c)
        except ValueError:
            continue
        psi = sum(c) // R
        acc[-psi] = acc.get(-psi, 0) + 1
    return TORUS ** spec.n * LaurentPoly(acc)


def test_epoly_from_counts_examples():
    assert epoly_from_counts([1, 6, 15, 18, 8], 4) == P({4: 1, 3: 2, 2: 3, 1: 2})
    assert epoly_from_counts([1, 0, 0, 0], 3) == TORUS ** 3
    assert epoly_from_counts([1, 8, 28, 56, 68, 48, 15], 6) == P({6: 1, 5: 2, 4: 3, 3: 4, 2: 3, 1: 2})
    with pytest.raises(ValueError):
        epoly_from_counts([1, 2], 2)


def test_strata_examples():
    _, r = res("1/3(1,2,1,2)", [(1, 2, 1, 2), (2, 1, 2, 1)])
    e = r.strata.entries
    assert e[(4,)] == P({3: 1, 2: 1}) == e[(5,)]
    assert e[(4, 5)] == P({2: 1, 1: 2, 0: 1})
    assert e[()] == P({4: 1, 0: -1})
    _, r = res("1/4(1,3,1,3)", [(1, 3, 1, 3), (2, 2, 2, 2), (3, 1, 3, 1)])
    assert r.strata.entries[(5,)] == P({3: 1, 2: 1, 1: -1, 0: -1})
    assert (4, 6) not in r.strata.entries
    _, r = res("1/2(1,1,1,1)", [(1, 1, 1, 1)])
    assert r.strata.entries[(4,)] == P({3: 1, 2: 1, 1: 1, 0: 1})


def test_strata_need_smooth():
    spec = parse_spec("1/3(1,2,1,2)")
    f = resolve_with_rays(spec, [make_box_point((1, 2, 1, 2), 3)])
    with pytest.raises(NotSmooth):
        strata_epolys(f)
    with pytest.raises(NotSmooth):
        stringy_from_fan(f)


def test_motivic_integral_examples():
    t = StrataTable(2, {(): P({2: 1, 0: -1}), (2,): P({1: 1, 0: 1})}, {2: 0})
    assert motivic_integral_closed(t) == CycloRational(t.total()).shift(-2)
    _, r = res("1/2(1,1,1,1)", [(1, 1, 1, 1)])
    assert r.integral == CycloRational(P({4: 1, 2: 1})).shift(-4)
    t0 = StrataTable(3, {(): P({3: 1})}, {})
    assert motivic_integral_closed(t0) == CycloRational(P({0: 1}))


def test_stringy_from_resolution_examples():
    assert res("1/3(1,2,1,2)", [(1, 2, 1, 2), (2, 1, 2, 1)])[1].polynomial == P({4: 1, 2: 2})
    assert res("1/4(1,3,1,3)", [(1, 3, 1, 3), (2, 2, 2, 2), (3, 1, 3, 1)])[1].polynomial == P({4: 1, 2: 3})
    _, r = res("1/3(1,2,1,2,1,2)", [(1, 2, 1, 2, 1, 2), (2, 1, 2, 1, 2, 1)])
    assert r.polynomial == P({6: 1, 3: 2})
    assert set(r.strata.discrepancies.values()) == {2}
    assert r.e_st == r.integral.shift(6)


def test_stringy_age_examples():
    assert stringy_age(parse_spec("1/2(1,1,1,1)")) == P({4: 1, 2: 1})
    assert stringy_age(QuotientSpec.trivial(5)) == P({5: 1})
    for r, k in [(2, 1), (2, 2), (3, 2), (4, 1)]:
        n = r * k
        assert stringy_age(QuotientSpec.cyclic(r, (1,) * n)) == P({n - i * k: 1 for i in range(r)})


def test_lattice_sum_examples():
    spec = parse_spec("1/2(1,1,1,1)")
    assert stringy_lattice_sum(spec, 0) == TORUS ** 4
    spec = parse_spec("1/3(1,1,1)")
    got = stringy_lattice_sum(spec, 6)
    assert got.window(lo=-3) == P({3: 1, 2: 1, 1: 1})


@pytest.mark.parametrize("label,S", [("1/3(1,1,1)", 3), ("1/2(1,1,1,1)", 2), ("1/4(1,3)", 5),
                                     ("1/6(1,2,3)", 2)])
def test_lattice_sum_against_enumeration(label, S):
    spec = parse_spec(label)
    assert stringy_lattice_sum(spec, S) == brute_lattice_sum(spec, S)


def test_betti_examples():
    assert betti_readout(P({4: 1, 2: 3}), 4) == {0: 1, 2: 3}
    assert euler_number(P({4: 1, 2: 3})) == 4
    assert betti_readout(P({7: 1}), 7) == {0: 1}
    assert betti_readout(P({6: 1, 3: 2}), 6) == {0: 1, 3: 2}
    with pytest.raises(MixedTerms):
        betti_readout(P({4: 1, 1: -1}), 4)
    with pytest.raises(MixedTerms):
        betti_readout(P({5: 1}), 4)


def test_result_json():
    _, r = res("1/4(1,3,1,3)", [(1, 3, 1, 3), (2, 2, 2, 2), (3, 1, 3, 1)])
    js = r.to_json()
    assert js["e_st"] == [[4, 1], [2, 3]] and js["euler"] == 4
    assert js["betti"] == {"0": 1, "2": 3} and js["betti_kind"] == "virtual"
    _, c = res("1/3(1,1,1)", [(1, 1, 1)])
    assert c.to_json()["betti_kind"] == "crepant"


CASES = [
    ("1/2(1,1,1,1)", [(1, 1, 1, 1)]),
    ("1/3(1,2,1,2)", [(1, 2, 1, 2), (2, 1, 2, 1)]),
    ("1/4(1,3,1,3)", [(1, 3, 1, 3), (2, 2, 2, 2), (3, 1, 3, 1)]),
    ("1/3(1,1,1)", [(1, 1, 1)]),
    ("1/2(1,1)", [(1, 1)]),
    ("1/3(1,1,1,1,1,1)", [(1,) * 6]),
]


@pytest.mark.parametrize("label,rays", CASES)
def test_open_closed_consistency(label, rays):
    _, r = res(label, rays)
    assert strata_epolys(r.fan) == strata_by_inclusion_exclusion(r.fan)


@pytest.mark.parametrize("label,rays", CASES)
def test_remark_identity(label, rays):
    spec, r = res(label, rays)
    e_y = epoly_of_fan(r.fan)
    assert r.strata.entries[()] == P({spec.n: 1, 0: -1})
    assert e_y - r.strata.entries[()] == r.strata.exceptional_part()
    assert r.strata.total() == e_y


@pytest.mark.parametrize("label,rays", CASES)
def test_method_agreement_on_cases(label, rays):
    spec, r = res(label, rays)
    assert r.polynomial == stringy_age(spec)


@given(gorenstein_cyclic(n_min=2, n_max=3, r_max=10))
def test_method_agreement_random(spec):
    f = resolve_with_rays(spec, primitive_box_points(spec))
    if is_smooth(f):
        assert stringy_from_fan(f).polynomial == stringy_age(spec)


@given(gorenstein_cyclic(n_min=2, n_max=3, r_max=10))
def test_crepant_specialization(spec):
    cls = classify(spec)
    crepant = [p for p in primitive_box_points(spec) if p.age == 1]
    f = resolve_with_rays(spec, crepant)
    if is_smooth(f) and cls.canonical:
        r = stringy_from_fan(f)
        assert not any(r.strata.discrepancies.values())
        assert r.polynomial == epoly_of_fan(f) == r.strata.total()


@given(gorenstein_abelian(n_max=5))
def test_euler_count(spec):
    assert stringy_age(spec)(1) == classify(spec).group_order


@given(gorenstein_abelian(n_max=4, order_max=24), st.integers(0, 6))
def test_lattice_window(spec, S):
    lo = spec.n - S
    assert stringy_lattice_sum(spec, S).window(lo=lo) == stringy_age(spec).window(lo=lo)


@given(st.sampled_from(CASES[:4]), st.randoms(use_true_random=False))
def test_triangulation_independence(case, rnd):
    label, rays = case
    spec = parse_spec(label)
    pts = [make_box_point(c, spec.denominator) for c in rays]
    order = list(range(spec.n + len(pts)))
    rnd.shuffle(order)
    f = placing_triangulation(spec, pts, order)
    if is_smooth(f):
        assert stringy_from_fan(f).polynomial == stringy_age(spec)
    else:
        with pytest.raises(NotSmooth):
            stringy_from_fan(f)


def test_non_box_rays_keep_e_st():
    spec = parse_spec("1/3(1,1,1)")
    base = make_box_point((1, 1, 1), 3)
    extra = [base] + [__import__("motivic").make_lattice_point(c, 3) for c in [(0, 3, 3), (1, 1, 4)]]
    fans = {}
    for perm in itertools.permutations(range(3, 6)):
        f = placing_triangulation(spec, extra, [0, 1, 2, *perm])
        assert is_smooth(f)
        fans[f.max_cones] = stringy_from_fan(f).polynomial
    assert len(fans) == 2 and set(fans.values()) == {P({3: 1, 2: 1, 1: 1})}


def test_gcd_of_alpha_primitive_points():
    # points that are multiples of others are skipped
    spec = parse_spec("1/7(3,2,2)")
    pts = primitive_box_points(spec)
    for p in pts:
        assert gcd(*lattice_basis(spec).coordinates(p.coords)) == 1
    assert len(pts) < len(box_points(spec)) - 1
    assert count_cones(resolve_with_rays(spec, pts))[0] == 1
