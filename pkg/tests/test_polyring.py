from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from motivic import (ONE, CycloRational, LaurentPoly, NotPolynomial, PoleAtPoint, arith,
                     as_polynomial, eval_int, reduce, top_exponent)
from motivic.polyring import NEG_INFINITY, cyclo_factor

from strategies import cyclo, laurent

q = sympy.Symbol("q")


def P(d):
    return LaurentPoly(d)


def to_sympy(x: CycloRational):
    num = sum((c * q ** e for e, c in x.numerator.items()), sympy.Integer(0))
    den = sympy.prod([q ** i - 1 for i in x.denominator], start=sympy.Integer(1))
    return num / den


# -- examples --------------------------------------------------------------

def test_add_identity():
    assert arith(P({1: 1, 0: -1}), ONE, "add") == P({1: 1})


def test_cancel_forms_unity():
    x = CycloRational(P({1: 1, 0: -1}), [2])
    assert arith(x, P({1: 1, 0: 1}), "mul") == ONE
    assert arith(x, P({1: 1, 0: 1}), "mul").denominator == ()


def test_p3_times_factor():
    p3 = P({3: 1, 2: 1, 1: 1, 0: 1})
    got = arith(p3, CycloRational(P({1: 1, 0: -1}), [2]), "mul")
    assert as_polynomial(got) == P({2: 1, 0: 1})


def test_reduce_examples():
    assert reduce(CycloRational(cyclo_factor(2), [2])) == ONE
    x = reduce(CycloRational(P({1: 1, 0: -1}), [2]))
    assert x.numerator == P({1: 1, 0: -1}) and x.denominator == (2,)
    y = reduce(CycloRational(cyclo_factor(4) * cyclo_factor(1), [2]))
    assert y.denominator == ()
    # long division oracle
    quo, rem = sympy.div(sympy.Poly((q ** 4 - 1) * (q - 1), q), sympy.Poly(q ** 2 - 1, q))
    assert rem.is_zero
    assert y.numerator == P({e[0]: int(c) for e, c in quo.terms()})
    assert y.numerator == P({1: 1, 0: -1}) * P({2: 1, 0: 1})


def test_as_polynomial():
    assert as_polynomial(CycloRational(P({4: 1, 2: 1}))) == P({4: 1, 2: 1})
    with pytest.raises(NotPolynomial):
        as_polynomial(CycloRational(P({1: 1, 0: -1}), [2]))
    assert as_polynomial(CycloRational(P({3: 1, 2: 1, 1: 1, 0: 1}) * P({1: 1, 0: -1}), [2])) == P({2: 1, 0: 1})


def test_eval_int():
    assert eval_int(P({4: 1, 2: 1}), 1) == 2
    assert eval_int(P({4: 1, 2: 3}), 1) == 4
    assert eval_int(CycloRational(P({1: 1, 0: -1}), [1]), 2) == 1
    with pytest.raises(PoleAtPoint):
        eval_int(CycloRational(P({0: 1}), [3]), 1)


def test_top_exponent():
    assert top_exponent(P({4: 1, 2: 1})) == 4
    assert top_exponent(LaurentPoly()) == NEG_INFINITY
    assert top_exponent(P({-7: 1, -9: -1})) == -7


def test_rendering():
    assert str(P({4: 1, 2: 3})) == "q^4 + 3*q^2"
    assert str(P({1: 1, 0: -1})) == "q - 1"
    assert str(CycloRational(P({0: 1}), [2, 2])) == "1 / (q^2-1)(q^2-1)"
    x = CycloRational(P({2: 1, 0: 1}), [3, 1])
    assert CycloRational.from_json(x.to_json()) == x
    assert x.to_json()["den"] == [1, 3]


def test_zero_has_no_terms():
    assert (P({2: 3}) - P({2: 3})).terms == {}
    with pytest.raises(ValueError):
        CycloRational(P({0: 1}), [0])


def test_big_integers():
    x = P({0: 1, 1: 1}) ** 80
    assert x.coeff(40) == sympy.binomial(80, 40)


# -- properties ------------------------------------------------------------

@given(cyclo(), cyclo(), cyclo())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == CycloRational(0)
    assert a + b == b + a and a * b == b * a


@given(cyclo())
def test_reduce_idempotent(x):
    r = reduce(x)
    rr = reduce(r)
    assert (rr.numerator, rr.denominator) == (r.numerator, r.denominator)
    for i in r.denominator:
        assert not r.numerator.divmod_cyclo(i)[1].is_zero()


@given(cyclo())
def test_matches_sympy(x):
    assert sympy.simplify(to_sympy(x) - to_sympy(reduce(x))) == 0


@given(cyclo(), cyclo(), st.integers(-4, 5))
def test_eval_multiplicative(x, y, q0):
    try:
        lhs = eval_int(arith(x, y, "mul"), q0)
        rhs = eval_int(x, q0) * eval_int(y, q0)
    except PoleAtPoint:
        assume(False)
    assert lhs == rhs


@given(cyclo(), st.integers(2, 6))
def test_eval_agrees_with_sympy(x, q0):
    assert eval_int(x, q0) == Fraction(str(to_sympy(x).subs(q, q0)))


@given(laurent, laurent)
def test_laurent_mul_eval(a, b):
    for q0 in (2, -3, Fraction(1, 2)):
        assert (a * b)(q0) == a(q0) * b(q0)


@given(st.integers(0, 5), st.integers(0, 12))
def test_geometric_tail(a, S):
    torus = P({1: 1, 0: -1})
    partial = torus * LaurentPoly({-(a + 1) * m: 1 for m in range(1, S + 1)})
    closed = CycloRational(torus, [a + 1])
    diff = closed - CycloRational(partial)
    lo = -(a + 1) * (S + 1) - 20
    assert diff.expand(lo).top_exponent() <= -(a + 1) * (S + 1) + 1


@given(cyclo(), st.integers(-12, -1))
def test_expand_is_series_of_value(x, lo):
    # (series) * denominator agrees with the numerator on the window where no truncation leaks
    den = LaurentPoly({0: 1})
    for i in x.denominator:
        den = den * cyclo_factor(i)
    width = sum(x.denominator)
    ser = x.expand(lo - width)
    assert (ser * den).window(lo=lo) == x.numerator.window(lo=lo)
