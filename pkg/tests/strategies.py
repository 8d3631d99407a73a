"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from motivic import CycloRational, LaurentPoly, QuotientSpec, classify

small_int = st.integers(-6, 6)

laurent = st.dictionaries(st.integers(-5, 6), st.integers(-9, 9).filter(bool), max_size=5).map(LaurentPoly)

factors = st.lists(st.integers(1, 4), max_size=3)


@st.composite
def cyclo(draw):
    return CycloRational(draw(laurent), draw(factors))


@st.composite
def gorenstein_cyclic(draw, n_min=1, n_max=4, r_max=9):
    n = draw(st.integers(n_min, n_max))
    r = draw(st.integers(1, r_max))
    alpha = draw(st.lists(st.integers(0, r - 1), min_size=n - 1, max_size=n - 1))
    alpha.append((-sum(alpha)) % r)
    return QuotientSpec.cyclic(r, alpha)


@st.composite
def gorenstein_abelian(draw, n_max=4, order_max=60):
    n = draw(st.integers(1, n_max))
    gens = []
    for _ in range(draw(st.integers(1, 2))):
        r = draw(st.integers(1, 8))
        alpha = draw(st.lists(st.integers(0, r - 1), min_size=n - 1, max_size=n - 1))
        alpha.append((-sum(alpha)) % r)
        gens.append((r, tuple(alpha)))
    spec = QuotientSpec(n, tuple(gens))
    if classify(spec).group_order > order_max:
        return QuotientSpec(n, tuple(gens[:1]))
    return spec
