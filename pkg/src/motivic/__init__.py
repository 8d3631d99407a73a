"""Motivic integration and stringy E-functions for abelian quotient singularities.

Everything is exact: integers, Laurent polynomials in one variable ``q``
(standing for both ``L`` and ``uv``), and quotients by products of
``q^i - 1``.
"""

from .errors import (
    FixtureMissing,
    MixedTerms,
    MotivicError,
    NonIntegralAge,
    NotPolynomial,
    NotSimplicial,
    NotSmooth,
    ParseError,
    PoleAtPoint,
    RayAlreadyPresent,
    RayOutsideSupport,
)
from .polyring import (
    ONE,
    Q,
    ZERO,
    CycloRational,
    LaurentPoly,
    arith,
    as_polynomial,
    eval_int,
    reduce,
    top_exponent,
)
from .lattice import (
    BoxPoint,
    Classification,
    LatticeBasis,
    LatticePoint,
    QuotientSpec,
    age,
    box_points,
    classify,
    hermite_normal_form,
    lattice_basis,
    make_box_point,
    make_lattice_point,
    parse_spec,
)
from .fan import (
    Fan,
    SmoothnessReport,
    count_cones,
    is_smooth,
    placing_triangulation,
    primitive_box_points,
    quotient_fan,
    resolve_with_rays,
    star_subdivide,
    triangulate,
)
from .stringy import (
    StrataTable,
    StringyResult,
    betti_readout,
    epoly_from_counts,
    epoly_of_fan,
    euler_number,
    motivic_integral_closed,
    strata_by_inclusion_exclusion,
    strata_epolys,
    stringy_age,
    stringy_from_fan,
    stringy_from_resolution,
    stringy_lattice_sum,
)
from .jets import (
    MeasureTerm,
    SncDivisorData,
    Truncation,
    agrees_above,
    enumerate_M,
    level_set_measure,
    tail_floor,
    truncated_integral,
    tuple_measure,
)
from .catalog import Fixture, fixture_names, load_fixture, verify_fixture

__version__ = "0.1.0"
