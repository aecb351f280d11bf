"""Exponential sums over order-d subgroups of (Z/qZ)^x, their cyclotomic
reduction polynomials, and numerical checks of their limiting distribution."""

from .cyclotomic import (
    Polynomial,
    ReductionTable,
    cyclotomic_polynomial,
    euler_phi,
    polynomial_divmod,
    reduction_table,
)
from .equidist import (
    GridSpec,
    MyersonCertificate,
    MyersonCheckResult,
    TupleCloud,
    WeylVector,
    histogram_distance,
    kloosterman_profile,
    myerson_certificate,
    myerson_check,
    subgroup_weyl_profile,
    tuple_cloud,
    weyl_scan,
    weyl_sum,
)
from .errors import *  # noqa: F403
from .expsums import (
    Fixed,
    FullRing,
    Subgroup,
    SumFamilySpec,
    SumRecord,
    family_values,
    identity_residuals,
    kloosterman_complete,
    kloosterman_values,
    named_sum,
    parse_range,
    restricted_sum,
    sum_family,
    verify_identity,
)
from .geometry import (
    GridRegion,
    HypocycloidRegion,
    grid_contains,
    hypocycloid_region,
    image_contains,
    in_region,
    minkowski_region,
)
from .laurent import EmpiricalCloud, ExponentVector, LaurentPolynomial, build_f, build_g, evaluate, sample_image
from .modular import (
    Modulus,
    OrderDElement,
    SubgroupSpec,
    element_of_order,
    elements_of_order,
    enumerate_admissible,
    factor_prime_power,
    is_d_admissible,
    multiplicative_order,
    primitive_root,
    subgroup_of_order,
)

__version__ = "0.1.0"
