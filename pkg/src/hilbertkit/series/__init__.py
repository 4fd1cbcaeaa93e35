from .summation import (
    SeriesParams,
    CertifiedValue,
    TailMethod,
    certified_sum,
    certify_below,
    partial_sum,
    tail_integral,
    verify_beta_series_bound,
    verify_linear_series_bound,
)
from .derivatives import (
    FDerivatives,
    power_term_derivative,
    f_derivative,
    g_derivative,
    h_derivative,
    f_derivatives,
    g3_at_one,
    sign_conditions,
)
from .dpoly import (
    DPolyValue,
    d_polynomial,
    d_polynomial_float,
    verify_region,
    integral_lower_bound,
    d_quantity,
    d_bound,
)
from .euler import periodic_bernoulli_integral, integral_one_to_infinity, euler_maclaurin_check, bernoulli_bracket_check
