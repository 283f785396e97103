"""Systole bounds for principal congruence covers of Hilbert modular varieties.

Exact arithmetic in monogenic totally real fields, ideals in Hermite
normal form, SL2 over the ring of integers and its congruence quotients,
and the length bounds for closed geodesics built on top of them.
"""

__version__ = "0.1.0"

from .number_field import (  # noqa: E402
    AlgebraicInteger,
    NumberField,
    embed,
    embed_error_bound,
    make_field,
    norm,
    preset,
    trace,
)
from .ideals import (  # noqa: E402
    IdealHNF,
    PrimeIdeal,
    contains,
    factor_ideal,
    factor_rational_prime,
    integer_ideal,
    min_rational_integer,
    mul_ideals,
    pow_ideal,
    principal_ideal,
)
from .modular_group import (  # noqa: E402
    MatrixSL2,
    brute_force_image_order,
    in_gamma,
    index_bounds,
    lemma1_check,
    lemma2_bound,
    lemma2_check,
    order_sl2_prime_power,
    order_sl2_quotient,
    random_gamma_element,
    reduce_mod,
    trace_decomposition,
)
from .systole import (  # noqa: E402
    free_action_check,
    search_shortest,
    systole_lower_bound,
    theorem_bound,
    upper_bound_witness,
    verify_suite,
)
