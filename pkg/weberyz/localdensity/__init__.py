"""
LocalDensity - 局部 Whittaker 函数与 δ_p、δ₂、δ₃、ρ′
"""

from .whittaker import (
    LocalSetup,
    WhittakerComparison,
    WhittakerSeries,
    compare_with_oracle,
    whittaker_closed,
    whittaker_oracle,
)
from .deltap import (
    DeltaValues,
    delta_fundamental,
    delta_p,
    delta_p_prime,
    delta_p_whittaker,
    delta_prime_fundamental,
    delta_values,
    rho_prime,
    rho_prime_3s3,
)
from .dyadic import DyadicAlpha, delta2_sum, delta2_table, delta2_table_sum, dyadic_alphas
from .triadic import (
    TriadicAlpha,
    delta3_sum,
    delta3_sum_prime,
    delta3_table,
    delta3_table_sum,
    triadic_alphas,
)

__all__ = [
    "LocalSetup",
    "WhittakerComparison",
    "WhittakerSeries",
    "compare_with_oracle",
    "whittaker_closed",
    "whittaker_oracle",
    "DeltaValues",
    "delta_fundamental",
    "delta_p",
    "delta_p_prime",
    "delta_p_whittaker",
    "delta_prime_fundamental",
    "delta_values",
    "rho_prime",
    "rho_prime_3s3",
    "DyadicAlpha",
    "delta2_sum",
    "delta2_table",
    "delta2_table_sum",
    "dyadic_alphas",
    "TriadicAlpha",
    "delta3_sum",
    "delta3_sum_prime",
    "delta3_table",
    "delta3_table_sum",
    "triadic_alphas",
]
