"""
Predictions - 预测赋值：一般公式、理想对计数与结式公式
"""

from .context import PredictionContext, kappa_candidates, kappa_ell
from .formulas import (
    IdealPairWitness,
    ord_disc_main,
    ord_disc_pairs,
    ord_disc_prime,
    ord_resultant,
    ord_resultant_main,
    pair_witnesses,
    predicted_disc_class,
    predicted_factorization,
    w_weight,
)

__all__ = [
    "PredictionContext",
    "kappa_candidates",
    "kappa_ell",
    "IdealPairWitness",
    "ord_disc_main",
    "ord_disc_pairs",
    "ord_disc_prime",
    "ord_resultant",
    "ord_resultant_main",
    "pair_witnesses",
    "predicted_disc_class",
    "predicted_factorization",
    "w_weight",
]
