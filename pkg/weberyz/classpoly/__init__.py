"""
ClassPoly - 类多项式、判别式与结式
"""

from .polynomial import (
    DiscClassResult,
    IntPolynomial,
    RoundingReport,
    check_unit,
    class_roots,
    disc_class_norms,
    disc_class_numeric,
    discriminant_via_resultant,
    max_prime_factor,
    minimal_polynomial,
    poly_discriminant,
    resultant,
)
from .cache import PolynomialCache

__all__ = [
    "DiscClassResult",
    "IntPolynomial",
    "RoundingReport",
    "check_unit",
    "class_roots",
    "disc_class_norms",
    "disc_class_numeric",
    "discriminant_via_resultant",
    "max_prime_factor",
    "minimal_polynomial",
    "poly_discriminant",
    "resultant",
    "PolynomialCache",
]
