"""
QuadOrders - 二次型、类群与理想计数
"""

from .forms import (
    ClassGroup,
    Discriminant,
    QuadClass,
    class_group,
    class_number,
    class_number_formula,
)
from .ideals import OrderIdeal, content, ideals_of_norm
from .counting import (
    S_set,
    diff_set,
    genus_of,
    genus_represents,
    r_class,
    rho,
    rho_M,
    rho_genus,
    rho_p,
)
from .smallcm import (
    IdealData,
    SmallCMPair,
    enumerate_elements,
    make_small_cm_pair,
    project_class,
)

__all__ = [
    "ClassGroup",
    "Discriminant",
    "QuadClass",
    "class_group",
    "class_number",
    "class_number_formula",
    "OrderIdeal",
    "content",
    "ideals_of_norm",
    "S_set",
    "diff_set",
    "genus_of",
    "genus_represents",
    "r_class",
    "rho",
    "rho_M",
    "rho_genus",
    "rho_p",
    "IdealData",
    "SmallCMPair",
    "enumerate_elements",
    "make_small_cm_pair",
    "project_class",
]
