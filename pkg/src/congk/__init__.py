"""Exact invariants of congruence monoids over Q and quadratic fields."""

from .abelian import FgAbGroup, smith_normal_form
from .congmon import CongruenceMonoidSpec, GammaGen, Modulus, f_order, ray_class_group
from .errors import BudgetExceeded, CongKError, ConsistencyError, InputError
from .kernels import BACKEND
from .quadfield import FieldSpec, IdealRep, PrimeAbove

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "CongKError",
    "CongruenceMonoidSpec",
    "ConsistencyError",
    "FgAbGroup",
    "FieldSpec",
    "GammaGen",
    "IdealRep",
    "InputError",
    "Modulus",
    "PrimeAbove",
    "f_order",
    "ray_class_group",
    "smith_normal_form",
]
