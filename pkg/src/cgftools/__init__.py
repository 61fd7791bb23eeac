"""Exact cyclotomic generating functions: forms, statistics, families and monoids."""
from .cgf_core import (
    CycloForm,
    NotCgf,
    NotNonnegative,
    NotPolynomial,
    RationalForm,
    cgf_check,
    cyclo_to_poly,
    cyclo_to_rational,
    rational_to_poly,
)
from .cyclotomic import cyclo, q_int
from .polyring import IntPoly

__all__ = [
    "CycloForm",
    "IntPoly",
    "NotCgf",
    "NotNonnegative",
    "NotPolynomial",
    "RationalForm",
    "cgf_check",
    "cyclo",
    "cyclo_to_poly",
    "cyclo_to_rational",
    "q_int",
    "rational_to_poly",
]

__version__ = "0.1.0"
