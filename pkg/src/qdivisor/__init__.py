"""Exact q-series toolkit for MacMahon-type divisor sums U_t(a,q)."""

from .macmahon import MacParams, mo_coeff, u_cheb, u_direct, u_product
from .report import IdentityReport
from .series import QSeries, XPoly

__version__ = "0.1.0"

__all__ = ["MacParams", "QSeries", "XPoly", "IdentityReport", "mo_coeff", "u_cheb", "u_direct", "u_product"]
