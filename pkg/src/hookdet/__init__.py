"""Exact hook and block hook determinants, with LGV path-system certificates."""

from hookdet.kernels import BACKEND as KERNEL_BACKEND
from hookdet.poly import Polynomial, VarId, parse, render, x

__version__ = "0.1.0"

__all__ = ["Polynomial", "VarId", "parse", "render", "x", "KERNEL_BACKEND"]
