"""The four hook shapes A, B, C, D, their matrices and determinant formulas.

Entry (r, c) of a shape's m×m matrix is the level variable ``x_k`` with

    A: k = m - min(r, c) + 1        B: k = max(r, c)
    C: k = max(m - c + 1, r)        D: k = max(m - r + 1, c)

B, C and D are A with the within-matrix reversal ``R_i <-> R_{m-i+1}``
applied to rows and columns (B), rows only (C) or columns only (D); each
reversal is floor(m/2) swaps, which is where the sign of C and D comes from.
"""

from __future__ import annotations

import enum

from hookdet.errors import IndexOutOfRange, InvalidOrder
from hookdet.matrix import PolyMatrix, SwapSchedule
from hookdet.poly import ONE, Polynomial


class HookShape(enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"

    @property
    def reverses_rows(self) -> bool:
        return self in (HookShape.B, HookShape.C)

    @property
    def reverses_cols(self) -> bool:
        return self in (HookShape.B, HookShape.D)

    @classmethod
    def from_reversals(cls, rows: bool, cols: bool) -> "HookShape":
        return {(False, False): cls.A, (True, False): cls.C,
                (False, True): cls.D, (True, True): cls.B}[(rows, cols)]


def _check_order(m):
    if not isinstance(m, int) or m < 1:
        raise InvalidOrder(f"hook order must be a positive integer, got {m!r}")


def hook_entry_level(shape: HookShape, m: int, r: int, c: int) -> int:
    _check_order(m)
    if not (1 <= r <= m and 1 <= c <= m):
        raise IndexOutOfRange(f"({r},{c}) outside a {m}×{m} hook")
    if shape is HookShape.A:
        return m - min(r, c) + 1
    if shape is HookShape.B:
        return max(r, c)
    if shape is HookShape.C:
        return max(m - c + 1, r)
    return max(m - r + 1, c)


def hook_matrix(shape: HookShape, m: int, block: tuple = (1, 1)) -> PolyMatrix:
    _check_order(m)
    i, j = block
    return PolyMatrix.from_function(
        m, lambda r, c: Polynomial.var(i, j, hook_entry_level(shape, m, r, c)))


def level_difference(i: int, j: int, k: int, m: int) -> Polynomial:
    """``x[i,j,k] - x[i,j,k+1]`` with level m+1 read as zero."""
    if k == m:
        return Polynomial.var(i, j, m)
    return Polynomial.var(i, j, k) - Polynomial.var(i, j, k + 1)


def sign_exponent(shape: HookShape, m: int) -> int:
    _check_order(m)
    return m // 2 if shape in (HookShape.C, HookShape.D) else 0


def hook_det_formula(shape: HookShape, m: int, block: tuple = (1, 1)) -> Polynomial:
    _check_order(m)
    i, j = block
    out = ONE
    for k in range(1, m + 1):
        out = out * level_difference(i, j, k, m)
    return -out if sign_exponent(shape, m) % 2 else out


def reversal_swaps(m: int, offset: int = 0) -> list:
    """The pairs ``(offset+i, offset+m-i+1)`` for i = 1..floor(m/2)."""
    return [(offset + i, offset + m - i + 1) for i in range(1, m // 2 + 1)]


def hook_swap_schedule(shape: HookShape, m: int) -> SwapSchedule:
    """Schedule turning ``hook_matrix(A, m)`` into ``hook_matrix(shape, m)``."""
    _check_order(m)
    pairs = reversal_swaps(m)
    return SwapSchedule(pairs if shape.reverses_rows else (),
                        pairs if shape.reverses_cols else ())


def paper_sign_exponent(shape: HookShape, m: int) -> int:
    """Two-case closed form: m/2 (even m) or (m-1)/2 (odd m) for C and D."""
    _check_order(m)
    if shape in (HookShape.A, HookShape.B):
        return 0
    return m // 2 if m % 2 == 0 else (m - 1) // 2

