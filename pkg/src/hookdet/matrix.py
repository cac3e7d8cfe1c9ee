"""Dense square matrices of polynomials and exact, division-free determinants.

All public indices are 1-based, matching the ``R_i``/``C_i`` row and column
notation used for swap schedules.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

from hookdet import kernels as _k
from hookdet.errors import (DimensionMismatch, IndexOutOfRange, InvalidOrder,
                            OrderTooLarge, ParseError)
from hookdet.poly import ONE, ZERO, Polynomial, parse, render

COFACTOR_MAX_ORDER = 7
SUBSET_DP_MAX_ORDER = 14


class PolyMatrix:
    __slots__ = ("_rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(Polynomial.coerce(e) for e in r) for r in rows)
        n = len(rows)
        if n == 0:
            raise InvalidOrder("matrix order must be positive")
        for r in rows:
            if len(r) != n:
                raise DimensionMismatch(f"row of length {len(r)} in a matrix with {n} rows")
        self._rows = rows

    @classmethod
    def from_function(cls, n: int, f) -> "PolyMatrix":
        """Build an n×n matrix from ``f(r, c)`` with 1-based r, c."""
        if n < 1:
            raise InvalidOrder(f"matrix order must be positive, got {n}")
        return cls([[f(r, c) for c in range(1, n + 1)] for r in range(1, n + 1)])

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls.from_function(n, lambda r, c: ONE if r == c else ZERO)

    @property
    def order(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple:
        return self._rows

    def entry(self, r: int, c: int) -> Polynomial:
        n = self.order
        if not (1 <= r <= n and 1 <= c <= n):
            raise IndexOutOfRange(f"entry ({r},{c}) outside a {n}×{n} matrix")
        return self._rows[r - 1][c - 1]

    def variables(self) -> list:
        vs = set()
        for row in self._rows:
            for e in row:
                vs.update(e.variables())
        return sorted(vs)

    def evaluate(self, assignment: Mapping) -> list:
        return [[e.eval(assignment) for e in row] for row in self._rows]

    def scale_row(self, r: int, c) -> "PolyMatrix":
        rows = [list(row) for row in self._rows]
        rows[r - 1] = [e * c for e in rows[r - 1]]
        return PolyMatrix(rows)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"PolyMatrix(order={self.order})"

    def to_json_obj(self) -> dict:
        return {"order": self.order,
                "entries": [[render(e) for e in row] for row in self._rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "PolyMatrix":
        try:
            n = obj["order"]
            entries = obj["entries"]
        except (KeyError, TypeError):
            raise ParseError("matrix JSON needs 'order' and 'entries'") from None
        m = cls([[parse(s) if isinstance(s, str) else s for s in row] for row in entries])
        if m.order != n:
            raise DimensionMismatch(f"declared order {n} but {m.order} rows given")
        return m

    @classmethod
    def from_json(cls, text: str) -> "PolyMatrix":
        return cls.from_json_obj(json.loads(text))

    def pretty(self) -> str:
        cells = [[render(e) for e in row] for row in self._rows]
        width = [max(len(cells[r][c]) for r in range(self.order)) for c in range(self.order)]
        return "\n".join("  ".join(s.rjust(w) for s, w in zip(row, width)) for row in cells)


@dataclass(frozen=True)
class SwapSchedule:
    row_swaps: tuple = ()
    col_swaps: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "row_swaps", tuple(tuple(p) for p in self.row_swaps))
        object.__setattr__(self, "col_swaps", tuple(tuple(p) for p in self.col_swaps))
        for a, b in self.row_swaps + self.col_swaps:
            if a == b:
                raise ValueError(f"swap ({a},{b}) must use distinct indices")

    def __len__(self):
        return len(self.row_swaps) + len(self.col_swaps)

    @property
    def sign(self) -> int:
        return -1 if len(self) % 2 else 1

    def __add__(self, other: "SwapSchedule") -> "SwapSchedule":
        return SwapSchedule(self.row_swaps + other.row_swaps, self.col_swaps + other.col_swaps)


def apply_swaps(m: PolyMatrix, s: SwapSchedule) -> tuple[PolyMatrix, int]:
    """Apply row swaps then column swaps in order; returns (matrix, ±1)."""
    n = m.order
    for a, b in s.row_swaps + s.col_swaps:
        if not (1 <= a <= n and 1 <= b <= n):
            raise IndexOutOfRange(f"swap ({a},{b}) outside order {n}")
    rows = [list(r) for r in m.rows]
    for a, b in s.row_swaps:
        rows[a - 1], rows[b - 1] = rows[b - 1], rows[a - 1]
    for a, b in s.col_swaps:
        for row in rows:
            row[a - 1], row[b - 1] = row[b - 1], row[a - 1]
    return PolyMatrix(rows), s.sign


def assemble_blocks(blocks: Sequence[Sequence[PolyMatrix]]) -> PolyMatrix:
    """Place block (i, j) at rows (i-1)m+1..im and columns (j-1)m+1..jm."""
    nb = len(blocks)
    if nb == 0:
        raise DimensionMismatch("need at least one block")
    if any(len(row) != nb for row in blocks):
        raise DimensionMismatch("block grid must be square")
    m = blocks[0][0].order
    if any(b.order != m for row in blocks for b in row):
        raise DimensionMismatch("all blocks must have the same order")
    rows = []
    for brow in blocks:
        for r in range(m):
            rows.append([e for b in brow for e in b.rows[r]])
    return PolyMatrix(rows)


def _guard(m: PolyMatrix, limit: int, engine: str):
    if m.order > limit:
        raise OrderTooLarge(f"{engine} refuses order {m.order} (limit {limit})")


def det_cofactor(m: PolyMatrix, max_order: int = COFACTOR_MAX_ORDER) -> Polynomial:
    """Reference determinant by recursive first-row cofactor expansion."""
    _guard(m, max_order, "det_cofactor")

    def rec(rows, cols):
        if len(cols) == 1:
            return rows[0][cols[0]]
        total = ZERO
        top = rows[0]
        rest = rows[1:]
        for pos, c in enumerate(cols):
            e = top[c]
            if e.is_zero():
                continue
            minor = rec(rest, cols[:pos] + cols[pos + 1:])
            term = e * minor
            total = total - term if pos % 2 else total + term
        return total

    return rec(m.rows, tuple(range(m.order)))


def det_subset_dp(m: PolyMatrix, max_order: int = SUBSET_DP_MAX_ORDER) -> Polynomial:
    """Determinant by Laplace expansion over column subsets.

    ``minors[S]`` holds the minor on the first |S| rows and the columns in S
    (a bitmask); row k extends every k-subset. O(2^n · n) polynomial
    multiply-adds and no division.
    """
    _guard(m, max_order, "det_subset_dp")
    n = m.order
    rows = m.rows
    minors = {0: {(): 1}}
    for k in range(n):
        row = rows[k]
        nxt = {}
        for S, minor in minors.items():
            if not minor:
                continue
            # sign of column c = (-1)^(number of columns of S to the right of c)
            above = 0
            for c in range(n - 1, -1, -1):
                bit = 1 << c
                if S & bit:
                    above += 1
                    continue
                e = row[c]._terms
                if not e:
                    continue
                T = S | bit
                acc = nxt.get(T)
                if acc is None:
                    acc = nxt[T] = {}
                _k.addmul_into(acc, e, minor, -1 if above % 2 else 1)
        minors = {S: _k.strip_zeros(acc) for S, acc in nxt.items()}
    full = minors.get((1 << n) - 1, {})
    return Polynomial._raw(full)


def det_eval_bareiss(m: PolyMatrix, assignment: Mapping) -> int:
    """Integer determinant of ``m`` evaluated at ``assignment`` (fraction-free)."""
    return _k.bareiss_det(m.evaluate(assignment))


def det_integer(rows: Sequence[Sequence[int]]) -> int:
    return _k.bareiss_det([list(r) for r in rows])

