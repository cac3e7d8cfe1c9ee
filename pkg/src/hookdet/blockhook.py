"""Block hook families, their product formulas and swap-schedule derivations.

Every family is an N×N grid of m×m hooks; block (i, j) uses the variables
``x[i,j,*]`` and the shape ``family.shape_of(i, j)``. The determinant of each
family is ``(-1)^e * prod_k det(X_k)`` where ``X_k`` is the N×N matrix of
level differences ``x[r,s,k] - x[r,s,k+1]``. The exponent e is not a stored
table: it is the swap count of the family's derivation from A(N, m), built
recursively through each family's base family.
"""

from __future__ import annotations

import enum
import random
import time
from dataclasses import asdict, dataclass, field

from hookdet.errors import IndexOutOfRange, InvalidOrder, OrderTooLarge
from hookdet.hooks import HookShape, hook_matrix, level_difference, reversal_swaps
from hookdet.matrix import (SUBSET_DP_MAX_ORDER, PolyMatrix, SwapSchedule,
                            apply_swaps, assemble_blocks, det_eval_bareiss,
                            det_subset_dp)
from hookdet.poly import ONE, Polynomial

_A, _B, _C, _D = HookShape.A, HookShape.B, HookShape.C, HookShape.D


class BlockFamily(enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    Ep = "Ep"
    F = "F"
    Fp = "Fp"
    G = "G"
    Gp = "Gp"

    @property
    def display(self) -> str:
        return self.value.replace("p", "′")

    @classmethod
    def parse(cls, tag: str) -> "BlockFamily":
        t = tag.strip().replace("′", "p").replace("'", "p")
        try:
            return cls(t)
        except ValueError:
            raise ValueError(f"unknown block family {tag!r}") from None

    def shape_of(self, i: int, j: int) -> HookShape:
        """Hook shape of block (i, j); parities use the 1-based indices."""
        i_odd, j_odd = i % 2 == 1, j % 2 == 1
        f = BlockFamily
        if self in (f.A, f.B, f.C, f.D):
            return HookShape(self.value)
        if self is f.E:
            return _A if i_odd else _C
        if self is f.Ep:
            return _C if i_odd else _A
        if self is f.F:
            return _B if i_odd else _D
        if self is f.Fp:
            return _D if i_odd else _B
        if self is f.G:
            return {(True, True): _B, (True, False): _C,
                    (False, True): _D, (False, False): _A}[(i_odd, j_odd)]
        return {(True, True): _A, (True, False): _D,
                (False, True): _C, (False, False): _B}[(i_odd, j_odd)]


def _check(N, m):
    for name, v in (("N", N), ("m", m)):
        if not isinstance(v, int) or v < 1:
            raise InvalidOrder(f"{name} must be a positive integer, got {v!r}")


def _blocks(which: str, N: int) -> list:
    if which == "all":
        return list(range(1, N + 1))
    if which == "odd":
        return list(range(1, N + 1, 2))
    if which == "even":
        return list(range(2, N + 1, 2))
    return []


# Which block rows have their rows reversed and which block columns have
# their columns reversed, relative to A(N, m). Used by the digraph builders.
_REVERSALS = {
    BlockFamily.A: ("none", "none"),
    BlockFamily.B: ("all", "all"),
    BlockFamily.C: ("all", "none"),
    BlockFamily.D: ("none", "all"),
    BlockFamily.E: ("even", "none"),
    BlockFamily.Ep: ("odd", "none"),
    BlockFamily.F: ("odd", "all"),
    BlockFamily.Fp: ("even", "all"),
    BlockFamily.G: ("odd", "odd"),
    BlockFamily.Gp: ("even", "even"),
}


def reversal_pattern(family: BlockFamily, N: int) -> tuple[frozenset, frozenset]:
    rows, cols = _REVERSALS[family]
    return frozenset(_blocks(rows, N)), frozenset(_blocks(cols, N))


def block_hook_matrix(family: BlockFamily, N: int, m: int) -> PolyMatrix:
    _check(N, m)
    return assemble_blocks([[hook_matrix(family.shape_of(i, j), m, (i, j))
                             for j in range(1, N + 1)] for i in range(1, N + 1)])


def x_difference_matrix(i: int, N: int, m: int) -> PolyMatrix:
    _check(N, m)
    if not 1 <= i <= m:
        raise IndexOutOfRange(f"level {i} outside 1..{m}")
    return PolyMatrix.from_function(N, lambda r, s: level_difference(r, s, i, m))


def block_swaps(block_ids, m: int) -> list:
    """Within-block reversal pairs ``R_{km+i} <-> R_{km+m-i+1}`` for each
    1-based block index in ``block_ids`` (k = index - 1)."""
    out = []
    for b in block_ids:
        out.extend(reversal_swaps(m, (b - 1) * m))
    return out


# family -> (base family, block rows to reverse, block columns to reverse)
_DERIVATIONS = {
    BlockFamily.B: (BlockFamily.A, "all", "all"),
    BlockFamily.C: (BlockFamily.A, "all", "none"),
    BlockFamily.D: (BlockFamily.A, "none", "all"),
    BlockFamily.E: (BlockFamily.A, "even", "none"),
    BlockFamily.Gp: (BlockFamily.A, "even", "even"),
    BlockFamily.F: (BlockFamily.B, "even", "none"),
    BlockFamily.G: (BlockFamily.B, "even", "even"),
    BlockFamily.Ep: (BlockFamily.C, "even", "none"),
    BlockFamily.Fp: (BlockFamily.D, "even", "none"),
}


def derivation_schedule(family: BlockFamily, N: int, m: int) -> tuple[BlockFamily, SwapSchedule]:
    """Base family and swaps with ``apply_swaps(block_hook_matrix(base)) == family``."""
    _check(N, m)
    if family is BlockFamily.A:
        return BlockFamily.A, SwapSchedule()
    base, rows, cols = _DERIVATIONS[family]
    return base, SwapSchedule(block_swaps(_blocks(rows, N), m),
                              block_swaps(_blocks(cols, N), m))


def sign_exponent(family: BlockFamily, N: int, m: int) -> int:
    """Total swap count of the derivation chain from A(N, m) to the family."""
    total = 0
    while family is not BlockFamily.A:
        family, s = derivation_schedule(family, N, m)
        total += len(s)
    return total


def paper_sign_exponent(family: BlockFamily, N: int, m: int) -> int:
    """The published case tables for the sign exponent."""
    _check(N, m)
    f = BlockFamily
    if family in (f.A, f.B, f.G, f.Gp):
        return 0
    if family in (f.C, f.D):
        return N * m // 2 if m % 2 == 0 else N * (m - 1) // 2
    if N % 2 == 0:
        return N * m // 4 if m % 2 == 0 else N * (m - 1) // 4
    return (N - 1) * m // 4 if m % 2 == 0 else (N - 1) * (m - 1) // 4


def block_det_formula(family: BlockFamily, N: int, m: int) -> Polynomial:
    _check(N, m)
    out = ONE
    for i in range(1, m + 1):
        out = out * det_subset_dp(x_difference_matrix(i, N, m))
    return -out if sign_exponent(family, N, m) % 2 else out


def random_assignment(variables, rng: random.Random, lo: int = -9, hi: int = 9) -> dict:
    return {v: rng.randint(lo, hi) for v in variables}


@dataclass
class VerificationReport:
    family: str
    N: int
    m: int
    symbolic_ok: bool
    derivation_ok: bool
    eval_checks: int
    millis: float | None = None
    eval_requested: int = field(default=0, repr=False)

    @property
    def ok(self) -> bool:
        return self.symbolic_ok and self.derivation_ok and self.eval_checks == self.eval_requested

    def to_json_obj(self, timings: bool = True) -> dict:
        d = asdict(self)
        d.pop("eval_requested")
        if not timings:
            d.pop("millis")
        return d


def verify_family(family: BlockFamily, N: int, m: int, evals: int = 50,
                  seed: int = 0) -> VerificationReport:
    """Check det == product formula symbolically, the swap derivation, and
    ``evals`` random integer evaluations through Bareiss."""
    _check(N, m)
    if N * m > SUBSET_DP_MAX_ORDER:
        raise OrderTooLarge(f"verify_family needs N*m <= {SUBSET_DP_MAX_ORDER}, got {N * m}")
    t0 = time.perf_counter()
    M = block_hook_matrix(family, N, m)
    formula = block_det_formula(family, N, m)
    symbolic_ok = det_subset_dp(M) == formula

    base, s = derivation_schedule(family, N, m)
    derived, _ = apply_swaps(block_hook_matrix(base, N, m), s)
    derivation_ok = derived == M

    rng = random.Random(seed)
    variables = M.variables()
    agree = 0
    for _ in range(evals):
        sigma = random_assignment(variables, rng)
        if det_eval_bareiss(M, sigma) == formula.eval(sigma):
            agree += 1
    millis = (time.perf_counter() - t0) * 1000.0
    return VerificationReport(family.value, N, m, symbolic_ok, derivation_ok,
                              agree, round(millis, 3), evals)
