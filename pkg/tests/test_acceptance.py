"""Acceptance criteria, each at zero tolerance and with its runtime budget.

Run alone with ``pytest tests/test_acceptance.py -v`` (or execute this file);
the terminal summary prints one PASS/FAIL line per criterion.
"""

import math
import random
import time
from collections import defaultdict

import pytest

from hookdet.blockhook import (BlockFamily, block_det_formula, block_hook_matrix,
                               paper_sign_exponent, random_assignment, sign_exponent)
from hookdet.cli import random_dag_case
from hookdet.hooks import HookShape, hook_det_formula, hook_matrix
from hookdet.lgv import (build_gamma_m, build_gamma_Nm, check_all_length_one,
                         enumerate_vd_systems, gamma_for_family, lgv_signed_sum, path_matrix)
from hookdet.matrix import det_cofactor, det_eval_bareiss, det_subset_dp
from hookdet.poly import ONE, x

FAMILIES = list(BlockFamily)
GRID = [(N, m) for N in (1, 2, 3) for m in (1, 2, 3)]

# seconds spent per criterion, summed across its parametrized cases
_spent = defaultdict(float)


class budget:
    def __init__(self, n, seconds):
        self.n, self.seconds = n, seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        _spent[self.n] += time.perf_counter() - self.t0
        if exc[0] is None:
            assert _spent[self.n] < self.seconds, \
                f"criterion {self.n} took {_spent[self.n]:.2f}s, budget {self.seconds}s"


@pytest.mark.criterion(1, "hook propositions, 4 shapes x m=1..5 (<1s)")
def test_c1_hook_propositions():
    with budget(1, 1.0):
        for shape in HookShape:
            for m in range(1, 6):
                assert det_cofactor(hook_matrix(shape, m)) == hook_det_formula(shape, m), \
                    (shape, m)


@pytest.mark.criterion(2, "block theorems, 10 families x (N,m) in {1,2,3}^2 (<60s)")
@pytest.mark.parametrize("family", FAMILIES, ids=lambda f: f.value)
def test_c2_block_theorems(family):
    with budget(2, 60.0):
        for N, m in GRID:
            assert det_subset_dp(block_hook_matrix(family, N, m)) == \
                block_det_formula(family, N, m), (N, m)


@pytest.mark.criterion(3, "swap-count sign parity equals published case tables, N,m<=6 (<1s)")
@pytest.mark.parametrize("family", FAMILIES, ids=lambda f: f.value)
def test_c3_sign_tables(family):
    with budget(3, 1.0):
        mismatches = [(N, m) for N in range(1, 7) for m in range(1, 7)
                      if sign_exponent(family, N, m) % 2 != paper_sign_exponent(family, N, m) % 2]
        assert sign_exponent(BlockFamily.C, 3, 2) % 2 == 1
        assert sign_exponent(BlockFamily.E, 2, 2) % 2 == 1
        assert not mismatches, f"{family.display}: parity differs at (N,m) in {mismatches}"


@pytest.mark.criterion(4, "Gamma_m: path matrix A_m (m<=5), one system and product (m<=4) (<1s)")
def test_c4_gamma_m():
    with budget(4, 1.0):
        for m in range(1, 6):
            assert path_matrix(build_gamma_m(m)) == hook_matrix(HookShape.A, m)
        for m in range(1, 5):
            g = build_gamma_m(m)
            systems = enumerate_vd_systems(g)
            assert len(systems) == 1
            prod = ONE
            for i in range(1, m + 1):
                prod = prod * (x(1, 1, i) - (x(1, 1, i + 1) if i < m else 0))
            assert lgv_signed_sum(g) == prod


@pytest.mark.criterion(5, "Gamma_{N,m}: A(N,m), (N!)^m systems, length one, LGV (<30s)")
def test_c5_gamma_Nm():
    with budget(5, 30.0):
        for N, m in GRID:
            g = build_gamma_Nm(N, m)
            M = path_matrix(g)
            assert M == block_hook_matrix(BlockFamily.A, N, m)
            systems = enumerate_vd_systems(g)
            assert len(systems) == math.factorial(N) ** m
            assert check_all_length_one(systems)
            signed = sum((p.weight if p.sign > 0 else -p.weight for p in systems), start=0 * ONE)
            assert signed == det_subset_dp(M), (N, m)
        assert len(enumerate_vd_systems(build_gamma_Nm(3, 2))) == 36
        assert len(enumerate_vd_systems(build_gamma_Nm(3, 3))) == 216


@pytest.mark.criterion(6, "family reversal schedules: path matrix and LGV sum (<60s)")
@pytest.mark.parametrize("family", FAMILIES, ids=lambda f: f.value)
def test_c6_family_schedules(family):
    with budget(6, 60.0):
        for N, m in GRID:
            g = gamma_for_family(family, N, m)
            assert path_matrix(g) == block_hook_matrix(family, N, m), (N, m)
            assert lgv_signed_sum(g) == block_det_formula(family, N, m), (N, m)


@pytest.mark.criterion(7, "100 seeded random DAGs: LGV sum equals det(path matrix) (<30s)")
def test_c7_random_dags():
    with budget(7, 30.0):
        for k in range(100):
            g = random_dag_case(7, k)
            assert len(g.vertices) <= 10 and g.n <= 3
            assert lgv_signed_sum(g) == det_cofactor(path_matrix(g)), k


def corpus():
    """Every matrix of order <= 7 the library builds in the acceptance grid."""
    for shape in HookShape:
        for m in range(1, 6):
            yield hook_matrix(shape, m)
    for fam in FAMILIES:
        for N, m in GRID:
            if N * m <= 7:
                yield block_hook_matrix(fam, N, m)
                yield path_matrix(gamma_for_family(fam, N, m))
    for k in range(100):
        yield path_matrix(random_dag_case(7, k))


@pytest.mark.criterion(8, "cross-engine agreement: cofactor = subset DP; Bareiss = eval (<30s)")
def test_c8_cross_engine():
    with budget(8, 30.0):
        for M in corpus():
            assert det_cofactor(M) == det_subset_dp(M)
        rng = random.Random(8)
        for fam in FAMILIES:
            for N, m in GRID:
                M = block_hook_matrix(fam, N, m)
                d = det_subset_dp(M)
                vs = M.variables()
                for _ in range(50):
                    sigma = random_assignment(vs, rng)
                    assert det_eval_bareiss(M, sigma) == d.eval(sigma), (fam, N, m)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
