import itertools
import math
import random

import pytest

from hookdet.blockhook import BlockFamily, block_det_formula, block_hook_matrix
from hookdet.errors import CyclicGraph, ExplosionGuard, InvalidOrder, SizeMismatch
from hookdet.hooks import HookShape, hook_det_formula, hook_matrix
from hookdet.lgv import (Digraph, build_gamma_m, build_gamma_Nm, check_all_length_one,
                         enumerate_vd_systems, gamma_for_family, lgv_signed_sum,
                         path_counts, path_matrix, random_dag, to_dot)
from hookdet.matrix import PolyMatrix, det_cofactor, det_subset_dp
from hookdet.poly import ONE, ZERO, x


def enumerate_paths(g, s, t):
    """Independent DFS over ``successors``; list of (vertex tuple, weight)."""
    out = []

    def walk(v, seq, w):
        if v == t:
            out.append((seq, w))
        for u, ew in g.successors(v):
            walk(u, seq + (u,), w * ew)

    walk(s, (s,), ONE)
    return out


def test_gamma_1():
    g = build_gamma_m(1)
    assert g.edges == (("U1", "V1", x(1, 1, 1)),)
    assert lgv_signed_sum(g) == x(1, 1, 1)


def test_gamma_2():
    g = build_gamma_m(2)
    M = path_matrix(g)
    assert M.entry(1, 2) == x(1, 1, 2)
    assert [p for p, _ in enumerate_paths(g, "U1", "V2")] == [("U1", "V1", "V2")]
    x1, x2 = x(1, 1, 1), x(1, 1, 2)
    assert lgv_signed_sum(g) == (x1 - x2) * x2


@pytest.mark.parametrize("m", range(1, 6))
def test_gamma_m_path_matrix(m):
    assert path_matrix(build_gamma_m(m)) == hook_matrix(HookShape.A, m)


def test_gamma_4_telescoping_by_explicit_paths():
    m = 4
    g = build_gamma_m(m)
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            total = ZERO
            for _, w in enumerate_paths(g, f"U{i}", f"V{j}"):
                total = total + w
            assert total == x(1, 1, m - min(i, j) + 1)


@pytest.mark.parametrize("m", range(1, 5))
def test_gamma_m_single_identity_system(m):
    systems = enumerate_vd_systems(build_gamma_m(m))
    assert len(systems) == 1
    assert systems[0].sigma == tuple(range(1, m + 1))
    assert check_all_length_one(systems)
    assert lgv_signed_sum(build_gamma_m(m)) == hook_det_formula(HookShape.A, m)


def layer_oracle(N, m):
    """Length-one systems are one perfect matching per layer."""
    out = []
    for perms in itertools.product(itertools.permutations(range(N)), repeat=m):
        sigma = [0] * (N * m)
        w = ONE
        for i, p in enumerate(perms, start=1):
            for t in range(N):
                r = p[t]
                sigma[t * m + i - 1] = r * m + i
                lvl = m - i + 1
                w = w * (x(t + 1, r + 1, lvl) - (x(t + 1, r + 1, lvl + 1) if lvl < m else 0))
        out.append((tuple(sigma), w))
    return sorted(out, key=lambda t: t[0])


@pytest.mark.parametrize("N,m,count", [(3, 2, 36), (3, 3, 216), (2, 3, 8), (1, 3, 1)])
def test_gamma_Nm_systems(N, m, count):
    g = build_gamma_Nm(N, m)
    systems = enumerate_vd_systems(g)
    assert len(systems) == count == math.factorial(N) ** m
    assert check_all_length_one(systems)
    assert all(ps.vertex_disjoint for ps in systems)
    assert [(ps.sigma, ps.weight) for ps in systems] == layer_oracle(N, m)


def test_gamma_3_2_weights():
    g = build_gamma_Nm(3, 2)
    w = {(u, v): e for u, v, e in g.edges}
    assert w[("U1", "V1")] == x(1, 1, 2)
    assert w[("U2", "V2")] == x(1, 1, 1) - x(1, 1, 2)
    assert w[("U4", "V6")] == x(2, 3, 1) - x(2, 3, 2)
    assert w[("U2", "U1")] == ONE and w[("V5", "V6")] == ONE
    assert ("U3", "U2") not in w and ("V2", "V3") not in w
    assert path_matrix(g) == block_hook_matrix(BlockFamily.A, 3, 2)


@pytest.mark.parametrize("N,m", [(N, m) for N in (1, 2, 3) for m in (1, 2, 3)])
def test_block_telescoping(N, m):
    M = path_matrix(build_gamma_Nm(N, m))
    for R in range(1, N * m + 1):
        for C in range(1, N * m + 1):
            t, i = divmod(R - 1, m)
            r, j = divmod(C - 1, m)
            assert M.entry(R, C) == x(t + 1, r + 1, m - min(i + 1, j + 1) + 1)


@pytest.mark.parametrize("family", list(BlockFamily), ids=lambda f: f.value)
def test_family_schedules(family):
    for N in (1, 2, 3):
        for m in (1, 2, 3):
            g = gamma_for_family(family, N, m)
            assert path_matrix(g) == block_hook_matrix(family, N, m)
            systems = enumerate_vd_systems(g)
            assert check_all_length_one(systems)
            assert lgv_signed_sum(g) == block_det_formula(family, N, m)


def test_diamond_graph_lengths():
    edges = [("a", "c", 1), ("b", "c", 1), ("c", "d", 1), ("c", "e", 1),
             ("a", "d", 2), ("b", "e", 3)]
    g = Digraph("abcde", edges, ["a", "b"], ["d", "e"])
    systems = enumerate_vd_systems(g)
    assert not check_all_length_one(systems)
    assert sorted(tuple(p.length for p in ps.paths) for ps in systems) == [(1, 1), (1, 2), (2, 1)]
    assert lgv_signed_sum(g) == det_cofactor(path_matrix(g))


def test_empty_path_convention():
    g = Digraph(["u"], [], ["u"], ["u"])
    assert path_matrix(g) == PolyMatrix([[1]])
    assert lgv_signed_sum(g) == 1
    assert path_matrix(g, include_empty=False) == PolyMatrix([[0]])
    assert lgv_signed_sum(g, include_empty=False) == 0
    h = Digraph(["a", "b"], [], ["a"], ["b"])
    assert path_matrix(h) == PolyMatrix([[0]])


def test_overlapping_terminals():
    # a is a source and a sink at once
    g = Digraph(["a", "b", "c"], [("a", "b", x(1, 1, 1)), ("c", "a", 2), ("c", "b", 5)],
                ["a", "c"], ["a", "b"])
    assert lgv_signed_sum(g) == det_cofactor(path_matrix(g))


def test_graph_errors():
    with pytest.raises(CyclicGraph):
        Digraph("abc", [("a", "b", 1), ("b", "c", 1), ("c", "a", 1)], ["a"], ["c"])
    with pytest.raises(SizeMismatch):
        path_matrix(Digraph("ab", [("a", "b", 1)], ["a"], ["a", "b"]))
    with pytest.raises(ValueError):
        Digraph("ab", [("a", "z", 1)], ["a"], ["b"])
    with pytest.raises(ValueError):
        Digraph("ab", [], ["a", "a"], ["b", "b"])
    with pytest.raises(InvalidOrder):
        build_gamma_m(0)
    with pytest.raises(InvalidOrder):
        build_gamma_Nm(2, 2, rev_sources=[3])


def test_guards():
    g = build_gamma_Nm(2, 2)
    with pytest.raises(ExplosionGuard):
        enumerate_vd_systems(g, max_paths=3)
    with pytest.raises(ExplosionGuard):
        enumerate_vd_systems(g, max_candidates=5)
    assert sum(map(sum, path_counts(g))) > 3


def test_random_dags():
    rng = random.Random(7)
    for _ in range(30):
        g = random_dag(rng)
        M = path_matrix(g)
        assert lgv_signed_sum(g) == det_cofactor(M) == det_subset_dp(M)
        for i, s in enumerate(g.sources, 1):
            for j, t in enumerate(g.sinks, 1):
                paths = enumerate_paths(g, s, t)
                total = sum((w for _, w in paths), start=ZERO)
                assert M.entry(i, j) == total


GAMMA_1_DOT = """digraph G {
  rankdir=TB;
  "U1" [label="U1", shape=box];
  "V1" [label="V1"];
  "U1" -> "V1" [label="x[1,1,1]"];
}
"""


def test_dot():
    assert to_dot(build_gamma_m(1)) == GAMMA_1_DOT
    a = to_dot(build_gamma_Nm(3, 2, [1], [2]))
    assert a == to_dot(build_gamma_Nm(3, 2, [1], [2]))
    assert '"U2" -> "U1" [label="1"];' in a
    lines = [ln for ln in a.splitlines() if "->" in ln]
    assert len(lines) == 3 * 1 * 2 + 2 * 9
    g = Digraph(["u"], [], ["u"], ["u"])
    assert "shape=doublecircle" in to_dot(g)
