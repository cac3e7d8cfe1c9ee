"""Weighted acyclic digraphs, path matrices and the LGV lemma.

``det(path_matrix(g)) == lgv_signed_sum(g)`` for every acyclic ``g``: the
signed sum runs over vertex-disjoint path systems, found by exhaustive
backtracking. ``build_gamma_m`` and ``build_gamma_Nm`` give the digraphs
whose path matrices are the hook matrix A_m and the block hook matrices;
reversing the within-block order of some sources or sinks realises every
other family.
"""

from __future__ import annotations

import graphlib
import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from hookdet import kernels as _k
from hookdet.blockhook import BlockFamily, reversal_pattern
from hookdet.errors import CyclicGraph, ExplosionGuard, InvalidOrder, SizeMismatch
from hookdet.hooks import level_difference
from hookdet.matrix import PolyMatrix
from hookdet.poly import ONE, ZERO, Polynomial, render

# Empty-path convention: a source that is also a sink reaches itself by the
# length-0 path of weight 1.
INCLUDE_EMPTY_PATHS = True
MAX_PATHS = 10**6
MAX_CANDIDATES = 10**7


class Digraph:
    """Immutable weighted DAG with ordered source and sink sequences."""

    def __init__(self, vertices: Sequence[str], edges: Iterable, sources: Sequence[str],
                 sinks: Sequence[str]):
        self.vertices = tuple(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise ValueError("vertex labels must be unique")
        seen = set()
        es = []
        for u, v, w in edges:
            if u not in self.index or v not in self.index:
                raise ValueError(f"edge ({u}, {v}) uses an unknown vertex")
            if (u, v) in seen:
                raise ValueError(f"parallel edge ({u}, {v})")
            seen.add((u, v))
            es.append((u, v, Polynomial.coerce(w)))
        self.edges = tuple(es)
        for name, seq in (("sources", sources), ("sinks", sinks)):
            if len(set(seq)) != len(seq):
                raise ValueError(f"{name} must be distinct")
            for v in seq:
                if v not in self.index:
                    raise ValueError(f"{name} vertex {v!r} not in graph")
        self.sources = tuple(sources)
        self.sinks = tuple(sinks)

        succ = [[] for _ in self.vertices]
        for u, v, w in self.edges:
            succ[self.index[u]].append((self.index[v], w))
        for row in succ:
            row.sort(key=lambda t: t[0])
        self._succ = succ
        self.topological_order = self._toposort()

    def _toposort(self) -> tuple:
        ts = graphlib.TopologicalSorter()
        for i in range(len(self.vertices)):
            ts.add(i)
        for u, row in enumerate(self._succ):
            for v, _ in row:
                ts.add(v, u)
        try:
            return tuple(ts.static_order())
        except graphlib.CycleError as exc:
            cyc = [self.vertices[i] for i in exc.args[1]]
            raise CyclicGraph(f"graph has a cycle through {' -> '.join(cyc)}") from None

    @property
    def n(self) -> int:
        return len(self.sources)

    def successors(self, v: str) -> list:
        return [(self.vertices[j], w) for j, w in self._succ[self.index[v]]]

    def __repr__(self):
        return f"Digraph({len(self.vertices)} vertices, {len(self.edges)} edges, n={self.n})"


@dataclass(frozen=True)
class Path:
    vertices: tuple
    weight: Polynomial

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def __str__(self):
        return "".join(self.vertices)


@dataclass(frozen=True)
class PathSystem:
    """``sigma[i-1] = j`` means source i is joined to sink j (1-based)."""

    sigma: tuple
    paths: tuple

    @cached_property
    def sign(self) -> int:
        inv = sum(1 for a, b in combinations(self.sigma, 2) if a > b)
        return -1 if inv % 2 else 1

    @cached_property
    def weight(self) -> Polynomial:
        w = ONE
        for p in self.paths:
            w = w * p.weight
        return w

    @property
    def vertex_disjoint(self) -> bool:
        seen = set()
        for p in self.paths:
            if seen.intersection(p.vertices):
                return False
            seen.update(p.vertices)
        return True


def _check_square(g: Digraph):
    if len(g.sources) != len(g.sinks):
        raise SizeMismatch(f"{len(g.sources)} sources but {len(g.sinks)} sinks")


def _reach_sums(g: Digraph, src: int, one, zero):
    """Sum over paths from ``src`` to every vertex, by DP in topological order."""
    f = [zero] * len(g.vertices)
    f[src] = one
    started = False
    for v in g.topological_order:
        if v == src:
            started = True
        if not started or f[v] == zero:
            continue
        fv = f[v]
        for w, wt in g._succ[v]:
            f[w] = f[w] + fv * wt
    return f


def path_matrix(g: Digraph, include_empty: bool = INCLUDE_EMPTY_PATHS) -> PolyMatrix:
    _check_square(g)
    rows = []
    for s in g.sources:
        si = g.index[s]
        f = _reach_sums(g, si, ONE, ZERO)
        row = []
        for t in g.sinks:
            ti = g.index[t]
            row.append(ZERO if (ti == si and not include_empty) else f[ti])
        rows.append(row)
    return PolyMatrix(rows)


def path_counts(g: Digraph, include_empty: bool = INCLUDE_EMPTY_PATHS) -> list:
    """Number of directed paths from each source to each sink."""
    _check_square(g)
    out = []
    for s in g.sources:
        si = g.index[s]
        f = [0] * len(g.vertices)
        f[si] = 1
        started = False
        for v in g.topological_order:
            if v == si:
                started = True
            if not started or not f[v]:
                continue
            for w, _ in g._succ[v]:
                f[w] += f[v]
        out.append([0 if (g.index[t] == si and not include_empty) else f[g.index[t]]
                    for t in g.sinks])
    return out


def all_paths(g: Digraph, source: str, include_empty: bool = INCLUDE_EMPTY_PATHS) -> dict:
    """Every path from ``source``, grouped by end vertex, in lexicographic
    order of the vertex-index sequences."""
    si = g.index[source]
    out = {}
    stack = [si]

    def walk(v, weight):
        if len(stack) > 1 or include_empty:
            out.setdefault(v, []).append((tuple(stack), weight))
        for w, wt in g._succ[v]:
            stack.append(w)
            walk(w, weight * wt)
            stack.pop()

    walk(si, ONE)
    return out


def enumerate_vd_systems(g: Digraph, include_empty: bool = INCLUDE_EMPTY_PATHS,
                         max_paths: int = MAX_PATHS,
                         max_candidates: int = MAX_CANDIDATES) -> list:
    """All vertex-disjoint path systems, sorted by (sigma, paths).

    Raises ExplosionGuard when more than ``max_paths`` source-to-sink paths
    would have to be listed, or the backtracking tries more than
    ``max_candidates`` partial placements.
    """
    _check_square(g)
    counts = path_counts(g, include_empty)
    total = sum(map(sum, counts))
    if total > max_paths:
        raise ExplosionGuard(f"{total} source-to-sink paths exceed the limit {max_paths}")
    n = g.n
    sink_idx = [g.index[t] for t in g.sinks]
    paths = []
    masks = []
    for s in g.sources:
        by_end = all_paths(g, s, include_empty)
        prow, mrow = [], []
        for t in sink_idx:
            cell = by_end.get(t, [])
            prow.append(cell)
            mrow.append([sum(1 << v for v in seq) for seq, _ in cell])
        paths.append(prow)
        masks.append(mrow)

    found = _k.vd_search(masks, max_candidates)
    systems = []
    for sigma, choice in found:
        ps = []
        for i in range(n):
            seq, w = paths[i][sigma[i]][choice[i]]
            ps.append((seq, w))
        systems.append((tuple(j + 1 for j in sigma), tuple(seq for seq, _ in ps), ps))
    systems.sort(key=lambda t: (t[0], t[1]))
    label = g.vertices
    return [PathSystem(sigma, tuple(Path(tuple(label[v] for v in seq), w) for seq, w in ps))
            for sigma, _, ps in systems]


def lgv_signed_sum(g: Digraph, include_empty: bool = INCLUDE_EMPTY_PATHS, **guards) -> Polynomial:
    total = ZERO
    for ps in enumerate_vd_systems(g, include_empty, **guards):
        total = total - ps.weight if ps.sign < 0 else total + ps.weight
    return total


def check_all_length_one(systems: Iterable[PathSystem]) -> bool:
    return all(p.length == 1 for ps in systems for p in ps.paths)


def build_gamma_m(m: int) -> Digraph:
    """Top chain U_m -> ... -> U_1 and bottom chain V_1 -> ... -> V_m of weight
    1, with verticals U_i -> V_i of weight x_{m-i+1} - x_{m-i+2} (x_{m+1} = 0)."""
    if not isinstance(m, int) or m < 1:
        raise InvalidOrder(f"m must be a positive integer, got {m!r}")
    return build_gamma_Nm(1, m)


def build_gamma_Nm(N: int, m: int, rev_sources: Iterable[int] = (),
                   rev_sinks: Iterable[int] = ()) -> Digraph:
    """Layered digraph whose path matrix is a block hook matrix.

    Vertices U_1..U_{Nm}, V_1..V_{Nm}. Inside each block column of m vertices
    there are chains U_{j+1} -> U_j and V_j -> V_{j+1} of weight 1 (no edges
    across blocks). Layer i is the complete bipartite digraph from
    {U_{tm+i}} to {V_{rm+i}} with weights
    x[t+1, r+1, m-i+1] - x[t+1, r+1, m-i+2].

    Block rows listed in ``rev_sources`` present their m sources in reverse
    order; block columns in ``rev_sinks`` do the same for sinks.
    """
    for name, v in (("N", N), ("m", m)):
        if not isinstance(v, int) or v < 1:
            raise InvalidOrder(f"{name} must be a positive integer, got {v!r}")
    rev_sources, rev_sinks = set(rev_sources), set(rev_sinks)
    for b in rev_sources | rev_sinks:
        if not 1 <= b <= N:
            raise InvalidOrder(f"block index {b} outside 1..{N}")
    size = N * m
    U = [f"U{k}" for k in range(1, size + 1)]
    V = [f"V{k}" for k in range(1, size + 1)]
    edges = []
    for t in range(N):
        for a in range(1, m):
            edges.append((U[t * m + a], U[t * m + a - 1], ONE))
    for i in range(1, m + 1):
        for t in range(N):
            for r in range(N):
                edges.append((U[t * m + i - 1], V[r * m + i - 1],
                              level_difference(t + 1, r + 1, m - i + 1, m)))
    for t in range(N):
        for a in range(1, m):
            edges.append((V[t * m + a - 1], V[t * m + a], ONE))

    def ordered(labels, reversed_blocks):
        out = []
        for b in range(N):
            block = labels[b * m:(b + 1) * m]
            out.extend(reversed(block) if b + 1 in reversed_blocks else block)
        return out

    return Digraph(U + V, edges, ordered(U, rev_sources), ordered(V, rev_sinks))


def gamma_for_family(family: BlockFamily, N: int, m: int) -> Digraph:
    rows, cols = reversal_pattern(family, N)
    return build_gamma_Nm(N, m, rows, cols)


def _dot_id(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Digraph, name: str = "G") -> str:
    """Byte-stable Graphviz rendering; edges sorted by endpoint indices."""
    lines = [f"digraph {name} {{", "  rankdir=TB;"]
    src = set(g.sources)
    snk = set(g.sinks)
    for v in g.vertices:
        attrs = [f"label={_dot_id(v)}"]
        if v in src and v in snk:
            attrs.append("shape=doublecircle")
        elif v in src:
            attrs.append("shape=box")
        lines.append(f"  {_dot_id(v)} [{', '.join(attrs)}];")
    order = sorted(g.edges, key=lambda e: (g.index[e[0]], g.index[e[1]]))
    for u, v, w in order:
        lines.append(f"  {_dot_id(u)} -> {_dot_id(v)} [label={_dot_id(render(w))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def random_weight(rng: random.Random, max_terms: int = 2, max_level: int = 4) -> Polynomial:
    p = ZERO
    for _ in range(rng.randint(1, max_terms)):
        term = Polynomial.const(rng.choice([-3, -2, -1, 1, 2, 3]))
        for _ in range(rng.randint(0, 2)):
            term = term * Polynomial.var(1, 1, rng.randint(1, max_level))
        p = p + term
    return p if p else ONE


def random_dag(rng: random.Random, max_vertices: int = 10, max_terminals: int = 3,
               edge_prob: float = 0.4) -> Digraph:
    """Seeded random DAG (edges go from lower to higher vertex number)."""
    n = rng.randint(2, max_vertices)
    labels = [f"v{i}" for i in range(n)]
    edges = [(labels[a], labels[b], random_weight(rng))
             for a in range(n) for b in range(a + 1, n) if rng.random() < edge_prob]
    k = rng.randint(1, min(max_terminals, n))
    sources = [labels[i] for i in rng.sample(range(n), k)]
    sinks = [labels[i] for i in rng.sample(range(n), k)]
    return Digraph(labels, edges, sources, sinks)
