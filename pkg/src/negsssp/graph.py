"""Immutable directed multigraph with 64-bit integer weights.

Vertices are dense ids ``0..n-1``; edges keep their input order, and the
out/in adjacency structures (CSR) enumerate exactly that edge sequence in
deterministic order.  Weight magnitude is capped at construction so that
every downstream transformation (scaling by ``2n``, layered offsets)
stays inside 64-bit signed arithmetic at supported sizes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Distances use this sentinel for "unreachable"; any finite distance at the
# supported size/weight caps stays strictly below it.
INF = 1 << 62

WEIGHT_CAP = 1 << 40
MAX_VERTICES = 1 << 20


class GraphError(ValueError):
    pass


def _build_csr(n: int, keys: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    """CSR over `keys` (edge endpoint per edge): (indptr, edge order)."""
    order = np.argsort(keys, kind="stable").astype(np.int64)
    counts = np.bincount(keys, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, order


class Graph:
    """Frozen directed multigraph; self-loops and parallel edges allowed.

    A negative self-loop is a negative cycle: it is representable (callers
    detect it through validation), construction only enforces endpoint
    ranges and the weight cap.
    """

    __slots__ = ("n", "src", "dst", "w", "out_indptr", "out_edges", "in_indptr", "in_edges")

    def __init__(self, n: int, src, dst, w, _validate: bool = True):
        n = int(n)
        src = np.ascontiguousarray(src, dtype=np.int64)
        dst = np.ascontiguousarray(dst, dtype=np.int64)
        w = np.ascontiguousarray(w, dtype=np.int64)
        if _validate:
            if n < 0 or n > MAX_VERTICES:
                raise GraphError(f"vertex count {n} out of range [0, {MAX_VERTICES}]")
            if not (len(src) == len(dst) == len(w)):
                raise GraphError("edge arrays disagree in length")
            bad = (src < 0) | (src >= n) | (dst < 0) | (dst >= n)
            if bad.any():
                raise GraphError(f"endpoint out of range at edge index {int(bad.argmax())}")
            heavy = np.abs(w) > WEIGHT_CAP
            if heavy.any():
                raise GraphError(f"weight magnitude exceeds cap at edge index {int(heavy.argmax())}")
        self.n = n
        self.src = src
        self.dst = dst
        self.w = w
        self.out_indptr, self.out_edges = _build_csr(n, src, len(src))
        self.in_indptr, self.in_edges = _build_csr(n, dst, len(dst))

    @property
    def m(self) -> int:
        return len(self.src)

    def edges(self):
        """Iterate (u, v, w) in input order."""
        for i in range(self.m):
            yield int(self.src[i]), int(self.dst[i]), int(self.w[i])

    def out_edge_indices(self, u: int) -> np.ndarray:
        return self.out_edges[self.out_indptr[u] : self.out_indptr[u + 1]]

    def in_edge_indices(self, v: int) -> np.ndarray:
        return self.in_edges[self.in_indptr[v] : self.in_indptr[v + 1]]

    def max_weight(self) -> int:
        return int(self.w.max()) if self.m else 0

    def min_weight(self) -> int:
        return int(self.w.min()) if self.m else 0

    def with_weights(self, w) -> "Graph":
        g = Graph.__new__(Graph)
        g.n = self.n
        g.src = self.src
        g.dst = self.dst
        g.w = np.ascontiguousarray(w, dtype=np.int64)
        if len(g.w) != self.m:
            raise GraphError("replacement weights disagree in length")
        g.out_indptr, g.out_edges = self.out_indptr, self.out_edges
        g.in_indptr, g.in_edges = self.in_indptr, self.in_edges
        return g

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and np.array_equal(self.src, other.src)
            and np.array_equal(self.dst, other.dst)
            and np.array_equal(self.w, other.w)
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edge_list) -> Graph:
    """Graph from (u, v, w) triples, edge order preserved."""
    if edge_list:
        src, dst, w = (list(col) for col in zip(*edge_list))
    else:
        src, dst, w = [], [], []
    return Graph(n, src, dst, w)


def apply_potential(graph: Graph, phi) -> Graph:
    """Reweight every edge (u, v) to w + phi[u] - phi[v].

    Cycle weights are invariant and shortest paths are preserved exactly.
    """
    phi = np.ascontiguousarray(phi, dtype=np.int64)
    if len(phi) != graph.n:
        raise GraphError("potential not defined on all vertices")
    if graph.m == 0:
        return graph.with_weights(graph.w)
    w = graph.w.astype(object) + phi[graph.src].astype(object) - phi[graph.dst].astype(object)
    mx = max(abs(int(x)) for x in w)
    if mx >= INF:
        raise GraphError("potential adjustment overflows the distance range")
    return graph.with_weights(w.astype(np.int64))


def nonneg_projection(graph: Graph) -> Graph:
    """Clamp negative weights to zero; structure unchanged."""
    return graph.with_weights(np.maximum(graph.w, 0))


def induced_subgraph(graph: Graph, vertices) -> tuple[Graph, np.ndarray]:
    """Subgraph on `vertices` plus the new-id -> original-id mapping.

    New ids follow ascending original id; surviving edges keep their
    relative input order.
    """
    mapping = np.unique(np.asarray(list(vertices), dtype=np.int64))
    if len(mapping) and (mapping[0] < 0 or mapping[-1] >= graph.n):
        raise GraphError("vertex set not contained in graph")
    local = np.full(graph.n, -1, dtype=np.int64)
    local[mapping] = np.arange(len(mapping), dtype=np.int64)
    keep = np.zeros(graph.n, dtype=bool)
    keep[mapping] = True
    emask = keep[graph.src] & keep[graph.dst]
    sub = Graph(
        len(mapping),
        local[graph.src[emask]],
        local[graph.dst[emask]],
        graph.w[emask],
        _validate=False,
    )
    return sub, mapping


@dataclass
class SccOrder:
    """Strongly connected components in topological order of the condensation."""

    components: list[np.ndarray]
    component_index: np.ndarray

    def __len__(self) -> int:
        return len(self.components)


def scc_condensation_topo(graph: Graph) -> SccOrder:
    """Tarjan SCCs, iteratively, components ordered topologically.

    Deterministic: roots are tried in ascending vertex id and neighbors
    visited in adjacency order, so a fixed graph yields a fixed output.
    """
    n = graph.n
    indptr = graph.out_indptr
    order_e = graph.out_edges
    dst = graph.dst

    index = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    on_stack = np.zeros(n, dtype=bool)
    comp = np.full(n, -1, dtype=np.int64)
    stack: list[int] = []
    comps_rev: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        # Explicit DFS stack of (vertex, next edge position).
        work = [(root, indptr[root])]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            if pos < indptr[v + 1]:
                work[-1] = (v, pos + 1)
                u = int(dst[order_e[pos]])
                if index[u] == -1:
                    index[u] = low[u] = counter
                    counter += 1
                    stack.append(u)
                    on_stack[u] = True
                    work.append((u, indptr[u]))
                elif on_stack[u]:
                    if index[u] < low[v]:
                        low[v] = index[u]
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    if low[v] < low[parent]:
                        low[parent] = low[v]
                if low[v] == index[v]:
                    members = []
                    while True:
                        u = stack.pop()
                        on_stack[u] = False
                        comp[u] = len(comps_rev)
                        members.append(u)
                        if u == v:
                            break
                    comps_rev.append(members)

    # Tarjan emits components in reverse topological order.
    k = len(comps_rev)
    components = [np.sort(np.asarray(c, dtype=np.int64)) for c in reversed(comps_rev)]
    component_index = (k - 1) - comp
    return SccOrder(components, component_index)
