"""Nonnegative-weight SSSP oracle: multi-source Dijkstra plus tree extraction.

This is the one swappable primitive everything else reduces to.  Any
implementation honoring the ``dijkstra_multi`` contract (exact distances,
tight parent edges, deterministic tie-breaking, work charged to the
counter) can be substituted; the default is a binary-heap Dijkstra backed
by the compiled kernel when available.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .counters import GLOBAL_COUNTER, WorkSpanCounter
from .graph import INF, Graph, apply_potential


@dataclass(frozen=True)
class SourceSpec:
    """Virtual super-source: one edge of weight ``offset`` to each vertex."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("at least one source required")
        for v, off in self.entries:
            if off < 0:
                raise ValueError(f"negative source offset at vertex {v}")

    @staticmethod
    def single(v: int) -> "SourceSpec":
        return SourceSpec(((int(v), 0),))

    @staticmethod
    def of(pairs) -> "SourceSpec":
        return SourceSpec(tuple((int(v), int(o)) for v, o in pairs))

    @staticmethod
    def all_vertices(n: int) -> "SourceSpec":
        return SourceSpec(tuple((v, 0) for v in range(n)))


@dataclass
class TreeResult:
    """Shortest-path forest: tight parent edges, dist[root] == 0."""

    dist: np.ndarray
    parent_vertex: np.ndarray
    parent_edge: np.ndarray
    root: int


def _csr_arrays(graph: Graph):
    eid = graph.out_edges
    return graph.out_indptr, graph.dst[eid], graph.w[eid], eid


def dijkstra_multi(
    graph: Graph,
    sources: SourceSpec,
    counter: WorkSpanCounter | None = None,
    kind: str = "dijkstra",
) -> tuple[np.ndarray, np.ndarray]:
    """Exact multi-source distances on a nonnegative graph.

    Returns (dist, parent_edge); dist uses INF for unreachable vertices,
    parent edges are tight: dist[v] == dist[u] + w(u, v).
    """
    if graph.m and graph.min_weight() < 0:
        raise ValueError("negative weight passed to nonnegative oracle")
    indptr, adj_dst, adj_w, adj_eid = _csr_arrays(graph)
    src = [v for v, _ in sources.entries]
    off = [o for _, o in sources.entries]
    dist, parent, pops, relax = kernels.dijkstra_csr(
        graph.n, indptr, adj_dst, adj_w, adj_eid, src, off
    )
    counter = counter if counter is not None else GLOBAL_COUNTER
    counter.charge(kind, graph.n, graph.m, pops + relax)
    return np.asarray(dist, dtype=np.int64), np.asarray(parent, dtype=np.int64)


def build_tree(
    graph: Graph,
    phi,
    source: int,
    counter: WorkSpanCounter | None = None,
) -> TreeResult:
    """Shortest-path tree from ``source`` in the *original* weights.

    ``phi`` must make every adjusted weight nonnegative (checked); Dijkstra
    runs on the adjusted graph and distances are corrected back by
    ``-phi[source] + phi[v]``.
    """
    phi = np.ascontiguousarray(phi, dtype=np.int64)
    adjusted = apply_potential(graph, phi)
    if adjusted.m:
        bad = np.nonzero(adjusted.w < 0)[0]
        if len(bad):
            e = int(bad[0])
            raise ValueError(
                f"potential leaves edge {e} "
                f"({int(graph.src[e])}->{int(graph.dst[e])}) negative"
            )
    dist_adj, parent = dijkstra_multi(adjusted, SourceSpec.single(source), counter)
    dist = np.where(
        dist_adj >= INF, INF, dist_adj - int(phi[source]) + phi
    ).astype(np.int64)
    if graph.m:
        parent_vertex = np.where(parent >= 0, graph.src[np.maximum(parent, 0)], -1)
    else:
        parent_vertex = np.full(graph.n, -1)
    return TreeResult(dist, parent_vertex.astype(np.int64), parent, int(source))
