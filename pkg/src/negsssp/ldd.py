"""Topologically sorted low-diameter decomposition for directed graphs.

``dir_ldd`` partitions the vertices of a nonnegative-weight digraph into
parts of weak diameter at most d, ordered so that only rare "backward"
edges (the cut edges) point from a later part to an earlier one.

Construction: recursive ball carving.  Each step picks the lowest-id
remaining vertex, flips a coin for direction, grows an out- or in-ball of
geometrically distributed radius (rate ~ c_geo * log2(n) / d per unit
weight, capped at d/2) and severs the boundary edges in the cut
direction.  A region stops splitting once a cheap eccentricity bound
certifies pairwise distances <= d (checked for regions of at most 64
vertices) or it is a singleton.  Finally the strongly connected
components of the graph minus the severed edges become the parts,
ordered topologically; the cut edges are recomputed from that order.

When d is at least (n-1)*max_weight + 1 every mutually reachable pair is
trivially within distance d, so the decomposition short-circuits to the
SCC condensation in topological order and cuts nothing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .counters import GLOBAL_COUNTER, WorkSpanCounter
from .graph import Graph, scc_condensation_topo
from .rng import rng, split


@dataclass
class LddParams:
    d: int
    seed: int
    c_geo: int = 4
    max_recursion: int | None = None

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("diameter bound must be >= 1")
        if self.c_geo < 1:
            raise ValueError("c_geo must be >= 1")


@dataclass
class Clustering:
    """Ordered partition plus the edges pointing backward in that order."""

    parts: list[np.ndarray]
    part_index: np.ndarray
    cut_edges: np.ndarray = field(default=None)

    @staticmethod
    def from_parts(graph: Graph, parts: list[np.ndarray]) -> "Clustering":
        part_index = np.full(graph.n, -1, dtype=np.int64)
        seen = 0
        for i, p in enumerate(parts):
            part_index[p] = i
            seen += len(p)
        if seen != graph.n or (part_index < 0).any():
            raise ValueError("parts do not partition the vertex set")
        if graph.m:
            cuts = np.nonzero(part_index[graph.src] > part_index[graph.dst])[0]
        else:
            cuts = np.zeros(0, dtype=np.int64)
        return Clustering(parts, part_index, cuts.astype(np.int64))


def weak_diameter_check(graph: Graph, vertices, d: int) -> bool:
    """True iff every ordered pair of ``vertices`` is within distance d
    in the full graph (paths may leave the set)."""
    members = np.unique(np.asarray(list(vertices), dtype=np.int64))
    if len(members) <= 1:
        return True
    indptr = graph.out_indptr
    eid = graph.out_edges
    adj_dst = graph.dst[eid]
    adj_w = graph.w[eid]
    adj_eid = eid
    for u in members:
        dist, _, _, _ = kernels.dijkstra_csr(
            graph.n, indptr, adj_dst, adj_w, adj_eid, [int(u)], [0]
        )
        for v in members:
            if v != u and dist[int(v)] > d:
                return False
    return True


def grow_ball(graph: Graph, center: int, radius: int, direction: str = "out"):
    """All v with dist(center -> v) <= radius (or v -> center for "in")."""
    if direction not in ("out", "in"):
        raise ValueError("direction must be 'out' or 'in'")
    if direction == "out":
        indptr, eid = graph.out_indptr, graph.out_edges
        adj_dst = graph.dst[eid]
    else:
        indptr, eid = graph.in_indptr, graph.in_edges
        adj_dst = graph.src[eid]
    alive = np.ones(graph.n, dtype=bool)
    members, _, _ = kernels.grow_ball(
        graph.n, indptr, adj_dst, graph.w[eid], int(center), int(radius), alive
    )
    return sorted(int(v) for v in members)


class _Carver:
    def __init__(self, graph: Graph, params: LddParams, counter: WorkSpanCounter):
        self.g = graph
        self.params = params
        self.counter = counter
        n = graph.n
        eid_out = graph.out_edges
        eid_in = graph.in_edges
        self.out_indptr = graph.out_indptr
        self.out_dst = graph.dst[eid_out]
        self.out_w = graph.w[eid_out]
        self.out_eid = eid_out
        self.in_indptr = graph.in_indptr
        self.in_src = graph.src[eid_in]
        self.in_w = graph.w[eid_in]
        self.in_eid = eid_in
        log2n = max(1, math.ceil(math.log2(max(2, n))))
        self.p_rate = min(1.0, params.c_geo * log2n / params.d)
        self.max_depth = (
            params.max_recursion
            if params.max_recursion is not None
            else 100 * max(1, math.ceil(math.log2(max(2, n))))
        )
        self.collected: list[int] = []
        self.units = 0

    def _radius(self, r) -> int:
        p = self.p_rate
        if p >= 1.0:
            return 0
        u = r.random()
        # Geometric number of unit-weight trials before success.
        val = int(math.log(max(u, 1e-300)) / math.log(1.0 - p))
        return min(val, self.params.d // 2)

    def _certify(self, region: np.ndarray) -> bool:
        """Sound bound: out-ecc + in-ecc through one hub, inside the region
        subgraph (region distances dominate full-graph distances)."""
        if len(region) <= 1:
            return True
        if len(region) > 64:
            return False
        alive = np.zeros(self.g.n, dtype=bool)
        alive[region] = True
        hub = int(region[0])
        d = self.params.d
        members_out, pops1, rel1 = kernels.grow_ball(
            self.g.n, self.out_indptr, self.out_dst, self.out_w, hub, d, alive
        )
        members_in, pops2, rel2 = kernels.grow_ball(
            self.g.n, self.in_indptr, self.in_src, self.in_w, hub, d, alive
        )
        self.units += pops1 + rel1 + pops2 + rel2
        if len(members_out) < len(region) or len(members_in) < len(region):
            return False
        # grow_ball returns members in ascending distance order; the radius
        # actually reached is recovered by re-running with tight cutoffs --
        # instead, bound via two half-radius balls.
        half = d // 2
        m_out, p1, r1 = kernels.grow_ball(
            self.g.n, self.out_indptr, self.out_dst, self.out_w, hub, half, alive
        )
        m_in, p2, r2 = kernels.grow_ball(
            self.g.n, self.in_indptr, self.in_src, self.in_w, hub, d - half, alive
        )
        self.units += p1 + r1 + p2 + r2
        return len(m_out) == len(region) and len(m_in) == len(region)

    def run(self) -> list[int]:
        n = self.g.n
        stack: list[tuple[np.ndarray, tuple]] = [
            (np.arange(n, dtype=np.int64), ())
        ]
        while stack:
            region, path = stack.pop()
            if len(path) > self.max_depth:
                raise RuntimeError(
                    "ball carving exceeded the recursion cap; c_geo is mistuned"
                )
            if len(region) <= 1 or self._certify(region):
                continue
            alive = np.zeros(n, dtype=bool)
            alive[region] = True
            remaining = region
            branch = 0
            while len(remaining) > 1:
                if self._certify(remaining):
                    break
                r = rng(self.params.seed, "carve", *path, branch)
                go_out = r.random() < 0.5
                radius = self._radius(r)
                center = int(remaining[0])
                if radius == 0:
                    ball = np.asarray([center], dtype=np.int64)
                    ball_pops = 1
                    ball_relax = 0
                elif go_out:
                    members, ball_pops, ball_relax = kernels.grow_ball(
                        n, self.out_indptr, self.out_dst, self.out_w,
                        center, radius, alive,
                    )
                    ball = np.unique(np.asarray(members, dtype=np.int64))
                else:
                    members, ball_pops, ball_relax = kernels.grow_ball(
                        n, self.in_indptr, self.in_src, self.in_w,
                        center, radius, alive,
                    )
                    ball = np.unique(np.asarray(members, dtype=np.int64))
                self.units += ball_pops + ball_relax
                in_ball = np.zeros(n, dtype=bool)
                in_ball[ball] = True
                # Sever boundary edges in the cut direction: leaving the
                # ball for out-growth, entering it for in-growth.
                if go_out:
                    for u in ball:
                        lo, hi = self.out_indptr[u], self.out_indptr[u + 1]
                        for pos in range(lo, hi):
                            v = self.out_dst[pos]
                            if alive[v] and not in_ball[v]:
                                self.collected.append(int(self.out_eid[pos]))
                else:
                    for u in ball:
                        lo, hi = self.in_indptr[u], self.in_indptr[u + 1]
                        for pos in range(lo, hi):
                            v = self.in_src[pos]
                            if alive[v] and not in_ball[v]:
                                self.collected.append(int(self.in_eid[pos]))
                alive[ball] = False
                remaining = remaining[~in_ball[remaining]]
                if len(ball) > 1:
                    stack.append((ball, path + (branch, "b")))
                branch += 1
        return self.collected


def _order_components(
    graph: Graph, comps: list[np.ndarray], comp_index: np.ndarray, removed: np.ndarray
) -> list[np.ndarray]:
    """Topological order preferring to keep severed edges forward too.

    Kahn's algorithm over the component graph: components whose every
    incoming arc (kept or severed) is placed come first; when only severed
    arcs block, they are conceded as back edges.  Deterministic, and exact
    for DAG inputs: no severed arc ever needs to go backward there.
    """
    k = len(comps)
    removed_mask = np.zeros(graph.m, dtype=bool)
    removed_mask[removed] = True
    kept_in: dict[int, set[int]] = {i: set() for i in range(k)}
    sev_in: dict[int, set[int]] = {i: set() for i in range(k)}
    kept_out: dict[int, set[int]] = {i: set() for i in range(k)}
    sev_out: dict[int, set[int]] = {i: set() for i in range(k)}
    for e in range(graph.m):
        a = int(comp_index[graph.src[e]])
        b = int(comp_index[graph.dst[e]])
        if a == b:
            continue
        if removed_mask[e]:
            sev_in[b].add(a)
            sev_out[a].add(b)
        else:
            kept_in[b].add(a)
            kept_out[a].add(b)
    import heapq

    placed = np.zeros(k, dtype=bool)
    kept_deg = {i: len(kept_in[i]) for i in range(k)}
    all_deg = {i: kept_deg[i] + len(sev_in[i]) for i in range(k)}
    free = [i for i in range(k) if all_deg[i] == 0]
    semi = [i for i in range(k) if all_deg[i] > 0 and kept_deg[i] == 0]
    heapq.heapify(free)
    heapq.heapify(semi)
    order: list[int] = []
    while len(order) < k:
        cid = -1
        while free:
            c = heapq.heappop(free)
            if not placed[c] and all_deg[c] == 0:
                cid = c
                break
        if cid < 0:
            while semi:
                c = heapq.heappop(semi)
                if not placed[c] and kept_deg[c] == 0:
                    cid = c
                    break
        if cid < 0:
            raise AssertionError("kept component graph contains a cycle")
        placed[cid] = True
        order.append(cid)
        for b in kept_out[cid]:
            if placed[b]:
                continue
            kept_deg[b] -= 1
            all_deg[b] -= 1
            if all_deg[b] == 0:
                heapq.heappush(free, b)
            elif kept_deg[b] == 0:
                heapq.heappush(semi, b)
        for b in sev_out[cid]:
            if placed[b]:
                continue
            all_deg[b] -= 1
            if all_deg[b] == 0:
                heapq.heappush(free, b)
            elif kept_deg[b] == 0:
                heapq.heappush(semi, b)
    return [comps[c] for c in order]


def dir_ldd(
    graph: Graph,
    params: LddParams,
    counter: WorkSpanCounter | None = None,
) -> Clustering:
    """Decompose a nonnegative-weight digraph; see the module docstring."""
    counter = counter if counter is not None else GLOBAL_COUNTER
    n, m = graph.n, graph.m
    if m and graph.min_weight() < 0:
        raise ValueError("low-diameter decomposition requires nonnegative weights")

    max_w = graph.max_weight() if m else 0
    if params.d >= (n - 1) * max_w + 1:
        # Trivial instance: mutually reachable pairs are within d already.
        order = scc_condensation_topo(graph)
        counter.charge("ldd", n, m, n + m)
        clustering = Clustering.from_parts(graph, order.components)
        assert len(clustering.cut_edges) == 0, "topological SCC order cut an edge"
        return clustering

    carver = _Carver(graph, params, counter)
    removed = np.unique(np.asarray(carver.run(), dtype=np.int64)).astype(np.int64)
    kept = np.ones(m, dtype=bool)
    kept[removed] = True if len(removed) == 0 else False
    if len(removed):
        kept[:] = True
        kept[removed] = False
    residual = Graph(n, graph.src[kept], graph.dst[kept], graph.w[kept], _validate=False)
    order = scc_condensation_topo(residual)
    parts = _order_components(graph, order.components, order.component_index, removed)
    counter.charge("ldd", n, m, carver.units + n + m)
    return Clustering.from_parts(graph, parts)
