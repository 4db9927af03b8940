"""Reference oracles: Bellman-Ford, Karp minimum mean cycle, limited-negative DP.

These are correctness baselines, independent of the solver path they
check: relaxation loops and dynamic programs with exact integer
arithmetic.  Karp's recurrence is vectorized (it runs on every generated
instance); everything else favors clarity over speed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import INF, Graph, scc_condensation_topo
from .oracle import SourceSpec


@dataclass
class NegativeCycle:
    """Closed walk with negative total weight; first vertex == last."""

    vertices: list[int]
    total: int

    def verify(self, graph: Graph) -> None:
        vs = self.vertices
        assert len(vs) >= 2 and vs[0] == vs[-1], "cycle not closed"
        have: dict[tuple[int, int], int] = {}
        for i in range(graph.m):
            key = (int(graph.src[i]), int(graph.dst[i]))
            w = int(graph.w[i])
            if key not in have or w < have[key]:
                have[key] = w
        total = 0
        for a, b in zip(vs, vs[1:]):
            assert (a, b) in have, f"missing edge {a}->{b}"
            total += have[(a, b)]
        assert total <= self.total < 0, "cycle sum not negative"


@dataclass
class BfResult:
    dist: list
    parent_edge: list
    cycle: NegativeCycle | None


def bellman_ford(graph: Graph, sources: SourceSpec | None = None) -> BfResult:
    """Exact distances from a virtual source, or a verified negative cycle.

    ``sources=None`` means the all-vertices source set, i.e. distances
    from V.  Runs up to n rounds of relaxation in edge order; an
    improvement in the n-th round certifies a reachable negative cycle,
    extracted by walking the predecessor graph n steps and closing the
    loop it must have entered.
    """
    n = graph.n
    if sources is None:
        sources = SourceSpec.all_vertices(n) if n else SourceSpec(((0, 0),))
    dist: list = [None] * n  # None = unreachable
    parent = [-1] * n
    for v, off in sources.entries:
        if dist[v] is None or off < dist[v]:
            dist[v] = int(off)
    src = graph.src.tolist()
    dst = graph.dst.tolist()
    w = graph.w.tolist()
    m = graph.m
    changed_vertex = -1
    for _rnd in range(n):
        changed_vertex = -1
        for e in range(m):
            du = dist[src[e]]
            if du is None:
                continue
            cand = du + w[e]
            v = dst[e]
            if dist[v] is None or cand < dist[v]:
                dist[v] = cand
                parent[v] = e
                changed_vertex = v
        if changed_vertex == -1:
            break
    cycle = None
    if changed_vertex != -1:
        v = changed_vertex
        for _ in range(n):
            v = src[parent[v]]
        walk = [v]
        u = src[parent[v]]
        while u != v:
            walk.append(u)
            u = src[parent[u]]
        walk.append(v)
        walk.reverse()
        total = 0
        for a, b in zip(walk, walk[1:]):
            e = parent[b]
            assert src[e] == a and dst[e] == b
            total += w[e]
        assert total < 0, "extracted cycle is not negative"
        cycle = NegativeCycle(walk, total)
        cycle.verify(graph)
    out = [d if d is not None else INF for d in dist]
    return BfResult(out, parent, cycle)


# ---------------------------------------------------------------------------
# Karp minimum mean cycle
# ---------------------------------------------------------------------------


def karp_min_mean_cycle(graph: Graph):
    """Exact minimum cycle mean as a reduced fraction, with a witness cycle.

    Returns None for acyclic graphs, else ``(numerator, denominator,
    cycle)`` where the cycle is a closed vertex walk achieving the mean
    exactly.  The recurrence runs per strongly connected component, where
    it is valid.
    """
    order = scc_condensation_topo(graph)
    cidx = order.component_index
    if graph.m:
        esrc, edst, ew = graph.src, graph.dst, graph.w
        intra = cidx[esrc] == cidx[edst]
        by_comp = np.argsort(cidx[esrc[intra]], kind="stable")
        intra_ids = np.nonzero(intra)[0][by_comp]
        comp_of = cidx[esrc[intra_ids]]
        bounds = np.searchsorted(comp_of, np.arange(len(order.components) + 1))
    else:
        intra_ids = np.zeros(0, dtype=np.int64)
        bounds = np.zeros(len(order.components) + 1, dtype=np.int64)

    best: Fraction | None = None
    best_comp = -1
    for cid, members in enumerate(order.components):
        eids = intra_ids[bounds[cid] : bounds[cid + 1]]
        if len(eids) == 0:
            continue
        lsrc = np.searchsorted(members, graph.src[eids])
        ldst = np.searchsorted(members, graph.dst[eids])
        lw = graph.w[eids]
        mean = _karp_component(len(members), lsrc, ldst, lw)
        if mean is not None and (best is None or mean < best):
            best, best_comp = mean, cid
    if best is None:
        return None
    members = order.components[best_comp]
    eids = intra_ids[bounds[best_comp] : bounds[best_comp + 1]]
    cycle = _witness_cycle(
        members,
        np.searchsorted(members, graph.src[eids]),
        np.searchsorted(members, graph.dst[eids]),
        graph.w[eids],
        best,
    )
    return best.numerator, best.denominator, cycle


def _karp_component(nc: int, lsrc, ldst, lw) -> Fraction | None:
    """min over v of max over k of (d[nc][v]-d[k][v])/(nc-k), d exact."""
    max_abs = int(np.abs(lw).max())
    if (nc + 1) * (max_abs + 1) < (1 << 30):
        return _karp_np(nc, lsrc, ldst, lw)
    return _karp_py(nc, lsrc.tolist(), ldst.tolist(), lw.tolist())


def _karp_np(nc: int, lsrc, ldst, lw) -> Fraction | None:
    order = np.argsort(ldst, kind="stable")
    s_src = lsrc[order]
    s_dst = ldst[order]
    s_w = lw[order]
    starts = np.searchsorted(s_dst, np.arange(nc))
    has_in = starts < np.append(starts[1:], len(s_dst))
    seg_starts = starts[has_in]
    in_verts = np.arange(nc)[has_in]

    table = np.full((nc + 1, nc), INF, dtype=np.int64)
    table[0] = 0
    prev = table[0]
    for k in range(1, nc + 1):
        cand = np.where(prev[s_src] >= INF, INF, prev[s_src] + s_w)
        cur = np.full(nc, INF, dtype=np.int64)
        if len(seg_starts):
            cur[in_verts] = np.minimum.reduceat(cand, seg_starts)
        table[k] = cur
        prev = cur

    last = table[nc]
    valid_v = last < INF
    if not valid_v.any():
        return None
    # max over k per v of (last - table[k]) / (nc - k), exact via cross mult.
    best_num = np.where(valid_v, last - table[0], 0)
    best_den = np.full(nc, nc, dtype=np.int64)
    for k in range(1, nc):
        den = nc - k
        row = table[k]
        ok = valid_v & (row < INF)
        num = np.where(ok, last - row, 0)
        better = ok & (num * best_den > best_num * den)
        best_num = np.where(better, num, best_num)
        best_den = np.where(better, den, best_den)
    means = [
        Fraction(int(best_num[v]), int(best_den[v])) for v in np.nonzero(valid_v)[0]
    ]
    return min(means)


def _karp_py(nc: int, lsrc, ldst, lw) -> Fraction | None:
    prev = [0] * nc
    table = [prev]
    for _ in range(nc):
        cur: list = [None] * nc
        for a, b, wt in zip(lsrc, ldst, lw):
            if prev[a] is None:
                continue
            cand = prev[a] + wt
            if cur[b] is None or cand < cur[b]:
                cur[b] = cand
        table.append(cur)
        prev = cur
    best = None
    last = table[nc]
    for v in range(nc):
        if last[v] is None:
            continue
        worst = None
        for k in range(nc):
            if table[k][v] is None:
                continue
            val = Fraction(last[v] - table[k][v], nc - k)
            if worst is None or val > worst:
                worst = val
        if worst is not None and (best is None or worst < best):
            best = worst
    return best


def _witness_cycle(members, lsrc, ldst, lw, mean: Fraction) -> list[int]:
    """A cycle achieving ``mean`` exactly.

    With weights q*w - p every cycle in the component is nonnegative and a
    critical one sums to zero, so under distance potentials all its edges
    are tight; any cycle of tight edges is therefore a witness.
    """
    p, q = mean.numerator, mean.denominator
    nc = len(members)
    max_abs = int(np.abs(lw).max()) if len(lw) else 0
    if nc * (q * (max_abs + 1) + abs(p)) < (1 << 60):
        rw_np = q * np.asarray(lw, dtype=np.int64) - p
        lsrc_np = np.asarray(lsrc, dtype=np.int64)
        ldst_np = np.asarray(ldst, dtype=np.int64)
        order = np.argsort(ldst_np, kind="stable")
        s_src, s_dst, s_w = lsrc_np[order], ldst_np[order], rw_np[order]
        starts = np.searchsorted(s_dst, np.arange(nc))
        ends = np.append(starts[1:], len(s_dst))
        in_verts = np.arange(nc)[starts < ends]
        seg_starts = starts[starts < ends]
        dist_np = np.zeros(nc, dtype=np.int64)
        changed = False
        for _ in range(nc):
            cand = dist_np[s_src] + s_w
            nxt = dist_np.copy()
            if len(seg_starts):
                nxt[in_verts] = np.minimum(
                    nxt[in_verts], np.minimum.reduceat(cand, seg_starts)
                )
            changed = bool((nxt < dist_np).any())
            if not changed:
                break
            dist_np = nxt
        assert not changed, "minimum mean cycle was not minimal"
        tight_mask = dist_np[lsrc_np] + rw_np == dist_np[ldst_np]
        tight: list[list[int]] = [[] for _ in range(nc)]
        for a, b in zip(lsrc_np[tight_mask].tolist(), ldst_np[tight_mask].tolist()):
            tight[a].append(b)
    else:
        rw = [q * int(w) - p for w in lw]
        lsrc = list(lsrc.tolist() if hasattr(lsrc, "tolist") else lsrc)
        ldst = list(ldst.tolist() if hasattr(ldst, "tolist") else ldst)
        dist = [0] * nc
        for _ in range(nc):
            changed = False
            for a, b, wt in zip(lsrc, ldst, rw):
                if dist[a] + wt < dist[b]:
                    dist[b] = dist[a] + wt
                    changed = True
            if not changed:
                break
        assert not changed, "minimum mean cycle was not minimal"
        tight = [[] for _ in range(nc)]
        for a, b, wt in zip(lsrc, ldst, rw):
            if dist[a] + wt == dist[b]:
                tight[a].append(b)
    color = [0] * nc  # 0 new, 1 on path, 2 done
    pos: dict[int, int] = {}
    for root in range(nc):
        if color[root] != 0:
            continue
        path = [root]
        pos[root] = 0
        color[root] = 1
        work = [(root, 0)]
        while work:
            v, i = work[-1]
            if i < len(tight[v]):
                work[-1] = (v, i + 1)
                u = tight[v][i]
                if color[u] == 1:
                    cyc = path[pos[u] :] + [u]
                    return [int(members[x]) for x in cyc]
                if color[u] == 0:
                    color[u] = 1
                    pos[u] = len(path)
                    path.append(u)
                    work.append((u, 0))
            else:
                work.pop()
                color[v] = 2
                path.pop()
                pos.pop(v, None)
    raise AssertionError("no tight cycle found for the minimum mean")


@dataclass
class RestrictedVerdict:
    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def validate_restricted(graph: Graph) -> RestrictedVerdict:
    """Weights within {-1..n} and minimum cycle mean at least 1 (or acyclic)."""
    n = graph.n
    if graph.m:
        lo, hi = graph.min_weight(), graph.max_weight()
        if lo < -1 or hi > n:
            return RestrictedVerdict(
                False, f"weight range [{lo}, {hi}] outside [-1, {n}]"
            )
    karp = karp_min_mean_cycle(graph)
    if karp is not None:
        p, q, _cycle = karp
        if Fraction(p, q) < 1:
            return RestrictedVerdict(False, f"cycle mean {p}/{q} < 1")
    return RestrictedVerdict(True, "ok")


def dp_limited_neg(graph: Graph, phi, t: int, adjusted: bool = False) -> list:
    """Min weight over walks ending at v with at most t negative edges.

    Negativity is judged against the phi-adjusted weights; the reported
    total is in original weights (or in adjusted ones when ``adjusted``).
    Label-correcting over states (vertex, negatives used); the input must
    be free of negative cycles.
    """
    from collections import deque

    n = graph.n
    phi = [int(x) for x in phi]
    t = int(t)
    labels: list[list] = [[0 if k == 0 else None for k in range(t + 1)] for _ in range(n)]
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for e in range(graph.m):
        u, v, w = int(graph.src[e]), int(graph.dst[e]), int(graph.w[e])
        wp = w + phi[u] - phi[v]
        adj[u].append((v, wp if adjusted else w, 1 if wp < 0 else 0))
    queue = deque((v, 0) for v in range(n))
    queued = {(v, 0) for v in range(n)}
    while queue:
        u, k = queue.popleft()
        queued.discard((u, k))
        base = labels[u][k]
        for v, cost, neg in adj[u]:
            k2 = k + neg
            if k2 > t:
                continue
            cand = base + cost
            if labels[v][k2] is None or cand < labels[v][k2]:
                labels[v][k2] = cand
                if (v, k2) not in queued:
                    queue.append((v, k2))
                    queued.add((v, k2))
    return [min(x for x in labels[v] if x is not None) for v in range(n)]
