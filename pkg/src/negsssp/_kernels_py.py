"""Pure-Python shortest-path kernels.

Twin of the compiled module ``negsssp._kernels``: identical signatures and
identical outputs (including tie-breaking and work counts).  This version
works with arbitrary-precision Python integers, so it also serves as the
fallback when inputs exceed the 64-bit range the compiled kernels accept.
"""
from __future__ import annotations

from heapq import heappop, heappush

INF = 1 << 62


def dijkstra_csr(n, indptr, adj_dst, adj_w, adj_eid, src_ids, src_offsets):
    """Multi-source Dijkstra on nonnegative weights over a CSR adjacency.

    Semantics of the sources: a virtual super-source with an edge of weight
    ``offset`` to each listed vertex.  Ties in the priority queue break by
    smaller vertex id.

    Returns (dist, parent_eid, pops, relaxations); dist[v] == INF marks v
    unreachable and parent_eid[v] == -1 marks roots/unreachable vertices.
    """
    dist = [INF] * n
    parent = [-1] * n
    heap = []
    for s, off in zip(src_ids, src_offsets):
        s = int(s)
        off = int(off)
        if off < 0:
            raise ValueError("negative source offset")
        if off < dist[s]:
            dist[s] = off
            heappush(heap, (off, s))
    settled = [False] * n
    pops = 0
    relax = 0
    while heap:
        d, v = heappop(heap)
        if settled[v] or d != dist[v]:
            continue
        settled[v] = True
        pops += 1
        for pos in range(indptr[v], indptr[v + 1]):
            relax += 1
            w = adj_w[pos]
            if w < 0:
                raise ValueError("negative weight passed to nonnegative oracle")
            u = adj_dst[pos]
            nd = d + w
            if nd < dist[u]:
                dist[u] = nd
                parent[u] = adj_eid[pos]
                heappush(heap, (nd, u))
    return dist, parent, pops, relax


def dijkstra_layered(n, indptr, adj_dst, adj_w, t, big_m, phi):
    """Distance upper bounds along paths with at most ``t`` negative edges.

    Runs Dijkstra over an implicit (t+1)-layer graph: within-layer copies
    exist only for edges whose adjusted weight ``adj_w`` is nonnegative,
    a negative edge advances one layer at weight ``adj_w + big_m``, and a
    virtual source reaches (v, 0) at weight ``big_m - phi[v]``.  All implied
    weights must be nonnegative; that is asserted here on the fly.

    Returns (best, pops, relaxations) where
    ``best[v] = min over layers i of dist(source, (v, i)) - (i+1)*big_m + phi[v]``,
    always finite (the layer-0 source edge bounds it by 0).
    """
    size = (t + 1) * n
    labels = [INF] * size
    heap = []
    for v in range(n):
        init = big_m - phi[v]
        if init < 0:
            raise ValueError("layered source edge negative")
        labels[v] = init
        heappush(heap, (init, v))
    settled = [False] * size
    pops = 0
    relax = 0
    while heap:
        d, x = heappop(heap)
        if settled[x] or d != labels[x]:
            continue
        settled[x] = True
        pops += 1
        layer = x // n
        v = x - layer * n
        for pos in range(indptr[v], indptr[v + 1]):
            relax += 1
            w = adj_w[pos]
            u = adj_dst[pos]
            if w >= 0:
                y = layer * n + u
                nd = d + w
            elif layer < t:
                wc = w + big_m
                if wc < 0:
                    raise ValueError("layered cross edge negative")
                y = (layer + 1) * n + u
                nd = d + wc
            else:
                continue
            if nd < labels[y]:
                labels[y] = nd
                heappush(heap, (nd, y))
    best = [0] * n
    for v in range(n):
        acc = labels[v] - big_m + phi[v]
        off = 0
        for i in range(1, t + 1):
            off += n
            lab = labels[off + v]
            if lab < INF:
                cand = lab - (i + 1) * big_m + phi[v]
                if cand < acc:
                    acc = cand
        best[v] = acc
    return best, pops, relax


def grow_ball(n, indptr, adj_dst, adj_w, center, radius, alive):
    """Vertices within weighted distance ``radius`` of ``center``.

    Walks only vertices marked in ``alive``; direction is encoded by the
    adjacency passed in (out-CSR for forward balls, in-CSR for reverse).
    Returns (members, ecc, pops, relaxations): members in ascending
    distance order (ties by vertex id) and ecc = the largest distance
    among them.
    """
    dist = {center: 0}
    heap = [(0, center)]
    members = []
    ecc = 0
    pops = 0
    relax = 0
    while heap:
        d, v = heappop(heap)
        if d > dist.get(v, INF):
            continue
        members.append(v)
        ecc = d
        pops += 1
        for pos in range(indptr[v], indptr[v + 1]):
            relax += 1
            u = adj_dst[pos]
            if not alive[u]:
                continue
            nd = d + adj_w[pos]
            if nd <= radius and nd < dist.get(u, INF):
                dist[u] = nd
                heappush(heap, (nd, u))
    return members, ecc, pops, relax
