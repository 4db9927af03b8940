"""Kernel selection: compiled extension when available, pure Python otherwise.

The compiled kernels work on 64-bit integers; callers can pass values of any
magnitude, and the dispatcher falls back to the pure-Python twin (exact
arbitrary-precision arithmetic) whenever a run could leave the 64-bit range.
``set_backend``/``NEGSSSP_KERNEL`` force one side, mainly for the twin-vs-twin
equivalence tests and the kernel benchmark.
"""
from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built; pure Python still fully functional
    _compiled = None

INF = _kernels_py.INF
_SAFE = 1 << 61

_backend = os.environ.get("NEGSSSP_KERNEL", "auto")


def set_backend(name: str) -> None:
    global _backend
    if name not in ("auto", "python", "compiled"):
        raise ValueError(f"unknown kernel backend {name!r}")
    if name == "compiled" and _compiled is None:
        raise RuntimeError("compiled kernels are not available")
    _backend = name


def backend_name() -> str:
    if _backend == "auto":
        return "compiled" if _compiled is not None else "python"
    return _backend


def _use_compiled(*bounds: int) -> bool:
    if _backend == "python" or _compiled is None:
        return False
    ok = all(b < _SAFE for b in bounds)
    if _backend == "compiled" and not ok:
        raise OverflowError("inputs exceed the compiled kernel's 64-bit range")
    return ok


def _i64(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.int64)


def _max_abs(a) -> int:
    if isinstance(a, np.ndarray):
        return int(np.abs(a).max()) if len(a) else 0
    return max((abs(int(x)) for x in a), default=0)


def dijkstra_csr(n, indptr, adj_dst, adj_w, adj_eid, src_ids, src_offsets):
    n = int(n)
    max_w = _max_abs(adj_w)
    max_off = _max_abs(src_offsets)
    if _use_compiled(max_off + (n + 1) * max(max_w, 0)):
        return _compiled.dijkstra_csr(
            n, _i64(indptr), _i64(adj_dst), _i64(adj_w), _i64(adj_eid),
            _i64(src_ids), _i64(src_offsets),
        )
    return _kernels_py.dijkstra_csr(
        n, _as_list(indptr), _as_list(adj_dst), _as_list(adj_w), _as_list(adj_eid),
        _as_list(src_ids), _as_list(src_offsets),
    )


def dijkstra_layered(n, indptr, adj_dst, adj_w, t, big_m, phi):
    n = int(n)
    t = int(t)
    big_m = int(big_m)
    max_abs_w = _max_abs(adj_w)
    max_abs_phi = _max_abs(phi)
    bound = big_m + max_abs_phi + (t + 1) * (n + 1) * (max_abs_w + big_m + 1)
    if _use_compiled(bound):
        return _compiled.dijkstra_layered(
            n, _i64(indptr), _i64(adj_dst), _i64(adj_w), t, big_m, _i64(phi)
        )
    return _kernels_py.dijkstra_layered(
        n, _as_list(indptr), _as_list(adj_dst), _as_list(adj_w), t, big_m, _as_list(phi)
    )


def grow_ball(n, indptr, adj_dst, adj_w, center, radius, alive):
    n = int(n)
    max_w = _max_abs(adj_w)
    if _use_compiled(int(radius) + (n + 1) * max(max_w, 0)):
        return _compiled.grow_ball(
            n, _i64(indptr), _i64(adj_dst), _i64(adj_w), int(center), int(radius),
            np.ascontiguousarray(alive, dtype=np.uint8),
        )
    return _kernels_py.grow_ball(
        n, _as_list(indptr), _as_list(adj_dst), _as_list(adj_w), int(center),
        int(radius), alive,
    )


def _as_list(a):
    return a.tolist() if isinstance(a, np.ndarray) else list(a)
