"""Successor-expansion kernels for domination-graph growth.

The hot loop of every analysis is: given a coalition structure, find all
permissible coalitions that block it and materialize the dominating
structures. Two interchangeable kernels implement that step over the
per-game rank tables: a numba-jitted loop and a vectorized pure-numpy
fallback.

Selection: ``STABLEDEC_BACKEND=numba|numpy`` in the environment, otherwise
numba when it is importable. ``use_backend`` switches at runtime (used by
the benchmark and the backend-equivalence tests).

Kernel contract: ``expand(parts, rank, masks, k_uids, sing_uid)`` where
``parts`` maps agent index -> universe id of its part. Returns
``(via_uids, succ_parts)``: one row per blocking coalition, in ascending
mask order, with abandoned agents moved to their singletons and untouched
parts carried over.
"""

from __future__ import annotations

import os

import numpy as np


def _expand_numpy(parts, rank, masks, k_uids, sing_uid):
    n = parts.shape[0]
    if k_uids.shape[0] == 0:
        return np.empty(0, np.int32), np.empty((0, n), np.int32)
    bits = np.arange(n, dtype=np.int64)
    memb = ((masks[k_uids][:, None] >> bits) & 1).astype(bool)      # (K, n)
    cur = rank[np.arange(n), parts]                                 # (n,)
    better = rank[:, k_uids].T < cur[None, :]                       # (K, n)
    blocking = np.all(better | ~memb, axis=1)
    vias = k_uids[blocking].astype(np.int32)
    if vias.shape[0] == 0:
        return vias, np.empty((0, n), np.int32)
    vmask = masks[vias][:, None]                                    # (B, 1)
    vmemb = ((vmask >> bits) & 1).astype(bool)                      # (B, n)
    touched = (masks[parts][None, :] & vmask) != 0
    succ = np.where(
        vmemb,
        vias[:, None],
        np.where(touched, sing_uid[None, :], parts[None, :]),
    ).astype(np.int32)
    return vias, succ


try:
    from numba import njit

    HAS_NUMBA = True

    @njit(cache=True)
    def _expand_numba(parts, rank, masks, k_uids, sing_uid):  # pragma: no cover
        n = parts.shape[0]
        nk = k_uids.shape[0]
        out_via = np.empty(nk, np.int32)
        out = np.empty((nk, n), np.int32)
        cnt = 0
        for t in range(nk):
            c = k_uids[t]
            cm = masks[c]
            ok = True
            for i in range(n):
                if (cm >> i) & 1:
                    if rank[i, c] >= rank[i, parts[i]]:
                        ok = False
                        break
            if ok:
                for i in range(n):
                    if (cm >> i) & 1:
                        out[cnt, i] = c
                    elif masks[parts[i]] & cm:
                        out[cnt, i] = sing_uid[i]
                    else:
                        out[cnt, i] = parts[i]
                out_via[cnt] = c
                cnt += 1
        return out_via[:cnt], out[:cnt]

except ImportError:  # pragma: no cover
    HAS_NUMBA = False
    _expand_numba = None


_BACKENDS = {"numpy": _expand_numpy}
if HAS_NUMBA:
    _BACKENDS["numba"] = _expand_numba

expand = _expand_numpy
selected_backend = "numpy"


def use_backend(name: str | None = None) -> str:
    """Select the expansion kernel; ``None`` re-reads the environment."""
    global expand, selected_backend
    if name is None:
        name = os.environ.get("STABLEDEC_BACKEND", "").strip().lower()
        if not name:
            name = "numba" if HAS_NUMBA else "numpy"
    if name not in _BACKENDS:
        if name == "numba" and not HAS_NUMBA:
            raise RuntimeError("numba backend requested but numba is not importable")
        raise ValueError(f"unknown backend {name!r}")
    expand = _BACKENDS[name]
    selected_backend = name
    return name


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def current_backend() -> str:
    return selected_backend


use_backend()
