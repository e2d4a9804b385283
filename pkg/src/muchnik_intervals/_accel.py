"""Hot kernels over small boolean order matrices and bit-masked element sets.

Each kernel exists twice: a numba ``@njit`` version and a pure numpy version.
The dispatching names at the bottom of the module pick one at import time.
Set ``MUCHNIK_PURE_NUMPY=1`` in the environment to force the numpy path, e.g.
to compare results or to run where numba is unavailable.  Both paths return
identical values; ``tests/test_accel.py`` checks this on random inputs.

Bit masks are ``int64``, so mask-based kernels require at most 62 elements.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

PURE_NUMPY = os.environ.get("MUCHNIK_PURE_NUMPY", "").lower() in ("1", "true", "yes")
HAVE_NUMBA = numba is not None

MASK_BITS = 62


# ---------------------------------------------------------------------------
# numpy implementations


def np_closure(adj):
    """Reflexive-transitive closure (Warshall)."""
    r = np.array(adj, dtype=bool, copy=True)
    n = r.shape[0]
    r[np.arange(n), np.arange(n)] = True
    for k in range(n):
        r |= np.outer(r[:, k], r[k, :])
    return r


def np_downset_masks(down):
    """All masks closed under ``i in m => down[i] subset of m``, ascending."""
    n = len(down)
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(masks.shape, dtype=bool)
    for i in range(n):
        has = ((masks >> i) & 1).astype(bool)
        need = np.int64(down[i])
        ok &= ~has | ((masks & need) == need)
    return masks[ok]


def np_bound_tables(leq):
    """Least upper / greatest lower bound tables; -1 where none exists."""
    n = leq.shape[0]
    up_count = leq.sum(axis=1)
    down_count = leq.sum(axis=0)
    lub = np.full((n, n), -1, dtype=np.int64)
    glb = np.full((n, n), -1, dtype=np.int64)
    for i in range(n):
        ub = leq[i][None, :] & leq          # ub[j, k]: i <= k and j <= k
        n_ub = ub.sum(axis=1)
        hit = ub & (up_count[None, :] == n_ub[:, None])
        has = hit.any(axis=1)
        lub[i, has] = hit[has].argmax(axis=1)
        lb = leq[:, i][None, :] & leq.T     # lb[j, k]: k <= i and k <= j
        n_lb = lb.sum(axis=1)
        hit = lb & (down_count[None, :] == n_lb[:, None])
        has = hit.any(axis=1)
        glb[i, has] = hit[has].argmax(axis=1)
    return lub, glb


def np_distributive_violation(join, meet):
    """First (a, b, c) with a^(b v c) != (a^b) v (a^c), else (-1, -1, -1)."""
    n = join.shape[0]
    for a in range(n):
        row = meet[a]
        lhs = row[join]
        rhs = join[row[:, None], row[None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            return a, int(bad[0, 0]), int(bad[0, 1])
    return -1, -1, -1


def np_closed_between(up, lo, hi):
    """Masks ``lo | s`` (s a submask of ``hi & ~lo``) closed under ``up``, ascending."""
    free = int(hi) & ~int(lo)
    bits = [i for i in range(MASK_BITS) if free >> i & 1]
    idx = np.arange(1 << len(bits), dtype=np.int64)
    masks = np.full(idx.shape, np.int64(lo))
    for pos, bit in enumerate(bits):
        masks |= ((idx >> pos) & 1) << bit
    ok = np.ones(masks.shape, dtype=bool)
    for i in range(len(up)):
        has = ((masks >> i) & 1).astype(bool)
        need = np.int64(up[i])
        ok &= ~has | ((masks & need) == need)
    return np.sort(masks[ok])


def np_strict_cover_pairs(masks):
    """cov[i, j]: masks[j] is a proper subset of masks[i] with no mask strictly between."""
    m = np.asarray(masks, dtype=np.int64)
    sub = ((m[None, :] & ~m[:, None]) == 0) & (m[None, :] != m[:, None])
    via = (sub.astype(np.int64) @ sub.astype(np.int64)) > 0
    return sub & ~via


# ---------------------------------------------------------------------------
# numba implementations

if HAVE_NUMBA:
    _jit = numba.njit(cache=True, nogil=True)

    @_jit
    def nb_closure(adj):
        n = adj.shape[0]
        r = adj.copy()
        for i in range(n):
            r[i, i] = True
        for k in range(n):
            for i in range(n):
                if r[i, k]:
                    for j in range(n):
                        if r[k, j]:
                            r[i, j] = True
        return r

    @_jit
    def nb_downset_masks(down):
        n = down.shape[0]
        out = np.empty(1 << n, dtype=np.int64)
        cnt = 0
        for m in range(1 << n):
            ok = True
            for i in range(n):
                if (m >> i) & 1 and (m & down[i]) != down[i]:
                    ok = False
                    break
            if ok:
                out[cnt] = m
                cnt += 1
        return out[:cnt]

    @_jit
    def nb_bound_tables(leq):
        n = leq.shape[0]
        up_count = np.zeros(n, dtype=np.int64)
        down_count = np.zeros(n, dtype=np.int64)
        for i in range(n):
            for j in range(n):
                if leq[i, j]:
                    up_count[i] += 1
                    down_count[j] += 1
        lub = np.full((n, n), -1, dtype=np.int64)
        glb = np.full((n, n), -1, dtype=np.int64)
        for i in range(n):
            for j in range(n):
                n_ub = 0
                n_lb = 0
                for k in range(n):
                    if leq[i, k] and leq[j, k]:
                        n_ub += 1
                    if leq[k, i] and leq[k, j]:
                        n_lb += 1
                for k in range(n):
                    if lub[i, j] < 0 and leq[i, k] and leq[j, k] and up_count[k] == n_ub:
                        lub[i, j] = k
                    if glb[i, j] < 0 and leq[k, i] and leq[k, j] and down_count[k] == n_lb:
                        glb[i, j] = k
        return lub, glb

    @_jit
    def nb_distributive_violation(join, meet):
        n = join.shape[0]
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if meet[a, join[b, c]] != join[meet[a, b], meet[a, c]]:
                        return a, b, c
        return -1, -1, -1

    @_jit
    def nb_closed_between(up, lo, hi):
        free = hi & ~lo
        k = 0
        for i in range(MASK_BITS):
            if (free >> i) & 1:
                k += 1
        out = np.empty(1 << k, dtype=np.int64)
        cnt = 0
        s = free
        while True:
            m = lo | s
            ok = True
            for i in range(up.shape[0]):
                if (m >> i) & 1 and (m & up[i]) != up[i]:
                    ok = False
                    break
            if ok:
                out[cnt] = m
                cnt += 1
            if s == 0:
                break
            s = (s - 1) & free
        return np.sort(out[:cnt])

    @_jit
    def nb_strict_cover_pairs(masks):
        n = masks.shape[0]
        sub = np.zeros((n, n), dtype=np.bool_)
        for i in range(n):
            for j in range(n):
                if masks[i] != masks[j] and (masks[j] & ~masks[i]) == 0:
                    sub[i, j] = True
        cov = sub.copy()
        for i in range(n):
            for j in range(n):
                if sub[i, j]:
                    for k in range(n):
                        if sub[i, k] and sub[k, j]:
                            cov[i, j] = False
                            break
        return cov


# ---------------------------------------------------------------------------
# dispatch

USE_NUMBA = HAVE_NUMBA and not PURE_NUMPY
BACKEND = "numba" if USE_NUMBA else "numpy"


def closure(adj):
    adj = np.ascontiguousarray(adj, dtype=np.bool_)
    return nb_closure(adj) if USE_NUMBA else np_closure(adj)


def downset_masks(down):
    down = np.ascontiguousarray(down, dtype=np.int64)
    return nb_downset_masks(down) if USE_NUMBA else np_downset_masks(down)


def bound_tables(leq):
    leq = np.ascontiguousarray(leq, dtype=np.bool_)
    return nb_bound_tables(leq) if USE_NUMBA else np_bound_tables(leq)


def distributive_violation(join, meet):
    join = np.ascontiguousarray(join, dtype=np.int64)
    meet = np.ascontiguousarray(meet, dtype=np.int64)
    fn = nb_distributive_violation if USE_NUMBA else np_distributive_violation
    a, b, c = fn(join, meet)
    return int(a), int(b), int(c)


def closed_between(up, lo, hi):
    up = np.ascontiguousarray(up, dtype=np.int64)
    if USE_NUMBA:
        return nb_closed_between(up, np.int64(lo), np.int64(hi))
    return np_closed_between(up, lo, hi)


def strict_cover_pairs(masks):
    masks = np.ascontiguousarray(masks, dtype=np.int64)
    return nb_strict_cover_pairs(masks) if USE_NUMBA else np_strict_cover_pairs(masks)
