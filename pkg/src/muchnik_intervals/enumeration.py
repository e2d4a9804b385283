"""Enumeration of finite posets up to isomorphism.

Every poset on ``k + 1`` elements arises from one on ``k`` elements by adding a
new maximal element above some down-set, so levels are grown one element at a
time and deduplicated by canonical form.  Results are canonical
representatives sorted by canonical form.
"""
from __future__ import annotations

import numpy as np

from .canon import canonical_form, canonical_labeling
from .errors import SizeBound
from .poset import Poset, downset_masks

ENUMERATION_BOUND = 8

_levels: dict[int, list[Poset]] = {0: [Poset(np.zeros((0, 0), dtype=bool), check=False)]}


def _extend(q, down_mask):
    n = q.n
    leq = np.zeros((n + 1, n + 1), dtype=bool)
    leq[:n, :n] = q.leq
    leq[n, n] = True
    for i in range(n):
        if down_mask >> i & 1:
            leq[i, n] = True
    return Poset(leq, check=False)


def _canonical_rep(p):
    perm = canonical_labeling(p)
    return Poset(p.leq[np.ix_(perm, perm)], check=False)


def _dedup_sorted(candidates):
    seen = {}
    for p in candidates:
        key = canonical_form(p)
        if key not in seen:
            seen[key] = p
    return [_canonical_rep(seen[k]) for k in sorted(seen)]


def _level(n):
    if n not in _levels:
        prev = _level(n - 1)
        _levels[n] = _dedup_sorted(_extend(q, d) for q in prev for d in downset_masks(q))
    return _levels[n]


def enumerate_posets(n, bound=ENUMERATION_BOUND):
    """All posets on ``n`` elements, one per isomorphism class, in a fixed order."""
    if n < 0 or n > bound:
        raise SizeBound(f"poset enumeration supports 0 <= n <= {bound}, got {n}")
    return list(_level(n))


def posets_up_to(n, bound=ENUMERATION_BOUND, include_empty=False):
    start = 0 if include_empty else 1
    out = []
    for k in range(start, n + 1):
        out.extend(enumerate_posets(k, bound))
    return out


def posets_with_few_downsets(max_downsets):
    """All posets (any size, empty one included) with at most ``max_downsets`` down-sets.

    Adding an element strictly increases the number of down-sets, so growth
    stops at the first level where nothing fits.  Drives searches over all
    distributive lattices of bounded size.
    """
    level = [Poset(np.zeros((0, 0), dtype=bool), check=False)]
    out = list(level)
    while level:
        cands = []
        for q in level:
            hq = downset_masks(q)
            for d in hq:
                size = len(hq) + sum(1 for e in hq if d & ~e == 0)
                if size <= max_downsets:
                    cands.append(_extend(q, d))
        level = _dedup_sorted(cands)
        out.extend(level)
    return out
