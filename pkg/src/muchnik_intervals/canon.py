"""Canonical labelling of finite posets.

Colour refinement seeds each element with (lower-cover count, upper-cover
count, height, down-set size, up-set size) and refines by counting strict
predecessors, strict successors and covers in every colour class.  Remaining
ties are broken by individualising elements of the first non-trivial cell;
the canonical form is the lexicographically least packed order matrix over
all leaves.  Automorphisms found at leaves prune sibling branches in the
same orbit.
"""
from __future__ import annotations

from itertools import permutations

import numpy as np

from .poset import Poset


def _initial_colors(poset):
    n = poset.n
    inv = np.column_stack([
        poset.cover.sum(axis=0),
        poset.cover.sum(axis=1),
        np.array(poset.height, dtype=np.int64).reshape(n),
        poset.leq.sum(axis=0),
        poset.leq.sum(axis=1),
    ]).astype(np.int64)
    _, colors = np.unique(inv, axis=0, return_inverse=True)
    return colors.reshape(n)


def _refine(lt, cov, colors):
    n = len(colors)
    _, colors = np.unique(colors, return_inverse=True)
    colors = colors.reshape(n)
    k = int(colors.max()) + 1
    while True:
        onehot = np.zeros((n, k), dtype=np.int64)
        onehot[np.arange(n), colors] = 1
        sig = np.hstack([colors[:, None], lt.T @ onehot, lt @ onehot, cov.T @ onehot, cov @ onehot])
        _, new = np.unique(sig, axis=0, return_inverse=True)
        new = new.reshape(n)
        k_new = int(new.max()) + 1
        if k_new == k:
            return new
        colors, k = new, k_new


def _individualize(colors, v):
    out = 2 * colors + 1
    out[v] -= 1
    return out


class _Search:
    def __init__(self, poset):
        self.leq = poset.leq
        self.lt = poset.lt.astype(np.int64)
        self.cov = poset.cover.astype(np.int64)
        self.best_cert = None
        self.best_perm = None
        self.first_cert = None
        self.first_perm = None
        self.autos = []

    def run(self, poset):
        colors = _refine(self.lt, self.cov, _initial_colors(poset))
        self._search(colors, ())
        return self.best_cert, self.best_perm

    def _leaf(self, colors):
        perm = np.argsort(colors, kind="stable")
        cert = np.packbits(self.leq[np.ix_(perm, perm)]).tobytes()
        if self.best_cert is None:
            self.best_cert = self.first_cert = cert
            self.best_perm = self.first_perm = perm
            return
        for ref_cert, ref_perm in ((self.first_cert, self.first_perm), (self.best_cert, self.best_perm)):
            if cert == ref_cert:
                sigma = np.empty_like(perm)
                sigma[perm] = ref_perm
                self.autos.append(sigma)
                break
        if cert < self.best_cert:
            self.best_cert, self.best_perm = cert, perm

    def _orbit_roots(self, prefix, n):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for sigma in self.autos:
            if all(sigma[p] == p for p in prefix):
                for x in range(n):
                    a, b = find(x), find(int(sigma[x]))
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return find

    def _search(self, colors, prefix):
        counts = np.bincount(colors)
        big = np.flatnonzero(counts > 1)
        if len(big) == 0:
            self._leaf(colors)
            return
        members = [int(v) for v in np.flatnonzero(colors == big[0])]
        explored = []
        for v in members:
            if explored and self.autos:
                find = self._orbit_roots(prefix, len(colors))
                if find(v) in {find(u) for u in explored}:
                    continue
            explored.append(v)
            self._search(_refine(self.lt, self.cov, _individualize(colors, v)), prefix + (v,))


def canonical_labeling(poset):
    """Permutation ``perm`` such that ``poset.relabel(perm)`` is the canonical representative."""
    if poset.n == 0:
        return np.zeros(0, dtype=np.int64)
    _, perm = _Search(poset).run(poset)
    return perm


def canonical_form(poset):
    """Bytes that are equal for two posets iff they are isomorphic."""
    n = poset.n
    if n == 0:
        return b"\x00\x00"
    cert, _ = _Search(poset).run(poset)
    return n.to_bytes(2, "big") + cert


def canonicalize(poset):
    """The canonical representative of the poset's isomorphism class (labels dropped)."""
    perm = canonical_labeling(poset)
    return Poset(poset.leq[np.ix_(perm, perm)], check=False)


def are_isomorphic(p, q):
    if p.n != q.n:
        return False
    if int(p.leq.sum()) != int(q.leq.sum()):
        return False
    return canonical_form(p) == canonical_form(q)


def find_isomorphism(p, q):
    """A map ``phi`` (tuple, p-element -> q-element) with ``a <= b`` iff ``phi[a] <= phi[b]``, or None."""
    if not are_isomorphic(p, q):
        return None
    pp, pq = canonical_labeling(p), canonical_labeling(q)
    phi = [0] * p.n
    for a, b in zip(pp, pq):
        phi[int(a)] = int(b)
    return tuple(phi)


def brute_force_isomorphism(p, q):
    """Exhaustive bijection search; intended for small posets (oracle use)."""
    if p.n != q.n:
        return None
    for perm in permutations(range(q.n)):
        idx = np.array(perm, dtype=np.int64)
        if (q.leq[np.ix_(idx, idx)] == p.leq).all():
            return perm
    return None

