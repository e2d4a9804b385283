"""Finite posets stored as read-only boolean order matrices.

Elements are ``range(n)``; ``leq[i, j]`` is True iff ``i <= j``.  Element sets
(down-sets, mass problems) are plain ``int`` bit masks over that range.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from . import _accel
from .errors import CycleDetected, IndexOutOfRange, SizeBound

DOWNSET_BOUND = 16


def bits(mask):
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class Poset:
    """Immutable finite partial order.

    Attributes:
        n: number of elements.
        leq: read-only ``n x n`` boolean matrix, ``leq[i, j]`` iff ``i <= j``.
        labels: optional tuple of element names.

    Derived data (covers, heights, bit masks) is computed lazily and cached.
    """

    def __init__(self, leq, labels=None, *, check=True):
        leq = np.array(leq, dtype=bool)
        n = leq.shape[0] if leq.ndim == 2 else 0
        leq = leq.reshape(n, n)
        if check:
            _check_partial_order(leq)
        leq.flags.writeable = False
        self.n = n
        self.leq = leq
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise ValueError(f"expected {n} labels, got {len(labels)}")
        self.labels = labels

    @classmethod
    def from_covers(cls, n, covers, labels=None):
        """Build the order generated by ``covers`` (pairs ``(a, b)`` meaning a < b)."""
        if n < 0:
            raise IndexOutOfRange(f"negative size {n}")
        adj = np.zeros((n, n), dtype=bool)
        for a, b in covers:
            for x in (a, b):
                if not 0 <= x < n:
                    raise IndexOutOfRange(f"element {x} not in 0..{n - 1}")
            if a == b:
                raise CycleDetected(a, a)
            adj[a, b] = True
        leq = _accel.closure(adj)
        both = leq & leq.T
        np.fill_diagonal(both, False)
        if both.any():
            a, b = np.argwhere(both)[0]
            raise CycleDetected(int(a), int(b))
        return cls(leq, labels, check=False)

    @classmethod
    def chain(cls, n):
        return cls.from_covers(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def antichain(cls, n):
        return cls(np.eye(n, dtype=bool), check=False)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.n == other.n and bool((self.leq == other.leq).all()) and self.labels == other.labels

    def __hash__(self):
        return hash((self.n, self.leq.tobytes(), self.labels))

    def __repr__(self):
        return f"Poset(n={self.n}, covers={self.cover_pairs})"

    def __getstate__(self):
        return {"leq": self.leq.copy(), "labels": self.labels}

    def __setstate__(self, state):
        self.__init__(state["leq"], state["labels"], check=False)

    def label(self, i):
        return self.labels[i] if self.labels is not None else str(i)

    # -- derived structure -------------------------------------------------

    @cached_property
    def lt(self):
        lt = self.leq.copy()
        np.fill_diagonal(lt, False)
        lt.flags.writeable = False
        return lt

    @cached_property
    def cover(self):
        """``cover[i, j]`` iff j covers i."""
        lt = self.lt.astype(np.int64)
        c = self.lt & ~((lt @ lt) > 0)
        c.flags.writeable = False
        return c

    @cached_property
    def cover_pairs(self):
        return [(int(a), int(b)) for a, b in np.argwhere(self.cover)]

    @cached_property
    def lower_covers(self):
        return [tuple(int(x) for x in np.flatnonzero(self.cover[:, j])) for j in range(self.n)]

    @cached_property
    def upper_covers(self):
        return [tuple(int(x) for x in np.flatnonzero(self.cover[i])) for i in range(self.n)]

    @cached_property
    def height(self):
        """Length of the longest chain ending at each element (minimal elements: 0)."""
        h = [0] * self.n
        for j in self.topological_order:
            for i in self.lower_covers[j]:
                h[j] = max(h[j], h[i] + 1)
        return tuple(h)

    @cached_property
    def topological_order(self):
        below = self.leq.sum(axis=0)
        return tuple(int(i) for i in np.argsort(below, kind="stable"))

    @cached_property
    def down_masks(self):
        """Bit mask of the principal down-set of each element (needs n <= 62)."""
        return tuple(mask_of(np.flatnonzero(self.leq[:, j])) for j in range(self.n))

    @cached_property
    def up_masks(self):
        return tuple(mask_of(np.flatnonzero(self.leq[i])) for i in range(self.n))

    @cached_property
    def minimal(self):
        return tuple(i for i in range(self.n) if not self.lower_covers[i])

    @cached_property
    def maximal(self):
        return tuple(i for i in range(self.n) if not self.upper_covers[i])

    def comparable(self, a, b):
        return bool(self.leq[a, b] or self.leq[b, a])

    # -- constructions -----------------------------------------------------

    def dual(self):
        return Poset(self.leq.T, self.labels, check=False)

    def relabel(self, perm):
        """Poset whose element ``k`` is this poset's element ``perm[k]``."""
        perm = np.asarray(perm, dtype=np.int64)
        labels = None if self.labels is None else tuple(self.labels[p] for p in perm)
        return Poset(self.leq[np.ix_(perm, perm)], labels, check=False)

    def induced(self, elements):
        elements = list(elements)
        labels = None if self.labels is None else tuple(self.labels[e] for e in elements)
        return Poset(self.leq[np.ix_(elements, elements)], labels, check=False)

    def with_labels(self, labels):
        return Poset(self.leq, labels, check=False)


def _check_partial_order(leq):
    n = leq.shape[0]
    if leq.shape != (n, n):
        raise ValueError("order matrix must be square")
    if not leq.diagonal().all():
        raise ValueError("order is not reflexive")
    both = leq & leq.T
    np.fill_diagonal(both, False)
    if both.any():
        a, b = np.argwhere(both)[0]
        raise CycleDetected(int(a), int(b))
    li = leq.astype(np.int64)
    if ((li @ li > 0) & ~leq).any():
        raise ValueError("order is not transitive")


def from_covers(n, covers, labels=None):
    return Poset.from_covers(n, covers, labels)


@dataclass(frozen=True)
class DownSet:
    """Down-closed subset of a host poset, as a bit mask."""

    members: int
    size: int

    @classmethod
    def of(cls, poset, members):
        if isinstance(members, int):
            mask = members
        else:
            mask = mask_of(members)
        if mask >> poset.n:
            raise IndexOutOfRange("down-set mentions elements outside the poset")
        for i in bits(mask):
            if poset.down_masks[i] & ~mask:
                raise ValueError(f"not down-closed at element {i}")
        return cls(mask, poset.n)

    def __contains__(self, i):
        return bool(self.members >> i & 1)

    def __iter__(self):
        return iter(bits(self.members))

    def __len__(self):
        return bin(self.members).count("1")

    def __or__(self, other):
        return DownSet(self.members | other.members, self.size)

    def __and__(self, other):
        return DownSet(self.members & other.members, self.size)

    def __le__(self, other):
        return self.members & ~other.members == 0

    def elements(self):
        return tuple(bits(self.members))


@dataclass(frozen=True)
class BowtieWitness:
    """Incomparable ``x0, x1`` with two incomparable minimal upper bounds ``y0, y1``."""

    x0: int
    x1: int
    y0: int
    y1: int

    def as_tuple(self):
        return (self.x0, self.x1, self.y0, self.y1)


@dataclass(frozen=True)
class UslVerdict:
    ok: bool
    witness: BowtieWitness | None = None

    def __bool__(self):
        return self.ok


def minimal_upper_bounds(poset, x, y):
    """Minimal elements of the common upper bounds of ``x`` and ``y``."""
    ub = np.flatnonzero(poset.leq[x] & poset.leq[y])
    return tuple(int(z) for z in ub if not any(poset.lt[w, z] for w in ub))


def is_usl_initial_segment(poset):
    """Can the poset be extended upward to an upper semilattice?

    True iff no incomparable pair has two (or more) minimal upper bounds.  On
    failure the lexicographically least such ``(x0, x1, y0, y1)`` is returned.
    """
    for x0, x1 in combinations(range(poset.n), 2):
        if poset.comparable(x0, x1):
            continue
        mub = minimal_upper_bounds(poset, x0, x1)
        if len(mub) >= 2:
            return UslVerdict(False, BowtieWitness(x0, x1, mub[0], mub[1]))
    return UslVerdict(True)


def is_upper_semilattice(poset):
    """Exhaustive check that every pair has a least upper bound."""
    if poset.n == 0:
        return True
    lub, _ = _accel.bound_tables(poset.leq)
    return bool((lub >= 0).all())


def add_top(poset, label="T"):
    """Adjoin one element above everything; it gets index ``n``."""
    n = poset.n
    leq = np.zeros((n + 1, n + 1), dtype=bool)
    leq[:n, :n] = poset.leq
    leq[:, n] = True
    labels = None if poset.labels is None else poset.labels + (label,)
    return Poset(leq, labels, check=False)


def add_bottom(poset, label="0"):
    """Adjoin one element below everything; it gets index ``n``."""
    n = poset.n
    leq = np.zeros((n + 1, n + 1), dtype=bool)
    leq[:n, :n] = poset.leq
    leq[n, :] = True
    labels = None if poset.labels is None else poset.labels + (label,)
    return Poset(leq, labels, check=False)


def downset_masks(poset, bound=DOWNSET_BOUND):
    if poset.n > bound:
        raise SizeBound(f"down-set enumeration is limited to {bound} elements, got {poset.n}")
    return [int(m) for m in _accel.downset_masks(np.array(poset.down_masks, dtype=np.int64))]


def downsets(poset, bound=DOWNSET_BOUND):
    """All down-sets, ordered by their bit vectors."""
    return [DownSet(m, poset.n) for m in downset_masks(poset, bound)]


def down_closure(poset, mask):
    out = 0
    for i in bits(mask):
        out |= poset.down_masks[i]
    return out


def up_closure(poset, mask):
    out = 0
    for i in bits(mask):
        out |= poset.up_masks[i]
    return out


def maximal_in(poset, mask):
    """Maximal elements of the element set ``mask``."""
    return tuple(i for i in bits(mask) if not (poset.up_masks[i] & mask & ~(1 << i)))


def minimal_in(poset, mask):
    return tuple(i for i in bits(mask) if not (poset.down_masks[i] & mask & ~(1 << i)))
