"""Finite lattices, Birkhoff duality, intervals and sub-structure search."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from . import _accel
from .canon import are_isomorphic as posets_isomorphic
from .canon import brute_force_isomorphism, canonical_form
from .errors import NotALattice, NotComparable, NotDistributive, SizeBound
from .poset import DOWNSET_BOUND, DownSet, Poset, bits, downset_masks, mask_of

LATTICE_BOUND = 4096


class Lattice:
    """A finite lattice given by its order and its join/meet tables.

    ``origin`` optionally records, for each element, the index it had in the
    lattice this one was cut out of (see :func:`interval`).
    """

    def __init__(self, order, join, meet, distributive, origin=None):
        self.order = order
        self.join = np.asarray(join, dtype=np.int64)
        self.meet = np.asarray(meet, dtype=np.int64)
        self.join.flags.writeable = False
        self.meet.flags.writeable = False
        self.distributive = bool(distributive)
        self.origin = None if origin is None else tuple(origin)
        below = order.leq.sum(axis=0)
        self.bottom = int(np.argmin(below))
        self.top = int(np.argmax(below))

    @property
    def n(self):
        return self.order.n

    def __len__(self):
        return self.order.n

    def __repr__(self):
        return f"Lattice(n={self.n}, distributive={self.distributive})"

    @property
    def leq(self):
        return self.order.leq

    @property
    def labels(self):
        return self.order.labels

    def label(self, i):
        return self.order.label(i)

    def join_all(self, elements):
        out = self.bottom
        for e in elements:
            out = int(self.join[out, e])
        return out

    def meet_all(self, elements):
        out = self.top
        for e in elements:
            out = int(self.meet[out, e])
        return out

    @cached_property
    def join_irreducible_mask(self):
        """Boolean vector: element has exactly one lower cover."""
        return self.order.cover.sum(axis=0) == 1


@dataclass(frozen=True)
class BirkhoffRep:
    """Nonzero join-irreducibles: the induced poset and the lattice elements behind it."""

    j_poset: Poset
    j_elements: tuple

    def index(self, element):
        return self.j_elements.index(element)


def _from_order(order, check_distributive=True):
    if order.n == 0:
        raise NotALattice((None, None), "elements at all")
    join, meet = _accel.bound_tables(order.leq)
    for table, kind in ((join, "least upper bound"), (meet, "greatest lower bound")):
        bad = np.argwhere(table < 0)
        if len(bad):
            a, b = (int(x) for x in bad[0])
            raise NotALattice((a, b), kind)
    distributive = True
    if check_distributive:
        distributive = _accel.distributive_violation(join, meet)[0] < 0
    return Lattice(order, join, meet, distributive)


def verify_lattice(poset):
    """Build join/meet tables for ``poset`` and test distributivity exhaustively.

    Raises NotALattice naming the first pair without a bound.
    """
    return _from_order(poset)


def distributivity_violation(lattice):
    """First triple ``(a, b, c)`` breaking distributivity, or None."""
    t = _accel.distributive_violation(lattice.join, lattice.meet)
    return None if t[0] < 0 else t


def join_irreducibles(lattice):
    elements = tuple(int(i) for i in np.flatnonzero(lattice.join_irreducible_mask))
    return BirkhoffRep(lattice.order.induced(elements), elements)


def r_map(lattice, a, rep=None):
    """Down-set ``{x in J(L) : x <= a}`` of the join-irreducible poset."""
    rep = rep or join_irreducibles(lattice)
    return DownSet(mask_of(k for k, x in enumerate(rep.j_elements) if lattice.leq[x, a]), rep.j_poset.n)


def _set_label(poset, mask):
    return "{" + ",".join(poset.label(i) for i in bits(mask)) + "}"


def downset_lattice(poset, bound=DOWNSET_BOUND, labelled=True):
    """The lattice H(P) of down-sets of ``poset`` under inclusion.

    Element ``k`` is the ``k``-th down-set in bit-vector order, so 0 is the
    empty set and the last element is all of ``poset``.
    """
    masks = downset_masks(poset, bound)
    m = len(masks)
    if m > LATTICE_BOUND:
        raise SizeBound(f"H(P) would have {m} elements (limit {LATTICE_BOUND})")
    arr = np.array(masks, dtype=np.int64)
    leq = (arr[:, None] & ~arr[None, :]) == 0
    index = {v: k for k, v in enumerate(masks)}
    join = np.array([[index[a | b] for b in masks] for a in masks], dtype=np.int64).reshape(m, m)
    meet = np.array([[index[a & b] for b in masks] for a in masks], dtype=np.int64).reshape(m, m)
    labels = [_set_label(poset, v) for v in masks] if labelled else None
    return Lattice(Poset(leq, labels, check=False), join, meet, True)


def birkhoff_roundtrip(lattice):
    """Check that ``a -> r(a)`` is an order isomorphism from L onto H(J(L))."""
    if not lattice.distributive:
        raise NotDistributive(distributivity_violation(lattice))
    rep = join_irreducibles(lattice)
    targets = downset_masks(rep.j_poset)
    images = [r_map(lattice, a, rep).members for a in range(lattice.n)]
    if sorted(images) != targets:
        return False
    for a in range(lattice.n):
        for b in range(lattice.n):
            if bool(lattice.leq[a, b]) != (images[a] & ~images[b] == 0):
                return False
    return True


def interval(lattice, a, b):
    """The sublattice ``[a, b] = {x : a <= x <= b}``."""
    if not lattice.leq[a, b]:
        raise NotComparable(f"{a} is not below {b}")
    elements = [int(x) for x in np.flatnonzero(lattice.leq[a, :] & lattice.leq[:, b])]
    pos = np.full(lattice.n, -1, dtype=np.int64)
    pos[elements] = np.arange(len(elements))
    idx = np.array(elements, dtype=np.int64)
    join = pos[lattice.join[np.ix_(idx, idx)]]
    meet = pos[lattice.meet[np.ix_(idx, idx)]]
    return Lattice(lattice.order.induced(elements), join, meet, lattice.distributive, origin=elements)


def lattice_form(lattice):
    """Canonical form of the underlying order (order isomorphism = lattice isomorphism)."""
    return canonical_form(lattice.order)


def are_isomorphic(l1, l2):
    if l1.n != l2.n or l1.distributive != l2.distributive:
        return False
    return posets_isomorphic(l1.order, l2.order)


def brute_force_isomorphic(l1, l2):
    """Exhaustive bijection search preserving joins and meets (oracle, small lattices)."""
    if l1.n != l2.n:
        return False
    from itertools import permutations

    for perm in permutations(range(l2.n)):
        p = np.array(perm)
        if (p[l1.join] == l2.join[np.ix_(p, p)]).all() and (p[l1.meet] == l2.meet[np.ix_(p, p)]).all():
            return True
    return False


def find_sublattice(big, small):
    """Injective map ``small -> big`` preserving joins and meets (bounds need not be kept)."""
    if small.n > big.n:
        return None
    order = list(small.order.topological_order)
    phi = {}
    used = set()

    def consistent(x, img):
        for y, iy in phi.items():
            if bool(small.leq[x, y]) != bool(big.leq[img, iy]) or bool(small.leq[y, x]) != bool(big.leq[iy, img]):
                return False
            j, m = int(small.join[x, y]), int(small.meet[x, y])
            if j in phi and phi[j] != big.join[img, iy]:
                return False
            if m in phi and phi[m] != big.meet[img, iy]:
                return False
        # pairs whose join or meet is x itself
        for y, z in combinations(list(phi), 2):
            if small.join[y, z] == x and big.join[phi[y], phi[z]] != img:
                return False
            if small.meet[y, z] == x and big.meet[phi[y], phi[z]] != img:
                return False
        return True

    def extend(k):
        if k == len(order):
            return True
        x = order[k]
        for img in range(big.n):
            if img in used or not consistent(x, img):
                continue
            phi[x] = img
            used.add(img)
            if extend(k + 1):
                return True
            del phi[x]
            used.discard(img)
        return False

    if not extend(0):
        return None
    return tuple(phi[x] for x in range(small.n))


def is_sublattice_embedding(big, small, phi):
    p = np.array(phi, dtype=np.int64)
    if len(set(phi)) != small.n:
        return False
    return bool((p[small.join] == big.join[np.ix_(p, p)]).all() and (p[small.meet] == big.meet[np.ix_(p, p)]).all())


def find_subinterval(big, small):
    """Lexicographically first ``(a, b)`` with ``interval(big, a, b)`` isomorphic to ``small``."""
    target = lattice_form(small)
    sizes = big.leq.astype(np.int64) @ big.leq.astype(np.int64)  # sizes[a, b] = |[a, b]|
    for a in range(big.n):
        for b in range(big.n):
            if big.leq[a, b] and sizes[a, b] == small.n:
                if lattice_form(interval(big, a, b)) == target:
                    return a, b
    return None


def _monotone_tables(n_vars):
    m = 1 << n_vars
    out = []
    for t in range(1 << m):
        ok = True
        for x in range(m):
            if t >> x & 1:
                for y in range(m):
                    if x & ~y == 0 and not t >> y & 1:
                        ok = False
                        break
            if not ok:
                break
        if ok:
            out.append(t)
    return out


def _dnf_label(t, n_vars):
    names = "abc"
    m = 1 << n_vars
    if t == 0:
        return "0"
    if t == (1 << m) - 1:
        return "1"
    minimal = [x for x in range(m) if t >> x & 1 and not any(t >> y & 1 and y != x and y & ~x == 0 for y in range(m))]
    terms = ["".join(names[i] for i in range(n_vars) if x >> i & 1) for x in minimal]
    return "+".join(sorted(terms, key=lambda s: (len(s), s)))


def monotone_boolean_functions(n_vars):
    """Truth tables (as ints over the 2**n_vars inputs) of all monotone functions."""
    return _monotone_tables(n_vars)


def free_distributive(n, bounded=False):
    """Free distributive lattice on ``n <= 3`` generators.

    Built from the monotone Boolean functions in ``n`` variables ordered
    pointwise.  Without ``bounded`` the two constant functions are dropped.
    """
    if not 1 <= n <= 3:
        raise SizeBound(f"free_distributive supports 1 <= n <= 3, got {n}")
    tables = _monotone_tables(n)
    full = (1 << (1 << n)) - 1
    if not bounded:
        tables = [t for t in tables if t not in (0, full)]
    arr = np.array(tables, dtype=np.int64)
    leq = (arr[:, None] & ~arr[None, :]) == 0
    labels = [_dnf_label(t, n) for t in tables]
    return verify_lattice(Poset(leq, labels, check=False))
