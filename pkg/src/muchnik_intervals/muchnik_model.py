"""Finite models of the Muchnik degrees.

A finite upper semilattice D plays the part of a set of Turing degrees, with
the join table standing in for f (+) g.  A mass problem is any subset of D and
its degree is its up-closure; ``A <=_w B`` iff ``up(B) <= up(A)``.  So the
degrees of a model are the up-sets of D ordered by reverse inclusion, meets
are unions and joins are intersections.  Everything here is a bit-vector
computation over D's elements.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from string import ascii_uppercase

import numpy as np

from . import _accel
from .enumeration import enumerate_posets
from .errors import InvalidConfiguration, NotALattice, NotComparable, NotInitialSegment, SizeBound
from .lattice import Lattice, are_isomorphic, downset_lattice, lattice_form
from .poset import DownSet, Poset, add_bottom, add_top, bits, downset_masks, is_usl_initial_segment, mask_of, maximal_in, minimal_in
from .realizability import _map

MODEL_BOUND = 6
F_BOUND = 6
BOOLEAN_BOUND = 4


class DegreeStructure:
    """A finite poset of "degrees" with its join table.

    ``join_table[a, b]`` is the least upper bound of ``a`` and ``b`` or -1.
    With ``require_usl`` (the default) every pair must have one.  ``bottom``
    optionally marks a least element as the computable degree.
    """

    def __init__(self, order, join_table=None, bottom=None, *, require_usl=True):
        if order.n > _accel.MASK_BITS:
            raise SizeBound(f"degree structures are limited to {_accel.MASK_BITS} elements")
        lub, _ = _accel.bound_tables(order.leq)
        if join_table is not None:
            join_table = np.asarray(join_table, dtype=np.int64)
            if join_table.shape != lub.shape or (join_table != lub).any():
                raise InvalidConfiguration("join_table does not match the least upper bounds of the order")
        self.order = order
        self.join_table = lub
        self.join_table.flags.writeable = False
        self.is_usl = bool((lub >= 0).all())
        if require_usl and not self.is_usl:
            a, b = (int(x) for x in np.argwhere(lub < 0)[0])
            raise NotALattice((a, b), "least upper bound")
        if bottom is not None and not order.leq[bottom].all():
            raise InvalidConfiguration(f"element {bottom} is not below every element")
        self.bottom = bottom

    @classmethod
    def from_covers(cls, n, covers, labels=None, bottom=None, *, require_usl=True):
        return cls(Poset.from_covers(n, covers, labels), bottom=bottom, require_usl=require_usl)

    @property
    def n(self):
        return self.order.n

    @property
    def full(self):
        return (1 << self.n) - 1

    @property
    def up_array(self):
        return np.array(self.order.up_masks, dtype=np.int64)

    def label(self, i):
        return self.order.label(i)

    def index(self, item):
        if isinstance(item, (int, np.integer)):
            return int(item)
        labels = [self.label(i) for i in range(self.n)]
        return labels.index(item)

    def problem(self, *elements):
        """Mass problem from element indices or labels."""
        return MassProblem(mask_of(self.index(e) for e in elements))

    def up(self, mask):
        out = 0
        for i in bits(mask):
            out |= self.order.up_masks[i]
        return out

    def describe(self, mask):
        return [self.label(i) for i in bits(mask)]

    def __repr__(self):
        return f"DegreeStructure(n={self.n}, usl={self.is_usl}, bottom={self.bottom})"


@dataclass(frozen=True)
class MassProblem:
    members: int

    def __or__(self, other):
        return MassProblem(self.members | other.members)


@dataclass(frozen=True, order=True)
class MuchnikDegree:
    upset: int


def degree(D, A):
    return MuchnikDegree(D.up(A.members))


def minimal_generators(D, deg):
    """Minimal elements of the up-set; the smallest mass problem of that degree."""
    return minimal_in(D.order, deg.upset)


def leq_w(D, A, B):
    """Every element of B bounds an element of A."""
    ua = D.up(A.members)
    return B.members & ~ua == 0


def equiv_w(D, A, B):
    return D.up(A.members) == D.up(B.members)


def meet_w(A, B):
    return MassProblem(A.members | B.members)


def join_w(D, A, B):
    if not D.is_usl:
        raise NotALattice((None, None), "join table (structure is not an upper semilattice)")
    out = 0
    for a in bits(A.members):
        for b in bits(B.members):
            out |= 1 << int(D.join_table[a, b])
    return MassProblem(out)


def prime(D, f):
    """``{h : h > f}``."""
    return MassProblem(D.order.up_masks[f] & ~(1 << f))


def all_degrees(D):
    """Every degree of the model, least (``up = D``) first."""
    masks = _accel.closed_between(D.up_array, 0, D.full)
    return [MuchnikDegree(int(m)) for m in _sorted_desc(masks)]


def _sorted_desc(masks):
    return sorted((int(m) for m in masks), key=lambda m: (-bin(m).count("1"), m))


def is_principal(D, A):
    u = D.up(A.members)
    return any(u == D.order.up_masks[f] for f in range(D.n))


def phi_definable(D, A, degrees=None):
    """Evaluate ``exists y (x < y and forall z (x < z -> y <= z))`` at ``x = deg(A)``."""
    u = D.up(A.members)
    degrees = all_degrees(D) if degrees is None else degrees
    above = [d.upset for d in degrees if d.upset != u and d.upset & ~u == 0]
    return any(all(z & ~y == 0 for z in above) for y in above)


def degree_lattice(D):
    return _degree_lattice(D, [d.upset for d in all_degrees(D)])


def _degree_lattice(D, masks):
    arr = np.array(masks, dtype=np.int64)
    leq = (arr[None, :] & ~arr[:, None]) == 0  # leq[i, j]: up_j <= up_i
    index = {m: k for k, m in enumerate(masks)}
    join = np.array([[index[a & b] for b in masks] for a in masks], dtype=np.int64).reshape(len(masks), len(masks))
    meet = np.array([[index[a | b] for b in masks] for a in masks], dtype=np.int64).reshape(len(masks), len(masks))
    labels = ["{" + ",".join(D.label(i) for i in minimal_in(D.order, m)) + "}" for m in masks]
    distributive = _accel.distributive_violation(join, meet)[0] < 0
    return Lattice(Poset(leq, labels, check=False), join, meet, distributive)


def interval_degrees(D, A, B):
    """Degrees ``C`` with ``A <=_w C <=_w B``, least first."""
    ua, ub = D.up(A.members), D.up(B.members)
    if ub & ~ua:
        raise NotComparable("deg(A) is not below deg(B)")
    return [MuchnikDegree(m) for m in _sorted_desc(_accel.closed_between(D.up_array, ub, ua))]


def interval_to_lattice(D, A, B):
    """The degrees between ``deg(A)`` and ``deg(B)`` as a lattice."""
    return _degree_lattice(D, [d.upset for d in interval_degrees(D, A, B)])


# -- Dyment ---------------------------------------------------------------------


def dyment_scan(D):
    """Check, for every pair of degrees ``A < B``, that the open interval is
    empty iff some ``S = {f}`` has ``A = B x S``, ``B not<= S`` and ``B <= S'``.

    Also checks that the formula ``phi`` holds exactly at principal degrees and
    that ``deg({f}')`` is the degree ``phi`` produces for ``{f}``.
    """
    if D.n > MODEL_BOUND:
        raise SizeBound(f"dyment_scan supports at most {MODEL_BOUND} elements")
    degrees = all_degrees(D)
    masks = np.array([d.upset for d in degrees], dtype=np.int64)
    cover = _accel.strict_cover_pairs(masks)
    up = D.order.up_masks
    pairs = empty = 0
    violations = []
    for i, ua in enumerate(masks):
        ua = int(ua)
        for j, ub in enumerate(masks):
            ub = int(ub)
            if ub == ua or ub & ~ua:
                continue
            pairs += 1
            is_empty = bool(cover[i, j])
            empty += is_empty
            witness = None
            for f in range(D.n):
                strict = up[f] & ~(1 << f)
                # A = B x {f},  f not in up(B),  {f}' inside up(B)
                if ub | up[f] == ua and not ub >> f & 1 and strict & ~ub == 0:
                    witness = f
                    break
            if is_empty != (witness is not None):
                violations.append({
                    "lower": _generators(D, ua),
                    "upper": _generators(D, ub),
                    "interval_empty": is_empty,
                    "witness": None if witness is None else D.label(witness),
                })
    phi_mismatches = []
    for d in degrees:
        A = MassProblem(d.upset)
        if phi_definable(D, A, degrees) != is_principal(D, A):
            phi_mismatches.append(_generators(D, d.upset))
    prime_mismatches = [D.label(f) for f in range(D.n) if not _prime_is_phi_witness(D, f, degrees)]
    return {
        "size": D.n,
        "usl": D.is_usl,
        "degrees": len(degrees),
        "pairs": pairs,
        "empty_intervals": empty,
        "violations": violations,
        "phi_mismatches": phi_mismatches,
        "prime_mismatches": prime_mismatches,
    }


def _generators(D, upset):
    return D.describe(mask_of(minimal_in(D.order, upset)))


def _prime_is_phi_witness(D, f, degrees):
    u = D.order.up_masks[f]
    above = [d.upset for d in degrees if d.upset != u and d.upset & ~u == 0]
    target = D.up(prime(D, f).members)
    return target in above and all(z & ~target == 0 for z in above)


def usl_models(max_size):
    """Every upper semilattice with ``1 <= |D| <= max_size``, per size in enumeration order."""
    if max_size > MODEL_BOUND:
        raise SizeBound(f"model sweeps support at most {MODEL_BOUND} elements")
    out = []
    for n in range(1, max_size + 1):
        for p in enumerate_posets(n):
            lub, _ = _accel.bound_tables(p.leq)
            if (lub >= 0).all():
                out.append(DegreeStructure(p))
    return out


def dyment_sweep(max_size, workers=1):
    """:func:`dyment_scan` over every upper semilattice up to ``max_size`` elements."""
    models = usl_models(max_size)
    reports = _map(dyment_scan, models, workers)
    by_size = {}
    violations = []
    for D, r in zip(models, reports):
        row = by_size.setdefault(D.n, {"size": D.n, "structures": 0, "degree_pairs": 0, "empty_intervals": 0,
                                       "violations": 0, "phi_mismatches": 0, "prime_mismatches": 0})
        row["structures"] += 1
        row["degree_pairs"] += r["pairs"]
        row["empty_intervals"] += r["empty_intervals"]
        row["violations"] += len(r["violations"])
        row["phi_mismatches"] += len(r["phi_mismatches"])
        row["prime_mismatches"] += len(r["prime_mismatches"])
        if r["violations"] or r["phi_mismatches"] or r["prime_mismatches"]:
            violations.append({"covers": [list(c) for c in D.order.cover_pairs], **r})
    return {
        "max_size": max_size,
        "structures": len(models),
        "by_size": [by_size[k] for k in sorted(by_size)],
        "violations": violations,
    }


# -- Boolean intervals ------------------------------------------------------------


def boolean_interval(n):
    """Free join-semilattice on ``f0..f{n-1}`` with ``A = {f0..}`` and ``B`` the meet of the primes."""
    if not 1 <= n <= BOOLEAN_BOUND:
        raise SizeBound(f"boolean_interval supports 1 <= n <= {BOOLEAN_BOUND}, got {n}")
    subsets = sorted(range(1, 1 << n), key=lambda s: (bin(s).count("1"), s))
    arr = np.array(subsets, dtype=np.int64)
    leq = (arr[:, None] & ~arr[None, :]) == 0
    labels = ["+".join(f"f{i}" for i in bits(s)) for s in subsets]
    D = DegreeStructure(Poset(leq, labels, check=False))
    singles = [subsets.index(1 << i) for i in range(n)]
    A = MassProblem(mask_of(singles))
    B = MassProblem(0)
    for f in singles:
        B = meet_w(B, prime(D, f))
    return D, A, B


# -- the F-construction -------------------------------------------------------------


@dataclass(frozen=True)
class FContext:
    """Target poset P sitting as a down-set of ``ambient`` (P, a top, maybe a bottom).

    Elements of P keep their indices in the ambient.
    """

    base: Poset
    ambient: DegreeStructure
    top: int
    bottom: int | None
    hat_cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def with_bottom(self):
        return self.bottom is not None

    def hat(self, A):
        if A.members not in self.hat_cache:
            self.hat_cache[A.members] = maximal_in(self.base, A.members)
        return self.hat_cache[A.members]


def _fresh(label, taken):
    while label in taken:
        label += "'"
    return label


def ambient(P, with_bottom=False):
    labels = tuple(P.label(i) for i in range(P.n))
    verdict = is_usl_initial_segment(P)
    if not verdict.ok:
        raise NotInitialSegment(verdict.witness, labels)
    base = P.with_labels(labels)
    order = add_top(base, _fresh("T", labels))
    bottom = None
    if with_bottom:
        order = add_bottom(order, _fresh("0", labels))
        bottom = P.n + 1
    return FContext(base, DegreeStructure(order, bottom=bottom), P.n, bottom)


def _incomparable(order, h, g):
    return not order.leq[h, g] and not order.leq[g, h]


def x_problem(ctx, f=None):
    """The mass problem X_f (or X, the union, with ``f=None``) read literally in the ambient.

    ``X_f = {h > f : h incomparable to every cover of f in P}``; with a bottom,
    X also contains ``{h : h incomparable to every minimal element of P}``.
    """
    order = ctx.ambient.order
    base = ctx.base
    targets = range(base.n) if f is None else (f,)
    out = 0
    for g in targets:
        covers = base.upper_covers[g]
        for h in range(order.n):
            if order.lt[g, h] and all(_incomparable(order, h, c) for c in covers):
                out |= 1 << h
    if f is None and ctx.with_bottom:
        minimal = base.minimal
        for h in range(order.n):
            if all(_incomparable(order, h, m) for m in minimal):
                out |= 1 << h
    return MassProblem(out)


def f_construct(ctx, A):
    """F(A): primes of the maximal elements of A, together with the minimal
    elements of P incomparable to all of them.  X is omitted (it does not
    change the degree, see :func:`verify_f_iso`)."""
    if not isinstance(A, DownSet):
        A = DownSet.of(ctx.base, A)
    hat = ctx.hat(A)
    out = 0
    for f in hat:
        out |= prime(ctx.ambient, f).members
    order = ctx.base
    free = mask_of(f for f in range(order.n) if all(not order.comparable(f, g) for g in hat))
    out |= mask_of(minimal_in(order, free))
    return MassProblem(out)


def _names(count):
    if count <= len(ascii_uppercase):
        return list(ascii_uppercase[:count])
    return [f"F{k}" for k in range(count)]


def verify_f_iso(P, with_bottom=False):
    """Check that F maps H(P) isomorphically onto the degree interval [F(empty), F(P)]."""
    if P.n > F_BOUND:
        raise SizeBound(f"verify_f_iso supports |P| <= {F_BOUND}")
    ctx = ambient(P, with_bottom)
    D = ctx.ambient
    base = ctx.base
    hs = [DownSet(m, base.n) for m in downset_masks(base)]
    hs.sort(key=lambda a: (len(a), -len(ctx.hat(a)), a.members))
    images = [f_construct(ctx, a) for a in hs]
    ups = [D.up(x.members) for x in images]
    X = x_problem(ctx)
    checks = {}
    failure = None

    def record(name, ok, witness=None):
        nonlocal failure
        ok = bool(ok)
        checks[name] = checks.get(name, True) and ok
        if not ok and failure is None:
            failure = {"check": name, "downsets": [_set_labels(base, w) for w in witness]}

    index = {a.members: k for k, a in enumerate(hs)}
    for i, a in enumerate(hs):
        record("x_reduction", D.up(images[i].members | X.members) == ups[i], [a.members])
        for j, b in enumerate(hs):
            if j > i:
                record("injective", ups[i] != ups[j], [a.members, b.members])
            record("order_embedding", (a.members & ~b.members == 0) == leq_w(D, images[i], images[j]),
                   [a.members, b.members])
            m = index[a.members & b.members]
            record("meets", ups[m] == D.up(meet_w(images[i], images[j]).members), [a.members, b.members])
            u = index[a.members | b.members]
            record("joins", ups[u] == D.up(join_w(D, images[i], images[j]).members), [a.members, b.members])
    between = {d.upset for d in interval_degrees(D, images[0], images[-1])}
    record("surjective", between == set(ups), [])
    for f in range(base.n):
        covers = base.upper_covers[f]
        if not covers:
            ok = equiv_w(D, x_problem(ctx, f), prime(D, f))
        else:
            ok = equiv_w(D, X | prime(D, f), X | MassProblem(mask_of(covers)))
        record("x_identities", ok, [1 << f])
    if ctx.with_bottom and base.n:
        record("bottom_is_zero_jump", ups[0] == D.up(prime(D, ctx.bottom).members), [0])
    interval = interval_to_lattice(D, images[0], images[-1])
    record("interval_isomorphic", are_isomorphic(interval, downset_lattice(base, labelled=False)), [])

    names = _names(len(hs))
    degrees = [{
        "name": names[k],
        "downset": _set_labels(base, a.members),
        "maximal": [base.label(f) for f in ctx.hat(a)],
        "mass_problem": D.describe(images[k].members),
        "degree": _generators(D, ups[k]),
    } for k, a in enumerate(hs)]
    return {
        "poset": {"size": base.n, "labels": list(base.labels), "covers": [list(c) for c in base.cover_pairs]},
        "with_bottom": ctx.with_bottom,
        "ambient_size": D.n,
        "interval_size": len(between),
        "passed": all(checks.values()),
        "checks": checks,
        "counterexample": failure,
        "degrees": degrees,
    }


def _set_labels(poset, mask):
    return [poset.label(i) for i in bits(mask)]


def f_iso_sweep(max_size=5, with_bottom=False, workers=1):
    """:func:`verify_f_iso` on every nonempty poset with ``|P| <= max_size`` that passes the initial-segment test."""
    if max_size > F_BOUND:
        raise SizeBound(f"verify_f_iso supports |P| <= {F_BOUND}")
    posets = [p for n in range(1, max_size + 1) for p in enumerate_posets(n) if is_usl_initial_segment(p).ok]
    reports = _map(_verify_with_bottom if with_bottom else verify_f_iso, posets, workers)
    failures = [r for r in reports if not r["passed"]]
    return {"max_size": max_size, "with_bottom": with_bottom, "posets": len(posets),
            "passed": len(posets) - len(failures), "failures": failures}


def _verify_with_bottom(p):
    return verify_f_iso(p, with_bottom=True)


# -- searching models for a lattice -----------------------------------------------


def search_interval_iso(D, L):
    """First pair of degrees ``(lower, upper)`` whose interval is isomorphic to L, or None.

    Pairs are scanned with the lower degree in :func:`all_degrees` order.
    """
    if D.n > MODEL_BOUND:
        raise SizeBound(f"search_interval_iso supports at most {MODEL_BOUND} elements")
    masks = [d.upset for d in all_degrees(D)]
    arr = np.array(masks, dtype=np.int64)
    sub = ((arr[None, :] & ~arr[:, None]) == 0).astype(np.int64)  # sub[i, j]: up_j <= up_i
    sizes = sub @ sub
    target = lattice_form(L)
    for i in range(len(masks)):
        for j in range(len(masks)):
            if sub[i, j] and sizes[i, j] == L.n:
                lat = _degree_lattice(D, _sorted_desc(_accel.closed_between(D.up_array, masks[j], masks[i])))
                if lattice_form(lat) == target:
                    return MuchnikDegree(masks[i]), MuchnikDegree(masks[j])
    return None


def _search_one(args):
    D, L = args
    hit = search_interval_iso(D, L)
    return None if hit is None else (hit[0].upset, hit[1].upset)


def exclusion_sweep(L, max_size=MODEL_BOUND, workers=1):
    """Search every upper-semilattice model up to ``max_size`` for an interval isomorphic to L."""
    models = usl_models(max_size)
    results = _map(_search_one, [(D, L) for D in models], workers)
    hits = [{"covers": [list(c) for c in D.order.cover_pairs], "lower": _generators(D, r[0]), "upper": _generators(D, r[1])}
            for D, r in zip(models, results) if r is not None]
    return {"max_size": max_size, "structures": len(models), "target_size": L.n, "hits": hits}
