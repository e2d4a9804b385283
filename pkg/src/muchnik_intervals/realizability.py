"""Which finite distributive lattices are intervals of the Muchnik lattice.

A finite distributive lattice L is realizable iff J(L) has no bowtie (two
incomparable elements with two minimal upper bounds).  The lattice-side test
(no double-diamond-like interval) is implemented separately and swept against
the bowtie test.  A bowtie always yields a double-diamond-like interval, but
the converse fails: for J(L) = {x0, x1 < m < y0, y1} the whole of L is
double-diamond-like although J(L) has no bowtie.
"""
from __future__ import annotations

from dataclasses import dataclass
from multiprocessing import get_context

import numpy as np

from .enumeration import enumerate_posets, posets_with_few_downsets
from .errors import InvalidConfiguration, NotDistributive, SizeBound
from .lattice import (
    distributivity_violation,
    downset_lattice,
    join_irreducibles,
    lattice_form,
)
from .poset import BowtieWitness, DownSet, Poset, add_top, is_usl_initial_segment

SWEEP_BOUND = 7
COUNTEREXAMPLE_BOUND = 12


@dataclass(frozen=True)
class UslCompletion:
    """J(L) with a top adjoined; an upper semilattice containing J(L) as a down-set."""

    completion: Poset
    j_elements: tuple


@dataclass(frozen=True)
class DDWitness:
    """A bowtie in J(L) and the double-diamond-like interval it spans.

    ``bowtie`` uses J(L) indices; ``x_set``/``y_set`` are down-sets of J(L)
    and ``interval_bounds`` the corresponding elements of L.
    """

    bowtie: BowtieWitness
    x_set: DownSet
    y_set: DownSet
    interval_bounds: tuple


@dataclass(frozen=True)
class RealizabilityVerdict:
    realizable: bool
    witness: object

    def __bool__(self):
        return self.realizable


def _require_distributive(lattice):
    if not lattice.distributive:
        raise NotDistributive(distributivity_violation(lattice))


def _dd_like_between(lattice, a, b):
    if a == b or not lattice.leq[a, b]:
        return False
    elems = np.flatnonzero(lattice.leq[a, :] & lattice.leq[:, b])
    lower = lattice.order.cover[np.ix_(elems, elems)].sum(axis=0)
    ji = elems[lower == 1]
    sub = lattice.leq[np.ix_(ji, ji)]
    if sub.all(axis=0).any() or sub.all(axis=1).any():
        return False  # a greatest or a least join-irreducible
    strict = sub & ~np.eye(len(ji), dtype=bool)
    maximal = ji[~strict.any(axis=1)]
    if (lattice.meet[np.ix_(maximal, ji)] == a).any():
        return False
    return True


def is_dd_like(lattice):
    """Double-diamond-like: at least two elements, J has no greatest and no least
    element, and 0 is not the meet of a maximal join-irreducible with any
    join-irreducible."""
    _require_distributive(lattice)
    return _dd_like_between(lattice, lattice.bottom, lattice.top)


def has_dd_like_subinterval(lattice):
    """Lexicographically first ``(a, b)`` whose interval is double-diamond-like, or None."""
    _require_distributive(lattice)
    for a in range(lattice.n):
        for b in np.flatnonzero(lattice.leq[a]):
            if _dd_like_between(lattice, a, int(b)):
                return a, int(b)
    return None


def dd_witness(lattice, rep, bowtie):
    """Interval of L spanned by a bowtie of J(L).

    ``y_set`` is everything below ``y0`` or ``y1``; ``x_set`` removes from it
    the elements above ``x0`` or ``x1``, so that the interval is H of the
    convex hull of the bowtie.
    """
    j = rep.j_poset
    x0, x1, y0, y1 = bowtie.as_tuple()
    y_mask = int(j.down_masks[y0] | j.down_masks[y1])
    hull = y_mask & int(j.up_masks[x0] | j.up_masks[x1])
    x_mask = y_mask & ~hull
    a = lattice.join_all(rep.j_elements[k] for k in range(j.n) if x_mask >> k & 1)
    b = lattice.join_all(rep.j_elements[k] for k in range(j.n) if y_mask >> k & 1)
    return DDWitness(bowtie, DownSet(x_mask, j.n), DownSet(y_mask, j.n), (a, b))


def literal_x_set(rep, bowtie):
    """``{x : x < x0 or x < x1}`` (elements strictly below the bowtie's bottom pair)."""
    j = rep.j_poset
    m = int(j.down_masks[bowtie.x0] | j.down_masks[bowtie.x1]) & ~((1 << bowtie.x0) | (1 << bowtie.x1))
    return DownSet(m, j.n)


def is_realizable(lattice):
    _require_distributive(lattice)
    rep = join_irreducibles(lattice)
    verdict = is_usl_initial_segment(rep.j_poset)
    if verdict.ok:
        return RealizabilityVerdict(True, UslCompletion(add_top(rep.j_poset), rep.j_elements))
    return RealizabilityVerdict(False, dd_witness(lattice, rep, verdict.witness))


def zero_is_meet_irreducible(lattice):
    above = [x for x in range(lattice.n) if x != lattice.bottom]
    if not above:
        return True
    sub = lattice.meet[np.ix_(above, above)]
    return not (sub == lattice.bottom).any()


def is_initial_segment_realizable(lattice):
    """Realizable as an initial segment ``[0', A]``: realizable with a meet-irreducible 0."""
    return is_realizable(lattice).realizable and zero_is_meet_irreducible(lattice)


# -- sweeps -------------------------------------------------------------------


def _sweep_one(poset):
    lat = downset_lattice(poset, labelled=False)
    rep = join_irreducibles(lat)
    cond2 = is_usl_initial_segment(rep.j_poset).ok
    cond3 = has_dd_like_subinterval(lat) is None
    return cond2, cond3


def _map(fn, items, workers):
    if workers <= 1:
        return [fn(x) for x in items]
    with get_context("fork").Pool(workers) as pool:
        return pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers)))


def equivalence_sweep(max_j_size, workers=1):
    """Compare the bowtie test on J(L) with the interval scan on L = H(P).

    Covers every poset P with ``1 <= |P| <= max_j_size``; the report is
    independent of ``workers``.
    """
    if not 1 <= max_j_size <= SWEEP_BOUND:
        raise SizeBound(f"equivalence sweep supports 1 <= max_j_size <= {SWEEP_BOUND}")
    by_size = []
    violations = []
    for n in range(1, max_j_size + 1):
        posets = enumerate_posets(n)
        results = _map(_sweep_one, posets, workers)
        realizable = sum(1 for c2, _ in results if c2)
        for p, (c2, c3) in zip(posets, results):
            if c2 != c3:
                violations.append({
                    "size": n,
                    "covers": p.cover_pairs,
                    "no_bowtie": c2,
                    "no_dd_like_subinterval": c3,
                })
        by_size.append({
            "j_size": n,
            "posets": len(posets),
            "realizable": realizable,
            "non_realizable": len(posets) - realizable,
            "violations": sum(1 for c2, c3 in results if c2 != c3),
            "no_bowtie_but_dd_like": sum(1 for c2, c3 in results if c2 and not c3),
            "bowtie_but_no_dd_like": sum(1 for c2, c3 in results if c3 and not c2),
        })
    return {
        "max_j_size": max_j_size,
        "total_posets": sum(r["posets"] for r in by_size),
        "by_size": by_size,
        "violations": violations,
    }


def minimal_counterexamples(max_lattice_size):
    """All non-realizable distributive lattices with at most ``max_lattice_size`` elements.

    One lattice per isomorphism class, ordered by size then canonical form.
    """
    if max_lattice_size > COUNTEREXAMPLE_BOUND:
        raise SizeBound(f"counterexample search supports at most {COUNTEREXAMPLE_BOUND} elements")
    found = {}
    for p in posets_with_few_downsets(max_lattice_size):
        if is_usl_initial_segment(p).ok:
            continue
        lat = downset_lattice(p)
        found.setdefault((lat.n, lattice_form(lat)), lat)
    return [found[k] for k in sorted(found)]


# -- splitting a join-reducible top of a bowtie -------------------------------


def _interval_ji(lattice, a, b):
    elems = np.flatnonzero(lattice.leq[a, :] & lattice.leq[:, b])
    lower = lattice.order.cover[np.ix_(elems, elems)].sum(axis=0)
    return [int(x) for x in elems[lower == 1]]


def _extremes(lattice, ji):
    minimal = [x for x in ji if not any(y != x and lattice.leq[y, x] for y in ji)]
    maximal = [x for x in ji if not any(y != x and lattice.leq[x, y] for y in ji)]
    return minimal, maximal


def split_reducible_top(lattice, a, b, y0, y1, x0, x1):
    """Split a join-reducible ``y0`` as ``z0 v z1`` keeping the bowtie visible.

    Setting: ``x0, x1`` are distinct minimal and ``y0, y1`` distinct maximal
    join-irreducibles of ``[a, b]``, both y's above both x's.  If ``y0`` is
    join-reducible in L, returns the first ``(z0, z1)`` with ``z0 || z1``,
    ``y0 = z0 v z1``, ``z0 ^ x0 != z0 ^ x1`` and ``z0 not <= y1``.  Returns None
    when ``y0`` is join-irreducible in L or no such pair exists.
    """
    _require_distributive(lattice)
    leq = lattice.leq
    if not leq[a, b]:
        raise InvalidConfiguration(f"{a} is not below {b}")
    ji = _interval_ji(lattice, a, b)
    minimal, maximal = _extremes(lattice, ji)
    if x0 == x1 or x0 not in minimal or x1 not in minimal:
        raise InvalidConfiguration("x0, x1 must be distinct minimal join-irreducibles of [a, b]")
    if y0 == y1 or y0 not in maximal or y1 not in maximal:
        raise InvalidConfiguration("y0, y1 must be distinct maximal join-irreducibles of [a, b]")
    if not all(leq[x, y] for x in (x0, x1) for y in (y0, y1)):
        raise InvalidConfiguration("both y's must lie above both x's")
    if lattice.join_irreducible_mask[y0]:
        return None
    for z0 in range(lattice.n):
        if leq[z0, y1] or lattice.meet[z0, x0] == lattice.meet[z0, x1]:
            continue
        for z1 in range(lattice.n):
            if leq[z0, z1] or leq[z1, z0]:
                continue
            if lattice.join[z0, z1] == y0:
                return z0, z1
    return None


def split_configurations(lattice):
    """All ``(a, b, y0, y1, x0, x1)`` meeting the hypotheses with ``y0`` join-reducible in L."""
    for a in range(lattice.n):
        for b in range(lattice.n):
            if a == b or not lattice.leq[a, b]:
                continue
            ji = _interval_ji(lattice, a, b)
            minimal, maximal = _extremes(lattice, ji)
            if len(minimal) < 2 or len(maximal) < 2:
                continue
            for y0 in maximal:
                if lattice.join_irreducible_mask[y0]:
                    continue
                for y1 in maximal:
                    if y1 == y0:
                        continue
                    for x0 in minimal:
                        for x1 in minimal:
                            if x1 == x0:
                                continue
                            if all(lattice.leq[x, y] for x in (x0, x1) for y in (y0, y1)):
                                yield a, b, y0, y1, x0, x1


def split_sweep(max_poset_size=5):
    """Run :func:`split_reducible_top` on every qualifying configuration of H(P), |P| <= max."""
    configurations = 0
    failures = []
    lattices = 0
    for n in range(1, max_poset_size + 1):
        for p in enumerate_posets(n):
            lat = downset_lattice(p, labelled=False)
            hit = False
            for cfg in split_configurations(lat):
                hit = True
                configurations += 1
                if split_reducible_top(lat, *cfg) is None:
                    failures.append({"covers": p.cover_pairs, "configuration": cfg})
            lattices += hit
    return {"lattices_with_configurations": lattices, "configurations": configurations, "failures": failures}


def realizability_profile(lattice):
    """Everything the ``analyze`` report needs, in one pass."""
    _require_distributive(lattice)
    rep = join_irreducibles(lattice)
    verdict = is_realizable(lattice)
    return {
        "rep": rep,
        "dd_like": is_dd_like(lattice),
        "dd_subinterval": has_dd_like_subinterval(lattice),
        "verdict": verdict,
        "initial_segment": verdict.realizable and zero_is_meet_irreducible(lattice),
    }
