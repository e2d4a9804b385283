"""Named fixture lattices and posets.

Lattices are given by their Hasse diagrams (cover pairs, lower element
first).  ``dd_like_*`` are transcribed from drawings of double-diamond-like
lattices; ``fd3`` is generated from monotone Boolean functions.
"""
from __future__ import annotations

from dataclasses import dataclass

from .lattice import downset_lattice, free_distributive, verify_lattice
from .poset import Poset


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str  # "lattice" or "poset"
    description: str
    labels: tuple
    covers: tuple

    def poset(self):
        return Poset.from_covers(len(self.labels), self.covers, self.labels)

    def lattice(self):
        if self.kind != "lattice":
            raise ValueError(f"fixture {self.name!r} is a poset, not a lattice")
        return verify_lattice(self.poset())


def _named(name, kind, description, labels, edges):
    labels = tuple(labels.split()) if isinstance(labels, str) else tuple(labels)
    idx = {s: i for i, s in enumerate(labels)}
    covers = tuple((idx[a], idx[b]) for a, b in (e.split("<") for e in edges.split()))
    return Fixture(name, kind, description, labels, covers)


def _from_poset(name, kind, description, poset):
    return Fixture(name, kind, description, poset.labels, tuple(poset.cover_pairs))


def _boolean(n):
    from .poset import Poset as _P

    names = [f"f{i}" for i in range(n)]
    lat = downset_lattice(_P.antichain(n).with_labels(names))
    return _from_poset(f"boolean{n}", "lattice", f"Boolean algebra 2^{n}", lat.order)


_FIXTURES = [
    _named("diamond", "lattice", "four-element Boolean lattice 2^2",
           "0 a b 1", "0<a 0<b a<1 b<1"),
    _named("double_diamond", "lattice", "two stacked diamonds sharing D; smallest non-realizable lattice",
           "A B C D E F G", "A<B A<C B<D C<D D<E D<F E<G F<G"),
    _named("chain_then_diamond", "lattice", "bottom, one element, then a diamond (initial-segment realizable)",
           "0 f f0 f1 1", "0<f f<f0 f<f1 f0<1 f1<1"),
    _named("diamond_then_top", "lattice", "a diamond with one element adjoined on top",
           "0 f0 f1 j 1", "0<f0 0<f1 f0<j f1<j j<1"),
    _named("stacked_diamond", "lattice", "diamond A..D with a second diamond C,D,E,F on its right",
           "A B C D E F", "A<B A<C B<D C<D C<E D<F E<F"),
    _named("example35", "lattice", "eight-element lattice whose join-irreducibles form f0,f1<g0; f1<g1",
           "A B C D E F G H", "A<B A<C B<D C<D C<E D<F E<F D<G F<H G<H"),
    _named("example35_poset", "poset", "join-irreducibles of example35: g0 covers f0 and f1, g1 covers f1",
           "f0 f1 g0 g1", "f0<g0 f1<g0 f1<g1"),
    _named("bowtie", "poset", "x0,x1 below both y0,y1; the obstruction to an upper-semilattice completion",
           "x0 x1 y0 y1", "x0<y0 x0<y1 x1<y0 x1<y1"),
    _named("dd_like_1", "lattice", "double diamond with a three-element spur on the right (10 elements)",
           "e0 e1 e2 e3 e4 e5 e6 e7 e8 e9",
           "e0<e1 e0<e2 e1<e3 e2<e3 e3<e4 e3<e5 e4<e6 e5<e6 e2<e7 e7<e5 e5<e8 e6<e9 e8<e9"),
    _named("dd_like_2", "lattice", "three stacked layers of a chain-diamond-chain shape (16 elements)",
           "a0 a1 a2 a3 a4 b0 b1 b2 b3 b4 b5 c1 c2 c3 c4 c5",
           "a0<a1 a1<a2 a1<a3 a2<a4 a3<a4 "
           "b0<b1 b1<b2 b1<b3 b2<b4 b3<b4 b4<b5 "
           "c1<c2 c1<c3 c2<c4 c3<c4 c4<c5 "
           "a0<b0 a1<b1 a2<b2 a3<b3 a4<b4 b1<c1 b2<c2 b3<c3 b4<c4 b5<c5"),
    _named("dd_like_3", "lattice", "double diamond with spurs on both sides and a new top (14 elements)",
           "d0 d1 d2 d3 d4 d5 d6 r1 r2 r3 l1 l2 l3 t",
           "d0<d1 d0<d2 d1<d3 d2<d3 d3<d4 d3<d5 d4<d6 d5<d6 "
           "d2<r1 r1<d5 d5<r2 d6<r3 r2<r3 "
           "d1<l1 l1<d4 d4<l2 d6<l3 l2<l3 l3<t r3<t"),
    _named("m3", "lattice", "the non-distributive diamond M3 (three atoms)",
           "0 a b c 1", "0<a 0<b 0<c a<1 b<1 c<1"),
    _named("chain4", "lattice", "four-element chain", "0 1 2 3", "0<1 1<2 2<3"),
]
_FIXTURES += [_boolean(n) for n in range(1, 5)]
_FIXTURES.append(_from_poset("fd3", "lattice", "free distributive lattice on three generators (no bounds)",
                             free_distributive(3).order))
_FIXTURES.append(_from_poset("fd3_bounded", "lattice", "free distributive lattice on three generators with 0 and 1",
                             free_distributive(3, bounded=True).order))

FIXTURES = {f.name: f for f in _FIXTURES}


def names():
    return sorted(FIXTURES)


def get(name):
    try:
        return FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(names())}") from None


def lattice(name):
    return get(name).lattice()


def poset(name):
    return get(name).poset()
