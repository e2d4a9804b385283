import pickle

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from muchnik_intervals.errors import CycleDetected, IndexOutOfRange
from muchnik_intervals.poset import (
    DownSet,
    Poset,
    add_bottom,
    add_top,
    bits,
    down_closure,
    downsets,
    is_upper_semilattice,
    is_usl_initial_segment,
    mask_of,
    maximal_in,
    minimal_in,
    minimal_upper_bounds,
)

from .strategies import posets


def bowtie():
    return Poset.from_covers(4, [(0, 2), (0, 3), (1, 2), (1, 3)], ["x0", "x1", "y0", "y1"])


def test_from_covers_closes_transitively():
    p = Poset.from_covers(3, [(0, 1), (1, 2)])
    assert p.leq[0, 2]
    assert p.cover_pairs == [(0, 1), (1, 2)]


def test_from_covers_rejects_cycles():
    with pytest.raises(CycleDetected) as e:
        Poset.from_covers(3, [(0, 1), (1, 2), (2, 0)])
    assert set(e.value.pair) <= {0, 1, 2}
    with pytest.raises(CycleDetected):
        Poset.from_covers(2, [(1, 1)])


def test_from_covers_rejects_bad_index():
    with pytest.raises(IndexOutOfRange):
        Poset.from_covers(2, [(0, 2)])


def test_chain_and_antichain():
    c = Poset.chain(4)
    assert list(c.height) == [0, 1, 2, 3]
    assert c.minimal == (0,) and c.maximal == (3,)
    a = Poset.antichain(3)
    assert a.cover_pairs == []
    assert len(downsets(a)) == 8


def test_downset_count_of_chain():
    assert len(downsets(Poset.chain(5))) == 6


def test_bowtie_is_not_usl_initial_segment():
    v = is_usl_initial_segment(bowtie())
    assert not v
    assert v.witness.as_tuple() == (0, 1, 2, 3)


def test_minimal_upper_bounds():
    assert minimal_upper_bounds(bowtie(), 0, 1) == (2, 3)
    assert minimal_upper_bounds(bowtie(), 2, 3) == ()


def test_x_shape_is_usl_initial_segment():
    # two minimal points with a lub below two maximal points
    p = Poset.from_covers(5, [(0, 4), (1, 4), (4, 2), (4, 3)])
    assert is_usl_initial_segment(p)
    assert is_upper_semilattice(add_top(p))


def test_add_top_and_bottom_indices():
    p = Poset.antichain(2).with_labels(["a", "b"])
    t = add_top(p)
    assert t.n == 3 and t.label(2) == "T" and t.leq[:, 2].all()
    b = add_bottom(t)
    assert b.label(3) == "0" and b.leq[3].all()


def test_downset_validation():
    c = Poset.chain(3)
    assert DownSet.of(c, [0, 1]).members == 0b011
    with pytest.raises(ValueError):
        DownSet.of(c, [1])


def test_relabel_and_dual():
    p = Poset.from_covers(3, [(0, 1), (0, 2)])
    d = p.dual()
    assert d.leq[1, 0] and d.leq[2, 0]
    r = p.relabel([1, 0, 2])
    assert r.leq[1, 0] and r.leq[1, 2]


def test_pickle_roundtrip():
    p = bowtie()
    q = pickle.loads(pickle.dumps(p))
    assert p == q and hash(p) == hash(q)


@given(posets())
def test_covers_generate_order(p):
    q = Poset.from_covers(p.n, p.cover_pairs)
    assert np.array_equal(p.leq, q.leq)


@given(posets())
def test_downsets_are_down_closed_and_complete(p):
    ds = downsets(p)
    masks = {d.members for d in ds}
    for m in range(1 << p.n):
        assert (m in masks) == (down_closure(p, m) == m)


@given(posets(), st.data())
def test_extremes_of_subsets(p, data):
    mask = data.draw(st.integers(0, (1 << p.n) - 1))
    mx, mn = maximal_in(p, mask), minimal_in(p, mask)
    for i in bits(mask):
        assert any(p.leq[i, j] for j in mx)
        assert any(p.leq[j, i] for j in mn)
    assert mask_of(mx) & ~mask == 0


@given(posets())
def test_usl_test_matches_top_completion(p):
    # no bowtie  <=>  adjoining a top gives an upper semilattice
    assert bool(is_usl_initial_segment(p)) == is_upper_semilattice(add_top(p))
