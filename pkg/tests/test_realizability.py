import pytest
from hypothesis import given, settings

from muchnik_intervals import catalog
from muchnik_intervals.errors import InvalidConfiguration, NotDistributive, SizeBound
from muchnik_intervals.lattice import are_isomorphic, downset_lattice, interval, join_irreducibles
from muchnik_intervals.poset import Poset, is_usl_initial_segment
from muchnik_intervals.realizability import (
    DDWitness,
    UslCompletion,
    _dd_like_between,
    equivalence_sweep,
    has_dd_like_subinterval,
    is_dd_like,
    is_initial_segment_realizable,
    is_realizable,
    literal_x_set,
    minimal_counterexamples,
    split_configurations,
    split_reducible_top,
    split_sweep,
    zero_is_meet_irreducible,
)

from .strategies import posets

NON_REALIZABLE = ["double_diamond", "dd_like_1", "dd_like_2", "dd_like_3"]
REALIZABLE = ["diamond", "chain4", "chain_then_diamond", "diamond_then_top", "stacked_diamond",
              "example35", "boolean1", "boolean2", "boolean3", "boolean4", "fd3", "fd3_bounded"]


@pytest.mark.parametrize("name", NON_REALIZABLE)
def test_dd_like_fixtures(name):
    lat = catalog.lattice(name)
    assert is_dd_like(lat)
    v = is_realizable(lat)
    assert not v
    assert isinstance(v.witness, DDWitness)
    assert _dd_like_between(lat, *v.witness.interval_bounds)


@pytest.mark.parametrize("name", REALIZABLE)
def test_realizable_fixtures(name):
    lat = catalog.lattice(name)
    v = is_realizable(lat)
    assert v
    assert isinstance(v.witness, UslCompletion)
    assert has_dd_like_subinterval(lat) is None


def test_diamond_is_not_dd_like():
    assert not is_dd_like(catalog.lattice("diamond"))


def test_double_diamond_subinterval_is_whole():
    dd = catalog.lattice("double_diamond")
    a, b = has_dd_like_subinterval(dd)
    assert (dd.label(a), dd.label(b)) == ("A", "G")


def test_non_distributive_rejected():
    with pytest.raises(NotDistributive):
        is_realizable(catalog.lattice("m3"))
    with pytest.raises(NotDistributive):
        is_dd_like(catalog.lattice("m3"))


def test_initial_segment_realizability():
    # 0 meet-irreducible: a single atom
    assert is_initial_segment_realizable(catalog.lattice("chain_then_diamond"))
    assert not is_initial_segment_realizable(catalog.lattice("diamond"))
    assert not zero_is_meet_irreducible(catalog.lattice("diamond_then_top"))
    assert not is_initial_segment_realizable(catalog.lattice("double_diamond"))


def test_hull_witness_vs_literal_lower_set():
    # bowtie with an extra z below y0 only
    p = Poset.from_covers(5, [(0, 2), (0, 3), (1, 2), (1, 3), (4, 2)], ["x0", "x1", "y0", "y1", "z"])
    lat = downset_lattice(p)
    rep = join_irreducibles(lat)
    w = is_realizable(lat).witness
    assert _dd_like_between(lat, *w.interval_bounds)
    lit = literal_x_set(rep, w.bowtie)
    a = lat.join_all(rep.j_elements[k] for k in lit)
    assert not _dd_like_between(lat, a, w.interval_bounds[1])


def test_x_shape_is_realizable_yet_dd_like():
    # J = {x0, x1 < m < y0, y1}: no bowtie, but H(J) satisfies the dd-like definition
    p = Poset.from_covers(5, [(0, 4), (1, 4), (4, 2), (4, 3)], ["x0", "x1", "y0", "y1", "m"])
    lat = downset_lattice(p)
    assert is_usl_initial_segment(p)
    assert is_realizable(lat)
    assert is_dd_like(lat)
    assert lat.n == 8


def test_sweep_small_sizes_agree():
    r = equivalence_sweep(4)
    assert r["total_posets"] == 24
    assert r["violations"] == []
    assert [row["non_realizable"] for row in r["by_size"]] == [0, 0, 0, 1]


def test_sweep_disagreements_are_one_sided():
    r = equivalence_sweep(6)
    assert sum(row["bowtie_but_no_dd_like"] for row in r["by_size"]) == 0
    assert [row["no_bowtie_but_dd_like"] for row in r["by_size"]] == [0, 0, 0, 0, 1, 11]
    assert [row["posets"] for row in r["by_size"]] == [1, 2, 5, 16, 63, 318]


def test_sweep_bound():
    with pytest.raises(SizeBound):
        equivalence_sweep(8)
    with pytest.raises(SizeBound):
        minimal_counterexamples(13)


def test_minimal_counterexamples_up_to_eight():
    found = minimal_counterexamples(8)
    assert [lat.n for lat in found] == [7, 8, 8]
    assert are_isomorphic(found[0], catalog.lattice("double_diamond"))


def test_split_sweep_pinned():
    r = split_sweep(5)
    assert r["configurations"] == 6 and r["failures"] == []
    assert split_sweep(4)["configurations"] == 0


def test_split_pinned_configuration():
    p = Poset.from_covers(5, [(0, 4), (1, 3), (1, 4), (2, 3), (2, 4)])
    lat = downset_lattice(p, labelled=False)
    cfgs = list(split_configurations(lat))
    assert cfgs[0] == (1, 11, 9, 10, 3, 5)
    z0, z1 = split_reducible_top(lat, *cfgs[0])
    a, b, y0, y1, x0, x1 = cfgs[0]
    assert lat.join[z0, z1] == y0
    assert not lat.leq[z0, z1] and not lat.leq[z1, z0]
    assert lat.meet[z0, x0] != lat.meet[z0, x1]
    assert not lat.leq[z0, y1]


def test_split_rejects_bad_configuration():
    lat = catalog.lattice("double_diamond")
    with pytest.raises(InvalidConfiguration):
        split_reducible_top(lat, 0, 6, 1, 2, 4, 5)


@settings(max_examples=60, deadline=None)
@given(posets(min_n=1, max_n=6))
def test_bowtie_gives_dd_like_interval(p):
    lat = downset_lattice(p, labelled=False)
    v = is_realizable(lat)
    if not v:
        assert _dd_like_between(lat, *v.witness.interval_bounds)
        assert has_dd_like_subinterval(lat) is not None


@settings(max_examples=40, deadline=None)
@given(posets(min_n=1, max_n=5))
def test_realizability_passes_to_intervals(p):
    lat = downset_lattice(p, labelled=False)
    if is_realizable(lat):
        for a in range(lat.n):
            for b in range(lat.n):
                if lat.leq[a, b]:
                    assert is_realizable(interval(lat, a, b))
