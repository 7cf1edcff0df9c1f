import itertools
import numpy as np
import pyfgs as fgs
import pytest as pt


def test_cut_rank():
    assert fgs.cut_rank(fgs.path_graph(2), [0]) == 1
    assert fgs.cut_rank(fgs.empty_graph(4), [0, 1]) == 0
    assert fgs.cut_rank(fgs.complete_graph(5), [0, 1]) == 1
    assert fgs.cut_rank(fgs.cycle_graph(6), [0, 1, 2]) == 2
    assert fgs.cut_rank(fgs.cube_graph(), []) == 0
    with pt.raises(ValueError):
        fgs.cut_rank(fgs.path_graph(3), [3])


def test_cut_rank_symmetric():
    for graph in fgs.enumerate_graphs(5):
        for size in range(1, 5):
            for part in itertools.combinations(range(5), size):
                rest = [v for v in range(5) if v not in part]
                assert fgs.cut_rank(graph, part) == fgs.cut_rank(graph, rest)


def test_cut_rank_invariant_under_local_complementation():
    graph = fgs.cycle_graph(6)
    for v in range(6):
        image = fgs.local_complement(graph, v)
        for part in itertools.combinations(range(6), 3):
            assert fgs.cut_rank(image, part) == fgs.cut_rank(graph, part)


def test_height_profile():
    profile = fgs.height_profile(fgs.cycle_graph(5), range(5))
    assert profile.values == [0, 1, 2, 2, 1, 0]
    assert profile.maximum == 2
    assert profile.climbs(1) == 2
    assert profile.climbs(2) == 0
    with pt.raises(ValueError):
        fgs.height_profile(fgs.cycle_graph(5), [0, 1, 2, 3])


def test_ns_min():
    cycle = fgs.ns_min(fgs.cycle_graph(5))
    assert cycle.value == 2
    assert cycle.exact
    assert int(cycle) == 2
    assert fgs.height_profile(fgs.cycle_graph(5), cycle.order).maximum == 2
    assert fgs.ns_min(fgs.empty_graph(1)).value == 0
    assert fgs.ns_min(fgs.complete_graph(6)).value == 1
    for n in range(2, 8):
        for caterpillar in fgs.enumerate_caterpillars(n):
            assert fgs.ns_min(caterpillar).value == 1


def test_ns_min_sampled():
    estimate = fgs.ns_min(fgs.cycle_graph(8), max_exact=4, samples=20,
                          rng=np.random.default_rng(1))
    assert not estimate.exact
    assert estimate.samples == 20
    assert estimate.value == 2
    assert fgs.height_profile(fgs.cycle_graph(8), estimate.order).maximum == estimate.value
    assert estimate.to_dict() == {'value': 2, 'exact': False, 'samples': 20}


def test_climb():
    assert fgs.climb(fgs.cycle_graph(5), 1).value == 2
    assert fgs.climb(fgs.cycle_graph(5), 2).value == 0
    for caterpillar in fgs.enumerate_caterpillars(7):
        assert fgs.climb(caterpillar, 1).value == 0
    sampled = fgs.climb(fgs.cycle_graph(6), 1, max_exact=3, samples=10)
    assert not sampled.exact
    assert sampled.value >= fgs.climb(fgs.cycle_graph(6), 1).value


def test_emitter_bound_holds_for_table(table7):
    for orbit in table7.orbits:
        if orbit.num_vertices > 6:
            continue
        values = {fgs.ns_min(member).value for member in orbit.members}
        assert len(values) == 1
        assert orbit.depth + 1 >= values.pop()


def test_climb_bound_holds_for_table(table7):
    for orbit in table7.orbits:
        if orbit.num_vertices <= 5 and orbit.is_connected():
            assert fgs.climb(orbit.members[0], 1).value >= orbit.depth


def test_subgraph_lower_bound(table7):
    assert fgs.subgraph_lower_bound(table7, fgs.cycle_graph(5)) == 1
    assert fgs.subgraph_lower_bound(table7, fgs.path_graph(6)) == 0
    pendant = fgs.Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)])
    assert fgs.subgraph_lower_bound(table7, pendant) == 1
    assert fgs.subgraph_lower_bound(table7, fgs.path_graph(9)) == 0


@pt.mark.slow
def test_emitter_bound_holds_for_every_member(table8):
    for orbit in table8.orbits:
        for member in orbit.members:
            estimate = fgs.ns_min(member)
            assert estimate.exact
            assert orbit.depth + 1 >= estimate.value


@pt.mark.slow
def test_climb_bound_holds_for_connected_orbits(table8):
    for orbit in table8.orbits:
        if orbit.is_connected():
            estimate = fgs.climb(orbit.members[0], 1)
            assert estimate.exact
            assert estimate.value >= orbit.depth


@pt.mark.slow
def test_emitter_bound_is_tight_up_to_six_vertices(table10):
    for orbit in table10.orbits:
        if orbit.is_connected() and 2 <= orbit.num_vertices <= 6:
            assert fgs.ns_min(orbit.members[0]).value == orbit.depth + 1


@pt.mark.slow
def test_seven_vertex_graph_with_two_emitters_needs_two_fusions(table10):
    # graphs with seven vertices absent from the table need at least two fusions
    absent = [graph for graph in fgs.enumerate_graphs(7, connected_only=True)
              if table10.find(graph) is None]
    assert absent
    loose = [graph for graph in absent if fgs.ns_min(graph).value == 2]
    assert loose
    for graph in loose:
        assert fgs.climb(graph, 1).value >= 2
