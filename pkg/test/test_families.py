import pyfgs as fgs
import pytest as pt


def test_family_sizes():
    assert fgs.path_graph(5).num_edges == 4
    assert fgs.cycle_graph(5).num_edges == 5
    assert fgs.star_graph(4).degrees() == [4, 1, 1, 1, 1]
    assert fgs.complete_graph(5).num_edges == 10
    cube = fgs.cube_graph()
    assert cube.n == 8
    assert cube.num_edges == 12
    assert cube.degrees() == [3] * 8
    repeater = fgs.repeater_graph(4)
    assert repeater.n == 8
    assert repeater.num_edges == 10
    crazy = fgs.crazy_graph(3, 3)
    assert crazy.n == 11
    assert crazy.num_edges == 24
    assert fgs.crazy_graph(2, 2, io_nodes=False) == fgs.cycle_graph(4).relabel(
        fgs.VertexMap([0, 2, 1, 3]))


def test_family_errors():
    with pt.raises(ValueError):
        fgs.cycle_graph(2)


def test_enumerate_graphs():
    assert [len(fgs.enumerate_graphs(n)) for n in range(1, 6)] == [1, 2, 4, 11, 34]
    assert [len(fgs.enumerate_graphs(n, connected_only=True)) for n in range(1, 6)] == \
        [1, 1, 2, 6, 21]
    assert len(fgs.enumerate_graphs(6)) == 156
    assert len(fgs.enumerate_graphs(6, connected_only=True)) == 112


def test_enumerate_trees():
    assert len(fgs.enumerate_trees(1)) == 1
    trees = fgs.enumerate_trees(6)
    assert len(trees) == 6
    assert all(tree.is_caterpillar() for tree in trees)
    trees = fgs.enumerate_trees(7)
    assert len(trees) == 11
    assert sum(tree.is_caterpillar() for tree in trees) == 10
