import itertools
import numpy as np
import pickle
import pyfgs as fgs
import pytest as pt


def brute_force_isomorphic(graph_1, graph_2):
    if graph_1.n != graph_2.n:
        return False
    return any(graph_1.relabel(fgs.VertexMap(p)) == graph_2
               for p in itertools.permutations(range(graph_1.n)))


def test_graph_validation():
    with pt.raises(ValueError):
        fgs.Graph(0)
    with pt.raises(ValueError):
        fgs.Graph(fgs.MAX_VERTICES + 1)
    with pt.raises(ValueError):
        fgs.Graph(2, [0b10, 0])
    with pt.raises(ValueError):
        fgs.Graph(2, [0b01, 0])
    with pt.raises(ValueError):
        fgs.Graph.from_edges(3, [(0, 3)])
    graph = fgs.Graph.from_edges(3, [(0, 1), (1, 2)])
    assert graph.edges() == [(0, 1), (1, 2)]
    assert graph.num_edges == 2
    assert graph.neighbors(1) == [0, 2]
    assert graph.degrees() == [1, 2, 1]


def test_components():
    graph = fgs.Graph.from_edges(5, [(0, 3), (1, 4)])
    assert graph.components() == [[0, 3], [1, 4], [2]]
    assert not graph.is_connected()
    assert graph.is_caterpillar_forest()
    assert fgs.cycle_graph(4).is_connected()
    assert not fgs.cycle_graph(4).is_tree()


def test_caterpillar_predicate():
    assert fgs.path_graph(6).is_caterpillar()
    assert fgs.star_graph(5).is_caterpillar()
    # spider with three legs of length two
    spider = fgs.Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    assert spider.is_tree()
    assert not spider.is_caterpillar()
    assert not fgs.cycle_graph(5).is_caterpillar()


def test_wl_hash():
    cycle = fgs.cycle_graph(5)
    relabeled = cycle.relabel(fgs.VertexMap([3, 0, 4, 1, 2]))
    assert fgs.wl_hash(cycle) == fgs.wl_hash(relabeled)
    assert fgs.wl_hash(fgs.path_graph(3)) != fgs.wl_hash(fgs.complete_graph(3))
    assert fgs.wl_hash(fgs.empty_graph(3)) != fgs.wl_hash(fgs.empty_graph(4))


def test_wl_hash_relabeling():
    rng = np.random.default_rng(7)
    for graph in fgs.enumerate_graphs(6)[::5]:
        permutation = fgs.VertexMap(rng.permutation(6))
        assert fgs.wl_hash(graph) == fgs.wl_hash(graph.relabel(permutation))


def test_pickled_graph_keeps_hash():
    cycle = fgs.cycle_graph(5)
    digest = fgs.wl_hash(cycle)
    copy = pickle.loads(pickle.dumps(cycle))
    assert copy == cycle
    assert fgs.wl_hash(copy) == digest
    assert fgs.wl_hash(pickle.loads(pickle.dumps(fgs.path_graph(3)))) == \
        fgs.wl_hash(fgs.path_graph(3))


def test_isomorphic():
    cycle = fgs.cycle_graph(5)
    relabeled = cycle.relabel(fgs.VertexMap([2, 4, 1, 3, 0]))
    vertex_map = fgs.isomorphic(cycle, relabeled)
    assert vertex_map is not None
    assert cycle.relabel(vertex_map) == relabeled
    assert fgs.isomorphic(cycle, fgs.path_graph(5)) is None
    assert fgs.isomorphic(fgs.path_graph(3), fgs.path_graph(4)) is None


def test_isomorphic_degree_sequence_trees():
    # both trees have the degree sequence (3, 2, 2, 1, 1, 1)
    first = fgs.Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (1, 4), (3, 5)])
    second = fgs.Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5)])
    third = fgs.Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (4, 5)])
    assert sorted(first.degrees()) == sorted(second.degrees()) == sorted(third.degrees())
    for graph_1, graph_2 in itertools.combinations([first, second, third], 2):
        found = fgs.isomorphic(graph_1, graph_2)
        assert (found is not None) == brute_force_isomorphic(graph_1, graph_2)
        if found is not None:
            assert graph_1.relabel(found) == graph_2


def test_isomorphic_brute_force():
    graphs = fgs.enumerate_graphs(4)
    for graph_1, graph_2 in itertools.product(graphs, repeat=2):
        assert (fgs.isomorphic(graph_1, graph_2) is not None) == \
            brute_force_isomorphic(graph_1, graph_2)


def test_vertex_map():
    vertex_map = fgs.VertexMap([2, 0, 1])
    assert vertex_map[0] == 2
    assert vertex_map.inverse()[2] == 0
    assert vertex_map.then(vertex_map.inverse()) == fgs.VertexMap.identity(3)
    assert vertex_map.is_permutation(3)
    assert not vertex_map.is_permutation(4)
    assert vertex_map.as_list() == [2, 0, 1]
    sparse = fgs.VertexMap({1: 0, 3: 1})
    assert sparse.items() == [(1, 0), (3, 1)]
    with pt.raises(ValueError):
        sparse.as_list()
    with pt.raises(ValueError):
        fgs.VertexMap([0, 0])


def test_enumerate_caterpillars():
    assert [len(fgs.enumerate_caterpillars(n)) for n in (1, 2, 3)] == [1, 1, 1]
    assert len(fgs.enumerate_caterpillars(7)) == 10
    for n in range(4, 15):
        assert len(fgs.enumerate_caterpillars(n)) == 2 ** (n - 4) + 2 ** (n // 2 - 2)
    assert sum(len(fgs.enumerate_caterpillars(n)) for n in range(1, 15)) == 2144


def test_caterpillars_distinct():
    index = fgs.GraphIndex()
    for caterpillar in fgs.enumerate_caterpillars(9):
        assert caterpillar.n == 9
        assert caterpillar.is_caterpillar()
        assert index.insert_if_absent(caterpillar, None) is None


def test_caterpillars_are_all_caterpillar_trees():
    trees = fgs.enumerate_trees(8)
    expected = [tree for tree in trees if tree.is_caterpillar()]
    found = fgs.enumerate_caterpillars(8)
    assert len(found) == len(expected)
    index = fgs.GraphIndex()
    for caterpillar in found:
        index.add(caterpillar, None)
    assert all(tree in index for tree in expected)


def test_enumerate_detached_caterpillars():
    two = fgs.enumerate_detached_caterpillars(2)
    assert len(two) == 1
    assert two[0] == fgs.empty_graph(2)

    k1, p2, p3 = fgs.empty_graph(1), fgs.path_graph(2), fgs.path_graph(3)
    expected = [[k1, k1], [k1, k1, k1], [k1, k1, k1, k1], [k1, p2], [k1, p3], [p2, p2],
                [k1, k1, p2]]
    found = fgs.enumerate_detached_caterpillars(4)
    assert len(found) == len(expected)
    index = fgs.GraphIndex()
    for graph in found:
        assert graph.is_caterpillar_forest()
        assert len(graph.components()) >= 2
        index.add(graph, None)
    assert all(fgs.disjoint_union(pieces) in index for pieces in expected)


def test_induced_subgraph():
    assert fgs.induced_subgraph(fgs.complete_graph(3), [0, 1]) == fgs.path_graph(2)
    assert fgs.induced_subgraph(fgs.cycle_graph(5), [0, 1, 2, 3]) == fgs.path_graph(4)
    cube = fgs.cube_graph()
    for removed in range(8):
        sub = fgs.induced_subgraph(cube, [v for v in range(8) if v != removed])
        assert sub.n == 7
        assert sub.num_edges == 9
    assert fgs.induced_subgraph(cube, range(8)) == cube
    with pt.raises(ValueError):
        fgs.induced_subgraph(cube, [])
    with pt.raises(ValueError):
        fgs.induced_subgraph(cube, [8])


def test_disjoint_union():
    union = fgs.disjoint_union([fgs.path_graph(2), fgs.path_graph(3)])
    assert union.edges() == [(0, 1), (2, 3), (3, 4)]


def test_graph_index():
    index = fgs.GraphIndex()
    index.add(fgs.path_graph(4), 'path')
    query = fgs.path_graph(4).relabel(fgs.VertexMap([3, 1, 0, 2]))
    payload, vertex_map = index.find(query)
    assert payload == 'path'
    assert fgs.path_graph(4).relabel(vertex_map) == query
    assert index.find(fgs.star_graph(3)) is None
    assert index.insert_if_absent(query, 'other')[0] == 'path'
    assert index.insert_if_absent(fgs.star_graph(3), 'star') is None
    assert len(index) == 2


def test_graph6():
    cycle = fgs.cycle_graph(5)
    assert cycle.graph6() == 'Dhc'
    assert fgs.read_graph(b'Dhc') == cycle
    assert fgs.write_graph(fgs.read_graph(b'Dhc')) == b'Dhc'
    assert fgs.read_graph('>>graph6<<Dhc\n') == cycle
    assert fgs.read_graph(b'A_') == fgs.path_graph(2)
    assert fgs.read_graph(b'B_') == fgs.Graph.from_edges(3, [(0, 1)])
    assert fgs.read_graph(b'@') == fgs.empty_graph(1)


def test_graph6_errors():
    with pt.raises(fgs.GraphFormatError) as error:
        fgs.read_graph(b'B@')
    assert error.value.offset == 1
    with pt.raises(fgs.GraphFormatError) as error:
        fgs.read_graph(b'D h')
    assert error.value.offset == 1
    with pt.raises(fgs.GraphFormatError):
        fgs.read_graph(b'Dh')
    with pt.raises(fgs.GraphFormatError):
        fgs.read_graph(b':Fa@x^')
    with pt.raises(fgs.GraphFormatError):
        fgs.read_graph(b'')


def test_json_graph():
    path = fgs.read_graph(b'{"n":2,"edges":[[0,1]]}')
    assert path == fgs.path_graph(2)
    assert fgs.write_graph(path, 'json') == b'{"n":2,"edges":[[0,1]]}'
    assert fgs.read_graph(fgs.write_graph(fgs.cube_graph(), 'json')) == fgs.cube_graph()
    with pt.raises(fgs.GraphFormatError):
        fgs.read_graph(b'{"n": 2, "edges": [[0, 1]')
    with pt.raises(fgs.GraphFormatError):
        fgs.read_graph(b'{"n": 2, "edges": [[0, 2]]}')
    with pt.raises(fgs.GraphFormatError):
        fgs.read_graph(b'{"edges": []}')
    with pt.raises(fgs.GraphFormatError) as error:
        fgs.read_graph('{"name": "\u00e9", "n": }'.encode('utf-8'))
    assert error.value.offset == 20
    with pt.raises(ValueError):
        fgs.write_graph(path, 'sparse6')
