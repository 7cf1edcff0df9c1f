import functools
import itertools
import logging as lo
import networkx as nx
from . import graphs as grs

__all__ = [
    'empty_graph', 'path_graph', 'cycle_graph', 'star_graph', 'complete_graph', 'cube_graph',
    'repeater_graph', 'crazy_graph', 'enumerate_graphs', 'enumerate_trees',
]

logger = lo.getLogger('pyfgs')


def empty_graph(n):
    return grs.Graph(n)


def path_graph(n):
    return grs.Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    if n < 3:
        raise ValueError('Cycles need at least 3 vertices.')
    return grs.Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(num_leaves):
    """Star with center 0 and leaves 1..num_leaves."""
    return grs.Graph.from_edges(num_leaves + 1, [(0, i) for i in range(1, num_leaves + 1)])


def complete_graph(n):
    return grs.Graph.from_edges(n, itertools.combinations(range(n), 2))


def cube_graph():
    """Three-dimensional hypercube; vertices are adjacent iff their labels differ in one bit."""
    return grs.Graph.from_edges(8, [(v, v ^ bit) for v in range(8) for bit in (1, 2, 4)
                                    if v < v ^ bit])


def repeater_graph(m):
    """Repeater graph state: complete graph on the core 0..m-1, core vertex i carries the leaf
    m+i.

    Args:
        m: Number of core vertices; the graph has 2m vertices.
    """

    edges = list(itertools.combinations(range(m), 2)) + [(i, m + i) for i in range(m)]
    return grs.Graph.from_edges(2 * m, edges)


def crazy_graph(layers, width, io_nodes=True):
    """Crazy graph: layers of width vertices, neighbouring layers completely connected.

    Args:
        layers: Number of layers.
        width: Vertices per layer.
        io_nodes: Add an input vertex joined to the first layer and an output vertex joined to
            the last layer (labels 0 and n-1).
    """

    offset = 1 if io_nodes else 0
    n = layers * width + 2 * offset
    layer = [[offset + k * width + i for i in range(width)] for k in range(layers)]
    edges = []
    for first, second in zip(layer, layer[1:]):
        edges.extend(itertools.product(first, second))
    if io_nodes:
        edges.extend((0, v) for v in layer[0])
        edges.extend((v, n - 1) for v in layer[-1])
    return grs.Graph.from_edges(n, edges)


@functools.lru_cache(maxsize=None)
def _all_graphs(n):
    if n == 1:
        return (grs.Graph(1),)
    index = grs.GraphIndex()
    result = []
    smaller = _all_graphs(n - 1)
    for graph in smaller:
        for neighborhood in range(1 << (n - 1)):
            rows = [row | ((neighborhood >> v & 1) << (n - 1)) for v, row in enumerate(graph.adj)]
            candidate = grs.Graph._from_rows(n, rows + [neighborhood])
            if index.insert_if_absent(candidate, len(result)) is None:
                result.append(candidate)
    logger.info('Enumerated {} graphs on {} vertices.'.format(len(result), n))
    return tuple(result)


def enumerate_graphs(n, connected_only=False):
    """All graphs on n vertices up to isomorphism, generated by vertex augmentation.

    Args:
        n: Number of vertices.
        connected_only: Only return connected graphs.

    Returns:
        List of graphs.
    """

    graphs = list(_all_graphs(n))
    if connected_only:
        graphs = [graph for graph in graphs if graph.is_connected()]
    return graphs


def enumerate_trees(n):
    """All trees on n vertices up to isomorphism."""
    if n == 1:
        return [grs.Graph(1)]
    return [grs.Graph.from_networkx(tree) for tree in nx.nonisomorphic_trees(n)]
