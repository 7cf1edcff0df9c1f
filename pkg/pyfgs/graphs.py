import hashlib
import json
import logging as lo
import networkx as nx
import numpy as np
from networkx.algorithms import isomorphism as iso

__all__ = [
    'MAX_VERTICES', 'Graph', 'VertexMap', 'GraphIndex', 'GraphFormatError', 'wl_hash',
    'isomorphic', 'induced_subgraph', 'disjoint_union', 'enumerate_caterpillars',
    'enumerate_detached_caterpillars', 'read_graph', 'write_graph',
]

logger = lo.getLogger('pyfgs')

MAX_VERTICES = 24


class GraphFormatError(ValueError):
    """Raised for malformed graph6 or JSON graph input."""

    def __init__(self, message, offset=0):
        """Class constructor.

        Args:
            message: Description of the problem.
            offset: Byte offset in the input at which the problem was detected.
        """

        super().__init__('{} (at byte {})'.format(message, offset))
        self.offset = offset


class Graph:
    """Labeled simple undirected graph on the vertices 0..n-1 with bit-packed adjacency rows.

    Graphs are treated as immutable values: all operations return new graphs.
    """

    __slots__ = ('n', 'adj', '_nx', '_wl')

    def __init__(self, n, adj=None):
        """Class constructor.

        Args:
            n: Number of vertices (1 to MAX_VERTICES).
            adj: Sequence of n integers, bit j of entry i is set iff i and j are adjacent.
                Defaults to the empty graph.
        """

        if not 1 <= n <= MAX_VERTICES:
            raise ValueError('Vertex count {} outside of 1..{}.'.format(n, MAX_VERTICES))
        if adj is None:
            adj = (0,) * n
        adj = tuple(int(row) for row in adj)
        if len(adj) != n:
            raise ValueError('Expected {} adjacency rows, got {}.'.format(n, len(adj)))
        full = (1 << n) - 1
        for i, row in enumerate(adj):
            if row & ~full:
                raise ValueError('Row {} references vertices beyond {}.'.format(i, n - 1))
            if row >> i & 1:
                raise ValueError('Self-loop at vertex {}.'.format(i))
            for j in _bits(row):
                if not adj[j] >> i & 1:
                    raise ValueError('Adjacency is not symmetric for {} and {}.'.format(i, j))
        self._set(n, adj)

    def _set(self, n, adj):
        self.n = n
        self.adj = adj
        self._nx = None
        self._wl = None

    @classmethod
    def _from_rows(cls, n, adj):
        # rows are trusted to be valid
        graph = cls.__new__(cls)
        graph._set(n, tuple(adj))
        return graph

    @classmethod
    def from_edges(cls, n, edges):
        """Creates a graph from an edge list.

        Args:
            n: Number of vertices.
            edges: Iterable of vertex pairs.

        Returns:
            New graph.
        """

        rows = [0] * n
        for i, j in edges:
            if i == j:
                raise ValueError('Self-loop at vertex {}.'.format(i))
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError('Edge ({}, {}) outside of vertex range.'.format(i, j))
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, rows)

    @classmethod
    def from_networkx(cls, graph):
        """Creates a graph from a networkx graph, labeling vertices in node order."""
        labels = {node: index for index, node in enumerate(graph.nodes)}
        return cls.from_edges(len(labels), ((labels[u], labels[v]) for u, v in graph.edges))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return 'Graph(n={}, edges={})'.format(self.n, self.edges())

    def __getstate__(self):
        # the WL digest travels along so that worker results are not hashed twice
        return self.n, self.adj, self._wl

    def __setstate__(self, state):
        self._set(state[0], state[1])
        self._wl = state[2]

    def edges(self):
        """Returns the sorted list of edges (i, j) with i < j."""
        return [(i, j) for i in range(self.n) for j in _bits(self.adj[i] >> (i + 1) << (i + 1))]

    @property
    def num_edges(self):
        return sum(bin(row).count('1') for row in self.adj) // 2

    def neighbors(self, v):
        """Returns the sorted list of neighbors of vertex v."""
        return list(_bits(self.adj[v]))

    def has_edge(self, i, j):
        return bool(self.adj[i] >> j & 1)

    def degree(self, v):
        return bin(self.adj[v]).count('1')

    def degrees(self):
        return [bin(row).count('1') for row in self.adj]

    def components(self):
        """Returns the connected components as sorted vertex lists, ordered by smallest vertex."""
        unseen = (1 << self.n) - 1
        result = []
        while unseen:
            start = unseen & -unseen
            component = start
            frontier = start
            while frontier:
                v = frontier.bit_length() - 1
                frontier &= ~(1 << v)
                new = self.adj[v] & ~component
                component |= new
                frontier |= new
            unseen &= ~component
            result.append(list(_bits(component)))
        return result

    def is_connected(self):
        return len(self.components()) == 1

    def is_tree(self):
        return self.num_edges == self.n - 1 and self.is_connected()

    def is_caterpillar(self):
        """Checks whether the graph is a tree whose non-leaf vertices form a (possibly empty)
        path."""
        if not self.is_tree():
            return False
        spine = 0
        for v in range(self.n):
            if self.degree(v) >= 2:
                spine |= 1 << v
        return all(bin(self.adj[v] & spine).count('1') <= 2 for v in _bits(spine))

    def is_caterpillar_forest(self):
        """Checks whether every connected component is a caterpillar."""
        return all(induced_subgraph(self, component).is_caterpillar()
                   for component in self.components())

    def relabel(self, vertex_map):
        """Returns the graph with every vertex v renamed to vertex_map[v].

        Args:
            vertex_map: VertexMap that permutes 0..n-1.
        """

        if not vertex_map.is_permutation(self.n):
            raise ValueError('Vertex map is not a permutation of {} vertices.'.format(self.n))
        rows = [0] * self.n
        for v, row in enumerate(self.adj):
            target = 0
            for u in _bits(row):
                target |= 1 << vertex_map[u]
            rows[vertex_map[v]] = target
        return Graph._from_rows(self.n, rows)

    def adjacency_matrix(self):
        """Returns the adjacency matrix as n x n uint8 array."""
        bits = np.arange(self.n)
        return ((np.asarray(self.adj, dtype=np.int64)[:, np.newaxis] >> bits) & 1).astype(np.uint8)

    def to_networkx(self):
        """Returns a (cached, not to be modified) networkx view of the graph."""
        if self._nx is None:
            graph = nx.Graph()
            graph.add_nodes_from(range(self.n))
            graph.add_edges_from(self.edges())
            self._nx = graph
        return self._nx

    def graph6(self):
        """Returns the graph6 encoding as a string."""
        return write_graph(self).decode('ascii')


class VertexMap:
    """Injective map between vertex labels."""

    __slots__ = ('_map',)

    def __init__(self, mapping):
        """Class constructor.

        Args:
            mapping: Dictionary from source to target labels or a sequence of target labels for
                the sources 0, 1, ...
        """

        if not isinstance(mapping, dict):
            mapping = dict(enumerate(mapping))
        mapping = {int(k): int(v) for k, v in mapping.items()}
        if len(set(mapping.values())) != len(mapping):
            raise ValueError('Vertex map is not injective.')
        self._map = mapping

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    def __getitem__(self, v):
        return self._map[v]

    __call__ = __getitem__

    def __len__(self):
        return len(self._map)

    def __iter__(self):
        return iter(sorted(self._map))

    def __eq__(self, other):
        return isinstance(other, VertexMap) and self._map == other._map

    def __hash__(self):
        return hash(tuple(sorted(self._map.items())))

    def __repr__(self):
        return 'VertexMap({})'.format(dict(sorted(self._map.items())))

    def items(self):
        return sorted(self._map.items())

    def inverse(self):
        return VertexMap({v: k for k, v in self._map.items()})

    def then(self, other):
        """Returns the composition that applies this map first and other afterwards."""
        return VertexMap({k: other[v] for k, v in self._map.items()})

    def is_permutation(self, n):
        return set(self._map) == set(range(n)) and set(self._map.values()) == set(range(n))

    def as_list(self):
        """Target labels of the sources 0..len-1.

        Raises:
            ValueError: If the sources are not exactly 0..len-1.
        """

        if set(self._map) != set(range(len(self._map))):
            raise ValueError('Vertex map with sources {} has no list form.'.format(
                sorted(self._map)))
        return [self._map[i] for i in range(len(self._map))]


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def wl_hash(graph, iterations=3):
    """Weisfeiler-Lehman hash of a graph, invariant under relabeling.

    Args:
        graph: Graph to hash.
        iterations: Number of refinement iterations, starting from vertex degrees.

    Returns:
        64-bit integer digest.
    """

    if iterations == 3 and graph._wl is not None:
        return graph._wl
    refined = nx.weisfeiler_lehman_graph_hash(graph.to_networkx(), iterations=iterations,
                                               digest_size=8)
    digest = hashlib.blake2b('{}:{}'.format(graph.n, refined).encode('ascii'), digest_size=8)
    value = int.from_bytes(digest.digest(), 'little')
    if iterations == 3:
        graph._wl = value
    return value


def isomorphic(graph_1, graph_2):
    """Exact isomorphism test.

    Args:
        graph_1: First graph.
        graph_2: Second graph.

    Returns:
        VertexMap from the labels of graph_1 to the labels of graph_2 that maps edges onto edges,
        or None if the graphs are not isomorphic.
    """

    if graph_1.n != graph_2.n or graph_1.num_edges != graph_2.num_edges:
        return None
    if graph_1.adj == graph_2.adj:
        return VertexMap.identity(graph_1.n)
    if sorted(graph_1.degrees()) != sorted(graph_2.degrees()):
        return None
    matcher = iso.GraphMatcher(graph_1.to_networkx(), graph_2.to_networkx())
    if not matcher.is_isomorphic():
        return None
    return VertexMap(matcher.mapping)


def induced_subgraph(graph, keep):
    """Subgraph induced by a vertex set, relabeled densely in increasing vertex order.

    Args:
        graph: Original graph.
        keep: Vertices to keep.

    Returns:
        Graph on len(keep) vertices.
    """

    keep = sorted(set(keep))
    if not keep:
        raise ValueError('Cannot induce a subgraph on an empty vertex set.')
    if keep[0] < 0 or keep[-1] >= graph.n:
        raise ValueError('Vertex set {} not contained in the graph.'.format(keep))
    position = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        rows.append(sum(1 << position[u] for u in _bits(graph.adj[v]) if u in position))
    return Graph._from_rows(len(keep), rows)


def disjoint_union(graphs):
    """Disjoint union of graphs, labeled consecutively in the given order."""
    rows = []
    offset = 0
    for graph in graphs:
        rows.extend(row << offset for row in graph.adj)
        offset += graph.n
    if offset > MAX_VERTICES:
        raise ValueError('Union has {} vertices, more than {}.'.format(offset, MAX_VERTICES))
    return Graph._from_rows(offset, rows)


def _caterpillar(leaf_counts):
    """Caterpillar with spine 0..s-1 and leaf_counts[i] leaves at spine vertex i."""
    spine = len(leaf_counts)
    edges = [(i, i + 1) for i in range(spine - 1)]
    v = spine
    for i, count in enumerate(leaf_counts):
        for _ in range(count):
            edges.append((i, v))
            v += 1
    return Graph.from_edges(v, edges)


def _compositions(total, parts):
    """Tuples of parts nonnegative integers summing to total."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_caterpillars(n):
    """All caterpillar trees on n vertices up to isomorphism.

    A caterpillar is determined by the leaf counts along its spine (the non-leaf vertices), up
    to reversal of the spine.

    Args:
        n: Number of vertices.

    Returns:
        List of caterpillars.
    """

    if n < 1:
        raise ValueError('Caterpillars need at least one vertex.')
    if n == 1:
        return [Graph(1)]
    if n == 2:
        return [Graph.from_edges(2, [(0, 1)])]
    result = []
    for spine in range(1, n - 1):
        seen = set()
        leaves = n - spine
        if spine == 1:
            counts = [(leaves,)]
        else:
            # both spine ends need at least one leaf
            counts = ((inner[0] + 1,) + inner[1:-1] + (inner[-1] + 1,)
                      for inner in _compositions(leaves - 2, spine))
        for leaf_counts in counts:
            canonical = min(leaf_counts, leaf_counts[::-1])
            if canonical not in seen:
                seen.add(canonical)
                result.append(_caterpillar(canonical))
    return result


def enumerate_detached_caterpillars(max_total):
    """All disjoint unions of at least two caterpillars with at most max_total vertices.

    Args:
        max_total: Maximum total number of vertices.

    Returns:
        List of graphs, ordered by vertex count.
    """

    if max_total < 1:
        raise ValueError('Maximum vertex count must be positive.')
    pieces = [c for size in range(1, max_total) for c in enumerate_caterpillars(size)]
    result = []

    def extend(start, remaining, chosen):
        if len(chosen) >= 2:
            result.append(disjoint_union(chosen))
        for i in range(start, len(pieces)):
            if pieces[i].n <= remaining:
                extend(i, remaining - pieces[i].n, chosen + [pieces[i]])

    extend(0, max_total, [])
    result.sort(key=lambda g: g.n)
    return result


class GraphIndex:
    """Store of graphs up to isomorphism: WL hash buckets resolved by exact isomorphism."""

    def __init__(self):
        self._buckets = {}
        self._size = 0

    def __len__(self):
        return self._size

    def __contains__(self, graph):
        return self.find(graph) is not None

    def find(self, graph):
        """Looks up a graph.

        Args:
            graph: Query graph.

        Returns:
            Tuple (payload, vertex_map) where vertex_map maps the stored graph onto the query,
            or None.
        """

        return self._find_in(self._buckets.get(wl_hash(graph), ()), graph)

    @staticmethod
    def _find_in(bucket, graph):
        for stored, payload in bucket:
            vertex_map = isomorphic(stored, graph)
            if vertex_map is not None:
                return payload, vertex_map
        return None

    def add(self, graph, payload):
        """Adds a graph without checking for an isomorphic copy."""
        self._buckets.setdefault(wl_hash(graph), []).append((graph, payload))
        self._size += 1

    def insert_if_absent(self, graph, payload):
        """Adds a graph unless an isomorphic graph is stored.

        Returns:
            None if the graph was added, otherwise the (payload, vertex_map) of the stored copy.
        """

        bucket = self._buckets.setdefault(wl_hash(graph), [])
        found = self._find_in(bucket, graph)
        if found is None:
            bucket.append((graph, payload))
            self._size += 1
        return found

    def items(self):
        for bucket in self._buckets.values():
            yield from bucket


def write_graph(graph, fmt='graph6'):
    """Serializes a graph.

    Args:
        graph: Graph to write.
        fmt: 'graph6' or 'json'.

    Returns:
        Encoded bytes.
    """

    if fmt == 'graph6':
        return nx.to_graph6_bytes(graph.to_networkx(), header=False).rstrip(b'\n')
    if fmt == 'json':
        return json.dumps({'n': graph.n, 'edges': [list(e) for e in graph.edges()]},
                          separators=(',', ':')).encode('ascii')
    raise ValueError('Unknown graph format {}.'.format(fmt))


def read_graph(data):
    """Parses a graph given in graph6 or JSON edge-list form.

    Args:
        data: Bytes or string; a leading '{' selects the JSON form.

    Returns:
        Parsed graph.
    """

    if isinstance(data, str):
        data = data.encode('utf-8')
    start = len(data) - len(data.lstrip())
    body = data.strip()
    if not body:
        raise GraphFormatError('Empty graph input', start)
    if body.startswith(b'{'):
        return _read_json(data, start)
    if body.startswith(b'>>graph6<<'):
        start += len(b'>>graph6<<')
        body = body[len(b'>>graph6<<'):]
    if body.startswith(b':') or body.startswith(b'&'):
        raise GraphFormatError('Only graph6 is supported', start)
    _check_graph6(body, start)
    return Graph.from_networkx(nx.from_graph6_bytes(body))


def _check_graph6(body, start):
    for i, byte in enumerate(body):
        if not 63 <= byte <= 126:
            raise GraphFormatError('Invalid graph6 character {!r}'.format(chr(byte)), start + i)
    n = body[0] - 63
    if n == 63 or n > MAX_VERTICES:
        raise GraphFormatError('Vertex count exceeds {}'.format(MAX_VERTICES), start)
    if n < 1:
        raise GraphFormatError('Graph without vertices', start)
    num_bits = n * (n - 1) // 2
    num_bytes = (num_bits + 5) // 6
    if len(body) - 1 != num_bytes:
        offset = start + min(len(body), num_bytes + 1)
        raise GraphFormatError('Expected {} edge bytes, got {}'.format(num_bytes, len(body) - 1),
                               offset)
    padding = num_bytes * 6 - num_bits
    if padding and (body[-1] - 63) & ((1 << padding) - 1):
        raise GraphFormatError('Edge bit beyond the vertex range', start + len(body) - 1)


def _read_json(data, start):
    try:
        text = data.decode('utf-8')
        content = json.loads(text)
    except UnicodeDecodeError as err:
        raise GraphFormatError('Invalid UTF-8', err.start) from err
    except json.JSONDecodeError as err:
        # err.pos counts characters, offsets count bytes
        raise GraphFormatError(err.msg, len(text[:err.pos].encode('utf-8'))) from err
    edges_at = max(data.find(b'"edges"'), start)
    if not isinstance(content, dict) or 'n' not in content or 'edges' not in content:
        raise GraphFormatError('JSON graph needs the keys "n" and "edges"', start)
    n = content['n']
    if not isinstance(n, int) or not 1 <= n <= MAX_VERTICES:
        raise GraphFormatError('Invalid vertex count {!r}'.format(n), max(data.find(b'"n"'), 0))
    try:
        edges = [(int(i), int(j)) for i, j in content['edges']]
        return Graph.from_edges(n, edges)
    except (TypeError, ValueError) as err:
        raise GraphFormatError('Invalid edge list: {}'.format(err), edges_at) from err
