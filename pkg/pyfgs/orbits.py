import collections
import logging as lo
from . import families as fam
from . import graphs as grs

__all__ = [
    'Orbit', 'FusionLink', 'NotLCEquivalentError', 'local_complement', 'enumerate_orbit',
    'lc_equivalent', 'lc_path', 'classify_all_connected',
]

logger = lo.getLogger('pyfgs')


class NotLCEquivalentError(ValueError):
    """Raised if no sequence of local complementations connects two graphs."""


class FusionLink:
    """Fusion connecting a member of a parent orbit with a member of a child orbit."""

    def __init__(self, parent_orbit, parent_member, pair, child_member, relabel, frame):
        """Class constructor.

        Args:
            parent_orbit: Id of the parent orbit.
            parent_member: Index of the fused member within the parent orbit.
            pair: Fused vertices (a, b) of the parent member.
            child_member: Index of the resulting member within the child orbit.
            relabel: VertexMap from the fusion result's labels to the child member's labels.
            frame: LocalCliffordFrame of the fusion result.
        """

        self.parent_orbit = parent_orbit
        self.parent_member = parent_member
        self.pair = tuple(pair)
        self.child_member = child_member
        self.relabel = relabel
        self.frame = frame

    def __repr__(self):
        return 'FusionLink(parent_orbit={}, parent_member={}, pair={}, child_member={})'.format(
            self.parent_orbit, self.parent_member, self.pair, self.child_member)

    def __eq__(self, other):
        return isinstance(other, FusionLink) and \
            (self.parent_orbit, self.parent_member, self.pair, self.child_member, self.relabel,
             self.frame) == (other.parent_orbit, other.parent_member, other.pair,
                             other.child_member, other.relabel, other.frame)


class Orbit:
    """Graphs closed under local complementation, stored once per isomorphism class."""

    def __init__(self, members, orbit_id=None, depth=None, parent_link=None):
        """Class constructor.

        Args:
            members: Pairwise non-isomorphic graphs in BFS order from the seed.
            orbit_id: Id within a tablebase.
            depth: Minimum number of fusions needed to reach the orbit.
            parent_link: FusionLink into the orbit (None at depth 0).
        """

        if not members:
            raise ValueError('Orbits need at least one member.')
        self.members = list(members)
        self.id = orbit_id
        self.depth = depth
        self.parent_link = parent_link

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return 'Orbit(id={}, n={}, members={}, depth={})'.format(
            self.id, self.num_vertices, len(self.members), self.depth)

    @property
    def num_vertices(self):
        return self.members[0].n

    def is_connected(self):
        return self.members[0].is_connected()

    def caterpillar_member(self):
        """Index of the first member whose components are all caterpillars, or None."""
        for index, member in enumerate(self.members):
            if member.is_caterpillar_forest():
                return index
        return None


def local_complement(graph, a):
    """Toggles all edges between distinct neighbors of vertex a."""
    if not 0 <= a < graph.n:
        raise ValueError('Vertex {} out of range for {} vertices.'.format(a, graph.n))
    neighborhood = graph.adj[a]
    rows = list(graph.adj)
    for i in range(graph.n):
        if neighborhood >> i & 1:
            rows[i] ^= neighborhood & ~(1 << i)
    return grs.Graph._from_rows(graph.n, rows)


def _lc_search(start, rng=None):
    """Breadth-first search over local complements, one graph per isomorphism class.

    Yields:
        Tuples (graph, parent index, vertex) in discovery order.
    """

    index = grs.GraphIndex()
    index.add(start, 0)
    found = [(start, None, None)]
    yield found[0]
    position = 0
    while position < len(found):
        graph = found[position][0]
        vertices = list(range(graph.n))
        if rng is not None:
            rng.shuffle(vertices)
        for v in vertices:
            # local complements at vertices of degree below 2 change nothing
            if graph.degree(v) < 2:
                continue
            image = local_complement(graph, v)
            if index.insert_if_absent(image, len(found)) is None:
                found.append((image, position, v))
                yield found[-1]
        position += 1


def enumerate_orbit(graph, rng=None):
    """Orbit of a graph under local complementation.

    Args:
        graph: Seed graph, stored as the first member.
        rng: Optional numpy random generator that shuffles the vertex order of the search.

    Returns:
        Orbit without id, depth and link.
    """

    return Orbit([found[0] for found in _lc_search(graph, rng)])


def lc_equivalent(graph_1, graph_2):
    """Checks whether graph_2 is isomorphic to a local complementation image of graph_1."""
    if graph_1.n != graph_2.n or graph_1.is_connected() != graph_2.is_connected():
        return False
    for graph, _, _ in _lc_search(graph_1):
        if grs.isomorphic(graph, graph_2) is not None:
            return True
    return False


def lc_path(source, target):
    """Local complementations leading from one graph to another up to relabeling.

    Args:
        source: Start graph.
        target: Goal graph.

    Returns:
        Tuple (steps, vertex_map): applying local complementations at the vertices in steps to
        source gives a graph whose relabeling by vertex_map equals target.
    """

    if source.n == target.n:
        found = []
        for entry in _lc_search(source):
            found.append(entry)
            vertex_map = grs.isomorphic(entry[0], target)
            if vertex_map is not None:
                steps = collections.deque()
                position = len(found) - 1
                while found[position][1] is not None:
                    steps.appendleft(found[position][2])
                    position = found[position][1]
                return list(steps), vertex_map
    raise NotLCEquivalentError('Graphs are not equivalent under local complementation.')


def classify_all_connected(n):
    """Partitions all connected graphs on n vertices into orbits.

    Args:
        n: Number of vertices.

    Returns:
        Number of orbits.
    """

    graphs = fam.enumerate_graphs(n, connected_only=True)
    index = grs.GraphIndex()
    for position, graph in enumerate(graphs):
        index.add(graph, position)
    assigned = [False] * len(graphs)
    count = 0
    for position, graph in enumerate(graphs):
        if assigned[position]:
            continue
        for member in enumerate_orbit(graph).members:
            assigned[index.find(member)[0]] = True
        count += 1
    logger.info('{} connected graphs on {} vertices form {} orbits.'
                .format(len(graphs), n, count))
    return count
