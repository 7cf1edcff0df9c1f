import itertools
import logging as lo
from . import families as fam
from . import graphs as grs
from . import orbits as orb
from . import stabilizers as stb

__all__ = [
    'FusionKind', 'FusionResult', 'FUSION_KINDS', 'DEFAULT_KIND', 'fuse', 'fuse_graph',
    'fast_fuse_rewrite', 'fusion_is_degenerate', 'fusion_kinds_equivalent_on_orbits',
]

logger = lo.getLogger('pyfgs')


class FusionKind:
    """Pair of commuting two-qubit parities measured by a successful fusion of qubits A and B."""

    def __init__(self, first, second):
        """Class constructor.

        Args:
            first: First parity as two letters, the Pauli on A followed by the Pauli on B.
            second: Second parity in the same form.
        """

        self.first = first
        self.second = second
        one, two = (stb.PauliString.from_str(p) for p in (first, second))
        if not one.commutes(two):
            raise ValueError('Parities {} and {} do not commute.'.format(first, second))
        if any(p.weight < 2 for p in (one, two, one * two)):
            raise ValueError('Parities {} and {} contain a single-qubit operator.'
                             .format(first, second))

    @property
    def name(self):
        return '{}^{}'.format(self.first, self.second)

    def __repr__(self):
        return 'FusionKind({!r}, {!r})'.format(self.first, self.second)

    def paulis(self, n, a, b):
        """The two parities as Pauli strings on n qubits with A = a and B = b."""
        result = []
        for parity in (self.first, self.second):
            x_mask = z_mask = 0
            for qubit, letter in zip((a, b), parity):
                x_mask |= (letter in 'XY') << qubit
                z_mask |= (letter in 'ZY') << qubit
            result.append(stb.PauliString(n, x_mask, z_mask))
        return result


FUSION_KINDS = (
    FusionKind('XX', 'ZZ'),
    FusionKind('XY', 'YX'),
    FusionKind('XZ', 'ZX'),
    FusionKind('YZ', 'ZY'),
    FusionKind('XY', 'YZ'),
)
DEFAULT_KIND = FUSION_KINDS[2]


class FusionResult:
    """Graph state left after a successful fusion."""

    def __init__(self, graph, frame, relabel, status='ok', state=None):
        """Class constructor.

        Args:
            graph: Resulting graph on n-2 vertices.
            frame: LocalCliffordFrame relating the graph state to the actual state.
            relabel: VertexMap from the remaining old labels to the new labels.
            status: 'ok' or 'degenerate' (the fusion acts as single-qubit measurements).
            state: Post-measurement tableau after deleting the fused qubits, if simulated.
        """

        self.graph = graph
        self.frame = frame
        self.relabel = relabel
        self.status = status
        self.state = state

    @property
    def degenerate(self):
        return self.status == 'degenerate'


def _check_pair(graph, a, b):
    if a == b:
        raise ValueError('Cannot fuse vertex {} with itself.'.format(a))
    for v in (a, b):
        if not 0 <= v < graph.n:
            raise ValueError('Vertex {} out of range for {} vertices.'.format(v, graph.n))
    if graph.n < 3:
        raise ValueError('Fusion needs at least 3 qubits, got {}.'.format(graph.n))


def _remaining_map(n, a, b):
    keep = [v for v in range(n) if v not in (a, b)]
    return grs.VertexMap({v: i for i, v in enumerate(keep)})


def fusion_is_degenerate(graph, a, b):
    """Checks whether a fusion of a and b only acts as single-qubit measurements: one of them is
    isolated or both form an isolated edge."""
    if not graph.adj[a] or not graph.adj[b]:
        return True
    return graph.adj[a] == 1 << b and graph.adj[b] == 1 << a


def fuse(graph, a, b, kind=DEFAULT_KIND):
    """Successful fusion simulated on the stabilizer tableau.

    Both parities are measured with outcome +1 where random, the fused qubits are deleted and
    the remaining state is converted back into a graph state and a local Clifford frame.

    Args:
        graph: Graph state to fuse.
        a: Qubit A.
        b: Qubit B.
        kind: FusionKind to measure.

    Returns:
        FusionResult.
    """

    _check_pair(graph, a, b)
    tableau = stb.graph_to_tableau(graph)
    for parity in kind.paulis(graph.n, a, b):
        if tableau.expectation(parity) == 0:
            tableau.measure(parity, force=1)
    state = tableau.delete([a, b])
    result_graph, frame = stb.tableau_to_graph(state)
    status = 'degenerate' if fusion_is_degenerate(graph, a, b) else 'ok'
    return FusionResult(result_graph, frame, _remaining_map(graph.n, a, b), status, state)


def fast_fuse_rewrite(graph, a, b):
    """Graph rewrite of the default fusion of two non-adjacent, non-isolated vertices.

    Every neighbor of a is toggled against every neighbor of b (pairs inside both
    neighborhoods cancel), then a and b are removed.

    Returns:
        Resulting graph, or None if the preconditions fail.
    """

    adj = graph.adj
    if a == b or graph.has_edge(a, b) or not adj[a] or not adj[b]:
        return None
    near_a, near_b = adj[a], adj[b]
    rows = []
    for u, row in enumerate(adj):
        if u in (a, b):
            continue
        if near_a >> u & 1:
            row ^= near_b
        if near_b >> u & 1:
            row ^= near_a
        row &= ~(1 << u)
        rows.append(row)
    keep = [v for v in range(graph.n) if v not in (a, b)]
    packed = []
    for row in rows:
        packed.append(sum(1 << i for i, v in enumerate(keep) if row >> v & 1))
    return grs.Graph._from_rows(len(keep), packed)


def fuse_graph(graph, a, b):
    """Default fusion using the graph rewrite where it applies and the tableau otherwise."""
    rewritten = fast_fuse_rewrite(graph, a, b)
    if rewritten is None:
        return fuse(graph, a, b)
    return FusionResult(rewritten, stb.LocalCliffordFrame.identity(rewritten.n),
                        _remaining_map(graph.n, a, b))


def fusion_kinds_equivalent_on_orbits(n):
    """Checks on all graphs with at most n vertices that every fusion kind reaches only orbits
    that the default kind reaches from the same orbit.

    Args:
        n: Maximum number of vertices.

    Returns:
        True if the claim holds.
    """

    index = grs.GraphIndex()
    orbits = []
    for size in range(1, n + 1):
        for graph in fam.enumerate_graphs(size):
            if graph not in index:
                orbit = orb.enumerate_orbit(graph)
                for member in orbit.members:
                    index.add(member, len(orbits))
                orbits.append(orbit)
    logger.info('Checking fusion kinds on {} orbits.'.format(len(orbits)))
    for orbit_id, orbit in enumerate(orbits):
        if orbit.members[0].n < 3:
            continue
        reached = {kind.name: set() for kind in FUSION_KINDS}
        for member in orbit.members:
            for a, b in itertools.combinations(range(member.n), 2):
                if fusion_is_degenerate(member, a, b):
                    continue
                for kind in FUSION_KINDS:
                    reached[kind.name].add(index.find(fuse(member, a, b, kind).graph)[0])
        for kind in FUSION_KINDS:
            extra = reached[kind.name] - reached[DEFAULT_KIND.name]
            if extra:
                logger.warning('Fusion kind {} reaches orbits {} from orbit {} that the default '
                               'kind does not.'.format(kind.name, sorted(extra), orbit_id))
                return False
    return True
