import json
import logging as lo
from . import fusions as fus
from . import graphs as grs
from . import orbits as orb
from . import stabilizers as stb

__all__ = [
    'LCStep', 'FuseStep', 'ConstructionProtocol', 'ReplayOutcome', 'NotInTablebaseError',
    'lookup', 'construct', 'replay_verify', 'export_protocol', 'import_protocol',
]

logger = lo.getLogger('pyfgs')


class NotInTablebaseError(KeyError):
    """Raised if a graph is not contained in a table."""


class LCStep:
    """Local complementation at a vertex."""

    def __init__(self, vertex):
        self.vertex = vertex

    def __eq__(self, other):
        return isinstance(other, LCStep) and self.vertex == other.vertex

    def __repr__(self):
        return 'LCStep({})'.format(self.vertex)

    def __str__(self):
        return 'LC({})'.format(self.vertex)


class FuseStep:
    """Successful default fusion of two qubits followed by removal of the local Clifford
    frame."""

    def __init__(self, a, b, frame=None):
        """Class constructor.

        Args:
            a: Qubit A.
            b: Qubit B.
            frame: LocalCliffordFrame of the fused state on the remaining qubits. None means
                identity.
        """

        self.a = a
        self.b = b
        self.frame = frame

    @property
    def has_frame(self):
        return self.frame is not None and not self.frame.is_identity()

    def __eq__(self, other):
        if not isinstance(other, FuseStep) or (self.a, self.b) != (other.a, other.b):
            return False
        if not (self.has_frame or other.has_frame):
            return True
        return self.frame == other.frame

    def __repr__(self):
        return 'FuseStep({}, {})'.format(self.a, self.b)

    def __str__(self):
        return 'fuse {} & {}'.format(self.a, self.b)


class ConstructionProtocol:
    """Initial caterpillar set, steps acting on the current labels and a final relabeling onto
    the target."""

    def __init__(self, initial, steps, final_map):
        """Class constructor.

        Args:
            initial: Graph whose components are caterpillars.
            steps: List of LCStep and FuseStep. Fusions relabel the remaining qubits densely in
                increasing order.
            final_map: VertexMap from the labels after the last step onto the target's labels.
        """

        self.initial = initial
        self.steps = list(steps)
        self.final_map = final_map

    @property
    def depth(self):
        return sum(isinstance(step, FuseStep) for step in self.steps)

    def __eq__(self, other):
        return isinstance(other, ConstructionProtocol) and \
            (self.initial, self.steps, self.final_map) == \
            (other.initial, other.steps, other.final_map)

    def __repr__(self):
        return 'ConstructionProtocol(n={}, depth={}, steps={})'.format(
            self.initial.n, self.depth, len(self.steps))

    def __str__(self):
        return ', '.join(str(step) for step in self.steps) or 'no steps'

    def final_graph(self):
        """Graph reached by the steps, before the final relabeling."""
        graph = self.initial
        for step in self.steps:
            if isinstance(step, LCStep):
                graph = orb.local_complement(graph, step.vertex)
            else:
                graph = fus.fuse_graph(graph, step.a, step.b).graph
        return graph


class ReplayOutcome:
    """Result of a stabilizer replay; evaluates to True on success."""

    def __init__(self, success, step=None, message=''):
        """Class constructor.

        Args:
            success: Whether the replay reproduced the target.
            step: Index of the first diverging step; len(steps) denotes the final comparison.
            message: Diagnostic text.
        """

        self.success = success
        self.step = step
        self.message = message

    def __bool__(self):
        return self.success

    def __repr__(self):
        return 'ReplayOutcome(success={}, step={}, message={!r})'.format(
            self.success, self.step, self.message)


def lookup(table, target):
    """Finds the stored member isomorphic to a target graph.

    Returns:
        Tuple (orbit id, member index, vertex map from the member onto target), or None.
    """

    return table.find(target)


def construct(table, target):
    """Assembles an optimal construction of a target graph state from the table.

    The parent links are followed back to an orbit of depth 0. Starting from its caterpillar
    member, local complementations lead to the parent member of each link, which is then fused.
    A last sequence of local complementations and a relabeling reach the target.

    Args:
        table: Tablebase.
        target: Graph to construct.

    Returns:
        ConstructionProtocol with as many fusions as the depth of the target's orbit.
    """

    found = table.find(target)
    if found is None:
        raise NotInTablebaseError('Graph {} is not in the table.'.format(target.graph6()))
    chain = table.ancestry(found[0])
    initial = chain[0].members[chain[0].caterpillar_member()]
    current = initial
    steps = []

    def walk_to(graph):
        nonlocal current
        path, vertex_map = orb.lc_path(current, graph)
        for v in path:
            steps.append(LCStep(v))
            current = orb.local_complement(current, v)
        return vertex_map

    for child in chain[1:]:
        link = child.parent_link
        parent = table.orbits[link.parent_orbit].members[link.parent_member]
        back = walk_to(parent).inverse()
        a, b = back[link.pair[0]], back[link.pair[1]]
        fused = fus.fuse_graph(current, a, b)
        steps.append(FuseStep(a, b, None if fused.frame.is_identity() else fused.frame))
        current = fused.graph
    final_map = walk_to(target)
    protocol = ConstructionProtocol(initial, steps, final_map)
    logger.debug('Constructed {} with {} fusions: {}.'.format(target.graph6(), protocol.depth,
                                                               protocol))
    return protocol


def _fuse_tableau(tableau, n, a, b):
    for parity in fus.DEFAULT_KIND.paulis(n, a, b):
        if tableau.expectation(parity) == 0:
            tableau.measure(parity, force=1)
    return tableau.delete([a, b])


def replay_verify(protocol, target):
    """Replays a protocol on stabilizer tableaux.

    The initial caterpillars are emitted photon by photon, local complementations are applied
    as single-qubit gates and fusions as parity measurements followed by the inverse frame.
    After every fusion the state must be the graph state of the tracked graph.

    Args:
        protocol: ConstructionProtocol.
        target: Graph the protocol claims to construct.

    Returns:
        ReplayOutcome.
    """

    try:
        tableau = stb.prepare_caterpillars(protocol.initial)
    except ValueError as error:
        return ReplayOutcome(False, None, 'Initial state: {}'.format(error))
    graph = protocol.initial
    for index, step in enumerate(protocol.steps):
        try:
            if isinstance(step, LCStep):
                stb.lc_unitary(tableau, graph, step.vertex)
                graph = orb.local_complement(graph, step.vertex)
                continue
            tableau = _fuse_tableau(tableau, graph.n, step.a, step.b)
            if step.frame is not None:
                step.frame.inverse().apply(tableau)
            graph = fus.fuse_graph(graph, step.a, step.b).graph
        except ValueError as error:
            return ReplayOutcome(False, index, str(error))
        if not tableau.same_state(stb.graph_to_tableau(graph)):
            return ReplayOutcome(False, index, 'State after {} is not the graph state of {}.'
                                 .format(step, graph.graph6()))
    final = len(protocol.steps)
    if graph.n != target.n or not protocol.final_map.is_permutation(graph.n):
        return ReplayOutcome(False, final, 'Final map does not match the target size.')
    tableau = tableau.relabel(protocol.final_map)
    if not tableau.same_state(stb.graph_to_tableau(target)):
        return ReplayOutcome(False, final, 'Final state is not the target graph state.')
    return ReplayOutcome(True)


def export_protocol(protocol):
    """Serializes a protocol to JSON bytes."""
    steps = []
    for step in protocol.steps:
        if isinstance(step, LCStep):
            steps.append({'op': 'LC', 'v': step.vertex})
        else:
            entry = {'op': 'FUSE', 'a': step.a, 'b': step.b}
            if step.has_frame:
                entry['frame'] = list(step.frame.elements)
            steps.append(entry)
    document = {
        'initial': protocol.initial.graph6(),
        'steps': steps,
        'map': protocol.final_map.as_list(),
        'depth': protocol.depth,
    }
    return json.dumps(document, sort_keys=True).encode('utf-8')


def import_protocol(data):
    """Reads a protocol written by export_protocol.

    Args:
        data: JSON bytes or text.

    Returns:
        ConstructionProtocol.
    """

    if isinstance(data, bytes):
        data = data.decode('utf-8')
    try:
        document = json.loads(data)
        initial = grs.read_graph(document['initial'].encode('ascii'))
        steps = []
        for entry in document['steps']:
            if entry['op'] == 'LC':
                steps.append(LCStep(int(entry['v'])))
            elif entry['op'] == 'FUSE':
                frame = entry.get('frame')
                steps.append(FuseStep(int(entry['a']), int(entry['b']),
                                      stb.LocalCliffordFrame(frame) if frame else None))
            else:
                raise ValueError('Unknown protocol step {!r}.'.format(entry['op']))
        protocol = ConstructionProtocol(initial, steps, grs.VertexMap(document['map']))
    except (KeyError, TypeError, json.JSONDecodeError) as error:
        raise ValueError('Malformed protocol: {}'.format(error)) from error
    if 'depth' in document and document['depth'] != protocol.depth:
        raise ValueError('Protocol declares depth {} but contains {} fusions.'
                         .format(document['depth'], protocol.depth))
    return protocol
