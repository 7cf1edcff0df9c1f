import datetime
import itertools
import json
import logging as lo
import multiprocessing as mp
import numpy as np
import struct
import time
import zlib
from . import fusions as fus
from . import graphs as grs
from . import orbits as orb
from . import stabilizers as stb

__all__ = [
    'FORMAT_VERSION', 'Tablebase', 'BuildStats', 'ProgressLogger', 'ResourceLimitError',
    'TablebaseFormatError', 'TablebaseVersionError', 'TablebaseChecksumError',
    'TablebaseIntegrityError', 'build', 'save', 'load', 'stats',
]

logger = lo.getLogger('pyfgs')

FORMAT_VERSION = 1
_MAGIC = b'PYFGSTB\x00'
_HEADER = struct.Struct('<8sHHII')
_SECTION = struct.Struct('<QI')
_CRC = struct.Struct('<I')
_ORBIT = struct.Struct('<HI')
_LINK = struct.Struct('<IIBBI')


class ResourceLimitError(RuntimeError):
    """Raised when a computation exceeds a configured size limit."""

    def __init__(self, message, tablebase=None):
        """Class constructor.

        Args:
            message: Description of the exceeded limit.
            tablebase: Partially built table at the time of the error, if any.
        """

        super().__init__(message)
        self.tablebase = tablebase


class TablebaseFormatError(ValueError):
    """Raised for files that are not valid table files."""


class TablebaseVersionError(TablebaseFormatError):
    """Raised for table files written in another format version."""


class TablebaseChecksumError(TablebaseFormatError):
    """Raised for truncated or corrupted table files."""


class TablebaseIntegrityError(TablebaseFormatError):
    """Raised if the stored orbit tree violates its invariants."""


class ProgressLogger:
    """Class to easily log progress in percentage without double messages and at a specified
    increment."""

    def __init__(self, num_steps, log_increment=5, logger_instance=None, task='Working'):
        """Class constructor.

        Args:
            num_steps: Number of steps for the task to complete.
            log_increment: Increment in percent at which messages are to be send. Defaults to 5.
            logger_instance: Logger to log to. Defaults to module level logger.
            task: Text that starts every message.
        """
        self.num_steps = max(num_steps, 1)
        self.log_increment = log_increment
        self.logger = logger_instance if logger_instance else logger
        self.task = task
        self._last_message_at = None

    def log(self, current_step):
        """Check if the task cleared another log increment and send a log message accordingly.

        Args:
            current_step: Number of completed steps.
        """

        percent = int(current_step / self.num_steps * 100)
        percent -= percent % self.log_increment
        if percent != self._last_message_at:
            self.logger.info('{}. {} % completed.'.format(self.task, percent))
            self._last_message_at = percent


class BuildStats:
    """Counters describing a table."""

    def __init__(self, graphs_total, orbits_total, orbits_by_depth, connected_orbits_by_depth,
                 connected_orbits_by_size, adjacent_pair_fusions):
        """Class constructor.

        Args:
            graphs_total: Number of stored graphs (orbit members).
            orbits_total: Number of orbits.
            orbits_by_depth: Dictionary from depth to number of orbits.
            connected_orbits_by_depth: Same, counting orbits of connected graphs only.
            connected_orbits_by_size: Dictionary from vertex count to a dictionary from depth to
                number of connected orbits.
            adjacent_pair_fusions: Number of links fusing two adjacent vertices.
        """

        self.graphs_total = graphs_total
        self.orbits_total = orbits_total
        self.orbits_by_depth = orbits_by_depth
        self.connected_orbits_by_depth = connected_orbits_by_depth
        self.connected_orbits_by_size = connected_orbits_by_size
        self.adjacent_pair_fusions = adjacent_pair_fusions

    def to_dict(self):
        return {
            'graphs_total': self.graphs_total,
            'orbits_total': self.orbits_total,
            'orbits_by_depth': {str(k): v for k, v in sorted(self.orbits_by_depth.items())},
            'connected_orbits_by_depth': {str(k): v for k, v in
                                          sorted(self.connected_orbits_by_depth.items())},
            'connected_orbits_by_size': {
                str(n): {str(k): v for k, v in sorted(depths.items())}
                for n, depths in sorted(self.connected_orbits_by_size.items())},
            'adjacent_pair_fusions': self.adjacent_pair_fusions,
        }

    def __eq__(self, other):
        return isinstance(other, BuildStats) and self.to_dict() == other.to_dict()

    def __repr__(self):
        return 'BuildStats({})'.format(self.to_dict())


class Tablebase:
    """Tree of orbits with minimum fusion depths and a hash index over all members."""

    def __init__(self, max_initial_qubits, metadata=None):
        """Class constructor.

        Args:
            max_initial_qubits: Largest number of qubits of the initial caterpillar states.
            metadata: Dictionary of build information (not part of the table's content).
        """

        self.max_initial_qubits = max_initial_qubits
        self.orbits = []
        self.index = grs.GraphIndex()
        self.metadata = dict(metadata or {})

    def __len__(self):
        return len(self.orbits)

    @property
    def num_graphs(self):
        return len(self.index)

    @property
    def max_depth(self):
        return max((orbit.depth for orbit in self.orbits), default=0)

    def add_orbit(self, orbit, depth, parent_link=None):
        """Stores a new orbit and indexes its members.

        Returns:
            Id of the orbit.
        """

        orbit.id = len(self.orbits)
        orbit.depth = depth
        orbit.parent_link = parent_link
        self.orbits.append(orbit)
        for position, member in enumerate(orbit.members):
            self.index.add(member, (orbit.id, position))
        return orbit.id

    def find(self, graph):
        """Looks up a graph.

        Returns:
            Tuple (orbit id, member index, vertex map from the member onto the graph), or None.
        """

        found = self.index.find(graph)
        if found is None:
            return None
        (orbit_id, position), vertex_map = found
        return orbit_id, position, vertex_map

    def ancestry(self, orbit_id):
        """Orbits on the path from a depth-0 orbit to the given orbit, root first."""
        chain = [self.orbits[orbit_id]]
        while chain[-1].parent_link is not None:
            chain.append(self.orbits[chain[-1].parent_link.parent_orbit])
        return chain[::-1]


def _fusion_candidates(members):
    """Distinct (up to isomorphism) non-degenerate default fusion results of an orbit.

    Returns:
        List of tuples (member index, a, b, graph, frame), first occurrence per result.
    """

    seen = grs.GraphIndex()
    result = []
    for position, member in enumerate(members):
        if member.n < 3:
            continue
        for a, b in itertools.combinations(range(member.n), 2):
            if fus.fusion_is_degenerate(member, a, b):
                continue
            fused = fus.fuse_graph(member, a, b)
            if seen.insert_if_absent(fused.graph, None) is None:
                result.append((position, a, b, fused.graph, fused.frame))
    return result


def build(max_initial_qubits, processes=None, max_graphs=None, log_increment=10):
    """Builds the table of minimum fusion constructions.

    All caterpillars and sets of detached caterpillars with at most max_initial_qubits qubits
    seed the orbits of depth 0. Layer k+1 consists of the new orbits reached by one fusion from
    a member of an orbit in layer k; every orbit keeps the first link that reached it.

    Args:
        max_initial_qubits: Largest number of initial qubits (1 to MAX_VERTICES).
        processes: Number of worker processes for the fusions of a layer. Defaults to serial.
        max_graphs: Abort with ResourceLimitError once more graphs are stored.
        log_increment: Progress log increment in percent.

    Returns:
        Tablebase.
    """

    if not 1 <= max_initial_qubits <= grs.MAX_VERTICES:
        raise ValueError('Initial qubit count {} outside of 1..{}.'
                         .format(max_initial_qubits, grs.MAX_VERTICES))
    started = time.time()
    table = Tablebase(max_initial_qubits)

    def check_limit():
        if max_graphs is not None and table.num_graphs > max_graphs:
            raise ResourceLimitError('Table exceeds {} graphs.'.format(max_graphs), table)

    seeds = [c for n in range(1, max_initial_qubits + 1) for c in grs.enumerate_caterpillars(n)]
    seeds += grs.enumerate_detached_caterpillars(max_initial_qubits)
    logger.info('Seeding table with {} caterpillar sets.'.format(len(seeds)))
    for seed in seeds:
        if table.find(seed) is None:
            table.add_orbit(orb.enumerate_orbit(seed), 0)
            check_limit()
    frontier = [orbit.id for orbit in table.orbits]
    logger.info('Layer 0 completed, {} orbits.'.format(len(frontier)))

    pool = mp.Pool(processes) if processes and processes > 1 else None
    fusions_applied = 0
    layer_seconds = []
    depth = 0
    try:
        while frontier:
            layer_started = time.time()
            progress = ProgressLogger(len(frontier), log_increment,
                                      task='Expanding layer {}'.format(depth))
            work = (table.orbits[orbit_id].members for orbit_id in frontier)
            if pool:
                results = pool.imap(_fusion_candidates, work, chunksize=16)
            else:
                results = map(_fusion_candidates, work)
            new = []
            for step, (orbit_id, candidates) in enumerate(zip(frontier, results)):
                for position, a, b, graph, frame in candidates:
                    fusions_applied += 1
                    if table.find(graph) is not None:
                        continue
                    link = orb.FusionLink(orbit_id, position, (a, b), 0,
                                          grs.VertexMap.identity(graph.n), frame)
                    new.append(table.add_orbit(orb.enumerate_orbit(graph), depth + 1, link))
                    check_limit()
                progress.log(step + 1)
            depth += 1
            layer_seconds.append(round(time.time() - layer_started, 3))
            logger.info('Layer {} completed, {} new orbits in {:.1f} s.'
                        .format(depth, len(new), layer_seconds[-1]))
            frontier = new
    finally:
        if pool:
            pool.close()
            pool.join()

    table.metadata.update({
        'format_version': FORMAT_VERSION,
        'created': datetime.datetime.now(datetime.timezone.utc).isoformat(),
        'build_seconds': round(time.time() - started, 3),
        'distinct_fusion_results': fusions_applied,
        'layer_seconds': layer_seconds,
    })
    logger.info('Table with {} orbits and {} graphs built in {:.1f} s.'
                .format(len(table), table.num_graphs, time.time() - started))
    return table


def stats(table, connected_only=False):
    """Counters of a table.

    Args:
        table: Tablebase.
        connected_only: Restrict the totals to orbits of connected graphs.

    Returns:
        BuildStats.
    """

    graphs_total = orbits_total = adjacent = 0
    by_depth, connected_by_depth, connected_by_size = {}, {}, {}
    for orbit in table.orbits:
        connected = orbit.is_connected()
        if connected:
            connected_by_depth[orbit.depth] = connected_by_depth.get(orbit.depth, 0) + 1
            sizes = connected_by_size.setdefault(orbit.num_vertices, {})
            sizes[orbit.depth] = sizes.get(orbit.depth, 0) + 1
        if connected_only and not connected:
            continue
        by_depth[orbit.depth] = by_depth.get(orbit.depth, 0) + 1
        orbits_total += 1
        graphs_total += len(orbit.members)
        link = orbit.parent_link
        if link is not None:
            parent = table.orbits[link.parent_orbit].members[link.parent_member]
            adjacent += parent.has_edge(*link.pair)
    return BuildStats(graphs_total, orbits_total, by_depth, connected_by_depth,
                      connected_by_size, adjacent)


def _section(payload):
    return _SECTION.pack(len(payload), zlib.crc32(payload)) + payload


def save(table, path):
    """Writes a table to a little-endian binary file.

    Args:
        table: Tablebase to write.
        path: File name.
    """

    metadata = json.dumps(table.metadata, sort_keys=True).encode('utf-8')
    orbits = bytearray()
    links = bytearray()
    for orbit in table.orbits:
        orbits += _ORBIT.pack(orbit.depth, len(orbit.members))
        for member in orbit.members:
            orbits += struct.pack('<B', member.n)
            orbits += np.asarray(member.adj, dtype='<u4').tobytes()
        link = orbit.parent_link
        if link is None:
            links += b'\x00'
            continue
        links += b'\x01' + _LINK.pack(link.parent_orbit, link.parent_member, link.pair[0],
                                      link.pair[1], link.child_member)
        links += struct.pack('<B', len(link.relabel)) + bytes(link.relabel.as_list())
        links += struct.pack('<B', len(link.frame)) + bytes(link.frame.elements)
    header = _HEADER.pack(_MAGIC, FORMAT_VERSION, table.max_initial_qubits, len(table.orbits),
                          table.num_graphs)
    with open(path, 'wb') as file:
        file.write(header + _CRC.pack(zlib.crc32(header)))
        for payload in (metadata, bytes(orbits), bytes(links)):
            file.write(_section(payload))
    logger.info('Table with {} orbits written to {}.'.format(len(table), path))


class _Reader:
    """Cursor over the bytes of a section."""

    def __init__(self, data):
        self.data = data
        self.offset = 0

    def take(self, size):
        if self.offset + size > len(self.data):
            raise TablebaseChecksumError('Unexpected end of data at byte {}.'
                                         .format(self.offset))
        chunk = self.data[self.offset:self.offset + size]
        self.offset += size
        return chunk

    def unpack(self, layout):
        return layout.unpack(self.take(layout.size))


def load(path, deep_check=False):
    """Reads a table file and validates its orbit tree.

    Args:
        path: File name.
        deep_check: Additionally replay every fusion link.

    Returns:
        Tablebase.
    """

    with open(path, 'rb') as file:
        reader = _Reader(file.read())
    header = reader.take(_HEADER.size)
    magic, version, max_initial_qubits, num_orbits, num_graphs = _HEADER.unpack(header)
    if magic != _MAGIC:
        raise TablebaseFormatError('{} is not a table file.'.format(path))
    if reader.unpack(_CRC)[0] != zlib.crc32(header):
        raise TablebaseChecksumError('Header checksum mismatch in {}.'.format(path))
    if version != FORMAT_VERSION:
        raise TablebaseVersionError('Table format version {} is not supported (expected {}).'
                                    .format(version, FORMAT_VERSION))
    sections = []
    for name in ('metadata', 'orbits', 'links'):
        length, checksum = reader.unpack(_SECTION)
        payload = reader.take(length)
        if zlib.crc32(payload) != checksum:
            raise TablebaseChecksumError('Checksum mismatch in {} section.'.format(name))
        sections.append(payload)

    table = Tablebase(max_initial_qubits, json.loads(sections[0].decode('utf-8')))
    orbits_data, links_data = _Reader(sections[1]), _Reader(sections[2])
    for _ in range(num_orbits):
        depth, num_members = orbits_data.unpack(_ORBIT)
        members = []
        for _ in range(num_members):
            n = orbits_data.take(1)[0]
            rows = np.frombuffer(orbits_data.take(4 * n), dtype='<u4')
            members.append(grs.Graph._from_rows(n, (int(row) for row in rows)))
        link = None
        if links_data.take(1) == b'\x01':
            parent, parent_member, a, b, child_member = links_data.unpack(_LINK)
            relabel = grs.VertexMap(list(links_data.take(links_data.take(1)[0])))
            frame = stb.LocalCliffordFrame(list(links_data.take(links_data.take(1)[0])))
            link = orb.FusionLink(parent, parent_member, (a, b), child_member, relabel, frame)
        table.add_orbit(orb.Orbit(members), depth, link)
    if table.num_graphs != num_graphs:
        raise TablebaseIntegrityError('Header announces {} graphs, found {}.'
                                      .format(num_graphs, table.num_graphs))
    _check_tree(table)
    if deep_check:
        _check_links(table)
    logger.info('Table with {} orbits loaded from {}.'.format(len(table), path))
    return table


def _check_tree(table):
    for orbit in table.orbits:
        link = orbit.parent_link
        if orbit.depth == 0:
            if link is not None:
                raise TablebaseIntegrityError('Depth-0 orbit {} has a parent.'.format(orbit.id))
            if orbit.caterpillar_member() is None:
                raise TablebaseIntegrityError('Depth-0 orbit {} contains no caterpillars.'
                                              .format(orbit.id))
            continue
        if link is None or not 0 <= link.parent_orbit < orbit.id:
            raise TablebaseIntegrityError('Orbit {} lacks a valid parent.'.format(orbit.id))
        parent = table.orbits[link.parent_orbit]
        if parent.depth != orbit.depth - 1:
            raise TablebaseIntegrityError('Orbit {} at depth {} has a parent at depth {}.'
                                          .format(orbit.id, orbit.depth, parent.depth))
        if not (link.parent_member < len(parent.members) and
                link.child_member < len(orbit.members)):
            raise TablebaseIntegrityError('Link into orbit {} references missing members.'
                                          .format(orbit.id))


def _check_links(table):
    for orbit in table.orbits:
        link = orbit.parent_link
        if link is None:
            continue
        parent = table.orbits[link.parent_orbit].members[link.parent_member]
        fused = fus.fuse_graph(parent, *link.pair)
        if fused.graph.relabel(link.relabel) != orbit.members[link.child_member]:
            raise TablebaseIntegrityError('Link into orbit {} does not replay.'.format(orbit.id))
