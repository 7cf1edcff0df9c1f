import logging as lo
import numpy as np
import scipy.optimize as so
from . import graphs as grs
from . import stabilizers as stb
from . import tablebase as tbs

__all__ = [
    'LOGICALS', 'MAX_CODE_QUBITS', 'GraphCode', 'LossCurve', 'make_code', 'best_code',
    'pattern_recoverable', 'loss_curve', 'loss_curves', 'code_threshold', 'search_codes',
]

logger = lo.getLogger('pyfgs')

LOGICALS = ('X', 'Y', 'Z')
MAX_CODE_QUBITS = 16


class GraphCode:
    """Code on the graph state of a progenitor graph without its encoding vertex.

    The logical X operator is the product of Z on the inputs (the neighbors of the encoding
    vertex) and the logical Z operator is the graph state stabilizer of the chosen input i*.
    Qubits are labeled 0..n-2 in the order of the remaining progenitor vertices.
    """

    def __init__(self, progenitor, delta, i_star):
        """Class constructor.

        Args:
            progenitor: Graph including the encoding vertex.
            delta: Encoding vertex.
            i_star: Neighbor of delta whose stabilizer becomes the logical Z.
        """

        if not 0 <= delta < progenitor.n:
            raise ValueError('Encoding vertex {} out of range.'.format(delta))
        if not progenitor.adj[delta]:
            raise ValueError('Encoding vertex {} is isolated.'.format(delta))
        if not progenitor.has_edge(delta, i_star):
            raise ValueError('Vertex {} is not a neighbor of the encoding vertex {}.'
                             .format(i_star, delta))
        self.progenitor = progenitor
        self.delta = delta
        self.physical = [v for v in range(progenitor.n) if v != delta]
        position = {v: i for i, v in enumerate(self.physical)}
        self.graph = grs.induced_subgraph(progenitor, self.physical)
        self.inputs = sorted(position[v] for v in progenitor.neighbors(delta))
        self.i_star = position[i_star]

        m = self.num_qubits
        stabilizers = [stb.PauliString(m, 1 << i, self.graph.adj[i]) for i in range(m)]
        self.logical_x = stb.PauliString.z_on(m, self.inputs)
        self.logical_z = stabilizers[self.i_star]
        self.generators = [s if i not in self.inputs else s * self.logical_z
                           for i, s in enumerate(stabilizers) if i != self.i_star]
        self._supports = {}
        self._check()

    @property
    def num_qubits(self):
        return self.graph.n

    def _check(self):
        if self.logical_x.commutes(self.logical_z):
            raise RuntimeError('Logical operators commute.')
        for generator in self.generators:
            if not (generator.commutes(self.logical_x) and generator.commutes(self.logical_z)):
                raise RuntimeError('Generator {} does not commute with the logicals.'
                                   .format(generator))

    def logical(self, name):
        """Logical Pauli operator 'X', 'Y' or 'Z'."""
        if name == 'X':
            return self.logical_x
        if name == 'Z':
            return self.logical_z
        if name == 'Y':
            return self.logical_x * self.logical_z
        raise ValueError('Unknown logical operator {}.'.format(name))

    def supports(self, name):
        """Supports of all representatives logical * S with S in the code stabilizer group.

        Returns:
            numpy int64 array of bit masks.
        """

        if name not in self._supports:
            if self.num_qubits > MAX_CODE_QUBITS:
                raise tbs.ResourceLimitError('Codes on more than {} qubits are not enumerated.'
                                             .format(MAX_CODE_QUBITS))
            xs = np.zeros(1, dtype=np.int64)
            zs = np.zeros(1, dtype=np.int64)
            for generator in self.generators:
                xs = np.concatenate([xs, xs ^ generator.x_mask])
                zs = np.concatenate([zs, zs ^ generator.z_mask])
            logical = self.logical(name)
            self._supports[name] = (xs ^ logical.x_mask) | (zs ^ logical.z_mask)
        return self._supports[name]

    def __repr__(self):
        return 'GraphCode(progenitor={!r}, delta={}, i_star={})'.format(
            self.progenitor.graph6(), self.delta, self.physical[self.i_star])

    def to_dict(self):
        return {
            'progenitor': self.progenitor.graph6(),
            'delta': self.delta,
            'i_star': self.physical[self.i_star],
            'num_qubits': self.num_qubits,
            'graph': self.graph.graph6(),
            'inputs': [self.physical[i] for i in self.inputs],
        }


class LossCurve:
    """Logical loss rate of a logical Pauli measurement as a polynomial in the physical loss
    rate."""

    def __init__(self, coefficients, logical=None):
        """Class constructor.

        Args:
            coefficients: Number c_k of loss patterns of size k that make the logical
                unmeasurable, for k = 0..n.
            logical: Name of the logical operator.
        """

        self.coefficients = np.asarray(coefficients, dtype=np.int64)
        self.logical = logical

    @property
    def num_qubits(self):
        return len(self.coefficients) - 1

    def __call__(self, epsilon):
        """Logical loss rate sum_k c_k eps^k (1 - eps)^(n - k)."""
        epsilon = np.asarray(epsilon, dtype=float)
        k = np.arange(len(self.coefficients))
        terms = self.coefficients * epsilon[..., None] ** k * \
            (1 - epsilon[..., None]) ** (self.num_qubits - k)
        return terms.sum(axis=-1)

    def threshold(self, tolerance=1e-4, grid_points=500):
        """Smallest positive physical loss rate at which the logical loss rate reaches it.

        Returns:
            Threshold in [0, 0.5]; 0 if the code never beats an unencoded qubit, 0.5 if it does
            on all of (0, 0.5).
        """

        def excess(epsilon):
            return float(self(epsilon)) - epsilon

        grid = np.linspace(0, 0.5, grid_points + 1)[1:]
        values = self(grid) - grid
        crossed = np.flatnonzero(values >= 0)
        if not crossed.size:
            return 0.5
        if crossed[0] == 0:
            return 0.0
        lower, upper = grid[crossed[0] - 1], grid[crossed[0]]
        return so.brentq(excess, lower, upper, xtol=tolerance)

    def __repr__(self):
        return 'LossCurve(logical={!r}, coefficients={})'.format(self.logical,
                                                                 self.coefficients.tolist())


def make_code(progenitor, delta, i_star):
    return GraphCode(progenitor, delta, i_star)


def pattern_recoverable(code, logical, lost):
    """Checks whether a logical Pauli stays measurable after losing some qubits, i.e. whether
    some representative avoids all lost qubits.

    Args:
        code: GraphCode.
        logical: 'X', 'Y' or 'Z'.
        lost: Lost physical qubits (code labels).
    """

    lost = set(lost)
    if any(not 0 <= q < code.num_qubits for q in lost):
        raise ValueError('Lost qubits {} outside of the code.'.format(sorted(lost)))
    mask = sum(1 << q for q in lost)
    return bool(((code.supports(logical) & mask) == 0).any())


def loss_curve(code, logical):
    """Exact loss curve by enumerating all loss patterns.

    A pattern is recoverable iff its complement contains the support of a representative, which
    is decided for all patterns at once by closing the set of supports under supersets.

    Args:
        code: GraphCode.
        logical: 'X', 'Y' or 'Z'.

    Returns:
        LossCurve.
    """

    m = code.num_qubits
    size = 1 << m
    covered = np.zeros(size, dtype=bool)
    covered[code.supports(logical)] = True
    for bit in range(m):
        view = covered.reshape(-1, 2, 1 << bit)
        view[:, 1, :] |= view[:, 0, :]
    kept = np.zeros(size, dtype=np.int64)
    for bit in range(m):
        kept += (np.arange(size) >> bit) & 1
    coefficients = np.bincount(m - kept[~covered], minlength=m + 1)
    return LossCurve(coefficients, logical)


def loss_curves(code):
    """Loss curves of the logical X, Y and Z measurements."""
    return {name: loss_curve(code, name) for name in LOGICALS}


def code_threshold(code):
    """Loss threshold of a code, the smallest threshold of its three logical measurements."""
    return min(curve.threshold() for curve in loss_curves(code).values())


def best_code(progenitor, delta):
    """Code with the largest threshold over all choices of i*.

    Returns:
        Tuple (GraphCode, threshold); ties go to the smallest i*.
    """

    best = None
    for i_star in progenitor.neighbors(delta):
        code = GraphCode(progenitor, delta, i_star)
        threshold = code_threshold(code)
        if best is None or threshold > best[1]:
            best = code, threshold
    return best


def search_codes(table, max_nodes, fusion_budget, limit=None):
    """Ranks the codes of all connected table graphs as progenitors.

    Args:
        table: Tablebase.
        max_nodes: Largest progenitor vertex count (encoding vertex included).
        fusion_budget: Largest orbit depth.
        limit: Number of codes to return. Defaults to all.

    Returns:
        List of (GraphCode, threshold) by decreasing threshold, then increasing size.
    """

    ranked = []
    for orbit in table.orbits:
        if orbit.depth > fusion_budget or not 2 <= orbit.num_vertices <= max_nodes:
            continue
        if not orbit.is_connected():
            continue
        for member in orbit.members:
            for delta in range(member.n):
                ranked.append(best_code(member, delta))
    logger.info('Evaluated {} codes with at most {} nodes and {} fusions.'
                .format(len(ranked), max_nodes, fusion_budget))
    ranked.sort(key=lambda entry: (-round(entry[1], 6), entry[0].progenitor.n,
                                   grs.wl_hash(entry[0].progenitor),
                                   entry[0].progenitor.graph6(), entry[0].delta))
    return ranked[:limit] if limit is not None else ranked
