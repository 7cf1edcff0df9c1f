import logging as lo
import numpy as np
from . import gf2
from . import graphs as grs

__all__ = [
    'GATES', 'EMIT_MODES', 'PauliString', 'Tableau', 'LocalCliffordFrame', 'graph_to_tableau',
    'apply_clifford', 'measure_pauli', 'delete_qubits', 'tableau_to_graph', 'emit_photon',
    'entanglement_entropy', 'lc_unitary', 'emission_sequence', 'emission_graph',
    'prepare_caterpillars',
]

logger = lo.getLogger('pyfgs')

GATES = ('H', 'R', 'Z', 'X', 'CZ', 'CNOT')
EMIT_MODES = ('leaf_photon', 'leaf_spin')

_SIGNS = {0: '+', 1: 'i', 2: '-', 3: '-i'}


def _popcount(mask):
    return bin(mask).count('1')


def _mask_phase(x1, z1, x2, z2):
    """Exponent of i picked up by the product of two Pauli strings given as bit masks, with Y
    represented by set x and z bits."""
    y1, xo1, zo1 = x1 & z1, x1 & ~z1, z1 & ~x1
    return (_popcount(y1 & z2 & ~x2) - _popcount(y1 & x2 & ~z2)
            + _popcount(xo1 & x2 & z2) - _popcount(xo1 & z2 & ~x2)
            + _popcount(zo1 & x2 & ~z2) - _popcount(zo1 & x2 & z2))


def _row_phase(x1, z1, x2, z2):
    """Same as _mask_phase for boolean numpy rows."""
    y1, xo1, zo1 = x1 & z1, x1 & ~z1, z1 & ~x1
    return int(np.count_nonzero(y1 & z2 & ~x2)) - int(np.count_nonzero(y1 & x2 & ~z2)) \
        + int(np.count_nonzero(xo1 & x2 & z2)) - int(np.count_nonzero(xo1 & z2 & ~x2)) \
        + int(np.count_nonzero(zo1 & x2 & ~z2)) - int(np.count_nonzero(zo1 & x2 & z2))


def _to_bits(mask, n):
    return np.array([(mask >> q) & 1 for q in range(n)], dtype=bool)


def _to_mask(bits):
    return sum(1 << int(q) for q in np.flatnonzero(bits))


class PauliString:
    """Pauli operator i^phase * P_0 P_1 ... on n qubits, where a qubit with both the x and the z
    bit set carries a Y."""

    __slots__ = ('n', 'x_mask', 'z_mask', 'phase')

    def __init__(self, n, x_mask=0, z_mask=0, phase=0):
        """Class constructor.

        Args:
            n: Number of qubits.
            x_mask: Bit mask of qubits with an X or Y.
            z_mask: Bit mask of qubits with a Z or Y.
            phase: Exponent of the prefactor i (0 for +1, 1 for +i, 2 for -1, 3 for -i).
        """

        full = (1 << n) - 1
        if (x_mask | z_mask) & ~full:
            raise ValueError('Pauli masks exceed {} qubits.'.format(n))
        self.n = n
        self.x_mask = x_mask
        self.z_mask = z_mask
        self.phase = phase % 4

    @classmethod
    def from_str(cls, text):
        """Parses strings like '-XZIY' or '+iXX'."""
        phase = 0
        for prefix, value in (('-i', 3), ('+i', 1), ('i', 1), ('-', 2), ('+', 0)):
            if text.startswith(prefix):
                phase = value
                text = text[len(prefix):]
                break
        x_mask = z_mask = 0
        for q, letter in enumerate(text):
            if letter not in 'IXYZ':
                raise ValueError('Unknown Pauli letter {}.'.format(letter))
            x_mask |= (letter in 'XY') << q
            z_mask |= (letter in 'ZY') << q
        return cls(len(text), x_mask, z_mask, phase)

    @classmethod
    def single(cls, n, qubit, letter):
        """Single-qubit Pauli X, Y or Z on one of n qubits."""
        return cls(n, (letter in 'XY') << qubit, (letter in 'ZY') << qubit)

    @classmethod
    def z_on(cls, n, qubits):
        """Product of Z operators on the given qubits."""
        return cls(n, 0, sum(1 << q for q in qubits))

    @property
    def sign(self):
        return {0: 1, 1: 1j, 2: -1, 3: -1j}[self.phase]

    @property
    def support(self):
        return self.x_mask | self.z_mask

    @property
    def weight(self):
        return _popcount(self.support)

    def is_hermitian(self):
        return self.phase % 2 == 0

    def letter(self, qubit):
        return 'IXZY'[(self.x_mask >> qubit & 1) + 2 * (self.z_mask >> qubit & 1)]

    def __str__(self):
        return _SIGNS[self.phase] + ''.join(self.letter(q) for q in range(self.n))

    def __repr__(self):
        return 'PauliString({!r})'.format(str(self))

    def __eq__(self, other):
        return isinstance(other, PauliString) and \
            (self.n, self.x_mask, self.z_mask, self.phase) == \
            (other.n, other.x_mask, other.z_mask, other.phase)

    def __hash__(self):
        return hash((self.n, self.x_mask, self.z_mask, self.phase))

    def __mul__(self, other):
        if self.n != other.n:
            raise ValueError('Pauli strings act on {} and {} qubits.'.format(self.n, other.n))
        phase = self.phase + other.phase + _mask_phase(self.x_mask, self.z_mask, other.x_mask,
                                                       other.z_mask)
        return PauliString(self.n, self.x_mask ^ other.x_mask, self.z_mask ^ other.z_mask, phase)

    def __neg__(self):
        return PauliString(self.n, self.x_mask, self.z_mask, self.phase + 2)

    def commutes(self, other):
        return _popcount((self.x_mask & other.z_mask) ^ (self.z_mask & other.x_mask)) % 2 == 0

    def unsigned(self):
        return PauliString(self.n, self.x_mask, self.z_mask)


def _conjugate_single(gate, x, z, phase):
    """Conjugation of a single-qubit Pauli (x, z, phase) by the gate H or R."""
    phase = (phase + 2 * (x & z)) % 4
    if gate == 'H':
        return z, x, phase
    return x, z ^ x, phase


def _build_clifford_table():
    identity = ((1, 0, 0), (0, 1, 0))
    keys = [identity]
    words = [()]
    position = 0
    while position < len(keys):
        images = keys[position]
        for gate in ('H', 'R'):
            key = tuple(_conjugate_single(gate, *image) for image in images)
            if key not in keys:
                keys.append(key)
                words.append(words[position] + (gate,))
        position += 1
    lookup = {key: index for index, key in enumerate(keys)}
    compose = np.zeros((len(keys), len(keys)), dtype=np.int64)
    for a, key in enumerate(keys):
        for b, word in enumerate(words):
            images = key
            for gate in word:
                images = tuple(_conjugate_single(gate, *image) for image in images)
            compose[a, b] = lookup[images]
    inverse = [int(np.flatnonzero(compose[a] == 0)[0]) for a in range(len(keys))]
    return tuple(words), compose, inverse


# the 24 single-qubit Cliffords up to global phase: shortest H/R words, composition and inverses
_WORDS, _COMPOSE, _INVERSE = _build_clifford_table()
_ELEMENT = {word: index for index, word in enumerate(_WORDS)}


class LocalCliffordFrame:
    """Tensor product of single-qubit Clifford elements, one of 24 per qubit, each stored as
    the index of a shortest word in the gates H and R."""

    __slots__ = ('elements',)

    def __init__(self, elements):
        """Class constructor.

        Args:
            elements: Sequence of element indices (0 is the identity).
        """

        elements = tuple(int(e) for e in elements)
        if any(not 0 <= e < len(_WORDS) for e in elements):
            raise ValueError('Unknown Clifford element in {}.'.format(elements))
        self.elements = elements

    @classmethod
    def identity(cls, n):
        return cls((0,) * n)

    @classmethod
    def from_words(cls, n, words):
        """Frame from gate words applied in order, e.g. {1: 'HR'}.

        Args:
            n: Number of qubits.
            words: Dictionary from qubit to a sequence of gate names (H or R).
        """

        elements = [0] * n
        for qubit, word in words.items():
            for gate in word:
                elements[qubit] = int(_COMPOSE[elements[qubit], _ELEMENT[(gate,)]])
        return cls(elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, qubit):
        return self.elements[qubit]

    def __eq__(self, other):
        return isinstance(other, LocalCliffordFrame) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return 'LocalCliffordFrame({})'.format(
            {q: ''.join(_WORDS[e]) for q, e in enumerate(self.elements) if e})

    def is_identity(self):
        return not any(self.elements)

    def gates(self, qubit):
        """Gate names realising the element on one qubit, in application order."""
        return _WORDS[self.elements[qubit]]

    def then(self, other):
        """Frame applying this frame first and other afterwards."""
        return LocalCliffordFrame(int(_COMPOSE[a, b]) for a, b in zip(self.elements,
                                                                      other.elements))

    def inverse(self):
        return LocalCliffordFrame(_INVERSE[e] for e in self.elements)

    def relabel(self, vertex_map):
        elements = [0] * len(self.elements)
        for q, e in enumerate(self.elements):
            elements[vertex_map[q]] = e
        return LocalCliffordFrame(elements)

    def apply(self, tableau):
        """Applies the frame to a tableau in place."""
        for qubit in range(len(self.elements)):
            for gate in self.gates(qubit):
                tableau.apply(gate, qubit)
        return tableau


class Tableau:
    """Stabilizer tableau with destabilizers (rows 0..n-1) and stabilizers (rows n..2n-1)."""

    def __init__(self, x, z, phases):
        """Class constructor.

        Args:
            x: Boolean array of shape (2n, n) with the X parts of all rows.
            z: Boolean array of shape (2n, n) with the Z parts of all rows.
            phases: Integer array of length 2n, exponents of i for every row.
        """

        self.x = np.array(x, dtype=bool)
        self.z = np.array(z, dtype=bool)
        self.phases = np.array(phases, dtype=np.int64) % 4
        if self.x.ndim != 2 or self.x.shape[0] != 2 * self.x.shape[1] or \
                self.z.shape != self.x.shape or self.phases.shape != (self.x.shape[0],):
            raise ValueError('Inconsistent tableau shapes {}, {}, {}.'
                             .format(self.x.shape, self.z.shape, self.phases.shape))

    @property
    def n(self):
        return self.x.shape[1]

    @classmethod
    def zero_state(cls, n):
        """All qubits in |0>."""
        eye = np.eye(n, dtype=bool)
        zero = np.zeros((n, n), dtype=bool)
        return cls(np.vstack([eye, zero]), np.vstack([zero, eye]), np.zeros(2 * n))

    @classmethod
    def plus_state(cls, n):
        """All qubits in |+>."""
        eye = np.eye(n, dtype=bool)
        zero = np.zeros((n, n), dtype=bool)
        return cls(np.vstack([zero, eye]), np.vstack([eye, zero]), np.zeros(2 * n))

    @classmethod
    def from_stabilizers(cls, paulis):
        """Tableau of the state stabilized by n independent commuting Pauli strings; the
        destabilizers are completed automatically."""
        n = len(paulis)
        stab_x = np.array([_to_bits(p.x_mask, n) for p in paulis], dtype=bool).reshape(n, n)
        stab_z = np.array([_to_bits(p.z_mask, n) for p in paulis], dtype=bool).reshape(n, n)
        phases = [p.phase for p in paulis]
        return cls._complete(stab_x, stab_z, phases)

    @classmethod
    def _complete(cls, stab_x, stab_z, stab_phases):
        n = stab_x.shape[1]
        stab = np.hstack([stab_x, stab_z]).astype(np.uint8)
        if gf2.rank(stab) != n:
            raise ValueError('Stabilizers are not independent.')
        swapped = np.hstack([stab[:, n:], stab[:, :n]])
        if (swapped @ stab.T % 2).any():
            raise ValueError('Stabilizers do not commute.')
        # destabilizers d with d L s^T = I and d L d^T = 0, L the symplectic form
        destab = gf2.right_inverse(swapped).T
        overlap = np.hstack([destab[:, n:], destab[:, :n]]) @ destab.T % 2
        destab = (destab + np.tril(overlap, -1) @ stab) % 2
        return cls(np.vstack([destab[:, :n], stab_x]), np.vstack([destab[:, n:], stab_z]),
                   np.concatenate([np.zeros(n, dtype=np.int64), stab_phases]))

    def copy(self):
        return Tableau(self.x, self.z, self.phases)

    def __repr__(self):
        return 'Tableau({})'.format(', '.join(str(s) for s in self.stabilizers()))

    def _row(self, i):
        return PauliString(self.n, _to_mask(self.x[i]), _to_mask(self.z[i]), self.phases[i])

    def stabilizers(self):
        return [self._row(self.n + i) for i in range(self.n)]

    def destabilizers(self):
        return [self._row(i) for i in range(self.n)]

    def stabilizer_matrix(self):
        """Stabilizer rows as (n, 2n) uint8 array [X | Z]."""
        return np.hstack([self.x[self.n:], self.z[self.n:]]).astype(np.uint8)

    def _check_qubits(self, qubits):
        for q in qubits:
            if not 0 <= q < self.n:
                raise ValueError('Qubit {} out of range for {} qubits.'.format(q, self.n))

    def apply(self, gate, *qubits):
        """Conjugates all rows by a Clifford gate in place.

        Args:
            gate: One of GATES.
            qubits: Target qubit, or control and target for CZ and CNOT.

        Returns:
            The tableau itself.
        """

        self._check_qubits(qubits)
        x, z = self.x, self.z
        if gate in ('H', 'R', 'Z', 'X'):
            if len(qubits) != 1:
                raise ValueError('Gate {} acts on one qubit.'.format(gate))
            a = qubits[0]
            if gate == 'H':
                self.phases += 2 * (x[:, a] & z[:, a])
                x[:, a], z[:, a] = z[:, a].copy(), x[:, a].copy()
            elif gate == 'R':
                self.phases += 2 * (x[:, a] & z[:, a])
                z[:, a] ^= x[:, a]
            elif gate == 'Z':
                self.phases += 2 * x[:, a]
            else:
                self.phases += 2 * z[:, a]
        elif gate in ('CNOT', 'CZ'):
            if len(qubits) != 2 or qubits[0] == qubits[1]:
                raise ValueError('Gate {} acts on two distinct qubits.'.format(gate))
            c, t = qubits
            if gate == 'CZ':
                self.apply('H', t)
            self.phases += 2 * (x[:, c] & z[:, t] & ~(x[:, t] ^ z[:, c]))
            x[:, t] ^= x[:, c]
            z[:, c] ^= z[:, t]
            if gate == 'CZ':
                self.apply('H', t)
        else:
            raise ValueError('Unknown gate {}.'.format(gate))
        self.phases %= 4
        return self

    def _anticommuting(self, pauli):
        px, pz = _to_bits(pauli.x_mask, self.n), _to_bits(pauli.z_mask, self.n)
        return np.flatnonzero(np.count_nonzero((self.x & pz) ^ (self.z & px), axis=1) % 2)

    def _rowmul(self, target, source):
        # row target becomes (row source) * (row target)
        phase = _row_phase(self.x[source], self.z[source], self.x[target], self.z[target])
        self.phases[target] = (self.phases[target] + self.phases[source] + phase) % 4
        self.x[target] ^= self.x[source]
        self.z[target] ^= self.z[source]

    def expectation(self, pauli):
        """Expectation value of a Hermitian Pauli string.

        Returns:
            +1 or -1 if the outcome is determined, 0 if it is random.
        """

        if pauli.n != self.n or not pauli.is_hermitian():
            raise ValueError('Expected a Hermitian Pauli string on {} qubits.'.format(self.n))
        anti = self._anticommuting(pauli)
        if (anti >= self.n).any():
            return 0
        product = PauliString(self.n)
        for i in anti:
            product = product * self._row(self.n + i)
        if (product.x_mask, product.z_mask) != (pauli.x_mask, pauli.z_mask):
            raise RuntimeError('Tableau is inconsistent; destabilizer pairing broken.')
        return 1 if (pauli.phase - product.phase) % 4 == 0 else -1

    def measure(self, pauli, force=None, rng=None):
        """Measures a Hermitian Pauli string in place.

        Args:
            pauli: Observable to measure.
            force: Outcome (+1 or -1) to select if the outcome is random.
            rng: numpy random generator used for random outcomes without force.

        Returns:
            Measurement outcome +1 or -1.
        """

        expected = self.expectation(pauli)
        if expected:
            if force is not None and force != expected:
                raise ValueError('Forced outcome {} contradicts determined outcome {}.'
                                 .format(force, expected))
            return expected
        if force is None:
            rng = rng if rng is not None else np.random.default_rng()
            force = int(rng.choice([1, -1]))
        elif force not in (1, -1):
            raise ValueError('Outcome must be +1 or -1, not {}.'.format(force))
        anti = self._anticommuting(pauli)
        pivot = anti[anti >= self.n][0]
        for i in anti:
            if i != pivot:
                self._rowmul(i, pivot)
        destab = pivot - self.n
        self.x[destab], self.z[destab] = self.x[pivot], self.z[pivot]
        self.phases[destab] = self.phases[pivot]
        self.x[pivot] = _to_bits(pauli.x_mask, self.n)
        self.z[pivot] = _to_bits(pauli.z_mask, self.n)
        self.phases[pivot] = (pauli.phase + (0 if force == 1 else 2)) % 4
        return force

    def delete(self, qubits):
        """Removes qubits that are in a pure state unentangled from the rest.

        Args:
            qubits: Qubits to remove.

        Returns:
            New tableau on the remaining qubits, relabeled densely in increasing order.
        """

        qubits = sorted(set(qubits))
        self._check_qubits(qubits)
        n = self.n
        keep = [q for q in range(n) if q not in qubits]
        work = self.copy()
        rows = list(range(n, 2 * n))
        free = list(rows)
        for q in qubits:
            for bits in (work.x, work.z):
                pivot = next((r for r in free if bits[r, q]), None)
                if pivot is None:
                    continue
                free.remove(pivot)
                for r in rows:
                    if r != pivot and bits[r, q]:
                        work._rowmul(r, pivot)
        if len(free) != len(keep):
            raise ValueError('Qubits {} are entangled with the remaining qubits.'.format(qubits))
        if not keep:
            raise ValueError('Cannot delete all qubits.')
        return Tableau._complete(work.x[np.ix_(free, keep)], work.z[np.ix_(free, keep)],
                                 work.phases[free])

    def tensor(self, other):
        """Tableau of the product state, qubits of other appended after those of self."""
        n, m = self.n, other.n

        def blocks(a, b):
            top = np.block([[a[:n], np.zeros((n, m), dtype=bool)],
                            [np.zeros((m, n), dtype=bool), b[:m]]])
            bottom = np.block([[a[n:], np.zeros((n, m), dtype=bool)],
                               [np.zeros((m, n), dtype=bool), b[m:]]])
            return np.vstack([top, bottom])

        phases = np.concatenate([self.phases[:n], other.phases[:m], self.phases[n:],
                                 other.phases[m:]])
        return Tableau(blocks(self.x, other.x), blocks(self.z, other.z), phases)

    def relabel(self, vertex_map):
        """Tableau with qubit q renamed to vertex_map[q]."""
        if not vertex_map.is_permutation(self.n):
            raise ValueError('Vertex map is not a permutation of {} qubits.'.format(self.n))
        order = np.argsort(vertex_map.as_list())
        return Tableau(self.x[:, order], self.z[:, order], self.phases)

    def same_state(self, other, ignore_signs=True):
        """Checks whether two tableaux describe the same stabilizer state.

        Args:
            other: Tableau to compare with.
            ignore_signs: Compare stabilizer groups up to signs only.
        """

        if self.n != other.n:
            return False
        stacked = np.vstack([self.stabilizer_matrix(), other.stabilizer_matrix()])
        if gf2.rank(stacked) != self.n:
            return False
        if ignore_signs:
            return True
        return all(self.expectation(s) == 1 for s in other.stabilizers())


def graph_to_tableau(graph):
    """Tableau of the graph state with stabilizers X_i Z_N(i) and destabilizers Z_i."""
    n = graph.n
    eye = np.eye(n, dtype=bool)
    zero = np.zeros((n, n), dtype=bool)
    adjacency = graph.adjacency_matrix().astype(bool)
    return Tableau(np.vstack([zero, eye]), np.vstack([eye, adjacency]), np.zeros(2 * n))


def apply_clifford(tableau, gate, qubits):
    """Returns a copy of the tableau conjugated by a Clifford gate.

    Args:
        tableau: Input tableau.
        gate: One of GATES.
        qubits: Qubit index or sequence of indices.
    """

    qubits = (qubits,) if isinstance(qubits, (int, np.integer)) else tuple(qubits)
    return tableau.copy().apply(gate, *qubits)


def measure_pauli(tableau, pauli, force=None, rng=None):
    """Measures a Pauli string on a copy of the tableau.

    Returns:
        Tuple (post-measurement tableau, outcome).
    """

    result = tableau.copy()
    outcome = result.measure(pauli, force=force, rng=rng)
    return result, outcome


def delete_qubits(tableau, qubits):
    return tableau.delete(qubits)


def tableau_to_graph(tableau):
    """Converts a stabilizer state into a graph state and a local Clifford frame.

    The X block of the stabilizers is reduced left to right with lowest-index pivots, qubits
    without an X pivot receive a Hadamard and remaining Y entries on the diagonal an R gate.

    Returns:
        Tuple (graph, frame) such that applying the frame to the graph state reproduces the
        tableau up to stabilizer signs.
    """

    n = tableau.n
    stab_x = tableau.x[n:].astype(np.uint8)
    stab_z = tableau.z[n:].astype(np.uint8)
    _, pivots = gf2.row_echelon(np.hstack([stab_x, stab_z]), n)
    hadamards = [q for q in range(n) if q not in pivots]
    stab_x[:, hadamards], stab_z[:, hadamards] = stab_z[:, hadamards], stab_x[:, hadamards].copy()
    gamma = gf2.inverse(stab_x) @ stab_z % 2
    phase_gates = np.flatnonzero(gamma.diagonal())
    np.fill_diagonal(gamma, 0)
    if (gamma != gamma.T).any():
        raise RuntimeError('Stabilizer reduction produced an asymmetric adjacency matrix.')
    rows = [_to_mask(gamma[i]) for i in range(n)]
    words = {q: ('H',) for q in hadamards}
    for q in phase_gates:
        words[int(q)] = words.get(int(q), ()) + ('R',)
    applied = LocalCliffordFrame.from_words(n, words)
    return grs.Graph._from_rows(n, rows), applied.inverse()


def emit_photon(tableau, spin, mode):
    """Emission of a photon from a spin, appended as the last qubit.

    The photon starts in |0>, a CNOT from the spin entangles it and a Hadamard on the photon
    attaches it as a leaf of the spin (leaf_photon), or a Hadamard on the spin makes the spin
    the leaf (leaf_spin).

    Args:
        tableau: Current state.
        spin: Qubit index of the spin.
        mode: One of EMIT_MODES.

    Returns:
        New tableau with one more qubit.
    """

    if mode not in EMIT_MODES:
        raise ValueError('Unknown emission mode {}.'.format(mode))
    tableau._check_qubits([spin])
    result = tableau.tensor(Tableau.zero_state(1))
    new = result.n - 1
    result.apply('CNOT', spin, new)
    result.apply('H', new if mode == 'leaf_photon' else spin)
    return result


def entanglement_entropy(tableau, part):
    """Entanglement entropy in bits between a set of qubits and the rest."""
    part = sorted(set(part))
    tableau._check_qubits(part)
    if not part:
        return 0
    n = tableau.n
    restricted = np.hstack([tableau.x[n:, part], tableau.z[n:, part]]).astype(np.uint8)
    return gf2.rank(restricted) - len(part)


def lc_unitary(tableau, graph, vertex):
    """Applies the local Clifford gates that map the graph state of graph to the graph state of
    its local complement at vertex (up to signs), in place.

    Args:
        tableau: Tableau holding the graph state of graph.
        graph: Graph whose neighborhood of vertex defines the gates.
        vertex: Vertex of the local complementation.
    """

    for j in graph.neighbors(vertex):
        tableau.apply('Z', j)
        tableau.apply('R', j)
    for gate in ('R', 'Z', 'H', 'Z', 'R'):
        tableau.apply(gate, vertex)
    return tableau


def emission_graph(modes):
    """Graph produced by a single emitter (qubit 0) and a sequence of emission modes."""
    rows = [0]
    spin = 0
    for mode in modes:
        new = len(rows)
        if mode == 'leaf_photon':
            rows.append(1 << spin)
            rows[spin] |= 1 << new
        elif mode == 'leaf_spin':
            neighbors = rows[spin]
            for u in range(new):
                if neighbors >> u & 1:
                    rows[u] = rows[u] & ~(1 << spin) | (1 << new)
            rows.append(neighbors | (1 << spin))
            rows[spin] = 1 << new
        else:
            raise ValueError('Unknown emission mode {}.'.format(mode))
    return grs.Graph._from_rows(len(rows), rows)


def emission_sequence(caterpillar):
    """Emission modes that produce a caterpillar from one emitter.

    Leaves of the first spine vertex are emitted as leaf photons, every further spine vertex is
    reached with one leaf_spin emission followed by its leaves.

    Args:
        caterpillar: Caterpillar tree.

    Returns:
        Tuple (modes, emitted graph), the emitted graph being isomorphic to the caterpillar.
    """

    if not caterpillar.is_caterpillar():
        raise ValueError('Graph is not a caterpillar.')
    n = caterpillar.n
    spine = [v for v in range(n) if caterpillar.degree(v) >= 2] or [0]
    spine_mask = sum(1 << v for v in spine)

    def spine_neighbors(v):
        return [u for u in caterpillar.neighbors(v) if spine_mask >> u & 1]

    start = next(v for v in spine if len(spine_neighbors(v)) <= 1)
    ordered = [start]
    while len(ordered) < len(spine):
        ordered.append(next(u for u in spine_neighbors(ordered[-1]) if u not in ordered))
    modes = []
    for i, v in enumerate(ordered):
        if i:
            modes.append('leaf_spin')
        modes.extend(['leaf_photon'] * (caterpillar.degree(v) - len(spine_neighbors(v))))
    return modes, emission_graph(modes)


def prepare_caterpillars(graph):
    """Tableau of a set of caterpillars produced by one emitter per component.

    Args:
        graph: Disjoint union of caterpillars.

    Returns:
        Tableau on graph.n qubits equal to the graph state up to signs.
    """

    pieces = []
    order = []
    for component in graph.components():
        sub = grs.induced_subgraph(graph, component)
        modes, emitted = emission_sequence(sub)
        piece = Tableau.plus_state(1)
        for mode in modes:
            piece = emit_photon(piece, 0, mode)
        pieces.append(piece.relabel(grs.isomorphic(emitted, sub)))
        order.extend(component)
    result = pieces[0]
    for piece in pieces[1:]:
        result = result.tensor(piece)
    return result.relabel(grs.VertexMap(order))
