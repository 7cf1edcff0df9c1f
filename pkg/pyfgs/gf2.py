import numpy as np

__all__ = [
    'row_echelon', 'rank', 'inverse', 'right_inverse', 'mask_rank',
    'MaskBasis',
]


def row_echelon(matrix, num_pivot_columns=None):
    """Reduced row echelon form over GF(2) with lowest-index pivoting.

    Args:
        matrix: Two-dimensional array of zeros and ones.
        num_pivot_columns: Only the first columns up to this number are used as pivots. Defaults
            to all columns.

    Returns:
        Tuple of the reduced matrix (uint8 copy) and the list of pivot columns.
    """

    m = np.array(matrix, dtype=np.uint8) & 1
    num_rows, num_cols = m.shape
    if num_pivot_columns is None:
        num_pivot_columns = num_cols
    pivots = []
    row = 0
    for col in range(num_pivot_columns):
        if row >= num_rows:
            break
        candidates = np.nonzero(m[row:, col])[0]
        if not len(candidates):
            continue
        pivot = row + candidates[0]
        if pivot != row:
            m[[row, pivot]] = m[[pivot, row]]
        others = np.nonzero(m[:, col])[0]
        others = others[others != row]
        m[others] ^= m[row]
        pivots.append(col)
        row += 1
    return m, pivots


def rank(matrix):
    """Rank of a binary matrix over GF(2)."""
    if np.size(matrix) == 0:
        return 0
    return len(row_echelon(matrix)[1])


def inverse(matrix):
    """Inverse of a square binary matrix over GF(2).

    Args:
        matrix: Square array of zeros and ones.

    Returns:
        Inverse matrix as uint8 array.
    """

    m = np.asarray(matrix, dtype=np.uint8)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError('Matrix of shape {} is not square.'.format(m.shape))
    reduced, pivots = row_echelon(np.hstack([m, np.eye(n, dtype=np.uint8)]), n)
    if len(pivots) != n:
        raise ValueError('Matrix is singular over GF(2).')
    return reduced[:, n:]


def right_inverse(matrix):
    """Right inverse of a full row rank binary matrix, i.e. ``matrix @ result = I`` over GF(2).

    Args:
        matrix: Array of shape (r, c) with rank r.

    Returns:
        Array of shape (c, r).
    """

    m = np.asarray(matrix, dtype=np.uint8)
    num_rows, num_cols = m.shape
    _, pivots = row_echelon(m)
    if len(pivots) != num_rows:
        raise ValueError('Matrix does not have full row rank.')
    result = np.zeros((num_cols, num_rows), dtype=np.uint8)
    result[pivots, :] = inverse(m[:, pivots])
    return result


class MaskBasis:
    """Incremental basis of GF(2) vectors stored as bit-packed python integers."""

    def __init__(self, vectors=()):
        """Class constructor.

        Args:
            vectors: Initial vectors as integers.
        """

        self._rows = {}
        for vector in vectors:
            self.add(vector)

    def __len__(self):
        return len(self._rows)

    def reduce(self, vector):
        """Reduces a vector against the basis; the result is zero iff the vector is spanned."""
        while vector:
            top = vector.bit_length() - 1
            row = self._rows.get(top)
            if row is None:
                return vector
            vector ^= row
        return 0

    def add(self, vector):
        """Adds a vector to the basis.

        Returns:
            True if the vector was independent of the basis.
        """

        vector = self.reduce(vector)
        if vector:
            self._rows[vector.bit_length() - 1] = vector
            return True
        return False

    def spans(self, vector):
        return self.reduce(vector) == 0


def mask_rank(vectors):
    """Rank of a collection of bit-packed GF(2) vectors."""
    return len(MaskBasis(vectors))
