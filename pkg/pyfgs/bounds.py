import itertools
import logging as lo
import numpy as np
from . import gf2
from . import graphs as grs

__all__ = [
    'HeightProfile', 'BoundEstimate', 'cut_rank', 'height_profile', 'ns_min', 'climb',
    'subgraph_lower_bound',
]

logger = lo.getLogger('pyfgs')


class HeightProfile:
    """Entanglement entropy of the first k vertices of an ordering, for k = 0..n."""

    def __init__(self, order, values):
        """Class constructor.

        Args:
            order: Vertex ordering.
            values: Heights h(0), ..., h(n).
        """

        self.order = list(order)
        self.values = list(values)

    @property
    def maximum(self):
        return max(self.values)

    def climbs(self, baseline):
        """Number of height changes that start or end above baseline."""
        return sum(1 for h, g in zip(self.values, self.values[1:])
                   if h != g and (h > baseline or g > baseline))

    def __repr__(self):
        return 'HeightProfile(order={}, values={})'.format(self.order, self.values)


class BoundEstimate:
    """Result of an ordering search that is exact for small graphs and sampled otherwise."""

    def __init__(self, value, exact, samples=0, order=None):
        """Class constructor.

        Args:
            value: Best value found.
            exact: Whether all orderings were covered.
            samples: Number of sampled orderings (0 for exact results).
            order: An ordering attaining value.
        """

        self.value = value
        self.exact = exact
        self.samples = samples
        self.order = order

    def __int__(self):
        return self.value

    def __repr__(self):
        return 'BoundEstimate(value={}, exact={}, samples={})'.format(
            self.value, self.exact, self.samples)

    def to_dict(self):
        return {'value': self.value, 'exact': self.exact, 'samples': self.samples}


def _cut_rank_mask(graph, mask):
    return gf2.mask_rank(graph.adj[v] & ~mask for v in grs._bits(mask))


def cut_rank(graph, part):
    """GF(2) rank of the adjacency block between a vertex set and its complement, the
    entanglement entropy of the graph state across that bipartition."""
    part = set(part)
    if any(not 0 <= v < graph.n for v in part):
        raise ValueError('Vertex set {} not contained in the graph.'.format(sorted(part)))
    return _cut_rank_mask(graph, sum(1 << v for v in part))


def height_profile(graph, order):
    """Height function of a graph under a vertex ordering.

    Args:
        graph: Graph.
        order: Permutation of the vertices.

    Returns:
        HeightProfile.
    """

    order = list(order)
    if sorted(order) != list(range(graph.n)):
        raise ValueError('Order {} is not a permutation of {} vertices.'.format(order, graph.n))
    values = [0]
    mask = 0
    for v in order:
        mask |= 1 << v
        values.append(_cut_rank_mask(graph, mask))
    return HeightProfile(order, values)


def _subset_search(graph, combine):
    """Dynamic program over vertex subsets in increasing order.

    Args:
        graph: Graph.
        combine: Function (value of S without v, cut rank of S without v, cut rank of S) giving
            the value of S reached through v.

    Returns:
        Tuple (best value of the full set, optimal order).
    """

    n = graph.n
    size = 1 << n
    cut = [_cut_rank_mask(graph, mask) for mask in range(size)]
    best = [0] * size
    last = [0] * size
    for mask in range(1, size):
        choice = None
        for v in grs._bits(mask):
            rest = mask ^ (1 << v)
            value = combine(best[rest], cut[rest], cut[mask])
            if choice is None or value < choice:
                choice, last[mask] = value, v
        best[mask] = choice
    order = []
    mask = size - 1
    while mask:
        order.append(last[mask])
        mask ^= 1 << last[mask]
    return best[-1], order[::-1]


def _sampled_orders(graph, samples, rng):
    """Randomized greedy orderings: each step appends a vertex of least resulting cut rank."""
    for _ in range(samples):
        mask = 0
        order = []
        for _ in range(graph.n):
            candidates = [v for v in range(graph.n) if not mask >> v & 1]
            rng.shuffle(candidates)
            v = min(candidates, key=lambda u: _cut_rank_mask(graph, mask | 1 << u))
            order.append(v)
            mask |= 1 << v
        yield order


def ns_min(graph, max_exact=12, samples=200, rng=None):
    """Minimum number of emitters needed for a graph state: the smallest maximum height over all
    vertex orderings (the linear rank width).

    Args:
        graph: Graph.
        max_exact: Largest vertex count searched exhaustively.
        samples: Number of sampled orderings for larger graphs.
        rng: numpy random generator for sampling.

    Returns:
        BoundEstimate; sampled results are upper bounds.
    """

    if graph.n <= max_exact:
        value, order = _subset_search(graph, lambda rest, cut_rest, cut: max(rest, cut))
        return BoundEstimate(value, True, order=order)
    rng = rng if rng is not None else np.random.default_rng(0)
    best = None
    for order in _sampled_orders(graph, samples, rng):
        profile = height_profile(graph, order)
        if best is None or profile.maximum < best.value:
            best = BoundEstimate(profile.maximum, False, samples, order)
    logger.info('Minimum emitter count of {}-vertex graph estimated from {} orderings.'
                .format(graph.n, samples))
    return best


def climb(graph, n_s, max_exact=10, samples=200, rng=None):
    """Smallest number of height changes above the baseline n_s over all vertex orderings, an
    upper bound on the fusions needed with n_s emitters.

    Args:
        graph: Graph.
        n_s: Number of emitters.
        max_exact: Largest vertex count searched exhaustively.
        samples: Number of sampled orderings for larger graphs.
        rng: numpy random generator for sampling.

    Returns:
        BoundEstimate; sampled results are upper bounds.
    """

    def step(rest, cut_rest, cut):
        return rest + (cut_rest != cut and (cut_rest > n_s or cut > n_s))

    if graph.n <= max_exact:
        value, order = _subset_search(graph, step)
        return BoundEstimate(value, True, order=order)
    rng = rng if rng is not None else np.random.default_rng(0)
    best = None
    for order in _sampled_orders(graph, samples, rng):
        value = height_profile(graph, order).climbs(n_s)
        if best is None or value < best.value:
            best = BoundEstimate(value, False, samples, order)
    return best


def subgraph_lower_bound(table, graph):
    """Lower bound on the fusion count of a graph from the table depths of its induced
    subgraphs.

    Subsets are searched by decreasing size. Subsets of an already resolved subset are skipped
    since they cannot need more fusions, and the search stops once the table's largest depth is
    reached.

    Args:
        table: Tablebase.
        graph: Graph, possibly larger than the graphs in the table.

    Returns:
        Largest depth of an induced subgraph found in the table (0 if none resolves).
    """

    found = table.find(graph)
    if found is not None:
        return table.orbits[found[0]].depth
    ceiling = table.max_depth
    largest = max((orbit.num_vertices for orbit in table.orbits), default=0)
    seen = grs.GraphIndex()
    resolved = []
    best = 0
    for size in range(min(graph.n - 1, largest), 0, -1):
        for subset in itertools.combinations(range(graph.n), size):
            mask = sum(1 << v for v in subset)
            if any(mask & other == mask for other in resolved):
                continue
            sub = grs.induced_subgraph(graph, subset)
            known = seen.find(sub)
            if known is None:
                hit = table.find(sub)
                depth = None if hit is None else table.orbits[hit[0]].depth
                seen.add(sub, depth)
            else:
                depth = known[0]
            if depth is None:
                continue
            resolved.append(mask)
            if depth > best:
                best = depth
                logger.debug('Induced subgraph {} needs {} fusions.'.format(subset, depth))
                if best == ceiling:
                    return best
    return best
