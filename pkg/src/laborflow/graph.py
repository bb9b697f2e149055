"""Labor flow networks: construction, random generation, and summaries.

A labor flow network is an undirected simple connected graph of firms.  It is
stored in compressed sparse row (CSR) form — ``indptr``/``indices`` with
per-node sorted neighbor lists — so per-firm sums stay a single pass even for
very large networks.  Networks are immutable after construction (the backing
arrays are marked read-only) and therefore safe to share across threads.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx
import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .errors import (
    Disconnected,
    GenerationFailed,
    InfeasibleDegree,
    IsolatedNode,
    OutOfRangeId,
    ParseError,
    SelfLoop,
)

_MAX_ATTEMPTS = 100


class LaborFlowNetwork:
    """Undirected simple connected graph of firms in CSR storage.

    Attributes
    ----------
    n : int
        Number of firms.
    indptr, indices : numpy.ndarray
        CSR adjacency; ``indices[indptr[i]:indptr[i+1]]`` is the sorted
        neighbor list of firm ``i``.
    degrees : numpy.ndarray
        Per-firm edge counts ``k_i`` (all >= 1).
    """

    __slots__ = ("n", "indptr", "indices", "degrees")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray):
        self.n = int(n)
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int64)
        self.degrees = np.diff(self.indptr).astype(np.int64)
        for arr in (self.indptr, self.indices, self.degrees):
            arr.flags.writeable = False

    # -- basic accessors ----------------------------------------------------

    def neighbors(self, i: int) -> np.ndarray:
        """Sorted neighbor ids of firm i (read-only view)."""
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    @property
    def num_edges(self) -> int:
        return self.indices.size // 2

    @property
    def mean_degree(self) -> float:
        return 2.0 * self.num_edges / self.n

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max())

    def edges(self) -> np.ndarray:
        """Array of undirected edges (smaller id first), sorted."""
        row = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        mask = row < self.indices
        return np.column_stack([row[mask], self.indices[mask]])

    def to_scipy(self) -> sp.csr_matrix:
        data = np.ones(self.indices.size, dtype=np.int8)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def __repr__(self):
        return f"LaborFlowNetwork(n={self.n}, edges={self.num_edges})"


def _csr_from_unique_edges(n: int, edges: np.ndarray) -> LaborFlowNetwork:
    """Build CSR from deduplicated (i<j) edge rows; assumes ids already valid."""
    both = np.concatenate([edges, edges[:, ::-1]])
    order = np.lexsort((both[:, 1], both[:, 0]))
    both = both[order]
    counts = np.bincount(both[:, 0], minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return LaborFlowNetwork(n, indptr, both[:, 1])


def _validate_connected(n: int, degrees: np.ndarray, net: LaborFlowNetwork | None,
                        csr: sp.csr_matrix) -> None:
    """Raise IsolatedNode / Disconnected per the construction rules."""
    if degrees.sum() == 0:
        nodes = list(range(n))
        raise IsolatedNode(
            f"no edges: node(s) {nodes if n > 1 else nodes[0]} are isolated", nodes=nodes)
    ncomp, labels = connected_components(csr, directed=False)
    if ncomp > 1:
        sizes = np.bincount(labels)
        giant = int(np.argmax(sizes))
        outside = np.flatnonzero(labels != giant).tolist()
        raise Disconnected(
            f"network has {ncomp} components; node(s) {outside} lie outside "
            f"the largest component", nodes=outside)


def build_from_edge_list(edges, n: int) -> LaborFlowNetwork:
    """Construct a network from node-id pairs.

    Duplicate and reversed pairs collapse to a single undirected edge.  The
    result must be connected with every node incident to at least one edge.

    Raises
    ------
    SelfLoop, OutOfRangeId, Disconnected, IsolatedNode
        Each error names the offending node(s) in its message and
        ``details['nodes']``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
    if arr.size:
        bad = np.flatnonzero((arr < 0).any(axis=1) | (arr >= n).any(axis=1))
        if bad.size:
            nodes = sorted({int(x) for x in arr[bad].ravel() if x < 0 or x >= n})
            raise OutOfRangeId(
                f"edge node id(s) {nodes} outside [0, {n})", nodes=nodes)
        loops = np.flatnonzero(arr[:, 0] == arr[:, 1])
        if loops.size:
            nodes = sorted({int(x) for x in arr[loops, 0]})
            raise SelfLoop(f"self-loop(s) at node(s) {nodes}", nodes=nodes)
        lo = arr.min(axis=1)
        hi = arr.max(axis=1)
        arr = np.unique(np.column_stack([lo, hi]), axis=0)
    net = _csr_from_unique_edges(n, arr) if arr.size else None
    degrees = net.degrees if net is not None else np.zeros(n, dtype=np.int64)
    csr = net.to_scipy() if net is not None else sp.csr_matrix((n, n), dtype=np.int8)
    _validate_connected(n, degrees, net, csr)
    return net


def _attempt_seed(seed: int, attempt: int) -> int:
    """Deterministic per-attempt sub-seed derived from the master seed."""
    return int(np.random.SeedSequence(seed, spawn_key=(attempt,)).generate_state(1)[0])


def _from_nx(g: nx.Graph, relabel: bool = False) -> LaborFlowNetwork:
    if relabel:
        g = nx.convert_node_labels_to_integers(g, ordering="sorted")
    n = g.number_of_nodes()
    if g.number_of_edges() == 0:
        nodes = list(range(n))
        raise IsolatedNode("generated graph has no edges", nodes=nodes)
    edges = np.asarray(list(g.edges()), dtype=np.int64)
    lo = edges.min(axis=1)
    hi = edges.max(axis=1)
    return _csr_from_unique_edges(n, np.unique(np.column_stack([lo, hi]), axis=0))


def generate_regular(n: int, k: int, seed: int) -> LaborFlowNetwork:
    """Connected random k-regular simple graph; deterministic per seed.

    Re-pairs until connected (bounded attempts).
    """
    if int(k) != k or k < 1 or k >= n:
        raise InfeasibleDegree(f"k={k} infeasible on n={n} nodes (need 1 <= k < n)")
    k = int(k)
    if (n * k) % 2 != 0:
        raise InfeasibleDegree(f"n*k = {n * k} is odd; no k-regular graph exists")
    for attempt in range(_MAX_ATTEMPTS):
        g = nx.random_regular_graph(k, n, seed=_attempt_seed(seed, attempt))
        if nx.is_connected(g):
            return _from_nx(g)
    raise GenerationFailed(
        f"no connected {k}-regular graph on {n} nodes in {_MAX_ATTEMPTS} attempts")


def generate_binomial(n: int, mean_degree: float, seed: int) -> LaborFlowNetwork:
    """Erdős–Rényi G(n, p) with p = mean_degree/(n-1), restricted to its giant
    component.

    Samples are rejected until the giant component covers >= 99% of n and the
    realized mean degree is within 10% of the target; the returned network may
    therefore have slightly fewer than n nodes.
    """
    if not 0 < mean_degree <= n - 1:
        raise InfeasibleDegree(
            f"mean_degree={mean_degree} infeasible on n={n} nodes")
    p = mean_degree / (n - 1)
    for attempt in range(_MAX_ATTEMPTS):
        s = _attempt_seed(seed, attempt)
        if p >= 1.0:
            g = nx.complete_graph(n)
        elif p > 0.25:
            g = nx.gnp_random_graph(n, p, seed=s)
        else:
            g = nx.fast_gnp_random_graph(n, p, seed=s)
        if g.number_of_edges() == 0:
            continue
        components = list(nx.connected_components(g))
        giant = max(components, key=len)
        if len(giant) < 0.99 * n:
            continue
        g = g.subgraph(giant)
        realized = 2.0 * g.number_of_edges() / g.number_of_nodes()
        if abs(realized - mean_degree) > 0.1 * mean_degree:
            continue
        return _from_nx(g, relabel=True)
    raise GenerationFailed(
        f"no acceptable G(n, p) draw for n={n}, mean_degree={mean_degree} "
        f"in {_MAX_ATTEMPTS} attempts")


def generate_pareto(n: int, mean_degree: int, seed: int) -> LaborFlowNetwork:
    """Heavy-tailed network via preferential attachment with m = mean_degree/2
    new edges per arriving node; connected by construction.

    ``mean_degree`` must be an even integer >= 2 and feasible on n nodes.  For
    n >= 200 the draw is re-sampled until the maximum degree reaches at least
    3x the mean (heavy upper tail).
    """
    if int(mean_degree) != mean_degree or mean_degree < 2 or mean_degree % 2 != 0:
        raise InfeasibleDegree(
            f"mean_degree={mean_degree} must be an even integer >= 2")
    if mean_degree >= n:
        raise InfeasibleDegree(
            f"mean_degree={mean_degree} infeasible on n={n} nodes")
    m = int(mean_degree) // 2
    for attempt in range(_MAX_ATTEMPTS):
        # growing from a complete core keeps every node's degree >= m
        g = nx.barabasi_albert_graph(n, m, seed=_attempt_seed(seed, attempt),
                                     initial_graph=nx.complete_graph(m + 1))
        net = _from_nx(g)
        if n < 200 or net.max_degree >= 3 * net.mean_degree:
            return net
    raise GenerationFailed(
        f"no heavy-tailed draw for n={n}, m={m} in {_MAX_ATTEMPTS} attempts")


@dataclass(frozen=True)
class DegreeDistribution:
    """Probability distribution over degree values.

    ``support`` holds the degree values, ``mass`` the probability of each
    (summing to 1), ``mean`` the expected degree.
    """

    support: np.ndarray
    mass: np.ndarray
    mean: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        support = np.asarray(self.support, dtype=float)
        mass = np.asarray(self.mass, dtype=float)
        if support.shape != mass.shape or support.ndim != 1:
            raise ValueError("support and mass must be 1-d arrays of equal length")
        if np.any(mass < 0):
            raise ValueError("mass must be nonnegative")
        total = mass.sum()
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"mass must sum to 1 (got {total!r})")
        implied = float(support @ mass)
        mean = implied if self.mean is None else float(self.mean)
        if abs(mean - implied) > 1e-9 * max(1.0, abs(implied)):
            raise ValueError(
                f"mean {mean} inconsistent with support:mass implied {implied}")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "mass", mass)
        object.__setattr__(self, "mean", mean)
        self.support.flags.writeable = False
        self.mass.flags.writeable = False


def degree_distribution(net: LaborFlowNetwork) -> DegreeDistribution:
    """Exact empirical degree distribution; mean equals 2|edges|/n."""
    support, counts = np.unique(net.degrees, return_counts=True)
    return DegreeDistribution(support=support.astype(float),
                              mass=counts / net.n)


# --- edge-list file I/O ------------------------------------------------------

def read_edge_list(path) -> tuple[list[tuple[int, int]], int]:
    """Parse an edge-list file.

    One edge per line as two whitespace-separated non-negative integers;
    ``#`` lines and blank lines ignored.  Returns the edges and the inferred
    node count (max id + 1).
    """
    edges: list[tuple[int, int]] = []
    max_id = -1
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(
                    f"line {lineno}: expected two node ids, got {len(parts)} fields",
                    line=lineno)
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(
                    f"line {lineno}: node ids must be integers", line=lineno) from None
            if a < 0 or b < 0:
                raise ParseError(
                    f"line {lineno}: node ids must be non-negative", line=lineno)
            edges.append((a, b))
            max_id = max(max_id, a, b)
    return edges, max_id + 1


def write_edge_list(net: LaborFlowNetwork, path) -> None:
    """Write each undirected edge once, smaller id first, sorted."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# labor flow network: n={net.n} edges={net.num_edges}\n")
        for a, b in net.edges():
            fh.write(f"{a} {b}\n")
