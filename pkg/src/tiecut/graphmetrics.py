"""Geodesic and Ohmic node statistics, diameters, and rankings.

Two geometric views of a weighted graph:

* geodesic: an edge of weight w has length 1/w (distance as inverse
  connectivity); shortest-path distances feed harmonic closeness and
  the max-distance diameter.
* Ohmic: weights are conductances; the effective conductance between
  two nodes is the reciprocal of the two-terminal resistance of the
  whole circuit, feeding Ohmic closeness, resistance diameters, and a
  current-throughflow betweenness where every node pair is driven at
  unit power.

Resistor networks are undirected, so directed graphs are symmetrized
by averaging the two arc weights before any Ohmic computation.
Rankings break ties uniformly at random under a caller-supplied seed,
and the rank-discrepancy statistic weights squared rank differences by
the inverse geometric mean of the two ranks, emphasizing the top of
the order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, dijkstra

from ._backend import throughflow_accumulate
from .errors import UndefinedDiameterError

__all__ = [
    "DistanceMatrix",
    "CentralityVector",
    "FlowSolution",
    "Ranking",
    "DiameterReport",
    "geodesic_distances",
    "ohmic_distances",
    "harmonic_closeness",
    "effective_conductance",
    "ohmic_closeness",
    "fixed_power_betweenness",
    "flow_solution",
    "diameters",
    "rank",
    "rank_discrepancy",
]


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """All-pairs distances; +inf marks unreachable pairs.

    ``kind`` is ``geodesic`` (shortest paths over lengths 1/w) or
    ``ohmic`` (effective resistances).  ``units`` names the weight unit
    of the source graph; distances live on the inverse of that scale.
    """

    values: np.ndarray
    kind: str
    units: str = "value"

    def __post_init__(self):
        if self.kind not in ("geodesic", "ohmic"):
            raise ValueError(f"kind must be 'geodesic' or 'ohmic', got {self.kind!r}")
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("distance matrix must be square")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True, eq=False)
class CentralityVector:
    """Per-node statistic values with their unit scale."""

    values: np.ndarray
    statistic: str
    units: str = "value"

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).copy()
        if v.ndim != 1:
            raise ValueError("centrality values must be a vector")
        if self.statistic in ("harmonic_geodesic", "ohmic_closeness") and np.any(v < 0):
            raise ValueError(f"{self.statistic} values must be nonnegative")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True, eq=False)
class FlowSolution:
    """Unit-power current flow for one source/sink pair.

    ``potentials`` is NaN outside the pair's component.  Edge arrays
    give the current on each symmetrized edge, oriented source-index ->
    target-index; ``injected_current`` is sqrt(G_ab), the current that
    dissipates exactly unit power across the pair.
    """

    source: int
    sink: int
    potentials: np.ndarray
    edge_sources: np.ndarray
    edge_targets: np.ndarray
    currents: np.ndarray
    conductance: float
    injected_current: float


@dataclass(frozen=True, eq=False)
class Ranking:
    """Importance ranks 1..n (1 = most central), ties randomly assorted."""

    ranks: np.ndarray
    tie_seed: int

    def __post_init__(self):
        r = np.asarray(self.ranks, dtype=np.int64).copy()
        if not np.array_equal(np.sort(r), np.arange(1, r.shape[0] + 1)):
            raise ValueError("ranks must be a permutation of 1..n")
        r.setflags(write=False)
        object.__setattr__(self, "ranks", r)

    @property
    def n(self) -> int:
        return self.ranks.shape[0]


@dataclass(frozen=True)
class DiameterReport:
    """Worst-case separation under both geometric views.

    The inverse variants read the diameter as the minimum nonzero
    connectivity (1/distance, or conductance) over connected pairs.
    """

    geodesic_diameter: float
    ohmic_diameter: float
    inverse_geodesic_diameter: float
    inverse_ohmic_diameter: float


def _units_of(g) -> str:
    return getattr(g, "unit_label", "value")


def _sym_weights(g) -> np.ndarray:
    """Weights viewed as conductances; directed arcs average pairwise."""
    w = np.asarray(g.weights, dtype=float)
    return (w + w.T) / 2.0 if g.directed else w


def _component_labels(w_sym: np.ndarray):
    n = w_sym.shape[0]
    iu, iv = np.nonzero(w_sym)
    support = csr_matrix((np.ones(iu.size), (iu, iv)), shape=(n, n))
    ncomp, labels = connected_components(support, directed=False)
    return ncomp, labels

def _grounded_inverse(w_comp: np.ndarray) -> np.ndarray:
    """Inverse of the component Laplacian with node 0 grounded.

    Row and column 0 of the result are zero; for any pair the
    resistance is K_ii + K_jj - 2 K_ij.  The reduced Laplacian of a
    connected component is nonsingular, so a direct solve suffices.
    """
    m = w_comp.shape[0]
    K = np.zeros((m, m))
    if m > 1:
        lap = np.diag(w_comp.sum(axis=1)) - w_comp
        K[1:, 1:] = np.linalg.inv(lap[1:, 1:])
    return K


def geodesic_distances(g) -> DistanceMatrix:
    """All-pairs shortest paths with edge length 1/weight."""
    w = np.asarray(g.weights, dtype=float)
    n = w.shape[0]
    iu, iv = np.nonzero(w)
    # 1/w overflows to +inf for subnormal weights; such a tie is
    # indistinguishable from absent, so let the inf length stand.
    with np.errstate(over="ignore"):
        inv = 1.0 / w[iu, iv]
    lengths = csr_matrix((inv, (iu, iv)), shape=(n, n))
    dist = dijkstra(lengths, directed=g.directed)
    return DistanceMatrix(values=dist, kind="geodesic", units=_units_of(g))


def ohmic_distances(g) -> DistanceMatrix:
    """All-pairs effective resistances; +inf across components."""
    w = _sym_weights(g)
    n = w.shape[0]
    _, labels = _component_labels(w)
    R = np.full((n, n), np.inf)
    np.fill_diagonal(R, 0.0)
    for comp in np.unique(labels):
        idx = np.flatnonzero(labels == comp)
        if idx.size == 1:
            continue
        K = _grounded_inverse(w[np.ix_(idx, idx)])
        d = np.diagonal(K)
        R[np.ix_(idx, idx)] = d[:, None] + d[None, :] - 2.0 * K
    np.fill_diagonal(R, 0.0)
    return DistanceMatrix(values=R, kind="ohmic", units=_units_of(g))


def harmonic_closeness(D: DistanceMatrix) -> CentralityVector:
    """C(i) = sum over j != i of 1/d(i,j) + 1/d(j,i), with 1/inf = 0."""
    if D.kind != "geodesic":
        raise ValueError(f"harmonic closeness needs geodesic distances, got {D.kind}")
    v = D.values
    with np.errstate(divide="ignore"):
        recip = np.where(np.isfinite(v) & (v > 0), 1.0 / v, 0.0)
    np.fill_diagonal(recip, 0.0)
    c = recip.sum(axis=1) + recip.sum(axis=0)
    return CentralityVector(values=c, statistic="harmonic_geodesic", units=D.units)


def effective_conductance(g, i: int, j: int) -> float:
    """Two-terminal conductance between nodes i and j; 0 when they sit
    in different components ("zero closeness, rather than infinite
    distance")."""
    if i == j:
        raise ValueError(f"effective conductance is undefined for i = j = {i}")
    w = _sym_weights(g)
    _, labels = _component_labels(w)
    if labels[i] != labels[j]:
        return 0.0
    idx = np.flatnonzero(labels == labels[i])
    local = {node: k for k, node in enumerate(idx)}
    a, b = local[i], local[j]
    lap = np.diag(w[np.ix_(idx, idx)].sum(axis=1)) - w[np.ix_(idx, idx)]
    rhs = np.zeros(idx.size)
    rhs[a], rhs[b] = 1.0, -1.0
    x = np.zeros(idx.size)
    x[1:] = np.linalg.solve(lap[1:, 1:], rhs[1:])
    return float(1.0 / (x[a] - x[b]))


def _conductance_sum(resistances: np.ndarray) -> np.ndarray:
    """Row sums of pairwise conductances given a resistance matrix."""
    with np.errstate(divide="ignore"):
        G = np.where(np.isfinite(resistances) & (resistances > 0),
                     1.0 / resistances, 0.0)
    np.fill_diagonal(G, 0.0)
    return G.sum(axis=1)


def ohmic_closeness(g) -> CentralityVector:
    """C(i) = sum over j != i of the pairwise effective conductance."""
    R = ohmic_distances(g)
    return CentralityVector(
        values=_conductance_sum(R.values), statistic="ohmic_closeness", units=R.units
    )


def fixed_power_betweenness(g) -> CentralityVector:
    """Current-throughflow centrality at unit power per pair.

    Each ordered node pair (a, b) in a component is driven at one unit
    of power, so the injected current is sqrt(G_ab) and the pair enters
    the sum with weight 1/sqrt(G_ab); the two factors cancel, leaving
    the unit-current throughflow.  A node's throughflow is half the
    absolute current on its incident edges, except the terminals, which
    carry their full injected current (by the maximum principle all
    current leaves the source forward, so over both orderings each
    in-component pair contributes exactly 1 to each terminal).  Used
    for relative rank, not absolute scale.
    """
    w = _sym_weights(g)
    n = w.shape[0]
    _, labels = _component_labels(w)
    out = np.zeros(n)
    for comp in np.unique(labels):
        idx = np.flatnonzero(labels == comp)
        m = idx.size
        if m == 1:
            continue
        wc = w[np.ix_(idx, idx)]
        K = _grounded_inverse(wc)
        eu, ev = np.nonzero(np.triu(wc, k=1))
        acc = throughflow_accumulate(
            np.ascontiguousarray(K),
            eu.astype(np.int64),
            ev.astype(np.int64),
            wc[eu, ev].astype(float),
        )
        out[idx] = np.asarray(acc) + (m - 1)
    return CentralityVector(
        values=out, statistic="fixed_power_betweenness", units=_units_of(g)
    )


def flow_solution(g, source: int, sink: int) -> FlowSolution:
    """Potentials and edge currents for one pair driven at unit power."""
    if source == sink:
        raise ValueError("source and sink must differ")
    w = _sym_weights(g)
    n = w.shape[0]
    _, labels = _component_labels(w)
    if labels[source] != labels[sink]:
        raise ValueError(
            f"nodes {source} and {sink} are disconnected; no flow exists"
        )
    idx = np.flatnonzero(labels == labels[source])
    local = {node: k for k, node in enumerate(idx)}
    wc = w[np.ix_(idx, idx)]
    lap = np.diag(wc.sum(axis=1)) - wc
    rhs = np.zeros(idx.size)
    rhs[local[source]], rhs[local[sink]] = 1.0, -1.0
    x = np.zeros(idx.size)
    x[1:] = np.linalg.solve(lap[1:, 1:], rhs[1:])
    resistance = x[local[source]] - x[local[sink]]
    conductance = 1.0 / resistance
    injected = float(np.sqrt(conductance))

    potentials = np.full(n, np.nan)
    potentials[idx] = x * injected
    eu, ev = np.nonzero(np.triu(wc, k=1))
    currents = wc[eu, ev] * (potentials[idx[eu]] - potentials[idx[ev]])
    return FlowSolution(
        source=source,
        sink=sink,
        potentials=potentials,
        edge_sources=idx[eu],
        edge_targets=idx[ev],
        currents=currents,
        conductance=float(conductance),
        injected_current=injected,
    )


def diameters(g) -> DiameterReport:
    """Max-distance diameters and their minimum-connectivity readings.

    Raises :class:`UndefinedDiameterError` when no pair is connected
    (no finite off-diagonal distance exists).
    """
    n = g.weights.shape[0]
    off = ~np.eye(n, dtype=bool)

    dg = geodesic_distances(g).values[off]
    dg = dg[np.isfinite(dg)]
    if dg.size == 0:
        raise UndefinedDiameterError("graph has no connected pair; diameter undefined")
    geo = float(dg.max())

    ro = ohmic_distances(g).values[off]
    ro = ro[np.isfinite(ro)]
    ohm = float(ro.max())

    return DiameterReport(
        geodesic_diameter=geo,
        ohmic_diameter=ohm,
        inverse_geodesic_diameter=1.0 / geo,
        inverse_ohmic_diameter=1.0 / ohm,
    )


def rank(v, tie_seed: int) -> Ranking:
    """Descending-value ranks with random tie assortment.

    Equal values receive a uniformly random order drawn from
    ``tie_seed``, so two vectors with identical values rank identically
    under the same seed.
    """
    values = np.asarray(getattr(v, "values", v), dtype=float)
    if values.ndim != 1:
        raise ValueError("rank expects a vector of values")
    if not np.all(np.isfinite(values)):
        raise ValueError("rank expects finite values")
    n = values.shape[0]
    rng = np.random.default_rng(tie_seed)
    shuffle = rng.permutation(n)
    order = np.lexsort((shuffle, -values))
    ranks = np.empty(n, dtype=np.int64)
    ranks[order] = np.arange(1, n + 1)
    return Ranking(ranks=ranks, tie_seed=int(tie_seed))


def rank_discrepancy(ra: Ranking, rb: Ranking) -> float:
    """D = mean over nodes of (R_a - R_b)^2 / sqrt(R_a * R_b).

    Zero iff the rankings agree; the inverse-geometric-mean weight
    makes disagreements near the top cost more.
    """
    if ra.n != rb.n:
        raise ValueError(f"rankings must have equal length, got {ra.n} and {rb.n}")
    a = ra.ranks.astype(float)
    b = rb.ranks.astype(float)
    return float(np.mean((a - b) ** 2 / np.sqrt(a * b)))
