"""Threshold ladders, dichotomization, and unit conversion.

Dichotomizing keeps every tie whose weight is at least the cut value
tau.  The resulting binary graph measures ties in whole units of "one
binary tie"; the conversion factor

    c = mean(weights >= tau) - mean(weights < tau)

over all ordered off-diagonal entries (structural zeros included in the
low group) translates statistics on the binary graph back onto the
valued scale: closeness-like numbers multiply by c, distance-like
numbers divide by c.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import percolation_profile
from .errors import (
    ConfigError,
    DegenerateSplitError,
    EmptyGraphError,
    NoGiantComponentError,
)

__all__ = [
    "ThresholdLadder",
    "BinaryGraph",
    "UnitConversion",
    "dichotomize",
    "threshold_for_density",
    "ladder_for_densities",
    "conversion_factor",
    "to_valued_units",
    "giant_component_threshold",
]


@dataclass(frozen=True)
class ThresholdLadder:
    """An ordered set of cut values.

    ``thresholds`` is strictly increasing (rising tau means a sparser
    graph).  ``target_density`` optionally records the edges-per-node
    target that induced each cut.
    """

    thresholds: tuple
    target_density: tuple | None = None

    def __post_init__(self):
        ts = tuple(float(t) for t in self.thresholds)
        if not ts:
            raise ConfigError("ladder must contain at least one threshold")
        if any(not np.isfinite(t) for t in ts):
            raise ConfigError("thresholds must be finite")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ConfigError("thresholds must be strictly increasing")
        object.__setattr__(self, "thresholds", ts)
        if self.target_density is not None:
            td = tuple(float(d) for d in self.target_density)
            if len(td) != len(ts):
                raise ConfigError("target_density must align with thresholds")
            object.__setattr__(self, "target_density", td)

    def __len__(self) -> int:
        return len(self.thresholds)

    def __iter__(self):
        return iter(self.thresholds)


@dataclass(frozen=True, eq=False)
class BinaryGraph:
    """The 0/1 image of a valued graph at one threshold."""

    adjacency: np.ndarray
    directed: bool = False
    source_threshold: float | None = None

    def __post_init__(self):
        a = np.asarray(self.adjacency)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {a.shape}")
        if not np.isin(a, (0, 1)).all():
            raise ValueError("adjacency entries must be 0 or 1")
        if np.any(np.diagonal(a) != 0):
            raise ValueError("diagonal must be zero")
        if not self.directed and not np.array_equal(a, a.T):
            raise ValueError("undirected graph must have symmetric adjacency")
        a = a.astype(np.int8)
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def weights(self) -> np.ndarray:
        """Adjacency as float weights, so metric code treats binary and
        valued graphs uniformly (each tie is worth one unit)."""
        return self.adjacency.astype(float)

    @property
    def unit_label(self) -> str:
        return "Phil"

    def edge_count(self) -> int:
        total = int(self.adjacency.sum())
        return total if self.directed else total // 2

    def edges_per_node(self) -> float:
        return self.edge_count() / self.n


def dichotomize(g, tau: float) -> BinaryGraph:
    """Binary image of ``g`` keeping ties with weight >= ``tau``.

    Accepts a valued or binary graph (the latter via its 0/1 weights).
    The diagonal stays zero even for tau <= 0.
    """
    tau = float(tau)
    if not np.isfinite(tau):
        raise ValueError(f"threshold must be finite, got {tau}")
    adj = (g.weights >= tau).astype(np.int8)
    np.fill_diagonal(adj, 0)
    return BinaryGraph(adjacency=adj, directed=g.directed, source_threshold=tau)


def _countable_values(g) -> np.ndarray:
    """Weights that count toward density: one per arc when directed,
    one per unordered pair when undirected."""
    w = g.weights
    if g.directed:
        return w[~np.eye(g.n, dtype=bool)]
    return w[np.triu_indices(g.n, k=1)]


def threshold_for_density(g, target: float) -> float:
    """The cut among observed weights whose edge count is closest to
    ``target`` edges per node; ties go to the sparser graph.
    """
    if not np.isfinite(target) or target <= 0:
        raise ConfigError(f"density target must be positive, got {target}")
    vals = _countable_values(g)
    pos = np.sort(vals[vals > 0])
    if pos.size == 0:
        raise EmptyGraphError("all weights are zero; no nontrivial cut exists")
    distinct = np.unique(pos)
    counts = pos.size - np.searchsorted(pos, distinct, side="left")
    diffs = np.abs(counts - target * g.n)
    best = diffs.min()
    # distinct is ascending, so the last minimizer is the largest tau.
    k = np.nonzero(diffs == best)[0][-1]
    return float(distinct[k])


def ladder_for_densities(g, targets) -> ThresholdLadder:
    """Threshold ladder induced by edges-per-node targets.

    Each target picks its closest cut via :func:`threshold_for_density`;
    duplicates collapse (the largest target inducing a cut is kept) and
    the ladder is returned sorted.  Targets beyond the graph's positive
    density are rejected.
    """
    targets = [float(t) for t in targets]
    if not targets:
        raise ConfigError("need at least one density target")
    vals = _countable_values(g)
    max_density = np.count_nonzero(vals) / g.n
    if max_density == 0:
        raise EmptyGraphError("all weights are zero; no nontrivial ladder exists")
    by_tau: dict[float, float] = {}
    for t in sorted(targets, reverse=True):
        if t > max_density:
            raise ConfigError(
                f"density target {t} exceeds the graph's positive density {max_density}"
            )
        tau = threshold_for_density(g, t)
        by_tau.setdefault(tau, t)
    taus = sorted(by_tau)
    return ThresholdLadder(
        thresholds=tuple(taus), target_density=tuple(by_tau[t] for t in taus)
    )


@dataclass(frozen=True)
class UnitConversion:
    """Valued units per binary tie at one threshold."""

    factor: float
    threshold: float
    unit_label: str = "value"

    def __post_init__(self):
        if not np.isfinite(self.factor) or self.factor <= 0:
            raise ValueError(f"conversion factor must be positive, got {self.factor}")


def conversion_factor(g, tau: float) -> UnitConversion:
    """Difference in mean weight between the high group (w >= tau) and
    the low group (w < tau), over all ordered off-diagonal entries.

    Structural zeros sit in the low group.  Raises
    :class:`DegenerateSplitError` when either group is empty, since the
    factor is undefined there.
    """
    tau = float(tau)
    vals = g.weights[~np.eye(g.n, dtype=bool)]
    high = vals[vals >= tau]
    low = vals[vals < tau]
    if high.size == 0 or low.size == 0:
        raise DegenerateSplitError(
            f"threshold {tau} leaves an empty {'high' if high.size == 0 else 'low'} "
            "group; conversion factor undefined"
        )
    factor = float(high.mean() - low.mean())
    unit = getattr(g, "unit_label", "value")
    return UnitConversion(factor=factor, threshold=tau, unit_label=unit)


def to_valued_units(stat: float, kind: str, c: UnitConversion) -> float:
    """Convert a binary-graph statistic back onto the valued scale.

    ``kind`` is ``closeness`` (multiply by the factor) or ``distance``
    (divide by it); the ``-like`` suffix is accepted.
    """
    kind = kind.removesuffix("-like")
    if kind == "closeness":
        return float(stat) * c.factor
    if kind == "distance":
        return float(stat) / c.factor
    raise ValueError(f"kind must be 'closeness' or 'distance', got {kind!r}")


def giant_component_threshold(g, fraction: float = 0.5) -> float:
    """Largest threshold keeping a weakly connected component of at
    least ``fraction`` of all nodes.

    Candidate cuts are the distinct positive weights.  Raises
    :class:`NoGiantComponentError` if even the keep-everything cut
    falls short.
    """
    if not 0 < fraction <= 1:
        raise ConfigError(f"fraction must be in (0, 1], got {fraction}")
    w = g.weights
    n = g.n
    if g.directed:
        iu, iv = np.nonzero(w)
        keep = iu != iv
        iu, iv, ws = iu[keep], iv[keep], w[iu[keep], iv[keep]]
    else:
        iu, iv = np.triu_indices(n, k=1)
        pos = w[iu, iv] > 0
        iu, iv, ws = iu[pos], iv[pos], w[iu, iv][pos]
    if ws.size == 0:
        raise EmptyGraphError("all weights are zero; no component can form")

    order = np.argsort(-ws, kind="stable")
    iu, iv, ws = iu[order], iv[order], ws[order]
    sizes = percolation_profile(iu, iv, n)

    # Last edge index of each distinct-weight group, descending weight.
    ends = np.append(np.nonzero(np.diff(ws))[0], ws.size - 1)
    need = fraction * n
    for e in ends:
        if sizes[e] >= need:
            return float(ws[e])
    raise NoGiantComponentError(
        f"no threshold yields a component with >= {fraction:.0%} of {n} nodes"
    )
