"""The geometry experiment: replicate, dichotomize, compare.

Each replicate samples one valued graph, walks a threshold ladder, and
scores every binary image against its own valued parent (never against
other binary images):

* rank statistics compare importance rankings via the rank-discrepancy
  statistic; the valued ranking and every binary ranking in one
  (replicate, family) cell share a tie seed, so identical value vectors
  rank identically;
* value statistics convert the binary statistic into valued units with
  that threshold's conversion factor and record the mean squared
  per-node deviation;
* diameter statistics record the squared deviation of the converted
  binary diameter from the valued one.

Cells whose conversion factor is undefined (degenerate split) or whose
binary diameter is undefined (no connected pair) are recorded missing;
rank statistics are always computable.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .dichotomizer import (
    ThresholdLadder,
    conversion_factor,
    dichotomize,
    threshold_for_density,
)
from .errors import (
    ConfigError,
    DegenerateSplitError,
    EmptyGraphError,
    MissingCellError,
    TiecutError,
)
from .graphmetrics import (
    _conductance_sum,
    fixed_power_betweenness,
    geodesic_distances,
    harmonic_closeness,
    ohmic_distances,
    rank,
    rank_discrepancy,
)
from .netgen import GenConfig, sample_graph
from .seeds import child_seed

__all__ = [
    "STATISTICS",
    "SweepConfig",
    "SweepResult",
    "run_sweep",
    "optimal_threshold",
    "export_layers",
]

#: Statistic name -> (comparison kind, metric family).
_STAT_SPEC = {
    "harmonic_rank": ("rank", "harmonic"),
    "ohmic_rank": ("rank", "ohmic"),
    "power_rank": ("rank", "power"),
    "harmonic_value": ("value", "harmonic"),
    "ohmic_value": ("value", "ohmic"),
    "geo_diameter": ("diameter", "geodesic"),
    "ohmic_diameter": ("diameter", "ohmic"),
}

STATISTICS = tuple(_STAT_SPEC)

_RANK_FAMILIES = ("harmonic", "ohmic", "power")


@dataclass(frozen=True)
class SweepConfig:
    """One experiment: a generator (or an externally supplied graph), a
    ladder, and the statistics to score.

    Exactly one of ``ladder`` (explicit cuts, shared by every
    replicate) and ``density_targets`` (edges-per-node targets whose
    cuts are re-derived per replicate and aligned by target) must be
    set.
    """

    gen: GenConfig | None = None
    replicates: int = 10
    ladder: ThresholdLadder | None = None
    density_targets: tuple | None = None
    statistics: tuple = STATISTICS
    master_seed: int = 0

    def __post_init__(self):
        if not isinstance(self.replicates, (int, np.integer)) or self.replicates < 1:
            raise ConfigError(f"replicates must be a positive integer, got {self.replicates!r}")
        object.__setattr__(self, "replicates", int(self.replicates))
        if (self.ladder is None) == (self.density_targets is None):
            raise ConfigError("set exactly one of ladder and density_targets")
        if self.density_targets is not None:
            targets = tuple(sorted((float(t) for t in self.density_targets), reverse=True))
            if not targets:
                raise ConfigError("density_targets must be nonempty")
            if any(not np.isfinite(t) or t <= 0 for t in targets):
                raise ConfigError("density targets must be positive and finite")
            if len(set(targets)) != len(targets):
                raise ConfigError("density targets must be distinct")
            object.__setattr__(self, "density_targets", targets)
        stats = tuple(self.statistics)
        if not stats:
            raise ConfigError("statistics must be nonempty")
        unknown = [s for s in stats if s not in _STAT_SPEC]
        if unknown:
            raise ConfigError(f"unknown statistics {unknown}; choose from {STATISTICS}")
        if len(set(stats)) != len(stats):
            raise ConfigError("statistics must be distinct")
        object.__setattr__(self, "statistics", stats)
        if not isinstance(self.master_seed, (int, np.integer)) or self.master_seed < 0:
            raise ConfigError(f"master_seed must be a non-negative integer, got {self.master_seed!r}")
        object.__setattr__(self, "master_seed", int(self.master_seed))


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Per-cell discrepancies from one sweep.

    Arrays are (replicates, ladder length); ``values`` maps statistic
    name to its discrepancy array with NaN for missing cells.
    ``thresholds`` and ``densities`` record each cell's realized cut and
    edges-per-node; ``factors`` the conversion factor (NaN where
    degenerate).
    """

    statistics: tuple
    thresholds: np.ndarray
    densities: np.ndarray
    factors: np.ndarray
    values: dict
    targets: tuple | None
    master_seed: int

    @property
    def replicates(self) -> int:
        return self.thresholds.shape[0]

    @property
    def ladder_length(self) -> int:
        return self.thresholds.shape[1]

    def rows(self):
        """Tidy iteration: (replicate, threshold, density, statistic,
        discrepancy), with None for missing cells."""
        for r in range(self.replicates):
            for k in range(self.ladder_length):
                for stat in self.statistics:
                    v = self.values[stat][r, k]
                    yield (
                        r,
                        float(self.thresholds[r, k]),
                        float(self.densities[r, k]),
                        stat,
                        None if np.isnan(v) else float(v),
                    )

    def conversion_rows(self):
        """Tidy iteration: (replicate, threshold, density, factor)."""
        for r in range(self.replicates):
            for k in range(self.ladder_length):
                f = self.factors[r, k]
                yield (
                    r,
                    float(self.thresholds[r, k]),
                    float(self.densities[r, k]),
                    None if np.isnan(f) else float(f),
                )


def _max_finite_offdiag(matrix: np.ndarray) -> float | None:
    off = matrix[~np.eye(matrix.shape[0], dtype=bool)]
    off = off[np.isfinite(off)]
    return float(off.max()) if off.size else None


def _needs(statistics):
    kinds = {_STAT_SPEC[s] for s in statistics}
    fams = {f for _, f in kinds}
    return {
        "harmonic_vec": any(k in kinds for k in (("rank", "harmonic"), ("value", "harmonic"))),
        "ohmic_vec": any(k in kinds for k in (("rank", "ohmic"), ("value", "ohmic"))),
        "power_vec": ("rank", "power") in kinds,
        "geodesic": "harmonic" in fams or "geodesic" in fams,
        "ohmic": "ohmic" in fams,
        "geo_diam": ("diameter", "geodesic") in kinds,
        "ohmic_diam": ("diameter", "ohmic") in kinds,
    }


def _metric_bundle(g, needs) -> dict:
    """Vectors and diameters of one graph, computed at most once each."""
    out = {}
    if needs["geodesic"]:
        D = geodesic_distances(g)
        if needs["harmonic_vec"]:
            out["harmonic"] = harmonic_closeness(D).values
        if needs["geo_diam"]:
            out["geo_diam"] = _max_finite_offdiag(D.values)
    if needs["ohmic"]:
        R = ohmic_distances(g)
        if needs["ohmic_vec"]:
            out["ohmic"] = _conductance_sum(R.values)
        if needs["ohmic_diam"]:
            out["ohmic_diam"] = _max_finite_offdiag(R.values)
    if needs["power_vec"]:
        out["power"] = fixed_power_betweenness(g).values
    return out


def _replicate_cells(cfg: SweepConfig, graph, rep: int):
    """All cell values for one replicate; returns (thresholds,
    densities, factors, {stat: row})."""
    needs = _needs(cfg.statistics)
    if graph is None:
        g = sample_graph(replace(cfg.gen, seed=child_seed(cfg.master_seed, "gen", rep)))
    else:
        g = graph

    if cfg.ladder is not None:
        taus = list(cfg.ladder.thresholds)
    else:
        pos = np.count_nonzero(g.weights)
        max_density = (pos if g.directed else pos // 2) / g.n
        if max_density == 0:
            raise EmptyGraphError("graph has no positive weights; nothing to sweep")
        # Targets beyond this replicate's positive density fall back to
        # the keep-everything cut so cells stay aligned by target.
        taus = [
            threshold_for_density(g, min(t, max_density))
            for t in cfg.density_targets
        ]

    valued = _metric_bundle(g, needs)
    tie_seeds = {
        fam: child_seed(cfg.master_seed, "ties", rep, fam) for fam in _RANK_FAMILIES
    }
    valued_ranks = {
        fam: rank(valued[fam], tie_seeds[fam])
        for fam in _RANK_FAMILIES
        if fam in valued
    }

    L = len(taus)
    thresholds = np.array(taus, dtype=float)
    densities = np.empty(L)
    factors = np.full(L, np.nan)
    cells = {stat: np.full(L, np.nan) for stat in cfg.statistics}

    for k, tau in enumerate(taus):
        b = dichotomize(g, tau)
        densities[k] = b.edges_per_node()
        try:
            factors[k] = conversion_factor(g, tau).factor
        except DegenerateSplitError:
            pass
        binary = _metric_bundle(b, needs)
        for stat in cfg.statistics:
            kind, fam = _STAT_SPEC[stat]
            if kind == "rank":
                rb = rank(binary[fam], tie_seeds[fam])
                cells[stat][k] = rank_discrepancy(valued_ranks[fam], rb)
            elif kind == "value":
                if not np.isnan(factors[k]):
                    dev = valued[fam] - factors[k] * binary[fam]
                    cells[stat][k] = float(np.mean(dev**2))
            else:  # diameter
                key = "geo_diam" if fam == "geodesic" else "ohmic_diam"
                dv, db = valued.get(key), binary.get(key)
                if dv is not None and db is not None and not np.isnan(factors[k]):
                    # near-zero factors blow the rescaled diameter up to
                    # inf; keep it (the cut really is that bad) but do
                    # not warn about the overflow on the way there
                    with np.errstate(over="ignore"):
                        cells[stat][k] = (dv - db / factors[k]) ** 2
    return thresholds, densities, factors, cells


def run_sweep(cfg: SweepConfig, graph=None, threads: int = 1) -> SweepResult:
    """Run the full experiment.

    With ``graph`` supplied, every replicate scores that same graph
    (``cfg.gen`` must be None; use replicates=1 unless the tie-seed
    variability itself is of interest).  Otherwise each replicate
    samples a fresh graph from ``cfg.gen`` under a seed derived from
    (master_seed, replicate).  ``threads`` caps concurrent replicate
    evaluation; results are identical regardless.
    """
    if (cfg.gen is None) == (graph is None):
        raise ConfigError("provide exactly one of cfg.gen and graph")

    def job(rep: int):
        try:
            return _replicate_cells(cfg, graph, rep)
        except TiecutError as err:
            raise type(err)(f"replicate {rep}: {err}") from err

    reps = range(cfg.replicates)
    if threads > 1 and cfg.replicates > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_rep = list(pool.map(job, reps))
    else:
        per_rep = [job(r) for r in reps]

    L = per_rep[0][0].shape[0]
    R = cfg.replicates
    thresholds = np.vstack([p[0] for p in per_rep])
    densities = np.vstack([p[1] for p in per_rep])
    factors = np.vstack([p[2] for p in per_rep])
    values = {
        stat: np.vstack([p[3][stat] for p in per_rep]) for stat in cfg.statistics
    }
    assert thresholds.shape == (R, L)
    return SweepResult(
        statistics=cfg.statistics,
        thresholds=thresholds,
        densities=densities,
        factors=factors,
        values=values,
        targets=cfg.density_targets,
        master_seed=cfg.master_seed,
    )


def optimal_threshold(result: SweepResult, statistic: str):
    """The ladder position with the lowest discrepancy for one
    statistic, averaged over the replicates where it is defined.

    Ties break toward the higher (sparser) threshold.  Returns
    ``(threshold, edges_per_node)`` as medians across replicates at the
    winning position (exact values when the ladder is explicit).
    Raises :class:`MissingCellError` if every cell is missing.
    """
    if statistic not in result.statistics:
        raise ConfigError(
            f"statistic {statistic!r} not in this result (has {result.statistics})"
        )
    cells = result.values[statistic]
    counts = np.sum(~np.isnan(cells), axis=0)
    valid = np.flatnonzero(counts > 0)
    if valid.size == 0:
        raise MissingCellError(
            f"statistic {statistic!r}: every (replicate, threshold) cell is missing"
        )
    with np.errstate(invalid="ignore"):
        scores = np.nanmean(cells[:, valid], axis=0)
    med_tau = np.median(result.thresholds[:, valid], axis=0)
    order = sorted(
        range(valid.size), key=lambda k: (scores[k], -med_tau[k], -valid[k])
    )
    k = valid[order[0]]
    return (
        float(np.median(result.thresholds[:, k])),
        float(np.median(result.densities[:, k])),
    )


def export_layers(g, ladder: ThresholdLadder):
    """Edge membership per ladder step, for layered rendering elsewhere.

    Returns a tuple of (threshold, edges) pairs where ``edges`` is an
    (m, 2) int array; rising thresholds give nested edge sets.
    Undirected graphs list each unordered pair once (i < j).
    """
    layers = []
    w = g.weights
    for tau in ladder.thresholds:
        keep = w >= tau
        np.fill_diagonal(keep, False)
        if not g.directed:
            keep = np.triu(keep)
        iu, iv = np.nonzero(keep)
        layers.append((float(tau), np.column_stack([iu, iv])))
    return tuple(layers)
