"""Direct search for a binary representation of a valued graph.

Instead of cutting at a threshold, walk the space of binary graphs on
the valued support: flip one tie at a time, accept worse states with
the Metropolis probability exp(-dE/T), cool geometrically, remember the
best state ever seen.  Thresholded graphs are all reachable states, so
a seeded chain started at a decent cut can only match or improve the
ladder's best energy.

Flips are restricted to pairs with positive valued weight: a tie where
nothing was observed stays structurally absent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dichotomizer import BinaryGraph
from .errors import ConfigError
from .graphmetrics import rank, rank_discrepancy
from .seeds import child_seed, derive_rng
from .sweep import STATISTICS, _STAT_SPEC, _max_finite_offdiag, _metric_bundle, _needs

__all__ = ["AnnealConfig", "EnergyFunction", "anneal_binary"]


@dataclass(frozen=True)
class AnnealConfig:
    """Search schedule and objective.

    ``energy`` names any sweep statistic; rank energies compare
    importance rankings (ties broken under a seed fixed per run), value
    and diameter energies convert through the state's own high/low
    weight split and are +inf where that split is degenerate or
    nonpositive.  ``restart_every``, if set, teleports the chain back
    to the best state seen every so many steps.
    """

    energy: str = "harmonic_rank"
    initial_temp: float = 1.0
    cooling: float = 0.995
    steps: int = 2000
    restart_every: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.energy not in STATISTICS:
            raise ConfigError(
                f"energy must be one of {STATISTICS}, got {self.energy!r}"
            )
        temp = float(self.initial_temp)
        if not np.isfinite(temp) or temp <= 0:
            raise ConfigError(f"initial_temp must be positive, got {self.initial_temp!r}")
        object.__setattr__(self, "initial_temp", temp)
        cool = float(self.cooling)
        if not 0 < cool < 1:
            raise ConfigError(f"cooling must lie in (0, 1), got {self.cooling!r}")
        object.__setattr__(self, "cooling", cool)
        if not isinstance(self.steps, (int, np.integer)) or self.steps < 1:
            raise ConfigError(f"steps must be a positive integer, got {self.steps!r}")
        object.__setattr__(self, "steps", int(self.steps))
        if self.restart_every is not None:
            if not isinstance(self.restart_every, (int, np.integer)) or self.restart_every < 1:
                raise ConfigError(
                    f"restart_every must be a positive integer or None, got {self.restart_every!r}"
                )
            object.__setattr__(self, "restart_every", int(self.restart_every))
        if not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise ConfigError(f"seed must be a non-negative integer, got {self.seed!r}")
        object.__setattr__(self, "seed", int(self.seed))


class EnergyFunction:
    """Discrepancy of a binary state against its valued parent.

    Valued-side statistics are computed once at construction; each call
    scores one :class:`BinaryGraph`.  The same callable serves the
    annealer, ladder baselines, and exhaustive enumeration, so their
    energies are directly comparable.
    """

    def __init__(self, g, energy: str, tie_seed: int):
        if energy not in _STAT_SPEC:
            raise ConfigError(f"energy must be one of {STATISTICS}, got {energy!r}")
        self.energy = energy
        self.kind, self.family = _STAT_SPEC[energy]
        self.tie_seed = int(tie_seed)
        self._g = g
        self._needs = _needs((energy,))
        self._valued = _metric_bundle(g, self._needs)
        if self.kind == "rank":
            self._valued_rank = rank(self._valued[self.family], self.tie_seed)
        self._offdiag = ~np.eye(g.n, dtype=bool)

    def _state_factor(self, b: BinaryGraph) -> float:
        """High/low mean split induced by the state's own tie set;
        NaN when degenerate or nonpositive (energy undefined there)."""
        w = self._g.weights
        present = b.adjacency.astype(bool)
        high = w[present & self._offdiag]
        low = w[~present & self._offdiag]
        if high.size == 0 or low.size == 0:
            return float("nan")
        c = float(high.mean() - low.mean())
        return c if c > 0 else float("nan")

    def __call__(self, b: BinaryGraph) -> float:
        bundle = _metric_bundle(b, self._needs)
        if self.kind == "rank":
            rb = rank(bundle[self.family], self.tie_seed)
            return rank_discrepancy(self._valued_rank, rb)
        c = self._state_factor(b)
        if math.isnan(c):
            return float("inf")
        if self.kind == "value":
            dev = self._valued[self.family] - c * bundle[self.family]
            return float(np.mean(dev**2))
        key = "geo_diam" if self.family == "geodesic" else "ohmic_diam"
        dv, db = self._valued.get(key), bundle.get(key)
        if dv is None or db is None:
            return float("inf")
        return float((dv - db / c) ** 2)


def _candidate_pairs(g) -> np.ndarray:
    w = g.weights
    if g.directed:
        iu, iv = np.nonzero(w)
        keep = iu != iv
        return np.column_stack([iu[keep], iv[keep]])
    iu, iv = np.nonzero(np.triu(w, k=1))
    return np.column_stack([iu, iv])


def anneal_binary(g, init: BinaryGraph, cfg: AnnealConfig):
    """Metropolis search from ``init`` for the lowest-energy binary
    image of ``g``.

    Returns ``(best_graph, trace)`` where ``trace`` is a
    (steps + 1, 2) array of (current energy, best energy) per
    iteration, row 0 being the initial state.  Deterministic given
    ``cfg.seed``; with no candidate pairs the initial state is
    returned unchanged.
    """
    if init.n != g.n:
        raise ConfigError(f"init has {init.n} nodes, graph has {g.n}")
    if init.directed != g.directed:
        raise ConfigError("init and graph must agree on directedness")
    support = g.weights > 0
    if np.any(init.adjacency.astype(bool) & ~support):
        raise ConfigError("init contains ties absent from the valued support")

    energy_fn = EnergyFunction(g, cfg.energy, child_seed(cfg.seed, "ties"))
    pairs = _candidate_pairs(g)
    state = np.array(init.adjacency, dtype=np.int8)

    e_current = energy_fn(BinaryGraph(state.copy(), directed=g.directed))
    e_best = e_current
    best_state = state.copy()
    trace = np.empty((cfg.steps + 1, 2))
    trace[0] = (e_current, e_best)

    if pairs.shape[0] == 0:
        trace = trace[:1]
        return (
            BinaryGraph(best_state, directed=g.directed, source_threshold=init.source_threshold),
            trace,
        )

    rng = derive_rng(cfg.seed, "anneal")
    memo = {state.tobytes(): e_current}
    temp = cfg.initial_temp
    for step in range(1, cfg.steps + 1):
        if cfg.restart_every and step % cfg.restart_every == 0:
            state = best_state.copy()
            e_current = e_best
        i, j = pairs[int(rng.integers(pairs.shape[0]))]
        state[i, j] ^= 1
        if not g.directed:
            state[j, i] ^= 1
        key = state.tobytes()
        e_new = memo.get(key)
        if e_new is None:
            e_new = energy_fn(BinaryGraph(state.copy(), directed=g.directed))
            memo[key] = e_new

        if e_new <= e_current:
            accept = True
        else:
            accept = rng.random() < math.exp(-(e_new - e_current) / temp)
        if accept:
            e_current = e_new
            if e_new < e_best:
                e_best = e_new
                best_state = state.copy()
        else:
            state[i, j] ^= 1
            if not g.directed:
                state[j, i] ^= 1
        trace[step] = (e_current, e_best)
        temp *= cfg.cooling

    return (
        BinaryGraph(best_state, directed=g.directed, source_threshold=None),
        trace,
    )
