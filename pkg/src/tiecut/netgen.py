"""Valued-network generation.

Networks are drawn from a two-family generative model.  Each node i
carries an activity effect alpha_i ~ Normal(0, sigma_alpha^2) and,
depending on the configured geometry, a position on the unit circle or
in a Gaussian cloud, or one of three cluster labels.  The mean tie
strength for an ordered pair (i, j) is

    mu_ij = alpha_i + alpha_j + mixing * alpha_i * alpha_j
            - geo_strength * |d_i - d_j|          (ring / cloud)
            + cluster_pref * 1(a_i == a_j)        (cluster_in / cluster_out)

mapped through :func:`positive_transform` to a strictly positive
outcome parameter, then a weight is drawn from the chosen family:

* ``gamma``: shape mu^2, rate mu, so the draw has mean mu and
  variance 1 regardless of mu;
* ``poisson``: counts with mean mu.

Only one of the distance term and the cluster term can be active; the
single ``geometry`` field enforces that structurally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .seeds import derive_rng

__all__ = [
    "GEOMETRIES",
    "FAMILIES",
    "GenConfig",
    "NodeLatents",
    "ValuedGraph",
    "sample_latents",
    "mean_parameter",
    "positive_transform",
    "sample_graph",
]

GEOMETRIES = ("none", "ring", "cloud", "cluster_in", "cluster_out")
FAMILIES = ("gamma", "poisson")

# Smallest positive outcome parameter.  Keeps the gamma rate finite when
# mu_ij is so negative that exp(mu - 1) underflows to zero.
_MU_FLOOR = np.finfo(float).tiny


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class GenConfig:
    """Parameters of the generative model.

    Parameters
    ----------
    n : int
        Node count, at least 2.
    sigma_alpha : float
        Standard deviation of the node effects; 0 gives homogeneous
        nodes.
    geometry : str
        One of ``none``, ``ring``, ``cloud``, ``cluster_in``,
        ``cluster_out``.  Ring and cloud activate the distance term;
        the cluster variants activate the shared-label term.
    geo_strength : float
        Distance coefficient (non-negative); ignored unless geometry
        is ``ring`` or ``cloud``.
    cluster_pref : float
        Shared-cluster propensity; must be >= 0 for ``cluster_in``
        (within-preferring) and <= 0 for ``cluster_out``
        (across-preferring).  Ignored for other geometries.
    mixing : float
        Assortativity coefficient on alpha_i * alpha_j.
    family : str
        ``gamma`` (continuous, variance 1) or ``poisson`` (counts).
    directed : bool
        Directed graphs draw the two arcs of a pair independently with
        the same mean; undirected graphs draw once per pair.
    seed : int
        Master seed for this configuration.
    """

    n: int
    sigma_alpha: float = 1.0
    geometry: str = "none"
    geo_strength: float = 0.0
    cluster_pref: float = 0.0
    mixing: float = 0.0
    family: str = "gamma"
    directed: bool = False
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool):
            raise ConfigError(f"n must be an integer, got {self.n!r}")
        if self.n < 2:
            raise ConfigError(f"n must be at least 2, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(
            self, "sigma_alpha", _require_finite("sigma_alpha", self.sigma_alpha)
        )
        if self.sigma_alpha < 0:
            raise ConfigError(f"sigma_alpha must be >= 0, got {self.sigma_alpha}")
        if self.geometry not in GEOMETRIES:
            raise ConfigError(
                f"geometry must be one of {GEOMETRIES}, got {self.geometry!r}"
            )
        object.__setattr__(
            self, "geo_strength", _require_finite("geo_strength", self.geo_strength)
        )
        if self.geo_strength < 0:
            raise ConfigError(f"geo_strength must be >= 0, got {self.geo_strength}")
        object.__setattr__(
            self, "cluster_pref", _require_finite("cluster_pref", self.cluster_pref)
        )
        if self.geometry == "cluster_in" and self.cluster_pref < 0:
            raise ConfigError("cluster_in requires cluster_pref >= 0")
        if self.geometry == "cluster_out" and self.cluster_pref > 0:
            raise ConfigError("cluster_out requires cluster_pref <= 0")
        object.__setattr__(self, "mixing", _require_finite("mixing", self.mixing))
        if self.family not in FAMILIES:
            raise ConfigError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if not isinstance(self.directed, bool):
            raise ConfigError(f"directed must be a bool, got {self.directed!r}")
        if not isinstance(self.seed, (int, np.integer)) or isinstance(self.seed, bool):
            raise ConfigError(f"seed must be an integer, got {self.seed!r}")
        if self.seed < 0:
            raise ConfigError(f"seed must be non-negative, got {self.seed}")
        object.__setattr__(self, "seed", int(self.seed))

    @property
    def distance_active(self) -> bool:
        return self.geometry in ("ring", "cloud")

    @property
    def cluster_active(self) -> bool:
        return self.geometry in ("cluster_in", "cluster_out")


@dataclass(frozen=True, eq=False)
class NodeLatents:
    """Per-node latent draws behind one sampled graph.

    ``alpha`` is always populated.  ``position`` holds ring coordinates
    for ring geometry and standard bivariate normal draws otherwise, so
    the field is always an (n, 2) array even when the distance term is
    inactive.  ``cluster`` holds labels in {1, 2, 3} drawn uniformly.
    Draw order is fixed (alpha, cluster, position), so alpha and
    cluster are identical across geometries at equal seeds.
    """

    alpha: np.ndarray
    position: np.ndarray
    cluster: np.ndarray

    def __post_init__(self):
        n = self.alpha.shape[0]
        if self.position.shape != (n, 2):
            raise ValueError("position must be an (n, 2) array")
        if self.cluster.shape != (n,):
            raise ValueError("cluster must be an (n,) array")
        for arr in (self.alpha, self.position, self.cluster):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return self.alpha.shape[0]


@dataclass(frozen=True, eq=False)
class ValuedGraph:
    """A nonnegative-weight sociomatrix with zero diagonal.

    ``weights[i, j]`` is the valued tie from i to j.  Undirected graphs
    must be symmetric.  ``unit_label`` names the physical unit of one
    weight step (e.g. ``messages``).
    """

    weights: np.ndarray
    directed: bool = False
    unit_label: str = "value"

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError(f"weights must be square, got shape {w.shape}")
        if w.shape[0] < 1:
            raise ValueError("graph needs at least one node")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        if np.any(np.diagonal(w) != 0):
            raise ValueError("diagonal must be zero")
        if not self.directed and not np.array_equal(w, w.T):
            raise ValueError("undirected graph must have symmetric weights")
        w = w.copy()
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def offdiag_values(self) -> np.ndarray:
        """All ordered off-diagonal weights as a flat array (length
        n*(n-1)), structural zeros included."""
        mask = ~np.eye(self.n, dtype=bool)
        return self.weights[mask]

    def edges_per_node(self) -> float:
        """Positive-weight density: arcs per node when directed,
        unordered edges per node when undirected."""
        pos = np.count_nonzero(self.weights)
        if not self.directed:
            pos //= 2
        return pos / self.n


def sample_latents(config: GenConfig, rng: np.random.Generator | None = None) -> NodeLatents:
    """Draw the per-node latent variables for ``config``.

    With ``rng=None`` the stream is derived from ``config.seed``, which
    is also the stream :func:`sample_graph` uses, so the two agree.
    """
    if rng is None:
        rng = derive_rng(config.seed, "latents")
    n = config.n
    alpha = rng.normal(0.0, config.sigma_alpha, size=n)
    cluster = rng.integers(1, 4, size=n)
    if config.geometry == "ring":
        angles = 2.0 * np.pi * np.arange(n) / n
        position = np.column_stack([np.cos(angles), np.sin(angles)])
    else:
        position = rng.standard_normal((n, 2))
    return NodeLatents(alpha=alpha, position=position, cluster=cluster)


def mean_parameter(latents: NodeLatents, config: GenConfig, i: int, j: int) -> float:
    """Mean tie strength mu_ij for the ordered pair (i, j).

    Inactive geometry and cluster terms contribute zero.  Raises
    ``ValueError`` for i == j: self-ties have no mean.
    """
    if i == j:
        raise ValueError(f"mean_parameter is undefined on the diagonal (i = j = {i})")
    a = latents.alpha
    mu = a[i] + a[j] + config.mixing * a[i] * a[j]
    if config.distance_active:
        mu -= config.geo_strength * float(
            np.linalg.norm(latents.position[i] - latents.position[j])
        )
    if config.cluster_active and latents.cluster[i] == latents.cluster[j]:
        mu += config.cluster_pref
    return float(mu)


def positive_transform(mu: float):
    """Map a real mean onto the strictly positive outcome scale.

    Returns exp(mu - 1) below 1 and mu itself from 1 up; continuous,
    monotone, strictly positive.  Accepts scalars or arrays.
    """
    mu = np.asarray(mu, dtype=float)
    out = np.where(mu < 1.0, np.exp(np.minimum(mu, 1.0) - 1.0), mu)
    if out.ndim == 0:
        return float(out)
    return out


def _mean_matrix(latents: NodeLatents, config: GenConfig) -> np.ndarray:
    """All-pairs mu_ij; the diagonal is meaningless and later discarded."""
    a = latents.alpha
    mu = a[:, None] + a[None, :] + config.mixing * np.outer(a, a)
    if config.distance_active:
        diff = latents.position[:, None, :] - latents.position[None, :, :]
        mu -= config.geo_strength * np.sqrt((diff**2).sum(axis=2))
    if config.cluster_active:
        same = latents.cluster[:, None] == latents.cluster[None, :]
        mu += config.cluster_pref * same
    return mu


def sample_graph(config: GenConfig) -> ValuedGraph:
    """Sample one valued graph from the configured family.

    Directed graphs draw every ordered pair independently; undirected
    graphs draw each unordered pair once and mirror it.  Deterministic
    given ``config.seed``.
    """
    latents = sample_latents(config)
    rng = derive_rng(config.seed, "edges")
    n = config.n
    mu_pos = np.maximum(positive_transform(_mean_matrix(latents, config)), _MU_FLOOR)

    if config.family == "poisson":
        draws = rng.poisson(mu_pos).astype(float)
    else:
        draws = rng.gamma(shape=mu_pos**2, scale=1.0 / mu_pos)

    weights = np.zeros((n, n))
    if config.directed:
        mask = ~np.eye(n, dtype=bool)
        weights[mask] = draws[mask]
    else:
        iu = np.triu_indices(n, k=1)
        weights[iu] = draws[iu]
        weights = weights + weights.T

    unit = "counts" if config.family == "poisson" else "value"
    return ValuedGraph(weights=weights, directed=config.directed, unit_label=unit)
