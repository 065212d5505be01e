"""One-step lagged linear models on valued vs dichotomized predictors.

The generating equation for node i is

    Y_i1 = intercept + gamma_ar * Y_i0 + beta * sum_j X_ij * Y_j0 + eps_i,

with eps ~ Normal(0, sigma^2) and the past property Y_j0 built to
correlate (rho) with the standardized valued indegree, so that popular
nodes can systematically differ in the property being transmitted.

Fitting the same equation with the valued weights and with each
dichotomized image measures what thresholding costs: the binary
beta-hat is divided by that threshold's conversion factor to return it
to valued units, squared errors against the generating coefficients
give per-threshold MSEs, and scale-adjusted 95% intervals give
coverage.  All fits share one simulated panel, so differences are
attributable to the predictor alone.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from scipy.stats import t as t_dist

from .dichotomizer import conversion_factor, dichotomize, threshold_for_density
from .errors import (
    CollinearDesignError,
    ConfigError,
    DegenerateSplitError,
    EmptyGraphError,
    TiecutError,
    UnrealizableCorrelationError,
)
from .netgen import GenConfig, sample_graph
from .seeds import child_seed, derive_rng

__all__ = [
    "LagConfig",
    "PanelData",
    "FitResult",
    "EfficiencyReport",
    "CRITERIA",
    "BATCH_COLUMNS",
    "simulate_outcomes",
    "fit_ols",
    "threshold_efficiency",
    "batch_study",
    "t_central_region",
    "summarize_tstats",
]

CRITERIA = ("min_gamma_mse", "min_beta_mse", "max_r2")

# Smallest singular-value ratio treated as full rank.
_RANK_TOL = 1e-10


@dataclass(frozen=True)
class LagConfig:
    """Generating parameters for the lagged model.

    ``gamma_ar`` is the autoregressive coefficient (kept well below 1
    in the studies here), ``beta`` the network coefficient (signed),
    ``sigma`` the error scale, ``rho`` the correlation between the
    standardized valued indegree and the past property, ``mu_y`` the
    past-property mean, ``intercept`` the outcome intercept.
    """

    gamma_ar: float = 0.3
    beta: float = 0.1
    sigma: float = 1.0
    rho: float = 0.0
    mu_y: float = 0.0
    intercept: float = 0.0
    seed: int = 0

    def __post_init__(self):
        for name in ("gamma_ar", "beta", "sigma", "rho", "mu_y", "intercept"):
            val = float(getattr(self, name))
            if not np.isfinite(val):
                raise ConfigError(f"{name} must be finite, got {val!r}")
            object.__setattr__(self, name, val)
        if self.sigma <= 0:
            raise ConfigError(f"sigma must be positive, got {self.sigma}")
        if abs(self.rho) > 1:
            raise ConfigError(f"rho must lie in [-1, 1], got {self.rho}")
        if not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise ConfigError(f"seed must be a non-negative integer, got {self.seed!r}")
        object.__setattr__(self, "seed", int(self.seed))


@dataclass(frozen=True, eq=False)
class PanelData:
    """Simulated two-period data plus the network predictor in use."""

    y0: np.ndarray
    y1: np.ndarray
    network_predictor: np.ndarray

    def __post_init__(self):
        n = self.y0.shape[0]
        if self.y1.shape != (n,) or self.network_predictor.shape != (n,):
            raise ValueError("panel arrays must share one length")
        for arr in (self.y0, self.y1, self.network_predictor):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return self.y0.shape[0]

    def with_network(self, g) -> "PanelData":
        """Same outcomes, predictor rebuilt from another graph's ties
        (used to refit the identical panel on a dichotomized image)."""
        w = np.asarray(g.weights, dtype=float)
        if w.shape[0] != self.n:
            raise ValueError("graph size does not match panel size")
        return PanelData(
            y0=self.y0.copy(),
            y1=self.y1.copy(),
            network_predictor=w @ self.y0,
        )


@dataclass(frozen=True, eq=False)
class FitResult:
    """OLS estimates of (intercept, gamma_ar, beta) with classical
    standard errors."""

    estimates: np.ndarray
    standard_errors: np.ndarray
    residual_variance: float
    r_squared: float
    t_statistics: np.ndarray
    df: int

    @property
    def intercept_hat(self) -> float:
        return float(self.estimates[0])

    @property
    def gamma_hat(self) -> float:
        return float(self.estimates[1])

    @property
    def beta_hat(self) -> float:
        return float(self.estimates[2])

    def conf_int(self, level: float = 0.95) -> np.ndarray:
        """(3, 2) array of equal-tailed t intervals."""
        half = t_dist.ppf(0.5 + level / 2.0, self.df) * self.standard_errors
        return np.column_stack([self.estimates - half, self.estimates + half])


def simulate_outcomes(g, cfg: LagConfig) -> PanelData:
    """Draw one panel on graph ``g``.

    The past property is Y_j0 = mu_y + rho * s_j + sqrt(1 - rho^2) z_j
    with s the standardized valued indegree (column sums) and z
    standard normal, so Y_0 is marginally Normal(mu_y, 1) with
    corr(indegree, Y_0) -> rho.  Deterministic given ``cfg.seed``.
    """
    w = np.asarray(g.weights, dtype=float)
    n = w.shape[0]
    indegree = w.sum(axis=0)
    spread = indegree.std()
    if spread == 0:
        if cfg.rho != 0:
            raise UnrealizableCorrelationError(
                f"indegree has zero variance; rho = {cfg.rho} cannot be realized"
            )
        s = np.zeros(n)
    else:
        s = (indegree - indegree.mean()) / spread
    z = derive_rng(cfg.seed, "past").standard_normal(n)
    y0 = cfg.mu_y + cfg.rho * s + np.sqrt(1.0 - cfg.rho**2) * z
    eps = derive_rng(cfg.seed, "noise").standard_normal(n)
    predictor = w @ y0
    y1 = cfg.intercept + cfg.gamma_ar * y0 + cfg.beta * predictor + cfg.sigma * eps
    return PanelData(y0=y0, y1=y1, network_predictor=predictor)


def fit_ols(pd: PanelData) -> FitResult:
    """Least squares of Y_1 on [1, Y_0, network predictor].

    Columns are normalized before the solve so that the huge predictor
    scales a heavy-tailed weight distribution produces do not poison
    the rank check; estimates are reported on the original scale.
    Raises :class:`CollinearDesignError` when the design is rank
    deficient (an empty or complete binary graph makes the predictor a
    combination of the other columns).
    """
    n = pd.n
    if n < 4:
        raise ValueError(f"need at least 4 observations for 3 coefficients, got {n}")
    X = np.column_stack([np.ones(n), pd.y0, pd.network_predictor])
    norms = np.sqrt((X**2).sum(axis=0))
    if np.any(norms == 0):
        raise CollinearDesignError("design has a zero column (constant-0 predictor)")
    Xs = X / norms
    u, s, vt = np.linalg.svd(Xs, full_matrices=False)
    if s[-1] < _RANK_TOL * s[0]:
        raise CollinearDesignError(
            "collinear design: the network predictor is a linear combination "
            "of the intercept and the lagged outcome"
        )
    coef_scaled = vt.T @ ((u.T @ pd.y1) / s)
    coef = coef_scaled / norms

    resid = pd.y1 - X @ coef
    ssr = float(resid @ resid)
    df = n - 3
    sigma2 = ssr / df
    cov_scaled = (vt.T * (1.0 / s**2)) @ vt
    cov = cov_scaled / np.outer(norms, norms)
    se = np.sqrt(sigma2 * np.diagonal(cov))

    centered = pd.y1 - pd.y1.mean()
    sst = float(centered @ centered)
    if sst > 0:
        r2 = min(max(1.0 - ssr / sst, 0.0), 1.0)
    else:
        r2 = 1.0 if ssr == 0 else 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        tstats = np.where(se > 0, coef / se, np.inf * np.sign(coef))
    return FitResult(
        estimates=coef,
        standard_errors=se,
        residual_variance=sigma2,
        r_squared=r2,
        t_statistics=tstats,
        df=df,
    )


def _covers(interval, truth: float) -> float:
    lo, hi = interval
    return float(lo <= truth <= hi)


@dataclass(frozen=True, eq=False)
class EfficiencyReport:
    """Per-threshold fits next to the valued baseline.

    Arrays run over the ladder; NaN marks cells lost to a degenerate
    conversion or a collinear design.  ``optima`` maps each criterion
    to its (threshold, density) pair, or None when every cell is
    missing.  MSE ratios are squared error at the threshold divided by
    the valued fit's squared error for the same coefficient.
    """

    true_gamma: float
    true_beta: float
    thresholds: np.ndarray
    densities: np.ndarray
    factors: np.ndarray
    gamma_hat: np.ndarray
    adjusted_beta: np.ndarray
    sq_err_gamma: np.ndarray
    sq_err_beta: np.ndarray
    cover_gamma: np.ndarray
    cover_beta: np.ndarray
    r2: np.ndarray
    t_beta: np.ndarray
    gamma_mse_ratio: np.ndarray
    beta_mse_ratio: np.ndarray
    valued_fit: FitResult
    valued_sq_err_gamma: float
    valued_sq_err_beta: float
    valued_cover_gamma: float
    valued_cover_beta: float
    optima: dict

    def rows(self):
        """Tidy iteration: (threshold, density, factor, gamma_hat,
        adjusted_beta, sq_err_gamma, sq_err_beta, cover_gamma,
        cover_beta, r2, t_beta, gamma_mse_ratio, beta_mse_ratio)."""
        def cell(x):
            return None if np.isnan(x) else float(x)

        for k in range(self.thresholds.shape[0]):
            yield (
                float(self.thresholds[k]),
                float(self.densities[k]),
                cell(self.factors[k]),
                cell(self.gamma_hat[k]),
                cell(self.adjusted_beta[k]),
                cell(self.sq_err_gamma[k]),
                cell(self.sq_err_beta[k]),
                cell(self.cover_gamma[k]),
                cell(self.cover_beta[k]),
                cell(self.r2[k]),
                cell(self.t_beta[k]),
                cell(self.gamma_mse_ratio[k]),
                cell(self.beta_mse_ratio[k]),
            )


def threshold_efficiency(g, cfg: LagConfig, ladder) -> EfficiencyReport:
    """Fit the valued model once, then refit the same panel at every
    threshold in ``ladder`` (a ThresholdLadder or a sequence of cuts).
    """
    taus = [float(t) for t in ladder]
    if not taus:
        raise ConfigError("ladder must contain at least one threshold")
    panel = simulate_outcomes(g, cfg)
    valued_fit = fit_ols(panel)
    v_ci = valued_fit.conf_int()
    valued_sq_gamma = (valued_fit.gamma_hat - cfg.gamma_ar) ** 2
    valued_sq_beta = (valued_fit.beta_hat - cfg.beta) ** 2
    valued_cover_gamma = _covers(v_ci[1], cfg.gamma_ar)
    valued_cover_beta = _covers(v_ci[2], cfg.beta)

    L = len(taus)
    arrays = {
        name: np.full(L, np.nan)
        for name in (
            "factors", "gamma_hat", "adjusted_beta", "sq_err_gamma", "sq_err_beta",
            "cover_gamma", "cover_beta", "r2", "t_beta",
        )
    }
    densities = np.empty(L)
    for k, tau in enumerate(taus):
        b = dichotomize(g, tau)
        densities[k] = b.edges_per_node()
        try:
            c = conversion_factor(g, tau).factor
            fit = fit_ols(panel.with_network(b))
        except (DegenerateSplitError, CollinearDesignError):
            continue
        ci = fit.conf_int()
        arrays["factors"][k] = c
        arrays["gamma_hat"][k] = fit.gamma_hat
        arrays["adjusted_beta"][k] = fit.beta_hat / c
        arrays["sq_err_gamma"][k] = (fit.gamma_hat - cfg.gamma_ar) ** 2
        arrays["sq_err_beta"][k] = (fit.beta_hat / c - cfg.beta) ** 2
        arrays["cover_gamma"][k] = _covers(ci[1], cfg.gamma_ar)
        arrays["cover_beta"][k] = _covers(ci[2] / c, cfg.beta)
        arrays["r2"][k] = fit.r_squared
        arrays["t_beta"][k] = fit.t_statistics[2]

    with np.errstate(invalid="ignore", divide="ignore"):
        gamma_ratio = arrays["sq_err_gamma"] / valued_sq_gamma
        beta_ratio = arrays["sq_err_beta"] / valued_sq_beta

    thresholds = np.asarray(taus)

    def _pick(values: np.ndarray, maximize: bool = False):
        ok = np.flatnonzero(~np.isnan(values))
        if ok.size == 0:
            return None
        score = -values[ok] if maximize else values[ok]
        order = sorted(range(ok.size), key=lambda i: (score[i], -thresholds[ok[i]]))
        k = ok[order[0]]
        return (float(thresholds[k]), float(densities[k]))

    optima = {
        "min_gamma_mse": _pick(arrays["sq_err_gamma"]),
        "min_beta_mse": _pick(arrays["sq_err_beta"]),
        "max_r2": _pick(arrays["r2"], maximize=True),
    }
    return EfficiencyReport(
        true_gamma=cfg.gamma_ar,
        true_beta=cfg.beta,
        thresholds=thresholds,
        densities=densities,
        factors=arrays["factors"],
        gamma_hat=arrays["gamma_hat"],
        adjusted_beta=arrays["adjusted_beta"],
        sq_err_gamma=arrays["sq_err_gamma"],
        sq_err_beta=arrays["sq_err_beta"],
        cover_gamma=arrays["cover_gamma"],
        cover_beta=arrays["cover_beta"],
        r2=arrays["r2"],
        t_beta=arrays["t_beta"],
        gamma_mse_ratio=gamma_ratio,
        beta_mse_ratio=beta_ratio,
        valued_fit=valued_fit,
        valued_sq_err_gamma=valued_sq_gamma,
        valued_sq_err_beta=valued_sq_beta,
        valued_cover_gamma=valued_cover_gamma,
        valued_cover_beta=valued_cover_beta,
        optima=optima,
    )


BATCH_COLUMNS = (
    "gen_index", "lag_index", "replicate",
    "n", "sigma_alpha", "geometry", "geo_strength", "cluster_pref", "mixing",
    "family", "directed",
    "gamma_ar", "beta", "sigma", "rho",
    "criterion", "threshold", "density",
    "gamma_mse_ratio", "beta_mse_ratio", "cover_gamma", "cover_beta", "r2",
    "t_beta", "t_beta_valued", "valued_r2",
)


def _density_grid(n: int, directed: bool, count: int = 15) -> tuple:
    """Log-spaced edges-per-node targets from sparse to half the
    complete graph's density."""
    top = (n - 1) if directed else (n - 1) / 2.0
    return tuple(np.geomspace(0.5, max(top / 2.0, 1.0), count))


def batch_study(gen_grid, lag_grid, replicates: int, density_targets=None,
                master_seed: int = 0, threads: int = 1) -> list:
    """Cross a grid of generator configs with a grid of lag configs.

    Each (generator, lag, replicate) instance samples a fresh graph,
    derives a per-replicate ladder from ``density_targets`` (default: a
    log-spaced grid up to half the maximum density), runs
    :func:`threshold_efficiency`, and emits one row per optimality
    criterion.  Returns a list of dicts keyed by ``BATCH_COLUMNS``.
    """
    gen_grid = list(gen_grid)
    lag_grid = list(lag_grid)
    if not gen_grid or not lag_grid:
        raise ConfigError("batch grids must be nonempty")
    if replicates < 1:
        raise ConfigError(f"replicates must be positive, got {replicates}")

    jobs = [
        (gi, li, rep)
        for gi in range(len(gen_grid))
        for li in range(len(lag_grid))
        for rep in range(replicates)
    ]

    def run(job):
        gi, li, rep = job
        try:
            gen = replace(
                gen_grid[gi], seed=child_seed(master_seed, "batch-gen", gi, li, rep)
            )
            lag = replace(
                lag_grid[li], seed=child_seed(master_seed, "batch-lag", gi, li, rep)
            )
            g = sample_graph(gen)
            targets = density_targets or _density_grid(gen.n, gen.directed)
            pos = np.count_nonzero(g.weights)
            max_density = (pos if g.directed else pos // 2) / g.n
            if max_density == 0:
                raise EmptyGraphError("sampled graph has no positive weights")
            taus = sorted(
                {threshold_for_density(g, min(float(t), max_density)) for t in targets}
            )
            return threshold_efficiency(g, lag, taus)
        except TiecutError as err:
            raise type(err)(
                f"gen {gi}, lag {li}, replicate {rep}: {err}"
            ) from err

    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(run, jobs))
    else:
        reports = [run(j) for j in jobs]

    rows = []
    for (gi, li, rep), report in zip(jobs, reports):
        gen, lag = gen_grid[gi], lag_grid[li]
        for crit in CRITERIA:
            opt = report.optima[crit]
            if opt is None:
                tau = density = None
                cells = dict.fromkeys(
                    ("gamma_mse_ratio", "beta_mse_ratio", "cover_gamma",
                     "cover_beta", "r2", "t_beta")
                )
            else:
                tau, density = opt
                k = int(np.flatnonzero(report.thresholds == tau)[0])

                def cell(arr):
                    return None if np.isnan(arr[k]) else float(arr[k])

                cells = {
                    "gamma_mse_ratio": cell(report.gamma_mse_ratio),
                    "beta_mse_ratio": cell(report.beta_mse_ratio),
                    "cover_gamma": cell(report.cover_gamma),
                    "cover_beta": cell(report.cover_beta),
                    "r2": cell(report.r2),
                    "t_beta": cell(report.t_beta),
                }
            rows.append({
                "gen_index": gi,
                "lag_index": li,
                "replicate": rep,
                "n": gen.n,
                "sigma_alpha": gen.sigma_alpha,
                "geometry": gen.geometry,
                "geo_strength": gen.geo_strength,
                "cluster_pref": gen.cluster_pref,
                "mixing": gen.mixing,
                "family": gen.family,
                "directed": gen.directed,
                "gamma_ar": lag.gamma_ar,
                "beta": lag.beta,
                "sigma": lag.sigma,
                "rho": lag.rho,
                "criterion": crit,
                "threshold": tau,
                "density": density,
                **cells,
                "t_beta_valued": float(report.valued_fit.t_statistics[2]),
                "valued_r2": report.valued_fit.r_squared,
            })
    return rows


def t_central_region(df: int = 50, level: float = 0.95):
    """Equal-tailed central region of the reference t density."""
    half = t_dist.ppf(0.5 + level / 2.0, df)
    return (-float(half), float(half))


def summarize_tstats(tstats, df: int = 50, level: float = 0.95) -> dict:
    """Count where t statistics fall against the reference t density's
    central region (the benchmark for 'looks like a null-ish t')."""
    lo, hi = t_central_region(df, level)
    ts = np.asarray([t for t in tstats if t is not None and np.isfinite(t)], dtype=float)
    return {
        "df": int(df),
        "level": float(level),
        "lower": lo,
        "upper": hi,
        "count": int(ts.size),
        "below": int((ts < lo).sum()),
        "inside": int(((ts >= lo) & (ts <= hi)).sum()),
        "above": int((ts > hi).sum()),
    }
