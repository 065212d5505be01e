"""Command-line driver.

Seven subcommands cover the full workflow: ``generate`` samples a
valued graph, ``sweep`` runs the replicated threshold experiment,
``lm-sweep`` scores lagged-regression efficiency on one graph,
``batch`` crosses generator and model grids, ``anneal`` searches for a
better binary image than any single cut, ``analyze`` sweeps real data
files, and ``layers`` exports nested binary edge sets.

Every run writes its tables plus a ``manifest.json`` recording the
tool version, subcommand, seed, and the resolved configuration; two
runs with identical manifests produce byte-identical outputs.  All
computational failures exit 1 with the offending cell's coordinates on
stderr; bad flags or subcommands exit 2 with usage text.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from itertools import product
from pathlib import Path

import numpy as np

from .annealer import AnnealConfig, EnergyFunction, anneal_binary
from .datio import (
    _GEN_KEYS,
    _LAG_KEYS,
    _coerce,
    canonical_config,
    gen_config_from,
    lag_config_from,
    load_correlation_matrix,
    load_edgelist,
    load_rank_matrix,
    mutual_min,
    parse_config,
    read_graph,
    write_graph,
    write_manifest,
    write_table,
)
from .dichotomizer import ThresholdLadder, dichotomize, threshold_for_density
from .errors import ConfigError, MissingCellError, TiecutError
from .lagmodel import (
    BATCH_COLUMNS,
    CRITERIA,
    LagConfig,
    batch_study,
    summarize_tstats,
    threshold_efficiency,
)
from .netgen import GenConfig, sample_graph
from .seeds import child_seed
from .sweep import (
    STATISTICS,
    SweepConfig,
    export_layers,
    optimal_threshold,
    run_sweep,
)

__all__ = ["main", "build_parser"]


def _float_list(text: str) -> tuple:
    try:
        return tuple(float(tok) for tok in text.replace(",", " ").split())
    except ValueError as err:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") from err


def _name_list(text: str) -> tuple:
    return tuple(tok for tok in text.replace(",", " ").split())


def _default_targets(n: int, directed: bool, count: int = 15) -> tuple:
    """Log-spaced edges-per-node targets, sparse up to half the
    complete graph."""
    top = (n - 1) if directed else (n - 1) / 2.0
    return tuple(np.geomspace(0.5, max(top / 2.0, 1.0), count))


def _sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=None,
                     help="master seed (overrides any config seed)")
    sub.add_argument("--config", default=None, metavar="FILE",
                     help="INI config file")
    sub.add_argument("--out", default="out", metavar="DIR",
                     help="output directory (default: out)")
    sub.add_argument("--threads", type=int, default=1,
                     help="parallel work units for sweep/batch (default: 1)")


def _add_ladder_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--thresholds", default=None, metavar="T1,T2,...",
                     help="explicit cut values")
    sub.add_argument("--targets", default=None, metavar="D1,D2,...",
                     help="edges-per-node density targets")


def _load_config(args) -> dict:
    return parse_config(args.config) if args.config else {}


def _section_int(section: dict, key: str, name: str):
    return _coerce(name, key, section[key], int) if key in section else None


def _check_keys(section: dict, known, name: str) -> None:
    unknown = sorted(set(section) - set(known))
    if unknown:
        raise ConfigError(f"[{name}] unknown keys {unknown}; known keys: {sorted(known)}")


def _resolve_seed(args, *sections) -> int:
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError(f"--seed must be non-negative, got {args.seed}")
        return args.seed
    for section in sections:
        if "seed" in section:
            return _coerce("config", "seed", section["seed"], int)
    return 0


def _ladder_spec(args, config):
    """Resolve (thresholds, targets) from flags, then the [sweep]
    section; at most one may be set."""
    section = config.get("sweep", {})
    _check_keys(section, ("replicates", "thresholds", "targets", "statistics", "seed"),
                "sweep")
    thresholds = _float_list(args.thresholds) if args.thresholds else None
    targets = _float_list(args.targets) if args.targets else None
    if thresholds is None and targets is None:
        if "thresholds" in section:
            thresholds = _float_list(section["thresholds"])
        if "targets" in section:
            targets = _float_list(section["targets"])
    if thresholds is not None and targets is not None:
        raise ConfigError("give explicit thresholds or density targets, not both")
    return thresholds, targets


def _statistics(args, config) -> tuple:
    if getattr(args, "statistics", None):
        return _name_list(args.statistics)
    section = config.get("sweep", {})
    if "statistics" in section:
        return _name_list(section["statistics"])
    return STATISTICS


def _gen_overrides(args) -> dict:
    pairs = (
        ("n", "n"), ("sigma_alpha", "sigma_alpha"), ("geometry", "geometry"),
        ("geo_strength", "geo_strength"), ("cluster_pref", "cluster_pref"),
        ("mixing", "mixing"), ("family", "family"),
    )
    overrides = {}
    for field, attr in pairs:
        value = getattr(args, attr, None)
        if value is not None:
            overrides[field] = value
    if getattr(args, "directed", None) is not None:
        overrides["directed"] = args.directed == "true"
    return overrides


def _gen_config(args, config, seed: int):
    overrides = _gen_overrides(args)
    if "n" not in overrides and "n" not in config.get("generate", {}):
        overrides["n"] = 30
    return gen_config_from(config, seed=seed, **overrides)


def _input_graph(args, config, seed: int):
    """The graph a single-graph subcommand operates on: ``--graph
    FILE`` or a fresh sample from the [generate] section."""
    if getattr(args, "graph", None):
        g = read_graph(args.graph)
        meta = {"input": {"path": str(args.graph), "sha256": _sha256(args.graph)}}
        return g, meta
    gen = _gen_config(args, config, child_seed(seed, "gen"))
    return sample_graph(gen), {"generate": canonical_config(gen)}


def _clamped_taus(g, targets) -> list:
    """Distinct cuts realizing the density targets, each clamped to
    the graph's achievable density."""
    vals = g.weights[~np.eye(g.n, dtype=bool)] if g.directed \
        else g.weights[np.triu_indices(g.n, k=1)]
    max_density = np.count_nonzero(vals) / g.n
    if max_density == 0:
        raise ConfigError("graph has no positive weights; nothing to cut")
    return sorted({threshold_for_density(g, min(float(t), max_density)) for t in targets})


def _resolve_taus(g, thresholds, targets) -> list:
    if thresholds is not None:
        return sorted(set(thresholds))
    if targets is None:
        targets = _default_targets(g.n, g.directed)
    return _clamped_taus(g, targets)


def _write(out_dir: Path, name: str, columns, rows) -> str:
    write_table(out_dir / name, columns, rows)
    print(f"wrote {out_dir / name}")
    return name


# --- subcommands ----------------------------------------------------------


def _cmd_generate(args) -> int:
    config = _load_config(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    gen = _gen_config(args, config, _resolve_seed(args, config.get("generate", {})))
    g = sample_graph(gen)
    write_graph(g, out / "graph.tsv")
    print(f"wrote {out / 'graph.tsv'}")
    write_manifest(out, "generate", gen.seed, {"generate": canonical_config(gen)},
                   ["graph.tsv"])
    print(f"wrote {out / 'manifest.json'}")
    return 0


def _cmd_sweep(args) -> int:
    config = _load_config(args)
    section = config.get("sweep", {})
    seed = _resolve_seed(args, section)
    thresholds, targets = _ladder_spec(args, config)
    stats = _statistics(args, config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    graph = None
    meta = {}
    if args.graph:
        graph = read_graph(args.graph)
        meta["input"] = {"path": str(args.graph), "sha256": _sha256(args.graph)}
        replicates = args.replicates or _section_int(section, "replicates", "sweep") or 1
        gen = None
        if thresholds is None and targets is None:
            targets = _default_targets(graph.n, graph.directed)
    else:
        gen = _gen_config(args, config, 0)
        meta["generate"] = canonical_config(gen)
        replicates = args.replicates or _section_int(section, "replicates", "sweep") or 10
        if thresholds is None and targets is None:
            targets = _default_targets(gen.n, gen.directed)

    ladder = ThresholdLadder(thresholds=tuple(thresholds)) if thresholds else None
    cfg = SweepConfig(
        gen=gen, replicates=replicates, ladder=ladder,
        density_targets=targets, statistics=stats, master_seed=seed,
    )
    result = run_sweep(cfg, graph=graph, threads=args.threads)

    outputs = [
        _write(out, "sweep_cells.tsv",
               ("replicate", "threshold", "density", "statistic", "discrepancy"),
               result.rows()),
        _write(out, "sweep_conversions.tsv",
               ("replicate", "threshold", "density", "factor"),
               result.conversion_rows()),
    ]

    def optima_rows():
        for stat in stats:
            try:
                tau, density = optimal_threshold(result, stat)
            except MissingCellError:
                tau = density = None
            yield (stat, tau, density)

    outputs.append(_write(out, "sweep_optima.tsv",
                          ("statistic", "threshold", "density"), optima_rows()))

    meta["sweep"] = {
        "replicates": replicates,
        "thresholds": list(thresholds) if thresholds else None,
        "targets": [float(t) for t in targets] if targets else None,
        "statistics": list(stats),
    }
    write_manifest(out, "sweep", seed, meta, outputs)
    print(f"wrote {out / 'manifest.json'}")
    return 0


def _cmd_lm_sweep(args) -> int:
    config = _load_config(args)
    seed = _resolve_seed(args, config.get("lagmodel", {}), config.get("generate", {}))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    g, meta = _input_graph(args, config, seed)
    overrides = {}
    for field in ("gamma_ar", "beta", "sigma", "rho", "mu_y", "intercept"):
        value = getattr(args, field, None)
        if value is not None:
            overrides[field] = value
    lag = lag_config_from(config, seed=child_seed(seed, "lag"), **overrides)
    meta["lagmodel"] = canonical_config(lag)

    thresholds, targets = _ladder_spec(args, config)
    taus = _resolve_taus(g, thresholds, targets)
    report = threshold_efficiency(g, lag, taus)

    outputs = [
        _write(out, "lm_cells.tsv",
               ("threshold", "density", "factor", "gamma_hat", "adjusted_beta",
                "sq_err_gamma", "sq_err_beta", "cover_gamma", "cover_beta",
                "r2", "t_beta", "gamma_mse_ratio", "beta_mse_ratio"),
               report.rows()),
        _write(out, "lm_valued.tsv",
               ("gamma_hat", "beta_hat", "r2", "t_beta",
                "sq_err_gamma", "sq_err_beta"),
               [(report.valued_fit.gamma_hat, report.valued_fit.beta_hat,
                 report.valued_fit.r_squared,
                 float(report.valued_fit.t_statistics[2]),
                 report.valued_sq_err_gamma, report.valued_sq_err_beta)]),
        _write(out, "lm_optima.tsv", ("criterion", "threshold", "density"),
               ((crit,) + (report.optima[crit] or (None, None)) for crit in CRITERIA)),
    ]
    meta["thresholds"] = [float(t) for t in taus]
    write_manifest(out, "lm-sweep", seed, meta, outputs)
    print(f"wrote {out / 'manifest.json'}")
    return 0


def _grid_configs(section: dict, schema: dict, name: str, cls) -> list:
    """Cross every comma-separated value list in a config section.

    Single values give a one-point grid; the first key listed varies
    slowest.
    """
    _check_keys(section, schema, name)
    lists = {}
    for key, raw in section.items():
        parts = [p.strip() for p in raw.split(",")] if "," in raw else [raw]
        lists[key] = [_coerce(name, key, p, schema[key]) for p in parts]
    keys = list(lists)
    if not keys:
        return [cls()]
    return [cls(**dict(zip(keys, combo)))
            for combo in product(*(lists[k] for k in keys))]


def _cmd_batch(args) -> int:
    config = _load_config(args)
    section = config.get("batch", {})
    _check_keys(section, ("replicates", "targets", "seed"), "batch")
    seed = _resolve_seed(args, section)
    if "generate" not in config or "n" not in config["generate"]:
        raise ConfigError("batch requires a config file with [generate] setting n")
    gen_grid = _grid_configs(config["generate"], _GEN_KEYS, "generate", GenConfig)
    lag_grid = _grid_configs(config.get("lagmodel", {}), _LAG_KEYS, "lagmodel", LagConfig)

    replicates = args.replicates or _section_int(section, "replicates", "batch") or 10
    targets = _float_list(args.targets) if args.targets else (
        _float_list(section["targets"]) if "targets" in section else None
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    rows = batch_study(gen_grid, lag_grid, replicates, density_targets=targets,
                       master_seed=seed, threads=args.threads)
    outputs = [
        _write(out, "batch.tsv", BATCH_COLUMNS,
               ([row[c] for c in BATCH_COLUMNS] for row in rows)),
    ]

    def summary_rows():
        for crit in CRITERIA:
            ts = [row["t_beta"] for row in rows if row["criterion"] == crit]
            s = summarize_tstats(ts)
            yield (crit, s["df"], s["level"], s["lower"], s["upper"],
                   s["count"], s["below"], s["inside"], s["above"])
        ts = [row["t_beta_valued"] for row in rows if row["criterion"] == CRITERIA[0]]
        s = summarize_tstats(ts)
        yield ("valued", s["df"], s["level"], s["lower"], s["upper"],
               s["count"], s["below"], s["inside"], s["above"])

    outputs.append(_write(
        out, "batch_tstats.tsv",
        ("criterion", "df", "level", "lower", "upper", "count",
         "below", "inside", "above"),
        summary_rows()))

    meta = {
        "generate_grid": dict(config["generate"]),
        "lagmodel_grid": dict(config.get("lagmodel", {})),
        "batch": {
            "replicates": replicates,
            "targets": [float(t) for t in targets] if targets else None,
        },
    }
    write_manifest(out, "batch", seed, meta, outputs)
    print(f"wrote {out / 'manifest.json'}")
    return 0


def _cmd_anneal(args) -> int:
    config = _load_config(args)
    section = config.get("anneal", {})
    _check_keys(section, ("energy", "initial_temp", "cooling", "steps",
                          "restart_every", "seed"), "anneal")
    seed = _resolve_seed(args, section)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    g, meta = _input_graph(args, config, seed)

    schedule = {}
    for key, kind in (("energy", str), ("initial_temp", float), ("cooling", float),
                      ("steps", int), ("restart_every", int)):
        if key in section:
            schedule[key] = _coerce("anneal", key, section[key], kind)
        value = getattr(args, key, None)
        if value is not None:
            schedule[key] = value
    cfg = AnnealConfig(seed=seed, **schedule)

    thresholds, targets = _ladder_spec(args, config)
    taus = _resolve_taus(g, thresholds, targets)
    energy_fn = EnergyFunction(g, cfg.energy, child_seed(cfg.seed, "ties"))

    ladder_rows = []
    best_tau, best_energy = None, float("inf")
    for tau in taus:
        layer = dichotomize(g, tau)
        e = energy_fn(layer)
        ladder_rows.append((tau, layer.edges_per_node(),
                            None if np.isinf(e) else e))
        # ties toward the sparser cut, matching ladder conventions
        if e < best_energy or (e == best_energy and best_tau is not None and tau > best_tau):
            best_tau, best_energy = tau, e

    if args.tau is None and best_tau is None:
        raise ConfigError(
            "every ladder cut has undefined energy; pick a start with --tau"
        )
    init = dichotomize(g, args.tau if args.tau is not None else best_tau)
    best, trace = anneal_binary(g, init, cfg)

    outputs = [
        _write(out, "anneal_ladder.tsv", ("threshold", "density", "energy"),
               ladder_rows),
        _write(out, "anneal_trace.tsv", ("step", "current_energy", "best_energy"),
               ((k, None if np.isinf(row[0]) else float(row[0]),
                 None if np.isinf(row[1]) else float(row[1]))
                for k, row in enumerate(trace))),
    ]
    write_graph(best, out / "anneal_best.tsv")
    print(f"wrote {out / 'anneal_best.tsv'}")
    outputs.append("anneal_best.tsv")

    print(f"initial cut {init.source_threshold!r}: energy {float(trace[0, 0])!r}")
    print(f"annealed best energy {float(trace[-1, 1])!r} "
          f"after {trace.shape[0] - 1} steps")

    meta["anneal"] = canonical_config(cfg)
    meta["thresholds"] = [float(t) for t in taus]
    if args.tau is not None:
        meta["initial_threshold"] = float(args.tau)
    write_manifest(out, "anneal", seed, meta, outputs)
    print(f"wrote {out / 'manifest.json'}")
    return 0


_LOADERS = {
    "edgelist": "edge list (source target weight)",
    "matrix": "dense correlation matrix",
    "ranks": "per-respondent preference ranks",
}


def _cmd_analyze(args) -> int:
    config = _load_config(args)
    seed = _resolve_seed(args, config.get("sweep", {}))
    thresholds, targets = _ladder_spec(args, config)
    stats = _statistics(args, config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    inputs = []
    for path in args.inputs:
        if args.format == "edgelist":
            g = load_edgelist(path, directed=args.directed == "true",
                              unit=args.unit, n=args.n)
        elif args.format == "matrix":
            g = load_correlation_matrix(path, take_absolute=args.absolute)
        else:
            g = load_rank_matrix(path)
        if args.mutual:
            g = mutual_min(g)
        inputs.append((Path(path).stem, path, g))

    cell_rows, conv_rows, opt_rows = [], [], []
    for name, path, g in inputs:
        taus = _resolve_taus(g, thresholds, targets)
        cfg = SweepConfig(
            gen=None, replicates=1,
            ladder=ThresholdLadder(thresholds=tuple(taus)),
            statistics=stats, master_seed=seed,
        )
        try:
            result = run_sweep(cfg, graph=g, threads=1)
        except TiecutError as err:
            raise type(err)(f"{name}: {err}") from err
        for rep, tau, density, stat, value in result.rows():
            cell_rows.append((name, tau, density, stat, value))
        for rep, tau, density, factor in result.conversion_rows():
            conv_rows.append((name, tau, density, factor))
        for stat in stats:
            try:
                tau, density = optimal_threshold(result, stat)
            except MissingCellError:
                tau = density = None
            opt_rows.append((name, stat, tau, density))

    outputs = [
        _write(out, "analyze_cells.tsv",
               ("input", "threshold", "density", "statistic", "discrepancy"),
               cell_rows),
        _write(out, "analyze_conversions.tsv",
               ("input", "threshold", "density", "factor"), conv_rows),
        _write(out, "analyze_optima.tsv",
               ("input", "statistic", "threshold", "density"), opt_rows),
    ]
    meta = {
        "format": args.format,
        "inputs": [{"path": str(p), "sha256": _sha256(p)} for _, p, _ in inputs],
        "mutual": bool(args.mutual),
        "statistics": list(stats),
        "thresholds": list(thresholds) if thresholds else None,
        "targets": [float(t) for t in targets] if targets else None,
    }
    if args.format == "edgelist":
        meta["directed"] = args.directed == "true"
        meta["unit"] = args.unit
    if args.format == "matrix":
        meta["take_absolute"] = bool(args.absolute)
    write_manifest(out, "analyze", seed, meta, outputs)
    print(f"wrote {out / 'manifest.json'}")
    return 0


def _cmd_layers(args) -> int:
    config = _load_config(args)
    seed = _resolve_seed(args, config.get("generate", {}))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    g, meta = _input_graph(args, config, seed)
    thresholds, targets = _ladder_spec(args, config)
    taus = _resolve_taus(g, thresholds, targets)
    ladder = ThresholdLadder(thresholds=tuple(taus))

    outputs = []
    index_rows = []
    for k, (tau, edges) in enumerate(export_layers(g, ladder), start=1):
        name = f"layer_{k:02d}.tsv"
        lines = [f"# threshold {tau!r}"]
        lines += [f"{i} {j} 1" for i, j in edges]
        (out / name).write_text("\n".join(lines) + "\n")
        print(f"wrote {out / name}")
        outputs.append(name)
        count = edges.shape[0]
        index_rows.append((k, tau, count, count / g.n))

    outputs.append(_write(out, "layers_index.tsv",
                          ("layer", "threshold", "edges", "edges_per_node"),
                          index_rows))
    meta["thresholds"] = [float(t) for t in taus]
    write_manifest(out, "layers", seed, meta, outputs)
    print(f"wrote {out / 'manifest.json'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tiecut",
        description="Measure what dichotomizing a valued network throws away.",
    )
    from . import __version__

    parser.add_argument("--version", action="version", version=f"tiecut {__version__}")
    subs = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = subs.add_parser("generate", help="sample a valued graph and write it")
    _add_common(p)
    p.add_argument("--n", type=int, default=None, help="node count (default: 30)")
    p.add_argument("--sigma-alpha", dest="sigma_alpha", type=float, default=None)
    p.add_argument("--geometry", choices=("none", "ring", "cloud", "cluster_in",
                                          "cluster_out"), default=None)
    p.add_argument("--geo-strength", dest="geo_strength", type=float, default=None)
    p.add_argument("--cluster-pref", dest="cluster_pref", type=float, default=None)
    p.add_argument("--mixing", type=float, default=None)
    p.add_argument("--family", choices=("gamma", "poisson"), default=None)
    p.add_argument("--directed", choices=("true", "false"), default=None)
    p.set_defaults(func=_cmd_generate)

    p = subs.add_parser("sweep", help="replicated threshold sweep")
    _add_common(p)
    _add_ladder_flags(p)
    p.add_argument("--graph", default=None, metavar="FILE",
                   help="sweep this graph file instead of generating")
    p.add_argument("--replicates", type=int, default=None)
    p.add_argument("--statistics", default=None, metavar="S1,S2,...",
                   help=f"subset of {','.join(STATISTICS)}")
    p.set_defaults(func=_cmd_sweep)

    p = subs.add_parser("lm-sweep", help="lagged-regression efficiency sweep")
    _add_common(p)
    _add_ladder_flags(p)
    p.add_argument("--graph", default=None, metavar="FILE")
    p.add_argument("--gamma-ar", dest="gamma_ar", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--mu-y", dest="mu_y", type=float, default=None)
    p.add_argument("--intercept", type=float, default=None)
    p.set_defaults(func=_cmd_lm_sweep)

    p = subs.add_parser("batch", help="cross generator and model grids")
    _add_common(p)
    p.add_argument("--replicates", type=int, default=None)
    p.add_argument("--targets", default=None, metavar="D1,D2,...")
    p.set_defaults(func=_cmd_batch)

    p = subs.add_parser("anneal", help="search binary images beyond the ladder")
    _add_common(p)
    _add_ladder_flags(p)
    p.add_argument("--graph", default=None, metavar="FILE")
    p.add_argument("--energy", choices=STATISTICS, default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--initial-temp", dest="initial_temp", type=float, default=None)
    p.add_argument("--cooling", type=float, default=None)
    p.add_argument("--restart-every", dest="restart_every", type=int, default=None)
    p.add_argument("--tau", type=float, default=None,
                   help="start from this cut instead of the ladder's best")
    p.set_defaults(func=_cmd_anneal)

    p = subs.add_parser("analyze", help="threshold sweep on real data files")
    _add_common(p)
    _add_ladder_flags(p)
    p.add_argument("inputs", nargs="+", metavar="FILE")
    p.add_argument("--format", choices=tuple(_LOADERS), required=True,
                   help="; ".join(f"{k}: {v}" for k, v in _LOADERS.items()))
    p.add_argument("--directed", choices=("true", "false"), default="false",
                   help="edge list directedness (default: false)")
    p.add_argument("--unit", default="value", help="edge list unit label")
    p.add_argument("--n", type=int, default=None, help="edge list node count")
    p.add_argument("--absolute", action="store_true",
                   help="use |r| for correlation matrices")
    p.add_argument("--mutual", action="store_true",
                   help="keep min(w_ij, w_ji) before cutting")
    p.add_argument("--statistics", default=None, metavar="S1,S2,...")
    p.set_defaults(func=_cmd_analyze)

    p = subs.add_parser("layers", help="export nested binary edge sets")
    _add_common(p)
    _add_ladder_flags(p)
    p.add_argument("--graph", default=None, metavar="FILE")
    p.set_defaults(func=_cmd_layers)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TiecutError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
