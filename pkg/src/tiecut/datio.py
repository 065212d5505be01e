"""File formats: graph loaders, graph interchange, config files,
result tables, and run manifests.

Input styles mirror the three ways valued networks show up in
practice: count edge lists (who contacted whom how often), correlation
matrices (how strongly two signals covary), and per-respondent
preference rankings (who ranks whom how highly, converted to
fractions).  All loaders are total: a malformed file raises
:class:`LoadError` naming the offending line and nothing half-loaded
escapes.

Result tables are tab-separated with a header row; floats carry 12
significant digits so equal runs emit byte-identical files.  Graph
interchange files are the exception: weights are written with full
round-trip precision because reloading must reproduce them exactly.
"""

from __future__ import annotations

import configparser
import json
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .errors import ConfigError, LoadError
from .lagmodel import LagConfig
from .netgen import GenConfig, ValuedGraph

__all__ = [
    "load_edgelist",
    "load_correlation_matrix",
    "load_rank_matrix",
    "mutual_min",
    "write_graph",
    "read_graph",
    "format_cell",
    "write_table",
    "read_table",
    "parse_config",
    "gen_config_from",
    "lag_config_from",
    "canonical_config",
    "write_manifest",
]


def _data_lines(path: Path):
    """Yield (line_number, content) skipping blanks and # comments."""
    try:
        text = path.read_text()
    except OSError as err:
        raise LoadError(f"{path}: {err}") from err
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _tokens(line: str) -> list:
    return line.replace(",", " ").split()


def load_edgelist(path, directed: bool = False, unit: str = "value",
                  n: int | None = None) -> ValuedGraph:
    """Read a (source, target, weight) edge list.

    Node ids must be integers, 0- or 1-based; unlisted pairs get weight
    0.  Pass ``n`` to fix the node count (required for files that list
    no edges, allowed to exceed the highest id so isolated nodes
    survive).  Duplicate pairs, self-loops, negative weights, and
    malformed rows are rejected with their line number.
    """
    path = Path(path)
    entries = []
    for lineno, line in _data_lines(path):
        parts = _tokens(line)
        if len(parts) != 3:
            raise LoadError(
                f"{path}:{lineno}: expected 'source target weight', got {len(parts)} fields"
            )
        try:
            src, dst = int(parts[0]), int(parts[1])
        except ValueError as err:
            raise LoadError(f"{path}:{lineno}: node ids must be integers") from err
        try:
            w = float(parts[2])
        except ValueError as err:
            raise LoadError(f"{path}:{lineno}: weight {parts[2]!r} is not a number") from err
        if not np.isfinite(w) or w < 0:
            raise LoadError(f"{path}:{lineno}: weight must be finite and nonnegative, got {w}")
        if src == dst:
            raise LoadError(f"{path}:{lineno}: self-loop on node {src}")
        entries.append((lineno, src, dst, w))

    if not entries:
        if n is None:
            raise LoadError(f"{path}: no edges and no node count given")
        return ValuedGraph(weights=np.zeros((n, n)), directed=directed, unit_label=unit)

    ids = [e[1] for e in entries] + [e[2] for e in entries]
    base = 0 if min(ids) == 0 else 1
    size = max(ids) - base + 1
    if n is not None:
        if size > n:
            raise LoadError(
                f"{path}: node id {max(ids)} does not fit in {n} nodes (ids are {base}-based)"
            )
        size = n

    weights = np.zeros((size, size))
    seen = set()
    for lineno, src, dst, w in entries:
        i, j = src - base, dst - base
        key = (i, j) if directed else (min(i, j), max(i, j))
        if key in seen:
            raise LoadError(f"{path}:{lineno}: duplicate pair {src} {dst}")
        seen.add(key)
        weights[i, j] = w
        if not directed:
            weights[j, i] = w
    return ValuedGraph(weights=weights, directed=directed, unit_label=unit)


def load_correlation_matrix(path, take_absolute: bool = False) -> ValuedGraph:
    """Read a dense correlation matrix as an undirected valued graph.

    Requires a square, symmetric matrix with unit diagonal and entries
    in [-1, 1]; the diagonal is zeroed.  Negative correlations only
    load with ``take_absolute`` (weights must be nonnegative).
    """
    path = Path(path)
    rows = []
    for lineno, line in _data_lines(path):
        try:
            rows.append((lineno, [float(tok) for tok in _tokens(line)]))
        except ValueError as err:
            raise LoadError(f"{path}:{lineno}: non-numeric entry") from err
    if not rows:
        raise LoadError(f"{path}: empty matrix")
    n = len(rows)
    for lineno, row in rows:
        if len(row) != n:
            raise LoadError(
                f"{path}:{lineno}: row has {len(row)} entries, matrix has {n} rows"
            )
    m = np.array([row for _, row in rows])
    if np.any(np.abs(m) > 1 + 1e-12):
        bad = int(np.argmax(np.abs(m).max(axis=1) > 1 + 1e-12))
        raise LoadError(f"{path}:{rows[bad][0]}: correlation outside [-1, 1]")
    if np.any(np.abs(np.diagonal(m) - 1) > 1e-9):
        bad = int(np.argmax(np.abs(np.diagonal(m) - 1) > 1e-9))
        raise LoadError(f"{path}:{rows[bad][0]}: diagonal entry is not 1")
    if np.any(np.abs(m - m.T) > 1e-9):
        raise LoadError(f"{path}: matrix is not symmetric")
    m = (m + m.T) / 2.0
    if take_absolute:
        m = np.abs(m)
    elif np.any(m < 0):
        raise LoadError(
            f"{path}: negative correlations present; load with take_absolute to use |r|"
        )
    np.fill_diagonal(m, 0.0)
    return ValuedGraph(weights=m, directed=False, unit_label="correlation")


def load_rank_matrix(path) -> ValuedGraph:
    """Read per-respondent preference ranks and convert them to
    fractions.

    Row i ranks the other n-1 respondents 1 (best) .. n-1; rows may
    either omit the self entry (n-1 integers) or carry a 0 in the
    diagonal position (n integers).  Preference p becomes weight
    (n - p)/(n - 1), so rank 1 maps to 1.0 and rank n-1 to 1/(n-1);
    the result is directed.
    """
    path = Path(path)
    rows = []
    for lineno, line in _data_lines(path):
        try:
            rows.append((lineno, [int(tok) for tok in _tokens(line)]))
        except ValueError as err:
            raise LoadError(f"{path}:{lineno}: ranks must be integers") from err
    if not rows:
        raise LoadError(f"{path}: empty matrix")
    n = len(rows)
    expected = sorted(range(1, n))
    weights = np.zeros((n, n))
    for i, (lineno, row) in enumerate(rows):
        if len(row) == n:
            if row[i] != 0:
                raise LoadError(
                    f"{path}:{lineno}: diagonal entry must be 0, got {row[i]}"
                )
            prefs = row[:i] + row[i + 1:]
        elif len(row) == n - 1:
            prefs = row
        else:
            raise LoadError(
                f"{path}:{lineno}: row has {len(row)} entries, expected {n} or {n - 1}"
            )
        if sorted(prefs) != expected:
            raise LoadError(
                f"{path}:{lineno}: row is not a permutation of 1..{n - 1}"
            )
        k = 0
        for j in range(n):
            if j == i:
                continue
            weights[i, j] = (n - prefs[k]) / (n - 1)
            k += 1
    return ValuedGraph(weights=weights, directed=True, unit_label="fraction")


def mutual_min(g: ValuedGraph) -> ValuedGraph:
    """Mutuality reduction: keep min(w_ij, w_ji), undirected.

    Applied before dichotomizing, a tie then needs both directions to
    clear the threshold.
    """
    w = np.minimum(g.weights, g.weights.T)
    return ValuedGraph(weights=w, directed=False, unit_label=g.unit_label)


def write_graph(g: ValuedGraph, path) -> None:
    """Write a graph interchange file (reload reproduces weights
    exactly; see :func:`read_graph`)."""
    path = Path(path)
    lines = [
        "# graph",
        f"# directed {'true' if g.directed else 'false'}",
        f"# unit {g.unit_label}",
        f"# n {g.n}",
    ]
    w = g.weights
    if g.directed:
        iu, iv = np.nonzero(w)
    else:
        iu, iv = np.nonzero(np.triu(w, k=1))
    for i, j, val in zip(iu, iv, w[iu, iv]):
        lines.append(f"{int(i)} {int(j)} {float(val)!r}")
    path.write_text("\n".join(lines) + "\n")


def read_graph(path) -> ValuedGraph:
    """Read a file written by :func:`write_graph`."""
    path = Path(path)
    meta = {}
    try:
        text = path.read_text()
    except OSError as err:
        raise LoadError(f"{path}: {err}") from err
    body = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split(None, 1)
            if len(parts) == 2:
                meta[parts[0]] = parts[1]
            continue
        body.append((lineno, line))
    for key in ("directed", "n"):
        if key not in meta:
            raise LoadError(f"{path}: missing '# {key} ...' header")
    directed = meta["directed"] == "true"
    try:
        n = int(meta["n"])
    except ValueError as err:
        raise LoadError(f"{path}: bad node count {meta['n']!r}") from err
    weights = np.zeros((n, n))
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 3:
            raise LoadError(f"{path}:{lineno}: expected 'i j weight'")
        try:
            i, j, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError as err:
            raise LoadError(f"{path}:{lineno}: malformed entry") from err
        if not (0 <= i < n and 0 <= j < n):
            raise LoadError(f"{path}:{lineno}: node index out of range")
        weights[i, j] = w
        if not directed:
            weights[j, i] = w
    return ValuedGraph(
        weights=weights, directed=directed, unit_label=meta.get("unit", "value")
    )


def format_cell(value) -> str:
    """Canonical table cell: 12 significant digits for floats, NA for
    missing."""
    if value is None:
        return "NA"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        if np.isnan(value):
            return "NA"
        return f"{float(value):.12g}"
    return str(value)


def write_table(path, columns, rows) -> None:
    """Write a tab-separated table with a header row."""
    path = Path(path)
    out = ["\t".join(columns)]
    for row in rows:
        out.append("\t".join(format_cell(v) for v in row))
    path.write_text("\n".join(out) + "\n")


def read_table(path):
    """Read a table written by :func:`write_table`; returns
    (columns, rows) with all cells as strings."""
    path = Path(path)
    lines = path.read_text().splitlines()
    if not lines:
        raise LoadError(f"{path}: empty table")
    columns = lines[0].split("\t")
    return columns, [line.split("\t") for line in lines[1:]]


# --- configuration files -------------------------------------------------

_GEN_KEYS = {
    "n": int, "sigma_alpha": float, "geometry": str, "geo_strength": float,
    "cluster_pref": float, "mixing": float, "family": str, "directed": bool,
    "seed": int,
}
_LAG_KEYS = {
    "gamma_ar": float, "beta": float, "sigma": float, "rho": float,
    "mu_y": float, "intercept": float, "seed": int,
}


def _coerce(section: str, key: str, raw: str, kind):
    raw = raw.strip()
    try:
        if kind is bool:
            low = raw.lower()
            if low in ("true", "1", "yes"):
                return True
            if low in ("false", "0", "no"):
                return False
            raise ValueError(raw)
        return kind(raw)
    except ValueError as err:
        raise ConfigError(
            f"[{section}] {key} = {raw!r} is not a valid {kind.__name__}"
        ) from err


def parse_config(path) -> dict:
    """Parse an INI-style config file into {section: {key: raw string}}."""
    parser = configparser.ConfigParser()
    path = Path(path)
    try:
        with path.open() as fh:
            parser.read_file(fh)
    except OSError as err:
        raise LoadError(f"{path}: {err}") from err
    except configparser.Error as err:
        raise LoadError(f"{path}: {err}") from err
    return {name: dict(parser[name]) for name in parser.sections()}


def _config_from(section: dict, schema: dict, section_name: str, cls, overrides: dict):
    values = {}
    for key, raw in section.items():
        if key not in schema:
            raise ConfigError(
                f"[{section_name}] unknown key {key!r}; known keys: {sorted(schema)}"
            )
        values[key] = _coerce(section_name, key, raw, schema[key])
    values.update(overrides)
    return cls(**values)


def gen_config_from(config: dict, **overrides) -> GenConfig:
    """Build a GenConfig from a parsed config's [generate] section;
    keyword overrides win (the CLI's --seed, for instance)."""
    section = config.get("generate", {})
    if "n" not in section and "n" not in overrides:
        raise ConfigError("[generate] must set n")
    return _config_from(section, _GEN_KEYS, "generate", GenConfig, overrides)


def lag_config_from(config: dict, **overrides) -> LagConfig:
    """Build a LagConfig from a parsed config's [lagmodel] section."""
    section = config.get("lagmodel", {})
    return _config_from(section, _LAG_KEYS, "lagmodel", LagConfig, overrides)


def canonical_config(obj) -> dict:
    """Dataclass config -> plain dict with stable key order."""
    d = asdict(obj)
    return {k: d[k] for k in sorted(d)}


def write_manifest(out_dir, command: str, seed, config: dict, outputs) -> Path:
    """Record what produced a run's outputs.

    The manifest carries the tool version, subcommand, seed, canonical
    config, and output file names; identical manifests imply
    byte-identical outputs.  No timestamps, by design.
    """
    from . import __version__

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = {
        "tool": "tiecut",
        "version": __version__,
        "command": command,
        "seed": seed,
        "config": config,
        "outputs": sorted(outputs),
    }
    path = out_dir / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path
