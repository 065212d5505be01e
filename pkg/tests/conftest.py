"""Shared oracles and helpers.

The circuit oracles here solve full dense nodal systems from scratch,
one right-hand side per terminal pair, so they share no code path with
the library's grounded-inverse implementation.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

DATA = Path(__file__).parent / "data"

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def record_acceptance(number: int, ok: bool, detail: str = "") -> None:
    tail = f"  ({detail})" if detail else ""
    line = f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'}{tail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def resistance_oracle(w: np.ndarray, a: int, b: int) -> float:
    """Two-terminal effective resistance by direct nodal analysis.

    Grounds b, injects unit current at a, solves the reduced dense
    system with a fresh factorization; only valid when a and b are
    connected.
    """
    n = w.shape[0]
    lap = np.diag(w.sum(axis=1)) - w
    keep = [k for k in range(n) if k != b]
    rhs = np.zeros(n - 1)
    rhs[keep.index(a)] = 1.0
    x = np.linalg.solve(lap[np.ix_(keep, keep)], rhs)
    return float(x[keep.index(a)])


def betweenness_oracle(w: np.ndarray) -> np.ndarray:
    """Fixed-power throughflow by per-pair nodal solves.

    For every unordered pair in a component: solve the potentials at
    unit injected current, credit each edge's absolute current to both
    endpoints, then add (component size - 1) to every member for the
    terminal contributions.
    """
    from scipy.sparse.csgraph import connected_components
    from scipy.sparse import csr_matrix

    n = w.shape[0]
    sym = (w + w.T) / 2.0
    _, labels = connected_components(csr_matrix(sym), directed=False)
    out = np.zeros(n)
    for comp in np.unique(labels):
        idx = np.flatnonzero(labels == comp)
        m = idx.size
        if m == 1:
            continue
        wc = sym[np.ix_(idx, idx)]
        lap = np.diag(wc.sum(axis=1)) - wc
        eu, ev = np.nonzero(np.triu(wc, k=1))
        acc = np.zeros(m)
        for a in range(m - 1):
            for b in range(a + 1, m):
                rhs = np.zeros(m)
                rhs[a], rhs[b] = 1.0, -1.0
                x = np.zeros(m)
                x[1:] = np.linalg.solve(lap[1:, 1:], rhs[1:])
                cur = np.abs(wc[eu, ev] * (x[eu] - x[ev]))
                np.add.at(acc, eu, cur)
                np.add.at(acc, ev, cur)
        out[idx] = acc + (m - 1)
    return out


def random_connected_weights(rng: np.random.Generator, n: int) -> np.ndarray:
    """Symmetric positive weights on a connected support: a random
    spanning tree plus a random sprinkle of extra edges."""
    w = np.zeros((n, n))
    order = rng.permutation(n)
    for k in range(1, n):
        i, j = order[k], order[int(rng.integers(0, k))]
        w[i, j] = w[j, i] = rng.uniform(0.1, 3.0)
    iu, iv = np.triu_indices(n, k=1)
    extra = rng.random(iu.size) < 0.4
    for i, j in zip(iu[extra], iv[extra]):
        if w[i, j] == 0:
            w[i, j] = w[j, i] = rng.uniform(0.1, 3.0)
    return w
