"""Pure-Python/numpy fallbacks for the compiled kernels.

Same contracts as ``_kernels.pyx``.  Selected by ``_backend`` when the
extension is unavailable or ``TIECUT_PURE_PYTHON`` is set.  Summation
order differs from the compiled loops, so results agree to rounding,
not bitwise.
"""

from __future__ import annotations

import numpy as np

__all__ = ["throughflow_accumulate", "percolation_profile"]


def throughflow_accumulate(K: np.ndarray, eu: np.ndarray, ev: np.ndarray,
                           ew: np.ndarray) -> np.ndarray:
    """Sum absolute edge currents over all unordered source/sink pairs.

    ``K`` is the grounded inverse Laplacian of one connected component
    (nc x nc, C order); ``eu``, ``ev``, ``ew`` list its edges.  Injecting
    unit current at a and extracting at b puts potential K[:, a] - K[:, b]
    on the nodes, so edge e carries ew[e] * (K[eu, a] - K[eu, b]
    - K[ev, a] + K[ev, b]).  Returns per-node totals where each edge
    credits its absolute current to both endpoints, summed over pairs
    a < b.
    """
    K = np.ascontiguousarray(K, dtype=np.float64)
    eu = np.asarray(eu, dtype=np.int64)
    ev = np.asarray(ev, dtype=np.int64)
    ew = np.asarray(ew, dtype=np.float64)
    nc = K.shape[0]
    acc = np.zeros(nc)
    if eu.size == 0 or nc < 2:
        return acc
    # Currents for pair (a, b) are column differences of this matrix.
    flow = ew[:, None] * (K[eu, :] - K[ev, :])
    edge_tot = np.zeros(eu.size)
    for a in range(nc - 1):
        edge_tot += np.abs(flow[:, a, None] - flow[:, a + 1:]).sum(axis=1)
    acc = np.bincount(eu, weights=edge_tot, minlength=nc)
    acc += np.bincount(ev, weights=edge_tot, minlength=nc)
    return acc


def percolation_profile(eu: np.ndarray, ev: np.ndarray, n: int) -> np.ndarray:
    """Largest-component size after inserting each edge in order.

    Union-find with path halving; direction is ignored (weak
    connectivity).  Returns an int64 array, one entry per edge.
    """
    eu = np.asarray(eu, dtype=np.int64)
    ev = np.asarray(ev, dtype=np.int64)
    m = eu.size
    parent = list(range(n))
    size = [1] * n
    largest = 1 if n else 0
    out = np.empty(m, dtype=np.int64)

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k in range(m):
        ra, rb = find(int(eu[k])), find(int(ev[k]))
        if ra != rb:
            if size[ra] < size[rb]:
                ra, rb = rb, ra
            parent[rb] = ra
            size[ra] += size[rb]
            if size[ra] > largest:
                largest = size[ra]
        out[k] = largest
    return out
