"""Shared instance generators and independent oracles.

Everything here is deliberately written from the definitions (ratio
construction, breadth-first reachability, direct evaluation of the averaging
and product identities) rather than through the library's own machinery, so
tests cross-check the implementation instead of echoing it.
"""

from __future__ import annotations

import numpy as np

from pcrank import MISSING, PCMatrix, Partition

Rows = list[list[float | None]]


def ratio_rows(v) -> Rows:
    """Fully consistent comparison grid c_ij = v_i / v_j."""
    return [[float(a) / float(b) for b in v] for a in v]


def perturbed_rows(v, rng, lo: float = 0.5, hi: float = 2.0) -> Rows:
    """Reciprocal but inconsistent grid: each upper-triangle ratio gets an
    independent multiplicative nudge from [lo, hi], mirrored exactly below."""
    rows = ratio_rows(v)
    n = len(rows)
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] *= float(rng.uniform(lo, hi))
            rows[j][i] = 1.0 / rows[i][j]
    return rows


def unknowns_reach_knowns(rows: Rows, k: int) -> bool:
    """Breadth-first reachability oracle over defined comparisons."""
    n = len(rows)
    seen = set(range(k, n))
    frontier = list(seen)
    while frontier:
        u = frontier.pop()
        for w in range(n):
            if w != u and w not in seen and rows[u][w] is not MISSING:
                seen.add(w)
                frontier.append(w)
    return all(i in seen for i in range(k))


def drop_pairs(rows: Rows, k: int, rng, max_density: float = 0.4) -> Rows:
    """Blank out random symmetric pairs without stranding any unknown.

    Candidate pairs are tried in random order up to a random target density;
    a drop that would leave some unknown unable to reach a known alternative
    is rolled back.
    """
    n = len(rows)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    order = rng.permutation(len(pairs))
    target = int(round(float(rng.uniform(0.0, max_density)) * len(pairs)))
    dropped = 0
    for idx in order:
        if dropped == target:
            break
        i, j = pairs[idx]
        keep_i, keep_j = rows[i][j], rows[j][i]
        rows[i][j] = rows[j][i] = MISSING
        if unknowns_reach_knowns(rows, k):
            dropped += 1
        else:
            rows[i][j], rows[j][i] = keep_i, keep_j
    return rows


def random_instance(
    rng,
    n: int | None = None,
    k: int | None = None,
    consistent: bool = False,
    incomplete: bool = True,
    max_density: float = 0.4,
):
    """A solvable random instance; returns (matrix, partition, generating v)."""
    if n is None:
        n = int(rng.integers(4, 11))
    if k is None:
        k = int(rng.integers(1, n))
    v = rng.uniform(0.2, 5.0, size=n)
    rows = ratio_rows(v) if consistent else perturbed_rows(v, rng)
    if incomplete:
        rows = drop_pairs(rows, k, rng, max_density)
    matrix = PCMatrix(tuple(tuple(row) for row in rows))
    partition = Partition(k, tuple(float(x) for x in v[k:]))
    return matrix, partition, v


def arithmetic_residual(matrix: PCMatrix, k: int, values) -> float:
    """Worst relative violation of the averaging identity
    w_i = mean(c_ij * w_j over defined j != i), for the unknown rows."""
    worst = 0.0
    for i in range(k):
        defined = [j for j in range(matrix.n) if j != i and matrix.defined(i, j)]
        mean = sum(matrix.value(i, j) * values[j] for j in defined) / len(defined)
        worst = max(worst, abs(values[i] - mean) / abs(values[i]))
    return worst


def geometric_residual(matrix: PCMatrix, k: int, values) -> float:
    """Worst relative violation of the product identity
    w_i ** (#defined) = prod(c_ij * w_j over defined j != i)."""
    worst = 0.0
    for i in range(k):
        defined = [j for j in range(matrix.n) if j != i and matrix.defined(i, j)]
        lhs = values[i] ** len(defined)
        rhs = 1.0
        for j in defined:
            rhs *= matrix.value(i, j) * values[j]
        worst = max(worst, abs(lhs - rhs) / abs(lhs))
    return worst


def max_rel_diff(a, b) -> float:
    return max(abs(x - y) / max(abs(x), abs(y)) for x, y in zip(a, b))


def rows_to_matrix(rows: Rows) -> PCMatrix:
    return PCMatrix(tuple(tuple(row) for row in rows))


def rng_for(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)
