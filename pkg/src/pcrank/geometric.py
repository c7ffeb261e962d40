"""Geometric-mean ranking of the unknown alternatives.

Here each unknown priority is postulated to be the geometric mean of
``c_ij * w(a_j)`` over the defined comparisons.  Raising row ``i`` to the
power ``n - s_i - 1`` and taking logarithms turns the multiplicative system
into a linear one: the coefficient matrix holds the defined-comparison count
on the diagonal and -1 wherever two unknowns were compared; products against
known alternatives collapse into the constant terms.  Exponentiating the
solution maps back to priorities, so the result is positive whenever the
system solves at all.

The logarithm base is mathematically irrelevant (it cancels in the back
transformation); it is exposed only so that invariance can be demonstrated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linsolve import LinearSystem, solve
from .matrix import DEFAULT_TOL, PCMatrix, Partition, Ranking, ensure_solvable, undefined_counts


@dataclass(frozen=True, eq=False)
class GeometricSystem:
    """Log-linear system for the unknown priorities.

    ``coeff[i][i]`` is the defined-comparison count ``n - s_i - 1``;
    off-diagonal entries are -1 for a defined unknown-unknown comparison and
    0 for a missing one, so the zero pattern is symmetric.  ``constants[i]``
    sums the logarithms of the defined ``c_ij`` toward unknowns plus the
    logarithms of ``c_ij * w(a_j)`` toward knowns (empty sums contribute 0).
    """

    coeff: np.ndarray
    constants: np.ndarray
    log_base: float


def build_geometric_system(
    matrix: PCMatrix,
    partition: Partition,
    log_base: float = math.e,
    tol: float = DEFAULT_TOL,
) -> GeometricSystem:
    """Assemble the log-linear system after running the guard pipeline."""
    if not (log_base > 0.0 and log_base != 1.0 and math.isfinite(log_base)):
        raise ValueError(f"log base must be positive, finite and != 1, got {log_base!r}")
    ensure_solvable(matrix, partition, tol)
    n = matrix.n
    k = partition.k
    counts = undefined_counts(matrix)
    ln_base = math.log(log_base)

    coeff = [[0.0] * k for _ in range(k)]
    constants = [0.0] * k
    for i in range(k):
        coeff[i][i] = float(n - counts[i] - 1)
        acc = 0.0
        for j in range(k):
            if j != i and matrix.defined(i, j):
                coeff[i][j] = -1.0
                acc += math.log(matrix.value(i, j))
        for j in range(k, n):
            if matrix.defined(i, j):
                acc += math.log(matrix.value(i, j) * partition.known[j - k])
        constants[i] = acc / ln_base

    return GeometricSystem(
        coeff=np.array(coeff, dtype=float),
        constants=np.array(constants, dtype=float),
        log_base=float(log_base),
    )


def solve_geometric(
    matrix: PCMatrix,
    partition: Partition,
    log_base: float = math.e,
    tol: float = DEFAULT_TOL,
) -> Ranking:
    """Compute the full ranking; known priorities are preserved verbatim.

    The computed priorities are exponentials of finite reals, hence always
    strictly positive; the only solver failure mode is a singular system,
    which the connectivity guard rules out in practice (the coefficient
    matrix is diagonally dominant on connected instances).
    """
    system = build_geometric_system(matrix, partition, log_base, tol)
    exponents = solve(LinearSystem(system.coeff, system.constants))
    ln_base = math.log(system.log_base)
    computed = tuple(math.exp(float(e) * ln_base) for e in exponents)
    return Ranking(computed + partition.known, partition.k)
