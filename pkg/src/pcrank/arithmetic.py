"""Arithmetic-mean ranking of the unknown alternatives.

Each unknown priority is postulated to equal the arithmetic mean of
``c_ij * w(a_j)`` over the comparisons that were actually made.  A missing
judgment is treated as if it agreed perfectly with the final result, which
absorbs it into the diagonal: row ``i`` averages over its
``n - s_i - 1`` defined comparisons, where ``s_i`` counts the missing ones.
Moving the unknown terms left yields a k-by-k linear system with unit
diagonal; terms involving known alternatives accumulate into the
constant-term vector.

Unlike the geometric variant the solution is not guaranteed positive: large
inconsistency can push a component to zero or below, reported as
:class:`~pcrank.errors.NonPositiveSolutionError`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveSolutionError
from .linsolve import LinearSystem, solve
from .matrix import DEFAULT_TOL, PCMatrix, Partition, Ranking, ensure_solvable, undefined_counts


@dataclass(frozen=True, eq=False)
class ArithmeticSystem:
    """Linear system for the unknown priorities.

    ``coeff`` has unit diagonal and ``-c_ij / (n - s_i - 1)`` where the
    unknown-unknown comparison is defined, 0 where it is missing.
    ``constants[i]`` collects the defined comparisons of unknown ``i``
    against the known alternatives, averaged with the same row denominator.
    ``row_denominators`` keeps the per-row averaging counts for audit.
    """

    coeff: np.ndarray
    constants: np.ndarray
    row_denominators: tuple[int, ...]


def build_arithmetic_system(
    matrix: PCMatrix, partition: Partition, tol: float = DEFAULT_TOL
) -> ArithmeticSystem:
    """Assemble the averaged linear system after running the guard pipeline."""
    ensure_solvable(matrix, partition, tol)
    n = matrix.n
    k = partition.k
    counts = undefined_counts(matrix)
    denominators = [n - counts[i] - 1 for i in range(k)]

    coeff = [[0.0] * k for _ in range(k)]
    constants = [0.0] * k
    for i in range(k):
        denom = float(denominators[i])
        coeff[i][i] = 1.0
        for j in range(k):
            if j != i and matrix.defined(i, j):
                coeff[i][j] = -(matrix.value(i, j) / denom)
        acc = 0.0
        for j in range(k, n):
            if matrix.defined(i, j):
                acc += matrix.value(i, j) * partition.known[j - k]
        constants[i] = acc / denom

    return ArithmeticSystem(
        coeff=np.array(coeff, dtype=float),
        constants=np.array(constants, dtype=float),
        row_denominators=tuple(denominators),
    )


def solve_arithmetic(matrix: PCMatrix, partition: Partition, tol: float = DEFAULT_TOL) -> Ranking:
    """Compute the full ranking; known priorities are preserved verbatim.

    Raises :class:`~pcrank.errors.SingularMatrixError` when the system has no
    unique solution and :class:`~pcrank.errors.NonPositiveSolutionError` when
    any computed priority is not strictly positive.
    """
    system = build_arithmetic_system(matrix, partition, tol)
    x = solve(LinearSystem(system.coeff, system.constants))
    if np.any(x <= 0.0):
        raise NonPositiveSolutionError(x)
    return Ranking(tuple(float(v) for v in x) + partition.known, partition.k)
