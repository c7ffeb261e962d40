"""Dense linear solver for the small systems both ranking methods produce.

Plain Gaussian elimination with partial (row) pivoting.  The systems here
are k-by-k with k in the tens at most, so simplicity and deterministic
singularity detection beat anything blocked or iterative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularMatrixError, StructureError


@dataclass(frozen=True, eq=False)
class LinearSystem:
    """A square coefficient matrix and its right-hand side."""

    matrix: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        b = np.array(self.rhs, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise StructureError(f"coefficient matrix must be square, got shape {m.shape}")
        if b.ndim != 1 or b.shape[0] != m.shape[0]:
            raise StructureError(
                f"right-hand side length {b.shape} does not match matrix {m.shape}"
            )
        if not (np.isfinite(m).all() and np.isfinite(b).all()):
            raise StructureError("system contains non-finite entries")
        m.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "rhs", b)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


def solve(system: LinearSystem, pivot_tol: float | None = None) -> np.ndarray:
    """Solve ``matrix @ x = rhs`` by Gaussian elimination with partial pivoting.

    Raises :class:`SingularMatrixError` as soon as the best available pivot
    falls to ``pivot_tol`` or below; the default threshold is
    ``1e-12 * ||matrix||_inf``, which flags unsolvable or underdetermined
    ranking instances instead of returning garbage.  Deterministic: identical
    input yields identical output.
    """
    a = system.matrix.copy()
    b = system.rhs.copy()
    n = system.size
    if pivot_tol is None:
        norm = float(np.abs(a).sum(axis=1).max()) if n else 0.0
        pivot_tol = 1e-12 * norm

    for col in range(n):
        p = col + int(np.argmax(np.abs(a[col:, col])))
        if abs(a[p, col]) <= pivot_tol:
            raise SingularMatrixError(
                f"pivot {a[p, col]:.3e} in column {col} is below threshold {pivot_tol:.3e}"
            )
        if p != col:
            a[[col, p]] = a[[p, col]]
            b[[col, p]] = b[[p, col]]
        for r in range(col + 1, n):
            factor = a[r, col] / a[col, col]
            if factor != 0.0:
                a[r, col:] -= factor * a[col, col:]
                b[r] -= factor * b[col]

    x = np.empty(n, dtype=float)
    for row in range(n - 1, -1, -1):
        x[row] = (b[row] - a[row, row + 1 :] @ x[row + 1 :]) / a[row, row]
    if not math.isfinite(float(x.sum())):
        raise SingularMatrixError("solution overflowed; system is effectively singular")
    return x
