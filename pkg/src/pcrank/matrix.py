"""Pairwise-comparison matrices, known/unknown partitions, and validation.

A comparison matrix records how many times alternative ``i`` is preferred
over alternative ``j``.  Pairs the experts never judged hold the sentinel
:data:`MISSING` (plain ``None``); missingness is always symmetric, so a
matrix either has both ``(i, j)`` and ``(j, i)`` or neither.  Zero and NaN
are rejected outright: an absent judgment and a corrupt one are different
problems.

The solvers split the alternatives into a leading block of ``k`` unknowns
(priorities to be computed) and a trailing block of knowns (priorities fixed
up front).  Everything here is immutable and side-effect free, so instances
can be shared freely across threads.

Indices are 0-based throughout; the CLI translates to labels for display.
"""

from __future__ import annotations

import math
import warnings
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Sequence

from .errors import (
    DegenerateRowError,
    KnownComparisonWarning,
    NotConnectedError,
    ReciprocityError,
    StructureError,
)

#: Sentinel for an absent comparison.  Kept distinct from 0/NaN so that
#: validation can tell "not compared" from "bad data".
MISSING = None

#: Default relative tolerance separating floating-point noise from real
#: reciprocity/consistency violations in human-scale judgment data.
DEFAULT_TOL = 1e-9

Entry = float | None


class ReciprocityViolation(NamedTuple):
    i: int
    j: int
    value: float   # c[i][j]
    mirror: float  # c[j][i]


class TriadDeviation(NamedTuple):
    i: int
    j: int
    k: int
    deviation: float  # |c_ij - c_ik * c_kj| / c_ij


@dataclass(frozen=True)
class PCMatrix:
    """Square grid of positive comparison values with explicit missing cells.

    ``entries[i][j]`` is the judged preference ratio of alternative ``i``
    over ``j``, or :data:`MISSING`.  The diagonal is fixed at 1.
    """

    entries: tuple[tuple[Entry, ...], ...]

    def __post_init__(self):
        grid = self.entries
        n = len(grid)
        rows: list[tuple[Entry, ...]] = []
        for i, raw in enumerate(grid):
            cells = list(raw)
            if len(cells) != n:
                raise StructureError(f"row {i} has {len(cells)} cells, expected {n}")
            norm: list[Entry] = []
            for j, cell in enumerate(cells):
                if cell is MISSING:
                    if i == j:
                        raise StructureError(f"diagonal entry ({i},{i}) cannot be missing")
                    norm.append(MISSING)
                    continue
                value = float(cell)
                if not math.isfinite(value) or value <= 0.0:
                    raise StructureError(
                        f"entry ({i},{j}) must be a positive finite number, got {cell!r}"
                    )
                if i == j and value != 1.0:
                    raise StructureError(f"diagonal entry ({i},{i}) must be 1, got {cell!r}")
                norm.append(value)
            rows.append(tuple(norm))
        for i in range(n):
            for j in range(i + 1, n):
                if (rows[i][j] is MISSING) != (rows[j][i] is MISSING):
                    raise StructureError(
                        f"asymmetric missingness: exactly one of ({i},{j}) and ({j},{i}) is missing"
                    )
        object.__setattr__(self, "entries", tuple(rows))

    @property
    def n(self) -> int:
        return len(self.entries)

    def value(self, i: int, j: int) -> Entry:
        return self.entries[i][j]

    def defined(self, i: int, j: int) -> bool:
        return self.entries[i][j] is not MISSING

    @property
    def is_complete(self) -> bool:
        return all(cell is not MISSING for row in self.entries for cell in row)

    def missing_pairs(self) -> list[tuple[int, int]]:
        """Unordered missing pairs as (i, j) with i < j."""
        n = self.n
        return [(i, j) for i in range(n) for j in range(i + 1, n) if not self.defined(i, j)]


@dataclass(frozen=True)
class Partition:
    """Split of ``n = k + len(known)`` alternatives: the first ``k`` have
    unknown priorities, the trailing ones carry the fixed values ``known``."""

    k: int
    known: tuple[float, ...]

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise StructureError(f"need at least one unknown alternative, got k={self.k}")
        values = tuple(float(v) for v in self.known)
        if not values:
            raise StructureError("need at least one known alternative")
        for idx, v in enumerate(values):
            if not math.isfinite(v) or v <= 0.0:
                raise StructureError(f"known priority #{idx} must be positive and finite, got {v!r}")
        object.__setattr__(self, "known", values)

    @property
    def n(self) -> int:
        return self.k + len(self.known)


@dataclass(frozen=True)
class Ranking:
    """Full priority vector: the first ``k`` values were computed, the rest
    are the known priorities, copied verbatim."""

    values: tuple[float, ...]
    k: int

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        for idx, v in enumerate(values):
            if not math.isfinite(v) or v <= 0.0:
                raise StructureError(f"ranking value #{idx} must be positive and finite, got {v!r}")
        if not 0 <= self.k <= len(values):
            raise StructureError(f"k={self.k} out of range for {len(values)} values")
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def computed(self) -> tuple[float, ...]:
        return self.values[: self.k]

    @property
    def known(self) -> tuple[float, ...]:
        return self.values[self.k :]

    def normalized(self) -> "Ranking":
        """Rescale so the values sum to 1.  Alters the known values, so this
        is presentation only, never an intermediate solver step."""
        total = sum(self.values)
        return Ranking(tuple(v / total for v in self.values), self.k)


@dataclass(frozen=True)
class Diagnostics:
    """Validation report produced by :func:`diagnose`.

    ``connectivity_ok`` is ``None`` when no partition was supplied (nothing
    to check reachability against).
    """

    reciprocity_violations: tuple[ReciprocityViolation, ...]
    undefined_counts: tuple[int, ...]
    connectivity_ok: bool | None
    isolated_unknowns: tuple[int, ...]
    triad_deviations: tuple[TriadDeviation, ...]

    @property
    def clean(self) -> bool:
        return (
            not self.reciprocity_violations
            and not self.triad_deviations
            and self.connectivity_ok is not False
        )


def validate_reciprocity(matrix: PCMatrix, tol: float = DEFAULT_TOL) -> list[ReciprocityViolation]:
    """Report every defined pair whose product c_ij * c_ji strays from 1 by
    more than ``tol``.  An empty list means reciprocal within tolerance."""
    out = []
    n = matrix.n
    for i in range(n):
        for j in range(i + 1, n):
            if not matrix.defined(i, j):
                continue
            value = matrix.value(i, j)
            mirror = matrix.value(j, i)
            if abs(value * mirror - 1.0) > tol:
                out.append(ReciprocityViolation(i, j, value, mirror))
    return out


def check_consistency(matrix: PCMatrix, tol: float = DEFAULT_TOL) -> list[TriadDeviation]:
    """Report transitivity failures over fully defined triads.

    One canonical triad is examined per unordered triple i < j < k: the
    direct judgment c_ij is compared against the indirect product
    c_ik * c_kj.  For a reciprocal matrix this covers all orderings.
    Triads touching a missing pair are skipped.
    """
    out = []
    for i, j, k in combinations(range(matrix.n), 3):
        if not (matrix.defined(i, j) and matrix.defined(i, k) and matrix.defined(k, j)):
            continue
        direct = matrix.value(i, j)
        indirect = matrix.value(i, k) * matrix.value(k, j)
        deviation = abs(direct - indirect) / direct
        if deviation > tol:
            out.append(TriadDeviation(i, j, k, deviation))
    return out


def count_defined_triads(matrix: PCMatrix) -> int:
    """Number of unordered triples whose three comparisons are all defined."""
    return sum(
        1
        for i, j, k in combinations(range(matrix.n), 3)
        if matrix.defined(i, j) and matrix.defined(i, k) and matrix.defined(k, j)
    )


def undefined_counts(matrix: PCMatrix) -> tuple[int, ...]:
    """Per-row count of missing off-diagonal comparisons."""
    return tuple(
        sum(1 for j in range(matrix.n) if j != i and not matrix.defined(i, j))
        for i in range(matrix.n)
    )


def check_connectivity(matrix: PCMatrix, partition: Partition) -> tuple[bool, list[int]]:
    """Check that every unknown alternative reaches a known one through
    defined comparisons.

    Vertices are alternatives, edges are defined comparisons.  Returns
    ``(ok, isolated)`` where ``isolated`` lists the unknown indices whose
    component contains no known alternative (this subsumes rows with no
    defined comparison at all).
    """
    n = matrix.n
    if partition.n != n:
        raise StructureError(f"partition describes {partition.n} alternatives, matrix has {n}")
    k = partition.k
    adjacency = [
        [j for j in range(n) if j != i and matrix.defined(i, j)] for i in range(n)
    ]
    seen = set(range(k, n))
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    isolated = [i for i in range(k) if i not in seen]
    return not isolated, isolated


def diagnose(
    matrix: PCMatrix, partition: Partition | None = None, tol: float = DEFAULT_TOL
) -> Diagnostics:
    """Run every structural check at once and bundle the findings."""
    if partition is None:
        ok: bool | None = None
        isolated: list[int] = []
    else:
        ok, isolated = check_connectivity(matrix, partition)
    return Diagnostics(
        reciprocity_violations=tuple(validate_reciprocity(matrix, tol)),
        undefined_counts=undefined_counts(matrix),
        connectivity_ok=ok,
        isolated_unknowns=tuple(isolated),
        triad_deviations=tuple(check_consistency(matrix, tol)),
    )


def ensure_solvable(matrix: PCMatrix, partition: Partition, tol: float = DEFAULT_TOL) -> None:
    """Guard pipeline run by both solvers, cheapest and most informative
    failures first: reciprocity, degenerate rows, connectivity.

    Comparisons among known alternatives never enter the systems; if any
    disagree with the fixed priorities a :class:`KnownComparisonWarning` is
    emitted, because that usually flags a data-entry mistake.
    """
    n = matrix.n
    if partition.n != n:
        raise StructureError(f"partition describes {partition.n} alternatives, matrix has {n}")
    violations = validate_reciprocity(matrix, tol)
    if violations:
        raise ReciprocityError(violations)
    counts = undefined_counts(matrix)
    degenerate = [i for i in range(partition.k) if n - counts[i] - 1 == 0]
    if degenerate:
        raise DegenerateRowError(degenerate)
    ok, isolated = check_connectivity(matrix, partition)
    if not ok:
        raise NotConnectedError(isolated)

    k = partition.k
    mismatched = 0
    for i in range(k, n):
        for j in range(k, n):
            if i == j or not matrix.defined(i, j):
                continue
            implied = partition.known[i - k] / partition.known[j - k]
            if abs(matrix.value(i, j) - implied) > tol * implied:
                mismatched += 1
    if mismatched:
        warnings.warn(
            f"{mismatched} comparison(s) among known alternatives disagree with "
            f"their fixed priorities; these entries are ignored by the solvers",
            KnownComparisonWarning,
            stacklevel=2,
        )


def fill_missing(matrix: PCMatrix, values: Sequence[float]) -> PCMatrix:
    """Complete the matrix by setting every missing c_ij to values[i]/values[j].

    With ``values`` taken from a solver ranking this realizes the rule that
    missing judgments agree perfectly with the final priorities; re-solving
    the filled matrix reproduces the ranking.
    """
    n = matrix.n
    vals = [float(v) for v in values]
    if len(vals) != n:
        raise StructureError(f"expected {n} values, got {len(vals)}")
    for idx, v in enumerate(vals):
        if not math.isfinite(v) or v <= 0.0:
            raise StructureError(f"fill value #{idx} must be positive and finite, got {v!r}")
    rows = [
        tuple(
            matrix.value(i, j) if matrix.defined(i, j) else vals[i] / vals[j]
            for j in range(n)
        )
        for i in range(n)
    ]
    return PCMatrix(tuple(rows))
