"""Exact worst-case (L-infinity) assignment between two n-point cost structures.

The optimal value is always an entry of the cost matrix, so a binary search
over the sorted entries with a threshold-graph matching test is exact with
no tolerance. Among optimal permutations the one with lexicographically
smallest image sequence is returned, which makes certificates reproducible.
"""

from __future__ import annotations

import numpy as np

from . import _gridkernels
from .errors import InvalidInputError


def _validated_costs(costs) -> np.ndarray:
    c = np.asarray(costs, dtype=float)
    if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] < 1:
        raise InvalidInputError("cost matrix must be square and non-empty")
    if not np.all(np.isfinite(c)):
        raise InvalidInputError("cost matrix has non-finite entries")
    if np.any(c < 0):
        raise InvalidInputError("cost matrix has negative entries")
    return c


def _rows_matchable(block: np.ndarray) -> bool:
    """True iff every row of a boolean rows x cols block can be matched.

    Augmenting-path matching with rows and columns scanned in index order.
    """
    nrows, ncols = block.shape
    if nrows > ncols:
        return False
    match_col = np.full(ncols, -1, dtype=np.int64)
    match_row = np.full(nrows, -1, dtype=np.int64)
    for row in range(nrows):
        came_row = np.full(ncols, -1, dtype=np.int64)
        visited = np.zeros(ncols, dtype=bool)
        frontier = [row]
        matched = False
        while frontier and not matched:
            nxt = []
            for r in frontier:
                for c in range(ncols):
                    if visited[c] or not block[r, c]:
                        continue
                    visited[c] = True
                    came_row[c] = r
                    if match_col[c] == -1:
                        cc = c
                        while cc != -1:
                            rr = came_row[cc]
                            prev = match_row[rr]
                            match_col[cc] = rr
                            match_row[rr] = cc
                            cc = prev
                        matched = True
                        break
                    nxt.append(match_col[c])
                if matched:
                    break
            frontier = nxt
        if not matched:
            return False
    return True


def feasibility_at(costs, eps: float) -> bool:
    """True iff a perfect matching exists using only entries <= eps."""
    if eps < 0:
        raise InvalidInputError("threshold must be >= 0")
    c = _validated_costs(costs)
    return bool(_gridkernels.feasible(c, float(eps)))


def bottleneck_value(costs) -> float:
    """Optimal value only (compiled path); equals bottleneck_assignment()[0]."""
    return float(_gridkernels.bottleneck_value(_validated_costs(costs)))


def bottleneck_assignment(costs) -> tuple[float, np.ndarray]:
    """Optimal value and the lexicographically smallest optimal permutation.

    Returns (value, sigma) with sigma minimizing max_i costs[i, sigma[i]]
    and value equal to that maximum (always an entry of the matrix).
    """
    c = _validated_costs(costs)
    n = c.shape[0]
    value = float(_gridkernels.bottleneck_value(c))
    adj = c <= value
    sigma = np.empty(n, dtype=np.int64)
    used = np.zeros(n, dtype=bool)
    for i in range(n):
        chosen = -1
        for j in range(n):
            if used[j] or not adj[i, j]:
                continue
            if i == n - 1:
                chosen = j
                break
            cols = np.flatnonzero(~used)
            cols = cols[cols != j]
            if _rows_matchable(adj[i + 1 :][:, cols]):
                chosen = j
                break
        if chosen < 0:  # cannot happen once value came from the search
            raise InvalidInputError("internal error: infeasible at optimal threshold")
        sigma[i] = chosen
        used[chosen] = True
    return value, sigma


def assignment_at(costs, thr: float) -> np.ndarray | None:
    """Some perfect matching using entries <= thr (row -> col), else None.

    Cheap deterministic helper for solver inner loops that only need one
    optimal witness; no lexicographic guarantee.
    """
    c = _validated_costs(costs)
    n = c.shape[0]
    adj = c <= thr
    match_col = np.full(n, -1, dtype=np.int64)
    match_row = np.full(n, -1, dtype=np.int64)
    for row in range(n):
        came_row = np.full(n, -1, dtype=np.int64)
        visited = np.zeros(n, dtype=bool)
        frontier = [row]
        matched = False
        while frontier and not matched:
            nxt = []
            for r in frontier:
                for col in range(n):
                    if visited[col] or not adj[r, col]:
                        continue
                    visited[col] = True
                    came_row[col] = r
                    if match_col[col] == -1:
                        cc = col
                        while cc != -1:
                            rr = came_row[cc]
                            prev = match_row[rr]
                            match_col[cc] = rr
                            match_row[rr] = cc
                            cc = prev
                        matched = True
                        break
                    nxt.append(match_col[col])
                if matched:
                    break
            frontier = nxt
        if not matched:
            return None
    return match_row
