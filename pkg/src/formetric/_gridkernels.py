"""Compiled inner loops: exact bottleneck values and exhaustive grid scans.

The grid kernels scan every grid point of the translation group, brute-force
the permutation at each point, and return the exact grid minimum. Two sound
prunings keep this fast without changing the result:

- the objective is 1-Lipschitz in the translation, so after seeing value v
  at one grid point, the next floor((v - best)/resolution) points cannot
  beat the incumbent and are skipped;
- the incumbent is seeded by evaluating the grid points nearest each of the
  n^2 single-pair zero translations (grid points, so still admissible).

Both prunings only skip points whose value provably cannot lower the
minimum; the returned value equals the full scan's.
"""

import numpy as np
from numba import njit

TWO_PI = 2.0 * np.pi
PI = np.pi


@njit(cache=True)
def _augment(costs, thr, match_col, match_row, came_row, visited, frontier, row0):
    """One BFS augmenting pass for the threshold graph; True if row0 matched."""
    n = costs.shape[0]
    for c in range(n):
        visited[c] = 0
        came_row[c] = -1
    size = 1
    frontier[0] = row0
    while size > 0:
        new_size = 0
        for fi in range(size):
            r = frontier[fi]
            for c in range(n):
                if visited[c] == 0 and costs[r, c] <= thr:
                    visited[c] = 1
                    came_row[c] = r
                    if match_col[c] == -1:
                        # unwind the alternating path
                        cc = c
                        while cc != -1:
                            rr = came_row[cc]
                            prev = match_row[rr]
                            match_col[cc] = rr
                            match_row[rr] = cc
                            cc = prev
                        return True
                    frontier[n + new_size] = match_col[c]
                    new_size += 1
        for fi in range(new_size):
            frontier[fi] = frontier[n + fi]
        size = new_size
    return False


@njit(cache=True)
def feasible(costs, thr):
    """True iff a perfect matching exists using only entries <= thr."""
    n = costs.shape[0]
    match_col = np.full(n, -1, np.int64)
    match_row = np.full(n, -1, np.int64)
    came_row = np.empty(n, np.int64)
    visited = np.empty(n, np.uint8)
    frontier = np.empty(2 * n, np.int64)
    for row in range(n):
        if not _augment(costs, thr, match_col, match_row, came_row, visited, frontier, row):
            return False
    return True


@njit(cache=True)
def bottleneck_value(costs):
    """Exact optimal value of the L-infinity assignment problem.

    Binary search over the sorted matrix entries; the optimum is always one
    of them, so no tolerance is involved.
    """
    vals = np.unique(costs.ravel())
    lo = 0
    hi = vals.shape[0] - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(costs, vals[mid]):
            hi = mid
        else:
            lo = mid + 1
    return vals[lo]


@njit(cache=True)
def _circle_assign_value(diffs, perms, t, cap):
    """min over perms of max_i d_T(t, diffs[i, perm[i]]), pruned at cap."""
    n = diffs.shape[0]
    value = cap
    for p in range(perms.shape[0]):
        worst = 0.0
        for i in range(n):
            d = (t - diffs[i, perms[p, i]]) % TWO_PI
            if d > PI:
                d = TWO_PI - d
            if d > worst:
                worst = d
            if worst >= value:
                break
        if worst < value:
            value = worst
    return value


@njit(cache=True)
def circle_grid_min(diffs, perms, resolution, npoints):
    """Exact minimum over the grid {k * resolution} of the circle objective."""
    n = diffs.shape[0]
    best = 1.0e300
    # incumbent from the grid points beside each single-pair zero
    for i in range(n):
        for j in range(n):
            base = int(diffs[i, j] / resolution)
            for off in range(2):
                k = base + off
                if k >= npoints:
                    k -= npoints
                v = _circle_assign_value(diffs, perms, k * resolution, best)
                if v < best:
                    best = v
    k = 0
    while k < npoints:
        t = k * resolution
        # lower bound: every row must match some column
        lb = 0.0
        for i in range(n):
            rowmin = 1.0e300
            for j in range(n):
                d = (t - diffs[i, j]) % TWO_PI
                if d > PI:
                    d = TWO_PI - d
                if d < rowmin:
                    rowmin = d
            if rowmin > lb:
                lb = rowmin
        value = lb
        if lb < best:
            value = _circle_assign_value(diffs, perms, t, 1.0e300)
            if value < best:
                best = value
        skip = int((value - best) / resolution)
        k += 1 + (skip if skip > 0 else 0)
    return best


@njit(cache=True)
def _torus2_assign_value(dx, dy, perms, t1, t2, cap):
    n = dx.shape[0]
    value = cap
    for p in range(perms.shape[0]):
        worst = 0.0
        for i in range(n):
            a = (t1 - dx[i, perms[p, i]]) % TWO_PI
            if a > PI:
                a = TWO_PI - a
            b = (t2 - dy[i, perms[p, i]]) % TWO_PI
            if b > PI:
                b = TWO_PI - b
            d = np.sqrt(a * a + b * b)
            if d > worst:
                worst = d
            if worst >= value:
                break
        if worst < value:
            value = worst
    return value


@njit(cache=True)
def torus2_grid_min(dx, dy, perms, resolution, npoints):
    """Exact minimum over the 2-d translation grid of the torus objective."""
    n = dx.shape[0]
    best = 1.0e300
    for i in range(n):
        for j in range(n):
            b1 = int(dx[i, j] / resolution)
            b2 = int(dy[i, j] / resolution)
            for o1 in range(2):
                k1 = b1 + o1
                if k1 >= npoints:
                    k1 -= npoints
                for o2 in range(2):
                    k2 = b2 + o2
                    if k2 >= npoints:
                        k2 -= npoints
                    v = _torus2_assign_value(
                        dx, dy, perms, k1 * resolution, k2 * resolution, best
                    )
                    if v < best:
                        best = v
    # scan row by row; only the inner-axis Lipschitz skip is sound because a
    # skipped stretch certifies values >= best, not >= the row minimum
    for k1 in range(npoints):
        t1 = k1 * resolution
        k2 = 0
        while k2 < npoints:
            t2 = k2 * resolution
            lb = 0.0
            for i in range(n):
                rowmin = 1.0e300
                for j in range(n):
                    a = (t1 - dx[i, j]) % TWO_PI
                    if a > PI:
                        a = TWO_PI - a
                    b = (t2 - dy[i, j]) % TWO_PI
                    if b > PI:
                        b = TWO_PI - b
                    d = np.sqrt(a * a + b * b)
                    if d < rowmin:
                        rowmin = d
                if rowmin > lb:
                    lb = rowmin
            value = lb
            if lb < best:
                value = _torus2_assign_value(dx, dy, perms, t1, t2, 1.0e300)
                if value < best:
                    best = value
            skip = int((value - best) / resolution)
            k2 += 1 + (skip if skip > 0 else 0)
    return best
