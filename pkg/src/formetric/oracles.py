"""Small brute-force oracles used to verify the fast implementations.

Everything here is deliberately naive: exhaustive enumeration with hard
size caps that fail loudly instead of degrading. These are the reference
answers the verification suite compares against.
"""

from __future__ import annotations

import math
from itertools import combinations, permutations, product

import numpy as np

from .errors import UnsupportedInstanceError
from .rips import PersistenceDiagram

_PERM_CAP = 7
_TREE_CAP = 6
_DIAGRAM_CAP = 5


def brute_assignment_value(costs) -> float:
    """min over all permutations of the worst assigned entry (n <= 7)."""
    c = np.asarray(costs, dtype=float)
    n = c.shape[0]
    if n > _PERM_CAP:
        raise UnsupportedInstanceError(f"assignment brute force capped at n <= {_PERM_CAP}")
    idx = np.arange(n)
    return min(float(np.max(c[idx, perm])) for perm in permutations(range(n)))


def _prufer_to_edges(seq, n):
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    ptr = 0
    leaf = -1
    # standard linear-time decoding with an index pointer
    degree_work = degree[:]
    used = [False] * n
    for v in seq:
        leaf = min(i for i in range(n) if degree_work[i] == 1 and not used[i])
        edges.append((leaf, v))
        used[leaf] = True
        degree_work[leaf] -= 1
        degree_work[v] -= 1
    last = [i for i in range(n) if not used[i] and degree_work[i] == 1]
    edges.append((last[0], last[1]))
    return edges


def brute_min_tree_weight(dm) -> float:
    """Minimum spanning tree weight by enumerating all labeled trees.

    Trees are enumerated through their Prufer sequences (n^(n-2) of them),
    capped at n <= 6.
    """
    d = np.asarray(dm, dtype=float)
    n = d.shape[0]
    if n > _TREE_CAP:
        raise UnsupportedInstanceError(f"tree enumeration capped at n <= {_TREE_CAP}")
    if n == 1:
        return 0.0
    if n == 2:
        return float(d[0, 1])
    best = math.inf
    for seq in product(range(n), repeat=n - 2):
        weight = sum(float(d[a, b]) for a, b in _prufer_to_edges(seq, n))
        best = min(best, weight)
    return best


def brute_diagram_bottleneck(d1: PersistenceDiagram, d2: PersistenceDiagram) -> float:
    """Bottleneck distance by enumerating every matching structure.

    Chooses which points go to the diagonal on each side and all bijections
    between the survivors; capped at 5 finite points per side.
    """
    e1, e2 = sorted(d1.essential_births), sorted(d2.essential_births)
    if len(e1) != len(e2):
        return math.inf
    essential = max((abs(a - b) for a, b in zip(e1, e2)), default=0.0)
    p1, p2 = d1.finite_points, d2.finite_points
    if len(p1) > _DIAGRAM_CAP or len(p2) > _DIAGRAM_CAP:
        raise UnsupportedInstanceError(
            f"diagram enumeration capped at {_DIAGRAM_CAP} finite points per side"
        )
    best = math.inf
    n1, n2 = len(p1), len(p2)
    for kept1 in _subsets(range(n1)):
        dropped1 = [i for i in range(n1) if i not in kept1]
        for kept2 in _subsets(range(n2)):
            if len(kept1) != len(kept2):
                continue
            dropped2 = [j for j in range(n2) if j not in kept2]
            diag = 0.0
            for i in dropped1:
                diag = max(diag, (p1[i][1] - p1[i][0]) / 2.0)
            for j in dropped2:
                diag = max(diag, (p2[j][1] - p2[j][0]) / 2.0)
            if diag >= best:
                continue
            if not kept1:
                best = min(best, diag)
                continue
            for perm in permutations(kept2):
                cost = diag
                for i, j in zip(kept1, perm):
                    cost = max(
                        cost,
                        abs(p1[i][0] - p2[j][0]),
                        abs(p1[i][1] - p2[j][1]),
                    )
                    if cost >= best:
                        break
                best = min(best, cost)
    return max(essential, best)


def _subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from combinations(items, r)
