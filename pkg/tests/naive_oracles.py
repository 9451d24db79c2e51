"""Test-side reference implementations, independent of the library's paths.

The persistence oracle computes persistent Betti numbers at every critical
scale by GF(2) linear algebra on bitmasks and recovers the diagram by
inclusion-exclusion; it shares no code with the column reduction. The
degree-0 oracle tracks component merges directly over a threshold sweep.
"""

from __future__ import annotations

import math
from itertools import combinations


def gf2_rank(vectors) -> int:
    basis = {}
    rank = 0
    for v in vectors:
        while v:
            high = v.bit_length() - 1
            if high in basis:
                v ^= basis[high]
            else:
                basis[high] = v
                rank += 1
                break
    return rank


def _nullspace_combos(vectors):
    """Kernel of the matrix whose columns are the given bitmask vectors,
    returned as combination masks over the column indices."""
    basis = {}
    null = []
    for j, v in enumerate(vectors):
        combo = 1 << j
        while v:
            high = v.bit_length() - 1
            if high in basis:
                bv, bc = basis[high]
                v ^= bv
                combo ^= bc
            else:
                basis[high] = (v, combo)
                break
        else:
            null.append(combo)
    return null


def naive_rips_diagram(dist, k):
    """Degree-k Rips diagram via persistent Betti numbers (filtration = diam/2).

    Returns a sorted tuple of (birth, death) pairs with math.inf deaths for
    essential classes, matching the library's diagram convention including
    the dropping of zero-persistence pairs.
    """
    n = len(dist)

    def filt(verts):
        if len(verts) == 1:
            return 0.0
        return max(dist[a][b] for a, b in combinations(verts, 2)) / 2.0

    k_simps = list(combinations(range(n), k + 1))
    kp1_simps = list(combinations(range(n), k + 2))
    f_k = [filt(s) for s in k_simps]
    f_kp1 = [filt(s) for s in kp1_simps]
    scales = sorted(set(f_k) | set(f_kp1))
    index_k = {s: i for i, s in enumerate(k_simps)}
    index_km1 = (
        {s: i for i, s in enumerate(combinations(range(n), k))} if k >= 1 else {}
    )

    def boundary_down(simplex):
        mask = 0
        if k == 0:
            return mask
        for face in combinations(simplex, k):
            mask ^= 1 << index_km1[face]
        return mask

    def boundary_up(simplex):
        mask = 0
        for face in combinations(simplex, k + 1):
            mask ^= 1 << index_k[face]
        return mask

    up_masks = [boundary_up(s) for s in kp1_simps]

    def cycle_basis(scale):
        present = [i for i, f in enumerate(f_k) if f <= scale]
        combos = _nullspace_combos([boundary_down(k_simps[i]) for i in present])
        out = []
        for combo in combos:
            mask = 0
            j = 0
            while combo:
                if combo & 1:
                    mask |= 1 << present[j]
                combo >>= 1
                j += 1
            out.append(mask)
        return out

    def boundary_span(scale):
        return [up_masks[i] for i, f in enumerate(f_kp1) if f <= scale]

    def betti(s, t):
        if s is None:
            return 0
        z = cycle_basis(s)
        b = boundary_span(t)
        dim_z = len(z)
        dim_b = gf2_rank(list(b))
        dim_sum = gf2_rank(list(z) + list(b))
        return dim_z - (dim_z + dim_b - dim_sum)

    points = []
    prev_of = {scales[i]: (scales[i - 1] if i > 0 else None) for i in range(len(scales))}
    t_end = scales[-1] if scales else 0.0
    for birth in scales:
        pb = prev_of[birth]
        for death in scales:
            if death <= birth:
                continue
            pd = prev_of[death]
            mult = (
                betti(birth, pd)
                - betti(birth, death)
                - betti(pb, pd)
                + betti(pb, death)
            )
            points.extend([(birth, death)] * mult)
        essential = betti(birth, t_end) - betti(pb, t_end)
        # stable classes at the final scale never die in a Rips filtration
        points.extend([(birth, math.inf)] * essential)
    return tuple(sorted(points))


def h0_deaths_by_sweep(dist):
    """Component-merge scales over the threshold sweep (deaths, sorted)."""
    n = len(dist)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    edges = sorted(
        (dist[i][j], i, j) for i in range(n) for j in range(i + 1, n)
    )
    deaths = []
    for w, i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri
            deaths.append(w / 2.0)
    return sorted(deaths)
