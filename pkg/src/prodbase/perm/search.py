"""Backtrack searches and block computations."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .group import PermutationGroup, reduce_generators


def setwise_stabilizer_filter(G: PermutationGroup, subset: Sequence[int]) -> PermutationGroup:
    E = G.elements()
    mask = np.zeros(G.degree, dtype=bool)
    mask[list(subset)] = True
    if subset:
        keep = E[np.all(mask[E[:, list(subset)]], axis=1)]
    else:
        keep = E
    return G.subgroup(reduce_generators(list(keep), G.degree), order=int(keep.shape[0]))


def setwise_stabilizer_backtrack(G: PermutationGroup, subset: Sequence[int]) -> PermutationGroup:
    """Depth-first search over base images with a chain whose base starts in the set.

    A branch is cut as soon as a base point inside the set is sent outside it
    (or the reverse).  Every surviving leaf is an element of the stabilizer.
    """
    n = G.degree
    mask = np.zeros(n, dtype=bool)
    mask[list(subset)] = True
    chain = G.chain(tuple(subset))
    levels = chain.levels
    trans = [[(pt, lv.transversal(pt)) for pt in lv.orbit.tolist()] for lv in levels]
    found: list[np.ndarray] = []

    def dfs(i: int, suffix: np.ndarray) -> None:
        if i == len(levels):
            if np.array_equal(mask[suffix], mask):
                found.append(suffix)
            return
        b_in = mask[levels[i].base]
        for pt, u in trans[i]:
            if mask[suffix[pt]] != b_in:
                continue
            dfs(i + 1, suffix[u])

    dfs(0, np.arange(n, dtype=np.int32))
    found.sort(key=lambda a: a.tolist())
    return G.subgroup(reduce_generators(found, n), order=len(found))


def minimal_block(gens: Sequence[np.ndarray], n: int, a: int, b: int) -> list[int]:
    """Smallest block of imprimitivity containing a and b (Atkinson's merge)."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = []
    ra, rb = find(a), find(b)
    if ra != rb:
        parent[max(ra, rb)] = min(ra, rb)
        queue.append((a, b))
    while queue:
        x, y = queue.pop()
        for g in gens:
            u, v = find(int(g[x])), find(int(g[y]))
            if u != v:
                parent[max(u, v)] = min(u, v)
                queue.append((u, v))
    root = find(a)
    return [x for x in range(n) if find(x) == root]
