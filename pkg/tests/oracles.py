"""Brute-force reference computations used to check the library.

Everything here works from an explicit element list built by closing the
generators under multiplication, so nothing depends on stabilizer chains.
"""
from __future__ import annotations

from itertools import combinations, product

import numpy as np


def close(gens, n):
    """All elements generated by gens, as a (N, n) array."""
    ident = np.arange(n, dtype=np.int32)
    seen = {ident.tobytes(): ident}
    frontier = [ident]
    gens = [np.asarray(g, dtype=np.int32) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g[x]
                key = y.tobytes()
                if key not in seen:
                    seen[key] = y
                    nxt.append(y)
        frontier = nxt
    return np.array(list(seen.values()), dtype=np.int32)


def elements(G):
    return close(G.gen_arrays, G.degree)


def pointwise_stabilizer_elements(E, points):
    pts = list(points)
    if not pts:
        return E
    return E[np.all(E[:, pts] == pts, axis=1)]


def base_size(E, n):
    for b in range(0, n + 1):
        for pts in combinations(range(n), b):
            if pointwise_stabilizer_elements(E, pts).shape[0] == 1:
                return b
    raise AssertionError("no base found")


def orbit_sizes_of_elements(E, n):
    """Orbit lengths of the group given by its element list."""
    seen = np.zeros(n, dtype=bool)
    out = []
    for x in range(n):
        if not seen[x]:
            orb = np.unique(E[:, x])
            seen[orb] = True
            out.append(orb.size)
    return out


def regular_suborbits(E, n, point=0):
    H = E[E[:, point] == point]
    return sum(1 for s in orbit_sizes_of_elements(H, n) if s == H.shape[0])


def reg_count(E, n, m):
    """Regular orbits of the group on m-tuples, by counting regular tuples."""
    tuples = np.array(list(product(range(n), repeat=m)), dtype=np.int64)
    nonid = E[np.any(E != np.arange(n), axis=1)]
    fixed = np.zeros(tuples.shape[0], dtype=bool)
    for g in nonid:
        fixed |= np.all(g[tuples] == tuples, axis=1)
    regular = int((~fixed).sum())
    assert regular % E.shape[0] == 0
    return regular // E.shape[0]


def set_partitions(k, m):
    """All partitions of range(k) into exactly m blocks, as tuples of frozensets."""
    def rec(i, blocks):
        if i == k:
            if len(blocks) == m:
                yield tuple(frozenset(b) for b in blocks)
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        if len(blocks) < m:
            blocks.append([i])
            yield from rec(i + 1, blocks)
            blocks.pop()
    yield from rec(0, [])


def preserves_every_block(g, blocks):
    return all(frozenset(int(g[x]) for x in b) == b for b in blocks)


def t_count(E, k, m):
    nonid = [g for g in E if np.any(g != np.arange(k))]
    return sum(1 for p in set_partitions(k, m)
               if not any(preserves_every_block(g, p) for g in nonid))


def distinguishing_number(E, k):
    if E.shape[0] == 1:
        return 1
    for m in range(2, k + 1):
        if t_count(E, k, m):
            return m
    raise AssertionError("the discrete partition is always distinguishing")


def saxl_adjacency(E, n):
    """Boolean matrix: {a, b} is a base, from the element list."""
    nonid = E[np.any(E != np.arange(n), axis=1)]
    fixed = nonid == np.arange(n)  # (elements, points)
    f = fixed.astype(np.int32)
    shared = f.T @ f  # number of nonidentity elements fixing both points
    adj = shared == 0
    np.fill_diagonal(adj, False)
    return adj


def diameter(adj):
    n = adj.shape[0]
    best = 0
    for v in range(n):
        dist = np.full(n, -1)
        dist[v] = 0
        frontier = np.zeros(n, dtype=bool)
        frontier[v] = True
        d = 0
        while frontier.any():
            d += 1
            nxt = adj[frontier].any(axis=0) & (dist < 0)
            dist[nxt] = d
            frontier = nxt
        if (dist < 0).any():
            return None
        best = max(best, int(dist.max()))
    return best


def common_neighbour_everywhere(adj):
    a = adj.astype(np.int32)
    return bool(((a @ a) > 0)[~np.eye(adj.shape[0], dtype=bool)].all())


def neighbourhoods_meet_regular_suborbits(E, n, adj):
    """For all a != b: the neighbourhood of a meets every regular orbit of G_b."""
    for b in range(n):
        H = E[E[:, b] == b]
        orbits = {}
        for x in range(n):
            orb = frozenset(np.unique(H[:, x]).tolist())
            if len(orb) == H.shape[0]:
                orbits[orb] = True
        for a in range(n):
            if a == b:
                continue
            nb = set(np.nonzero(adj[a])[0].tolist())
            if any(not (nb & orb) for orb in orbits):
                return False
    return True
