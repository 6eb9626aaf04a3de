"""Stabilizer chains built by Schreier-Sims.

Large-degree levels keep a Schreier vector; small ones also keep explicit
inverse transversals so sifting costs one gather per level.

When the group order is known in advance a seeded random Schreier-Sims run
is certified exact by reaching that order: the product of the basic orbit
lengths never exceeds the order of the group the strong generators generate.
Otherwise random sifting is followed by a full deterministic Schreier
generator check.
"""
from __future__ import annotations

import random
from math import prod
from typing import Sequence

import numpy as np

from ..errors import ConsistencyError
from .permutation import IDX, identity_array, invert_array, is_identity_array

EXPLICIT_LIMIT = 4_000_000
DEFAULT_SEED = 20240601


def first_moved_point(a: np.ndarray, skip: Sequence[int] = ()) -> int | None:
    moved = np.nonzero(a != np.arange(a.shape[0], dtype=a.dtype))[0]
    if skip:
        moved = moved[~np.isin(moved, np.asarray(skip))]
    return int(moved[0]) if moved.size else None


class ChainLevel:
    __slots__ = ("base", "n", "gens", "inv", "sv", "orbit", "_tinv")

    def __init__(self, base: int, n: int):
        self.base = base
        self.n = n
        self.gens: list[np.ndarray] = []
        self.inv: list[np.ndarray] = []
        self.sv = np.full(n, -1, dtype=np.int32)
        self.sv[base] = -2
        self.orbit = np.array([base], dtype=IDX)
        self._tinv: dict[int, np.ndarray] | None = {base: identity_array(n)}

    def __len__(self) -> int:
        return int(self.orbit.shape[0])

    def add_generator(self, g: np.ndarray) -> None:
        self.gens.append(g)
        self.inv.append(invert_array(g))
        self._extend(self.orbit)

    def _extend(self, frontier: np.ndarray) -> None:
        sv = self.sv
        parts = [self.orbit]
        while frontier.size:
            new = []
            for j, g in enumerate(self.gens):
                img = g[frontier]
                img = img[sv[img] == -1]
                if img.size:
                    img = np.unique(img)
                    img = img[sv[img] == -1]
                    sv[img] = j
                    new.append(img)
            frontier = np.concatenate(new) if new else np.empty(0, dtype=IDX)
            if frontier.size:
                parts.append(frontier)
        self.orbit = np.concatenate(parts).astype(IDX)
        if self._tinv is not None:
            if len(self.orbit) * self.n > EXPLICIT_LIMIT:
                self._tinv = None
            else:
                for pt in self.orbit.tolist():
                    if pt not in self._tinv:
                        self._tinv[pt] = self._trace_inverse(pt)

    def _trace_inverse(self, pt: int) -> np.ndarray:
        """Inverse transversal element: maps pt back to the base point."""
        out = identity_array(self.n)
        while pt != self.base:
            j = int(self.sv[pt])
            out = self.inv[j][out]
            pt = int(self.inv[j][pt])
        return out

    def contains_point(self, pt: int) -> bool:
        return self.sv[pt] != -1

    def strip(self, g: np.ndarray) -> np.ndarray | None:
        """Return g * u^-1 fixing the base point, or None if off-orbit."""
        pt = int(g[self.base])
        if self.sv[pt] == -1:
            return None
        if self._tinv is not None:
            return self._tinv[pt][g]
        while pt != self.base:
            j = int(self.sv[pt])
            ginv = self.inv[j]
            g = ginv[g]
            pt = int(ginv[pt])
        return g

    def transversal_inverse(self, pt: int) -> np.ndarray:
        if self._tinv is not None:
            return self._tinv[pt]
        return self._trace_inverse(pt)

    def transversal(self, pt: int) -> np.ndarray:
        return invert_array(self.transversal_inverse(pt))


class StabilizerChain:
    """Base, basic orbits with transversals, and strong generators per level."""

    def __init__(self, degree: int, levels: list[ChainLevel]):
        self.degree = degree
        self.levels = levels

    @property
    def base_points(self) -> list[int]:
        return [lv.base for lv in self.levels]

    def order(self, start: int = 0) -> int:
        return prod((len(lv) for lv in self.levels[start:]), start=1)

    def sift(self, g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        """Strip g through the levels; return the residue and the failing level."""
        for i in range(start, len(self.levels)):
            h = self.levels[i].strip(g)
            if h is None:
                return g, i
            g = h
        return g, len(self.levels)

    def contains(self, g: np.ndarray) -> bool:
        h, i = self.sift(g)
        return i == len(self.levels) and is_identity_array(h)

    def strong_generators(self, level: int) -> list[np.ndarray]:
        if level >= len(self.levels):
            return []
        return list(self.levels[level].gens)


class ProductReplacement:
    """Seeded product-replacement random element generator."""

    def __init__(self, gens: Sequence[np.ndarray], n: int, rng: random.Random,
                 size: int = 10, warmup: int = 40):
        self.n = n
        self.rng = rng
        if gens:
            self.state = [np.array(gens[i % len(gens)]) for i in range(max(size, len(gens)))]
        else:
            self.state = [identity_array(n), identity_array(n)]
        self.acc = identity_array(n)
        for _ in range(warmup):
            self.next()

    def next(self) -> np.ndarray:
        s = self.state
        rng = self.rng
        i = rng.randrange(len(s))
        j = rng.randrange(len(s) - 1)
        if j >= i:
            j += 1
        x = s[j] if rng.random() < 0.5 else invert_array(s[j])
        if rng.random() < 0.5:
            s[i] = x[s[i]]
        else:
            s[i] = s[i][x]
        self.acc = s[i][self.acc]
        return self.acc


class _Builder:
    def __init__(self, n: int, base_prefix: Sequence[int]):
        self.n = n
        self.levels = [ChainLevel(b, n) for b in base_prefix]
        self.chain = StabilizerChain(n, self.levels)

    def add_strong(self, h: np.ndarray, depth: int) -> None:
        """Add h (which fixes base points before `depth`) to levels 0..depth."""
        if depth == len(self.levels):
            bp = first_moved_point(h, self.chain.base_points)
            assert bp is not None
            self.levels.append(ChainLevel(bp, self.n))
        for lv in self.levels[: depth + 1]:
            lv.add_generator(h)

    def insert(self, g: np.ndarray) -> bool:
        h, i = self.chain.sift(g)
        if i == len(self.levels) and is_identity_array(h):
            return False
        self.add_strong(h, i)
        return True

    def seed_generators(self, gens: Sequence[np.ndarray]) -> None:
        base = self.chain.base_points
        for g in gens:
            if is_identity_array(g):
                continue
            fixed_upto = 0
            while fixed_upto < len(base) and g[base[fixed_upto]] == base[fixed_upto]:
                fixed_upto += 1
            if fixed_upto == len(base):
                bp = first_moved_point(g, base)
                self.levels.append(ChainLevel(bp, self.n))
                base = self.chain.base_points
            for lv in self.levels[: fixed_upto + 1]:
                lv.add_generator(g)

    def verify(self) -> None:
        """Deterministic Schreier-Sims: sift every Schreier generator."""
        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            added_at = None
            for pt in lv.orbit.tolist():
                u = lv.transversal(pt)
                for s in list(lv.gens):
                    q = int(s[pt])
                    sg = lv.transversal_inverse(q)[s[u]]
                    if is_identity_array(sg):
                        continue
                    h, j = self.chain.sift(sg, i + 1)
                    if j == len(self.levels) and is_identity_array(h):
                        continue
                    self.add_strong(h, j)
                    added_at = j
                    break
                if added_at is not None:
                    break
            if added_at is None:
                i -= 1
            else:
                i = added_at


def schreier_sims(gens: Sequence[np.ndarray], n: int, base_prefix: Sequence[int] = (),
                  known_order: int | None = None, seed: int = DEFAULT_SEED,
                  stall_limit: int = 64) -> StabilizerChain:
    b = _Builder(n, base_prefix)
    b.seed_generators(gens)
    chain = b.chain
    if chain.order() == 1 and not b.levels:
        return chain
    rng = random.Random(seed)
    pr = ProductReplacement([g for g in gens if not is_identity_array(g)], n, rng)
    if known_order is not None:
        stall = 0
        while chain.order() < known_order and stall < stall_limit:
            stall = 0 if b.insert(pr.next()) else stall + 1
        if chain.order() < known_order:
            b.verify()
        if chain.order() != known_order:
            raise ConsistencyError(
                f"generated group has order {chain.order()}, expected {known_order}")
        return chain
    stall = 0
    while stall < 24:
        stall = 0 if b.insert(pr.next()) else stall + 1
    b.verify()
    return chain


def try_generate(gens: Sequence[np.ndarray], n: int, target: int,
                 seed: int = DEFAULT_SEED, stall_limit: int = 48) -> bool:
    """True if the random run certifies that gens generate a group of order target."""
    b = _Builder(n, ())
    b.seed_generators(gens)
    if b.chain.order() >= target:
        return b.chain.order() == target
    rng = random.Random(seed)
    pr = ProductReplacement([g for g in gens if not is_identity_array(g)], n, rng)
    stall = 0
    while b.chain.order() < target and stall < stall_limit:
        stall = 0 if b.insert(pr.next()) else stall + 1
    return b.chain.order() == target
