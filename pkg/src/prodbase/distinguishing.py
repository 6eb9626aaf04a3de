"""Distinguishing partitions of a permutation group P on {0..k-1}.

A partition is distinguishing when the only element of P fixing every block
setwise is the identity.  Counting is exact: partitions are enumerated as
restricted growth strings, two-block partitions by a bitset sweep over the
subsets containing 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExhausted, InputError
from .perm import PermutationGroup

RGS_MAX_K = 12
SWEEP_MAX_K = 20
COLORING_BUDGET = 2_000_000
_CHUNK_CELLS = 20_000_000


@dataclass(frozen=True)
class SetPartition:
    k: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else -1))
        if any(len(b) == 0 for b in blocks):
            raise InputError("blocks must be nonempty")
        pts = [x for b in blocks for x in b]
        if sorted(pts) != list(range(self.k)):
            raise InputError("blocks must partition {0..k-1}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "SetPartition":
        groups: dict[int, list[int]] = {}
        for i, c in enumerate(labels):
            groups.setdefault(int(c), []).append(i)
        return cls(len(labels), tuple(tuple(v) for v in groups.values()))

    def labels(self) -> np.ndarray:
        out = np.empty(self.k, dtype=np.int8)
        for j, b in enumerate(self.blocks):
            out[list(b)] = j
        return out

    @property
    def m(self) -> int:
        return len(self.blocks)


@dataclass
class DistinguishingProfile:
    D: int
    t: dict[int, int] = field(default_factory=dict)
    bounds_ok: bool = True


@lru_cache(maxsize=None)
def stirling2(k: int, m: int) -> int:
    if k < 0 or m < 0:
        raise InputError("Stirling numbers need k, m >= 0")
    if k == 0 and m == 0:
        return 1
    if k == 0 or m == 0:
        return 0
    return m * stirling2(k - 1, m) + stirling2(k - 1, m - 1)


def bounds_check(order: int, k: int, m: int, t: int) -> bool:
    """|P|/m! <= t_m <= S(k, m) whenever t_m > 0."""
    if t == 0:
        return True
    return order <= t * factorial(m) and t <= stirling2(k, m)


def _nonidentity_elements(P: PermutationGroup) -> np.ndarray:
    E = P.elements()
    moved = (E != np.arange(P.degree)).sum(axis=1)
    keep = moved > 0
    order = np.argsort(moved[keep], kind="stable")
    return np.ascontiguousarray(E[keep][order])


def distinguishing_mask(P: PermutationGroup, labels: np.ndarray) -> np.ndarray:
    """For each row of block labels, whether the partition is distinguishing.

    Elements are tried in order of increasing support, which rejects most
    non-distinguishing partitions in the first chunk.
    """
    labels = np.asarray(labels)
    if labels.ndim == 1:
        labels = labels[None, :]
    E = _nonidentity_elements(P)
    alive = np.ones(labels.shape[0], dtype=bool)
    if E.shape[0] == 0:
        return alive
    k = P.degree
    start, echunk = 0, 64
    while start < E.shape[0]:
        idx = np.nonzero(alive)[0]
        if idx.size == 0:
            break
        Es = E[start:start + echunk]
        start += echunk
        echunk *= 4
        rchunk = max(1, _CHUNK_CELLS // max(1, Es.shape[0] * k))
        for r0 in range(0, idx.size, rchunk):
            rows = idx[r0:r0 + rchunk]
            C = labels[rows]
            preserved = np.all(C[:, Es] == C[:, None, :], axis=2).any(axis=1)
            alive[rows[preserved]] = False
    return alive


def is_distinguishing(P: PermutationGroup, partition: SetPartition) -> bool:
    """Intersect the setwise stabilizers of the blocks one at a time."""
    if partition.k != P.degree:
        raise InputError("partition and group act on different sets")
    K = P
    for block in partition.blocks[:-1]:
        if K.order() == 1:
            return True
        K = K.setwise_stabilizer(block)
    return K.order() == 1


def restricted_growth_strings(k: int, m: int) -> Iterator[list[int]]:
    """Label lists with labels in first-occurrence order and exactly m labels."""
    if m > k or (m == 0 and k > 0):
        return
    s = [0] * k

    def rec(i: int, used: int):
        if i == k:
            if used == m:
                yield list(s)
            return
        if m - used > k - i:
            return
        for c in range(min(used + 1, m)):
            s[i] = c
            yield from rec(i + 1, max(used, c + 1))

    if k == 0:
        yield []
        return
    yield from rec(1, 1)


def _rgs_array(k: int, m: int) -> np.ndarray:
    if k > RGS_MAX_K:
        raise BudgetExhausted(f"partition enumeration limited to k <= {RGS_MAX_K}")
    rows = list(restricted_growth_strings(k, m))
    return np.array(rows, dtype=np.int8).reshape(len(rows), k)


def distinguishing_partitions(P: PermutationGroup, m: int) -> list[SetPartition]:
    R = _rgs_array(P.degree, m)
    if R.shape[0] == 0:
        return []
    mask = distinguishing_mask(P, R)
    return [SetPartition.from_labels(r) for r in R[mask]]


# -- bitset sweeps ------------------------------------------------------------

def _chunk_tables(e: np.ndarray, k: int) -> list[np.ndarray]:
    tables = []
    for c0 in range(0, k, 8):
        width = min(8, k - c0)
        vals = np.arange(1 << width, dtype=np.int64)
        t = np.zeros(1 << width, dtype=np.int64)
        for j in range(width):
            t |= ((vals >> j) & 1) << int(e[c0 + j])
        tables.append(t)
    return tables


def subset_images(e: np.ndarray, masks: np.ndarray, k: int) -> np.ndarray:
    out = np.zeros_like(masks)
    for c, t in enumerate(_chunk_tables(e, k)):
        out |= t[(masks >> (8 * c)) & ((1 << min(8, k - 8 * c)) - 1)]
    return out


@dataclass
class PowerSetData:
    k: int
    order: int
    stab_count: np.ndarray   # elements fixing each subset (identity included)
    canonical: np.ndarray    # least image of each subset

    def regular(self) -> np.ndarray:
        return self.stab_count == 1


def power_set_data(P: PermutationGroup, max_order: int = 10**4) -> PowerSetData:
    k = P.degree
    if k > SWEEP_MAX_K:
        raise BudgetExhausted(f"power-set sweep limited to k <= {SWEEP_MAX_K}")
    if P.order() > max_order:
        raise BudgetExhausted(f"power-set sweep limited to |P| <= {max_order}")
    masks = np.arange(1 << k, dtype=np.int64)
    stab = np.zeros(masks.shape[0], dtype=np.int64)
    canon = masks.copy()
    for e in P.elements():
        img = subset_images(e, masks, k)
        stab += img == masks
        np.minimum(canon, img, out=canon)
    return PowerSetData(k, P.order(), stab, canon)


@dataclass(frozen=True)
class RegularOrbits:
    count: int
    representatives: list[tuple[int, ...]]


def _mask_to_set(mask: int, k: int) -> tuple[int, ...]:
    return tuple(i for i in range(k) if mask >> i & 1)


def power_set_regular_orbits(P: PermutationGroup, exclude_half: bool = False,
                             data: PowerSetData | None = None) -> RegularOrbits:
    """Regular orbits on the power set; with exclude_half, on subsets of size != k/2."""
    d = data or power_set_data(P)
    reg = d.regular()
    if exclude_half:
        sizes = np.array([bin(x).count("1") for x in range(1 << d.k)])
        reg &= 2 * sizes != d.k
    reps = np.unique(d.canonical[reg])
    if reg.sum() != reps.size * d.order:
        raise AssertionError("regular subsets do not split into full orbits")
    return RegularOrbits(int(reps.size), [_mask_to_set(int(r), d.k) for r in reps])


def check_ddagger(P: PermutationGroup, data: PowerSetData | None = None) -> bool:
    """Every subset with trivial setwise stabilizer is mapped to its complement."""
    d = data or power_set_data(P)
    full = (1 << d.k) - 1
    reg = np.nonzero(d.regular())[0]
    return bool(np.all(d.canonical[reg] == d.canonical[full ^ reg]))


def t2_by_sweep(P: PermutationGroup, data: PowerSetData | None = None) -> int:
    d = data or power_set_data(P, max_order=10**6)
    k = d.k
    reg = d.regular()
    masks = np.arange(1 << k)
    sel = reg & (masks & 1 == 1) & (masks != (1 << k) - 1)
    return int(sel.sum())


# -- counts ---------------------------------------------------------------------

def count_ordered_colorings(P: PermutationGroup, m: int) -> int:
    """Surjective distinguishing colorings {0..k-1} -> {0..m-1}."""
    k = P.degree
    if m**k > COLORING_BUDGET:
        raise BudgetExhausted("too many colorings")
    C = np.indices((m,) * k).reshape(k, -1).T.astype(np.int8) if k else np.zeros((1, 0), np.int8)
    onto = np.ones(C.shape[0], dtype=bool)
    for c in range(m):
        onto &= (C == c).any(axis=1)
    C = C[onto]
    if C.shape[0] == 0:
        return 0
    return int(distinguishing_mask(P, C).sum())


@dataclass(frozen=True)
class TmCount:
    m: int
    t: int
    method: str
    ordered: int | None = None


def count_tm(P: PermutationGroup, m: int, crosscheck: bool = True) -> TmCount:
    k = P.degree
    if m < 1 or m > k:
        return TmCount(m, 0, "trivial")
    if m == 2 and k <= SWEEP_MAX_K and (k > RGS_MAX_K or P.order() <= 2000):
        t = t2_by_sweep(P, power_set_data(P, max_order=10**6))
        method = "bitset-sweep"
    else:
        R = _rgs_array(k, m)
        t = int(distinguishing_mask(P, R).sum())
        method = "rgs-enumeration"
    ordered = None
    if crosscheck and m**k <= COLORING_BUDGET:
        ordered = count_ordered_colorings(P, m)
        if ordered != factorial(m) * t:
            raise AssertionError(f"ordered colorings {ordered} != {m}! * {t}")
    return TmCount(m, t, method, ordered)


def distinguishing_number(P: PermutationGroup) -> int:
    k = P.degree
    if P.order() == 1:
        return 1
    for m in range(2, k + 1):
        if m == 2 and k <= SWEEP_MAX_K and (k > RGS_MAX_K or P.order() <= 2000):
            if t2_by_sweep(P, power_set_data(P, max_order=10**5)) > 0:
                return 2
            continue
        if m == k:
            return k
        R = _rgs_array(k, m)
        if distinguishing_mask(P, R).any():
            return m
    return k


def distinguishing_profile(P: PermutationGroup, ms: Sequence[int] | None = None) -> DistinguishingProfile:
    D = distinguishing_number(P)
    ms = [D] if ms is None else list(ms)
    t = {m: count_tm(P, m, crosscheck=False).t for m in ms}
    ok = all(bounds_check(P.order(), P.degree, m, v) for m, v in t.items())
    return DistinguishingProfile(D, t, ok)


def check_dagger(P: PermutationGroup, m: int) -> bool:
    """Every block of every distinguishing m-partition can be moved off itself."""
    k = P.degree
    parts = distinguishing_partitions(P, m)
    blocks = sorted({sum(1 << x for x in b) for p in parts for b in p.blocks})
    if not blocks:
        return True
    masks = np.array(blocks, dtype=np.int64)
    movable = np.zeros(masks.shape[0], dtype=bool)
    for e in P.elements():
        movable |= (subset_images(e, masks, k) & masks) == 0
        if movable.all():
            return True
    return bool(movable.all())
