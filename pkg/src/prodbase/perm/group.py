"""Permutation groups given by generators, with lazily built stabilizer chains."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..errors import DegreeMismatch, InputError, NotTransitive, OrderExceedsBound
from .chain import DEFAULT_SEED, ProductReplacement, StabilizerChain, schreier_sims, try_generate
from .permutation import IDX, Permutation, identity_array, invert_array, is_identity_array

DEFAULT_ENUMERATION_BOUND = 10**7
SETWISE_FILTER_BOUND = 10**4
_CC_THRESHOLD = 256


def _to_array(g, degree: int | None) -> np.ndarray:
    if isinstance(g, Permutation):
        if degree is not None and g.degree != degree:
            raise DegreeMismatch(f"generator of degree {g.degree}, expected {degree}")
        return g.array
    return Permutation(g, degree).array


def orbit_labels(gens: Sequence[np.ndarray], n: int) -> np.ndarray:
    """Label every point by the smallest point of its orbit."""
    if n > _CC_THRESHOLD and gens:
        from scipy.sparse import coo_matrix
        from scipy.sparse.csgraph import connected_components

        src = np.tile(np.arange(n, dtype=IDX), len(gens))
        dst = np.concatenate(gens)
        graph = coo_matrix((np.ones(src.shape[0], dtype=np.int8), (src, dst)), shape=(n, n))
        _, comp = connected_components(graph, directed=True, connection="weak")
        first = np.full(comp.max() + 1, n, dtype=np.int64)
        np.minimum.at(first, comp, np.arange(n))
        return first[comp].astype(IDX)
    labels = np.full(n, -1, dtype=np.int64)
    for s in range(n):
        if labels[s] >= 0:
            continue
        labels[s] = s
        stack = [s]
        while stack:
            x = stack.pop()
            for g in gens:
                y = int(g[x])
                if labels[y] < 0:
                    labels[y] = s
                    stack.append(y)
    return labels.astype(IDX)


def orbit_of(gens: Sequence[np.ndarray], n: int, seed: int) -> np.ndarray:
    seen = np.zeros(n, dtype=bool)
    seen[seed] = True
    frontier = np.array([seed], dtype=IDX)
    while frontier.size:
        new = []
        for g in gens:
            img = g[frontier]
            img = np.unique(img[~seen[img]])
            if img.size:
                seen[img] = True
                new.append(img)
        frontier = np.concatenate(new) if new else np.empty(0, dtype=IDX)
    return np.nonzero(seen)[0].astype(IDX)


@dataclass(frozen=True)
class ConjugacyClasses:
    representatives: list[Permutation]
    sizes: list[int]

    def __len__(self) -> int:
        return len(self.sizes)


class PermutationGroup:
    """A permutation group on {0..degree-1}.

    ``order`` may be passed when it is known exactly from the construction;
    chain building then uses it as a certificate target.
    """

    def __init__(self, generators: Iterable = (), degree: int | None = None,
                 order: int | None = None, name: str | None = None):
        arrays: list[np.ndarray] = []
        seen: set[bytes] = set()
        for g in generators:
            a = _to_array(g, degree)
            if degree is None:
                degree = int(a.shape[0])
            if is_identity_array(a):
                continue
            key = a.tobytes()
            if key not in seen:
                seen.add(key)
                arrays.append(a)
        if degree is None:
            raise InputError("degree required for a group without generators")
        self.degree = int(degree)
        self._gens = arrays
        self._order = 1 if not arrays else order
        self.name = name
        self._chains: dict[tuple[int, ...], StabilizerChain] = {}
        self._stab_hints: dict[int, PermutationGroup] = {}
        self._elements: np.ndarray | None = None
        self._element_index: dict[bytes, int] | None = None
        self._labels: np.ndarray | None = None

    # -- basic data ---------------------------------------------------------
    @property
    def generators(self) -> list[Permutation]:
        return [Permutation._wrap(a) for a in self._gens]

    @property
    def gen_arrays(self) -> list[np.ndarray]:
        return self._gens

    @property
    def cached_order(self) -> int | None:
        return self._order

    def __repr__(self) -> str:
        label = self.name or "PermutationGroup"
        return f"<{label} degree={self.degree} gens={len(self._gens)}>"

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    # -- chains -------------------------------------------------------------
    def chain(self, base_prefix: Sequence[int] = ()) -> StabilizerChain:
        key = tuple(dict.fromkeys(int(b) for b in base_prefix))
        if key not in self._chains:
            ch = schreier_sims(self._gens, self.degree, key, known_order=self._order)
            self._chains[key] = ch
            if self._order is None:
                self._order = ch.order()
        return self._chains[key]

    def order(self) -> int:
        if self._order is None:
            self.chain()
        return self._order

    def is_trivial(self) -> bool:
        return not self._gens

    def contains(self, g) -> bool:
        a = _to_array(g, self.degree)
        return self.chain().contains(a)

    __contains__ = contains

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        return all(other.chain().contains(a) for a in self._gens)

    def random_elements(self, count: int, seed: int = DEFAULT_SEED) -> list[np.ndarray]:
        pr = ProductReplacement(self._gens, self.degree, random.Random(seed))
        return [pr.next().copy() for _ in range(count)]

    # -- orbits -------------------------------------------------------------
    def orbit(self, seed: int) -> np.ndarray:
        if not 0 <= seed < self.degree:
            raise InputError(f"point {seed} out of range")
        return orbit_of(self._gens, self.degree, seed)

    def orbit_transversal(self, seed: int) -> tuple[list[int], dict[int, Permutation]]:
        """Sorted orbit and a witness mapping seed to each orbit point."""
        if not 0 <= seed < self.degree:
            raise InputError(f"point {seed} out of range")
        n = self.degree
        witness = {seed: identity_array(n)}
        frontier = [seed]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self._gens:
                    y = int(g[x])
                    if y not in witness:
                        witness[y] = g[witness[x]]
                        nxt.append(y)
            frontier = nxt
        pts = sorted(witness)
        return pts, {p: Permutation._wrap(witness[p]) for p in pts}

    def orbit_labels(self) -> np.ndarray:
        if self._labels is None:
            self._labels = orbit_labels(self._gens, self.degree)
        return self._labels

    def all_orbits(self) -> list[np.ndarray]:
        labels = self.orbit_labels()
        order = np.argsort(labels, kind="stable")
        reps, starts = np.unique(labels[order], return_index=True)
        return [np.sort(part) for part in np.split(order, starts[1:])]

    def orbit_sizes(self) -> dict[int, int]:
        """Map orbit representative (smallest point) to orbit length."""
        labels = self.orbit_labels()
        reps, counts = np.unique(labels, return_counts=True)
        return dict(zip(reps.tolist(), counts.tolist()))

    def is_transitive(self) -> bool:
        return self.degree == 1 or len(self.orbit(0)) == self.degree

    # -- stabilizers --------------------------------------------------------
    def _level_group(self, chain: StabilizerChain, level: int) -> "PermutationGroup":
        gens = chain.strong_generators(level)
        order = chain.order(level)
        return PermutationGroup(small_generating_set(gens, self.degree, order),
                                degree=self.degree, order=order)

    def point_stabilizer(self, point: int) -> "PermutationGroup":
        if not 0 <= point < self.degree:
            raise InputError(f"point {point} out of range")
        if point in self._stab_hints:
            return self._stab_hints[point]
        ch = self.chain((point,))
        return self._level_group(ch, 1)

    def set_stabilizer_hint(self, point: int, stab: "PermutationGroup") -> None:
        """Record a known point stabilizer (used by structured constructions)."""
        self._stab_hints[point] = stab

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermutationGroup":
        pts = tuple(dict.fromkeys(int(p) for p in points))
        for p in pts:
            if not 0 <= p < self.degree:
                raise InputError(f"point {p} out of range")
        if not pts:
            return self
        ch = self.chain(pts)
        return self._level_group(ch, len(pts))

    def setwise_stabilizer(self, subset: Iterable[int],
                           filter_bound: int = SETWISE_FILTER_BOUND) -> "PermutationGroup":
        from .search import setwise_stabilizer_backtrack, setwise_stabilizer_filter

        s = sorted(set(int(x) for x in subset))
        for p in s:
            if not 0 <= p < self.degree:
                raise InputError(f"point {p} out of range")
        if self.order() <= filter_bound:
            return setwise_stabilizer_filter(self, s)
        return setwise_stabilizer_backtrack(self, s)

    # -- enumeration --------------------------------------------------------
    def elements(self, bound: int = DEFAULT_ENUMERATION_BOUND) -> np.ndarray:
        """All elements as a lexicographically sorted (|G|, degree) array."""
        if self._elements is not None:
            return self._elements
        if self.order() > bound:
            raise OrderExceedsBound(f"|G| = {self.order()} exceeds bound {bound}")
        n = self.degree
        ch = self.chain()
        elems = identity_array(n)[None, :]
        for lv in reversed(ch.levels):
            us = [lv.transversal(pt) for pt in lv.orbit.tolist()]
            elems = np.concatenate([u[elems] for u in us], axis=0)
        idx = np.lexsort(elems.T[::-1])
        elems = np.ascontiguousarray(elems[idx])
        elems.flags.writeable = False
        self._elements = elems
        return elems

    def element_index(self, bound: int = DEFAULT_ENUMERATION_BOUND) -> dict[bytes, int]:
        if self._element_index is None:
            E = self.elements(bound)
            self._element_index = {row.tobytes(): i for i, row in enumerate(E)}
        return self._element_index

    def conjugacy_classes(self, bound: int = DEFAULT_ENUMERATION_BOUND) -> ConjugacyClasses:
        E = self.elements(bound)
        index = self.element_index(bound)
        N = E.shape[0]
        maps = []
        for g in self._gens:
            ginv = invert_array(g)
            conj = g[E[:, ginv]]
            maps.append(np.fromiter((index[r.tobytes()] for r in conj), dtype=np.int64, count=N))
        labels = orbit_labels([m.astype(IDX) for m in maps], N) if maps else np.arange(N)
        reps, sizes = np.unique(labels, return_counts=True)
        return ConjugacyClasses([Permutation._wrap(E[r].copy()) for r in reps.tolist()],
                                [int(s) for s in sizes])

    def minimal_degree(self, bound: int = DEFAULT_ENUMERATION_BOUND) -> int:
        E = self.elements(bound)
        moved = (E != np.arange(self.degree)).sum(axis=1)
        moved = moved[moved > 0]
        if moved.size == 0:
            raise InputError("minimal degree undefined for the trivial group")
        return int(moved.min())

    # -- structure ----------------------------------------------------------
    def is_primitive(self) -> bool:
        from .search import minimal_block

        if not self.is_transitive():
            raise NotTransitive("primitivity is undefined for intransitive groups")
        if self.degree <= 2:
            return True
        reps = self.point_stabilizer(0).orbit_sizes()
        for b in reps:
            if b == 0:
                continue
            if len(minimal_block(self._gens, self.degree, 0, b)) < self.degree:
                return False
        return True

    def subgroup(self, gens: Iterable, order: int | None = None) -> "PermutationGroup":
        return PermutationGroup(gens, degree=self.degree, order=order)

    def normal_closure(self, gens: Iterable) -> "PermutationGroup":
        """Smallest normal subgroup of self containing gens."""
        arrays = [_to_array(g, self.degree) for g in gens]
        arrays = [a for a in arrays if not is_identity_array(a)]
        N = PermutationGroup(arrays, degree=self.degree)
        changed = True
        while changed:
            changed = False
            for x in list(N.gen_arrays):
                for g in self._gens:
                    ginv = invert_array(g)
                    c = g[x[ginv]]
                    if not N.contains(c):
                        N = PermutationGroup(N.gen_arrays + [c], degree=self.degree)
                        changed = True
        return N

    def derived_subgroup(self) -> "PermutationGroup":
        comms = []
        for i, a in enumerate(self._gens):
            ainv = invert_array(a)
            for b in self._gens[i + 1:]:
                binv = invert_array(b)
                comms.append(b[a[binv[ainv]]])
        return self.normal_closure(comms)

    def is_normal_subgroup(self, H: "PermutationGroup") -> bool:
        if not H.is_subgroup_of(self):
            return False
        for x in H.gen_arrays:
            for g in self._gens:
                if not H.contains(g[x[invert_array(g)]]):
                    return False
        return True

    def normalizer_by_enumeration(self, K: "PermutationGroup",
                                  bound: int = 10**6) -> "PermutationGroup":
        """Normalizer of K in self by testing every element of self."""
        E = self.elements(bound)
        kset = {row.tobytes() for row in K.elements(bound)}
        keep = []
        for g in E:
            ginv = invert_array(g)
            if all(g[x[ginv]].tobytes() in kset for x in K.gen_arrays):
                keep.append(g)
        return self.subgroup(reduce_generators(keep, self.degree), order=len(keep))


def small_generating_set(gens: Sequence[np.ndarray], n: int, order: int,
                         seed: int = DEFAULT_SEED) -> list[np.ndarray]:
    """Try a few random elements; fall back to the given generators."""
    if order == 1:
        return []
    if len(gens) <= 3:
        return list(gens)
    pr = ProductReplacement(list(gens), n, random.Random(seed))
    for count in (2, 3, 4):
        cand = [pr.next().copy() for _ in range(count)]
        if try_generate(cand, n, order, seed=seed):
            return cand
    return list(gens)


def reduce_generators(elements: Sequence[np.ndarray], n: int) -> list[np.ndarray]:
    """Greedy generating subset of a list that is closed under multiplication."""
    out: list[np.ndarray] = []
    current = PermutationGroup([], degree=n)
    for g in elements:
        if is_identity_array(g):
            continue
        if not current.contains(g):
            out.append(g)
            current = PermutationGroup(out, degree=n)
    return out


def as_group(obj) -> PermutationGroup:
    if isinstance(obj, PermutationGroup):
        return obj
    return PermutationGroup(obj)
