"""Permutations of {0..n-1} stored as image arrays.

Composition is left to right: ``p * q`` first applies ``p`` and then ``q``,
so ``(p * q)(i) == q(p(i))``.  This matches a right action ``i^(pq)``.
"""
from __future__ import annotations

from functools import reduce
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from ..errors import DegreeMismatch, MalformedGenerator

IDX = np.int32


def as_images(images, degree: int | None = None) -> np.ndarray:
    """Validate and freeze an image array."""
    a = np.asarray(images, dtype=np.int64)
    if a.ndim != 1:
        raise MalformedGenerator("image array must be one-dimensional")
    n = a.shape[0]
    if degree is not None and n != degree:
        raise DegreeMismatch(f"expected degree {degree}, got {n}")
    if n and (a.min() < 0 or a.max() >= n):
        raise MalformedGenerator("image out of range")
    if n and not np.all(np.bincount(a, minlength=n) == 1):
        raise MalformedGenerator("images are not a bijection")
    out = a.astype(IDX)
    out.flags.writeable = False
    return out


def identity_array(n: int) -> np.ndarray:
    return np.arange(n, dtype=IDX)


def invert_array(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(a.shape[0], dtype=a.dtype)
    return inv


def is_identity_array(a: np.ndarray) -> bool:
    return bool(np.array_equal(a, np.arange(a.shape[0], dtype=a.dtype)))


class Permutation:
    __slots__ = ("_a", "_hash")

    def __init__(self, images, degree: int | None = None):
        if isinstance(images, Permutation):
            self._a = images._a
        else:
            self._a = as_images(images, degree)
        self._hash = None

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "Permutation":
        """Wrap a trusted array without validation."""
        p = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=IDX)
        arr.flags.writeable = False
        p._a = arr
        p._hash = None
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._wrap(identity_array(n))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        a = list(range(n))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                a[x] = cyc[(i + 1) % len(cyc)]
        return cls(a)

    @property
    def degree(self) -> int:
        return int(self._a.shape[0])

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._a)

    def __call__(self, point: int) -> int:
        return int(self._a[point])

    act = __call__

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise DegreeMismatch("cannot compose permutations of different degree")
        return Permutation._wrap(other._a[self._a])

    def inverse(self) -> "Permutation":
        return Permutation._wrap(invert_array(self._a))

    def __pow__(self, e: int) -> "Permutation":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = identity_array(self.degree)
        cur = base._a
        while e:
            if e & 1:
                result = cur[result]
            cur = cur[cur]
            e >>= 1
        return Permutation._wrap(result)

    def is_identity(self) -> bool:
        return is_identity_array(self._a)

    def support(self) -> np.ndarray:
        return np.nonzero(self._a != np.arange(self.degree))[0]

    def cycles(self) -> list[tuple[int, ...]]:
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for i in range(self.degree):
            if seen[i] or self._a[i] == i:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = int(self._a[j])
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return reduce(lcm, (len(c) for c in self.cycles()), 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self._a, other._a)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._a.tobytes())
        return self._hash

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return f"Permutation(identity, degree={self.degree})"
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)
        return f"Permutation({body}, degree={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    return p * q


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


def act(p: Permutation, point: int) -> int:
    return p(point)


def product(perms: Iterable[Permutation], n: int) -> Permutation:
    out = identity_array(n)
    for p in perms:
        out = p.array[out]
    return Permutation._wrap(out)
