"""Wreath products in product action and product-type subgroups."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import ConsistencyError, InputError, PointBudgetExceeded
from ..perm import Permutation, PermutationGroup
from ..perm.permutation import IDX, identity_array

DEFAULT_POINT_BUDGET = 5_000_000


@dataclass(frozen=True)
class ProductActionSpace:
    """Gamma^k with coordinate i carrying weight gamma_size**i."""

    gamma_size: int
    k: int

    @property
    def total(self) -> int:
        return self.gamma_size**self.k

    @property
    def weights(self) -> np.ndarray:
        return self.gamma_size ** np.arange(self.k, dtype=np.int64)

    def encode(self, coords) -> np.ndarray | int:
        c = np.asarray(coords, dtype=np.int64)
        if c.ndim == 1:
            return int(c @ self.weights)
        return c @ self.weights

    def decode(self, points) -> np.ndarray:
        p = np.asarray(points, dtype=np.int64)
        return (p[..., None] // self.weights) % self.gamma_size

    def all_coords(self) -> np.ndarray:
        return self.decode(np.arange(self.total, dtype=np.int64))

    def diagonal(self, gamma: int) -> int:
        return self.encode([gamma] * self.k)


def lift(space: ProductActionSpace, zs: Sequence, sigma, coords: np.ndarray | None = None) -> np.ndarray:
    """Image array of (z_1..z_k) sigma on Gamma^k.

    The value in coordinate i is moved by z_i and lands in coordinate i^sigma.
    ``zs`` entries may be None for the identity; sigma may be None.
    """
    if coords is None:
        coords = space.all_coords()
    k = space.k
    sig = list(range(k)) if sigma is None else [int(x) for x in np.asarray(
        sigma.array if isinstance(sigma, Permutation) else sigma)]
    new = np.empty_like(coords)
    for i in range(k):
        z = zs[i]
        col = coords[:, i]
        if z is not None:
            za = z.array if isinstance(z, Permutation) else np.asarray(z)
            col = za[col]
        new[:, sig[i]] = col
    return (new @ space.weights).astype(IDX)


class CosetQuotient:
    """The quotient L/T with labels 0..m-1 (label 0 is T itself)."""

    def __init__(self, L: PermutationGroup, T: PermutationGroup):
        self.L, self.T = L, T
        n = L.degree
        self.reps: list[np.ndarray] = [identity_array(n)]
        queue = [0]
        while queue:
            i = queue.pop(0)
            for s in L.gen_arrays:
                x = s[self.reps[i]]
                if self._find(x) is None:
                    self.reps.append(x)
                    queue.append(len(self.reps) - 1)
        m = len(self.reps)
        if m * T.order() != L.order():
            raise ConsistencyError("coset count disagrees with |L:T|")
        self.table = [[self.label(self.reps[b][self.reps[a]]) for b in range(m)] for a in range(m)]

    def _find(self, g: np.ndarray) -> int | None:
        for i, r in enumerate(self.reps):
            rinv = np.empty_like(r)
            rinv[r] = np.arange(r.shape[0], dtype=r.dtype)
            if self.T.chain().contains(rinv[g]):
                return i
        return None

    def label(self, g) -> int:
        a = g.array if isinstance(g, Permutation) else np.asarray(g)
        i = self._find(a)
        if i is None:
            raise InputError("element does not lie in L")
        return i

    def __len__(self) -> int:
        return len(self.reps)


def _quotient_closure(quot: CosetQuotient, k: int, gens: list[tuple[tuple[int, ...], tuple[int, ...]]]):
    ident = (tuple([0] * k), tuple(range(k)))

    def mul(x, y):
        q, s = x
        p, t = y
        return (tuple(quot.table[q[i]][p[s[i]]] for i in range(k)), tuple(t[s[i]] for i in range(k)))

    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


@dataclass
class ProductTypeGroup:
    ambient: PermutationGroup
    L: PermutationGroup
    T: PermutationGroup | None
    P: PermutationGroup
    k: int
    space: ProductActionSpace
    tau: int | None = None
    quotient_order: int | None = None
    extra: list = field(default_factory=list)
    is_full_wreath: bool = False

    @property
    def degree(self) -> int:
        return self.space.total

    def order(self) -> int:
        return self.ambient.order()

    def base_point(self) -> int:
        return 0

    def stabilizer(self) -> PermutationGroup:
        return self.ambient.point_stabilizer(0)


def _check_budget(space: ProductActionSpace, max_points: int) -> None:
    if space.total > max_points:
        raise PointBudgetExceeded(f"|Gamma|^k = {space.total} exceeds point budget {max_points}")


def wreath_product_action(L: PermutationGroup, P: PermutationGroup,
                          max_points: int = DEFAULT_POINT_BUDGET,
                          T: PermutationGroup | None = None) -> ProductTypeGroup:
    """L wr P on Gamma^k.  Passing the socle factor T also computes tau."""
    if T is not None:
        outer = [g for g in L.gen_arrays if not T.contains(g)]
        extra = [([g] + [None] * (P.degree - 1), None) for g in outer]
        W = product_type_subgroup(L, T, P, extra, max_points)
        if W.order() != L.order() ** P.degree * P.order():
            raise ConsistencyError("wreath product order mismatch")
        W.is_full_wreath = True
        return W
    k = P.degree
    if k < 1:
        raise InputError("top group needs k >= 1")
    space = ProductActionSpace(L.degree, k)
    _check_budget(space, max_points)
    coords = space.all_coords()
    none = [None] * k
    gens = [lift(space, [g] + none[1:], None, coords) for g in L.gen_arrays]
    gens += [lift(space, none, s, coords) for s in P.gen_arrays]
    order = L.order() ** k * P.order()
    G = PermutationGroup(gens, degree=space.total, order=order,
                         name=f"({L.name or 'L'}) wr ({P.name or 'P'})")
    J = L.point_stabilizer(0)
    hgens = [lift(space, [g] + none[1:], None, coords) for g in J.gen_arrays]
    hgens += [lift(space, none, s, coords) for s in P.gen_arrays]
    H = PermutationGroup(hgens, degree=space.total, order=J.order() ** k * P.order())
    G.set_stabilizer_hint(0, H)
    return ProductTypeGroup(G, L, None, P, k, space, is_full_wreath=True)


def product_type_subgroup(L: PermutationGroup, T: PermutationGroup, P: PermutationGroup,
                          extra: Sequence[tuple[Sequence, object]],
                          max_points: int = DEFAULT_POINT_BUDGET) -> ProductTypeGroup:
    """G = <T in every coordinate, lifted P, extra elements (z_1..z_k) sigma>."""
    k = P.degree
    if not L.is_normal_subgroup(T):
        raise InputError("T is not a normal subgroup of L")
    if not T.is_transitive():
        raise InputError("T must be transitive on Gamma")
    space = ProductActionSpace(L.degree, k)
    _check_budget(space, max_points)
    quot = CosetQuotient(L, T)
    qgens = [(tuple([0] * k), tuple(int(x) for x in s)) for s in P.gen_arrays]
    norm_extra = []
    for zs, sigma in extra:
        if len(zs) != k:
            raise InputError("extra element needs one entry per coordinate")
        zs = [identity_array(L.degree) if z is None else
              (z.array if isinstance(z, Permutation) else np.asarray(z, dtype=IDX)) for z in zs]
        sig = identity_array(k) if sigma is None else (
            sigma.array if isinstance(sigma, Permutation) else np.asarray(sigma, dtype=IDX))
        for z in zs:
            if not L.contains(z):
                raise InputError("extra element has a coordinate outside L")
        if not P.contains(sig):
            raise InputError("extra element permutes coordinates outside P")
        norm_extra.append((zs, sig))
        qgens.append((tuple(quot.label(z) for z in zs), tuple(int(x) for x in sig)))
    gbar = _quotient_closure(quot, k, qgens)
    ident_sigma = tuple(range(k))
    in_base = [q for q, s in gbar if s == ident_sigma and any(q)]
    tau = max((sum(1 for x in q if x == 0) for q in in_base), default=None)

    coords = space.all_coords()
    none = [None] * k
    gens = [lift(space, [t] + none[1:], None, coords) for t in T.gen_arrays]
    gens += [lift(space, none, s, coords) for s in P.gen_arrays]
    gens += [lift(space, zs, sig, coords) for zs, sig in norm_extra]
    order = T.order() ** k * len(gbar)
    G = PermutationGroup(gens, degree=space.total, order=order)

    # Point stabilizer of the diagonal point 0: T_0 in each coordinate, lifted P,
    # and each extra element corrected coordinatewise into J = L_0.
    J, J0 = L.point_stabilizer(0), T.point_stabilizer(0)
    jreps = {0: identity_array(L.degree)}
    frontier = [0]
    while frontier:
        nxt = []
        for lab in frontier:
            for s in J.gen_arrays:
                x = s[jreps[lab]]
                m = quot.label(x)
                if m not in jreps:
                    jreps[m] = x
                    nxt.append(m)
        frontier = nxt
    if len(jreps) != len(quot):
        raise ConsistencyError("L = T J fails: point stabilizer misses a coset of T")
    hgens = [lift(space, [t] + none[1:], None, coords) for t in J0.gen_arrays]
    hgens += [lift(space, none, s, coords) for s in P.gen_arrays]
    for zs, sig in norm_extra:
        adj = [jreps[quot.label(z)] for z in zs]
        hgens.append(lift(space, adj, sig, coords))
    H = PermutationGroup(hgens, degree=space.total, order=J0.order() ** k * len(gbar))
    G.set_stabilizer_hint(0, H)
    return ProductTypeGroup(G, L, T, P, k, space, tau=tau, quotient_order=len(gbar),
                            extra=norm_extra)


def coordinate_restriction(W: ProductTypeGroup) -> PermutationGroup:
    """Group induced on coordinate 0 by the elements of the ambient group that fix the block
    of points sharing coordinates 1..k-1, computed on generators that preserve coordinate 0."""
    coords = W.space.all_coords()
    block = np.nonzero(np.all(coords[:, 1:] == 0, axis=1))[0]
    gens = []
    for g in W.ambient.gen_arrays:
        img = g[block]
        if np.array_equal(np.sort(img), block):
            gens.append(coords[img, 0])
    return PermutationGroup(gens, degree=W.space.gamma_size)
