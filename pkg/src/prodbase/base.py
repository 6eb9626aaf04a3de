"""Base sizes, regular suborbits, reg(L, m), and base probabilities."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BudgetExhausted, InputError, NotTransitive, OrderExceedsBound
from .perm import Permutation, PermutationGroup
from .perm.permutation import invert_array

DEFAULT_NODE_BUDGET = 100_000


@dataclass(frozen=True)
class BaseResult:
    b: int
    witness: tuple[int, ...]
    method: str  # "exact" or "greedy-upper-bound"
    nodes: int = 0


@dataclass(frozen=True)
class RegularOrbitCount:
    count: int
    stabilizer_order: int
    orbit_reps: list[int]


@dataclass(frozen=True)
class ProbabilityEstimate:
    p_exact: Fraction
    q_hat: Fraction | None
    b: int
    reg: int

    @property
    def bound_holds(self) -> bool | None:
        if self.q_hat is None:
            return None
        return 1 - self.p_exact <= self.q_hat


def _require_transitive(G: PermutationGroup) -> None:
    if not G.is_transitive():
        raise NotTransitive("group must be transitive")


def information_bound(order: int, degree: int) -> int:
    """Least b with degree**b >= order."""
    if order <= 1:
        return 0
    if degree <= 1:
        raise InputError("nontrivial group on fewer than two points")
    b, power = 0, 1
    while power < order:
        power *= degree
        b += 1
    return b


def _reps_by_size(K: PermutationGroup) -> list[tuple[int, int]]:
    """(rep, orbit length) pairs, longest orbits first, then smallest rep."""
    sizes = K.orbit_sizes()
    return sorted(sizes.items(), key=lambda kv: (-kv[1], kv[0]))


def greedy_base(G: PermutationGroup) -> tuple[int, ...]:
    base = []
    K = G
    while K.order() > 1:
        rep, _ = _reps_by_size(K)[0]
        base.append(rep)
        K = K.point_stabilizer(rep)
    return tuple(base)


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise BudgetExhausted("node budget exhausted")


def _search(K: PermutationGroup, prefix: tuple[int, ...], remaining: int, n: int,
            budget: _Budget) -> tuple[int, ...] | None:
    """Extend prefix by `remaining` points to a base of the original group; K fixes prefix."""
    order = K.order()
    if order == 1:
        return prefix
    if remaining == 0:
        return None
    reps = _reps_by_size(K)
    if remaining == 1:
        hits = [r for r, s in reps if s == order]
        return prefix + (min(hits),) if hits else None
    for rep, size in reps:
        if size == 1:
            break
        sub_order = order // size
        if n ** (remaining - 1) < sub_order:
            continue
        budget.tick()
        found = _search(K.point_stabilizer(rep), prefix + (rep,), remaining - 1, n, budget)
        if found is not None:
            return found
    return None


def base_size_exact(G: PermutationGroup, depth_cap: int | None = None,
                    node_budget: int = DEFAULT_NODE_BUDGET) -> BaseResult:
    """Minimal base size by iterative deepening with orbit-representative pruning."""
    _require_transitive(G)
    n = G.degree
    if G.order() == 1:
        return BaseResult(0, (), "exact")
    greedy = greedy_base(G)
    lower = information_bound(G.order(), n)
    budget = _Budget(node_budget)
    top = len(greedy) if depth_cap is None else min(len(greedy), depth_cap + 1)
    try:
        for b in range(max(lower, 1), top):
            found = _search(G, (), b, n, budget)
            if found is not None:
                return BaseResult(len(found), found, "exact", budget.used)
    except BudgetExhausted:
        return BaseResult(len(greedy), greedy, "greedy-upper-bound", budget.used)
    if depth_cap is not None and top < len(greedy):
        return BaseResult(len(greedy), greedy, "greedy-upper-bound", budget.used)
    return BaseResult(len(greedy), greedy, "exact", budget.used)


def is_base(G: PermutationGroup, points: Sequence[int]) -> bool:
    return G.pointwise_stabilizer(list(points)).order() == 1


def regular_orbit_count(K: PermutationGroup) -> RegularOrbitCount:
    """Regular orbits of K on its domain."""
    order = K.order()
    reps = sorted(r for r, s in K.orbit_sizes().items() if s == order)
    return RegularOrbitCount(len(reps), order, reps)


def regular_suborbits(G: PermutationGroup, point: int = 0) -> RegularOrbitCount:
    """r(G): regular orbits of the point stabilizer G_point."""
    _require_transitive(G)
    return regular_orbit_count(G.point_stabilizer(point))


def double_coset_sizes(L: PermutationGroup, A: PermutationGroup, B: PermutationGroup,
                       bound: int = 10**6) -> list[int]:
    """Sizes of the (A, B) double cosets A x B in L, via element enumeration."""
    E = L.elements(bound)
    index = L.element_index(bound)
    N = E.shape[0]
    maps = []
    for h in A.gen_arrays:
        maps.append(np.fromiter((index[r.tobytes()] for r in E[:, h]), dtype=np.int64, count=N))
    for j in B.gen_arrays:
        maps.append(np.fromiter((index[r.tobytes()] for r in j[E]), dtype=np.int64, count=N))
    from .perm import orbit_labels

    labels = orbit_labels([m.astype(np.int32) for m in maps], N) if maps else np.arange(N)
    _, counts = np.unique(labels, return_counts=True)
    return sorted(counts.tolist())


def regular_suborbits_double_coset(L: PermutationGroup, K: PermutationGroup | None = None,
                                   point: int = 0) -> int:
    """Count double cosets K x J of size |K||J| with J = L_point (K defaults to J)."""
    J = L.point_stabilizer(point)
    K = J if K is None else K
    target = K.order() * J.order()
    return sum(1 for s in double_coset_sizes(L, K, J) if s == target)


def reg_L_m(L: PermutationGroup, m: int, node_budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Number of regular orbits of L on Gamma^m."""
    if m < 1:
        raise InputError("m must be positive")
    _require_transitive(L)
    n = L.degree
    if m == 1:
        return 1 if L.order() == n else 0
    budget = _Budget(node_budget)

    def leaf(K: PermutationGroup) -> int:
        if K.order() == 1:
            return n
        return regular_orbit_count(K).count

    def rec(K: PermutationGroup, depth: int) -> int:
        if depth == 0:
            return leaf(K)
        if K.order() == 1:
            return n ** (depth + 1)
        total = 0
        for rep in sorted(K.orbit_sizes()):
            budget.tick()
            total += rec(K.point_stabilizer(rep), depth - 1)
        return total

    return rec(L.point_stabilizer(0), m - 2)


def _fixed_point_counts(reps: list[Permutation]) -> list[int]:
    return [int(np.sum(r.array == np.arange(r.degree))) for r in reps]


def _is_prime(x: int) -> bool:
    return x >= 2 and all(x % p for p in range(2, int(x**0.5) + 1))


def q_hat(L: PermutationGroup, b: int, bound: int = 10**6) -> Fraction:
    classes = L.conjugacy_classes(bound)
    n = L.degree
    total = Fraction(0)
    for rep, size, fix in zip(classes.representatives, classes.sizes,
                              _fixed_point_counts(classes.representatives)):
        if _is_prime(rep.order()):
            total += size * Fraction(fix, n) ** b
    return total


def base_probability(L: PermutationGroup, b: int, class_bound: int = 10**6) -> ProbabilityEstimate:
    """Exact probability that a random b-tuple is a base, with the fixed-point-ratio bound."""
    _require_transitive(L)
    r = reg_L_m(L, b)
    J = L.order() // L.degree
    p = Fraction(J**b * r, L.order() ** (b - 1))
    try:
        qh = q_hat(L, b, class_bound)
    except OrderExceedsBound:
        qh = None
    return ProbabilityEstimate(p, qh, b, r)


def base_tuple_fraction(L: PermutationGroup, b: int, bound: int = 10**6) -> Fraction:
    """Fraction of all b-tuples with trivial pointwise stabilizer, by enumeration."""
    n = L.degree
    E = L.elements()
    nonid = E[np.any(E != np.arange(n), axis=1)]
    tuples = np.indices((n,) * b).reshape(b, -1).T
    if tuples.shape[0] > bound:
        raise OrderExceedsBound("too many tuples")
    good = 0
    for chunk in np.array_split(tuples, max(1, tuples.shape[0] // 2048)):
        fixed = np.ones((chunk.shape[0], nonid.shape[0]), dtype=bool)
        for c in range(b):
            fixed &= nonid[:, chunk[:, c]].T == chunk[:, c][:, None]
        good += int(np.sum(~fixed.any(axis=1)))
    return Fraction(good, n**b)
