"""Bases and regular suborbits of groups in product action.

Covers the wreath-product base-size criterion (b(L wr P) <= m iff
reg(L, m) >= D(P)), the regular-suborbit count of L wr P in terms of r(L)
and the distinguishing counts t_m, the two-point base test via coordinate
pair orbits, and a sufficient criterion for b(G) = 2 when
T wr P <= G <= L wr P, with an explicit witness pair.
"""
from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Sequence

import numpy as np

from .base import base_size_exact, reg_L_m, regular_orbit_count
from .constructions.product import ProductActionSpace, ProductTypeGroup, wreath_product_action
from .distinguishing import (SetPartition, check_dagger, check_ddagger, count_tm,
                             distinguishing_number, distinguishing_partitions, is_distinguishing)
from .errors import BudgetExhausted, ConsistencyError, InputError
from .perm import PermutationGroup, orbit_labels

DEFAULT_M_MAX = 6


@dataclass
class WreathAnalysis:
    rL: int
    bL: int
    regL: dict[int, int]
    D: int
    tm: dict[int, int]
    predicted_b: int | None
    r_wreath: int
    direct_b: int | None = None
    direct_r: int | None = None


@dataclass(frozen=True)
class Base2Certificate:
    verdict: str  # "guaranteed" or "unknown"
    m_used: int | None
    witness: tuple[int, int] | None
    reason: str = ""
    conditions: dict = field(default_factory=dict)


def is_soluble(G: PermutationGroup) -> bool:
    K = G
    while K.order() > 1:
        D = K.derived_subgroup()
        if D.order() == K.order():
            return False
        K = D
    return True


# -- the base-size criterion ---------------------------------------------------

def bc_predict(L: PermutationGroup, P: PermutationGroup, m_max: int = DEFAULT_M_MAX,
               D: int | None = None) -> tuple[int | None, dict[int, tuple[int, bool]]]:
    """Least m with reg(L, m) >= D(P), plus {m: (reg(L, m), verdict)} for the m tried."""
    D = distinguishing_number(P) if D is None else D
    verdicts = {}
    for m in range(1, m_max + 1):
        reg = reg_L_m(L, m)
        verdicts[m] = (reg, reg >= D)
        if reg >= D:
            return m, verdicts
    return None, verdicts


def direct_wreath_base_size(L: PermutationGroup, P: PermutationGroup,
                            max_points: int = 10**6) -> int | None:
    """b(L wr P) from the explicit product action, or None past the point budget."""
    if L.degree ** P.degree > max_points:
        return None
    W = wreath_product_action(L, P, max_points)
    res = base_size_exact(W.ambient)
    return res.b if res.method == "exact" else None


# -- counting regular suborbits -------------------------------------------------

def wreath_sum(rL: int, tm: dict[int, int]) -> int:
    """sum over m of m! * C(rL, m) * t_m."""
    return sum(factorial(m) * comb(rL, m) * t for m, t in tm.items())


def r_wreath_formula(rL: int, tm: dict[int, int], order_P: int) -> int:
    total = wreath_sum(rL, tm)
    if total % order_P:
        raise ConsistencyError(f"regular-suborbit sum {total} is not divisible by |P| = {order_P}")
    return total // order_P


def r_wreath_symmetric(rL: int, k: int) -> int:
    """r(L wr S_k)."""
    return comb(rL, k)


def r_wreath_prime_cyclic(rL: int, k: int) -> int:
    """r(L wr C_k) for k prime."""
    if (rL**k - rL) % k:
        raise ConsistencyError("r^k - r not divisible by the prime k")
    return (rL**k - rL) // k


def tm_profile(P: PermutationGroup, rL: int, D: int | None = None) -> dict[int, int]:
    """t_m for D(P) <= m <= min(k, rL); these are the only nonzero terms of the sum."""
    D = distinguishing_number(P) if D is None else D
    return {m: count_tm(P, m, crosscheck=False).t for m in range(D, min(P.degree, rL) + 1)}


def r_wreath(rL: int, P: PermutationGroup) -> int:
    return r_wreath_formula(rL, tm_profile(P, rL), P.order())


def regular_suborbit_count_L(L: PermutationGroup) -> int:
    return regular_orbit_count(L.point_stabilizer(0)).count


def analyze_wreath(L: PermutationGroup, P: PermutationGroup, m_max: int = DEFAULT_M_MAX,
                   direct: bool = False, max_points: int = 10**6) -> WreathAnalysis:
    D = distinguishing_number(P)
    rL = regular_suborbit_count_L(L)
    bL = base_size_exact(L).b
    pred, verdicts = bc_predict(L, P, m_max, D)
    tm = tm_profile(P, rL, D)
    rw = r_wreath_formula(rL, tm, P.order())
    out = WreathAnalysis(rL, bL, {m: v[0] for m, v in verdicts.items()}, D, tm, pred, rw)
    if (rw >= 1) != (pred is not None and pred <= 2):
        raise ConsistencyError("regular-suborbit count disagrees with the base-size criterion")
    if direct and L.degree ** P.degree <= max_points:
        W = wreath_product_action(L, P, max_points)
        out.direct_b = base_size_exact(W.ambient).b
        out.direct_r = regular_orbit_count(W.stabilizer()).count
    return out


def unique_regular_suborbit_test(rL: int, P: PermutationGroup) -> tuple[bool, str]:
    """r(L wr P) = 1 iff r(L) = D(P) and t_D = |P| / D!; names the primitive case that applies."""
    D = distinguishing_number(P)
    tD = count_tm(P, D, crosscheck=False).t
    k, order = P.degree, P.order()
    holds = rL == D and tD * factorial(D) == order
    reason = f"r(L)={rL}, D(P)={D}, t_D={tD}, |P|/D!={order / factorial(D):g}"
    if P.is_transitive() and P.is_primitive():
        if order == factorial(k):
            case = "(i) symmetric group"
        elif (k, order, D) == (6, 60, 3):
            case = "(ii) A5 on 6 points"
        elif (k, order, D) == (9, 1512, 3):
            case = "(iii) PGammaL2(8) on 9 points"
        elif (k, order, D) == (8, 1344, 4):
            case = "(iv) AGL3(2) on 8 points"
        else:
            case = "none of the primitive cases"
        if (case.startswith("none") and tD * factorial(D) == order):
            raise ConsistencyError("primitive top group with a unique regular orbit outside the known list")
        reason += f"; primitive top group: {case}"
    return holds, reason


# -- the two-point base test ----------------------------------------------------

@dataclass(frozen=True)
class PairOrbitTable:
    labels: np.ndarray   # label[x * n + y] = least pair index in the L-orbit of (x, y)
    regular: np.ndarray  # regular[label] for every label value

    def label(self, n: int, x: int, y: int) -> int:
        return int(self.labels[x * n + y])


_pair_tables: "weakref.WeakKeyDictionary[PermutationGroup, PairOrbitTable]" = weakref.WeakKeyDictionary()


def pair_orbit_table(L: PermutationGroup, max_pairs: int = 4 * 10**6) -> PairOrbitTable:
    if L in _pair_tables:
        return _pair_tables[L]
    n = L.degree
    if n * n > max_pairs:
        raise BudgetExhausted("Gamma^2 exceeds the pair budget")
    idx = np.arange(n * n)
    xs, ys = idx // n, idx % n
    gens = [(g[xs].astype(np.int64) * n + g[ys]).astype(np.int32) for g in L.gen_arrays]
    labels = orbit_labels(gens, n * n) if gens else idx.astype(np.int32)
    sizes = np.bincount(labels, minlength=n * n)
    table = PairOrbitTable(labels, sizes == L.order())
    _pair_tables[L] = table
    return table


def product_base_pair_test(space: ProductActionSpace, L: PermutationGroup, P: PermutationGroup,
                           alpha: int, beta: int) -> bool:
    """Whether {alpha, beta} is a base of L wr P, from coordinate pair orbits of L."""
    n = space.gamma_size
    table = pair_orbit_table(L)
    a, b = space.decode(alpha), space.decode(beta)
    labs = [table.label(n, int(a[i]), int(b[i])) for i in range(space.k)]
    if not all(table.regular[x] for x in labs):
        return False
    return is_distinguishing(P, SetPartition.from_labels(labs))


# -- general product-type groups -------------------------------------------------

def _ordered_blocks(p: SetPartition) -> list[tuple[int, ...]]:
    return sorted(p.blocks, key=lambda b: (-len(b), b[0]))


def leading_union_m(partitions: Sequence[SetPartition], tau: int) -> tuple[int, SetPartition] | None:
    """Least m such that some partition has its m largest blocks covering more than tau points."""
    best = None
    for p in sorted(partitions, key=lambda p: p.blocks):
        total = 0
        for m, b in enumerate(_ordered_blocks(p), start=1):
            total += len(b)
            if total > tau:
                if best is None or m < best[0]:
                    best = (m, p)
                break
    return best


def _regular_reps(K: PermutationGroup) -> list[int]:
    return regular_orbit_count(K).orbit_reps


def sufficient_base2_general(W: ProductTypeGroup) -> Base2Certificate:
    if W.T is None:
        raise InputError("the socle factor T is needed for this criterion")
    L, T, P, k = W.L, W.T, W.P, W.k
    index = L.order() // T.order()
    tau = W.tau if W.tau is not None else 0
    D = distinguishing_number(P)
    try:
        parts = distinguishing_partitions(P, D)
    except BudgetExhausted:
        return Base2Certificate("unknown", None, None, "distinguishing partitions not enumerable")
    chosen = leading_union_m(parts, tau)
    if chosen is None:
        return Base2Certificate("unknown", None, None, "no partition has a leading union larger than tau")
    m, part = chosen
    J, J0 = L.point_stabilizer(0), T.point_stabilizer(0)
    reg_L = _regular_reps(J)
    reg_T = _regular_reps(J0)
    conds = {"tau": W.tau, "D": D, "m": m, "r(L)": len(reg_L), "r(T)": len(reg_T), "|L:T|": index,
             "(i)": len(reg_L) >= m, "(ii)": len(reg_T) >= m * (index - 1) + D}
    if not (conds["(i)"] and conds["(ii)"]):
        return Base2Certificate("unknown", m, None, "conditions not met", conds)
    gammas = list(reg_L[:m])
    # extra points: distinct regular J0-orbits avoiding the J-orbits of the first m
    jlab = J.orbit_labels()
    first = {int(jlab[g]) for g in gammas}
    gammas += [x for x in reg_T if int(jlab[x]) not in first][:D - m]
    if len(gammas) < D:
        raise ConsistencyError("conditions hold but the witness points cannot be chosen")
    coords = [0] * k
    for i, block in enumerate(_ordered_blocks(part)):
        for j in block:
            coords[j] = gammas[i]
    beta = W.space.encode(coords)
    H = W.stabilizer()
    if len(H.orbit(beta)) != H.order():
        raise ConsistencyError("conditions hold but the constructed pair is not a base")
    return Base2Certificate("guaranteed", m, (0, beta), "conditions (i) and (ii) hold", conds)


def overgroup_base_witness(W: ProductTypeGroup, overgroups: Sequence[PermutationGroup]) -> tuple[int, int] | None:
    """A pair (0, beta) with beta_i forming a base with 0 for overgroups[i], the beta_i in
    distinct L_0-orbits.  Returns the first such pair that is a base of the ambient group."""
    k = W.k
    if len(overgroups) != k:
        raise InputError("one overgroup per coordinate")
    jlab = W.L.point_stabilizer(0).orbit_labels()
    cands = [_regular_reps_all(M.point_stabilizer(0)) for M in overgroups]
    H = W.stabilizer()

    def rec(i, chosen):
        if i == k:
            beta = W.space.encode(chosen)
            return (0, beta) if len(H.orbit(beta)) == H.order() else None
        for x in cands[i]:
            if all(jlab[x] != jlab[y] for y in chosen):
                found = rec(i + 1, chosen + [x])
                if found:
                    return found
        return None

    return rec(0, [])


def _regular_reps_all(K: PermutationGroup) -> list[int]:
    """Every point in a regular orbit of K."""
    labels = K.orbit_labels()
    sizes = np.bincount(labels, minlength=K.degree)
    return np.nonzero(sizes[labels] == K.order())[0].tolist()


# -- structural implications --------------------------------------------------

@dataclass
class CheckResult:
    name: str
    applicable: bool
    holds: bool | None
    detail: str = ""


def structural_checks(W: ProductTypeGroup, b_direct: int | None = None) -> list[CheckResult]:
    """Instantiate the structural implications for W and check them against b(W).

    b(W) is computed directly when not supplied.  A violated implication raises
    ConsistencyError; inapplicable ones are reported with applicable=False.
    """
    L, T, P, k = W.L, W.T, W.P, W.k
    b = base_size_exact(W.ambient).b if b_direct is None else b_direct
    bL = base_size_exact(L).b
    D = distinguishing_number(P)
    out: list[CheckResult] = []

    def record(name, applicable, holds, detail=""):
        if applicable and holds is False:
            raise ConsistencyError(f"{name} violated: {detail}")
        out.append(CheckResult(name, applicable, holds if applicable else None, detail))

    full = W.is_full_wreath
    soluble = full and is_soluble(L.point_stabilizer(0)) and is_soluble(P)
    if full:
        regb = reg_L_m(L, bL)
        expect = bL if regb >= D else bL + 1
        applicable = regb >= D or soluble
        record("base size dichotomy", applicable, b == expect,
               f"reg(L,b(L))={regb}, D(P)={D}, b(L)={bL}, b(G)={b}")
    index = L.order() // T.order() if T is not None else 1
    hyp = T is not None and not full and index > 1
    rT = regular_orbit_count(T.point_stabilizer(0)).count if T is not None else None
    tau0 = hyp and W.tau == 0
    if hyp:
        cert = sufficient_base2_general(W)
        record("sufficient base-two criterion", cert.verdict == "guaranteed", b == 2,
               f"{cert.reason}; b(G)={b}")
    diag = tau0 and bL == 2 and b >= 3
    record("socle suborbit bounds", diag,
           index <= rT <= index + D - 2 if diag else None, f"r(T)={rT}, |L:T|={index}, D(P)={D}")
    if diag:
        ok = all(check_dagger(P, m) for m in range(D, min(k, rT) + 1))
    record("dagger condition", diag, ok if diag else None, f"D(P) <= m <= min(k, r(T)) = {min(k, rT or 0)}")
    dd = diag and D == 2
    record("double-dagger condition", dd, check_ddagger(P) if dd else None)
    lem = tau0 and bL == 2 and index == 2 and k == rT and P.order() == factorial(k)
    record("index-two symmetric top group", lem, b >= 3 if lem else None, f"b(G)={b}")
    big = hyp and bL >= 3 and index == 2
    record("index-two with b(L) >= 3", big, b >= 3 if big else None, f"b(G)={b}")
    return out
