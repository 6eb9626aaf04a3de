"""Standard permutation group families in their natural actions."""
from __future__ import annotations

import itertools
from math import factorial, gcd

import numpy as np

from ..errors import InputError
from ..perm import Permutation, PermutationGroup
from .fields import factor_prime_power, field


def _check_n(n: int, minimum: int = 1) -> None:
    if not isinstance(n, int) or n < minimum:
        raise InputError(f"degree must be an integer >= {minimum}, got {n!r}")


def symmetric(n: int) -> PermutationGroup:
    _check_n(n)
    gens = []
    if n >= 2:
        gens = [Permutation.from_cycles(n, (0, 1)), Permutation.from_cycles(n, tuple(range(n)))]
    return PermutationGroup(gens, degree=n, order=factorial(n), name=f"S{n}")


def alternating(n: int) -> PermutationGroup:
    _check_n(n)
    if n < 3:
        return PermutationGroup([], degree=n, name=f"A{n}")
    gens = [Permutation.from_cycles(n, (0, 1, 2))]
    if n > 3:
        cyc = tuple(range(n)) if n % 2 else tuple(range(1, n))
        gens.append(Permutation.from_cycles(n, cyc))
    return PermutationGroup(gens, degree=n, order=factorial(n) // 2, name=f"A{n}")


def cyclic(n: int) -> PermutationGroup:
    _check_n(n)
    gens = [Permutation.from_cycles(n, tuple(range(n)))] if n > 1 else []
    return PermutationGroup(gens, degree=n, order=n, name=f"C{n}")


def dihedral(n: int) -> PermutationGroup:
    """Symmetries of an n-gon acting on its n vertices."""
    _check_n(n, 3)
    rot = Permutation.from_cycles(n, tuple(range(n)))
    refl = Permutation([(-i) % n for i in range(n)])
    return PermutationGroup([rot, refl], degree=n, order=2 * n, name=f"D{2 * n}")


def _vectors(d: int, p: int) -> np.ndarray:
    """All vectors of F_p^d; row index = sum(v_i * p^i)."""
    return np.array([[(x // p**i) % p for i in range(d)] for x in range(p**d)], dtype=np.int64)


def _matrix_action(M: np.ndarray, p: int) -> Permutation:
    d = M.shape[0]
    V = _vectors(d, p)
    img = (V @ M) % p
    return Permutation(img @ (p ** np.arange(d)))


def _translation(v: np.ndarray, p: int) -> Permutation:
    d = v.shape[0]
    V = _vectors(d, p)
    return Permutation(((V + v) % p) @ (p ** np.arange(d)))


def _gl_order(d: int, p: int) -> int:
    out = 1
    for i in range(d):
        out *= p**d - p**i
    return out


def affine_gl(d: int, p: int) -> PermutationGroup:
    """AGL_d(p) on the p^d vectors (row vectors, right action v -> vM + t)."""
    _check_n(d)
    pp, f = factor_prime_power(p)
    if f != 1:
        raise InputError("affine_gl expects a prime field")
    gens = [_translation(np.eye(d, dtype=np.int64)[0], p)]
    w = field(p).primitive
    D = np.eye(d, dtype=np.int64)
    D[0, 0] = w
    if p > 2:
        gens.append(_matrix_action(D, p))
    if d > 1:
        E = np.eye(d, dtype=np.int64)
        E[0, 1] = 1
        gens.append(_matrix_action(E, p))
        C = np.roll(np.eye(d, dtype=np.int64), 1, axis=1)
        gens.append(_matrix_action(C, p))
    order = p**d * _gl_order(d, p)
    return PermutationGroup(gens, degree=p**d, order=order, name=f"AGL{d}({p})")


def affine_gamma_l1(q: int) -> PermutationGroup:
    """AGammaL_1(q): x -> a x^sigma + b on GF(q)."""
    F = field(q)
    gens = [Permutation([int(F.add[x, 1]) for x in range(q)])]
    if q > 2:
        gens.append(Permutation([int(F.mul[x, F.primitive]) for x in range(q)]))
    if F.f > 1:
        gens.append(Permutation(F.frobenius.tolist()))
    return PermutationGroup(gens, degree=q, order=q * (q - 1) * F.f, name=f"AGammaL1({q})")


def holomorph_c8() -> PermutationGroup:
    """x -> a x + b mod 8 with a odd."""
    gens = [Permutation([(x + 1) % 8 for x in range(8)]),
            Permutation([(3 * x) % 8 for x in range(8)]),
            Permutation([(5 * x) % 8 for x in range(8)])]
    return PermutationGroup(gens, degree=8, order=32, name="Hol(C8)")


def _quadratic_form_minus(v) -> int:
    x1, x2, x3, x4 = v
    return (x1 * x2 + x3 * x3 + x3 * x4 + x4 * x4) % 2


def minus_type_isometries() -> list[np.ndarray]:
    """Every invertible binary 4x4 matrix preserving x1x2 + x3^2 + x3x4 + x4^2."""
    V = _vectors(4, 2)
    qv = np.array([_quadratic_form_minus(v) for v in V])
    weights = 2 ** np.arange(4)
    out = []
    for bits in itertools.product((0, 1), repeat=16):
        M = np.array(bits, dtype=np.int64).reshape(4, 4)
        img = (V @ M) % 2
        idx = img @ weights
        if len(set(idx.tolist())) != 16:
            continue
        if np.array_equal(qv[idx], qv):
            out.append(M)
    return out


def affine_o4_minus_2() -> PermutationGroup:
    """2^4:O_4^-(2) on the 16 vectors of F_2^4, order 1920."""
    mats = minus_type_isometries()
    gens = [_translation(np.array([1, 0, 0, 0]), 2)]
    current = PermutationGroup(gens, degree=16)
    for M in mats:
        g = _matrix_action(M, 2)
        if not current.contains(g):
            gens.append(g)
            current = PermutationGroup(gens, degree=16)
    return PermutationGroup(gens, degree=16, order=16 * len(mats), name="2^4:O4-(2)")


# -- projective line --------------------------------------------------------

def _mobius(F, A) -> Permutation:
    """Row-vector action of the 2x2 matrix A on points inf, 0, 1, ..., q-1.

    The point labelled 1 + c is <(1, c)>, and label 0 is <(0, 1)> = infinity.
    """
    (a, b), (c, d) = A
    q = F.q
    imgs = []
    for pt in range(q + 1):
        x, y = (0, 1) if pt == 0 else (1, pt - 1)
        u = int(F.add[F.mul[x, a], F.mul[y, c]])
        v = int(F.add[F.mul[x, b], F.mul[y, d]])
        if u == 0:
            imgs.append(0)
        else:
            imgs.append(1 + int(F.mul[v, F.inv[u]]))
    return Permutation(imgs)


def _frobenius_line(F) -> Permutation:
    return Permutation([0] + [1 + int(F.frobenius[c]) for c in range(F.q)])


def _projective_q(q: int):
    p, f = factor_prime_power(q)
    if q < 4 or q > 128:
        raise InputError("projective families need 4 <= q <= 128")
    return field(q)


def psl2_generators(F) -> list[Permutation]:
    w = F.primitive
    one, zero = 1, 0
    minus_one = int(F.neg[1])
    w2 = int(F.mul[w, w])
    return [
        _mobius(F, ((one, one), (zero, one))),
        _mobius(F, ((w2, zero), (zero, one))),
        _mobius(F, ((zero, one), (minus_one, zero))),
    ]


def psl2_order(q: int) -> int:
    return q * (q * q - 1) // gcd(2, q - 1)


def psl2(q: int) -> PermutationGroup:
    F = _projective_q(q)
    return PermutationGroup(psl2_generators(F), degree=q + 1, order=psl2_order(q), name=f"PSL2({q})")


def diagonal_outer(F) -> Permutation:
    return _mobius(F, ((F.primitive, 0), (0, 1)))


def field_automorphism(F) -> Permutation:
    return _frobenius_line(F)


def pgl2(q: int) -> PermutationGroup:
    F = _projective_q(q)
    gens = psl2_generators(F) + [diagonal_outer(F)]
    return PermutationGroup(gens, degree=q + 1, order=q * (q * q - 1), name=f"PGL2({q})")


def psigmal2(q: int) -> PermutationGroup:
    F = _projective_q(q)
    gens = psl2_generators(F) + ([field_automorphism(F)] if F.f > 1 else [])
    return PermutationGroup(gens, degree=q + 1, order=psl2_order(q) * F.f, name=f"PSigmaL2({q})")


def pgammal2(q: int) -> PermutationGroup:
    F = _projective_q(q)
    gens = psl2_generators(F) + [diagonal_outer(F)]
    if F.f > 1:
        gens.append(field_automorphism(F))
    return PermutationGroup(gens, degree=q + 1, order=q * (q * q - 1) * F.f, name=f"PGammaL2({q})")


def m10_candidates() -> dict[str, PermutationGroup]:
    """The three index-2 overgroups of PSL2(9) inside PGammaL2(9)."""
    F = field(9)
    base = psl2_generators(F)
    d, phi = diagonal_outer(F), field_automorphism(F)
    return {
        "PGL2(9)": PermutationGroup(base + [d], degree=10, order=720),
        "PSigmaL2(9)": PermutationGroup(base + [phi], degree=10, order=720),
        "M10": PermutationGroup(base + [d * phi], degree=10, order=720),
    }


def _element_orders(G: PermutationGroup) -> set[int]:
    out = set()
    for row in G.elements():
        out.add(Permutation._wrap(row).order())
    return out


def m10() -> PermutationGroup:
    """M10: the index-2 overgroup of PSL2(9) with elements of order 8 but none of order 10."""
    for name, G in m10_candidates().items():
        orders = _element_orders(G)
        if 8 in orders and 10 not in orders:
            G.name = "M10"
            return G
    raise InputError("no candidate satisfies the M10 rule")


def is_k_transitive(G: PermutationGroup, k: int) -> bool:
    H = G
    for i in range(k):
        if len(H.orbit(i)) != G.degree - i:
            return False
        H = G.pointwise_stabilizer(list(range(i + 1)))
    return True


def pairs_of(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def induced_on_pairs(G: PermutationGroup) -> PermutationGroup:
    """Action on unordered pairs of distinct points, pairs listed lexicographically."""
    pairs = pairs_of(G.degree)
    index = {pr: i for i, pr in enumerate(pairs)}
    gens = []
    for g in G.gen_arrays:
        img = [index[tuple(sorted((int(g[a]), int(g[b]))))] for a, b in pairs]
        gens.append(Permutation(img))
    return PermutationGroup(gens, degree=len(pairs), order=G.cached_order)


PROJECTIVE = {"psl2": psl2, "pgl2": pgl2, "psigmal2": psigmal2, "pgammal2": pgammal2}


def projective_family(tag: str, q: int) -> PermutationGroup:
    if tag == "m10":
        if q != 9:
            raise InputError("m10 requires q = 9")
        return m10()
    if tag not in PROJECTIVE:
        raise InputError(f"unknown projective family {tag!r}")
    return PROJECTIVE[tag](q)


def pairs_action(tag: str, q: int) -> PermutationGroup:
    G = induced_on_pairs(projective_family(tag, q))
    G.name = f"{tag}({q})/pairs"
    return G
