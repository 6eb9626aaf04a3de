"""Saxl graphs of base-two transitive groups.

Vertices are the points; two points are adjacent when they form a base.  The
neighbourhood of a point is the union of the regular orbits of its stabilizer,
and every other neighbourhood is an image of that one under a transversal
element, so the graph is never stored as an edge list.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .base import regular_orbit_count
from .constructions import families as fam
from .constructions.fields import field
from .errors import BudgetExhausted, ConsistencyError, InputError, NoSaxlGraph, NotTransitive
from .perm import PermutationGroup

BRUTE_FORCE_DEGREE = 1000
DOT_MAX_DEGREE = 2000
CACHE_DEGREE = 20_000


@dataclass
class SaxlReport:
    valency: int
    r: int
    h_order: int
    eulerian: bool
    diameter: int | None = None
    star: bool | None = None
    star_star: bool | None = None


class SaxlGraph:
    """Adjacency oracle for the Saxl graph of a transitive group."""

    def __init__(self, G: PermutationGroup):
        if not G.is_transitive():
            raise NotTransitive("Saxl graphs need a transitive group")
        self.G = G
        self.n = G.degree
        self.H = G.point_stabilizer(0)
        labels = self.H.orbit_labels()
        sizes = np.bincount(labels, minlength=self.n)
        self.h_order = self.H.order()
        self.suborbit_labels = labels
        self.regular_mask = sizes[labels] == self.h_order
        self.regular_reps = sorted(set(labels[self.regular_mask].tolist()))
        if not self.regular_reps:
            raise NoSaxlGraph("the point stabilizer has no regular orbit, so b(G) > 2")
        # with a trivial stabilizer {0} is itself a regular orbit; no loops
        self.neighbors0 = np.nonzero(self.regular_mask)[0]
        if self.h_order == 1:
            self.neighbors0 = self.neighbors0[self.neighbors0 != 0]
        self._build_schreier_tree()
        self._cache: dict[int, np.ndarray] | None = {} if self.n <= CACHE_DEGREE else None

    def _build_schreier_tree(self) -> None:
        # parent[y] = x and via[y] = generator index with y = g(x); -1 at the root
        n = self.n
        parent = np.full(n, -2, dtype=np.int64)
        via = np.full(n, -1, dtype=np.int64)
        parent[0] = -1
        frontier = np.array([0], dtype=np.int64)
        while frontier.size:
            new = []
            for gi, g in enumerate(self.G.gen_arrays):
                img = g[frontier].astype(np.int64)
                fresh = parent[img] == -2
                img, src = img[fresh], frontier[fresh]
                img, first = np.unique(img, return_index=True)
                parent[img] = src[first]
                via[img] = gi
                new.append(img)
            frontier = np.concatenate(new)
        self._parent, self._via = parent, via

    def element(self, v: int) -> np.ndarray:
        """An element of G mapping 0 to v."""
        v = int(v)
        if self._cache is not None and v in self._cache:
            return self._cache[v]
        gens = self.G.gen_arrays
        path = []
        x = v
        while x != 0:
            path.append(int(self._via[x]))
            x = int(self._parent[x])
        g = np.arange(self.n, dtype=np.int32)
        for gi in reversed(path):
            g = gens[gi][g]
        if self._cache is not None:
            self._cache[v] = g
        return g

    @property
    def r(self) -> int:
        return len(self.regular_reps)

    @property
    def valency(self) -> int:
        return int(self.neighbors0.size)

    def neighborhood(self, v: int) -> np.ndarray:
        g = self.element(v)
        return np.sort(g[self.neighbors0])

    def neighbor_mask(self, v: int) -> np.ndarray:
        m = np.zeros(self.n, dtype=bool)
        m[self.element(v)[self.neighbors0]] = True
        return m

    def eccentricity(self, v: int) -> int | None:
        """BFS from v; None when some vertex is unreachable."""
        dist = np.full(self.n, -1, dtype=np.int64)
        dist[v] = 0
        frontier = [int(v)]
        d = 0
        while frontier:
            d += 1
            seen = np.zeros(self.n, dtype=bool)
            for u in frontier:
                seen[self.element(u)[self.neighbors0]] = True
            new = np.nonzero(seen & (dist < 0))[0]
            dist[new] = d
            frontier = new.tolist()
        if (dist < 0).any():
            return None
        return int(dist.max())


def saxl_neighborhood(G: PermutationGroup, alpha: int = 0) -> np.ndarray:
    S = SaxlGraph(G)
    nb = S.neighborhood(alpha)
    if nb.size != S.r * S.h_order - (S.h_order == 1):
        raise ConsistencyError("neighbourhood size differs from r * |H|")
    return nb


def saxl_diameter(G: PermutationGroup, samples: int = 3, seed: int = 1) -> tuple[float, bool]:
    """(diameter, connected).  The diameter is infinite for a disconnected graph."""
    S = SaxlGraph(G)
    ecc = S.eccentricity(0)
    rng = random.Random(seed)
    for v in rng.sample(range(S.n), min(samples, S.n)):
        if S.eccentricity(v) != ecc:
            raise ConsistencyError("eccentricity depends on the start vertex")
    if ecc is None:
        return float("inf"), False
    return ecc, True


def check_star(G: PermutationGroup, graph: SaxlGraph | None = None) -> bool:
    """Every two vertices have a common neighbour."""
    S = graph or SaxlGraph(G)
    mask0 = S.regular_mask
    for v in range(S.n):
        if not mask0[S.element(v)[S.neighbors0]].any():
            return False
    return True


def check_star_star(G: PermutationGroup, graph: SaxlGraph | None = None) -> bool:
    """Every neighbourhood meets every regular orbit of every point stabilizer (point-level).

    With the stabilizer fixed at 0, this asks that for every vertex v the set
    Sigma(v) meets each regular orbit of G_0.  Vertices in one G_0-orbit give
    the same answer, so only suborbit representatives are tested unless the
    degree is small, in which case all vertices are.
    """
    S = graph or SaxlGraph(G)
    labels = S.suborbit_labels
    need = set(S.regular_reps)
    verts = range(S.n) if S.n <= BRUTE_FORCE_DEGREE else sorted(set(labels.tolist()))
    for v in verts:
        nb = S.element(v)[S.neighbors0]
        hit = set(labels[nb[S.regular_mask[nb]]].tolist())
        if not need <= hit:
            return False
    return True


def check_star_star_double_coset(G: PermutationGroup, bound: int = 10**5) -> bool:
    """The double-coset form: for every (H, H) double coset representative x and every
    representative y of a double coset of size |H|^2, some z in HyH has
    H cap H^z = 1 and H^x cap H^z = 1.  Works on group elements only."""
    E = G.elements(bound)
    index = G.element_index(bound)
    n = G.degree
    H = G.point_stabilizer(0)
    HE = H.elements()
    h_keys = {h.tobytes() for h in HE}
    hsize = HE.shape[0]
    N = E.shape[0]
    inv_idx = np.empty(N, dtype=np.int64)
    inv = np.empty_like(E)
    inv[np.arange(N)[:, None], E] = np.arange(n)
    for i in range(N):
        inv_idx[i] = index[inv[i].tobytes()]

    # double cosets H g H = {h1 g h2}; as arrays h1*g*h2 is h2[g[h1]]
    label = np.full(N, -1, dtype=np.int64)
    dcosets: list[list[int]] = []
    for i in range(N):
        if label[i] >= 0:
            continue
        left = E[i][HE]  # rows h1 * g
        block = sorted({index[h2[row].tobytes()] for row in left for h2 in HE})
        label[block] = len(dcosets)
        dcosets.append(block)
    R = [d[0] for d in dcosets]
    S = [d for d in dcosets if len(d) == hsize * hsize]

    def conj_keys(z: int) -> set[bytes]:
        # H^z = z^-1 H z; with left-to-right composition the array is z[h[zinv]]
        zi = E[inv_idx[z]]
        return {E[z][h[zi]].tobytes() for h in HE}

    ident = np.arange(n, dtype=E.dtype).tobytes()

    def trivial(a: set[bytes], b: set[bytes]) -> bool:
        return a & b == {ident}

    conj_cache: dict[int, set[bytes]] = {}

    def conj(z: int) -> set[bytes]:
        if z not in conj_cache:
            conj_cache[z] = conj_keys(z)
        return conj_cache[z]

    for x in R:
        hx = conj(x)
        for block in S:
            if not any(trivial(h_keys, conj(z)) and trivial(hx, conj(z)) for z in block):
                return False
    return True


def check_eulerian(valency: int) -> bool:
    return valency % 2 == 0


def saxl_summary(G: PermutationGroup, diameter: bool = False, stars: bool = False) -> SaxlReport:
    S = SaxlGraph(G)
    rep = SaxlReport(S.valency, S.r, S.h_order, check_eulerian(S.valency))
    if rep.valency != rep.r * rep.h_order - (rep.h_order == 1):
        raise ConsistencyError("valency differs from r * |H|")
    if diameter:
        d, _ = saxl_diameter(G)
        rep.diameter = d if d != float("inf") else None
    if stars:
        rep.star = check_star(G, S)
        rep.star_star = check_star_star(G, S)
        if rep.star_star and not rep.star:
            raise ConsistencyError("(**) holds but (*) fails")
        if rep.star and rep.diameter is not None and rep.diameter > 2:
            raise ConsistencyError("(*) holds but the diameter exceeds 2")
    return rep


def is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


def saxl_dot(G: PermutationGroup, name: str = "saxl") -> str:
    if G.degree > DOT_MAX_DEGREE:
        raise BudgetExhausted(f"DOT export limited to degree {DOT_MAX_DEGREE}")
    S = SaxlGraph(G)
    lines = [f"graph {name} {{"]
    for v in range(S.n):
        for u in S.neighborhood(v).tolist():
            if u > v:
                lines.append(f"  {v} -- {u};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- PSL2(q) on pairs of points of the projective line ----------------------------

@dataclass
class OrbitAtlas:
    q: int
    degree: int
    regular_orbits: list[tuple[str, tuple[int, int]]]  # (family label, representative pair)
    expected_count: int

    @property
    def count(self) -> int:
        return len(self.regular_orbits)


def psl2_pairs_orbit_atlas(q: int) -> OrbitAtlas:
    """Label the regular orbits of the stabilizer of {<e1>, <e2>} in PSL2(q) on pairs.

    Points of the line: 0 is <e2>, and 1 + c is <e1 + c e2>, so <e1> is 1.
    The base pair {<e1>, <e2>} is pair index 0.  Families: the pairs {<e1>, <e1+ce2>}
    and {<e2>, <e1+ce2>} (R1 and R2), which together make up two regular orbits, and
    R(s, t) = {<e1+se2>, <e1+te2>} with -s/t a non-square.
    """
    if q % 2 == 0 or not 7 <= q <= 49:
        raise InputError("the orbit atlas needs odd q with 7 <= q <= 49")
    F = field(q)
    G = fam.induced_on_pairs(fam.psl2(q))
    pairs = fam.pairs_of(q + 1)
    index = {p: i for i, p in enumerate(pairs)}
    if pairs[0] != (0, 1):
        raise ConsistencyError("pair 0 is not the base pair")
    H = G.point_stabilizer(0)
    reg = regular_orbit_count(H)
    labels = H.orbit_labels()
    nonzero = range(1, q)

    def orbit_of_label(lab):
        return {pairs[i] for i in np.nonzero(labels == lab)[0].tolist()}

    def pt(c):  # <e1 + c e2>
        return 1 + c

    # Pairs through <e1> or <e2> form two regular orbits, split by the square
    # class of c in {<e1>, <e1+ce2>}; each meets both {<e1>, .} and {<e2>, .}.
    r12 = {tuple(sorted((1, pt(c)))) for c in nonzero} | {tuple(sorted((0, pt(c)))) for c in nonzero}
    found = []
    covered = set()
    for rep in reg.orbit_reps:
        orb = orbit_of_label(rep)
        if orb & r12:
            if not orb <= r12:
                raise ConsistencyError(f"orbit through {pairs[rep]} leaves the R1/R2 pairs")
            covered |= orb
            sq = any(F.is_square(c) for c in nonzero if (1, pt(c)) in orb)
            found.append(("R1/R2 square" if sq else "R1/R2 non-square", pairs[rep]))
            continue
        a, b = pairs[rep]
        if a < 2:
            raise ConsistencyError(f"unexpected regular orbit through {pairs[rep]}")
        s, t = a - 1, b - 1
        ratio = int(F.mul[F.neg[s], F.inv[t]])
        if F.is_square(ratio):
            raise ConsistencyError("regular orbit with -s/t a square")
        expect = set()
        for lam in nonzero:
            l2 = int(F.mul[lam, lam])
            expect.add(tuple(sorted((pt(int(F.mul[l2, s])), pt(int(F.mul[l2, t]))))))
            ms = int(F.neg[F.mul[l2, F.inv[s]]])
            mt = int(F.neg[F.mul[l2, F.inv[t]]])
            expect.add(tuple(sorted((pt(ms), pt(mt)))))
        if orb != expect:
            raise ConsistencyError(f"orbit through {pairs[rep]} differs from R(s, t)")
        found.append((f"R({s},{t})", pairs[rep]))
    if covered != r12:
        raise ConsistencyError("R1 and R2 pairs are not covered by regular orbits")
    a = 7 if q % 4 == 1 else 5
    atlas = OrbitAtlas(q, len(pairs), found, (q + a) // 4)
    if atlas.count != atlas.expected_count:
        raise ConsistencyError(f"{atlas.count} regular orbits, expected {atlas.expected_count}")
    return atlas
