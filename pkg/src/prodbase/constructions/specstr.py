"""Parse group spec strings used by the command line.

Grammar (whitespace ignored)::

    spec     := "wr:" action "|" action        product action of a wreath product
              | "iwr:" action "|" action       imprimitive action on k copies
              | action
    action   := family [ "/" modifier ] [ "@" degree ]
    family   := s:n | a:n | c:n | d:n | agl:d:p | agammal1:q | hol8 | o4m2
              | psl2:q | pgl2:q | psigmal2:q | pgammal2:q | m10 | file:<path>
    modifier := pairs | cosets:<recipe>
    recipe   := N(C<n>) | N(V4) | stab{a,b,...} | pt

``@degree`` picks an alternative transitive action from a fixed table when
it differs from the natural degree (for example ``a:5@6``).
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import InputError
from ..perm import PermutationGroup
from . import families as fam
from .cosets import coset_action
from .groupfile import load_group_file
from .product import DEFAULT_POINT_BUDGET, ProductTypeGroup, wreath_product_action
from .subgroups import parse_subgroup

ALTERNATIVE_ACTIONS = {
    ("a:5", 6): "cosets:N(C5)",
    ("a:5", 10): "cosets:N(C3)",
    ("s:5", 6): "cosets:N(C5)",
    ("s:5", 10): "cosets:stab{0,1}",
}


@dataclass
class BuiltGroup:
    spec: str
    group: PermutationGroup
    product: ProductTypeGroup | None = None

    @property
    def degree(self) -> int:
        return self.group.degree


def _ints(parts: list[str], count: int, spec: str) -> list[int]:
    if len(parts) != count:
        raise InputError(f"malformed spec {spec!r}")
    try:
        return [int(x) for x in parts]
    except ValueError as exc:
        raise InputError(f"malformed spec {spec!r}") from exc


def build_family(text: str) -> PermutationGroup:
    if text.startswith("file:"):
        return load_group_file(text[5:])
    parts = text.split(":")
    tag, rest = parts[0], parts[1:]
    if tag in ("s", "a", "c", "d"):
        (n,) = _ints(rest, 1, text)
        return {"s": fam.symmetric, "a": fam.alternating, "c": fam.cyclic, "d": fam.dihedral}[tag](n)
    if tag == "agl":
        d, p = _ints(rest, 2, text)
        return fam.affine_gl(d, p)
    if tag == "agammal1":
        (q,) = _ints(rest, 1, text)
        return fam.affine_gamma_l1(q)
    if tag == "hol8" and not rest:
        return fam.holomorph_c8()
    if tag == "o4m2" and not rest:
        return fam.affine_o4_minus_2()
    if tag == "m10" and not rest:
        return fam.m10()
    if tag in fam.PROJECTIVE:
        (q,) = _ints(rest, 1, text)
        return fam.projective_family(tag, q)
    raise InputError(f"unknown group family {text!r}")


def build_action(text: str) -> PermutationGroup:
    text = text.strip()
    if text.startswith("file:"):
        return build_family(text)
    at = None
    if "@" in text:
        text, deg = text.rsplit("@", 1)
        at = _ints([deg], 1, deg)[0]
    family, _, modifier = text.partition("/")
    if at is not None and not modifier:
        G0 = build_family(family)
        if G0.degree != at:
            recipe = ALTERNATIVE_ACTIONS.get((family, at))
            if recipe is None:
                raise InputError(f"no tabulated action of {family} on {at} points")
            modifier = recipe
    G = build_family(family)
    if modifier == "pairs":
        G = fam.induced_on_pairs(G)
        G.name = f"{family}/pairs"
    elif modifier.startswith("cosets:"):
        recipe = modifier[len("cosets:"):]
        sub = parse_subgroup(G, recipe, socle=G.derived_subgroup() if recipe == "N(V4)" else None)
        G = coset_action(G, sub).group
        G.name = f"{family}/cosets:{recipe}"
    elif modifier:
        raise InputError(f"unknown action modifier {modifier!r}")
    if at is not None and G.degree != at:
        raise InputError(f"{text} has degree {G.degree}, not {at}")
    if G.name is None:
        G.name = family
    return G


def imprimitive_wreath(L: PermutationGroup, P: PermutationGroup) -> PermutationGroup:
    """L wr P acting on k copies of Gamma; point (i, x) is i * |Gamma| + x."""
    n, k = L.degree, P.degree
    gens = []
    for g in L.gen_arrays:
        gens.append([i * n + (int(g[x]) if i == 0 else x) for i in range(k) for x in range(n)])
    for s in P.gen_arrays:
        gens.append([int(s[i]) * n + x for i in range(k) for x in range(n)])
    return PermutationGroup(gens, degree=n * k, order=L.order() ** k * P.order(),
                            name=f"({L.name}) iwr ({P.name})")


def build(spec: str, max_points: int = DEFAULT_POINT_BUDGET) -> BuiltGroup:
    s = spec.replace(" ", "")
    if s.startswith("wr:") or s.startswith("iwr:"):
        head, _, body = s.partition(":")
        if "|" not in body:
            raise InputError(f"wreath spec needs 'L|P': {spec!r}")
        lspec, pspec = body.split("|", 1)
        L, P = build_action(lspec), build_action(pspec)
        if head == "iwr":
            return BuiltGroup(spec, imprimitive_wreath(L, P))
        W = wreath_product_action(L, P, max_points)
        W.ambient.name = s
        return BuiltGroup(spec, W.ambient, W)
    return BuiltGroup(spec, build_action(s))
