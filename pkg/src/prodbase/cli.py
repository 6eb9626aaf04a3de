"""Command-line interface.

Every subcommand prints a short text report, or with --json a document of
the form {"group", "results", "methods", "elapsed_ms"}.  Exit status is 0 on
success, 2 when a budget is exhausted and 1 for bad input or a failed
internal cross-check.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources

from . import __version__
from .base import (base_probability, base_size_exact, reg_L_m, regular_orbit_count,
                   regular_suborbits_double_coset)
from .constructions.groupfile import canonical_document
from .constructions.product import DEFAULT_POINT_BUDGET, product_type_subgroup, wreath_product_action
from .constructions.specstr import build, build_action
from .distinguishing import count_tm, distinguishing_number
from .errors import BudgetExhausted, ConsistencyError, InputError, ProdbaseError
from .perm import PermutationGroup
from .product import (analyze_wreath, r_wreath, regular_suborbit_count_L, structural_checks,
                      sufficient_base2_general, unique_regular_suborbit_test)
from .saxl import check_star_star_double_coset, saxl_dot, saxl_summary

DEFAULT_MAX_ORDER = 10**7


class Budget:
    def __init__(self, max_order: int, max_points: int):
        self.max_order = max_order
        self.max_points = max_points

    def group(self, spec: str) -> PermutationGroup:
        return build(spec, self.max_points).group

    def require_order(self, G: PermutationGroup, what: str) -> None:
        if G.order() > self.max_order:
            raise BudgetExhausted(f"{what} needs |G| <= {self.max_order}, got {G.order()}")


def _socle(L: PermutationGroup) -> PermutationGroup:
    """The last term of the derived series (the socle for the almost simple fixtures)."""
    K = L
    while True:
        D = K.derived_subgroup()
        if D.order() == K.order():
            return K
        K = D


# -- command implementations: each returns (results, methods) -------------------

def cmd_construct(args, budget):
    G = budget.group(args.group)
    doc = canonical_document(G)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, separators=(",", ":"))
            fh.write("\n")
    return {"degree": G.degree, "order": G.order(), "generators": doc["generators"]}, \
        {"order": "schreier-sims"}


def cmd_info(args, budget):
    G = budget.group(args.group)
    transitive = G.is_transitive()
    res = {"degree": G.degree, "order": G.order(), "transitive": transitive,
           "orbits": len(G.orbit_sizes()),
           "primitive": G.is_primitive() if transitive else False}
    return res, {"order": "schreier-sims", "primitive": "minimal-block"}


def cmd_base_size(args, budget):
    G = budget.group(args.group)
    r = base_size_exact(G, depth_cap=args.depth_cap)
    return {"b": r.b, "witness": list(r.witness), "nodes": r.nodes}, {"b": r.method}


def cmd_regular(args, budget):
    G = budget.group(args.group)
    H = G.point_stabilizer(0)
    reg = regular_orbit_count(H)
    res = {"r": reg.count, "stabilizer_order": reg.stabilizer_order, "representatives": reg.orbit_reps}
    methods = {"r": "stabilizer-orbits"}
    if args.double_coset:
        budget.require_order(G, "double-coset enumeration")
        res["r_double_coset"] = regular_suborbits_double_coset(G)
        methods["r_double_coset"] = "double-cosets"
        if res["r_double_coset"] != reg.count:
            raise ConsistencyError("double-coset count disagrees with the orbit count")
    if args.socle:
        T = _socle(G)
        res["socle_order"] = T.order()
        res["r_socle"] = regular_orbit_count(T.point_stabilizer(0)).count
        methods["r_socle"] = "stabilizer-orbits"
    return res, methods


def cmd_reg(args, budget):
    G = budget.group(args.group)
    res = {"m": args.m, "reg": reg_L_m(G, args.m)}
    methods = {"reg": "orbit-tree"}
    if args.probability:
        pe = base_probability(G, args.m)
        res["p_exact"] = str(pe.p_exact)
        res["q_hat"] = None if pe.q_hat is None else str(pe.q_hat)
        res["bound_holds"] = pe.bound_holds
        methods["q_hat"] = "prime-order-classes"
    return res, methods


def cmd_dist(args, budget):
    P = budget.group(args.group)
    budget.require_order(P, "distinguishing search")
    D = distinguishing_number(P)
    tm = count_tm(P, D)
    return {"D": D, "t_D": tm.t}, {"D": "partition-search", "t_D": tm.method}


def cmd_tm(args, budget):
    P = budget.group(args.group)
    budget.require_order(P, "distinguishing search")
    tm = count_tm(P, args.m)
    res = {"m": args.m, "t": tm.t}
    if tm.ordered is not None:
        res["ordered_colorings"] = tm.ordered
    return res, {"t": tm.method, "ordered_colorings": "coloring-enumeration"}


def cmd_wreath_predict(args, budget):
    L, P = build_action(args.L), build_action(args.P)
    a = analyze_wreath(L, P, m_max=args.m_max, direct=args.direct, max_points=budget.max_points)
    unique, reason = unique_regular_suborbit_test(a.rL, P)
    res = {"r(L)": a.rL, "b(L)": a.bL, "reg(L,m)": {str(m): v for m, v in a.regL.items()},
           "D(P)": a.D, "t_m": {str(m): v for m, v in a.tm.items()},
           "predicted_b": a.predicted_b, "r_wreath": a.r_wreath,
           "unique_regular_suborbit": unique, "unique_reason": reason}
    methods = {"predicted_b": "reg-vs-distinguishing", "r_wreath": "regular-suborbit-formula"}
    if args.direct:
        res["direct_b"], res["direct_r"] = a.direct_b, a.direct_r
        methods["direct_b"] = "exact-search"
        if a.direct_b is not None and a.direct_b != a.predicted_b:
            raise ConsistencyError("predicted base size differs from the direct computation")
    return res, methods


def cmd_wreath_verify(args, budget):
    L, P = build_action(args.L), build_action(args.P)
    rL = regular_suborbit_count_L(L)
    formula = r_wreath(rL, P)
    W = wreath_product_action(L, P, budget.max_points)
    brute = regular_orbit_count(W.stabilizer()).count
    verdict = "MATCH" if formula == brute else "MISMATCH"
    res = {"degree": W.degree, "r(L)": rL, "formula_r": formula, "brute_r": brute, "verdict": verdict}
    if formula != brute:
        raise ConsistencyError(f"formula r={formula} but orbit count r={brute}")
    return res, {"formula_r": "regular-suborbit-formula", "brute_r": "stabilizer-orbits"}


def parse_extra(text: str, L: PermutationGroup, T: PermutationGroup, k: int):
    """'a,a,1' -> coordinates drawn from L's generators outside T (lettered a, b, ...)."""
    outer = [g for g in L.gen_arrays if not T.contains(g)]
    coords = [c.strip() for c in text.split(",")]
    if len(coords) != k:
        raise InputError(f"--extra {text!r} needs {k} coordinates")
    zs = []
    for c in coords:
        if c == "1":
            zs.append(None)
            continue
        if len(c) != 1 or not c.isalpha() or ord(c) - ord("a") >= len(outer):
            raise InputError(f"unknown outer generator {c!r}; L has {len(outer)}")
        zs.append(outer[ord(c) - ord("a")])
    return zs, None


def cmd_prodtype(args, budget):
    L, P = build_action(args.L), build_action(args.P)
    T = build_action(args.T) if args.T else _socle(L)
    extra = [parse_extra(e, L, T, P.degree) for e in (args.extra or [])]
    W = product_type_subgroup(L, T, P, extra, budget.max_points)
    res = {"degree": W.degree, "order": W.order(), "|L:T|": L.order() // T.order(),
           "tau": W.tau, "quotient_order": W.quotient_order}
    methods = {"order": "socle-times-quotient", "tau": "quotient-closure"}
    cert = sufficient_base2_general(W)
    res["sufficient_base2"] = {"verdict": cert.verdict, "m": cert.m_used,
                               "witness": list(cert.witness) if cert.witness else None,
                               "conditions": cert.conditions}
    methods["sufficient_base2"] = "constructed-witness"
    if not args.no_base_size:
        b = base_size_exact(W.ambient)
        res["b"], res["witness"] = b.b, list(b.witness)
        methods["b"] = b.method
        if args.checks:
            res["checks"] = [{"name": c.name, "applicable": c.applicable, "holds": c.holds,
                              "detail": c.detail} for c in structural_checks(W, b.b)]
    return res, methods


def cmd_saxl(args, budget):
    G = budget.group(args.group)
    rep = saxl_summary(G, diameter=args.diameter, stars=args.stars)
    res = {"valency": rep.valency, "r": rep.r, "h_order": rep.h_order, "eulerian": rep.eulerian,
           "diameter": rep.diameter, "star": rep.star, "star_star": rep.star_star}
    methods = {"valency": "regular-suborbits", "diameter": "bfs", "star_star": "neighbourhood-images"}
    if args.double_coset:
        budget.require_order(G, "double-coset enumeration")
        res["star_star_double_coset"] = check_star_star_double_coset(G, budget.max_order)
        methods["star_star_double_coset"] = "double-cosets"
        if rep.star_star is not None and rep.star_star != res["star_star_double_coset"]:
            raise ConsistencyError("the two (**) procedures disagree")
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(saxl_dot(G))
    return res, methods


# -- fixtures -----------------------------------------------------------------

def load_fixtures() -> list[dict]:
    text = resources.files("prodbase").joinpath("data/fixtures.json").read_text()
    return json.loads(text)["fixtures"]


def run_fixture(row: dict, budget: Budget) -> tuple[bool, dict]:
    kind, a = row["kind"], row["args"]
    ns = argparse.Namespace(**{**FIXTURE_DEFAULTS.get(kind, {}), **a})
    got, _ = COMMANDS[kind](ns, budget)
    expect = row["expect"]
    ok = all(got.get(key) == val for key, val in expect.items())
    return ok, {key: got.get(key) for key in expect}


FIXTURE_DEFAULTS = {
    "regular": {"double_coset": False, "socle": False},
    "reg": {"probability": False},
    "wreath-predict": {"m_max": 6, "direct": False},
    "prodtype": {"T": None, "extra": [], "no_base_size": False, "checks": False},
    "saxl": {"diameter": False, "stars": False, "double_coset": False, "dot": None},
    "base-size": {"depth_cap": None},
}


def cmd_verify_fixtures(args, budget):
    rows = load_fixtures()
    if args.only:
        rows = [r for r in rows if args.only in r["name"]]
    report = []
    for row in rows:
        t0 = time.perf_counter()
        try:
            ok, got = run_fixture(row, budget)
        except ProdbaseError as exc:
            ok, got = False, {"error": str(exc)}
        report.append({"name": row["name"], "pass": ok, "got": got,
                       "elapsed_ms": round(1000 * (time.perf_counter() - t0))})
        if not args.json:
            print(f"{'PASS' if ok else 'FAIL'}  {row['name']}  {got}")
    passed = sum(r["pass"] for r in report)
    res = {"passed": passed, "total": len(report), "rows": report}
    if passed != len(report):
        raise _FixtureFailure(res)
    return res, {"rows": "fixture-manifest"}


class _FixtureFailure(Exception):
    def __init__(self, results):
        self.results = results


COMMANDS = {
    "construct": cmd_construct,
    "info": cmd_info,
    "base-size": cmd_base_size,
    "regular": cmd_regular,
    "reg": cmd_reg,
    "dist": cmd_dist,
    "tm": cmd_tm,
    "wreath-predict": cmd_wreath_predict,
    "wreath-verify": cmd_wreath_verify,
    "prodtype": cmd_prodtype,
    "saxl": cmd_saxl,
    "verify-fixtures": cmd_verify_fixtures,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER,
                        help="largest group order for element enumeration")
    common.add_argument("--max-points", type=int, default=DEFAULT_POINT_BUDGET,
                        help="largest product-action degree to materialize")
    common.add_argument("--threads", type=int, default=1,
                        help="worker cap (computations currently run on one thread)")

    p = argparse.ArgumentParser(prog="prodbase", description="Bases of permutation groups in product action.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    s = add("construct", "build a group and print its generators")
    s.add_argument("--group", required=True)
    s.add_argument("--out", help="write a generator file")
    s = add("info", "degree, order, transitivity, primitivity")
    s.add_argument("--group", required=True)
    s = add("base-size", "minimal base size with a witness")
    s.add_argument("--group", required=True)
    s.add_argument("--depth-cap", type=int)
    s = add("regular", "number of regular suborbits r(G)")
    s.add_argument("--group", required=True)
    s.add_argument("--socle", action="store_true", help="also report r(T) for the socle")
    s.add_argument("--double-coset", action="store_true", help="cross-check by double cosets")
    s = add("reg", "regular orbits of G on m-tuples")
    s.add_argument("--group", required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--probability", action="store_true", help="exact base probability and its bound")
    s = add("dist", "distinguishing number and t_D")
    s.add_argument("--group", required=True)
    s = add("tm", "distinguishing partitions with m parts")
    s.add_argument("--group", required=True)
    s.add_argument("--m", type=int, required=True)
    s = add("wreath-predict", "base size and r of L wr P from data on L and P")
    s.add_argument("--L", required=True)
    s.add_argument("--P", required=True)
    s.add_argument("--m-max", type=int, default=6)
    s.add_argument("--direct", action="store_true", help="also compute on the explicit action")
    s = add("wreath-verify", "regular-suborbit formula against an orbit count")
    s.add_argument("--L", required=True)
    s.add_argument("--P", required=True)
    s = add("prodtype", "product-type group <T^k, P, extras>")
    s.add_argument("--L", required=True)
    s.add_argument("--P", required=True)
    s.add_argument("--T", help="socle factor (default: last term of the derived series of L)")
    s.add_argument("--extra", action="append",
                   help="coordinates like a,a,1; letters name L's generators outside T")
    s.add_argument("--no-base-size", action="store_true")
    s.add_argument("--checks", action="store_true", help="run the structural implication checks")
    s = add("saxl", "Saxl graph diagnostics")
    s.add_argument("--group", required=True)
    s.add_argument("--diameter", action="store_true")
    s.add_argument("--stars", action="store_true", help="test (*) and (**)")
    s.add_argument("--double-coset", action="store_true", help="(**) by the double-coset procedure")
    s.add_argument("--dot", help="write the graph in DOT format")
    s = add("verify-fixtures", "run the bundled reproduction manifest")
    s.add_argument("--only", help="substring filter on fixture names")
    return p


def _descriptor(args) -> str:
    if getattr(args, "group", None):
        return args.group
    if getattr(args, "L", None):
        extra = "".join(f" +({e})" for e in (getattr(args, "extra", None) or []))
        return f"{args.L} | {args.P}{extra}"
    return args.command


def _print_text(results: dict, indent: str = "") -> None:
    for key, val in results.items():
        if isinstance(val, dict):
            print(f"{indent}{key}:")
            _print_text(val, indent + "  ")
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            print(f"{indent}{key}:")
            for item in val:
                print(f"{indent}  - " + ", ".join(f"{k}={v}" for k, v in item.items()))
        else:
            print(f"{indent}{key}: {val}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    budget = Budget(args.max_order, args.max_points)
    t0 = time.perf_counter()
    code = 0
    try:
        results, methods = COMMANDS[args.command](args, budget)
    except _FixtureFailure as exc:
        results, methods, code = exc.results, {"rows": "fixture-manifest"}, 1
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"consistency check failed: {exc}", file=sys.stderr)
        return 1
    except (InputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    elapsed = round(1000 * (time.perf_counter() - t0))
    if args.json:
        doc = {"group": _descriptor(args), "results": results, "methods": methods, "elapsed_ms": elapsed}
        print(json.dumps(doc, default=str))
    elif args.command != "verify-fixtures":
        print(f"group: {_descriptor(args)}")
        _print_text(results)
        print(f"elapsed_ms: {elapsed}")
    else:
        print(f"{results['passed']}/{results['total']} fixtures passed ({elapsed} ms)")
    return code


if __name__ == "__main__":
    sys.exit(main())
