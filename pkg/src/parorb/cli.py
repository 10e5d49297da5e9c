"""Command-line driver: ``parorb {pic,cover,mackey,push,finite,example-s3}``.

Exit status is 0 when every check passes, 1 when a check fails and 2 on
malformed input.  ``--json`` prints a deterministic machine-readable report.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .covers import coarse_genus, deck_action_on_points, galois_closure_genus, local_stabilizers
from .errors import (ConsistencyError, IncompatibleEnrichment, InputError, NotGenerating, NotNormal, NotAnAction,
                     NotWellDefined, OrderBound, OrderViolation, ParorbError, ProductNotOne, RelationViolation,
                     SearchExhausted, UnsupportedGenus, OrbifoldMismatch, DenominatorMismatch, ClosureMismatch)
from .finitegroup import DEFAULT_MAX_ORDER
from .io import field, load_json, parse_character, parse_cover, parse_group, parse_int, parse_orbifold
from .orbifold import pic_zero_torsion, picard_group, quotient_by_f
from .parabolic import (ParabolicLineBundle, degree_drop_weights, eigenvalue_weights, find_finite_relation,
                        frac_str, line_bundle_data, par_degree, pushforward, rh_realize, tannakian_weights)
from .reptheory import character, direct_sum, induce, inner_product, mackey_decompose, tensor
from .worked_example import Check, class_str, run_s3_example

# errors caused by the input rather than by a failed verification
INPUT_ERRORS = (InputError, ProductNotOne, OrderViolation, NotGenerating, NotNormal, NotAnAction, NotWellDefined,
                OrderBound, RelationViolation, IncompatibleEnrichment, UnsupportedGenus, OrbifoldMismatch,
                DenominatorMismatch, ClosureMismatch)


class Report:
    def __init__(self, command: str, inputs):
        self.command = command
        self.inputs = inputs
        self.results: dict = {}
        self.checks: list[Check] = []

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), str(detail)))
        return passed

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"command": self.command, "inputs": self.inputs, "results": self.results,
                "checks": [c.to_json() for c in self.checks]}

    def render_json(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False)

    def render_text(self) -> str:
        lines = [f"== {self.command}"]
        for key in sorted(self.results):
            lines.append(f"{key}: {json.dumps(self.results[key], sort_keys=True)}")
        lines.append("checks:")
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name}" + (f": {c.detail}" if c.detail else ""))
        return "\n".join(lines)


def _qs(v: Fraction):
    return frac_str(v)


# commands ----------------------------------------------------------------------
def cmd_pic(data, args) -> Report:
    orb = parse_orbifold(data["orbifold"], "orbifold") if "orbifold" in data else parse_orbifold(data, "")
    torsion = list(args.torsion or []) + [parse_int(n, "torsion") for n in data.get("torsion", [])]
    rep = Report("pic", {"orbifold": orb.to_json(), "torsion": sorted(set(torsion))})
    pic = picard_group(orb)
    quo = quotient_by_f(pic)
    rep.results["pic"] = {"invariant_factors": list(pic.group.invariant_factors), "free_rank": pic.group.free_rank,
                          "describe": pic.group.describe()}
    rep.results["pic_mod_f"] = {"invariant_factors": list(quo.invariant_factors), "describe": quo.describe()}
    expected = sorted(r for r in orb.orders if r > 1)
    got = sorted(quo.invariant_factors)
    # compare as abstract groups: both sides reduce to the same elementary divisors
    rep.check("exact_sequence_quotient", _elementary(got) == _elementary(expected),
              f"Pic/<f> = {quo.describe()}, prod Z/r_i with r_i = {expected}")
    rep.check("pic_rank_one", pic.group.free_rank == 1, pic.group.describe())
    tors = {}
    for n in sorted(set(torsion)):
        T, inc = pic_zero_torsion(orb, n, pic)
        gens = [class_str(pic, inc(T.snf_generator(k))) for k in range(len(T.moduli))]
        tors[str(n)] = {"group": T.describe(), "invariant_factors": list(T.invariant_factors), "generators": gens}
        rep.check(f"torsion_{n}_killed_by_{n}", all(d == 0 or n % d == 0 for d in T.invariant_factors), T.describe())
    rep.results["pic0_torsion"] = tors
    return rep


def _elementary(factors) -> list[tuple[int, int]]:
    out = []
    for d in factors:
        p = 2
        while d > 1:
            if d % p == 0:
                e = 1
                d //= p
                while d % p == 0:
                    d //= p
                    e += 1
                out.append((p, e))
            p += 1
    return sorted(out)


def cmd_cover(data, args) -> Report:
    cover = parse_cover(data, "", args.max_order)
    geo = cover.geometry
    rep = Report("cover", data)
    G = cover.group
    rep.results["group_order"] = G.n
    rep.results["degree"] = cover.degree
    rep.results["genus_upstairs"] = geo.genus_upstairs
    rep.results["galois_closure_genus"] = galois_closure_genus(cover.monodromy)
    rep.results["upstairs"] = [{"label": p.label, "over": cover.base.labels[p.base_index], "ell": p.ell, "s": p.s}
                               for p in geo.points]
    rep.results["local_stabilizers"] = local_stabilizers(cover)
    rep.check("product_one", G.product(cover.monodromy.tuple) == 0)
    rep.check("riemann_hurwitz", coarse_genus(cover) == geo.genus_upstairs, f"genus {geo.genus_upstairs}")
    rep.check("fibres_complete", all(sum(p.ell for p in geo.points if p.base_index == i) == cover.degree
                                     for i in range(len(cover.base.points))))
    if cover.H.is_normal():
        deck = deck_action_on_points(cover)
        rep.results["deck_group_order"] = deck.group.n
        rep.results["deck_on_points"] = [list(p) for p in deck.on_points]
        rep.check("deck_group_order_is_degree", deck.group.n == cover.degree)
    return rep


def cmd_mackey(data, args) -> Report:
    G = parse_group(field(data, "group", ""), "group", args.max_order)
    c1 = parse_character(G, field(data, "rep1", ""), "rep1")
    c2 = parse_character(G, field(data, "rep2", ""), "rep2")
    rep = Report("mackey", data)
    summands = mackey_decompose(G, c1.subgroup, c1, c2.subgroup, c2)
    rep.results["summands"] = [
        {"double_coset_rep": s.rep, "H": list(s.subgroup.small_generators), "order": s.subgroup.order,
         "index": s.index, "chi": {str(g): _qs(s.chi(g)) for g in s.subgroup.small_generators}}
        for s in summands]
    R1, R2 = induce(G, c1.subgroup, c1), induce(G, c2.subgroup, c2)
    T = tensor(R1, R2)
    S = direct_sum([induce(G, s.subgroup, s.chi) for s in summands])
    rep.results["dimension"] = T.dim
    rep.check("dimension_count", sum(s.index for s in summands) == R1.dim * R2.dim,
              f"{sum(s.index for s in summands)} = {R1.dim} * {R2.dim}")
    rep.check("character_identity", character(T) == character(S), "tensor of inductions vs sum of summands")
    return rep


def cmd_push(data, args) -> Report:
    cover = parse_cover(field(data, "cover", ""), "cover", args.max_order)
    up = cover.geometry.upstairs
    pic = picard_group(up)
    spec = field(data, "class", "", dict)
    d = parse_int(spec.get("f", 0), "class.f")
    coeffs = spec.get("N", {})
    if not isinstance(coeffs, dict):
        raise InputError("class.N: expected an object label -> coefficient")
    for lbl in coeffs:
        if lbl not in up.labels:
            raise InputError(f"class.N: unknown upstairs point {lbl!r}; known {list(up.labels)}")
    a = [parse_int(coeffs.get(lbl, 0), f"class.N.{lbl}") for lbl in up.labels]
    L = ParabolicLineBundle(pic, pic.make_class(d, a))
    rep = Report("push", data)
    rep.results["upstairs"] = up.to_json()
    rep.results["line_bundle"] = {"class": class_str(pic, L.pic_class), **line_bundle_data(L).to_json()}
    E = pushforward(cover, L)
    rep.results["pushforward"] = E.to_json()
    rep.results["parabolic_degree"] = _qs(par_degree(E))
    rep.check("dual_path_weights", eigenvalue_weights(cover, L) == degree_drop_weights(cover, L) == E.weights,
              "orbit eigenvalues = degree drops")
    rep.check("parabolic_degree_preserved", par_degree(E) == par_degree(line_bundle_data(L)),
              f"{_qs(par_degree(E))}")
    rep.check("rank_is_degree", E.rank == cover.degree, str(E.rank))
    return rep


def cmd_finite(data, args) -> Report:
    G = parse_group(field(data, "group", ""), "group", args.max_order)
    reps = field(data, "rep", "", (dict, list))
    reps = reps if isinstance(reps, list) else [reps]
    parts = [parse_character(G, r, f"rep[{i}]") for i, r in enumerate(reps)]
    R = direct_sum([induce(G, c.subgroup, c) for c in parts])
    rep = Report("finite", {**data, "max_power": args.max_power})
    rep.results["dimension"] = R.dim
    rep.results["self_inner_product"] = inner_product(R.character, R.character)
    try:
        rel = find_finite_relation(R, args.max_power)
    except SearchExhausted as exc:
        rep.results["closure"] = exc.closure.to_json() if exc.closure else None
        rep.check("relation_found", False, str(exc))
        return rep
    rep.results["relation"] = rel.to_json()
    rep.check("relation_found", True, str(rel))
    rep.check("closure_bounded", len(rel.closure) <= len(G.conjugacy_classes),
              f"{len(rel.closure)} <= {len(G.conjugacy_classes)} irreducibles")
    if "cover" in data:
        cover = parse_cover(data["cover"], "cover", args.max_order)
        if cover.group.n != G.n:
            raise InputError("cover.group must be the same group as group")
        R2 = direct_sum([induce(cover.group, c.subgroup, c) for c in
                         (parse_character(cover.group, r, f"rep[{i}]") for i, r in enumerate(reps))])
        E = rh_realize(cover, R2)
        rep.results["bundle"] = E.to_json()
        rep.check("dual_path_weights", tannakian_weights(cover, R2) == E.weights)
        rep.check("parabolic_degree_0", par_degree(E) == 0)
    return rep


def cmd_example_s3(data, args) -> Report:
    res = run_s3_example(args.max_power)
    rep = Report("example-s3", {"max_power": args.max_power})
    rep.results = res.results
    rep.checks = res.checks
    return rep


COMMANDS = {"pic": cmd_pic, "cover": cmd_cover, "mackey": cmd_mackey, "push": cmd_push, "finite": cmd_finite,
            "example-s3": cmd_example_s3}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="parorb", description="Finite parabolic bundles on orbifold lines.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", nargs="?", help="JSON input file")
    common.add_argument("--input", help="inline JSON input")
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER, help="cap on group orders")
    common.add_argument("--max-power", type=int, default=6, help="tensor power bound for relation search")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "pic":
            sp.add_argument("--torsion", type=int, action="append", help="report Pic^0[n] (repeatable)")
    return p


def _read_input(args):
    if args.command == "example-s3":
        return {}
    if args.input is not None and args.file is not None:
        raise InputError("give either a file or --input, not both")
    if args.input is not None:
        data = load_json(args.input, "--input")
    elif args.file is not None:
        try:
            text = Path(args.file).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc.strerror}") from exc
        data = load_json(text, args.file)
    else:
        raise InputError("no input: pass a JSON file or --input")
    if not isinstance(data, dict):
        raise InputError("<root>: expected a JSON object")
    return data


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        data = _read_input(args)
        report = COMMANDS[args.command](data, args)
    except INPUT_ERRORS as exc:
        print(f"parorb {args.command}: input error: {exc}", file=sys.stderr)
        return 2
    except (ConsistencyError, ParorbError) as exc:
        report = Report(args.command, None)
        report.check("internal_consistency", False, f"{type(exc).__name__}: {exc}")
    print(report.render_json() if args.json else report.render_text())
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
