"""Command line front end: gen / report / incidence / structure / verify."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .config import RunOptions, StructureOptions
from .errors import MatGrowthError
from .ffield import FieldSpec, _prime_power, standard_field
from .groups import SubgroupTag, element
from .incidence import bridge_report, probe_instance, random_instance
from .jsonio import digest, read_json, write_json
from .reports import (
    EXIT_OK,
    EXIT_VERIFY,
    _bound_json,
    _bridge_json,
    _structure_json,
    _sum_product_json,
    run_report,
    write_csv,
)
from .setfiles import build_setfile, load_setfile, regenerate, save_setfile
from .structure import structure_scan, sum_product_scan


def parse_field(qtext: str, modulus: str | None) -> FieldSpec:
    q = int(qtext)
    if modulus is None:
        return standard_field(q)
    p, r = _prime_power(q)
    coeffs = tuple(int(c) for c in modulus.split(","))
    return FieldSpec(p, r, coeffs)


def parse_tag(text: str) -> SubgroupTag:
    kind, _, param = text.partition(":")
    if kind in ("torus", "scaled_torus"):
        return SubgroupTag(kind, x=int(param))
    if kind in ("line", "line_center"):
        a, b = param.split(",")
        return SubgroupTag(kind, direction=(int(a), int(b)))
    return SubgroupTag(kind)


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def parse_triple(text: str) -> tuple[int, int, int]:
    parts = [int(x) for x in text.split(",")]
    if len(parts) != 3:
        raise MatGrowthError(f"expected three comma-separated integers, got {text!r}")
    return (parts[0], parts[1], parts[2])


def cmd_gen(args) -> int:
    spec = parse_field(args.field, args.modulus)
    gen: dict = {"kind": args.kind}
    if args.kind == "random":
        if args.size is None or args.seed is None:
            raise MatGrowthError("random generation needs --size and --seed")
        gen.update(size=args.size, seed=args.seed)
    elif args.kind == "subgroup":
        if not args.tag:
            raise MatGrowthError("subgroup generation needs --tag")
        gen.update(tag=parse_tag(args.tag).to_json())
    elif args.kind == "coset":
        if not (args.tag and args.rep):
            raise MatGrowthError("coset generation needs --tag and --rep")
        gen.update(tag=parse_tag(args.tag).to_json(), rep=list(parse_triple(args.rep)))
    elif args.kind == "box":
        if args.n is None:
            raise MatGrowthError("box generation needs --n")
        gen.update(n=args.n)
    elif args.kind == "perturbed_coset":
        if not (args.tag and args.rep and args.swaps is not None and args.seed is not None):
            raise MatGrowthError(
                "perturbed_coset generation needs --tag, --rep, --swaps and --seed"
            )
        gen.update(
            tag=parse_tag(args.tag).to_json(),
            rep=list(parse_triple(args.rep)),
            swaps=args.swaps,
            seed=args.seed,
        )
    else:
        raise MatGrowthError(f"unknown generation kind {args.kind!r}")
    sf = build_setfile(args.group, spec, gen)
    save_setfile(args.out, sf)
    print(f"wrote {args.out}: {args.group} over F_{spec.q}, {len(sf.elements)} elements")
    return EXIT_OK


def build_options(args) -> RunOptions:
    kwargs: dict = {}
    if getattr(args, "lemma_k", None) is not None:
        kwargs["lemma_k"] = args.lemma_k
    if getattr(args, "intersection_k", None) is not None:
        kwargs["intersection_k"] = args.intersection_k
    if getattr(args, "bridge", None) is not None:
        kwargs["bridge"] = args.bridge
    if getattr(args, "structure", False):
        kwargs["structure"] = True
    if getattr(args, "subgroup", None):
        kwargs["subgroup"] = parse_tag(args.subgroup)
    if getattr(args, "energy_constant", None) is not None:
        kwargs["energy_constant"] = args.energy_constant
    if getattr(args, "timings", False):
        kwargs["timings"] = True
    if getattr(args, "threads", None) is not None:
        kwargs["threads"] = args.threads
    return RunOptions(**kwargs)


def cmd_report(args) -> int:
    sf = load_setfile(args.setfile)
    opts = build_options(args)
    rep, code = run_report(sf, opts)
    write_json(args.out, rep)
    if args.csv:
        write_csv(args.csv, rep)
    g = rep.get("growth", {})
    print(
        f"{args.setfile}: size={g.get('size')} energy={g.get('energy')}"
        f" square={g.get('square_size')} exit={code}"
    )
    for issue in rep["status"]["issues"]:
        print(f"  issue: {issue}")
    return code


def cmd_incidence(args) -> int:
    if args.set:
        sf = load_setfile(args.set)
        br = bridge_report(sf.elements, args.constant)
        payload = {
            "schema": "matgrowth.incidence.v1",
            "set": {
                "group": sf.group,
                "field": sf.spec.to_json(),
                "size": len(sf.elements),
            },
            "bridge": _bridge_json(br),
        }
        write_json(args.out, payload)
        print(
            f"{args.set}: classes={br.class_count}"
            f" quadruples={br.total_quadruples} energy={br.energy}"
            f" match={br.matches_energy}"
        )
        return EXIT_OK if br.matches_energy else 2
    if args.points is None or args.planes is None or args.seed is None:
        raise MatGrowthError("probe mode needs --points, --planes and --seed")
    spec = parse_field(args.field, args.modulus)
    inst = random_instance(spec, args.points, args.planes, args.seed)
    probe = probe_instance(inst, args.constant)
    payload = {
        "schema": "matgrowth.incidence.v1",
        "probe": {
            "field": spec.to_json(),
            "seed": args.seed,
            "point_count": probe.point_count,
            "plane_count": probe.plane_count,
            "incidences": probe.incidences,
            "max_collinear": probe.max_collinear,
            "bound": _bound_json(probe.bound),
            "points_within_field_square": probe.points_within_field_square,
            "planes_within_field_square": probe.planes_within_field_square,
        },
    }
    write_json(args.out, payload)
    print(
        f"probe over F_{spec.q}: incidences={probe.incidences}"
        f" max_collinear={probe.max_collinear}"
        f" ratio={probe.bound.display_ratio:.4f}"
    )
    return EXIT_OK if probe.bound.holds else 2


def cmd_structure(args) -> int:
    sf = load_setfile(args.setfile)
    opts = StructureOptions(
        potent_exponent=args.exponent,
        potent_floor=args.floor,
        reach_budget=args.budget,
    )
    sr = structure_scan(sf.elements, opts)
    payload = {
        "schema": "matgrowth.structure.v1",
        "set": {
            "group": sf.group,
            "field": sf.spec.to_json(),
            "size": len(sf.elements),
        },
        "scan": _structure_json(sr),
        "sum_product": _sum_product_json(sum_product_scan(sf.elements, opts)),
    }
    write_json(args.out, payload)
    print(f"{args.setfile}: verdict={sr.verdict}" + (
        f" failed={','.join(sr.failed)}" if sr.failed else ""
    ))
    return EXIT_OK


def _lookup(report, path: str):
    cur = report
    for part in path.split("."):
        cur = cur[int(part)] if isinstance(cur, list) else cur[part]
    return cur


def cmd_verify(args) -> int:
    corpus = Path(args.corpus)
    manifest = read_json(args.manifest or corpus / "manifest.json")
    expected = read_json(args.expected or corpus / "expected.json")
    any_failed = False
    for entry in manifest["sets"]:
        name = entry["name"]
        problems: list[str] = []
        try:
            sf = load_setfile(corpus / entry["file"])
            exp = expected.get(name)
            if exp is None:
                problems.append("no expected record")
            else:
                regen = regenerate(sf)
                if regen is not None and regen.wires != sf.elements.wires:
                    problems.append("regeneration drifted from stored elements")
                if sf.elements_digest != exp["elements_sha256"]:
                    problems.append("elements digest mismatch")
                opts = RunOptions.from_json(entry.get("options", {}))
                rep, code = run_report(sf, opts)
                if digest(rep) != exp["report_sha256"]:
                    problems.append("report digest mismatch")
                if code != exp.get("exit_code", 0):
                    problems.append(f"exit code {code} != {exp.get('exit_code', 0)}")
                for path, want in sorted(exp.get("values", {}).items()):
                    try:
                        got = _lookup(rep, path)
                    except (KeyError, IndexError, TypeError):
                        got = "<missing>"
                    if got != want:
                        problems.append(f"{path}: {got!r} != {want!r}")
        except MatGrowthError as exc:
            problems.append(str(exc))
        status = "FAIL" if problems else "ok"
        print(f"[{status}] {name}" + (": " + "; ".join(problems) if problems else ""))
        any_failed = any_failed or bool(problems)
    return EXIT_VERIFY if any_failed else EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matgrowth",
        description="growth, coset profiles and incidence counts for matrix group subsets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a set file")
    g.add_argument("--group", choices=("T2", "H"), required=True)
    g.add_argument("--field", required=True, help="field size q (prime power)")
    g.add_argument("--modulus", help="comma-separated modulus coefficients, low degree first")
    g.add_argument(
        "--kind",
        required=True,
        choices=("random", "subgroup", "coset", "box", "perturbed_coset"),
    )
    g.add_argument("--size", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--tag", help="subgroup tag, e.g. scaled_unipotent or torus:3")
    g.add_argument("--rep", help="coset representative a,b,c")
    g.add_argument("--n", type=int, help="box side")
    g.add_argument("--swaps", type=int)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("report", help="run the full measurement report")
    r.add_argument("setfile")
    r.add_argument("--out", required=True)
    r.add_argument("--csv")
    r.add_argument("--lemma-k", dest="lemma_k", type=int)
    r.add_argument("--intersection-k", dest="intersection_k", type=int)
    r.add_argument("--bridge", choices=("on", "off", "auto"))
    r.add_argument("--structure", action="store_true")
    r.add_argument("--subgroup", help="override the profiled subgroup tag")
    r.add_argument("--energy-constant", dest="energy_constant", type=parse_fraction)
    r.add_argument("--timings", action="store_true")
    r.add_argument("--threads", type=int, help="accepted for interface parity; kernels are sequential")
    r.set_defaults(func=cmd_report)

    i = sub.add_parser("incidence", help="bridge a set file or probe a random instance")
    i.add_argument("--set", help="set file to bridge")
    i.add_argument("--field", help="field size for probe mode")
    i.add_argument("--modulus")
    i.add_argument("--points", type=int)
    i.add_argument("--planes", type=int)
    i.add_argument("--seed", type=int)
    i.add_argument("--constant", type=parse_fraction)
    i.add_argument("--out", required=True)
    i.set_defaults(func=cmd_incidence)

    s = sub.add_parser("structure", help="potent/unipotent structure scan")
    s.add_argument("setfile")
    s.add_argument("--exponent", type=int, default=10)
    s.add_argument("--floor", type=int, default=1)
    s.add_argument("--budget", type=int, default=12)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_structure)

    v = sub.add_parser("verify", help="check a corpus against its pinned expectations")
    v.add_argument("corpus")
    v.add_argument("--manifest")
    v.add_argument("--expected")
    v.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MatGrowthError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
