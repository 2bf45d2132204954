"""Assemble the full measurement report for one set file.

A report is a pure function of the set file and the run options: no wall
clock, no environment, no thread count leaks into the payload (timings
exist but are opt-in and excluded from verification).  Sections that
blow a cap are replaced by an ``{"error": ...}`` marker and the run exits
with code 3; failed size hypotheses or bound violations exit with 2.
"""

from __future__ import annotations

import csv
import time
from fractions import Fraction

from .config import RunOptions
from .cosets import (
    dyadic_pieces,
    heis_flags,
    heis_profile,
    t2_flags,
    t2_profile,
)
from .errors import CapExceeded
from .exact import (
    fraction_json,
    heis_energy_bound,
    heis_product_prediction,
    t2_energy_bound,
    t2_product_prediction,
)
from .groups import T2, GroupSet, SubgroupTag
from .growth import (
    coset_count_check,
    covering_check,
    intersection_power_check,
    orbit_stabilizer_check,
    product_set,
    quotient_set,
    rep_function,
    tripling_lemma_check,
)
from .incidence import bridge_report
from .setfiles import SetFile
from .structure import structure_scan, sum_product_scan

REPORT_SCHEMA = "matgrowth.report.v1"

EXIT_OK = 0
EXIT_FLAGS = 2
EXIT_CAPS = 3
EXIT_VERIFY = 4


def _fibermax_json(fm) -> dict:
    return {"value": fm.value, "witness": list(fm.witness)}


def _bound_json(b) -> dict:
    return {
        "holds": b.holds,
        "constant": fraction_json(b.constant),
        "lhs": b.lhs,
        "display_ratio": b.display_ratio,
    }


def _lemma_json(part) -> dict:
    out = {"name": part.name, "holds": part.holds, "lhs": part.lhs, "rhs": part.rhs}
    if part.note:
        out["note"] = part.note
    return out


def _collinear_json(cs) -> dict:
    return {
        "count": cs.count,
        "total_weight": cs.total_weight,
        "max_distinct": cs.max_distinct,
        "max_weight": cs.max_weight,
        "witness": [list(row) for row in cs.witness] if cs.witness else None,
    }


def _class_json(cr) -> dict:
    return {
        "key": list(cr.key),
        "pair_count": cr.pair_count,
        "quadruples": cr.quadruples,
        "incidences": cr.incidences,
        "match": cr.match,
        "points": _collinear_json(cr.point_stats),
        "planes": _collinear_json(cr.plane_stats),
        "bound": _bound_json(cr.bound),
        "points_within_field_square": cr.points_within_field_square,
        "planes_within_field_square": cr.planes_within_field_square,
    }


def _bridge_json(br) -> dict:
    return {
        "class_count": br.class_count,
        "total_pairs": br.total_pairs,
        "total_quadruples": br.total_quadruples,
        "total_incidences": br.total_incidences,
        "energy": br.energy,
        "matches_energy": br.matches_energy,
        "classes": [_class_json(c) for c in br.classes],
    }


def _certificate_json(c) -> dict:
    out = {"name": c.name, "holds": c.holds}
    if c.detail:
        out["detail"] = c.detail
    return out


def _structure_json(sr) -> dict:
    out = {
        "verdict": sr.verdict,
        "symmetrized": sr.symmetrized,
        "working_size": sr.working_size,
        "tripling": fraction_json(sr.tripling),
        "ratio_class_count": sr.ratio_class_count,
        "threshold": fraction_json(sr.threshold),
    }
    if sr.overlap is not None:
        out["overlap"] = sr.overlap
        out["overlap_ratio"] = fraction_json(sr.overlap_ratio)
    if sr.certificates:
        out["subfield_degree"] = sr.subfield_degree
        out["subfield_size"] = sr.subfield_size
        out["corner_count"] = sr.corner_count
        out["span_size"] = sr.span_size
        out["reach_power"] = sr.reach_power
        out["certificates"] = [_certificate_json(c) for c in sr.certificates]
        out["failed"] = list(sr.failed)
    return out


def _sum_product_json(sp) -> dict:
    return {
        "corner_count": sp.corner_count,
        "ratio_class_count": sp.ratio_class_count,
        "dilate_count": sp.dilate_count,
        "sum_count": sp.sum_count,
        "expansion": fraction_json(sp.expansion),
        "subfield_size": sp.subfield_size,
        "span_size": sp.span_size,
        "dichotomy_low_expansion": sp.dichotomy_low_expansion,
        "dichotomy_spanning": sp.dichotomy_spanning,
        "dichotomy_holds": sp.dichotomy_holds,
        "containment_steps": sp.containment_steps,
    }


def default_subgroup(group: str) -> SubgroupTag:
    return SubgroupTag("scaled_unipotent") if group == T2 else SubgroupTag("center")


def run_report(sf: SetFile, opts: RunOptions | None = None) -> tuple[dict, int]:
    """Full report for a set file.  Returns (report, exit_code)."""
    opts = opts or RunOptions()
    A = sf.elements
    spec = A.spec
    group = A.group
    n = len(A)
    cap = opts.caps.max_pair_products

    report: dict = {
        "schema": REPORT_SCHEMA,
        "set": {
            "group": group,
            "field": spec.to_json(),
            "size": n,
            "elements_sha256": sf.elements_digest,
            "generator": sf.generator,
        },
        "options": opts.to_json(),
    }
    issues: list[str] = []
    capped = False
    timings: dict[str, float] = {}

    def section(name, fn):
        nonlocal capped
        t0 = time.perf_counter()
        try:
            report[name] = fn()
        except CapExceeded as exc:
            report[name] = {"error": str(exc)}
            capped = True
        if opts.timings:
            timings[name] = round(time.perf_counter() - t0, 6)

    state: dict = {}

    def growth_section():
        inv_counts = rep_function(A, A, "inverse_left")
        plain_counts = rep_function(A, A, "plain")
        e = sum(v * v for v in inv_counts.values())
        estar = sum(v * v for v in plain_counts.values())
        square = GroupSet(group, spec, plain_counts.keys(), _checked=True)
        cube = product_set(square, A, cap=cap)
        state.update(energy=e, square_size=len(square), quotient_size=len(inv_counts))
        lemma = tripling_lemma_check(A, k=opts.lemma_k, cap=cap)
        if not (e * len(inv_counts) >= n**4 and estar * len(square) >= n**4):
            issues.append("cauchy_schwarz")
        if not lemma.all_hold:
            issues.append("lemma_checks")
        return {
            "size": n,
            "square_size": len(square),
            "cube_size": len(cube),
            "quotient_size": len(inv_counts),
            "iterated_sizes": dict(sorted(lemma.sizes.items())),
            "tripling": fraction_json(Fraction(len(cube), n)),
            "energy": e,
            "product_energy": estar,
            "cauchy_schwarz_quotient": e * len(inv_counts) >= n**4,
            "cauchy_schwarz_product": estar * len(square) >= n**4,
            "product_energy_dominated": estar <= e,
            "lemma_checks": [_lemma_json(p) for p in lemma.parts],
        }

    def subgroup_section():
        tag = opts.subgroup or default_subgroup(group)
        if not tag.is_subgroup(spec):
            return {"error": f"{tag!r} is not closed under the product"}
        quot = quotient_set(A, cap=cap)
        counts = {}
        for name, B in (("set", A), ("quotient", quot), ("subgroup", tag.elements(spec))):
            holds, bound, size = coset_count_check(B, tag)
            counts[name] = {"holds": holds, "bound": bound, "size": size}
            if not holds:
                issues.append(f"coset_count[{name}]")
        ih, power_size, window = intersection_power_check(
            A, tag, opts.intersection_k, cap=cap
        )
        if not ih:
            issues.append("intersection_power")
        slab = GroupSet(
            group, spec, (w for w in quot.wires if tag.member(spec, w)), _checked=True
        )
        orbit = {}
        for name, B in (("set", A), ("subgroup_slice", slab)):
            if len(B) == 0:
                orbit[name] = {"skipped": "empty sample"}
                continue
            oh, prod, obound = orbit_stabilizer_check(A, B, tag, cap=cap)
            orbit[name] = {"holds": oh, "product_size": prod, "bound": obound}
            if not oh:
                issues.append(f"orbit_stabilizer[{name}]")
        out = {
            "tag": tag.to_json(),
            "normal": tag.is_normal,
            "coset_counts": counts,
            "orbit_stabilizer": orbit,
            "intersection_power": {
                "k": opts.intersection_k,
                "holds": ih,
                "power_size": power_size,
                "window_size": window,
            },
        }
        if tag.is_normal:
            holds, translates = covering_check(A, tag, cap=cap)
            out["covering"] = {"holds": holds, "translates": translates}
            if not holds:
                issues.append("covering")
        else:
            out["covering"] = {"skipped": "subgroup is not normal"}
        return out

    def profile_section():
        if group == T2:
            prof = t2_profile(A)
            flags = t2_flags(A, prof)
            state["profile"] = prof
            state["hypothesis_pass"] = flags.whole_set
            if not flags.whole_set:
                issues.append("flag_whole_set")
            if not flags.per_piece:
                issues.append("flag_per_piece")
            return {
                "m3": _fibermax_json(prof.m3),
                "m2": _fibermax_json(prof.m2),
                "m1": _fibermax_json(prof.m1),
                "flags": {"whole_set": flags.whole_set, "per_piece": flags.per_piece},
            }
        prof = heis_profile(A)
        flags = heis_flags(A, prof)
        state["profile"] = prof
        state["hypothesis_pass"] = flags.whole_set and flags.square_shape
        if not flags.whole_set:
            issues.append("flag_whole_set")
        if not flags.square_shape:
            issues.append("flag_square_shape")
        return {
            "base_max": _fibermax_json(prof.base_max),
            "line_max": _fibermax_json(prof.line_max),
            "flags": {"whole_set": flags.whole_set, "square_shape": flags.square_shape},
        }

    def dyadic_section():
        p2 = spec.p * spec.p
        pieces = []
        for pc in dyadic_pieces(A):
            pieces.append(
                {
                    "band": pc.j,
                    "coset_count": pc.coset_count,
                    "element_count": pc.element_count,
                    "fiber_max": pc.fiber_max,
                    "coset_keys": [list(k) for k in pc.keys],
                    "within_band_budget": pc.element_count * pc.fiber_max
                    <= (1 << pc.j) * p2,
                }
            )
        return pieces

    def bounds_section():
        e = state["energy"]
        prof = state["profile"]
        if group == T2:
            eb = t2_energy_bound(e, n, prof.m1.value, prof.m2.value, opts.energy_constant)
            pp = t2_product_prediction(
                state["quotient_size"], n, prof.m1.value, prof.m2.value, eb.constant
            )
        else:
            eb = heis_energy_bound(
                e, n, prof.base_max.value, prof.line_max.value, opts.energy_constant
            )
            pp = heis_product_prediction(
                state["quotient_size"], n, prof.base_max.value, prof.line_max.value, eb.constant
            )
        if not eb.holds:
            issues.append("energy_bound")
        if not pp.holds:
            issues.append("product_prediction")
        return {
            "constant_source": "pinned" if opts.energy_constant is not None else "fitted",
            "verdict": "applicable" if state.get("hypothesis_pass") else "informational",
            "energy_bound": _bound_json(eb),
            "product_prediction": _bound_json(pp),
        }

    def bridge_section():
        if opts.bridge == "off":
            return {"skipped": "disabled"}
        if opts.bridge == "auto" and n > opts.bridge_threshold:
            return {"skipped": f"set larger than threshold {opts.bridge_threshold}"}
        br = bridge_report(A, opts.incidence_constant)
        if not br.matches_energy:
            issues.append("bridge_mismatch")
        return _bridge_json(br)

    def structure_section():
        if not opts.structure:
            return {"skipped": "disabled"}
        if group != T2:
            return {"skipped": "structure scan applies to T2 sets"}
        sr = structure_scan(A, opts.structure_opts)
        out = _structure_json(sr)
        out["sum_product"] = _sum_product_json(sum_product_scan(A, opts.structure_opts))
        return out

    section("growth", growth_section)
    section("subgroup", subgroup_section)
    section("profile", profile_section)
    if group == T2:
        section("dyadic", dyadic_section)
    if "profile" in state and "energy" in state:
        section("bounds", bounds_section)
    else:
        report["bounds"] = {"error": "prerequisite section failed"}
    section("bridge", bridge_section)
    section("structure", structure_section)

    code = EXIT_CAPS if capped else (EXIT_FLAGS if issues else EXIT_OK)
    report["status"] = {"exit_code": code, "issues": sorted(set(issues))}
    if opts.timings:
        report["timings"] = timings
    return report, code


# -- flat projection -----------------------------------------------------------

def flatten_report(report: dict, prefix: str = "") -> list[tuple[str, str]]:
    """Dotted-path scalar rows; fractions collapse to num/den strings."""
    rows: list[tuple[str, str]] = []
    if isinstance(report, dict):
        keys = set(report.keys())
        if keys == {"num", "den"}:
            rows.append((prefix, f"{report['num']}/{report['den']}"))
            return rows
        for key in sorted(report):
            path = f"{prefix}.{key}" if prefix else str(key)
            rows.extend(flatten_report(report[key], path))
    elif isinstance(report, list):
        for i, item in enumerate(report):
            rows.extend(flatten_report(item, f"{prefix}[{i}]"))
    elif report is None:
        rows.append((prefix, ""))
    else:
        rows.append((prefix, str(report)))
    return rows


def write_csv(path, report: dict) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["key", "value"])
        writer.writerows(flatten_report(report))
