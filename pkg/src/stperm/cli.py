"""``stperm`` command line: analyze, eqperf, survey, spectrum.

Exit codes: 0 success, 2 input error, 3 theorem-consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .catalog import catalog, catalog_dir, catalog_names, group_label, load_group_file
from .errors import ResourceLimitError, RouteMismatchError, StpermError
from .formats import REPORT_SCHEMA, compact_json, load_complex, profile_document, subgroup_json
from .gf import MAX_PRIME, PrimeField, is_prime
from .groups import (
    FiniteGroup,
    conjugacy_classes_of_p_subgroups,
    DEFAULT_ORDER_LIMIT,
    iso_type,
    is_p_power,
    order_limit,
    p_subgroups,
    prime_power,
)
from .gsets import (
    brauer_quotient_map,
    compose,
    coset_gset,
    disjoint_union,
    random_equivariant_map,
    tensor_map,
)
from .sections import (
    bottleneck_subgroups,
    decomposability_verdict,
    section_census,
    section_graph,
    surrounding_section,
)
from .spectrum import emit_dot, puncture, skeleton, skeleton_document
from .stable import support_profile

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INCONSISTENT = 3


class InconsistencyError(StpermError):
    pass


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _warn(text: str) -> None:
    sys.stderr.write(f"stperm: warning: {text}\n")


def resolve_group_arg(name: str) -> FiniteGroup:
    path = Path(name)
    if name.endswith(".json") and path.is_file():
        return load_group_file(path)
    return catalog(name)


def check_prime(p: int, G: Optional[FiniteGroup] = None) -> None:
    if not is_prime(p) or p > MAX_PRIME:
        raise StpermError(f"--prime must be a prime <= {MAX_PRIME}, got {p}")
    if G is not None and G.order % p:
        _warn(f"{p} does not divide |G| = {G.order}; every complex is perfect (Maschke)")


# ---------------------------------------------------------------------------
# self-check


def self_check(G: FiniteGroup, p: int, pairs: int = 5, seed: int = 0) -> list[str]:
    """Cross-route verdict plus a short functoriality and monoidality run."""
    problems: list[str] = []
    v = decomposability_verdict(G, p, strict=False)
    if not v.consistent:
        problems.append(f"route A predicts {v.route_a_count} components, route B finds {v.route_b_count}")
    F = PrimeField(p)
    rng = np.random.default_rng(seed)
    subs = p_subgroups(G, p)
    orbit_types = [H for H in subs][:4] + [G.whole]
    for _ in range(pairs):
        X, Y, Z = (
            disjoint_union([coset_gset(G, orbit_types[int(i)]) for i in rng.integers(len(orbit_types), size=2)])
            for _ in range(3)
        )
        f = random_equivariant_map(X, Y, F, rng)
        g = random_equivariant_map(Y, Z, F, rng)
        H = subs[int(rng.integers(len(subs)))]
        lhs = brauer_quotient_map(compose(g, f), H).matrix
        rhs = compose(brauer_quotient_map(g, H), brauer_quotient_map(f, H)).matrix
        if not np.array_equal(lhs, rhs):
            problems.append("modular fixed points fail to preserve composition")
        t = brauer_quotient_map(tensor_map(f, g), H).matrix
        u = tensor_map(brauer_quotient_map(f, H), brauer_quotient_map(g, H)).matrix
        if not np.array_equal(t, u):
            problems.append("modular fixed points fail to preserve tensor products")
    return problems


def _run_self_check(G: FiniteGroup, p: int) -> None:
    problems = self_check(G, p)
    if problems:
        raise InconsistencyError("self-check failed: " + "; ".join(problems))


# ---------------------------------------------------------------------------
# analyze


def analysis_document(G: FiniteGroup, p: int) -> dict:
    verdict = decomposability_verdict(G, p, strict=False)
    classes = conjugacy_classes_of_p_subgroups(G, p)
    P = verdict.sylow
    bottleneck = None
    if P.order > 1:
        subs = bottleneck_subgroups(P)
        bottleneck = {
            "holds": bool(subs),
            "subgroups": [list(H.elements) for H in subs],
        }
    sk = skeleton(G, p)
    sk_doc = skeleton_document(sk)
    notes = list(verdict.notes)
    if not verdict.consistent:
        notes.append("INCONSISTENT: route A and route B disagree")
    return {
        "schema": REPORT_SCHEMA,
        "command": "analyze",
        "group": {"name": G.name, "label": group_label(G), "order": G.order},
        "prime": p,
        "sylow": subgroup_json(P),
        "classes": [
            {"index": k, "representative": list(c[0].elements), "order": c[0].order, "class_size": len(c)}
            for k, c in enumerate(classes)
        ],
        "sections": {
            "nontrivial": len(section_graph(G, p).nodes),
            "by_rank": {str(r): n for r, n in section_census(G, p).items()},
        },
        "bottleneck": bottleneck,
        "verdict": {
            "kind": verdict.kind,
            "n": verdict.n,
            "label": verdict.label,
            "components": verdict.route_b_count,
            "route_a": verdict.route_a_count,
            "route_b": verdict.route_b_count,
            "consistent": verdict.consistent,
            "factors": verdict.factors,
            "tower": [list(H.elements) for H in verdict.tower],
        },
        "skeleton": {"strata": sk_doc["strata"], "punctured_components": sk_doc["components"]},
        "notes": notes,
    }


def analysis_text(doc: dict) -> str:
    g, v = doc["group"], doc["verdict"]
    lines = [
        f"group: {g['label']} (order {g['order']}), p = {doc['prime']}",
        f"Sylow: order {doc['sylow']['order']}, type {doc['sylow']['type']}",
        f"conjugacy classes of p-subgroups: {len(doc['classes'])}",
    ]
    for c in doc["classes"]:
        lines.append(f"  H{c['index']}: order {c['order']}, class size {c['class_size']}, {c['representative']}")
    by_rank = ", ".join(f"rank {r}: {n}" for r, n in doc["sections"]["by_rank"].items())
    lines.append(f"nontrivial sections: {doc['sections']['nontrivial']} ({by_rank})")
    if doc["bottleneck"] is not None:
        b = doc["bottleneck"]
        lines.append(f"bottleneck subgroup in Sylow: {'yes' if b['holds'] else 'no'}")
    lines.append(f"verdict: {v['label']}, components {v['components']} (route A {v['route_a']}, route B {v['route_b']})")
    if v["factors"]:
        lines.append("factors: " + " x ".join(v["factors"]))
    lines.append("strata:")
    for s in doc["skeleton"]["strata"]:
        lines.append(
            f"  {s['closed_point']}: W = {s['weyl_group']} (order {s['weyl_order']}), p-rank {s['p_rank']}, {s['size']}"
        )
    for c in doc["skeleton"]["punctured_components"]:
        lines.append(f"punctured component {c['id']}: strata {c['strata']}, {c['survivors']}")
    for n in doc["notes"]:
        lines.append(f"note: {n}")
    return "\n".join(lines) + "\n"


def section_graph_dot(G: FiniteGroup, p: int) -> str:
    graph = section_graph(G, p)
    lines = [f'graph "sections {group_label(G)} p={p}" {{', '  node [shape=box, fontname="Helvetica"];']
    for c, members in enumerate(graph.components):
        lines.append(f"  subgraph cluster_{c} {{")
        lines.append(f'    label="component {c}";')
        for i in members:
            s = graph.nodes[i]
            lines.append(f'    s{i} [label="H={list(s.H.elements)}\\nK={list(s.K.elements)}"];')
        lines.append("  }")
    for a, b, _ in graph.edges:
        lines.append(f"  s{min(a, b)} -- s{max(a, b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    G = resolve_group_arg(args.group)
    check_prime(args.prime, G)
    if args.self_check:
        _run_self_check(G, args.prime)
    doc = analysis_document(G, args.prime)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(compact_json(doc))
        (out / "sections.dot").write_text(section_graph_dot(G, args.prime))
        (out / "spectrum.dot").write_text(emit_dot(skeleton(G, args.prime), title=group_label(G)))
    if args.emit == "json":
        _out(compact_json(doc))
    elif args.emit == "dot":
        _out(section_graph_dot(G, args.prime))
    else:
        _out(analysis_text(doc))
    if not doc["verdict"]["consistent"]:
        v = doc["verdict"]
        sys.stderr.write(
            f"stperm: error: verdict routes disagree (route A {v['route_a']}, route B {v['route_b']})\n"
        )
        return EXIT_INCONSISTENT
    return EXIT_OK


# ---------------------------------------------------------------------------
# eqperf


def cmd_eqperf(args) -> int:
    C = load_complex(args.file)
    if args.self_check:
        _run_self_check(C.group, C.field.p)
    prof = support_profile(C)
    doc = profile_document(C, prof)
    if args.emit == "json":
        _out(compact_json(doc))
        return EXIT_OK
    lines = [f"group: {doc['group']}, p = {doc['prime']}, degrees {doc['degrees']}"]
    for row in doc["profile"]:
        lines.append(f"  H = {row['subgroup']} (order {row['order']}): {row['status']}")
    lines.append(f"acyclic: {str(doc['acyclic']).lower()}")
    lines.append(f"perfect: {str(doc['perfect']).lower()}")
    lines.append(f"eq-perf: {str(doc['eq_perf']).lower()}")
    _out("\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------
# survey


def survey_rows(p: int, max_order: int) -> list[dict]:
    rows = []
    for name in catalog_names():
        G = catalog(name)
        if G.order > max_order or G.order == 1 or not is_p_power(G.order, p):
            continue
        t = iso_type(G)
        special = t.kind in ("cyclic", "generalized_quaternion")
        if G.order >= p * p:
            holds = bool(bottleneck_subgroups(G))
            bottleneck_ok = holds == special
        else:
            holds, bottleneck_ok = False, True
        coverage = "n/a"
        coverage_ok = True
        if not special and G.order >= p * p:
            misses = [
                H for H in p_subgroups(G, p)
                if 1 < H.order < G.order and surrounding_section(G, H) is None
            ]
            coverage = "complete" if not misses else f"missing {len(misses)}"
            coverage_ok = not misses
        verdict = decomposability_verdict(G, p, strict=False)
        ok = bottleneck_ok and coverage_ok and verdict.consistent
        rows.append(
            {
                "group": name,
                "order": G.order,
                "type": str(t),
                "bottleneck": holds,
                "surrounding_sections": coverage,
                "verdict": verdict.label,
                "components": verdict.route_b_count,
                "status": "PASS" if ok else "FAIL",
            }
        )
    return rows


def cmd_survey(args) -> int:
    check_prime(args.prime)
    # an explicit --max-order is taken as permission to enumerate that far
    with order_limit(max(args.max_order, DEFAULT_ORDER_LIMIT)):
        rows = survey_rows(args.prime, args.max_order)
    if args.emit == "json":
        _out(json.dumps({"schema": REPORT_SCHEMA, "command": "survey", "prime": args.prime,
                         "max_order": args.max_order, "rows": rows}, indent=2))
    else:
        header = f"{'group':<20} {'order':>5}  {'type':<28} {'bottleneck':<10} {'sections':<12} {'verdict':<22} status"
        lines = [header]
        for r in rows:
            lines.append(
                f"{r['group']:<20} {r['order']:>5}  {r['type']:<28} {str(r['bottleneck']).lower():<10} "
                f"{r['surrounding_sections']:<12} {r['verdict']:<22} {r['status']}"
            )
        _out("\n".join(lines))
    return EXIT_INCONSISTENT if any(r["status"] == "FAIL" for r in rows) else EXIT_OK


# ---------------------------------------------------------------------------
# spectrum


def cmd_spectrum(args) -> int:
    G = resolve_group_arg(args.group)
    check_prime(args.prime, G)
    if args.self_check:
        _run_self_check(G, args.prime)
    sk = skeleton(G, args.prime)
    if args.emit == "dot":
        _out(emit_dot(sk, title=group_label(G)))
    elif args.emit == "json":
        _out(compact_json(skeleton_document(sk)))
    else:
        P = puncture(sk)
        lines = [f"group: {group_label(G)}, p = {args.prime}, closed points: {sk.closed_point_count}"]
        for s in sk.strata:
            lines.append(f"  {s.closed_label} H={list(s.representative)}: W = {s.weyl_label}, {s.descriptor}")
        for c in range(len(P.components)):
            lines.append(f"punctured component {c}: {P.summary(c)}")
        _out("\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stperm", description="Invariants of stable permutation categories.")
    parser.add_argument("--version", action="version", version=f"stperm {__version__}")
    parser.add_argument("--self-check", action="store_true", help="run cross-route and functoriality checks first")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full report for a group and prime")
    a.add_argument("group", help="catalog name or path to a group JSON file")
    a.add_argument("--prime", "-p", type=int, required=True)
    a.add_argument("--emit", choices=("text", "json", "dot"), default="text")
    a.add_argument("--out", help="directory for report.json, sections.dot and spectrum.dot")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("eqperf", help="support profile of a complex document")
    e.add_argument("file")
    e.add_argument("--emit", choices=("text", "json"), default="text")
    e.set_defaults(func=cmd_eqperf)

    s = sub.add_parser("survey", help="bottleneck survey over catalog p-groups")
    s.add_argument("--prime", "-p", type=int, required=True)
    s.add_argument("--max-order", type=int, default=32)
    s.add_argument("--emit", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_survey)

    sp = sub.add_parser("spectrum", help="stratification skeleton or finite spectrum")
    sp.add_argument("group")
    sp.add_argument("--prime", "-p", type=int, required=True)
    sp.add_argument("--emit", choices=("text", "json", "dot"), default="text")
    sp.set_defaults(func=cmd_spectrum)

    for p in (a, e, s, sp):
        p.add_argument("--self-check", action="store_true", default=argparse.SUPPRESS)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (RouteMismatchError, InconsistencyError) as exc:
        sys.stderr.write(f"stperm: error: {exc}\n")
        return EXIT_INCONSISTENT
    except (StpermError, ResourceLimitError) as exc:
        sys.stderr.write(f"stperm: error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
