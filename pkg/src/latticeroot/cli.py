"""Command line interface for the lattice cohomology pipeline.

All reported modules are invariants of the orientation-reversed boundary of
the plumbing ("minus-boundary"); every report says so explicitly.

Exit codes
----------

0   success
1   unparseable or structurally malformed input: bad JSON, bad option
    value, graph with a cycle or duplicate edge, bad Seifert data
2   semantically invalid input or failed validation: form not negative
    definite, vector not characteristic, orbit not self-conjugate, no Wu
    representative, too many bad vertices, inconsistent rank profiles
3   computation budget exhausted before stabilization
4   the requested computation needs --assume-conjecture
5   ambiguous result (Wu selection or profile forcing not unique)

(argparse itself exits with status 2 on usage errors.)
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any

from . import __version__
from .errors import (
    AmbiguousForcing,
    AmbiguousWu,
    CapacityExceeded,
    ConjectureRequired,
    InvalidSeifertData,
    LatticeRootError,
    MalformedGraph,
    NotSelfConjugate,
    ParseError,
    StabilizationNotReached,
)
from .lattice import (
    WeightedLattice,
    bad_vertices_of_form,
    build_region,
    graded_root,
    hm_module,
)
from .modules import RankProfile, format_grading
from .pin2 import (
    force_second_derived,
    gysin_decompose,
    pin_invariants,
    pin_invariants_profile,
)
from .plumbing import (
    IntersectionForm,
    PlumbingGraph,
    build_intersection_form,
    graph_from_json,
    graph_to_json,
    load_graph_file,
    seifert_from_json,
    validate,
)
from .render import format_module, format_pin_module, render_ascii, render_dot
from .spinc import (
    canonical_representative,
    check_characteristic,
    enumerate_orbits,
    wu_vector,
)
from .symmetry import invariant_cube
from .tau import tau_profile

ORIENTATION = "minus-boundary"


# ---------------------------------------------------------------------------
# input helpers


def _read_json_text(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"cannot parse {what}: {exc}") from exc


def _read_json_source(path: str, what: str) -> Any:
    if path == "-":
        return _read_json_text(sys.stdin.read(), what)
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {what} {path}: {exc}") from exc
    return _read_json_text(text, what)


def _graph_from_data(data: Any) -> PlumbingGraph:
    if isinstance(data, dict) and "vertices" in data:
        return graph_from_json(data)
    if isinstance(data, dict) and "b" in data:
        return seifert_from_json(data)
    raise ParseError("JSON is neither a plumbing graph nor Seifert data")


def _load_graph(args: argparse.Namespace) -> PlumbingGraph:
    if args.seifert is not None:
        data = _read_json_text(args.seifert, "--seifert value")
        graph = seifert_from_json(data)
    elif args.input == "-":
        graph = _graph_from_data(_read_json_source("-", "graph"))
    else:
        graph = load_graph_file(args.input)
    if not graph.is_tree():
        raise MalformedGraph("plumbing graph must be a tree (connected, acyclic)")
    return graph


def _graph_meta(graph: PlumbingGraph) -> dict[str, Any]:
    return validate(graph).to_dict()


# ---------------------------------------------------------------------------
# orbit selection


def _representative_for(
    form: IntersectionForm,
    char: tuple[int, ...],
    rep_mode: str,
    budget: int | None,
    meta: dict[str, Any],
) -> tuple[int, ...]:
    if rep_mode == "canonical":
        return canonical_representative(form, char, budget=budget)
    if rep_mode == "wu":
        wu = wu_vector(form, char)
        meta["wu_support"] = list(wu.wu_set)
        return tuple(form.apply(wu.w))
    return char  # "given"


def _resolve_orbit_chars(
    form: IntersectionForm,
    args: argparse.Namespace,
    default_rep: str,
) -> list[tuple[tuple[int, ...], dict[str, Any]]]:
    """List of (characteristic vector, metadata) the command will process."""
    rep_mode = args.representative
    explicit = getattr(args, "char_vector", None)
    if explicit is not None:
        values = _read_json_text(explicit, "--char-vector value")
        if not isinstance(values, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in values
        ):
            raise ParseError("--char-vector must be a JSON list of integers")
        if len(values) != form.size:
            raise ParseError(
                f"--char-vector has {len(values)} entries, form has {form.size}"
            )
        char = tuple(values)
        check_characteristic(form, char)
        if rep_mode is None:
            rep_mode = "given"
        meta: dict[str, Any] = {"representative": rep_mode}
        char = _representative_for(form, char, rep_mode, args.budget, meta)
        meta["char_vector"] = list(char)
        return [(char, meta)]

    if rep_mode is None:
        rep_mode = default_rep
    if rep_mode == "given":
        raise ParseError("--representative given requires --char-vector")
    orbits = enumerate_orbits(form, budget=args.budget)
    selector = args.orbit
    if selector == "all":
        chosen = orbits
    elif selector in ("spin", "self-conjugate"):
        chosen = [o for o in orbits if o.self_conjugate]
        if not chosen:
            raise NotSelfConjugate("no self-conjugate orbit exists")
    else:
        try:
            index = int(selector)
        except ValueError:
            raise ParseError(
                "--orbit must be an orbit index, 'self-conjugate', or 'all'; "
                f"got {selector!r}"
            ) from None
        if not 0 <= index < len(orbits):
            raise ParseError(
                f"orbit index {index} out of range ({len(orbits)} orbits)"
            )
        chosen = [orbits[index]]

    selections = []
    for orbit in chosen:
        meta = {
            "orbit_index": orbit.orbit_index,
            "self_conjugate": orbit.self_conjugate,
            "k_square": format_grading(orbit.k_square),
            "representative": rep_mode,
        }
        char = orbit.representative  # already canonical
        if rep_mode == "wu":
            char = _representative_for(form, char, "wu", args.budget, meta)
        meta["char_vector"] = list(char)
        selections.append((char, meta))
    return selections


def _per_orbit(args: argparse.Namespace, default_rep: str):
    graph = _load_graph(args)
    form = build_intersection_form(graph)
    selections = _resolve_orbit_chars(form, args, default_rep)
    lattices = [
        (WeightedLattice(form, char, budget=args.budget), meta)
        for char, meta in selections
    ]
    return graph, lattices


def _join_text_blocks(blocks: list[tuple[dict[str, Any], str]]) -> str:
    if len(blocks) == 1:
        return blocks[0][1]
    sections = []
    for meta, text in blocks:
        label = meta.get("orbit_index", "explicit")
        sections.append(f"-- orbit {label} --\n{text}")
    return "\n\n".join(sections)


def _pick_method(args: argparse.Namespace, lattice: WeightedLattice) -> str:
    """Resolve --method auto: the fast profile path needs <= 1 bad vertex."""
    if args.method != "auto":
        return args.method
    if len(bad_vertices_of_form(lattice.form)) <= 1:
        return "profile"
    return "full"


# ---------------------------------------------------------------------------
# command handlers


def _cmd_validate(args: argparse.Namespace) -> Any:
    graph = _load_graph(args)
    report = validate(graph)
    ok = report.is_tree and report.is_negative_definite
    if args.format == "text":
        result: Any = "\n".join(
            [
                f"vertices: {report.vertex_count}",
                f"tree: {'yes' if report.is_tree else 'no'}",
                "negative definite: "
                + ("yes" if report.is_negative_definite else "no"),
                f"signature: {report.signature}",
                f"determinant: {report.determinant}",
                f"bad vertices: {list(report.bad_vertex_ids)}",
            ]
        )
    else:
        result = report.to_dict()
    return result, (0 if ok else 2)


def _cmd_seifert(args: argparse.Namespace) -> Any:
    if args.seifert is not None:
        data = _read_json_text(args.seifert, "--seifert value")
    else:
        data = _read_json_source(args.input, "Seifert data")
    graph = seifert_from_json(data)
    if args.format == "text":
        lines = [
            f"vertex {vid}: weight {weight}"
            for vid, weight in sorted(graph.vertices)
        ]
        lines.extend(f"edge {a} - {b}" for a, b in sorted(graph.edges))
        return "\n".join(lines)
    return graph_to_json(graph)


def _cmd_spinc(args: argparse.Namespace) -> Any:
    graph = _load_graph(args)
    form = build_intersection_form(graph)
    orbits = enumerate_orbits(form, budget=args.budget)
    if args.format == "text":
        lines = []
        for orbit in orbits:
            tag = " (self-conjugate)" if orbit.self_conjugate else ""
            lines.append(
                f"orbit {orbit.orbit_index}: representative "
                f"{list(orbit.representative)}, k^2 = "
                f"{format_grading(orbit.k_square)}, sigma = "
                f"{format_grading(orbit.sigma)}{tag}"
            )
        return "\n".join(lines)
    return {
        "graph": _graph_meta(graph),
        "orbit_count": len(orbits),
        "self_conjugate_count": sum(1 for o in orbits if o.self_conjugate),
        "orbits": [
            {
                "index": o.orbit_index,
                "representative": list(o.representative),
                "k_square": format_grading(o.k_square),
                "sigma": format_grading(o.sigma),
                "self_conjugate": o.self_conjugate,
            }
            for o in orbits
        ],
    }


def _cmd_hm(args: argparse.Namespace) -> Any:
    graph, lattices = _per_orbit(args, default_rep="canonical")
    json_blocks: list[dict[str, Any]] = []
    text_blocks: list[tuple[dict[str, Any], str]] = []
    for lattice, meta in lattices:
        if _pick_method(args, lattice) == "profile":
            profile = tau_profile(lattice, max_level=args.max_level)
            module = profile.hm()
            min_level, stable = profile.min_level, profile.stable_level
        else:
            region = build_region(
                lattice, q_cap=args.q_cap, max_level=args.max_level
            )
            module = hm_module(region)
            min_level, stable = region.min_level, region.stable_level
        if args.format == "text":
            text_blocks.append(
                (
                    meta,
                    "\n".join(
                        [
                            f"char vector: {meta['char_vector']}",
                            f"sigma: {format_grading(lattice.sigma)}",
                            f"levels: min {min_level}, stable {stable}",
                            "monopole module of minus-boundary: "
                            + format_module(module),
                        ]
                    ),
                )
            )
        else:
            json_blocks.append(
                {
                    **meta,
                    "sigma": format_grading(lattice.sigma),
                    "min_level": min_level,
                    "stable_level": stable,
                    "module": module.to_json(),
                    "pretty": format_module(module),
                }
            )
    if args.format == "text":
        return _join_text_blocks(text_blocks)
    return {
        "graph": _graph_meta(graph),
        "orientation": ORIENTATION,
        "orbits": json_blocks,
    }


def _cmd_root(args: argparse.Namespace) -> Any:
    graph, lattices = _per_orbit(args, default_rep="canonical")
    json_blocks: list[dict[str, Any]] = []
    text_blocks: list[tuple[dict[str, Any], str]] = []
    for lattice, meta in lattices:
        if _pick_method(args, lattice) == "profile":
            root = tau_profile(lattice, max_level=args.max_level).root
        else:
            region = build_region(
                lattice, q_cap=args.q_cap, max_level=args.max_level
            )
            root = graded_root(region)
        if args.format == "dot":
            text_blocks.append((meta, render_dot(root)))
        elif args.format == "ascii":
            text_blocks.append((meta, render_ascii(root)))
        elif args.format == "text":
            header = (
                f"char vector: {meta['char_vector']}\n"
                f"sigma: {format_grading(lattice.sigma)}\n"
                f"levels: min {root.min_level}, stable {root.stable_level}\n"
            )
            text_blocks.append((meta, header + render_ascii(root)))
        else:
            json_blocks.append({**meta, "root": root.to_json()})
    if args.format != "json":
        return _join_text_blocks(text_blocks)
    return {
        "graph": _graph_meta(graph),
        "orientation": ORIENTATION,
        "orbits": json_blocks,
    }


def _run_pin(args: argparse.Namespace, lattice: WeightedLattice):
    if _pick_method(args, lattice) == "profile":
        return pin_invariants_profile(lattice, max_level=args.max_level)
    region = build_region(lattice, q_cap=args.q_cap, max_level=args.max_level)
    return pin_invariants(region, assume_conjecture=args.assume_conjecture)


def _cmd_pin2(args: argparse.Namespace) -> Any:
    graph, lattices = _per_orbit(args, default_rep="wu")
    json_blocks: list[dict[str, Any]] = []
    text_blocks: list[tuple[dict[str, Any], str]] = []
    for lattice, meta in lattices:
        result = _run_pin(args, lattice)
        if args.format == "text":
            cor = result.correction
            lines = [
                f"char vector: {meta['char_vector']}",
                f"sigma: {format_grading(result.sigma)}",
                f"bad vertices: {result.bad_count}",
                "monopole module of minus-boundary: "
                + format_module(result.hm),
                "equivariant module of minus-boundary: "
                + format_pin_module(result.module),
                f"alpha = {format_grading(cor.alpha)}, "
                f"beta = {format_grading(cor.beta)}, "
                f"gamma = {format_grading(cor.gamma)}",
                f"delta = {format_grading(cor.delta)}, "
                f"rho = {format_grading(cor.rho)}"
                + (
                    f", mubar = {format_grading(cor.mubar)}"
                    if cor.mubar is not None
                    else ""
                ),
                "conjecture assumed: "
                + ("yes" if result.conjecture_assumed else "no"),
            ]
            text_blocks.append((meta, "\n".join(lines)))
        else:
            json_blocks.append({**meta, **result.to_json()})
    if args.format == "text":
        return _join_text_blocks(text_blocks)
    return {
        "graph": _graph_meta(graph),
        "orientation": ORIENTATION,
        "orbits": json_blocks,
    }


def _cmd_mubar(args: argparse.Namespace) -> Any:
    graph, lattices = _per_orbit(args, default_rep="wu")
    form = build_intersection_form(graph)
    one_bad = len(bad_vertices_of_form(form)) <= 1
    json_blocks: list[dict[str, Any]] = []
    text_blocks: list[tuple[dict[str, Any], str]] = []
    for lattice, meta in lattices:
        wu = wu_vector(lattice.form, lattice.char)
        payload: dict[str, Any] = {
            **meta,
            "w": list(wu.w),
            "wu_support": list(wu.wu_set),
            "w_square": wu.w_square,
            "signature": wu.signature,
            "mubar": format_grading(wu.mubar),
        }
        check_line = ""
        if one_bad:
            base, directions = invariant_cube(lattice.kappa)
            rho = 2 * lattice.cube_weight(base, directions) + lattice.sigma
            passed = rho == 2 * wu.mubar
            payload["rho"] = format_grading(rho)
            payload["rho_equals_two_mubar"] = passed
            check_line = (
                f"\nrho = {format_grading(rho)}; rho = 2*mubar check: "
                + ("passed" if passed else "FAILED")
            )
        text_blocks.append(
            (
                meta,
                f"mubar = {format_grading(wu.mubar)} "
                f"(w^2 = {wu.w_square}, signature = {wu.signature}, "
                f"support = {list(wu.wu_set)})" + check_line,
            )
        )
        json_blocks.append(payload)
    if args.format == "text":
        return _join_text_blocks(text_blocks)
    return {
        "graph": _graph_meta(graph),
        "orientation": ORIENTATION,
        "orbits": json_blocks,
    }


def _format_gysin(gysin_json: dict[str, Any]) -> str:
    """One-line decomposition, summands interleaved by ascending grading."""
    entries: list[tuple[Fraction, int, int, str]] = []
    for family, key in enumerate(("i0", "i1", "i2")):
        label = f"I{family}"
        raw = gysin_json[key]
        for grading, rank in raw["finite"]:
            text = f"{label}[{grading}]"
            if rank != 1:
                text += f" x{rank}"
            entries.append((Fraction(grading), 0, family, text))
        for tail in raw["tails"]:
            text = f"{label}[{tail['start']}+{tail['step']}n, n>=0]"
            if tail["rank"] != 1:
                text += f" x{tail['rank']}"
            entries.append((Fraction(tail["start"]), 1, family, text))
    entries.sort(key=lambda e: e[:3])
    return " + ".join(e[3] for e in entries) if entries else "0"


def _cmd_gysin(args: argparse.Namespace) -> Any:
    data = None
    if args.seifert is None:
        data = _read_json_source(args.input, "gysin input")
    if isinstance(data, dict) and "hm" in data and "a_prime" in data:
        hm = RankProfile.from_json(data["hm"])
        a_first = RankProfile.from_json(data["a_prime"])
        if "a_second" in data:
            a_second = RankProfile.from_json(data["a_second"])
            forced = False
        else:
            a_second = force_second_derived(
                hm, a_first, node_budget=args.node_budget
            )
            forced = True
        decomposition = gysin_decompose(hm, a_first, a_second)
        gysin_json = decomposition.to_json(0)
        if args.format == "text":
            return _format_gysin(gysin_json)
        return {
            "forced": forced,
            "a_second": decomposition.a_second_profile().to_json(),
            "gysin": gysin_json,
            "hs": decomposition.hs_profile().to_json(),
        }

    # graph mode: run the equivariant pipeline, report its decomposition
    if args.seifert is not None:
        graph = seifert_from_json(_read_json_text(args.seifert, "--seifert"))
    else:
        graph = _graph_from_data(data)
    form = build_intersection_form(graph)
    selections = _resolve_orbit_chars(form, args, default_rep="wu")
    json_blocks: list[dict[str, Any]] = []
    text_blocks: list[tuple[dict[str, Any], str]] = []
    for char, meta in selections:
        lattice = WeightedLattice(form, char, budget=args.budget)
        result = _run_pin(args, lattice)
        gysin_json = result.decomposition.to_json(result.sigma)
        if args.format == "text":
            text_blocks.append((meta, _format_gysin(gysin_json)))
        else:
            json_blocks.append(
                {
                    **meta,
                    "sigma": format_grading(result.sigma),
                    "gysin": gysin_json,
                    "pretty": _format_gysin(gysin_json),
                    "conjecture_assumed": result.conjecture_assumed,
                }
            )
    if args.format == "text":
        return _join_text_blocks(text_blocks)
    return {
        "graph": _graph_meta(graph),
        "orientation": ORIENTATION,
        "orbits": json_blocks,
    }


# ---------------------------------------------------------------------------
# parser


def _add_graph_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument(
        "--input",
        metavar="PATH",
        help="JSON file with a plumbing graph ({vertices, edges}) or Seifert "
        "data ({b, arms}); '-' reads standard input",
    )
    source.add_argument(
        "--seifert",
        metavar="JSON",
        help="inline Seifert data, e.g. "
        '\'{"b": 2, "arms": [[2, 1], [3, 2], [5, 4]]}\'',
    )


def _add_budget_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--budget",
        type=int,
        default=None,
        metavar="N",
        help="lattice point enumeration budget "
        "(default: LATTICEROOT_BUDGET env var or 10^8)",
    )


def _add_char_arguments(parser: argparse.ArgumentParser, default_orbit: str) -> None:
    parser.add_argument(
        "--orbit",
        default=default_orbit,
        metavar="K|self-conjugate|all",
        help="which characteristic-vector orbits to process: an index from "
        "the 'spinc' listing, 'self-conjugate' (alias 'spin'), or 'all' "
        f"(default: {default_orbit})",
    )
    parser.add_argument(
        "--representative",
        choices=("canonical", "wu", "given"),
        default=None,
        help="orbit representative to compute with: 'canonical' (maximal "
        "k^2, lex-smallest), 'wu' (pairing vector of the 0/1 Wu class; "
        "needs a self-conjugate orbit), or 'given' (the --char-vector "
        "exactly as typed)",
    )
    parser.add_argument(
        "--char-vector",
        metavar="JSON",
        default=None,
        help="explicit characteristic vector as a JSON list; bypasses orbit "
        "enumeration",
    )


def _add_scan_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--max-level",
        type=int,
        default=None,
        metavar="N",
        help="hard cap on the sublevel scan (default: adaptive)",
    )
    parser.add_argument(
        "--q-cap",
        type=int,
        default=2,
        metavar="Q",
        help="highest cohomological degree computed per slice (default: 2)",
    )


def _add_method_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--method",
        choices=("auto", "full", "profile"),
        default="auto",
        help="'full' scans sublevel sets of the whole lattice; 'profile' "
        "uses the certified single-variable fast path (at most one bad "
        "vertex); 'auto' picks 'profile' whenever it applies (default)",
    )


def _add_format_argument(
    parser: argparse.ArgumentParser, choices: tuple[str, ...] = ("json", "text")
) -> None:
    parser.add_argument(
        "--format",
        choices=choices,
        default="json",
        help="output format (default: json)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticeroot",
        description="Lattice cohomology, graded roots and equivariant "
        "correction terms of negative definite plumbed 3-manifolds "
        "(all modules reported for the orientation-reversed boundary).",
        epilog="Exit codes: 0 ok, 1 malformed input, 2 invalid input or "
        "failed validation, 3 budget exhausted, 4 needs "
        "--assume-conjecture, 5 ambiguous result.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a plumbing graph and report its form")
    _add_graph_arguments(p)
    _add_format_argument(p)
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser(
        "seifert",
        help="expand Seifert data into its star-shaped plumbing graph",
    )
    _add_graph_arguments(p)
    _add_format_argument(p)
    p.set_defaults(handler=_cmd_seifert)

    p = sub.add_parser("spinc", help="list characteristic-vector orbits")
    _add_graph_arguments(p)
    _add_budget_argument(p)
    _add_format_argument(p)
    p.set_defaults(handler=_cmd_spinc)

    p = sub.add_parser(
        "hm", help="monopole module of the minus-boundary, per orbit"
    )
    _add_graph_arguments(p)
    _add_budget_argument(p)
    _add_char_arguments(p, default_orbit="all")
    _add_scan_arguments(p)
    _add_method_argument(p)
    _add_format_argument(p)
    p.set_defaults(handler=_cmd_hm)

    p = sub.add_parser("root", help="graded root of the sublevel filtration")
    _add_graph_arguments(p)
    _add_budget_argument(p)
    _add_char_arguments(p, default_orbit="all")
    _add_scan_arguments(p)
    _add_method_argument(p)
    _add_format_argument(p, choices=("json", "text", "dot", "ascii"))
    p.set_defaults(handler=_cmd_root)

    p = sub.add_parser(
        "pin2",
        help="three-tower equivariant module and correction terms "
        "(alpha, beta, gamma, delta, rho, mubar)",
    )
    _add_graph_arguments(p)
    _add_budget_argument(p)
    _add_char_arguments(p, default_orbit="self-conjugate")
    _add_scan_arguments(p)
    _add_method_argument(p)
    p.add_argument(
        "--assume-conjecture",
        action="store_true",
        help="with two bad vertices and odd-degree classes, force the "
        "second derived profile from the reconstruction constraints "
        "instead of refusing",
    )
    _add_format_argument(p)
    p.set_defaults(handler=_cmd_pin2)

    p = sub.add_parser(
        "mubar",
        help="Wu vector, its mubar invariant, and the rho = 2*mubar check",
    )
    _add_graph_arguments(p)
    _add_budget_argument(p)
    _add_char_arguments(p, default_orbit="self-conjugate")
    _add_format_argument(p)
    p.set_defaults(handler=_cmd_mubar)

    p = sub.add_parser(
        "gysin",
        help="decompose rank profiles into the three exact-triangle summand "
        "families; accepts explicit profiles or a graph",
    )
    _add_graph_arguments(p)
    p.add_argument(
        "--node-budget",
        type=int,
        default=200_000,
        metavar="N",
        help="search budget for forcing the second derived profile "
        "(default: 200000)",
    )
    _add_budget_argument(p)
    _add_char_arguments(p, default_orbit="self-conjugate")
    _add_scan_arguments(p)
    _add_method_argument(p)
    p.add_argument(
        "--assume-conjecture",
        action="store_true",
        help="see 'pin2'; applies when a graph is given",
    )
    _add_format_argument(p)
    p.set_defaults(handler=_cmd_gysin)

    return parser


def _fail(exc: LatticeRootError, code: int) -> int:
    print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.handler(args)
    except (ParseError, MalformedGraph, InvalidSeifertData) as exc:
        return _fail(exc, 1)
    except (CapacityExceeded, StabilizationNotReached) as exc:
        return _fail(exc, 3)
    except ConjectureRequired as exc:
        return _fail(exc, 4)
    except (AmbiguousWu, AmbiguousForcing) as exc:
        return _fail(exc, 5)
    except LatticeRootError as exc:
        return _fail(exc, 2)
    code = 0
    if isinstance(result, tuple):
        result, code = result
    if isinstance(result, str):
        print(result)
    else:
        print(json.dumps(result, indent=2, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
