"""Command-line interface: inspection, local/global verification, corpus runs.

Exit codes: 0 all checks passed, 1 a verification check failed, 2 usage or
input error.  All randomness (modular eigenspace splitting) flows from the
single --seed flag; reports are byte-identical across runs up to the
recorded seed and timings.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .catalog import EXTRA_GROUPS, ade_bundle, extra_group, extra_table
from .chartab import CharacterTableError, character_table
from .correspondence import minor_report, verify_correspondence
from .cyclo import CycNum
from .groups import (
    ADE_SUITE,
    FiniteGroup,
    GroupError,
    group_from_cayley,
    group_from_generators,
)
from .surface import SurfaceConfigError, load_surface, verify_global

USAGE_ERROR = 2


def _dump(payload: dict, out_path: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_group_file(path: str) -> FiniteGroup:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise GroupError("group file must contain a JSON object")
    if "cayley" in data:
        return group_from_cayley(data["cayley"], name=str(path))
    if "generators" in data:
        mats = [
            [[CycNum.from_json(entry) for entry in row] for row in matrix]
            for matrix in data["generators"]
        ]
        return group_from_generators(mats, name=str(path))
    raise GroupError("group file needs a 'cayley' table or 'generators' matrices")


def _resolve_group(args) -> FiniteGroup:
    if getattr(args, "type", None):
        return ade_bundle(args.type.strip().upper(), args.seed).group
    if getattr(args, "group", None):
        return _load_group_file(args.group)
    if getattr(args, "name", None):
        return extra_group(args.name)
    raise GroupError("no group specified; use --type or --group")


def _group_info(group: FiniteGroup) -> dict:
    conj = group.conjugacy
    return {
        "name": group.name,
        "order": group.order,
        "exponent": conj.exponent,
        "classes": [
            {
                "index": i,
                "size": conj.sizes[i],
                "representative": conj.representatives[i],
                "element_order": group.element_order[conj.representatives[i]],
            }
            for i in range(len(conj.classes))
        ],
    }


def _table_payload(table) -> dict:
    return {
        "group": _group_info(table.group),
        "degrees": list(table.degrees),
        "dixon_prime": table.prime,
        "rows": [[v.to_json() for v in row] for row in table.rows],
    }


def _graph_dot(graph) -> str:
    lines = ["graph mckay {"]
    for v in range(graph.size):
        mark = " shape=doublecircle" if v == graph.trivial_vertex else ""
        lines.append(f'  v{v} [label="{graph.dims[v]}"{mark}];')
    for v in range(graph.size):
        for w in range(v + 1, graph.size):
            for _ in range(graph.adjacency[v][w]):
                lines.append(f"  v{v} -- v{w};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _graph_payload(graph) -> dict:
    return {
        "affine": graph.affine_label,
        "finite": graph.finite_label,
        "trivial_vertex": graph.trivial_vertex,
        "vertices": [{"index": v, "dim": graph.dims[v]} for v in range(graph.size)],
        "edges": [
            [v, w, graph.adjacency[v][w]]
            for v in range(graph.size)
            for w in range(v + 1, graph.size)
            if graph.adjacency[v][w]
        ],
    }


# -- subcommand handlers ----------------------------------------------------------


def _cmd_group(args) -> int:
    group = _resolve_group(args)
    _dump({"schema": 1, "command": "group", "group": _group_info(group)}, args.out)
    return 0


def _cmd_chartable(args) -> int:
    if getattr(args, "type", None):
        table = ade_bundle(args.type.strip().upper(), args.seed).table
    else:
        table = character_table(_resolve_group(args), seed=args.seed)
    _dump({"schema": 1, "command": "chartable", "table": _table_payload(table)}, args.out)
    return 0


def _cmd_mckay(args) -> int:
    label = args.type.strip().upper()
    graph = ade_bundle(label, args.seed).graph
    if args.format == "dot":
        text = _graph_dot(graph)
        if args.dot:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        payload = {"schema": 1, "command": "mckay", "graph": _graph_payload(graph)}
        _dump(payload, args.out)
        if args.dot:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(_graph_dot(graph))
    return 0


def _cmd_local(args) -> int:
    label = args.type.strip().upper()
    bundle = ade_bundle(label, args.seed)
    payload: dict = {"schema": 1, "command": "local", "group": _group_info(bundle.group)}
    if args.dump_orbifold:
        algebra = bundle.orbifold if args.full else bundle.invariant
        payload["orbifold_structure"] = algebra.structure_json()
    if args.dump_resolution:
        payload["resolution_structure"] = bundle.resolution.structure_json()
    if not (args.dump_orbifold or args.dump_resolution):
        payload["dimensions"] = {
            "resolution": bundle.resolution.dim,
            "orbifold_invariant": bundle.invariant.dim,
            "orbifold_full": bundle.orbifold.dim,
        }
    _dump(payload, args.out)
    return 0


def _verify_payload(report, seed: int, command: str) -> dict:
    return {
        "schema": 1,
        "command": command,
        "seed": seed,
        "report": report.to_dict(),
    }


def _cmd_verify_local(args) -> int:
    label = args.type.strip().upper()
    bundle = ade_bundle(label, args.seed)
    report = verify_correspondence(bundle.cmap)
    payload = _verify_payload(report, args.seed, "verify local")
    payload["phi"] = bundle.cmap.to_json()
    _dump(payload, args.out)
    return 0 if report.passed else 1


def _cmd_verify_global(args) -> int:
    model = load_surface(args.config)
    report = verify_global(model, seed=args.seed)
    _dump(_verify_payload(report, args.seed, "verify global"), args.out)
    return 0 if report.passed else 1


def _cmd_minor(args) -> int:
    if getattr(args, "type", None):
        table = ade_bundle(args.type.strip().upper(), args.seed).table
    elif getattr(args, "name", None):
        table = extra_table(args.name, args.seed)
    else:
        table = character_table(_resolve_group(args), seed=args.seed)
    report = minor_report(table)
    payload = _verify_payload(report, args.seed, "minor")
    payload["determinant"] = report.checks[0].detail["determinant"]
    _dump(payload, args.out)
    return 0 if report.passed else 1


def _corpus_entry_ade(label: str, seed: int) -> dict:
    bundle = ade_bundle(label, seed)
    report = verify_correspondence(bundle.cmap)
    minor = minor_report(bundle.table)
    return {
        "label": label,
        "kind": "ade",
        "graph": _graph_payload(bundle.graph),
        "chartable": _table_payload(bundle.table),
        "verify": report.to_dict(),
        "minor": minor.to_dict(),
        "pass": report.passed and minor.passed,
    }


def _corpus_entry_extra(name: str, seed: int) -> dict:
    table = extra_table(name, seed)
    minor = minor_report(table)
    return {
        "label": name,
        "kind": "extra",
        "chartable": _table_payload(table),
        "minor": minor.to_dict(),
        "pass": minor.passed,
    }


def _cmd_corpus(args) -> int:
    t0 = time.perf_counter()
    tasks = [(label, "ade") for label in ADE_SUITE] + [
        (name, "extra") for name in EXTRA_GROUPS
    ]

    def run(task):
        label, kind = task
        if kind == "ade":
            return _corpus_entry_ade(label, args.seed)
        return _corpus_entry_extra(label, args.seed)

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            entries = list(pool.map(run, tasks))
    else:
        entries = [run(t) for t in tasks]
    entries.sort(key=lambda e: (e["kind"], e["label"]))
    overall = all(e["pass"] for e in entries)
    payload = {
        "schema": 1,
        "command": "corpus",
        "manifest": {
            "inputs": [t[0] for t in tasks],
            "seed": args.seed,
            "versions": {"mckay": __version__, "python": sys.version.split()[0]},
        },
        "groups": entries,
        "pass": overall,
        "timings": {"total_s": time.perf_counter() - t0},
    }
    _dump(payload, args.out)
    return 0 if overall else 1


# -- parser ------------------------------------------------------------------------


def _add_common(parser, out=True, seed=True):
    if seed:
        parser.add_argument("--seed", type=int, default=0, help="seed for eigenspace splitting")
    if out:
        parser.add_argument("--out", help="write the JSON report to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mckay",
        description="Exact verification of the multiplicative McKay correspondence",
    )
    parser.add_argument("--version", action="version", version=f"mckay {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="print order, exponent and conjugacy classes")
    p.add_argument("--type", help="ADE label (A1..A10, D4..D10, E6, E7, E8)")
    p.add_argument("--group", help="JSON file with a Cayley table or SL2 generators")
    p.add_argument("--name", choices=EXTRA_GROUPS, help="stock corpus group")
    _add_common(p)
    p.set_defaults(func=_cmd_group)

    p = sub.add_parser("chartable", help="exact character table")
    p.add_argument("--type", help="ADE label")
    p.add_argument("--group", help="group file")
    p.add_argument("--name", choices=EXTRA_GROUPS)
    _add_common(p)
    p.set_defaults(func=_cmd_chartable)

    p = sub.add_parser("mckay", help="McKay graph with affine ADE classification")
    p.add_argument("--type", required=True)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--dot", help="write DOT output to this path")
    _add_common(p)
    p.set_defaults(func=_cmd_mckay)

    p = sub.add_parser("local", help="local ring inspection and structure dumps")
    p.add_argument("--type", required=True)
    p.add_argument("--dump-orbifold", action="store_true", help="dump orbifold structure constants")
    p.add_argument("--dump-resolution", action="store_true", help="dump resolution structure constants")
    p.add_argument("--full", action="store_true", help="pre-invariant orbifold ring instead of invariants")
    _add_common(p)
    p.set_defaults(func=_cmd_local)

    p = sub.add_parser("verify", help="run the exact verification")
    vsub = p.add_subparsers(dest="scope", required=True)
    pl = vsub.add_parser("local", help="one ADE quotient point")
    pl.add_argument("--type", required=True)
    _add_common(pl)
    pl.set_defaults(func=_cmd_verify_local)
    pg = vsub.add_parser("global", help="a synthetic surface model")
    pg.add_argument("--config", required=True, help="surface JSON configuration")
    _add_common(pg)
    pg.set_defaults(func=_cmd_verify_global)

    p = sub.add_parser("minor", help="character-table minor nondegeneracy")
    p.add_argument("--type", help="ADE label")
    p.add_argument("--group", help="group file")
    p.add_argument("--name", choices=EXTRA_GROUPS, help="stock corpus group")
    _add_common(p)
    p.set_defaults(func=_cmd_minor)

    p = sub.add_parser("corpus", help="verify every ADE type plus the extra groups")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers")
    _add_common(p)
    p.set_defaults(func=_cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
    except (GroupError, CharacterTableError, SurfaceConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    return code


if __name__ == "__main__":
    sys.exit(main())
