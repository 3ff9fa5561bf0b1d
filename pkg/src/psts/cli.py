"""Command-line interface: build configurations, classify them, compare
them, and run the verification gates.

Machine output is a JSON envelope {command, version, wall_time_s, status,
payload}; everything except the wall time is deterministic.  Exit codes:
0 ok, 1 mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .classify import (
    GATES,
    build_catalog,
    CatalogMismatch,
    enumerate_matrices,
    load_expected,
    parse_xi_tokens,
    verify_all,
)
from .constructions import (
    GraphOnSet,
    ID,
    RHO,
    SIGMA_C,
    grassmannian,
    multiveblen,
    remark_212_mvc,
    stp,
    stp_pair,
    veronesian,
)
from .core import (
    Configuration,
    ConfigurationError,
    parse_cfg,
    permuted,
    validate_psts,
    write_cfg,
)
from .isomorphism import are_isomorphic, automorphism_group, canonical_form
from .recovery import WrongKCount, des_census, l_diagram, recover_skeleton

OK, MISMATCH, USAGE = 0, 1, 2


def _emit(command: str, payload, status: str, started: float) -> None:
    envelope = {
        "command": command,
        "version": __version__,
        "wall_time_s": round(time.time() - started, 3),
        "status": status,
        "payload": payload,
    }
    print(json.dumps(envelope, indent=2, ensure_ascii=False))


def _load(path: str) -> Configuration:
    with open(path, encoding="utf-8") as handle:
        return parse_cfg(handle.read())


def _cycle_notation(perm, labels) -> str:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(labels[x])
            x = perm[x]
        cycles.append("(" + " ".join(cycle) + ")")
    return "".join(cycles) if cycles else "()"


def _build(args) -> Configuration:
    kind = args.kind
    if kind == "grassmannian":
        return grassmannian(args.n, args.k)
    if kind == "veronesian":
        return veronesian(args.x_count, args.m)
    if kind == "stp":
        if not args.xi:
            raise ValueError("construct stp requires --xi")
        return stp(parse_xi_tokens(args.xi))
    if kind == "multiveblen":
        elements = tuple(range(1, args.n + 1))
        if args.graph == "complete":
            graph = GraphOnSet.complete(elements)
        elif args.graph == "empty":
            graph = GraphOnSet.empty(elements)
        elif args.graph == "linear":
            graph = GraphOnSet.linear(elements)
        else:
            edges = []
            for chunk in (args.edges or "").split(","):
                chunk = chunk.strip()
                if not chunk:
                    continue
                u, _, v = chunk.partition("-")
                edges.append((int(u), int(v)))
            graph = GraphOnSet(elements, frozenset(map(frozenset, edges)))
        return multiveblen(elements, graph, grassmannian(elements))
    if kind == "des":
        return stp_pair(ID)
    if kind == "des-prime":
        return stp_pair(SIGMA_C)
    if kind == "des-dblprime":
        return stp_pair(RHO)
    if kind == "remark212":
        return remark_212_mvc()
    raise ValueError(f"unknown construction {kind!r}")


def cmd_construct(args, started) -> int:
    cfg = _build(args)
    if args.params:
        params = validate_psts(cfg)
        payload = {
            "v": params.v,
            "r": params.r,
            "b": params.b,
            "k": params.k,
            "uniform": params.uniform,
            "binomial": params.binomial,
        }
        _emit("construct", payload, "ok", started)
        return OK
    text = write_cfg(cfg, header=f"psts construct {args.kind}")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return OK


def _catalog_payload(records) -> list[dict]:
    payload = []
    for record in records:
        row = {
            "class_id": record.class_id,
            "xi": list(record.xi_tokens),
            "k5": record.k5_count,
            "aut_order": record.aut_order,
            "aut_structure": record.aut_structure,
            "simple_mvc": record.is_simple_mvc,
            "size": record.size,
            "census": None,
        }
        if record.census is not None:
            row["census"] = {
                "des": record.census.des,
                "des_prime": record.census.des_prime,
                "des_dblprime": record.census.des_dblprime,
                "triangles": record.census.triangles,
                "hexagons": record.census.hexagons,
                "ninegons": record.census.ninegons,
            }
        payload.append(row)
    return payload


def _catalog_table(records) -> str:
    non_mvc = [r for r in records if r.census is not None]
    rows = [
        ("class", [str(r.class_id) for r in non_mvc]),
        ("triple", [",".join(r.xi_tokens) for r in non_mvc]),
        ("DES", [str(r.census.des) for r in non_mvc]),
        ("DES'", [str(r.census.des_prime) for r in non_mvc]),
        ("DES''", [str(r.census.des_dblprime) for r in non_mvc]),
        ("triangles", [str(r.census.triangles) for r in non_mvc]),
        ("hexagons", [str(r.census.hexagons) for r in non_mvc]),
        ("9-gons", [str(r.census.ninegons) for r in non_mvc]),
    ]
    widths = [
        max(len(rows[j][0]) for j in range(len(rows)))
        if i < 0
        else max(len(row[1][i]) for row in rows)
        for i in range(-1, len(non_mvc))
    ]
    lines = []
    for name, cells in rows:
        parts = [name.ljust(widths[0])] + [
            cell.rjust(widths[i + 1]) for i, cell in enumerate(cells)
        ]
        lines.append("  ".join(parts))
    lines.append("")
    lines.append("all classes (K5 count / automorphism group):")
    for r in records:
        tag = "  simple multiveblen" if r.is_simple_mvc else ""
        lines.append(
            f"  {r.class_id:2d}  {','.join(r.xi_tokens):<16} size {r.size:3d}  "
            f"K5 {r.k5_count}  Aut {r.aut_order:3d}  {r.aut_structure}{tag}"
        )
    return "\n".join(lines)


def cmd_classify(args, started) -> int:
    if args.size == 4:
        groups = enumerate_matrices(4, orbit_reduce=True)
        payload = {
            "size": 4,
            "raw_count": sum(len(v) for v in groups.values()),
            "class_count": len(groups),
            "class_sizes": sorted((len(v) for v in groups.values()), reverse=True),
            "note": "exploratory run; no certified expectations for four indices",
        }
        _emit("classify", payload, "ok", started)
        return OK
    try:
        records = build_catalog()
    except CatalogMismatch as exc:
        _emit("classify", {"mismatches": exc.details}, "mismatch", started)
        return MISMATCH
    if args.format == "table":
        print(_catalog_table(records))
    else:
        _emit("classify", _catalog_payload(records), "ok", started)
    return OK


def cmd_census(args, started) -> int:
    cfg = _load(args.file)
    try:
        skeleton = recover_skeleton(cfg)
    except WrongKCount as exc:
        _emit("census", {"error": str(exc)}, "error", started)
        return MISMATCH
    census = des_census(cfg, skeleton, slow=args.slow)
    diagram = l_diagram(cfg, skeleton)
    payload = {
        "des": census.des,
        "des_prime": census.des_prime,
        "des_dblprime": census.des_dblprime,
        "triangles": census.triangles,
        "hexagons": census.hexagons,
        "ninegons": census.ninegons,
        "cycle_lengths": list(diagram.cycle_lengths()),
    }
    _emit("census", payload, "ok", started)
    return OK


def cmd_iso(args, started) -> int:
    a, b = _load(args.file_a), _load(args.file_b)
    flag, certificate = are_isomorphic(a, b)
    payload: dict = {"isomorphic": flag}
    if flag and args.certificate:
        payload["certificate"] = certificate
    _emit("iso", payload, "ok" if flag else "mismatch", started)
    return OK if flag else MISMATCH


def cmd_aut(args, started) -> int:
    cfg = _load(args.file)
    group = automorphism_group(cfg)
    payload = {
        "order": group.order,
        "structure": group.structure_id,
        "generators": [_cycle_notation(g, cfg.points) for g in group.generators],
    }
    _emit("aut", payload, "ok", started)
    return OK


def cmd_canon(args, started) -> int:
    cfg = _load(args.file)
    form = canonical_form(cfg)
    canonical = permuted(cfg, form.relabeling)
    renamed = Configuration(
        tuple(str(i) for i in range(len(canonical.points))), canonical.lines
    )
    sys.stdout.write(write_cfg(renamed, header="canonical form"))
    return OK


def cmd_verify(args, started) -> int:
    expected = load_expected(args.expected) if args.expected else None
    report = verify_all(expected=expected, only=args.only)
    if args.format == "table":
        for gate in report["gates"]:
            print(f"gate {gate['name']}: {gate['status']}")
            for check in gate["checks"]:
                mark = "ok " if check["status"] == "ok" else "FAIL"
                print(f"  [{mark}] {check['check']}: {check['detail']}")
        print(f"overall: {report['status']}")
    else:
        _emit("verify", report, report["status"], started)
    return OK if report["status"] == "ok" else MISMATCH


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psts",
        description="binomial partial Steiner triple systems: construct, classify, verify",
    )
    parser.add_argument("--format", choices=("json", "table"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit a configuration in .cfg format")
    p.add_argument(
        "kind",
        choices=(
            "grassmannian",
            "veronesian",
            "multiveblen",
            "stp",
            "des",
            "des-prime",
            "des-dblprime",
            "remark212",
        ),
    )
    p.add_argument("--n", type=int, default=6, help="element count (grassmannian/multiveblen)")
    p.add_argument("--k", type=int, default=2, help="subset size (grassmannian)")
    p.add_argument("--x-count", type=int, default=3, help="variable count (veronesian)")
    p.add_argument("--m", type=int, default=4, help="degree (veronesian)")
    p.add_argument(
        "--xi",
        help="comma-separated tokens from {id, rho, rho-, sa, sb, sc}; "
        "three tokens are read as xi(1,2), xi(2,3), xi(1,3)",
    )
    p.add_argument("--graph", choices=("complete", "empty", "linear", "custom"), default="complete")
    p.add_argument("--edges", help="custom graph edges, e.g. '1-2,2-3'")
    p.add_argument("--params", action="store_true", help="print parameters instead of the .cfg")
    p.add_argument("-o", "--output", help="write the .cfg to a file")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("classify", help="enumerate and classify the simple systems")
    p.add_argument("--all", action="store_true", help="accepted for compatibility; always on")
    p.add_argument("--size", type=int, choices=(3, 4), default=3)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("census", help="subconfiguration census of a .cfg file")
    p.add_argument("file")
    p.add_argument("--slow", action="store_true", help="use the exhaustive substructure scan")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("iso", help="isomorphism test for two .cfg files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--certificate", action="store_true", help="include the point map")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("aut", help="automorphism group of a .cfg file")
    p.add_argument("file")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("canon", help="canonical .cfg of a .cfg file")
    p.add_argument("file")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("verify", help="run the verification gates")
    p.add_argument("--only", choices=tuple(GATES), help="run a single gate")
    p.add_argument("--expected", help="path to an alternative golden table")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    started = time.time()
    try:
        return args.func(args, started)
    except (ConfigurationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
