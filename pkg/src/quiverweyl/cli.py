"""Command line entry point."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import QuiverWeylError
from .leaves import enumerate_isotropic_decompositions
from .quiver import QuiverSetting
from .repcheck import (
    FIXTURES,
    fixture,
    fixture_summands,
    is_direct_sum,
    is_preprojective,
    moment_map,
    socle_vertex_part,
)
from .report import analyze, export_dot, parse_setting, render_report
from .roots import DEFAULT_MAX_WEIGHT, RootSystem
from .weyl import analyze_leaf


def _read_setting(path: str) -> QuiverSetting:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_setting(text)


def _vec(v) -> str:
    return "(" + ", ".join(map(str, v)) + ")"


def _emit(args, data: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _write_dots(directory: str, local_quivers) -> None:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    for i, lq in enumerate(local_quivers, start=1):
        (out / f"leaf-{i}.dot").write_text(export_dot(lq, f"leaf{i}"))


def cmd_analyze(args) -> None:
    setting = _read_setting(args.input)
    report = analyze(setting, oracle=args.oracle, max_weight=args.max_weight, seed=args.seed)
    if args.dot:
        rs = RootSystem(setting.quiver, args.max_weight)
        lqs = [
            iso.local
            for comp in report.components
            for iso in enumerate_isotropic_decompositions(rs, tuple(comp["vector"]))
        ]
        _write_dots(args.dot, lqs)
    print(render_report(report, args.format), end="")


def cmd_roots(args) -> None:
    setting = _read_setting(args.input)
    rs = RootSystem(setting.quiver, args.max_weight)
    roots = rs.enumerate_roots_below(setting.alpha)
    data = {"roots": [{"vector": list(r.vector), "kind": r.kind.value, "p": r.p} for r in roots]}
    text = "\n".join(f"{_vec(r.vector)} {r.kind.value} p={r.p}" for r in roots) or "no roots"
    _emit(args, data, text)


def cmd_sigma(args) -> None:
    setting = _read_setting(args.input)
    rs = RootSystem(setting.quiver, args.max_weight)
    rs.check_weight(setting.alpha)
    member = rs.sigma00_membership(setting.alpha, oracle=args.oracle)
    good = rs.sigma00_roots_below(setting.alpha)
    data = {"vector": list(setting.alpha), "member": member, "sigma00_below": [list(r.vector) for r in good]}
    text = f"{_vec(setting.alpha)} in Sigma00: {'yes' if member else 'no'}\n" + "\n".join(
        f"  {_vec(r.vector)} p={r.p}" for r in good
    )
    _emit(args, data, text)


def cmd_canonical(args) -> None:
    setting = _read_setting(args.input)
    rs = RootSystem(setting.quiver, args.max_weight)
    rs.check_weight(setting.alpha)
    canon = rs.canonical_decomposition(setting.alpha)
    data = {"terms": [{"vector": list(r.vector), "multiplicity": n, "p": r.p} for r, n in canon.terms]}
    text = " + ".join(_vec(r.vector) if n == 1 else f"{n}*{_vec(r.vector)}" for r, n in canon.terms)
    _emit(args, data, text)


def cmd_leaves(args) -> None:
    setting = _read_setting(args.input)
    rs = RootSystem(setting.quiver, args.max_weight)
    rs.check_weight(setting.alpha)
    canon = rs.canonical_decomposition(setting.alpha)
    records, lqs, lines = [], [], []
    for root, _ in canon.terms:
        if not rs.sigma00_membership(root.vector) or any(r["component"] == list(root.vector) for r in records):
            continue
        for iso in enumerate_isotropic_decompositions(rs, root.vector):
            leaf = analyze_leaf(iso)
            lqs.append(iso.local)
            records.append(
                {
                    "component": list(root.vector),
                    "terms": [[list(r.vector), n] for r, n in iso.terms],
                    "affine": iso.affine.name,
                    "pattern": leaf.pattern.case.value,
                    "symmetry_order": leaf.automorphism_order,
                }
            )
            shown = " + ".join(_vec(r.vector) if n == 1 else f"{n}*{_vec(r.vector)}" for r, n in iso.terms)
            lines.append(
                f"{_vec(root.vector)}: {shown}  {iso.affine.name}, symmetry order {leaf.automorphism_order}"
            )
    if args.dot:
        _write_dots(args.dot, lqs)
    _emit(args, {"leaves": records}, "\n".join(lines) or "no codimension-2 leaves")


def cmd_weyl(args) -> None:
    setting = _read_setting(args.input)
    report = analyze(setting, oracle=args.oracle, max_weight=args.max_weight, seed=args.seed)
    _emit(args, report.weyl, f"W = {report.weyl['name']}, order {report.weyl['order']}")


def _parse_params(items) -> dict:
    params = {}
    for item in items or []:
        for part in item.split(","):
            if not part:
                continue
            key, sep, value = part.partition("=")
            if not sep:
                raise SystemExit(f"bad parameter {part!r}; expected key=value")
            params[key.strip()] = value.strip()
    return params


def cmd_check_rep(args) -> None:
    if args.list or not args.fixture:
        names = sorted(FIXTURES)
        _emit(
            args,
            {"fixtures": {n: {"params": {k: str(v) for k, v in FIXTURES[n].defaults.items()}} for n in names}},
            "\n".join(f"{n}: {FIXTURES[n].summary}" for n in names),
        )
        return
    params = _parse_params(args.params)
    rep = fixture(args.fixture, params)
    mu = moment_map(rep)
    residual = [[str(x) for x in m] for m in mu]
    preproj = is_preprojective(rep)
    socle = socle_vertex_part(rep)
    parts = fixture_summands(args.fixture, params)
    split = is_direct_sum(rep, parts) if parts is not None else None
    data = {
        "fixture": args.fixture,
        "dims": dict(zip(rep.double.vertices, rep.dims)),
        "preprojective": preproj,
        "moment_map": dict(zip(rep.double.vertices, residual)),
        "socle": dict(zip(rep.double.vertices, socle)),
        "direct_sum": split,
    }
    text = [
        f"fixture {args.fixture}: dims {_vec(rep.dims)}",
        f"moment map zero: {'yes' if preproj else 'no'}",
        f"socle (vertex part): {_vec(socle)}",
    ]
    if split is not None:
        text.append(f"decomposes as expected: {'yes' if split else 'no'}")
    _emit(args, data, "\n".join(text))
    if not preproj:
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quiverweyl", description="Namikawa-Weyl groups of quiver varieties.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-weight", type=int, default=DEFAULT_MAX_WEIGHT, help="enumeration cap on sum(alpha)")
    common.add_argument("--oracle", action="store_true", help="run brute-force cross-checks")
    common.add_argument("--seed", type=int, default=None, help="random vertex relabeling check (with --oracle)")
    sub = parser.add_subparsers(dest="command", required=True)

    commands = {
        "analyze": (cmd_analyze, "full pipeline report"),
        "roots": (cmd_roots, "positive roots below the dimension vector"),
        "sigma": (cmd_sigma, "Sigma00 membership"),
        "canonical": (cmd_canonical, "canonical decomposition"),
        "leaves": (cmd_leaves, "codimension-2 leaves and local quivers"),
        "weyl": (cmd_weyl, "Namikawa-Weyl group only"),
    }
    for name, (func, help_text) in commands.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("input", help="JSON setting file, or - for stdin")
        if name in ("analyze", "leaves"):
            p.add_argument("--dot", metavar="DIR", help="write leaf-<i>.dot files into DIR")
        p.set_defaults(func=func)

    p = sub.add_parser("check-rep", parents=[common], help="verify a catalog representation")
    p.add_argument("--fixture", help="fixture name")
    p.add_argument("--params", nargs="*", help="k=v assignments, e.g. t=3/2 s=0")
    p.add_argument("--list", action="store_true", help="list fixtures")
    p.set_defaults(func=cmd_check_rep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is not None and args.command in ("analyze", "weyl") and not args.oracle:
        args.oracle = True
    try:
        args.func(args)
    except QuiverWeylError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
