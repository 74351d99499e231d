"""Command-line interface: ``pseudospace <verb> ...``.

Exit codes: 0 for success or an affirmative verdict, 1 for a negative
verdict (witness on stderr), 2 for bad input, usage or contract errors.
Diagnostics are JSON lines on stderr, each with a ``code`` field.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import io
from .amalgam import free_amalgam
from .closure import (boundary, closure, construction_order, delta, direct_paths, gate,
                      independent, is_flag, random_construction_order)
from .construction import BuildSchedule, Policy, build_universal
from .errors import InputError, PseudospaceError
from .iso import backforth_game
from .oracle import EnumerationSpec, Kind, enumerate_structures
from .order import is_lattice, validate_geometry
from .zigzag import zigzag_cycle


class UsageError(PseudospaceError):
    code = "E_USAGE"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # route argparse failures through our diagnostics
        raise UsageError(message)


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _diag(code: str, message: str, **extra) -> None:
    _emit({"code": code, "message": message, **extra}, sys.stderr)


def _jsonable(w):
    if hasattr(w, "to_json"):
        return w.to_json()
    if isinstance(w, (tuple, list, set, frozenset)):
        items = sorted(w) if isinstance(w, (set, frozenset)) else w
        return [_jsonable(x) for x in items]
    return w


# -- inputs -------------------------------------------------------------------


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_geometry(path: str):
    try:
        data = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    if isinstance(data, dict) and "geometry" in data:
        data = data["geometry"]
    return io.geometry_from_json(data)


def _load_names(path: str | None) -> dict[str, int]:
    if path is None:
        return {}
    try:
        data = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or not all(isinstance(v, int) for v in data.values()):
        raise InputError("names file must map names to integer ids")
    return data


def _vertex(token: str, names: dict[str, int]) -> int:
    token = token.strip()
    if token in names:
        return names[token]
    try:
        return int(token)
    except ValueError:
        raise InputError(f"unknown vertex reference {token!r}") from None


def _vertices(spec: str | None, names: dict[str, int]) -> set[int]:
    if not spec:
        return set()
    return {_vertex(t, names) for t in spec.split(",") if t.strip()}


# -- verbs ----------------------------------------------------------------------


def cmd_build(args, names) -> int:
    sched = BuildSchedule(args.n, args.steps, args.seed, Policy(args.policy))
    g, log = build_universal(sched)
    if args.output is None:
        _emit({"geometry": io.geometry_to_json(g), "log": [e.to_json() for e in log]}, sys.stdout)
        return 0
    Path(args.output).write_text(io.dumps_geometry(g) + "\n")
    log_path = args.log or args.output + ".log.jsonl"
    Path(log_path).write_text(log.to_jsonl())
    _emit({"geometry": args.output, "log": log_path, "vertices": g.size}, sys.stdout)
    return 0


def cmd_check(args, names) -> int:
    g = _load_geometry(args.geometry)
    violations = validate_geometry(g)
    report = {"valid": not violations}
    for v in violations:
        _diag("E_AXIOM", v.axiom, witness=_jsonable(v.witness))
    if not violations:
        lat = is_lattice(g)
        report["lattice"] = lat.is_lattice
        if not lat:
            _diag("E_NOT_LATTICE", "some pair lacks a meet or join", witness=_jsonable(lat.witness))
        else:
            cyc = zigzag_cycle(g)
            report["simply_connected"] = cyc is None
            if cyc is not None:
                _diag("E_ZIGZAG_CYCLE", "zigzag cycle found", witness=cyc.to_json())
    _emit(report, sys.stdout)
    return 0 if all(report.values()) else 1


def cmd_closure(args, names) -> int:
    g = _load_geometry(args.geometry)
    X = _vertices(args.x, names)
    g.check_vertex(*X)
    cl = closure(g, X, method=args.method)
    order = construction_order(g, X)
    _emit({"closure": sorted(cl), "order": [e.to_json() for e in order]}, sys.stdout)
    return 0


def cmd_gate(args, names) -> int:
    g = _load_geometry(args.geometry)
    X, A = _vertices(args.x, names), _vertices(args.a, names)
    gt = gate(g, X, A)
    _emit({"gate": sorted(gt), "flag": is_flag(g, gt)}, sys.stdout)
    return 0


def cmd_delta(args, names) -> int:
    g = _load_geometry(args.geometry)
    x, A = _vertex(args.x, names), _vertices(args.a, names)
    paths = direct_paths(g, x, A)
    _emit({"delta": delta(g, x, A), "paths": [list(p) for p in paths]}, sys.stdout)
    return 0


def cmd_indep(args, names) -> int:
    g = _load_geometry(args.geometry)
    A, B, C = (_vertices(s, names) for s in (args.a, args.b, args.c))
    verdict = independent(g, A, B, C, method=args.method)
    _emit({"independent": verdict.value, "method": args.method}, sys.stdout)
    if not verdict:
        _diag("E_NOT_INDEPENDENT", "a zigzag avoids cl(B)", witness=_jsonable(verdict.witness))
        return 1
    return 0


def cmd_amalgam(args, names) -> int:
    ga, gc = _load_geometry(args.left), _load_geometry(args.right)
    b_map = {}
    for item in (args.glue or "").split(","):
        if not item.strip():
            continue
        try:
            u, v = item.split(":")
            b_map[int(u)] = int(v)
        except ValueError:
            raise InputError(f"bad gluing pair {item!r}, expected LEFT:RIGHT") from None
    for u in (0, 1):
        b_map.setdefault(u, u)
    g, emb = free_amalgam(ga, gc, b_map)
    _emit({"geometry": io.geometry_to_json(g),
           "embedding": [[v, emb[v]] for v in sorted(emb)]}, sys.stdout)
    return 0


def cmd_boundary(args, names) -> int:
    g = _load_geometry(args.geometry)
    A, B = _vertices(args.a, names), _vertices(args.b, names)
    if args.log:
        log = list(io.log_from_jsonl(_read_text(args.log).splitlines()))
    else:
        log = random_construction_order(g, B, A, random.Random(args.seed))
    out = boundary(g, A, B, log)
    _emit({"boundary": sorted(out), "log": [e.v if hasattr(e, "v") else e for e in log]}, sys.stdout)
    return 0


def cmd_backforth(args, names) -> int:
    g, g2 = _load_geometry(args.left), _load_geometry(args.right)
    trace = backforth_game(g, g2, args.depth, grow=args.grow)
    _emit(trace.to_json(), sys.stdout)
    if not trace.success:
        f = trace.failure
        _diag(f["code"], f["reason"], witness=_jsonable(f["witness"]))
        return 1
    return 0


def cmd_enumerate(args, names) -> int:
    spec = EnumerationSpec(args.max, Kind(args.kind), args.n)
    for g in enumerate_structures(spec):
        _emit(io.geometry_to_json(g), sys.stdout)
    return 0


def cmd_export(args, names) -> int:
    g = _load_geometry(args.geometry)
    if args.format == "dot":
        labels = {v: k for k, v in names.items()}
        sys.stdout.write(io.to_dot(g, labels))
    else:
        sys.stdout.write(io.dumps_geometry(g) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pseudospace", description=__doc__.splitlines()[0])
    p.add_argument("--names", help="JSON file mapping vertex names to ids")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="grow a fragment by simple extensions")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--steps", type=int, required=True)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--policy", choices=["rr", "random"], default="rr")
    b.add_argument("-o", "--output", help="geometry file (default: combined JSON on stdout)")
    b.add_argument("--log", help="log file (default: OUTPUT.log.jsonl)")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check", help="axioms, lattice property and zigzag cycles")
    c.add_argument("geometry")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("closure", help="closure of a vertex set with a construction order")
    c.add_argument("geometry")
    c.add_argument("--x", required=True)
    c.add_argument("--method", choices=["constructive", "fixed-point"], default="constructive")
    c.set_defaults(func=cmd_closure)

    c = sub.add_parser("gate", help="gate of X over a closed set A")
    c.add_argument("geometry")
    c.add_argument("--x", required=True)
    c.add_argument("--a", required=True)
    c.set_defaults(func=cmd_gate)

    c = sub.add_parser("delta", help="direct paths from x to a closed set A")
    c.add_argument("geometry")
    c.add_argument("--x", required=True)
    c.add_argument("--a", required=True)
    c.set_defaults(func=cmd_delta)

    c = sub.add_parser("indep", help="is A independent from C over B")
    c.add_argument("geometry")
    c.add_argument("--a", required=True)
    c.add_argument("--b", default="")
    c.add_argument("--c", required=True)
    c.add_argument("--method", choices=["def", "gate", "free", "all"], default="def")
    c.set_defaults(func=cmd_indep)

    c = sub.add_parser("amalgam", help="free amalgam of two geometries")
    c.add_argument("left")
    c.add_argument("right")
    c.add_argument("--glue", default="", help="pairs LEFT:RIGHT; bounds are glued implicitly")
    c.set_defaults(func=cmd_amalgam)

    c = sub.add_parser("boundary", help="boundary of B over A along a construction log")
    c.add_argument("geometry")
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c.add_argument("--log", help="JSONL log; default is a seeded random construction order")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_boundary)

    c = sub.add_parser("backforth", help="play the back-and-forth game")
    c.add_argument("left")
    c.add_argument("right")
    c.add_argument("--depth", type=int, default=3)
    c.add_argument("--grow", action="store_true")
    c.set_defaults(func=cmd_backforth)

    c = sub.add_parser("enumerate", help="small structures up to isomorphism, as JSON lines")
    c.add_argument("--max", type=int, required=True)
    c.add_argument("--kind", choices=[k.value for k in Kind], default=Kind.N_GEOMETRY_LATTICES.value)
    c.add_argument("--n", type=int, default=1)
    c.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("export", help="canonical JSON or DOT")
    c.add_argument("geometry")
    c.add_argument("--format", choices=["json", "dot"], default="json")
    c.set_defaults(func=cmd_export)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        names = _load_names(args.names)
        return args.func(args, names)
    except PseudospaceError as exc:
        _diag(exc.code, str(exc), witness=_jsonable(getattr(exc, "witness", None)))
        return 2
    except ValueError as exc:
        _diag("E_INPUT", str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
