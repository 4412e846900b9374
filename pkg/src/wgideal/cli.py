"""Command line front end.

Exit codes: 0 for a positive verdict, 1 for a negative one, 2 for usage or
validation errors.
"""

from __future__ import annotations

import argparse
import re
import sys as _sys
from dataclasses import dataclass
from pathlib import Path

from . import report
from .biideal import biideal_check, two_sided_graph
from .classify import classify_rank2
from .coxeter import DEFAULT_CAP, CapExceeded, CoxeterMatrix, CoxeterSystem, InvalidMatrix
from .ideal import IdealError, build_context, build_graph_from_ideal, is_wgraph_ideal, kl_special_cases
from .parabolic import InnerNotVerified, JNotInK, NotContained, induce_ideal, restrict_ideal
from .wgraph import graph_to_dot, kl_preorder


class UsageError(Exception):
    pass


@dataclass
class JobSpec:
    command: str
    sys: CoxeterSystem | None
    ideal: str | None
    J: frozenset[int]
    K: frozenset[int]
    fmt: str
    out: str | None
    diagnose: bool


def matrix_from_type(name: str) -> CoxeterMatrix:
    """'A3', 'B4', 'I2(6)'."""
    name = name.strip()
    if m := re.fullmatch(r"I2\((\d+)\)", name):
        return CoxeterMatrix.dihedral(int(m.group(1)))
    if m := re.fullmatch(r"([AB])(\d+)", name):
        n = int(m.group(2))
        return CoxeterMatrix.type_a(n) if m.group(1) == "A" else CoxeterMatrix.type_b(n)
    raise UsageError(f"unknown type {name!r}")


def parse_label_list(sys: CoxeterSystem, text: str | None) -> frozenset[int]:
    if not text:
        return frozenset()
    items = [x for x in re.split(r"[,\s\[\]]+", text) if x]
    try:
        return sys.subset(items)
    except KeyError as exc:
        raise UsageError(str(exc)) from None


def _word_list(sys: CoxeterSystem, body: str) -> list[int]:
    body = body.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    try:
        return [sys.parse_word(x) for x in body.split(",") if x.strip()]
    except KeyError as exc:
        raise UsageError(str(exc)) from None


def parse_ideal(sys: CoxeterSystem, text: str, J: frozenset[int]) -> frozenset[int]:
    text = text.strip()
    if text in ("DJ", "D"):
        return frozenset(sys.min_coset_reps(J))
    if text == "W":
        return frozenset(range(sys.order))
    kind, _, body = text.partition(":")
    if kind == "words":
        return frozenset(_word_list(sys, body))
    if kind == "gen":
        return sys.ideal_closure(_word_list(sys, body))
    if kind == "ball":
        try:
            return sys.ball(int(body))
        except ValueError:
            raise UsageError(f"bad radius {body!r}") from None
    raise UsageError(f"cannot parse ideal spec {text!r}")


def _emit(spec: JobSpec, text: str) -> None:
    if spec.out:
        Path(spec.out).write_text(text)
    else:
        _sys.stdout.write(text)


def _emit_graph_or_json(spec: JobSpec, data: dict, graph) -> None:
    if spec.fmt == "dot":
        _emit(spec, graph_to_dot(graph))
    else:
        _emit(spec, report.dumps(data))


def _require_ideal(spec: JobSpec) -> frozenset[int]:
    if spec.ideal is None:
        raise UsageError("--ideal is required")
    return parse_ideal(spec.sys, spec.ideal, spec.J)


def cmd_verify(spec: JobSpec) -> int:
    ctx = build_context(spec.sys, _require_ideal(spec), spec.J)
    rep = is_wgraph_ideal(ctx)
    _emit_graph_or_json(spec, report.ideal_json(ctx, rep, spec.diagnose), build_graph_from_ideal(ctx))
    return 0 if rep.ok else 1


def cmd_cells(spec: JobSpec) -> int:
    ctx = build_context(spec.sys, _require_ideal(spec), spec.J)
    rep = is_wgraph_ideal(ctx)
    g = build_graph_from_ideal(ctx)
    data = report.cells_json(ctx, kl_preorder(g))
    data["isIdeal"] = rep.ok
    _emit_graph_or_json(spec, data, g)
    return 0


def cmd_induce(spec: JobSpec) -> int:
    inner = _require_ideal(spec)
    ctx = induce_ideal(spec.sys, spec.K, inner, spec.J)
    rep = is_wgraph_ideal(ctx)
    data = report.ideal_json(ctx, rep, spec.diagnose)
    data["K"] = spec.sys.subset_labels(spec.K)
    data["inner"] = report.words(spec.sys, inner)
    _emit_graph_or_json(spec, data, build_graph_from_ideal(ctx))
    return 0 if rep.ok else 1


def cmd_restrict(spec: JobSpec) -> int:
    ctx = build_context(spec.sys, _require_ideal(spec), spec.J)
    pieces = restrict_ideal(ctx, spec.K)
    data = report.restriction_json(spec.sys, spec.K, pieces)
    data["isIdeal"] = is_wgraph_ideal(ctx).ok
    _emit(spec, report.dumps(data))
    return 0 if all(p.verified for p in pieces) else 1


def cmd_biideal(spec: JobSpec) -> int:
    b = biideal_check(spec.sys, _require_ideal(spec), spec.J, spec.K)
    data = report.biideal_json(b)
    if spec.fmt == "dot":
        g = two_sided_graph(b) if b.ok else (build_graph_from_ideal(b.left) if b.left else None)
        if g is None:
            raise UsageError("no graph to draw: the pre-filter rejected the input")
        _emit(spec, graph_to_dot(g))
    else:
        _emit(spec, report.dumps(data))
    return 0 if b.ok else 1


def cmd_kl(spec: JobSpec) -> int:
    rec = kl_special_cases(spec.sys)
    if spec.fmt == "dot":
        _emit(spec, graph_to_dot(build_graph_from_ideal(rec.ctx)))
    else:
        _emit(spec, report.dumps(report.kl_json(spec.sys, rec)))
    return 0 if rec.verified and rec.formula_ok else 1


def cmd_classify_rank2(m: int, mode: str, spec: JobSpec) -> int:
    if m < 2:
        raise UsageError("--m must be at least 2")
    res = classify_rank2(m, mode)
    sys = CoxeterSystem.from_matrix(CoxeterMatrix.dihedral(m))
    _emit(spec, report.dumps(report.classification_json(sys, res)))
    return 0 if res.ok else 1


COMMANDS = {
    "verify": cmd_verify,
    "cells": cmd_cells,
    "induce": cmd_induce,
    "restrict": cmd_restrict,
    "biideal": cmd_biideal,
    "kl": cmd_kl,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wgideal", description="W-graph ideals in finite Coxeter groups")
    p.add_argument("command", choices=sorted(COMMANDS) + ["classify-rank2"])
    p.add_argument("mode", nargs="?", choices=["ideal", "biideal"], help="for classify-rank2")
    p.add_argument("--coxeter", help="Coxeter matrix JSON file")
    p.add_argument("--type", dest="ctype", help="built-in type such as A3, B4, I2(6)")
    p.add_argument("--ideal", help="words:[...] | gen:[...] | DJ | ball:k | W")
    p.add_argument("--j", help="comma separated generator labels")
    p.add_argument("--k", help="comma separated generator labels")
    p.add_argument("--m", type=int, help="dihedral order for classify-rank2")
    p.add_argument("--format", dest="fmt", choices=["json", "dot"], default="json")
    p.add_argument("--out")
    p.add_argument("--diagnose-choices", action="store_true")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "classify-rank2":
            if args.m is None:
                raise UsageError("--m is required")
            spec = JobSpec(args.command, None, None, frozenset(), frozenset(), "json", args.out, False)
            return cmd_classify_rank2(args.m, args.mode or "ideal", spec)
        if bool(args.coxeter) == bool(args.ctype):
            raise UsageError("give exactly one of --coxeter and --type")
        cm = CoxeterMatrix.load(args.coxeter) if args.coxeter else matrix_from_type(args.ctype)
        W = CoxeterSystem.from_matrix(cm, cap=args.cap)
        spec = JobSpec(args.command, W, args.ideal, parse_label_list(W, args.j), parse_label_list(W, args.k),
                       args.fmt, args.out, args.diagnose_choices)
        return COMMANDS[args.command](spec)
    except (UsageError, InvalidMatrix, CapExceeded, IdealError, JNotInK, InnerNotVerified, NotContained,
            OSError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 2


def run() -> None:
    raise SystemExit(main())
