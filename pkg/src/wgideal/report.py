"""JSON report builders shared by the command line front end."""

from __future__ import annotations

import json
from typing import Iterable, Mapping

from .biideal import BiidealContext, two_sided_graph
from .classify import ClassificationResult
from .coxeter import CoxeterSystem
from .ideal import IdealContext, IdealReport, KLRecord, choice_sweep
from .laurent import LaurentPoly
from .parabolic import RestrictionPiece
from .wgraph import CellPartition, graph_to_json


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def poly_json(p: LaurentPoly) -> dict:
    return {"lo": p.lo, "coeffs": list(p.coeffs), "text": str(p)}


def words(sys: CoxeterSystem, elems: Iterable[int]) -> list[str]:
    return [sys.word_str(w) for w in sorted(elems)]


def column_json(sys: CoxeterSystem, ideal: tuple[int, ...], col: Mapping[int, LaurentPoly]) -> list[dict]:
    return [{"vertex": sys.word_str(ideal[i]), "poly": poly_json(p)} for i, p in sorted(col.items())]


def ideal_json(ctx: IdealContext, rep: IdealReport, diagnose: bool = False) -> dict:
    from .ideal import build_graph_from_ideal

    sys, lab = ctx.sys, ctx.sys.labels
    n = len(ctx)
    out = {
        "isIdeal": rep.ok,
        "J": sys.subset_labels(ctx.J),
        "ideal": words(sys, ctx.ideal),
        "failures": [
            {"s": lab[f.s], "t": lab[f.t], "vertex": sys.word_str(ctx.ideal[f.vertex]),
             "lhs": column_json(sys, ctx.ideal, f.lhs), "rhs": column_json(sys, ctx.ideal, f.rhs)}
            for f in rep.braid_failures
        ],
        "main1Violations": [{"s": lab[s], "w": sys.word_str(w)} for s, w in rep.main1_violations],
        "longEdgeViolations": [{"y": sys.word_str(y), "w": sys.word_str(w)} for y, w in rep.long_edge_violations],
        "anomalies": [{"y": sys.word_str(a.y), "w": sys.word_str(a.z), "poly": poly_json(a.poly)}
                      for a in rep.anomalies],
        "q": [{"y": sys.word_str(ctx.ideal[i]), "w": sys.word_str(ctx.ideal[j]), "poly": poly_json(ctx.q[i][j])}
              for j in range(n) for i in range(j) if ctx.q[i][j]],
        "chosenDescent": {sys.word_str(ctx.ideal[z]): lab[s] for z, s in enumerate(ctx.chosen) if s is not None},
        "graph": graph_to_json(build_graph_from_ideal(ctx)),
    }
    if diagnose:
        out["choiceDisagreements"] = [
            {"z": sys.word_str(d.z), "s": lab[d.s], "y": sys.word_str(d.y),
             "default": poly_json(d.default), "alternative": poly_json(d.alternative)}
            for d in choice_sweep(ctx)
        ]
    return out


def cells_json(ctx: IdealContext, cells: CellPartition) -> dict:
    sys = ctx.sys
    return {
        "cells": [[sys.word_str(ctx.ideal[i]) for i in c] for c in cells.cells],
        "order": [list(p) for p in sorted(cells.below)],
    }


def restriction_json(sys: CoxeterSystem, K: Iterable[int], pieces: list[RestrictionPiece]) -> dict:
    return {
        "K": sys.subset_labels(K),
        "pieces": [{"d": sys.word_str(p.d), "L": sys.subset_labels(p.L), "ideal": words(sys, p.Id),
                    "verified": p.verified} for p in pieces],
    }


def biideal_json(b: BiidealContext) -> dict:
    from .ideal import is_wgraph_ideal

    sys, lab = b.sys, b.sys.labels
    out: dict = {
        "isBiideal": b.ok,
        "J": sys.subset_labels(b.J),
        "K": sys.subset_labels(b.K),
        "prefilter": b.prefilter_ok,
        "isIdeal": b.left_ok,
        "rightVerified": b.right_ok,
        "bimodule": b.bimodule_ok,
        "witness": None,
    }
    if b.left is not None:
        out["left"] = ideal_json(b.left, is_wgraph_ideal(b.left))
    if b.witness is not None:
        w = b.witness
        out["witness"] = {"s": lab[w.s], "t": lab[w.t], "vertex": sys.word_str(w.vertex),
                          "leftThenRight": column_json(sys, b.left.ideal, w.left_then_right),
                          "rightThenLeft": column_json(sys, b.left.ideal, w.right_then_left)}
    if b.ok:
        out["twoSidedGraph"] = graph_to_json(two_sided_graph(b))
    return out


def kl_json(sys: CoxeterSystem, rec: KLRecord) -> dict:
    return {
        "isIdeal": rec.verified,
        "longest": sys.word_str(sys.longest),
        "cLongest": [{"w": sys.word_str(w), "poly": poly_json(p)} for w, p in sorted(rec.c_longest.items())],
        "formulaHolds": rec.formula_ok,
        "cells": [[sys.word_str(rec.ctx.ideal[i]) for i in c] for c in rec.cells.cells],
        "parabolics": [
            {"K": sys.subset_labels(f.K), "longest": sys.word_str(f.longest),
             "DKUnionOfCells": f.DK_union_of_cells, "DKwKUnionOfCells": f.DKwK_union_of_cells,
             "complementOfDKClosed": f.complement_of_DK_closed, "DKwKClosed": f.DKwK_closed}
            for f in rec.parabolics
        ],
    }


def classification_json(sys: CoxeterSystem, res: ClassificationResult) -> dict:
    def entry(t: tuple) -> dict:
        d = {"ideal": words(sys, t[0]), "J": sys.subset_labels(t[1])}
        if res.mode == "biideal":
            d["K"] = sys.subset_labels(t[2])
        return d

    return {
        "m": res.m,
        "mode": res.mode,
        "candidates": res.candidates,
        "accepted": [entry(t) for t in res.accepted],
        "mismatches": [dict(entry(t), verdict=t[-1]) for t in res.mismatches],
    }
