"""Shared groups and context corpora for the test suite."""

from __future__ import annotations

from functools import lru_cache

from wgideal.classify import subsets, weak_ideals
from wgideal.coxeter import CoxeterMatrix, CoxeterSystem
from wgideal.ideal import IdealError, build_context, is_wgraph_ideal

TYPES = {
    "A1": lambda: CoxeterMatrix.from_lists(["s"], [[1]]),
    "A2": lambda: CoxeterMatrix.dihedral(3),
    "B2": lambda: CoxeterMatrix.dihedral(4),
    "A3": lambda: CoxeterMatrix.type_a(3),
    "B3": lambda: CoxeterMatrix.type_b(3),
    "B4": lambda: CoxeterMatrix.type_b(4),
    "A1xA1": lambda: CoxeterMatrix.dihedral(2),
}


@lru_cache(maxsize=None)
def group(name: str) -> CoxeterSystem:
    if name.startswith("I2_"):
        return CoxeterSystem.from_matrix(CoxeterMatrix.dihedral(int(name[3:])))
    return CoxeterSystem.from_matrix(TYPES[name]())


@lru_cache(maxsize=None)
def all_contexts(name: str):
    """Every valid (I, J) pair of a small group, built once."""
    W = group(name)
    out = []
    for I in weak_ideals(W):
        for J in subsets(W.rank):
            try:
                out.append(build_context(W, I, J))
            except IdealError:
                pass
    return tuple(out)


@lru_cache(maxsize=None)
def verified_contexts(name: str):
    return tuple(c for c in all_contexts(name) if is_wgraph_ideal(c).ok)


def w(W: CoxeterSystem, text: str) -> int:
    return W.parse_word(text)


def ws(W: CoxeterSystem, *texts: str) -> frozenset[int]:
    return frozenset(W.parse_word(t) for t in texts)


def verified_of(W: CoxeterSystem) -> list:
    """Verified (I, J) contexts of an arbitrary small system."""
    out = []
    for I in weak_ideals(W):
        for J in subsets(W.rank):
            try:
                ctx = build_context(W, I, J)
            except IdealError:
                continue
            if is_wgraph_ideal(ctx).ok:
                out.append(ctx)
    return out
