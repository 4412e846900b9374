"""Exhaustive rank-2 sweeps compared against the closed-form dihedral classification."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .biideal import biideal_check
from .coxeter import CoxeterMatrix, CoxeterSystem
from .ideal import IdealError, build_context, is_wgraph_ideal


def weak_ideals(sys: CoxeterSystem, order: str = "left") -> list[frozenset[int]]:
    """Every nonempty down-set of the weak order, grown one element at a time."""
    tab = sys.left_mul if order == "left" else sys.right_mul

    def addable(I: frozenset[int], w: int) -> bool:
        lw = sys.length(w)
        return all(tab[w][x] in I for x in range(sys.rank) if sys.length(tab[w][x]) < lw)

    start = frozenset({0})
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for I in frontier:
            for w in range(sys.order):
                if w not in I and addable(I, w):
                    J = I | {w}
                    if J not in seen:
                        seen.add(J)
                        nxt.append(J)
        frontier = nxt
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def subsets(rank: int) -> list[frozenset[int]]:
    return [frozenset(c) for r in range(rank + 1) for c in combinations(range(rank), r)]


def chain(sys: CoxeterSystem, last: int, k: int) -> frozenset[int]:
    """{[..xy]_l : l <= k} where y = last is the rightmost letter."""
    other = 1 - last
    out = set()
    for l in range(k + 1):
        word = [last if (l - 1 - i) % 2 == 0 else other for i in range(l)]
        out.add(sys.from_word(word))
    return frozenset(out)


def dihedral_ideal_predicate(sys: CoxeterSystem, I: frozenset[int], J: frozenset[int]) -> bool:
    m = sys.matrix.m[0][1]
    s, t = 0, 1
    W = frozenset(range(sys.order))
    if J == {s, t}:
        return I == {0}
    if J == {s}:
        if I == frozenset(sys.min_coset_reps({s})):
            return True
        return any(I == chain(sys, t, k) for k in range(m - 1) if m % (k + 2) == 0)
    if J == {t}:
        if I == frozenset(sys.min_coset_reps({t})):
            return True
        return any(I == chain(sys, s, k) for k in range(m - 1) if m % (k + 2) == 0)
    if I == W:
        return True
    return any(I == chain(sys, t, h) | chain(sys, s, k)
               for h in range(m) for k in range(m) if m % (h + 1) == 0 and m % (k + 1) == 0)


def dihedral_biideal_predicate(sys: CoxeterSystem, I: frozenset[int], J: frozenset[int], K: frozenset[int]) -> bool:
    m = sys.matrix.m[0][1]
    s, t = sys.generators
    S = frozenset({0, 1})
    if I == {0}:
        if m % 2 == 0:
            return True
        if J in (frozenset(), S) and K in (frozenset(), S):
            return True
    if J or K:
        return False
    if I == frozenset(range(sys.order)):
        return True
    if any(I == sys.ball(k) for k in range(m) if m % (k + 1) == 0):
        return True
    return m % 2 == 0 and I in ({0, t}, {0, s})


@dataclass
class ClassificationResult:
    m: int
    mode: str
    candidates: int
    accepted: list[tuple] = field(default_factory=list)
    mismatches: list[tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def classify_rank2(m: int, mode: str = "ideal") -> ClassificationResult:
    sys = CoxeterSystem.from_matrix(CoxeterMatrix.dihedral(m))
    gens = subsets(2)
    if mode == "ideal":
        res = ClassificationResult(m, mode, 0)
        for I in weak_ideals(sys, "left"):
            for J in gens:
                res.candidates += 1
                try:
                    ok = is_wgraph_ideal(build_context(sys, I, J), first_only=True).ok
                except IdealError:
                    ok = False
                if ok:
                    res.accepted.append((I, J))
                if ok != dihedral_ideal_predicate(sys, I, J):
                    res.mismatches.append((I, J, ok))
        return res
    if mode == "biideal":
        res = ClassificationResult(m, mode, 0)
        right = set(weak_ideals(sys, "right"))
        for I in weak_ideals(sys, "left"):
            if I not in right:
                continue
            for J in gens:
                for K in gens:
                    res.candidates += 1
                    try:
                        ok = biideal_check(sys, I, J, K).ok
                    except IdealError:
                        ok = False
                    if ok:
                        res.accepted.append((I, J, K))
                    if ok != dihedral_biideal_predicate(sys, I, J, K):
                        res.mismatches.append((I, J, K, ok))
        return res
    raise ValueError(f"unknown mode {mode!r}")
