"""Right ideals via inversion, the bimodule test, and two-sided graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .coxeter import CoxeterMatrix, CoxeterSystem
from .ideal import IdealContext, b_action_matrix, build_context, build_graph_from_ideal, is_wgraph_ideal
from .laurent import LaurentPoly, PolyMatrix
from .parabolic import NotContained
from .wgraph import CellPartition, WGraph, is_closed, kl_preorder


class NotABiideal(ValueError):
    pass


def right_ideal_check(sys: CoxeterSystem, ideal: Iterable[int], K: Iterable[int]) -> bool:
    ctx = build_context(sys, [sys.inverse[w] for w in ideal], K)
    return is_wgraph_ideal(ctx).ok


@dataclass
class Witness:
    s: int
    t: int
    vertex: int
    left_then_right: dict[int, LaurentPoly]
    right_then_left: dict[int, LaurentPoly]


@dataclass(eq=False)
class BiidealContext:
    sys: CoxeterSystem
    J: frozenset[int]
    K: frozenset[int]
    left: IdealContext | None
    right: IdealContext | None
    perm: list[int]
    left_action: list[PolyMatrix]
    right_action: list[PolyMatrix]
    prefilter_ok: bool
    left_ok: bool
    right_ok: bool
    bimodule_ok: bool
    witness: Witness | None

    @property
    def ok(self) -> bool:
        return self.prefilter_ok and self.left_ok and self.right_ok and self.bimodule_ok

    @property
    def ideal(self) -> tuple[int, ...]:
        return self.left.ideal if self.left else ()


def _generators_used(sys: CoxeterSystem, ideal: Iterable[int]) -> frozenset[int]:
    return frozenset(x for w in ideal for x in sys.words[w])


def biideal_check(sys: CoxeterSystem, ideal: Iterable[int], J: Iterable[int], K: Iterable[int]) -> BiidealContext:
    ideal, J, K = frozenset(ideal), frozenset(J), frozenset(K)
    if _generators_used(sys, ideal) & (J | K):
        return BiidealContext(sys, J, K, None, None, [], [], [], False, False, False, False, None)
    left = build_context(sys, ideal, J)
    right = build_context(sys, [sys.inverse[w] for w in ideal], K)
    left_ok = is_wgraph_ideal(left).ok
    right_ok = is_wgraph_ideal(right).ok
    perm = [right.index[sys.inverse[w]] for w in left.ideal]
    if not (left_ok and right_ok):
        return BiidealContext(sys, J, K, left, right, perm, [], [], True, left_ok, right_ok, False, None)
    L = [b_action_matrix(left, s) for s in range(sys.rank)]
    R = [b_action_matrix(right, s).submatrix(perm, perm) for s in range(sys.rank)]
    witness = None
    for s in range(sys.rank):
        for t in range(sys.rank):
            lr = L[s] @ R[t]
            rl = R[t] @ L[s]
            if lr != rl:
                col = next(j for j in range(len(left)) if (lr - rl).column(j))
                witness = Witness(s, t, left.ideal[col], lr.column(col), rl.column(col))
                break
        if witness:
            break
    return BiidealContext(sys, J, K, left, right, perm, L, R, True, True, True, witness is None, witness)


def doubled_matrix(cm: CoxeterMatrix) -> CoxeterMatrix:
    """Coxeter matrix of W x W^op on S and S~, with every cross entry 2."""
    r = cm.rank
    labels = list(cm.labels) + [x + "~" for x in cm.labels]
    m = [[2] * (2 * r) for _ in range(2 * r)]
    for i in range(r):
        for j in range(r):
            m[i][j] = m[i + r][j + r] = cm.m[i][j]
    return CoxeterMatrix.from_lists(labels, m)


def two_sided_graph(bctx: BiidealContext) -> WGraph:
    if not bctx.ok:
        raise NotABiideal("two-sided graph needs a verified biideal")
    left, right, r = bctx.left, bctx.right, bctx.sys.rank
    n = len(left)
    for i in range(n):
        for j in range(n):
            if i != j and left.mu_sym(i, j) != right.mu_sym(bctx.perm[i], bctx.perm[j]):
                raise RuntimeError("left and right edge weights disagree")
    lg = build_graph_from_ideal(left)
    tau = [left.part[i].D | frozenset(x + r for x in right.part[bctx.perm[i]].D) for i in range(n)]
    return WGraph(doubled_matrix(bctx.sys.matrix), list(lg.names), tau, dict(lg.mu), list(left.ideal))


def two_sided_cells(bctx: BiidealContext) -> CellPartition:
    return kl_preorder(two_sided_graph(bctx))


def subbiideal_check(bctx: BiidealContext, L: Iterable[int]) -> bool:
    L = frozenset(L)
    if not L <= set(bctx.ideal):
        raise NotContained("L is not contained in the biideal")
    g = two_sided_graph(bctx)
    rest = [bctx.left.index[w] for w in bctx.ideal if w not in L]
    if not is_closed(g, rest):
        return False
    return biideal_check(bctx.sys, L, bctx.J, bctx.K).ok


def b1_symmetry_holds(bctx: BiidealContext) -> bool:
    """T_w b_1 = b_1 T_w for every w in W, through the action matrices."""
    sys = bctx.sys
    n = len(bctx.left)
    e1 = PolyMatrix.from_sparse(n, 1, {(0, 0): LaurentPoly.const(1)})
    for w in range(sys.order):
        lv = e1
        for x in reversed(sys.words[w]):
            lv = bctx.left_action[x] @ lv
        rv = e1
        for x in sys.words[w]:
            rv = bctx.right_action[x] @ rv
        if lv != rv:
            return False
    return True
