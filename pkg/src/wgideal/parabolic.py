"""Strong subideals, parabolic induction and restriction, and the Deodhar comparison."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .coxeter import CoxeterSystem, ParabolicSubsystem
from .ideal import (
    IdealContext, NotAnIdeal, build_context, build_graph_from_ideal, inverse_standard_basis_matrix,
    is_wgraph_ideal, regular_context,
)
from .laurent import LaurentPoly
from .wgraph import full_subgraph, is_closed, kl_preorder


class NotContained(ValueError):
    pass


class NotACell(ValueError):
    pass


class JNotInK(ValueError):
    pass


class InnerNotVerified(ValueError):
    pass


def _positions(ctx: IdealContext, X: Iterable[int]) -> list[int]:
    return sorted(ctx.index[w] for w in X)


def inherited_subgraph_matches(ctx: IdealContext, L: Iterable[int]) -> bool:
    """Gamma(L, J) equals the full subgraph of Gamma(I, J) on L."""
    L = sorted(L)
    sub = full_subgraph(build_graph_from_ideal(ctx), _positions(ctx, L))
    own = build_graph_from_ideal(build_context(ctx.sys, L, ctx.J))
    return sub.tau == own.tau and sub.mu == own.mu


def strong_subideal_check(ctx: IdealContext, L: Iterable[int]) -> bool:
    L = frozenset(L)
    if not L <= set(ctx.ideal):
        raise NotContained("L is not contained in the ideal")
    if not ctx.sys.is_weak_ideal(L):
        raise NotAnIdeal("L is not an ideal of the left weak order")
    g = build_graph_from_ideal(ctx)
    strong = is_closed(g, _positions(ctx, set(ctx.ideal) - L))
    if strong and not inherited_subgraph_matches(ctx, L):
        raise RuntimeError("strong subideal whose graph is not the inherited subgraph")
    return strong


def cells_of(ctx: IdealContext) -> list[frozenset[int]]:
    """Cells of (I, J) as sets of group elements."""
    part = kl_preorder(build_graph_from_ideal(ctx))
    return [frozenset(ctx.ideal[i] for i in c) for c in part.cells]


def cell_generated_subideal(ctx: IdealContext, X: Iterable[int]) -> frozenset[int]:
    """o(X): every y in I lying above some x in X in the preorder."""
    X = frozenset(X)
    part = kl_preorder(build_graph_from_ideal(ctx))
    pos = _positions(ctx, X)
    if not pos or {part.cell_of[i] for i in pos} != {part.cell_of[pos[0]]} or \
            len(part.cells[part.cell_of[pos[0]]]) != len(pos):
        raise NotACell("X is not a cell")
    c = part.cell_of[pos[0]]
    return frozenset(ctx.ideal[i] for i in range(len(ctx)) if part.cell_leq(c, part.cell_of[i]))


def strong_subideals(ctx: IdealContext) -> list[frozenset[int]]:
    """All strong subideals, as unions of the sets o(X) (includes the empty set)."""
    gens = sorted({cell_generated_subideal(ctx, X) for X in cells_of(ctx)}, key=sorted)
    found = {frozenset()}
    for o in gens:
        found |= {f | o for f in found}
    return sorted(found, key=lambda s: (len(s), sorted(s)))


# induction

def _subcontext(sub: ParabolicSubsystem, inner: Iterable[int], J: Iterable[int]) -> IdealContext:
    return build_context(sub.sys, [sub.to_sub(w) for w in inner], sub.to_sub_gens(J))


def induce_ideal(sys: CoxeterSystem, K: Iterable[int], inner: Iterable[int], J: Iterable[int],
                 sub: ParabolicSubsystem | None = None) -> IdealContext:
    """The context (D_K . inner, J) in W; inner is given as elements of W lying in W_K."""
    K, J, inner = frozenset(K), frozenset(J), frozenset(inner)
    if not J <= K:
        raise JNotInK("J must be a subset of K")
    sub = sub or ParabolicSubsystem.build(sys, K)
    if any(w not in sub.restrict_map for w in inner):
        raise NotContained("inner ideal is not inside W_K")
    if not is_wgraph_ideal(_subcontext(sub, inner, J)).ok:
        raise InnerNotVerified("inner set is not a W_K-graph ideal")
    dk = sys.min_coset_reps(K)
    product = set()
    for d in dk:
        for v in inner:
            dv = sys.mul(d, v)
            if sys.length(dv) != sys.length(d) + sys.length(v):
                raise RuntimeError("lengths do not add in D_K x W_K")
            product.add(dv)
    return build_context(sys, product, J)


@dataclass
class InductionCheck:
    ok: bool
    inner_strong: bool
    induced_strong: bool
    cells_ok: bool

    def __bool__(self) -> bool:
        return self.ok


def induced_strong_subideal_check(sys: CoxeterSystem, K: Iterable[int], inner0: Iterable[int],
                                  innerL: Iterable[int], J: Iterable[int]) -> InductionCheck:
    K, J = frozenset(K), frozenset(J)
    inner0, innerL = frozenset(inner0), frozenset(innerL)
    sub = ParabolicSubsystem.build(sys, K)
    in_ctx = _subcontext(sub, inner0, J)
    inner_strong = strong_subideal_check(in_ctx, [sub.to_sub(w) for w in innerL])
    big = induce_ideal(sys, K, inner0, J, sub)
    dk = sys.min_coset_reps(K)
    induced = {sys.mul(d, v) for d in dk for v in innerL}
    induced_strong = is_wgraph_ideal(big).ok and strong_subideal_check(big, induced)
    # every cell X of the inner ideal induces a union of cells
    big_cells = cells_of(big)
    cells_ok = True
    for X in cells_of(in_ctx):
        DX = {sys.mul(d, sub.embed[x]) for d in dk for x in X}
        if any(c & DX and not c <= DX for c in big_cells):
            cells_ok = False
    ok = (not inner_strong) or (induced_strong and cells_ok)
    return InductionCheck(ok, inner_strong, induced_strong, cells_ok)


# restriction

@dataclass
class RestrictionPiece:
    d: int
    Id: frozenset[int]  # elements of W lying in W_K
    L: frozenset[int]
    ctx: IdealContext = field(repr=False)
    verified: bool


def restrict_ideal(ctx: IdealContext, K: Iterable[int],
                   sub: ParabolicSubsystem | None = None) -> list[RestrictionPiece]:
    sys = ctx.sys
    K = frozenset(K)
    sub = sub or ParabolicSubsystem.build(sys, K)
    gens = sys.generators
    gen_index = {g: x for x, g in enumerate(gens)}
    ideal = set(ctx.ideal)
    pieces = []
    for d in ctx.ideal:  # (length, ShortLex) order extends the Bruhat order
        if not sys.in_min_coset_reps(d, K, "right"):
            continue
        Id = frozenset(v for v in sub.embed if sys.mul(v, d) in ideal)
        dinv = sys.inverse[d]
        L = frozenset(x for x in K if gen_index.get(sys.mul(sys.mul(dinv, gens[x]), d)) in ctx.J)
        pctx = _subcontext(sub, Id, L)
        pieces.append(RestrictionPiece(d, Id, L, pctx, is_wgraph_ideal(pctx).ok))
    return pieces


# the Deodhar comparison

@dataclass
class DeodharReport:
    K: frozenset[int]
    longest: int
    tau_ok: bool
    mu_ok: bool
    p_ok: bool
    q_ok: bool
    scaling_ok: bool
    unsigned_scaling_ok: bool
    q_mismatches: list[tuple[int, int, LaurentPoly, LaurentPoly]]

    @property
    def ok(self) -> bool:
        return self.tau_ok and self.mu_ok and self.p_ok and self.scaling_ok


def deodhar_check(sys: CoxeterSystem, K: Iterable[int], regular: IdealContext | None = None) -> DeodharReport:
    """Compare (D_K, K) with (W, empty) through d -> d w_K.

    Checks tau, mu, the inverse-matrix polynomials p, the q-polynomials, and
    the scaling a_{ev, d w_K} = (-q)^{l(w_K) - l(v)} a_{e w_K, d w_K} for the
    entries a of the c-to-b matrix (unsigned variant reported separately).
    """
    K = frozenset(K)
    ctx0 = regular or regular_context(sys)
    dk = sys.min_coset_reps(K)
    ctxk = build_context(sys, dk, K)
    wk = sys.parabolic_longest(K)
    lwk = sys.length(wk)
    phi = [ctx0.index[sys.mul(d, wk)] for d in ctxk.ideal]
    n = len(ctxk)
    tau_ok = all(ctxk.part[i].D == ctx0.part[phi[i]].D for i in range(n))
    mu_ok = all(ctxk.mu_sym(i, j) == ctx0.mu_sym(phi[i], phi[j]) for i in range(n) for j in range(n) if i != j)
    ak = inverse_standard_basis_matrix(ctxk)
    a0 = inverse_standard_basis_matrix(ctx0)
    p_ok = all(ak.entry(i, j) == a0.entry(phi[i], phi[j]) for i in range(n) for j in range(n))
    mism = []
    for j in range(n):
        for i in range(j):
            qk, q0 = ctxk.q[i][j], ctx0.q[phi[i]][phi[j]]
            if qk != q0:
                mism.append((ctxk.ideal[i], ctxk.ideal[j], qk, q0))
    wkel = sys.parabolic_elements(K)
    scaling_ok = unsigned_ok = True
    for i, e in enumerate(ctxk.ideal):
        for j in range(n):
            base = a0.entry(phi[i], phi[j])
            for v in wkel:
                k = lwk - sys.length(v)
                actual = a0.entry(ctx0.index[sys.mul(e, v)], phi[j])
                if actual != base * LaurentPoly.monomial(k, (-1) ** k):
                    scaling_ok = False
                if actual != base * LaurentPoly.monomial(k):
                    unsigned_ok = False
    return DeodharReport(K, wk, tau_ok, mu_ok, p_ok, not mism, scaling_ok, unsigned_ok, mism)
