"""W-graph ideals: descent partitions, the q-polynomial recursion, and verification.

For an ideal I of the left weak order with J inside Pos(I), each w in I splits
the generators into strong/weak ascents and descents.  The polynomials q_{y,w}
are filled in by length, one column at a time, using a fixed strong descent of
each element; their constant terms are the edge weights of the graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .coxeter import CoxeterSystem
from .laurent import ONE, Q, Q_MINUS_QINV, QINV, ZERO, LaurentPoly, PolyMatrix, unitriangular_inverse
from .wgraph import BraidFailure, CellPartition, WGraph, action_matrix, is_closed, kl_preorder, verify_wgraph


class IdealError(ValueError):
    pass


class NotAnIdeal(IdealError):
    pass


class NotInDJ(IdealError):
    pass


class JNotPositive(IdealError):
    pass


class NotWeakAscent(ValueError):
    pass


@dataclass(frozen=True)
class Descents:
    sd: frozenset[int]
    sa: frozenset[int]
    wd: frozenset[int]
    wa: frozenset[int]

    @property
    def D(self) -> frozenset[int]:
        return self.sd | self.wd

    @property
    def A(self) -> frozenset[int]:
        return self.sa | self.wa


@dataclass
class Anomaly:
    y: int
    z: int
    poly: LaurentPoly


@dataclass(eq=False)
class IdealContext:
    sys: CoxeterSystem
    ideal: tuple[int, ...]
    J: frozenset[int]
    index: dict[int, int]
    part: list[Descents]
    q: list[list[LaurentPoly]]
    mu: list[list[int]]
    chosen: list[int | None]
    anomalies: list[Anomaly] = field(default_factory=list)
    _cache: dict = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.ideal)

    def pos(self, w: int) -> int:
        return self.index[w]

    def descents(self, w: int) -> Descents:
        return self.part[self.index[w]]

    def q_poly(self, y: int, w: int) -> LaurentPoly:
        """q_{y,w} for group elements y, w of the ideal."""
        return self.q[self.index[y]][self.index[w]]

    def mu_value(self, y: int, w: int) -> int:
        return self.mu[self.index[y]][self.index[w]]

    def mu_sym(self, i: int, j: int) -> int:
        """Symmetrized edge weight between positions i and j."""
        return self.mu[i][j] or self.mu[j][i]

    def lt(self, i: int, j: int) -> bool:
        """Bruhat y < w between positions."""
        return i != j and self.sys.bruhat_leq(self.ideal[i], self.ideal[j])

    def names(self) -> list[str]:
        return [self.sys.word_str(w) for w in self.ideal]


def descent_partition(sys: CoxeterSystem, ideal: frozenset[int], J: frozenset[int], w: int) -> Descents:
    sd, sa, wd, wa = set(), set(), set(), set()
    lw = sys.length(w)
    for s in range(sys.rank):
        sw = sys.left_mul[w][s]
        if sys.length(sw) < lw:
            sd.add(s)
        elif sw in ideal:
            sa.add(s)
        elif not sys.in_min_coset_reps(sw, J):
            wd.add(s)
        else:
            wa.add(s)
    return Descents(frozenset(sd), frozenset(sa), frozenset(wd), frozenset(wa))


def validate_ideal(sys: CoxeterSystem, ideal: Iterable[int], J: Iterable[int]) -> None:
    ideal, J = frozenset(ideal), frozenset(J)
    if not ideal:
        raise NotAnIdeal("the ideal must be nonempty")
    if any(not 0 <= w < sys.order for w in ideal):
        raise NotAnIdeal("element outside the group")
    if any(not 0 <= x < sys.rank for x in J):
        raise JNotPositive("J must be a set of generators")
    for w in sorted(ideal):
        for s in range(sys.rank):
            sw = sys.left_mul[w][s]
            if sys.length(sw) < sys.length(w) and sw not in ideal:
                raise NotAnIdeal(f"{sys.word_str(w)} is in the set but {sys.word_str(sw)} is not")
    # for a left ideal, I inside D_J is equivalent to J inside Pos(I) = S - I
    for w in sorted(ideal):
        if not sys.in_min_coset_reps(w, J):
            raise NotInDJ(f"{sys.word_str(w)} has a right descent in J")


class _Table:
    """Working state of the recursion, shared by the diagnostic sweep."""

    def __init__(self, sys: CoxeterSystem, ideal: tuple[int, ...], part: list[Descents]):
        self.sys = sys
        self.ideal = ideal
        self.part = part
        n = len(ideal)
        self.index = {w: i for i, w in enumerate(ideal)}
        self.q = [[ZERO] * n for _ in range(n)]
        self.mu = [[0] * n for _ in range(n)]
        down = sys.bruhat_down
        # lower[j]: positions i < j (Bruhat) inside the ideal
        self.lower = [[i for i in range(j) if (down[ideal[j]] >> ideal[i]) & 1] for j in range(n)]
        # mu_out[i]: positions x with mu[i][x] != 0, filled as columns complete
        self.mu_out: list[list[int]] = [[] for _ in range(n)]

    def column(self, z: int, s: int) -> dict[int, LaurentPoly]:
        sys, ideal, part, q, mu = self.sys, self.ideal, self.part, self.q, self.mu
        w = self.index[sys.left_mul[ideal[z]][s]]
        col: dict[int, LaurentPoly] = {}
        wbits = sys.bruhat_down[ideal[w]]
        qw = [q[x][w] for x in range(len(ideal))]
        # candidates x in the sum: y < x < sz with s not in D(x)
        xs = {x for x in self.lower[w] if s not in part[x].D}
        for y in self.lower[z]:
            if y == w:
                col[y] = ONE
                continue
            py = part[y]
            if s in py.sa or s in py.wa:
                col[y] = Q * qw[y]
                continue
            val = ZERO
            if (wbits >> ideal[y]) & 1:
                val = QINV * (LaurentPoly.const(mu[y][w]) - qw[y])
            if s in py.sd:
                val = val + qw[self.index[sys.left_mul[ideal[y]][s]]]
            for x in self.mu_out[y]:
                if x in xs and qw[x]:
                    val = val + LaurentPoly.const(mu[y][x]) * qw[x]
            col[y] = val
        return col

    def store(self, z: int, col: Mapping[int, LaurentPoly]) -> None:
        for y, p in col.items():
            self.q[y][z] = p
            c = p.constant_term()
            self.mu[y][z] = c
            if c:
                self.mu_out[y].append(z)


def build_context(sys: CoxeterSystem, ideal: Iterable[int], J: Iterable[int] = (),
                  choice: Callable[[int, frozenset[int]], int] | None = None) -> IdealContext:
    """Validate (I, J) and run the recursion.  choice(z, SD(z)) overrides the default min."""
    ideal_set, J = frozenset(ideal), frozenset(J)
    validate_ideal(sys, ideal_set, J)
    order = tuple(sorted(ideal_set))
    part = [descent_partition(sys, ideal_set, J, w) for w in order]
    tab = _Table(sys, order, part)
    chosen: list[int | None] = [None] * len(order)
    anomalies: list[Anomaly] = []
    for z in range(1, len(order)):
        sd = part[z].sd
        s = choice(order[z], sd) if choice else min(sd)
        chosen[z] = s
        col = tab.column(z, s)
        for y, p in col.items():
            if not p.in_A_plus():
                anomalies.append(Anomaly(order[y], order[z], p))
        tab.store(z, col)
    return IdealContext(sys, order, J, tab.index, part, tab.q, tab.mu, chosen, anomalies)


def build_graph_from_ideal(ctx: IdealContext) -> WGraph:
    if "graph" in ctx._cache:
        return ctx._cache["graph"]
    n = len(ctx)
    mu = {}
    for i in range(n):
        for j in range(n):
            if i != j and ctx.mu_sym(i, j):
                mu[i, j] = ctx.mu_sym(i, j)
    g = WGraph(ctx.sys.matrix, ctx.names(), [p.D for p in ctx.part], mu, list(ctx.ideal))
    ctx._cache["graph"] = g
    return g


def main1_matrix(ctx: IdealContext, s: int) -> PolyMatrix:
    """The action of T_s on the c-basis as predicted by the ideal data alone."""
    sys, n = ctx.sys, len(ctx)
    entries: dict[tuple[int, int], LaurentPoly] = {}
    for w in range(n):
        pw = ctx.part[w]
        if s in pw.D:
            entries[w, w] = -QINV
            continue
        entries[w, w] = Q
        if s in pw.sa:
            entries[ctx.index[sys.left_mul[ctx.ideal[w]][s]], w] = ONE
        for y in range(w):
            if ctx.mu[y][w] and s in ctx.part[y].D and ctx.lt(y, w):
                entries[y, w] = entries.get((y, w), ZERO) + LaurentPoly.const(ctx.mu[y][w])
    return PolyMatrix.from_sparse(n, n, entries)


@dataclass
class IdealReport:
    ok: bool
    braid_failures: list[BraidFailure]
    main1_violations: list[tuple[int, int]]
    long_edge_violations: list[tuple[int, int]]
    anomalies: list[Anomaly]
    quadratic_ok: bool


def long_edge_violations(ctx: IdealContext) -> list[tuple[int, int]]:
    """Pairs y < w with l(w) - l(y) > 1 and mu != 0 but D(w) not inside D(y)."""
    out = []
    sys = ctx.sys
    for w in range(len(ctx)):
        for y in range(w):
            if ctx.mu[y][w] and sys.length(ctx.ideal[w]) - sys.length(ctx.ideal[y]) > 1:
                if not ctx.part[w].D <= ctx.part[y].D:
                    out.append((ctx.ideal[y], ctx.ideal[w]))
    return out


def is_wgraph_ideal(ctx: IdealContext, first_only: bool = False) -> IdealReport:
    if "report" in ctx._cache:
        return ctx._cache["report"]
    g = build_graph_from_ideal(ctx)
    ver = verify_wgraph(g, first_only=first_only)
    main1 = []
    for s in range(ctx.sys.rank):
        diff = main1_matrix(ctx, s) - action_matrix(g, s)
        main1 += [(s, ctx.ideal[j]) for j in range(len(ctx)) if diff.column(j)]
    longv = long_edge_violations(ctx)
    ok = ver.ok and not main1 and not longv and not ctx.anomalies
    rep = IdealReport(ok, ver.failures, main1, longv, list(ctx.anomalies), ver.quadratic_ok)
    if not first_only:
        ctx._cache["report"] = rep
    return rep


def is_verified(ctx: IdealContext) -> bool:
    return is_wgraph_ideal(ctx).ok


# change of basis

def standard_basis_matrix(ctx: IdealContext) -> PolyMatrix:
    """Column w holds b_w = c_w + q sum_{y<w} q_{y,w} c_y in c-coordinates."""
    if "P" not in ctx._cache:
        n = len(ctx)
        entries = {(i, i): ONE for i in range(n)}
        for j in range(n):
            for i in range(j):
                if ctx.q[i][j]:
                    entries[i, j] = Q * ctx.q[i][j]
        ctx._cache["P"] = PolyMatrix.from_sparse(n, n, entries)
    return ctx._cache["P"]


def inverse_standard_basis_matrix(ctx: IdealContext) -> PolyMatrix:
    """Column w holds c_w in b-coordinates."""
    if "Pinv" not in ctx._cache:
        ctx._cache["Pinv"] = unitriangular_inverse(standard_basis_matrix(ctx))
    return ctx._cache["Pinv"]


def p_poly(ctx: IdealContext, y: int, w: int) -> LaurentPoly:
    """p_{y,w} from c_w = b_w - q sum_{y<w} p_{y,w} b_y (group elements y != w)."""
    entry = inverse_standard_basis_matrix(ctx).entry(ctx.index[y], ctx.index[w])
    return (-entry).shift(-1)


def c_action_matrix(ctx: IdealContext, s: int) -> PolyMatrix:
    return action_matrix(build_graph_from_ideal(ctx), s)


def b_action_matrix(ctx: IdealContext, s: int) -> PolyMatrix:
    key = ("Lb", s)
    if key not in ctx._cache:
        ctx._cache[key] = inverse_standard_basis_matrix(ctx) @ c_action_matrix(ctx, s) @ standard_basis_matrix(ctx)
    return ctx._cache[key]


def r_polynomials(ctx: IdealContext, w: int, s: int) -> dict[int, LaurentPoly]:
    """r^s_{y,w} from T_s b_w = q b_w - sum_y r^s_{y,w} b_y, keyed by group element."""
    j = ctx.index[w]
    if s not in ctx.part[j].wa:
        raise NotWeakAscent(f"{ctx.sys.labels[s]} is not a weak ascent of {ctx.sys.word_str(w)}")
    col = b_action_matrix(ctx, s).column(j)
    out = {}
    for i, p in col.items():
        r = (Q - p) if i == j else -p
        if r:
            out[ctx.ideal[i]] = r
    return out


def expected_b_action(ctx: IdealContext, s: int, w: int) -> dict[int, LaurentPoly] | None:
    """T_s b_w in b-coordinates for the three cases without r-polynomials (None for WA)."""
    j = ctx.index[w]
    pw = ctx.part[j]
    sw = ctx.sys.left_mul[w][s]
    if s in pw.sa:
        return {ctx.index[sw]: ONE}
    if s in pw.sd:
        return {ctx.index[sw]: ONE, j: Q_MINUS_QINV}
    if s in pw.wd:
        return {j: -QINV}
    return None


def check_bar_compatibility(ctx: IdealContext) -> bool:
    """bar(T_s b) = bar(T_s) bar(b) for every b_w, with bar fixing each c_w."""
    n = len(ctx)
    P = standard_basis_matrix(ctx)
    Pbar = P.bar()
    shift = PolyMatrix.scalar(n, Q_MINUS_QINV)
    for s in range(ctx.sys.rank):
        M = c_action_matrix(ctx, s)
        if (M @ P).bar() != (M - shift) @ Pbar:
            return False
    return True


# diagnostics

@dataclass
class ChoiceDisagreement:
    z: int
    s: int
    y: int
    default: LaurentPoly
    alternative: LaurentPoly


def choice_sweep(ctx: IdealContext) -> list[ChoiceDisagreement]:
    """Recompute every column with each other strong descent, against the default table."""
    tab = _Table(ctx.sys, ctx.ideal, ctx.part)
    tab.q, tab.mu = ctx.q, ctx.mu
    for z in range(len(ctx)):
        for y in range(z):
            if ctx.mu[y][z]:
                tab.mu_out[y].append(z)
    out = []
    for z in range(1, len(ctx)):
        for s in sorted(ctx.part[z].sd - {ctx.chosen[z]}):
            col = tab.column(z, s)
            for y in tab.lower[z]:
                if col.get(y, ZERO) != ctx.q[y][z]:
                    out.append(ChoiceDisagreement(ctx.ideal[z], s, ctx.ideal[y], ctx.q[y][z], col.get(y, ZERO)))
    return out


# the regular case

@dataclass
class ParabolicFacts:
    K: frozenset[int]
    longest: int
    DK: frozenset[int]
    DKwK: frozenset[int]
    DK_union_of_cells: bool
    DKwK_union_of_cells: bool
    complement_of_DK_closed: bool
    DKwK_closed: bool


@dataclass
class KLRecord:
    ctx: IdealContext
    verified: bool
    c_longest: dict[int, LaurentPoly]
    formula_ok: bool
    cells: CellPartition
    parabolics: list[ParabolicFacts]


def regular_context(sys: CoxeterSystem) -> IdealContext:
    return build_context(sys, range(sys.order), ())


def c_in_t_basis(ctx: IdealContext, w: int) -> dict[int, LaurentPoly]:
    """For (W, empty) the b-basis is the T-basis, so c_w is a column of P^-1."""
    col = inverse_standard_basis_matrix(ctx).column(ctx.index[w])
    return {ctx.ideal[i]: p for i, p in col.items()}


def _union_of_cells(cells: CellPartition, X: frozenset[int]) -> bool:
    return all(all(v in X for v in c) or not any(v in X for v in c) for c in cells.cells)


def kl_special_cases(sys: CoxeterSystem) -> KLRecord:
    from itertools import combinations

    ctx = regular_context(sys)
    rep = is_wgraph_ideal(ctx)
    top = sys.longest
    lt = sys.length(top)
    expansion = c_in_t_basis(ctx, top)
    expected = {w: LaurentPoly.monomial(lt - sys.length(w), (-1) ** (lt - sys.length(w))) for w in range(sys.order)}
    g = build_graph_from_ideal(ctx)
    cells = kl_preorder(g)
    facts = []
    for r in range(sys.rank + 1):
        for K in combinations(range(sys.rank), r):
            wk = sys.parabolic_longest(K)
            dk = frozenset(sys.min_coset_reps(K))
            dkwk = frozenset(sys.mul(d, wk) for d in dk)
            facts.append(ParabolicFacts(
                frozenset(K), wk, dk, dkwk,
                _union_of_cells(cells, dk), _union_of_cells(cells, dkwk),
                is_closed(g, [ctx.index[w] for w in range(sys.order) if w not in dk]),
                is_closed(g, [ctx.index[w] for w in dkwk]),
            ))
    return KLRecord(ctx, rep.ok, expansion, expansion == expected, cells, facts)
