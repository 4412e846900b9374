"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import json
import os
import subprocess
import sys
import time
from itertools import combinations

import pytest

from helpers import group, verified_contexts, verified_of, ws
from wgideal.biideal import biideal_check
from wgideal.classify import chain, classify_rank2
from wgideal.coxeter import ParabolicSubsystem
from wgideal.ideal import (
    b_action_matrix, build_context, build_graph_from_ideal, check_bar_compatibility, expected_b_action,
    is_wgraph_ideal, kl_special_cases, long_edge_violations, r_polynomials, standard_basis_matrix,
)
from wgideal.laurent import ONE, ZERO, LaurentPoly
from wgideal.parabolic import (
    deodhar_check, induce_ideal, induced_strong_subideal_check, restrict_ideal, strong_subideals,
)
from wgideal.wgraph import kl_preorder, verify_wgraph, with_edges


@pytest.fixture
def verdict(capsys):
    def emit(n: int, ok: bool, what: str, detail: str = "") -> None:
        with capsys.disabled():
            line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {what}"
            print("\n" + line + (f" ({detail})" if detail else ""))
        assert ok, detail or what
    return emit


def all_K(W):
    return [frozenset(c) for r in range(W.rank + 1) for c in combinations(range(W.rank), r)]


def test_criterion_1_rank2_ideals(verdict):
    start = time.perf_counter()
    bad = {}
    for m in range(2, 11):
        res = classify_rank2(m, "ideal")
        if not res.ok:
            bad[m] = len(res.mismatches)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    verdict(1, ok, "rank-2 ideal classification, m = 2..10", f"mismatches {bad}, {elapsed:.1f}s")


def test_criterion_2_rank2_biideals(verdict):
    start = time.perf_counter()
    bad = {}
    for m in range(2, 9):
        res = classify_rank2(m, "biideal")
        if not res.ok:
            bad[m] = len(res.mismatches)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30
    verdict(2, ok, "rank-2 biideal classification, m = 2..8", f"mismatches {bad}, {elapsed:.1f}s")


def test_criterion_3_b4_counterexample(verdict):
    W = group("B4")
    ctx = build_context(W, ws(W, "1", "s0", "s1.s0", "s2.s1.s0"), {1, 2, 3})
    g = build_graph_from_ideal(ctx)
    rep = is_wgraph_ideal(ctx)
    path = {(i, i + 1) for i in range(3)} | {(i + 1, i) for i in range(3)}
    checks = [
        g.tau == [frozenset({1, 2, 3}), frozenset({0, 2, 3}), frozenset({1, 3}), frozenset({1, 2})],
        set(g.mu) == path and set(g.mu.values()) == {1},
        ctx.q_poly(0, W.parse_word("s1.s0")) == ZERO,
        not rep.ok,
        [(f.s, f.t) for f in rep.braid_failures] == [(0, 3)],
        verify_wgraph(with_edges(g, {(0, 3): -1, (3, 0): -1})).ok,
    ]
    verdict(3, all(checks), "B4 counterexample and its mu = -1 repair", f"checks {checks}")


def test_criterion_4_kl_regular_case(verdict):
    failures = []
    for name in ["A2", "B2", "A3"] + [f"I2_{m}" for m in range(2, 9)]:
        W = group(name)
        rec = kl_special_cases(W)
        if not (rec.verified and rec.formula_ok):
            failures.append((name, "regular"))
        if not biideal_check(W, range(W.order), (), ()).ok:
            failures.append((name, "biideal"))
        ctx = rec.ctx
        inv = W.inverse
        if any(ctx.q_poly(inv[y], inv[z]) != ctx.q_poly(y, z) for y in range(W.order) for z in range(W.order)):
            failures.append((name, "inverse symmetry"))
    verdict(4, not failures, "Kazhdan-Lusztig regular case", f"failures {failures}")


def test_criterion_5_deodhar(verdict):
    failures = []
    for name in ["A2", "B2", "A3"]:
        W = group(name)
        for K in all_K(W):
            rep = deodhar_check(W, K)
            if not (rep.q_ok and rep.mu_ok and rep.tau_ok):
                failures.append((name, W.subset_labels(K), len(rep.q_mismatches)))
    verdict(5, not failures, "q, mu and tau agreement between (D_K, K) and (W, empty)",
            f"q mismatches (group, K, count): {failures}")


def test_criterion_6_restriction(verdict):
    failures = []
    for name in ["A2", "B2", "I2_6"]:
        W = group(name)
        for ctx in verified_contexts(name):
            for K in all_K(W):
                pieces = restrict_ideal(ctx, K)
                covered = [W.mul(v, p.d) for p in pieces for v in p.Id]
                if sorted(covered) != sorted(ctx.ideal) or not all(p.verified for p in pieces):
                    failures.append((name, W.word_str(max(ctx.ideal)), W.subset_labels(K)))
    verdict(6, not failures, "restriction pieces verify and tile the ideal", f"failures {failures}")


def test_criterion_7_induction(verdict):
    failures = []
    pairs = 0
    for name in ["A3", "B2"]:
        W = group(name)
        for K in all_K(W):
            if len(K) != 2:
                continue
            sub = ParabolicSubsystem.build(W, K)
            for inner in verified_of(sub.sys):
                el = [sub.embed[v] for v in inner.ideal]
                J = sub.from_sub_gens(inner.J)
                if not is_wgraph_ideal(induce_ideal(W, K, el, J, sub)).ok:
                    failures.append((name, W.subset_labels(K), "induced"))
                for L in strong_subideals(inner):
                    if L:
                        pairs += 1
                        if not induced_strong_subideal_check(W, K, el, [sub.embed[v] for v in L], J):
                            failures.append((name, W.subset_labels(K), "strong"))
    verdict(7, not failures and pairs > 0, "induced ideals and induced strong subideals", f"{pairs} strong pairs, failures {failures}")


def property_failures(ctx) -> list[str]:
    W = ctx.sys
    out = []
    n = len(ctx)
    S = frozenset(range(W.rank))
    for p in ctx.part:
        if p.sd | p.sa | p.wd | p.wa != S or sum(map(len, (p.sd, p.sa, p.wd, p.wa))) != W.rank:
            out.append("partition")
    for j, z in enumerate(ctx.ideal):
        for i, y in enumerate(ctx.ideal[:j]):
            q = ctx.q[i][j]
            if (W.length(z) - W.length(y)) % 2:
                if not q.is_poly_in("q2"):
                    out.append("parity")
            elif ctx.mu[i][j] or not q.shift(-1).is_poly_in("q2"):
                out.append("parity")
            if q and any(s not in ctx.part[i].D for s in ctx.part[j].wd):
                out.append("weak descent vanishing")
    if n <= 50:
        part = kl_preorder(build_graph_from_ideal(ctx))
        for i, x in enumerate(ctx.ideal):
            for j, y in enumerate(ctx.ideal):
                if W.weak_leq(x, y) and not part.vertex_leq(j, i):
                    out.append("left order")
    if long_edge_violations(ctx):
        out.append("long edges")
    for s in range(W.rank):
        M = b_action_matrix(ctx, s)
        for j, z in enumerate(ctx.ideal):
            exp = expected_b_action(ctx, s, z)
            if exp is not None:
                if M.column(j) != exp:
                    out.append("b-action")
                continue
            r = r_polynomials(ctx, z, s)
            if z in r or not all(p.in_qA_plus() for p in r.values()):
                out.append("r-polynomials")
    if not check_bar_compatibility(ctx):
        out.append("bar")
    return out


def uniform_failures(m: int) -> list:
    W = group(f"I2_{m}")
    out = []
    for h in range(m):
        for k in range(m):
            ctx = build_context(W, chain(W, 1, h) | chain(W, 0, k))
            if not is_wgraph_ideal(ctx).ok:
                continue
            P = standard_basis_matrix(ctx)
            for z in ctx.ideal:
                if W.length(z) > min(h, k) + 1:
                    continue
                expect = {ctx.pos(x): LaurentPoly.monomial(W.length(z) - W.length(x))
                          for x in ctx.ideal if W.length(x) < W.length(z)}
                expect[ctx.pos(z)] = ONE
                if P.column(ctx.pos(z)) != expect:
                    out.append((m, h, k, W.word_str(z)))
    return out


def test_criterion_8_property_suites(verdict):
    failures = []
    count = 0
    for name in ["A2", "B2", "I2_6", "A3"] + [f"I2_{m}" for m in range(2, 9)]:
        for ctx in verified_contexts(name):
            count += 1
            for f in property_failures(ctx):
                failures.append((name, f))
    for m in range(2, 9):
        failures += uniform_failures(m)
    verdict(8, not failures, "property suites", f"{count} contexts, failures {sorted(set(failures))[:10]}")


COMMANDS = [
    ["verify", "--type", "B4", "--ideal", "words:[1, s0, s1.s0, s2.s1.s0]", "--j", "s1,s2,s3", "--diagnose-choices"],
    ["cells", "--type", "A3", "--ideal", "W"],
    ["restrict", "--type", "I2(3)", "--ideal", "words:[1,s,t,st,ts]", "--k", "s"],
    ["biideal", "--type", "I2(6)", "--ideal", "ball:1"],
    ["kl", "--type", "B2"],
    ["classify-rank2", "biideal", "--m", "4"],
]


def test_criterion_9_determinism(verdict):
    differing = []
    for argv in COMMANDS:
        outs = []
        for seed in ("0", "1", "12345"):
            env = dict(os.environ, PYTHONHASHSEED=seed)
            res = subprocess.run([sys.executable, "-m", "wgideal", *argv], capture_output=True, env=env)
            outs.append(res.stdout)
        if len(set(outs)) != 1 or not outs[0]:
            differing.append(argv[0])
        json.loads(outs[0])
    verdict(9, not differing, "byte-identical JSON across runs and hash seeds", f"differing {differing}")
