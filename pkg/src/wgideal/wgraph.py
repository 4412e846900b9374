"""W-graphs: action matrices, braid verification, the preorder and its cells."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .coxeter import CoxeterMatrix
from .laurent import Q, Q_MINUS_QINV, QINV, LaurentPoly, PolyMatrix, alternating_product


@dataclass(eq=False)
class WGraph:
    coxeter: CoxeterMatrix
    names: list[str]
    tau: list[frozenset[int]]
    mu: dict[tuple[int, int], int]
    tags: list[int | None] = field(default_factory=list)

    def __post_init__(self):
        n = len(self.names)
        if len(self.tau) != n:
            raise ValueError("one colour set per vertex required")
        if not self.tags:
            self.tags = [None] * n
        self.mu = {k: int(v) for k, v in self.mu.items() if v}
        for (u, v) in self.mu:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError(f"bad edge {(u, v)}")
        for t in self.tau:
            if any(not 0 <= x < self.coxeter.rank for x in t):
                raise ValueError("colour outside the generating set")

    @property
    def labels(self) -> tuple[str, ...]:
        return self.coxeter.labels

    @property
    def rank(self) -> int:
        return self.coxeter.rank

    def __len__(self) -> int:
        return len(self.names)

    def mu_of(self, u: int, v: int) -> int:
        return self.mu.get((u, v), 0)

    @cached_property
    def _in_edges(self) -> dict[int, list[tuple[int, int]]]:
        out: dict[int, list[tuple[int, int]]] = {v: [] for v in range(len(self))}
        for (u, v), w in sorted(self.mu.items()):
            out[v].append((u, w))
        return out

    def is_superfluous(self, u: int, v: int) -> bool:
        """The edge u <- v (weight mu(u, v)) is superfluous when tau(u) is inside tau(v)."""
        return self.tau[u] <= self.tau[v]

    def edge_list(self) -> list[tuple[int, int, int]]:
        """(u, v, mu(u, v)) sorted."""
        return [(u, v, w) for (u, v), w in sorted(self.mu.items())]

    def vertex_of_tag(self, tag: int) -> int:
        return self.tags.index(tag)


def action_matrix(g: WGraph, s: int) -> PolyMatrix:
    cache = g.__dict__.setdefault("_action_cache", {})
    if s in cache:
        return cache[s]
    entries: dict[tuple[int, int], LaurentPoly] = {}
    for v in range(len(g)):
        if s in g.tau[v]:
            entries[v, v] = -QINV
        else:
            entries[v, v] = Q
            for u, w in g._in_edges[v]:
                if s in g.tau[u]:
                    entries[u, v] = LaurentPoly.const(w)
    mat = PolyMatrix.from_sparse(len(g), len(g), entries)
    cache[s] = mat
    return mat


@dataclass
class BraidFailure:
    s: int
    t: int
    vertex: int
    lhs: dict[int, LaurentPoly]
    rhs: dict[int, LaurentPoly]


@dataclass
class VerifyReport:
    ok: bool
    failures: list[BraidFailure]
    quadratic_ok: bool


def quadratic_holds(g: WGraph, s: int) -> bool:
    m = action_matrix(g, s)
    n = len(g)
    return m @ m == PolyMatrix.identity(n) + m.scale(Q_MINUS_QINV)


def verify_wgraph(g: WGraph, gens: Iterable[int] | None = None, first_only: bool = False) -> VerifyReport:
    """Braid relations for each pair of generators (restricted to gens if given)."""
    gens = sorted(range(g.rank) if gens is None else set(gens))
    failures: list[BraidFailure] = []
    quad = all(quadratic_holds(g, s) for s in gens)
    for i, s in enumerate(gens):
        for t in gens[i + 1:]:
            m = g.coxeter.m[s][t]
            ms, mt = action_matrix(g, s), action_matrix(g, t)
            lhs = alternating_product(ms, mt, m)
            rhs = alternating_product(mt, ms, m)
            if lhs != rhs:
                diff = lhs - rhs
                col = next(j for j in range(len(g)) if diff.column(j))
                failures.append(BraidFailure(s, t, col, lhs.column(col), rhs.column(col)))
                if first_only:
                    return VerifyReport(False, failures, quad)
    return VerifyReport(quad and not failures, failures, quad)


@dataclass
class CellPartition:
    cell_of: list[int]
    cells: list[tuple[int, ...]]
    below: frozenset[tuple[int, int]]  # (i, j): cell i strictly below cell j

    def cell_leq(self, i: int, j: int) -> bool:
        return i == j or (i, j) in self.below

    def vertex_leq(self, u: int, v: int) -> bool:
        return self.cell_leq(self.cell_of[u], self.cell_of[v])


def preorder_digraph(g: WGraph) -> nx.DiGraph:
    """Arc v -> u for every non-superfluous edge u <- v."""
    dg = nx.DiGraph()
    dg.add_nodes_from(range(len(g)))
    for (u, v) in g.mu:
        if not g.is_superfluous(u, v):
            dg.add_edge(v, u)
    return dg


def kl_preorder(g: WGraph) -> CellPartition:
    dg = preorder_digraph(g)
    cells = sorted(tuple(sorted(c)) for c in nx.strongly_connected_components(dg))
    cell_of = [0] * len(g)
    for i, c in enumerate(cells):
        for v in c:
            cell_of[v] = i
    cond = nx.DiGraph()
    cond.add_nodes_from(range(len(cells)))
    cond.add_edges_from((cell_of[a], cell_of[b]) for a, b in dg.edges if cell_of[a] != cell_of[b])
    below = frozenset((i, j) for j in cond for i in nx.descendants(cond, j))
    return CellPartition(cell_of, cells, below)


def closure(g: WGraph, U: Iterable[int]) -> frozenset[int]:
    dg = preorder_digraph(g)
    out = set(U)
    for v in list(out):
        out |= nx.descendants(dg, v)
    return frozenset(out)


def is_closed(g: WGraph, U: Iterable[int]) -> bool:
    U = frozenset(U)
    return closure(g, U) == U


def restrict_colours(g: WGraph, J: Iterable[int]) -> WGraph:
    J = frozenset(J)
    return WGraph(g.coxeter, list(g.names), [t & J for t in g.tau], dict(g.mu), list(g.tags))


def full_subgraph(g: WGraph, vertices: Sequence[int]) -> WGraph:
    vertices = list(vertices)
    index = {v: i for i, v in enumerate(vertices)}
    mu = {(index[u], index[v]): w for (u, v), w in g.mu.items() if u in index and v in index}
    return WGraph(g.coxeter, [g.names[v] for v in vertices], [g.tau[v] for v in vertices], mu,
                  [g.tags[v] for v in vertices])


def prune_superfluous(g: WGraph) -> WGraph:
    mu = {(u, v): w for (u, v), w in g.mu.items() if not g.is_superfluous(u, v)}
    return WGraph(g.coxeter, list(g.names), list(g.tau), mu, list(g.tags))


def with_edges(g: WGraph, extra: Mapping[tuple[int, int], int]) -> WGraph:
    mu = dict(g.mu)
    mu.update(extra)
    return WGraph(g.coxeter, list(g.names), list(g.tau), mu, list(g.tags))


# serialization

def graph_to_json(g: WGraph) -> dict:
    return {
        "generators": list(g.labels),
        "m": [list(r) for r in g.coxeter.m],
        "vertices": [{"id": i, "word": g.names[i], "tau": [g.labels[x] for x in sorted(g.tau[i])]}
                     for i in range(len(g))],
        "edges": [{"from": v, "to": u, "mu": w} for u, v, w in g.edge_list()],
    }


def graph_from_json(data: Mapping) -> WGraph:
    labels = list(data["generators"])
    if "m" in data:
        cm = CoxeterMatrix.from_lists(labels, data["m"])
    else:
        raise ValueError("graph JSON needs the Coxeter matrix under 'm'")
    ids = [v["id"] for v in data["vertices"]]
    index = {vid: i for i, vid in enumerate(ids)}
    names = [str(v.get("word", v["id"])) for v in data["vertices"]]
    tau = [frozenset(labels.index(x) for x in v["tau"]) for v in data["vertices"]]
    mu = {(index[e["to"]], index[e["from"]]): int(e["mu"]) for e in data["edges"]}
    return WGraph(cm, names, tau, mu)


def graph_to_dot(g: WGraph, name: str = "W") -> str:
    lines = [f"digraph {name} {{"]
    for i in range(len(g)):
        tau = ",".join(g.labels[x] for x in sorted(g.tau[i]))
        lines.append(f'  v{i} [label="{g.names[i]}\\n{{{tau}}}"];')
    for u, v, w in g.edge_list():
        attrs = []
        if w != 1:
            attrs.append(f'label="{w}"')
        if g.is_superfluous(u, v):
            attrs.append("style=dashed")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  v{v} -> v{u}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"

