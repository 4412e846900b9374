"""Finite Coxeter groups, enumerated exactly from the Coxeter matrix.

Elements are dense ids in (length, ShortLex word) order, so id 0 is the
identity.  Multiplication by generators on either side is a table lookup.

>>> W = CoxeterSystem.from_matrix(CoxeterMatrix.dihedral(3))
>>> W.order, W.length(W.longest), W.word_str(W.longest)
(6, 3, 'sts')
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

DEFAULT_CAP = 2_000_000


class InvalidMatrix(ValueError):
    pass


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class CoxeterMatrix:
    labels: tuple[str, ...]
    m: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        if n == 0:
            raise InvalidMatrix("rank must be positive")
        if len(set(self.labels)) != n or any(not isinstance(x, str) or not x for x in self.labels):
            raise InvalidMatrix("labels must be distinct nonempty strings")
        if len(self.m) != n or any(len(row) != n for row in self.m):
            raise InvalidMatrix("matrix must be rank x rank")
        for i in range(n):
            for j in range(n):
                v = self.m[i][j]
                if not isinstance(v, int) or isinstance(v, bool):
                    raise InvalidMatrix(f"entry ({i},{j}) is not an integer")
                if i == j and v != 1:
                    raise InvalidMatrix(f"diagonal entry ({i},{i}) must be 1")
                if i != j and v < 2:
                    raise InvalidMatrix(f"off-diagonal entry ({i},{j}) must be >= 2")
                if v != self.m[j][i]:
                    raise InvalidMatrix(f"matrix is not symmetric at ({i},{j})")

    @property
    def rank(self) -> int:
        return len(self.labels)

    @classmethod
    def from_lists(cls, labels: Sequence[str], m: Sequence[Sequence[int]]) -> CoxeterMatrix:
        try:
            return cls(tuple(labels), tuple(tuple(row) for row in m))
        except TypeError as exc:
            raise InvalidMatrix(str(exc)) from exc

    @classmethod
    def from_json(cls, data) -> CoxeterMatrix:
        if not isinstance(data, dict) or "labels" not in data or "m" not in data:
            raise InvalidMatrix('expected {"labels": [...], "m": [[...]]}')
        if not isinstance(data["labels"], list) or not isinstance(data["m"], list):
            raise InvalidMatrix("labels and m must be lists")
        if any(not isinstance(row, list) for row in data["m"]):
            raise InvalidMatrix("m must be a list of lists")
        return cls.from_lists(data["labels"], data["m"])

    @classmethod
    def load(cls, path: str | Path) -> CoxeterMatrix:
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise InvalidMatrix(f"not valid JSON: {exc}") from exc
        return cls.from_json(data)

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "m": [list(r) for r in self.m]}

    @classmethod
    def dihedral(cls, m: int, labels: Sequence[str] = ("s", "t")) -> CoxeterMatrix:
        return cls.from_lists(labels, [[1, m], [m, 1]])

    @classmethod
    def type_a(cls, n: int, prefix: str = "s") -> CoxeterMatrix:
        labels = [f"{prefix}{i + 1}" for i in range(n)]
        m = [[1 if i == j else 3 if abs(i - j) == 1 else 2 for j in range(n)] for i in range(n)]
        return cls.from_lists(labels, m)

    @classmethod
    def type_b(cls, n: int, prefix: str = "s") -> CoxeterMatrix:
        """Labels s0..s(n-1) with m(s0, s1) = 4."""
        labels = [f"{prefix}{i}" for i in range(n)]
        m = [[1 if i == j else 3 if abs(i - j) == 1 else 2 for j in range(n)] for i in range(n)]
        if n >= 2:
            m[0][1] = m[1][0] = 4
        return cls.from_lists(labels, m)

    def restrict(self, gens: Sequence[int]) -> CoxeterMatrix:
        return CoxeterMatrix(tuple(self.labels[i] for i in gens),
                             tuple(tuple(self.m[i][j] for j in gens) for i in gens))


def _todd_coxeter(cm: CoxeterMatrix, cap: int) -> list[list[int]]:
    """HLT coset enumeration over the trivial subgroup; generators are involutions.

    Returns the right-regular table ``table[c][s] = c*s`` on live cosets,
    renumbered densely with coset 0 the identity.
    """
    n = cm.rank
    relators = [[i, j] * cm.m[i][j] for i in range(n) for j in range(i + 1, n)]
    table: list[list[int]] = [[-1] * n]
    parent = [0]

    def rep(c: int) -> int:
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(c: int, x: int) -> int:
        d = len(table)
        if d >= cap:
            raise CapExceeded(f"coset enumeration exceeded cap {cap}")
        table.append([-1] * n)
        parent.append(d)
        table[c][x] = d
        table[d][x] = c
        return d

    def merge(a: int, b: int, queue: list[int]) -> None:
        a, b = rep(a), rep(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            parent[hi] = lo
            queue.append(hi)

    def coincidence(a: int, b: int) -> None:
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(n):
                d = table[g][x]
                if d == -1:
                    continue
                table[d][x] = -1
                mu, nu = rep(g), rep(d)
                if table[mu][x] != -1:
                    merge(nu, table[mu][x], queue)
                elif table[nu][x] != -1:
                    merge(mu, table[nu][x], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x] = mu

    def scan_and_fill(c: int, rel: list[int]) -> None:
        r = len(rel)
        f, i = c, 0
        b, j = c, r - 1
        while True:
            while i <= j and table[f][rel[i]] != -1:
                f = table[f][rel[i]]
                i += 1
            if i > j:
                if f != c:
                    coincidence(f, c)
                return
            while j >= i and table[b][rel[j]] != -1:
                b = table[b][rel[j]]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][rel[i]] = b
                table[b][rel[i]] = f
                return
            define(f, rel[i])

    c = 0
    while c < len(table):
        if parent[c] == c:
            for rel in relators:
                scan_and_fill(c, rel)
                if parent[c] != c:
                    break
            if parent[c] == c:
                for x in range(n):
                    if table[c][x] == -1:
                        define(c, x)
        c += 1

    live = [c for c in range(len(table)) if parent[c] == c]
    index = {c: k for k, c in enumerate(live)}
    return [[index[rep(table[c][x])] for x in range(n)] for c in live]


@dataclass(frozen=True)
class Element:
    id: int
    word: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.word)


@dataclass(eq=False)
class CoxeterSystem:
    matrix: CoxeterMatrix
    words: list[tuple[int, ...]]
    right_mul: list[list[int]]
    left_mul: list[list[int]]
    inverse: list[int]
    bruhat_down: list[int] = field(repr=False)

    @classmethod
    def from_matrix(cls, cm: CoxeterMatrix, cap: int = DEFAULT_CAP) -> CoxeterSystem:
        n = cm.rank
        raw = _todd_coxeter(cm, cap)
        # BFS in generator order: discovery order is (length, ShortLex)
        order = [0]
        words: dict[int, tuple[int, ...]] = {0: ()}
        k = 0
        while k < len(order):
            c = order[k]
            k += 1
            for x in range(n):
                d = raw[c][x]
                if d not in words:
                    words[d] = words[c] + (x,)
                    order.append(d)
        if len(order) != len(raw):
            raise RuntimeError("coset table is not connected")
        if len(order) > cap:
            raise CapExceeded(f"|W| = {len(order)} exceeds cap {cap}")
        newid = {c: i for i, c in enumerate(order)}
        right = [[newid[raw[c][x]] for x in range(n)] for c in order]
        wl = [words[c] for c in order]
        inverse = [0] * len(order)
        for i, w in enumerate(wl):
            v = 0
            for x in reversed(w):
                v = right[v][x]
            inverse[i] = v
        left = [[inverse[right[inverse[i]][x]] for x in range(n)] for i in range(len(order))]
        sys = cls(cm, wl, right, left, inverse, [])
        sys._check_lengths()
        sys.bruhat_down = sys._bruhat_table()
        return sys

    def _check_lengths(self) -> None:
        for w in range(self.order):
            lw = len(self.words[w])
            for x in range(self.rank):
                for v in (self.right_mul[w][x], self.left_mul[w][x]):
                    if abs(len(self.words[v]) - lw) != 1:
                        raise RuntimeError("length table inconsistent")

    def _bruhat_table(self) -> list[int]:
        # u <= w iff min(u, su) <= sw for any left descent s of w,
        # so down(w) = down(sw) united with s.down(sw)
        down = [0] * self.order
        down[0] = 1
        for w in range(1, self.order):
            s = self.words[w][0]
            sw = self.left_mul[w][s]
            prev = down[sw]
            acc = prev
            bits = prev
            lm = self.left_mul
            while bits:
                low = bits & -bits
                u = low.bit_length() - 1
                acc |= 1 << lm[u][s]
                bits ^= low
            down[w] = acc
        return down

    # basic queries

    @property
    def rank(self) -> int:
        return self.matrix.rank

    @property
    def labels(self) -> tuple[str, ...]:
        return self.matrix.labels

    @property
    def order(self) -> int:
        return len(self.words)

    @cached_property
    def longest(self) -> int:
        return self.order - 1

    @cached_property
    def generators(self) -> tuple[int, ...]:
        return tuple(self.right_mul[0][x] for x in range(self.rank))

    def element(self, w: int) -> Element:
        return Element(w, self.words[w])

    def length(self, w: int) -> int:
        return len(self.words[w])

    def word_str(self, w: int, sep: str | None = None) -> str:
        """'1' for the identity; letters joined by sep ('' for one-letter labels, else '.')."""
        if not self.words[w]:
            return "1"
        if sep is None:
            sep = "" if all(len(x) == 1 for x in self.labels) else "."
        return sep.join(self.labels[x] for x in self.words[w])

    def from_word(self, word: Iterable[int]) -> int:
        w = 0
        for x in word:
            w = self.right_mul[w][x]
        return w

    def mul(self, u: int, v: int) -> int:
        w = u
        for x in self.words[v]:
            w = self.right_mul[w][x]
        return w

    def conj(self, d: int, x: int) -> int:
        """d x d^-1."""
        return self.mul(self.mul(d, x), self.inverse[d])

    def descents(self, w: int, side: str = "left") -> frozenset[int]:
        tab = self.left_mul if side == "left" else self.right_mul
        lw = self.length(w)
        return frozenset(x for x in range(self.rank) if self.length(tab[w][x]) < lw)

    def bruhat_leq(self, u: int, w: int) -> bool:
        return bool((self.bruhat_down[w] >> u) & 1)

    def bruhat_lt(self, u: int, w: int) -> bool:
        return u != w and bool((self.bruhat_down[w] >> u) & 1)

    def weak_leq(self, v: int, w: int, side: str = "left") -> bool:
        if side == "right":
            v, w = self.inverse[v], self.inverse[w]
        return self.length(w) == self.length(self.mul(w, self.inverse[v])) + self.length(v)

    # parabolic machinery

    def parabolic_elements(self, K: Iterable[int]) -> list[int]:
        K = sorted(set(K))
        seen = {0}
        queue = deque([0])
        while queue:
            w = queue.popleft()
            for x in K:
                v = self.right_mul[w][x]
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return sorted(seen)

    def parabolic_longest(self, K: Iterable[int]) -> int:
        return max(self.parabolic_elements(K), key=lambda w: (self.length(w), -w))

    def in_min_coset_reps(self, w: int, J: Iterable[int], side: str = "left") -> bool:
        tab = self.right_mul if side == "left" else self.left_mul
        lw = self.length(w)
        return all(self.length(tab[w][x]) > lw for x in J)

    def min_coset_reps(self, J: Iterable[int], side: str = "left") -> list[int]:
        """D_J (side 'left': minimal in wW_J) or D_J^-1 (side 'right')."""
        J = tuple(J)
        return [w for w in range(self.order) if self.in_min_coset_reps(w, J, side)]

    def double_coset_data(self, K: Iterable[int], J: Iterable[int]) -> list[tuple[int, frozenset[int]]]:
        K, J = frozenset(K), frozenset(J)
        gens = self.generators
        gen_index = {g: x for x, g in enumerate(gens)}
        out = []
        for d in range(self.order):
            if self.in_min_coset_reps(d, J, "left") and self.in_min_coset_reps(d, K, "right"):
                dinv = self.inverse[d]
                L = frozenset(x for x in K if gen_index.get(self.mul(self.mul(dinv, gens[x]), d)) in J)
                out.append((d, L))
        return out

    def pos(self, X: Iterable[int]) -> frozenset[int]:
        X = list(X)
        return frozenset(x for x in range(self.rank)
                         if all(self.length(self.right_mul[w][x]) > self.length(w) for w in X))

    def ideal_closure(self, gens: Iterable[int], order: str = "left") -> frozenset[int]:
        """Down-set in left (drop letters on the left) or right weak order."""
        tab = self.left_mul if order == "left" else self.right_mul
        seen = set(gens)
        stack = list(seen)
        while stack:
            w = stack.pop()
            lw = self.length(w)
            for x in range(self.rank):
                v = tab[w][x]
                if self.length(v) < lw and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return frozenset(seen)

    def is_weak_ideal(self, X: Iterable[int], order: str = "left") -> bool:
        X = set(X)
        if not X:
            return False
        tab = self.left_mul if order == "left" else self.right_mul
        return all(tab[w][x] in X for w in X for x in range(self.rank)
                   if self.length(tab[w][x]) < self.length(w))

    def ball(self, k: int) -> frozenset[int]:
        return frozenset(w for w in range(self.order) if self.length(w) <= k)

    def sort_key(self, w: int) -> int:
        # ids are already in (length, ShortLex) order
        return w

    # label helpers

    def gen_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown generator {label!r}") from None

    def subset(self, labels: Iterable[str]) -> frozenset[int]:
        return frozenset(self.gen_index(x) for x in labels)

    def subset_labels(self, J: Iterable[int]) -> list[str]:
        return [self.labels[x] for x in sorted(J)]

    def parse_word(self, text: str) -> int:
        """Parse a word like 's2.s1.s0', 's2 s1 s0' or, with one-letter labels, 'sts'."""
        text = text.strip()
        if text in ("", "1", "e"):
            return 0
        if "." in text or " " in text:
            parts = [p for p in text.replace(".", " ").split() if p]
        elif text in self.labels:
            parts = [text]
        elif all(len(x) == 1 for x in self.labels):
            parts = list(text)
        else:
            raise KeyError(f"cannot split word {text!r}; separate letters with '.'")
        return self.from_word(self.gen_index(p) for p in parts)


@dataclass(eq=False)
class ParabolicSubsystem:
    """W_K enumerated on its own, with ids transported into the ambient group."""

    ambient: CoxeterSystem
    K: tuple[int, ...]
    sys: CoxeterSystem
    embed: list[int]

    @classmethod
    def build(cls, ambient: CoxeterSystem, K: Iterable[int]) -> ParabolicSubsystem:
        K = tuple(sorted(set(K)))
        if not K:
            return cls(ambient, K, _trivial_system(), [0])
        sub = CoxeterSystem.from_matrix(ambient.matrix.restrict(K))
        embed = [ambient.from_word(K[x] for x in w) for w in sub.words]
        for i, w in enumerate(embed):
            if ambient.length(w) != sub.length(i):
                raise RuntimeError("parabolic embedding does not preserve length")
        if len(set(embed)) != len(embed):
            raise RuntimeError("parabolic embedding is not injective")
        return cls(ambient, K, sub, embed)

    @cached_property
    def restrict_map(self) -> dict[int, int]:
        return {w: i for i, w in enumerate(self.embed)}

    def to_sub(self, w: int) -> int:
        return self.restrict_map[w]

    def to_sub_gens(self, L: Iterable[int]) -> frozenset[int]:
        return frozenset(self.K.index(x) for x in L)

    def from_sub_gens(self, L: Iterable[int]) -> frozenset[int]:
        return frozenset(self.K[x] for x in L)


def _trivial_system() -> CoxeterSystem:
    """The trivial group W_∅, modelled with no generators."""
    cm = object.__new__(CoxeterMatrix)
    object.__setattr__(cm, "labels", ())
    object.__setattr__(cm, "m", ())
    return CoxeterSystem(cm, [()], [[]], [[]], [0], [1])
