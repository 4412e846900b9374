"""Integer Laurent polynomials in q and dense matrices over them.

>>> p = LaurentPoly.from_dict({-1: 1, 0: 2, 3: 1})
>>> str(p)
'q^-1 + 2 + q^3'
>>> str(p.bar())
'q^-3 + 2 + q'
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

import numpy as np


class DimensionMismatch(ValueError):
    pass


class LaurentPoly:
    """Element of Z[q, q^-1], stored as a lowest exponent and a trimmed tuple."""

    __slots__ = ("lo", "coeffs", "_hash")

    def __init__(self, lo: int = 0, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        start = 0
        while start < len(cs) and cs[start] == 0:
            start += 1
        end = len(cs)
        while end > start and cs[end - 1] == 0:
            end -= 1
        if start == end:
            self.lo, self.coeffs = 0, ()
        else:
            self.lo, self.coeffs = lo + start, tuple(cs[start:end])
        self._hash = None

    @classmethod
    def from_dict(cls, terms: Mapping[int, int]) -> LaurentPoly:
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return ZERO
        lo, hi = min(terms), max(terms)
        return cls(lo, [terms.get(e, 0) for e in range(lo, hi + 1)])

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls(0, (c,))

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> LaurentPoly:
        return cls(e, (c,))

    @property
    def hi(self) -> int:
        return self.lo + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def terms(self) -> dict[int, int]:
        return {self.lo + i: c for i, c in enumerate(self.coeffs) if c}

    def coeff(self, e: int) -> int:
        i = e - self.lo
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def constant_term(self) -> int:
        return self.coeff(0)

    def bar(self) -> LaurentPoly:
        if not self.coeffs:
            return self
        return LaurentPoly(-self.hi, self.coeffs[::-1])

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by q^k."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.lo + k, self.coeffs)

    def in_A_plus(self) -> bool:
        return not self.coeffs or self.lo >= 0

    def in_qA_plus(self) -> bool:
        return not self.coeffs or self.lo >= 1

    def is_poly_in(self, variable: str = "q") -> bool:
        """True if self lies in Z[q] (variable 'q') or Z[q^2] (variable 'q2')."""
        if not self.in_A_plus():
            return False
        if variable == "q":
            return True
        if variable in ("q2", "q^2", "q²"):
            return all(e % 2 == 0 for e in self.terms())
        raise ValueError(f"unknown variable {variable!r}")

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, np.integer)):
            return LaurentPoly.const(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.lo - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.lo - lo + i] += c
        return LaurentPoly(lo, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        if not self.coeffs:
            return self
        return LaurentPoly(self.lo, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return ZERO
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LaurentPoly(self.lo + other.lo, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self.coeffs) == 1 and self.coeffs[0] in (1, -1):
                return LaurentPoly(-self.lo * -n, (self.coeffs[0] ** -n,))
            raise ValueError("only monomial units can be inverted")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, np.integer)):
            other = LaurentPoly.const(int(other))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.lo == other.lo and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.lo, self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for e, c in sorted(self.terms().items()):
            if e == 0:
                mono = str(abs(c))
            else:
                power = "q" if e == 1 else f"q^{e}"
                mono = power if abs(c) == 1 else f"{abs(c)}{power}"
            if not parts:
                parts.append(mono if c > 0 else "-" + mono)
            else:
                parts.append(("+ " if c > 0 else "- ") + mono)
        return " ".join(parts)

    def to_json(self) -> dict:
        return {"lo": self.lo, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data: Mapping) -> LaurentPoly:
        return cls(int(data["lo"]), [int(c) for c in data["coeffs"]])


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
Q = LaurentPoly.monomial(1)
QINV = LaurentPoly.monomial(-1)
Q_MINUS_QINV = Q - QINV

_INT64_SAFE = 2**62


class PolyMatrix:
    """Dense matrix over Z[q, q^-1].

    Entry (i, j) is ``sum_k data[i, j, k] q^(lo + k)``.  Coefficients are int64
    while a pre-check bounds every product; otherwise the array switches to
    object dtype holding Python ints, so results are exact either way.
    """

    __slots__ = ("data", "lo")

    def __init__(self, data: np.ndarray, lo: int = 0):
        if data.ndim != 3 or data.shape[0] == 0 or data.shape[1] == 0:
            raise DimensionMismatch(f"bad matrix shape {data.shape}")
        self.data = data
        self.lo = lo
        self._trim()

    def _trim(self) -> None:
        d = self.data
        if d.shape[2] == 0:
            self.lo = 0
            return
        nz = np.flatnonzero(np.any(d != 0, axis=(0, 1)))
        if nz.size == 0:
            self.data = d[:, :, :0]
            self.lo = 0
            return
        a, b = int(nz[0]), int(nz[-1]) + 1
        if a or b != d.shape[2]:
            self.data = d[:, :, a:b]
        self.lo += a

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[0], self.data.shape[1]

    @classmethod
    def zeros(cls, rows: int, cols: int) -> PolyMatrix:
        return cls(np.zeros((rows, cols, 0), dtype=np.int64))

    @classmethod
    def identity(cls, n: int) -> PolyMatrix:
        return cls(np.eye(n, dtype=np.int64)[:, :, None])

    @classmethod
    def scalar(cls, n: int, p: LaurentPoly) -> PolyMatrix:
        out = cls.identity(n)
        return out.scale(p)

    @classmethod
    def from_entries(cls, grid: Sequence[Sequence[LaurentPoly | int]]) -> PolyMatrix:
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        polys = [[e if isinstance(e, LaurentPoly) else LaurentPoly.const(int(e)) for e in row] for row in grid]
        if any(len(row) != cols for row in polys):
            raise DimensionMismatch("ragged grid")
        return cls.from_sparse(rows, cols, {(i, j): p for i, row in enumerate(polys) for j, p in enumerate(row)})

    @classmethod
    def from_sparse(cls, rows: int, cols: int, entries: Mapping[tuple[int, int], LaurentPoly]) -> PolyMatrix:
        live = {k: p for k, p in entries.items() if p}
        if not live:
            return cls.zeros(rows, cols)
        lo = min(p.lo for p in live.values())
        hi = max(p.hi for p in live.values())
        big = max(abs(c) for p in live.values() for c in p.coeffs) >= _INT64_SAFE
        data = np.zeros((rows, cols, hi - lo + 1), dtype=object if big else np.int64)
        for (i, j), p in live.items():
            for k, c in enumerate(p.coeffs):
                data[i, j, p.lo - lo + k] = c
        return cls(data, lo)

    def entry(self, i: int, j: int) -> LaurentPoly:
        return LaurentPoly(self.lo, [int(c) for c in self.data[i, j, :]])

    def column(self, j: int) -> dict[int, LaurentPoly]:
        out = {}
        for i in np.flatnonzero(np.any(self.data[:, j, :] != 0, axis=1)):
            out[int(i)] = self.entry(int(i), j)
        return out

    def to_entries(self) -> list[list[LaurentPoly]]:
        r, c = self.shape
        return [[self.entry(i, j) for j in range(c)] for i in range(r)]

    def is_zero(self) -> bool:
        return self.data.shape[2] == 0

    def _maxabs(self) -> int:
        if self.data.shape[2] == 0:
            return 0
        return int(np.max(np.abs(self.data)))

    def _aligned(self, other: PolyMatrix) -> tuple[np.ndarray, np.ndarray, int]:
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")
        if self.is_zero():
            return np.zeros_like(other.data), other.data, other.lo
        if other.is_zero():
            return self.data, np.zeros_like(self.data), self.lo
        lo = min(self.lo, other.lo)
        hi = max(self.lo + self.data.shape[2], other.lo + other.data.shape[2])
        dt = object if object in (self.data.dtype, other.data.dtype) else np.int64
        if dt is np.int64 and self._maxabs() + other._maxabs() >= _INT64_SAFE:
            dt = object
        a = np.zeros(self.shape + (hi - lo,), dtype=dt)
        b = np.zeros_like(a)
        a[:, :, self.lo - lo:self.lo - lo + self.data.shape[2]] = self.data
        b[:, :, other.lo - lo:other.lo - lo + other.data.shape[2]] = other.data
        return a, b, lo

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        a, b, lo = self._aligned(other)
        return PolyMatrix(a + b, lo)

    def __sub__(self, other: PolyMatrix) -> PolyMatrix:
        a, b, lo = self._aligned(other)
        return PolyMatrix(a - b, lo)

    def __neg__(self) -> PolyMatrix:
        return PolyMatrix(-self.data, self.lo)

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        r, inner = self.shape
        inner2, c = other.shape
        if inner != inner2:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        if self.is_zero() or other.is_zero():
            return PolyMatrix.zeros(r, c)
        na, nb = self.data.shape[2], other.data.shape[2]
        a, b = self.data, other.data
        bound = self._maxabs() * other._maxabs() * inner * min(na, nb)
        if bound >= _INT64_SAFE or a.dtype == object or b.dtype == object:
            a, b = a.astype(object), b.astype(object)
        out = np.zeros((r, c, na + nb - 1), dtype=a.dtype)
        # loop over the shorter degree axis; each step is one flat matmul
        if nb <= na:
            at = np.ascontiguousarray(a.transpose(0, 2, 1)).reshape(r * na, inner)
            for j in range(nb):
                prod = (at @ b[:, :, j]).reshape(r, na, c).transpose(0, 2, 1)
                out[:, :, j:j + na] += prod
        else:
            bt = np.ascontiguousarray(b.transpose(0, 2, 1)).reshape(inner, nb * c)
            for i in range(na):
                prod = (a[:, :, i] @ bt).reshape(r, nb, c).transpose(0, 2, 1)
                out[:, :, i:i + nb] += prod
        return PolyMatrix(out, self.lo + other.lo)

    def scale(self, p: LaurentPoly) -> PolyMatrix:
        if not p or self.is_zero():
            return PolyMatrix.zeros(*self.shape)
        return PolyMatrix.scalar_matrix(p, self.shape[0]) @ self

    @staticmethod
    def scalar_matrix(p: LaurentPoly, n: int) -> PolyMatrix:
        big = max(abs(c) for c in p.coeffs) >= _INT64_SAFE
        data = np.zeros((n, n, len(p.coeffs)), dtype=object if big else np.int64)
        for k, c in enumerate(p.coeffs):
            for i in range(n):
                data[i, i, k] = c
        return PolyMatrix(data, p.lo)

    def bar(self) -> PolyMatrix:
        if self.is_zero():
            return self
        return PolyMatrix(self.data[:, :, ::-1].copy(), -(self.lo + self.data.shape[2] - 1))

    def transpose(self) -> PolyMatrix:
        return PolyMatrix(self.data.transpose(1, 0, 2).copy(), self.lo)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> PolyMatrix:
        return PolyMatrix(self.data[np.ix_(list(rows), list(cols))].copy(), self.lo)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.lo == other.lo and self.data.shape == other.data.shape and bool(np.all(self.data == other.data))

    __hash__ = None

    def __repr__(self) -> str:
        rows = ["[" + ", ".join(str(p) for p in row) + "]" for row in self.to_entries()]
        return "PolyMatrix(" + ", ".join(rows) + ")"


def mat_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return a @ b


def mat_add(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return a + b


def mat_eq(a: PolyMatrix, b: PolyMatrix) -> bool:
    return a == b


def alternating_product(a: PolyMatrix, b: PolyMatrix, n: int) -> PolyMatrix:
    """n alternating factors ending in b, so ``...ABAB`` with B rightmost."""
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"{a.shape} and {b.shape}")
    out = PolyMatrix.identity(a.shape[0])
    for i in range(n):
        out = (b if i % 2 == 0 else a) @ out
    return out


def unitriangular_inverse(u: PolyMatrix) -> PolyMatrix:
    """Inverse of an upper unitriangular matrix, by back substitution on columns."""
    n = u.shape[0]
    if u.shape != (n, n):
        raise DimensionMismatch("square matrix required")
    ent = u.to_entries()
    for i in range(n):
        if ent[i][i] != ONE or any(ent[i][j] for j in range(i)):
            raise ValueError("matrix is not upper unitriangular")
    inv: dict[tuple[int, int], LaurentPoly] = {}
    for j in range(n):
        col = [ZERO] * n
        col[j] = ONE
        for i in range(j - 1, -1, -1):
            acc = ZERO
            for k in range(i + 1, j + 1):
                if ent[i][k] and col[k]:
                    acc = acc - ent[i][k] * col[k]
            col[i] = acc
        for i in range(j + 1):
            if col[i]:
                inv[i, j] = col[i]
    return PolyMatrix.from_sparse(n, n, inv)
