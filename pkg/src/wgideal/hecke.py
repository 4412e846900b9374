"""The Hecke algebra in its T-basis, with T_s^2 = 1 + (q - q^-1) T_s."""

from __future__ import annotations

from typing import Iterable, Mapping

from .coxeter import CoxeterSystem
from .laurent import ONE, Q_MINUS_QINV, ZERO, LaurentPoly


class HeckeElt:
    """Sparse linear combination of T_w; zero coefficients are never stored."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, LaurentPoly] | None = None):
        self.coeffs: dict[int, LaurentPoly] = {w: p for w, p in (coeffs or {}).items() if p}

    @classmethod
    def basis(cls, w: int, coeff: LaurentPoly = ONE) -> HeckeElt:
        return cls({w: coeff})

    def __add__(self, other: HeckeElt) -> HeckeElt:
        out = dict(self.coeffs)
        for w, p in other.coeffs.items():
            out[w] = out.get(w, ZERO) + p
        return HeckeElt(out)

    def __sub__(self, other: HeckeElt) -> HeckeElt:
        return self + other.scale(LaurentPoly.const(-1))

    def scale(self, p: LaurentPoly) -> HeckeElt:
        return HeckeElt({w: c * p for w, c in self.coeffs.items()})

    def bar_coeffs(self) -> HeckeElt:
        return HeckeElt({w: c.bar() for w, c in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self) -> str:
        terms = ", ".join(f"{w}: {p}" for w, p in sorted(self.coeffs.items()))
        return f"HeckeElt({{{terms}}})"

    def render(self, sys: CoxeterSystem) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({p})T_{sys.word_str(w)}" for w, p in sorted(self.coeffs.items()))


def t_mul_left(sys: CoxeterSystem, s: int, h: HeckeElt) -> HeckeElt:
    out: dict[int, LaurentPoly] = {}
    for w, p in h.coeffs.items():
        sw = sys.left_mul[w][s]
        out[sw] = out.get(sw, ZERO) + p
        if sys.length(sw) < sys.length(w):
            out[w] = out.get(w, ZERO) + p * Q_MINUS_QINV
    return HeckeElt(out)


def t_mul_right(sys: CoxeterSystem, h: HeckeElt, s: int) -> HeckeElt:
    out: dict[int, LaurentPoly] = {}
    for w, p in h.coeffs.items():
        ws = sys.right_mul[w][s]
        out[ws] = out.get(ws, ZERO) + p
        if sys.length(ws) < sys.length(w):
            out[w] = out.get(w, ZERO) + p * Q_MINUS_QINV
    return HeckeElt(out)


def t_word(sys: CoxeterSystem, w: int) -> HeckeElt:
    h = HeckeElt.basis(0)
    for x in sys.words[w]:
        h = t_mul_right(sys, h, x)
    return h


def t_gens_product(sys: CoxeterSystem, gens: Iterable[int]) -> HeckeElt:
    """T_{s1} T_{s2} ... for an arbitrary (possibly unreduced) sequence."""
    h = HeckeElt.basis(0)
    for x in gens:
        h = t_mul_right(sys, h, x)
    return h


def mul(sys: CoxeterSystem, g: HeckeElt, h: HeckeElt) -> HeckeElt:
    out = HeckeElt()
    for w, p in g.coeffs.items():
        part = h
        for x in reversed(sys.words[w]):
            part = t_mul_left(sys, x, part)
        out = out + part.scale(p)
    return out


def bar_t_gen_left(sys: CoxeterSystem, s: int, h: HeckeElt) -> HeckeElt:
    """bar(T_s) * h = T_s h - (q - q^-1) h."""
    return t_mul_left(sys, s, h) - h.scale(Q_MINUS_QINV)


def bar_hecke(sys: CoxeterSystem, h: HeckeElt) -> HeckeElt:
    out = HeckeElt()
    for w, p in h.coeffs.items():
        part = HeckeElt.basis(0, p.bar())
        for x in reversed(sys.words[w]):
            part = bar_t_gen_left(sys, x, part)
        out = out + part
    return out


def flat(sys: CoxeterSystem, h: HeckeElt) -> HeckeElt:
    return HeckeElt({sys.inverse[w]: p for w, p in h.coeffs.items()})
