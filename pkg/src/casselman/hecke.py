"""
The Iwahori-Hecke algebra in the T-basis, with coefficients in a scalar
backend, and the Yang-Baxter elements mu_z(w).

This module is an independent route to m_{u,v}: it never calls the r/m
recursions, only the algebra relations

    T_s^2 = (q-1) T_s + q,      T_x T_s = T_{xs} when xs > x,
    mu_z(s) = q^-1 T_s + (1 - q^-1) z^alpha/(1 - z^alpha),
    mu_z(s w) = mu_z(w) mu_{wz}(s)  when sw > w,  (wz)^lam = z^{w^-1 lam},

followed by m_{u,v} = Lambda(psi_u mu_z(v)), psi_u = sum over x >= u of T_x.
"""

from __future__ import annotations

import functools
from typing import Iterable, Sequence

from .errors import MixedRootSystems, NotComparable
from .klpoly import kl_table
from .symbolics import RatFn, SymbolicScalars
from .weyl import WeylElt, WeylGroup

__all__ = [
    "HeckeAlgebra", "HeckeElt", "symbolic_algebra", "t_mul", "t_inverse",
    "mu_element", "lambda_functional", "m_via_hecke",
]


class HeckeElt:
    """Finite sum of c_w T_w, stored as {dense index: coefficient}."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: "HeckeAlgebra", coeffs: dict):
        F = algebra.scalars
        self.algebra = algebra
        self.coeffs = {w: c for w, c in coeffs.items() if not F.is_zero(c)}

    def _check(self, other: "HeckeElt"):
        if other.algebra.group is not self.algebra.group:
            raise MixedRootSystems("Hecke elements over different Weyl groups")

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out[w] + c if w in out else c
        return HeckeElt(self.algebra, out)

    def __neg__(self) -> "HeckeElt":
        return HeckeElt(self.algebra, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        return self + (-other)

    def scale(self, c) -> "HeckeElt":
        return HeckeElt(self.algebra, {w: c * x for w, x in self.coeffs.items()})

    def __mul__(self, other) -> "HeckeElt":
        if isinstance(other, HeckeElt):
            self._check(other)
            return self.algebra.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "HeckeElt":
        return self.scale(other)

    def coefficient(self, w: int):
        return self.coeffs.get(w, self.algebra.scalars.zero)

    def __eq__(self, other):
        if not isinstance(other, HeckeElt):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coefficient(k) == other.coefficient(k) for k in keys)

    __hash__ = None

    def __str__(self):
        if not self.coeffs:
            return "0"
        g = self.algebra.group
        return " + ".join(f"({c})*T[{g.format(w)}]" for w, c in sorted(self.coeffs.items()))

    def to_json(self) -> list[dict]:
        g = self.algebra.group
        out = []
        for w, c in sorted(self.coeffs.items()):
            out.append({
                "element": g.format(w),
                "coeff": c.to_json() if isinstance(c, RatFn) else int(c),
            })
        return out


class HeckeAlgebra:
    def __init__(self, group: WeylGroup, scalars):
        self.group = group
        self.scalars = scalars
        rs = group.root_system
        self._simple = [rs.simple_root(i) for i in range(rs.rank)]

    def element(self, coeffs: dict) -> HeckeElt:
        return HeckeElt(self, coeffs)

    def zero(self) -> HeckeElt:
        return HeckeElt(self, {})

    def one(self) -> HeckeElt:
        return self.T(0)

    def T(self, w: int) -> HeckeElt:
        return HeckeElt(self, {w: self.scalars.one})

    def right_mul_generator(self, x: HeckeElt, i: int) -> HeckeElt:
        """x T_{s_i}."""
        g = self.group
        F = self.scalars
        q = F.q
        qm1 = q - F.one
        out: dict = {}

        def add(k, c):
            out[k] = out[k] + c if k in out else c

        for w, c in x.coeffs.items():
            ws = int(g.rmul[i, w])
            if g.length[ws] > g.length[w]:
                add(ws, c)
            else:
                add(w, qm1 * c)
                add(ws, q * c)
        return HeckeElt(self, out)

    def mul(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        """Bilinear product, right-multiplying by generators along reduced words."""
        g = self.group
        out = self.zero()
        for y, c in b.coeffs.items():
            part = a
            for i in g.word(y):
                part = self.right_mul_generator(part, i)
            out = out + part.scale(c)
        return out

    def lam(self, x: HeckeElt):
        """Lambda: the coefficient of T_e."""
        return x.coefficient(0)

    def psi(self, u: int) -> HeckeElt:
        F = self.scalars
        leq = self.group.leq
        return HeckeElt(self, {x: F.one for x in range(self.group.order) if leq[u, x]})

    def t_inverse(self, w: int, route: str = "factor") -> HeckeElt:
        """
        T_w^-1 either as T_{s_k}^-1 ... T_{s_1}^-1 for w = s_1 ... s_k, with
        T_s^-1 = q^-1 T_s + (q^-1 - 1), or as
        sum over u <= w of bar(R_{u,w}) q_u^-1 T_{u^-1}.
        """
        g = self.group
        F = self.scalars
        qinv = F.q_pow(-1)
        if route == "factor":
            out = self.one()
            for i in reversed(g.word(w)):
                out = self.right_mul_generator(out, i).scale(qinv) + out.scale(qinv - F.one)
            return out
        if route == "r-formula":
            kl = kl_table(g)
            coeffs = {}
            for u in range(g.order):
                if g.leq[u, w]:
                    rbar = F.from_qpoly(kl.R_poly(u, w).bar())
                    coeffs[int(g.inv[u])] = rbar * F.q_pow(-int(g.length[u]))
            return HeckeElt(self, coeffs)
        raise ValueError(f"unknown route {route!r}")

    def mu_simple(self, i: int, gamma: Sequence[int]) -> HeckeElt:
        """q^-1 T_{s_i} + (1 - q^-1) z^gamma/(1 - z^gamma)."""
        F = self.scalars
        qinv = F.q_pow(-1)
        const = (F.one - qinv) * F.z(gamma) * F.inv_one_minus(gamma)
        return HeckeElt(self, {int(self.group.rmul[i, 0]): qinv, 0: const})

    def mu(self, w: int, word: Iterable[int] | None = None, shift: int = 0) -> HeckeElt:
        """
        mu_{yz}(w) for y = ``shift``, built along a reduced word (0-based
        letters; lex-minimal by default) by the cocycle rule.
        """
        g = self.group
        letters = tuple(g.word(w) if word is None else word)
        if len(letters) != g.length[w] or g.from_word(letters) != w:
            raise ValueError("word is not a reduced word for w")
        out = self.one()
        w2 = 0
        for i in reversed(letters):
            gamma = g.pullback(shift, g.pullback(w2, self._simple[i]))
            out = self.mul(out, self.mu_simple(i, gamma))
            w2 = int(g.lmul[i, w2])
        return out

    def bar(self, x: HeckeElt) -> HeckeElt:
        """q -> q^-1 on coefficients and T_w -> T_{w^-1}^-1 (exact backend only)."""
        g = self.group
        out = self.zero()
        for w, c in x.coeffs.items():
            if not isinstance(c, RatFn):
                raise TypeError("the Hecke bar involution needs exact coefficients")
            out = out + self.t_inverse(int(g.inv[w])).scale(c.bar())
        return out

    def m_via_hecke(self, u: int, v: int):
        return self.lam(self.mul(self.psi(u), self.mu(v)))


@functools.lru_cache(maxsize=None)
def symbolic_algebra(group: WeylGroup) -> HeckeAlgebra:
    return HeckeAlgebra(group, SymbolicScalars(group.rank))


def t_mul(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    return a * b


def t_inverse(w: WeylElt, route: str = "factor") -> HeckeElt:
    return symbolic_algebra(w.group).t_inverse(w.index, route)


def mu_element(w: WeylElt, word: Iterable[int] | None = None) -> HeckeElt:
    """mu_z(w); ``word`` takes 1-based letters."""
    letters = None if word is None else [int(i) - 1 for i in word]
    return symbolic_algebra(w.group).mu(w.index, letters)


def lambda_functional(x: HeckeElt):
    return x.algebra.lam(x)


def m_via_hecke(u: WeylElt, v: WeylElt) -> RatFn:
    if u.group is not v.group:
        raise MixedRootSystems("elements belong to different Weyl groups")
    if not u.group.leq[u.index, v.index]:
        raise NotComparable(f"{u} is not <= {v}")
    return symbolic_algebra(u.group).m_via_hecke(u.index, v.index)
