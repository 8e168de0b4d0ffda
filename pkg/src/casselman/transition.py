"""
Deformed R-polynomials r_{u,v}(z) and the Casselman transition matrices.

``CasselmanEngine`` runs every recursion over a scalar backend: exact
``RatFn`` values (``SymbolicScalars``) or residues at one point of F_p
(``ModularScalars``).  Bars and z-inversions are handled by *twisting* the
backend's evaluation point, so the same code yields r, r-bar, r(z^-1), and so
on, in either backend.

Conventions (dense indices, zero when u is not <= v):

* r_{u,v}: pick the lowest left descent s = s_alpha of v, beta = -v^-1 alpha;
  if su < u:  r_{u,v} = (1-q)/(1-z^beta) r_{u,sv} + r_{su,sv}
  else:       r_{u,v} = (1-q) z^beta/(1-z^beta) r_{u,sv} + q r_{su,sv}
* m_{u,v} = sum over x in [u,v] of bar(r_{x,v})
* m' and r' are the inverse matrices, by back-substitution.
"""

from __future__ import annotations

import functools
from typing import Iterable, Sequence

from .errors import NotComparable
from .symbolics import RatFn, SymbolicScalars
from .weyl import RootVec, WeylElt, WeylGroup

__all__ = [
    "CasselmanEngine", "symbolic_engine", "r_def", "m_coeff", "r_from_m",
    "m_prime", "r_prime", "gk_product", "modular_engines",
]


class CasselmanEngine:
    """Memo tables for r, m, m', r' over one scalar backend."""

    def __init__(self, group: WeylGroup, scalars, descent: str = "lowest",
                 _family: dict | None = None, _flags: tuple[bool, bool] = (False, False)):
        if descent not in ("lowest", "highest"):
            raise ValueError("descent must be 'lowest' or 'highest'")
        self.group = group
        self.scalars = scalars
        self.descent = descent
        self.flags = _flags
        self._family = _family if _family is not None else {}
        self._family[_flags] = self
        self._r: dict = {}
        self._m: dict = {}
        self._mp: dict = {}
        self._rp_inverse: dict = {}
        self._rp_recursion: dict = {}
        rs = group.root_system
        self._n_pos = rs.num_positive
        self._roots = rs.roots

    @property
    def backend(self) -> str:
        return self.scalars.kind

    def twisted(self, bar: bool = False, invz: bool = False) -> "CasselmanEngine":
        """Engine evaluating at (q^-1 if bar, z^-1 if invz) of this one's point."""
        flags = (self.flags[0] ^ bar, self.flags[1] ^ invz)
        eng = self._family.get(flags)
        if eng is None:
            eng = CasselmanEngine(
                self.group, self.scalars.twist(bar, invz), self.descent,
                _family=self._family, _flags=flags,
            )
        return eng

    @property
    def bar(self) -> "CasselmanEngine":
        return self.twisted(bar=True)

    @property
    def inv(self) -> "CasselmanEngine":
        return self.twisted(invz=True)

    # helpers ------------------------------------------------------------

    def _neg_pullback(self, v: int, i: int) -> RootVec:
        """-v^{-1} alpha_i, a positive root when s_i v < v."""
        g = self.group
        k = g.perms[int(g.inv[v])][i]
        if k < self._n_pos:
            raise AssertionError("expected v^-1 alpha to be negative")
        return self._roots[k - self._n_pos]

    def _pullback(self, u: int, i: int) -> RootVec:
        g = self.group
        return self._roots[g.perms[int(g.inv[u])][i]]

    def sign(self, k: int) -> int:
        return -1 if self.group.length[k] % 2 else 1

    # r ------------------------------------------------------------------

    def r(self, u: int, v: int):
        key = (u, v)
        got = self._r.get(key)
        if got is not None:
            return got
        g = self.group
        F = self.scalars
        if u == v:
            val = F.one
        elif not g.leq[u, v]:
            val = F.zero
        else:
            s = g.left_descent(v, highest=self.descent == "highest")
            sv = int(g.lmul[s, v])
            su = int(g.lmul[s, u])
            beta = self._neg_pullback(v, s)
            a = self.r(u, sv)
            b = self.r(su, sv)
            one_minus_q = F.one - F.q
            if g.ldesc[s, u]:
                val = b
                if not F.is_zero(a):
                    val = one_minus_q * F.inv_one_minus(beta) * a + val
            else:
                val = F.q * b
                if not F.is_zero(a):
                    val = one_minus_q * F.z(beta) * F.inv_one_minus(beta) * a + val
        self._r[key] = val
        return val

    # m ------------------------------------------------------------------

    def m(self, u: int, v: int):
        key = (u, v)
        got = self._m.get(key)
        if got is not None:
            return got
        F = self.scalars
        rbar = self.bar
        total = F.zero
        for x in self.group.interval(u, v):
            total = total + rbar.r(x, v)
        self._m[key] = total
        return total

    def r_from_m(self, u: int, v: int):
        """sum over x in [u,v] of e_u e_x bar(m_{x,v})."""
        F = self.scalars
        mbar = self.bar
        eu = self.sign(u)
        total = F.zero
        for x in self.group.interval(u, v):
            term = mbar.m(x, v)
            total = total + (term if eu * self.sign(x) > 0 else -term)
        return total

    # inverses -------------------------------------------------------------

    def _inverse_entry(self, table: dict, entry, u: int, v: int):
        key = (u, v)
        got = table.get(key)
        if got is not None:
            return got
        g = self.group
        F = self.scalars
        if u == v:
            val = F.one
        elif not g.leq[u, v]:
            val = F.zero
        else:
            val = F.zero
            for x in g.interval(u, v):
                if x == u:
                    continue
                a = entry(u, x)
                if F.is_zero(a):
                    continue
                val = val - a * self._inverse_entry(table, entry, x, v)
        table[key] = val
        return val

    def m_prime(self, u: int, v: int):
        """Entry of the inverse of the (unitriangular) m-matrix."""
        return self._inverse_entry(self._mp, self.m, u, v)

    def r_prime(self, u: int, v: int, route: str = "inverse"):
        if route == "inverse":
            return self._inverse_entry(self._rp_inverse, self.r, u, v)
        if route == "recursion":
            return self._r_prime_recursion(u, v)
        raise ValueError(f"unknown route {route!r}")

    def _r_prime_recursion(self, u: int, v: int):
        """
        With su > u and gamma = u^-1 alpha:
        v < sv:  r'_{u,v} = r'_{su,sv} + (q-1)/(1-z^gamma) r'_{su,v}
        v > sv:  r'_{u,v} = (q-1) z^gamma/(1-z^gamma) r'_{su,v} + q r'_{su,sv}
        """
        key = (u, v)
        got = self._rp_recursion.get(key)
        if got is not None:
            return got
        g = self.group
        F = self.scalars
        if u == v:
            val = F.one
        elif not g.leq[u, v]:
            val = F.zero
        else:
            ups = [i for i in range(g.rank) if not g.ldesc[i, u]]
            s = ups[-1] if self.descent == "highest" else ups[0]
            su = int(g.lmul[s, u])
            sv = int(g.lmul[s, v])
            gamma = self._pullback(u, s)
            a = self._r_prime_recursion(su, v)
            b = self._r_prime_recursion(su, sv)
            q_minus_one = F.q - F.one
            if not g.ldesc[s, v]:
                val = b
                if not F.is_zero(a):
                    val = val + q_minus_one * F.inv_one_minus(gamma) * a
            else:
                val = F.q * b
                if not F.is_zero(a):
                    val = val + q_minus_one * F.z(gamma) * F.inv_one_minus(gamma) * a
        self._rp_recursion[key] = val
        return val

    # products -------------------------------------------------------------

    def gk_product(self, roots: Iterable[Sequence[int]], sign_exp: int = 0):
        """(-1)^sign_exp * prod over roots of (1 - q^-1 z^b)/(1 - z^b)."""
        F = self.scalars
        val = F.one if sign_exp % 2 == 0 else -F.one
        qinv = F.q_pow(-1)
        for beta in roots:
            val = val * (F.one - qinv * F.z(beta)) * F.inv_one_minus(beta)
        return val


@functools.lru_cache(maxsize=None)
def symbolic_engine(group: WeylGroup, descent: str = "lowest") -> CasselmanEngine:
    return CasselmanEngine(group, SymbolicScalars(group.rank), descent)


def _pair(u: WeylElt, v: WeylElt, strict: bool) -> tuple[CasselmanEngine, int, int]:
    if u.group is not v.group:
        from .errors import MixedRootSystems
        raise MixedRootSystems("elements belong to different Weyl groups")
    if strict and not u.group.leq[u.index, v.index]:
        raise NotComparable(f"{u} is not <= {v}")
    return symbolic_engine(u.group), u.index, v.index


def r_def(u: WeylElt, v: WeylElt) -> RatFn:
    """r_{u,v}(z) by the descent recursion (zero unless u <= v)."""
    eng, a, b = _pair(u, v, strict=False)
    return eng.r(a, b)


def m_coeff(u: WeylElt, v: WeylElt) -> RatFn:
    eng, a, b = _pair(u, v, strict=True)
    return eng.m(a, b)


def r_from_m(u: WeylElt, v: WeylElt) -> RatFn:
    eng, a, b = _pair(u, v, strict=True)
    return eng.r_from_m(a, b)


def m_prime(u: WeylElt, v: WeylElt) -> RatFn:
    eng, a, b = _pair(u, v, strict=True)
    return eng.m_prime(a, b)


def r_prime(u: WeylElt, v: WeylElt, route: str = "inverse") -> RatFn:
    eng, a, b = _pair(u, v, strict=True)
    return eng.r_prime(a, b, route)


def gk_product(roots: Iterable[Sequence[int]], signed: bool = False, sign_exp: int = 0,
               nz: int | None = None) -> RatFn:
    """
    prod over roots of (1 - q^-1 z^b)/(1 - z^b), times (-1)^sign_exp when
    ``signed``.  ``nz`` is needed only for the empty product.
    """
    roots = [tuple(b) for b in roots]
    if nz is None:
        if not roots:
            raise ValueError("nz is required for an empty product")
        nz = len(roots[0])
    val = RatFn.const(-1 if signed and sign_exp % 2 else 1, nz)
    for beta in roots:
        num = RatFn.const(1, nz) - RatFn.q(nz, -1) * RatFn.z(beta)
        val = val * num * RatFn.inv_one_minus(beta)
    return val


def modular_engines(group: WeylGroup, ctx=None, descent: str = "lowest") -> list[CasselmanEngine]:
    """One engine per sample point of ``ctx`` (a ``ModCtx``; default settings if None)."""
    from .modular import ModCtx, ModularScalars
    ctx = ctx if ctx is not None else ModCtx()
    rs = group.root_system
    return [
        CasselmanEngine(group, ModularScalars(pt), descent)
        for pt in ctx.points(rs.positive_roots, rs.rank)
    ]
