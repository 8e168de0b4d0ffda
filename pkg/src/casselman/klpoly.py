"""
Classical Kazhdan-Lusztig R-, P- and Q-polynomials, and the coefficients

    c_{u,v} = sum over u <= x <= y <= z <= v of
              e_x e_y q_y^-1 q_u P_{x,y} bar(Q_{y,z}) e_z e_v.

All polynomial tables are dense integer arrays ``T[u, v, d]`` holding the
coefficient of q^d, filled column by column with vectorized recursions over
a left descent.  At A5 (720 elements) P takes well under a second.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from .symbolics import QPoly
from .weyl import WeylElt, WeylGroup

__all__ = [
    "KLTable", "kl_table", "classical_R", "kl_P", "kl_Q", "c_coeff",
    "kl_precedes", "mu_coefficient",
]


def _shift(a: np.ndarray, k: int) -> np.ndarray:
    """Multiply coefficient arrays (last axis = degree) by q^k, k >= 0."""
    if k == 0:
        return a
    out = np.zeros_like(a)
    out[..., k:] = a[..., :-k]
    if np.any(a[..., -k:]):
        raise OverflowError("polynomial degree exceeds table width")
    return out


class KLTable:
    """Memoized classical KL data for one Weyl group, on dense indices."""

    def __init__(self, group: WeylGroup):
        self.group = group
        g = group
        self.eps = np.where(g.length % 2 == 1, -1, 1).astype(np.int64)
        self.w0_mul = np.array([g.mul(g.w0, k) for k in range(g.order)], dtype=np.int64)
        self.max_length = int(g.length[g.w0])

    # R ----------------------------------------------------------------

    @functools.cached_property
    def R(self) -> np.ndarray:
        """R[u, v, d]: coefficient of q^d in R_{u,v}."""
        g = self.group
        n = g.order
        width = self.max_length + 1
        R = np.zeros((n, n, width), dtype=np.int64)
        R[0, 0, 0] = 1
        for v in range(1, n):
            s = g.left_descent(v)
            sv = int(g.lmul[s, v])
            su = g.lmul[s]
            down = g.ldesc[s][:, None]
            col_su = R[su, sv]
            col_u = R[:, sv]
            # su < u: R_{su,sv};  su > u: (q-1) R_{u,sv} + q R_{su,sv}
            R[:, v] = np.where(down, col_su, _shift(col_u, 1) - col_u + _shift(col_su, 1))
        return R

    # P ----------------------------------------------------------------

    @functools.cached_property
    def P(self) -> np.ndarray:
        """P[x, w, d]: coefficient of q^d in P_{x,w}."""
        g = self.group
        n = g.order
        length = g.length
        width = self.max_length // 2 + 2
        P = np.zeros((n, n, width), dtype=np.int64)
        P[0, 0, 0] = 1
        mus: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for w in range(1, n):
            s = g.left_descent(w)
            v = int(g.lmul[s, w])
            su = g.lmul[s]
            down = g.ldesc[s][:, None]
            col_v = P[:, v]
            col_sv = col_v[su]
            # c = 1 when sx < x:  q^{1-c} P_{sx,v} + q^c P_{x,v}
            col = np.where(down, col_sv + _shift(col_v, 1), _shift(col_sv, 1) + col_v)
            lw = int(length[w])
            for z, mu in mus[v]:
                if g.ldesc[s, z]:
                    col = col - mu * _shift(P[:, z], (lw - int(length[z])) // 2)
            P[:, w] = col
            # mu(z, w) for later columns
            diff = lw - length
            odd = np.flatnonzero((diff > 0) & (diff % 2 == 1))
            if odd.size:
                vals = col[odd, (diff[odd] - 1) // 2]
                nz = np.flatnonzero(vals)
                mus[w] = [(int(odd[k]), int(vals[k])) for k in nz]
        self._mus = mus
        return P

    @functools.cached_property
    def Q(self) -> np.ndarray:
        """Q[u, v, d] = P[w0 v, w0 u, d]."""
        a = self.w0_mul
        return self.P[np.ix_(a, a)].transpose(1, 0, 2)

    def check_P(self) -> None:
        """Assert support, normalization, nonnegativity and degree bounds."""
        g = self.group
        P = self.P
        leq = g.leq
        support = P.any(axis=2)
        assert not np.any(support & ~leq), "P nonzero outside the Bruhat order"
        assert np.all(P[np.arange(g.order), np.arange(g.order), 0] == 1)
        assert np.all(P >= 0), "negative KL coefficient"
        diff = g.length[None, :] - g.length[:, None]
        degs = np.where(support, P.shape[2] - 1 - np.argmax(P[:, :, ::-1] != 0, axis=2), -1)
        off = leq & (diff > 0)
        assert np.all(2 * degs[off] <= diff[off] - 1), "degree bound violated"

    def mu(self, z: int, v: int) -> int:
        g = self.group
        d = int(g.length[v] - g.length[z])
        if d <= 0 or d % 2 == 0:
            return 0
        return int(self.P[z, v, (d - 1) // 2])

    # polynomial accessors ----------------------------------------------

    def R_poly(self, u: int, v: int) -> QPoly:
        return QPoly.from_list(self.R[u, v].tolist())

    def P_poly(self, u: int, v: int) -> QPoly:
        return QPoly.from_list(self.P[u, v].tolist())

    def Q_poly(self, u: int, v: int) -> QPoly:
        return QPoly.from_list(self.P[self.w0_mul[v], self.w0_mul[u]].tolist())

    def Q_is_one(self, u: int, v: int) -> bool:
        row = self.P[self.w0_mul[v], self.w0_mul[u]]
        return bool(row[0] == 1 and not row[1:].any())

    def P_is_one(self, u: int, v: int) -> bool:
        row = self.P[u, v]
        return bool(row[0] == 1 and not row[1:].any())

    def P_degree(self, u: int, v: int) -> int:
        nz = np.flatnonzero(self.P[u, v])
        return int(nz[-1]) if nz.size else -1

    # c_{u,v} -----------------------------------------------------------

    def c_chain_sum(self, u: int, v: int) -> QPoly:
        """c_{u,v} by the literal chain sum over x <= y <= z in [u, v]."""
        g = self.group
        if not g.leq[u, v]:
            return QPoly()
        interval = g.interval(u, v)
        leq = g.leq
        eps = self.eps
        lu = int(g.length[u])
        total = QPoly()
        for y in interval:
            ly = int(g.length[y])
            left = QPoly()
            for x in interval:
                if leq[x, y]:
                    left = left + self.P_poly(x, y) * int(eps[x])
            if left.is_zero():
                continue
            right = QPoly()
            for z in interval:
                if leq[y, z]:
                    right = right + self.Q_poly(y, z).bar() * int(eps[z])
            total = total + left * right * QPoly.q(lu - ly) * int(eps[y])
        return total * int(eps[v])

    @functools.cached_property
    def c_table(self) -> tuple[np.ndarray, int]:
        """
        All c_{u,v} at once, as (C, offset) with C[u, v, e + offset] the
        coefficient of q^e.  Uses the factorization through
        A[u,y] = sum_x e_x P_{x,y} and B[y,v] = sum_z bar(Q_{y,z}) e_z.
        """
        g = self.group
        n = g.order
        P, Q = self.P, self.Q
        width = P.shape[2]
        eps = self.eps
        Z = g.leq.astype(np.int64)
        A = ((Z * eps[None, :]) @ P.reshape(n, -1)).reshape(n, n, width)
        Qe = Q * eps[None, :, None]
        B = np.tensordot(Qe, Z, axes=([1], [0])).transpose(0, 2, 1)
        L0 = self.max_length
        off_t = L0 + width
        T = np.zeros((n, n, 2 * off_t + 1), dtype=np.int64)
        length = g.length
        for L in range(L0 + 1):
            ys = np.flatnonzero(length == L)
            if not ys.size:
                continue
            Ay = A[:, ys, :] * eps[ys][None, :, None]
            By = B[ys]
            for i, j in itertools.product(range(width), repeat=2):
                a = Ay[:, :, i]
                b = By[:, :, j]
                if not a.any() or not b.any():
                    continue
                T[:, :, off_t - L + i - j] += a @ b
        offset = off_t
        size = 2 * off_t + L0 + 1
        C = np.zeros((n, n, size), dtype=np.int64)
        for u in range(n):
            lu = int(length[u])
            C[u, :, lu: lu + T.shape[2]] = T[u]
        C *= eps[None, :, None]
        return C, offset

    def c_poly(self, u: int, v: int) -> QPoly:
        C, offset = self.c_table
        return QPoly.from_list(C[u, v].tolist(), -offset)

    def nonzero_c_pairs(self) -> list[tuple[int, int]]:
        C, _ = self.c_table
        us, vs = np.nonzero(C.any(axis=2))
        pairs = [(int(u), int(v)) for u, v in zip(us, vs) if u != v]
        return sorted(pairs, key=self.group.pair_key)

    def precedes(self, u: int, v: int, include_covers: bool = False) -> bool:
        """
        u < v with l(v)-l(u) odd and deg P_{u,v} = (l(v)-l(u)-1)/2, and
        l(v)-l(u) >= 3 unless ``include_covers``.
        """
        g = self.group
        if u == v or not g.leq[u, v]:
            return False
        d = int(g.length[v] - g.length[u])
        if d % 2 == 0 or (d < 3 and not include_covers):
            return False
        return self.P_degree(u, v) == (d - 1) // 2


@functools.lru_cache(maxsize=None)
def kl_table(group: WeylGroup) -> KLTable:
    return KLTable(group)


def classical_R(u: WeylElt, v: WeylElt) -> QPoly:
    return kl_table(u.group).R_poly(u.index, v.index)


def kl_P(u: WeylElt, v: WeylElt) -> QPoly:
    return kl_table(u.group).P_poly(u.index, v.index)


def kl_Q(u: WeylElt, v: WeylElt) -> QPoly:
    return kl_table(u.group).Q_poly(u.index, v.index)


def mu_coefficient(u: WeylElt, v: WeylElt) -> int:
    return kl_table(u.group).mu(u.index, v.index)


def c_coeff(u: WeylElt, v: WeylElt) -> QPoly:
    """c_{u,v} as a Laurent polynomial in q (zero unless u <= v)."""
    return kl_table(u.group).c_chain_sum(u.index, v.index)


def kl_precedes(u: WeylElt, v: WeylElt, include_covers: bool = False) -> bool:
    return kl_table(u.group).precedes(u.index, v.index, include_covers)
