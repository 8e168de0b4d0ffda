"""
Verification suites.  Each suite is a list of named identity checks, run
exhaustively over the comparable pairs of one Weyl group, either exactly
(symbolic backend) or at ``ctx.samples`` random points of F_p (modular
backend, one engine per sample, samples optionally spread over worker
processes).  A modular check fails when any sample disagrees.

Suites:

fe-q1           functional equation of m when Q_{u,v} = 1
full-inversion  bar m_{u,v}(z) = q_v q_u^-1 sum_w c_{u,w} m_{w,v}(z^-1)
duality         sum_x r_{u,x} e_x e_v r_{w0 v, w0 x} = delta (and for m);
                m'_{u,v} = e_u e_v m_{w0 v, w0 u}
limits          z -> infinity: r -> R and r' -> e_u e_v R  (symbolic only)
oracle          m_{u,v} = Lambda(psi_u mu_z(v)) in the Hecke algebra
hecke-lemmas    Lambda(T_u T_v), T_w^-1 routes, mu_z word independence,
                bar lemma, T-expansion of mu_z(v), mu_z cocycle constants,
                quadratic and braid relations, associativity
transforms      r from m, bar-sign relation, the Q-m-r relation, m'/r'
                transforms, r' routes, descent-choice independence
mobius          Moebius function of Bruhat order is (-1)^{l(v)-l(u)}
"""

from __future__ import annotations

import random
from typing import Callable, Iterator

import numpy as np

from .hecke import HeckeAlgebra
from .klpoly import KLTable, kl_table
from .modular import ModCtx, ModularScalars
from .parallel import pmap
from .report import Report
from .symbolics import QPoly, limit_z_infinity
from .transition import CasselmanEngine, symbolic_engine
from .weyl import WeylGroup, build_root_system

__all__ = ["SUITES", "run_suite", "suite_failures", "mobius_matrix"]

SUITES = (
    "fe-q1", "full-inversion", "duality", "limits", "oracle", "hecke-lemmas",
    "transforms", "mobius",
)

# suites whose checks only make sense over exact coefficients
SYMBOLIC_ONLY = {"limits"}
# checks skipped under the modular backend (they need exact RatFn values)
_SYMBOLIC_CHECKS = {"bar-lemma"}

Failure = tuple[str, int, int]
Check = Callable[[CasselmanEngine, KLTable], Iterator[Failure]]


def _signed(F, x, sign: int):
    return x if sign > 0 else -x


def _eps(g: WeylGroup, *ks: int) -> int:
    return -1 if sum(int(g.length[k]) for k in ks) % 2 else 1


def _qp(F, k: int):
    return F.q_pow(int(k))


# fe-q1 / full-inversion ------------------------------------------------------


def _check_fe_q1(eng: CasselmanEngine, kl: KLTable) -> Iterator[Failure]:
    g, F = eng.group, eng.scalars
    for u, v in g.comparable_pairs():
        if not kl.Q_is_one(u, v):
            continue
        lhs = eng.bar.m(u, v)
        rhs = _qp(F, g.length[v] - g.length[u]) * eng.inv.m(u, v)
        if lhs != rhs:
            yield ("functional-equation", u, v)


def _check_full_inversion(eng: CasselmanEngine, kl: KLTable) -> Iterator[Failure]:
    g, F = eng.group, eng.scalars
    for u, v in g.comparable_pairs():
        total = F.zero
        for w in g.interval(u, v):
            c = kl.c_poly(u, w)
            if c.is_zero():
                continue
            total = total + F.from_qpoly(c) * eng.inv.m(w, v)
        if eng.bar.m(u, v) != _qp(F, g.length[v] - g.length[u]) * total:
            yield ("full-inversion", u, v)


# duality ---------------------------------------------------------------------


def _check_duality(eng: CasselmanEngine, kl: KLTable) -> Iterator[Failure]:
    g, F = eng.group, eng.scalars
    w0 = kl.w0_mul
    for u, v in g.comparable_pairs():
        delta = F.one if u == v else F.zero
        for name, fn in (("r-duality", eng.r), ("m-duality", eng.m)):
            total = F.zero
            for x in g.interval(u, v):
                term = fn(u, x) * fn(int(w0[v]), int(w0[x]))
                total = total + _signed(F, term, _eps(g, x, v))
            if total != delta:
                yield (name, u, v)
        dual = _signed(F, eng.m(int(w0[v]), int(w0[u])), _eps(g, u, v))
        if eng.m_prime(u, v) != dual:
            yield ("m-prime-duality", u, v)


# limits ----------------------------------------------------------------------


def _check_limits(eng: CasselmanEngine, kl: KLTable) -> Iterator[Failure]:
    g = eng.group
    for u, v in g.comparable_pairs():
        R = kl.R_poly(u, v)
        if limit_z_infinity(eng.r(u, v)) != R:
            yield ("limit-r", u, v)
        if limit_z_infinity(eng.r_prime(u, v)) != R * _eps(g, u, v):
            yield ("limit-r-prime", u, v)


# oracle ----------------------------------------------------------------------


def _check_oracle(eng: CasselmanEngine, kl: KLTable) -> Iterator[Failure]:
    g = eng.group
    H = HeckeAlgebra(g, eng.scalars)
    mus = {}
    for u, v in g.comparable_pairs():
        if v not in mus:
            mus[v] = H.mu(v)
        if H.lam(H.mul(H.psi(u), mus[v])) != eng.m(u, v):
            yield ("m-via-hecke", u, v)


# hecke lemmas ----------------------------------------------------------------


def _reduced_words(g: WeylGroup, w: int, limit: int = 64) -> list[tuple[int, ...]]:
    """Up to ``limit`` reduced words of w (0-based letters), depth first."""
    out: list[tuple[int, ...]] = []

    def walk(k: int, suffix: tuple[int, ...]):
        if len(out) >= limit:
            return
        if k == 0:
            out.append(suffix)
            return
        for i in range(g.rank):
            if g.rdesc[i, k]:
                walk(int(g.rmul[i, k]), (i,) + suffix)

    walk(w, ())
    return out


def _check_hecke(eng: CasselmanEngine, kl: KLTable) -> Iterator[Failure]:
    g, F = eng.group, eng.scalars
    H = HeckeAlgebra(g, F)
    n = g.order
    symbolic = F.kind == "symbolic"
    # Lambda(T_u T_v) = q_u [u = v^-1]
    for u in range(n):
        for v in range(n):
            want = _qp(F, g.length[u]) if int(g.inv[v]) == u else F.zero
            if H.lam(H.T(u) * H.T(v)) != want:
                yield ("lambda-tu-tv", u, v)
    # T_w^-1 by both routes, and T_w^-1 T_w = 1
    for w in range(n):
        a = H.t_inverse(w, "factor")
        if a != H.t_inverse(w, "r-formula") or a * H.T(w) != H.one():
            yield ("t-inverse", w, w)
    # mu_z(w0) independent of the reduced word
    w0 = g.w0
    words = _reduced_words(g, w0)
    ref = H.mu(w0, words[0])
    for word in words[1:]:
        if H.mu(w0, word) != ref:
            yield ("mu-word-independence", w0, w0)
            break
    mus = {w: H.mu(w) for w in range(n)}
    # expansion of mu_z(v): coefficient of T_{u^-1} is q_u^-1 bar r_{u,v}
    for u, v in g.comparable_pairs():
        got = mus[v].coefficient(int(g.inv[u]))
        if got != _qp(F, -int(g.length[u])) * eng.bar.r(u, v):
            yield ("mu-expansion", u, v)
    # bar(mu_z(w)) = q_w mu_{z^-1}(w)
    if symbolic:
        Hinv = HeckeAlgebra(g, F.twist(invz=True))
        for w in range(n):
            lhs = H.bar(mus[w])
            rhs = Hinv.mu(w).scale(_qp(F, g.length[w]))
            if lhs.coeffs.keys() != rhs.coeffs.keys() or any(
                lhs.coefficient(k) != rhs.coefficient(k) for k in lhs.coeffs
            ):
                yield ("bar-lemma", w, w)
    # mu_z(w) mu_{wz}(s) = c mu_z(sw)
    rs = g.root_system
    for w in range(n):
        for i in range(g.rank):
            sw = int(g.lmul[i, w])
            lhs = mus[w] * H.mu(int(g.lmul[i, 0]), shift=w)
            if g.length[sw] > g.length[w]:
                c = F.one
            else:
                gamma = g.pullback(w, rs.simple_root(i))
                neg = tuple(-x for x in gamma)
                qinv = F.q_pow(-1)
                c = F.one
                for b in (gamma, neg):
                    c = c * (F.one - qinv * F.z(b)) * F.inv_one_minus(b)
            if lhs != mus[sw].scale(c):
                yield ("mu-cocycle-constant", w, sw)
    # quadratic and braid relations
    for i in range(g.rank):
        s = int(g.lmul[i, 0])
        if H.T(s) * H.T(s) != H.T(s).scale(F.q - F.one) + H.one().scale(F.q):
            yield ("quadratic-relation", s, s)
        for j in range(i + 1, g.rank):
            t = int(g.lmul[j, 0])
            m = 1
            k = g.mul(s, t)
            while k != 0:
                k = g.mul(k, g.mul(s, t))
                m += 1
            a = H.one()
            b = H.one()
            for step in range(m):
                a = a * H.T(s if step % 2 == 0 else t)
                b = b * H.T(t if step % 2 == 0 else s)
            if a != b:
                yield ("braid-relation", s, t)
    # associativity on seeded random triples
    rng = random.Random(0)

    def rand_elt():
        ks = rng.sample(range(n), min(3, n))
        return H.element({k: F.const(rng.randint(-3, 3)) for k in ks})

    for _ in range(5):
        a, b, c = rand_elt(), rand_elt(), rand_elt()
        if (a * b) * c != a * (b * c):
            yield ("associativity", 0, 0)


# transforms ------------------------------------------------------------------


def _check_transforms(eng: CasselmanEngine, kl: KLTable) -> Iterator[Failure]:
    g, F = eng.group, eng.scalars
    other = CasselmanEngine(g, F, "highest")
    for u, v in g.comparable_pairs():
        luv = int(g.length[v] - g.length[u])
        iv = g.interval(u, v)
        if eng.r_from_m(u, v) != eng.r(u, v):
            yield ("r-from-m", u, v)
        rbar = eng.bar.r(u, v)
        if rbar != _signed(F, _qp(F, -luv) * eng.r(u, v), _eps(g, u, v)):
            yield ("bar-sign", u, v)
        # sum Q-bar_{u,w} e_w e_t m_{t,v}(z^-1) = q_u q_v^-1 sum Q_{u,y} r_{y,v}
        lhs = F.zero
        for w in iv:
            qb = kl.Q_poly(u, w).bar()
            inner = F.zero
            for t in iv:
                if g.leq[w, t]:
                    inner = inner + _signed(F, eng.inv.m(t, v), _eps(g, w, t))
            lhs = lhs + F.from_qpoly(qb) * inner
        rhs = F.zero
        for y in iv:
            rhs = rhs + F.from_qpoly(kl.Q_poly(u, y)) * eng.r(y, v)
        if lhs != _qp(F, -luv) * rhs:
            yield ("q-m-r-relation", u, v)
        mp = F.zero
        rp = F.zero
        for x in iv:
            mp = mp + _signed(F, eng.bar.r_prime(u, x), _eps(g, x, v))
            rp = rp + eng.bar.m_prime(u, x)
        if mp != eng.m_prime(u, v):
            yield ("m-prime-from-r-prime", u, v)
        if rp != eng.r_prime(u, v):
            yield ("r-prime-from-m-prime", u, v)
        if eng.r_prime(u, v, "recursion") != eng.r_prime(u, v, "inverse"):
            yield ("r-prime-routes", u, v)
        if other.r(u, v) != eng.r(u, v):
            yield ("descent-choice", u, v)


# mobius ----------------------------------------------------------------------


def mobius_matrix(group: WeylGroup) -> np.ndarray:
    """Inverse of the zeta matrix of Bruhat order, by integer back-substitution."""
    Z = group.leq.astype(np.int64)
    n = group.order
    M = np.zeros((n, n), dtype=np.int64)
    # dense indices are sorted by length, so Z is upper unitriangular
    for v in range(n):
        M[v, v] = 1
        if v:
            M[:v, v] = -(M[:v, :v] @ Z[:v, v])
    return M


def _check_mobius(eng: CasselmanEngine, kl: KLTable) -> Iterator[Failure]:
    g = eng.group
    M = mobius_matrix(g)
    sign = np.where((g.length[None, :] - g.length[:, None]) % 2 == 1, -1, 1)
    bad = (M != np.where(g.leq, sign, 0))
    for u, v in zip(*np.nonzero(bad)):
        yield ("verma-mobius", int(u), int(v))


# dispatch --------------------------------------------------------------------

_CHECKS: dict[str, Check] = {
    "fe-q1": _check_fe_q1,
    "full-inversion": _check_full_inversion,
    "duality": _check_duality,
    "limits": _check_limits,
    "oracle": _check_oracle,
    "hecke-lemmas": _check_hecke,
    "transforms": _check_transforms,
    "mobius": _check_mobius,
}


def suite_failures(eng: CasselmanEngine, name: str) -> list[Failure]:
    return list(_CHECKS[name](eng, kl_table(eng.group)))


def _sample_task(args) -> list[Failure]:
    cartan_type, rank, point, name = args
    g = build_root_system(cartan_type, rank).weyl_group
    return suite_failures(CasselmanEngine(g, ModularScalars(point)), name)


def run_suite(group: WeylGroup, name: str, backend: str = "symbolic",
              ctx: ModCtx | None = None) -> Report:
    """Run one suite; the report status is "pass" iff no identity failed."""
    if name not in _CHECKS:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    g = group
    rs = g.root_system
    rep = Report("verify", name, rs.name, backend)
    if backend == "symbolic":
        failures = suite_failures(symbolic_engine(g), name)
        samples = 0
    elif backend == "modular":
        if name in SYMBOLIC_ONLY:
            raise ValueError(f"suite {name!r} needs the symbolic backend")
        ctx = ctx or ModCtx()
        points = ctx.points(rs.positive_roots, rs.rank)
        per_sample = pmap(_sample_task, [(rs.cartan_type, rs.rank, pt, name) for pt in points])
        seen: dict[Failure, None] = {}
        for fails in per_sample:
            for f in fails:
                seen.setdefault(f, None)
        failures = list(seen)
        samples = len(points)
        if name == "hecke-lemmas":
            rep.notes.append("bar-lemma needs exact coefficients; skipped under the modular backend")
        rep.notes.append(f"prime={ctx.prime} samples={ctx.samples} seed={ctx.seed}")
    else:
        raise ValueError(f"unknown backend {backend!r}")
    for ident, u, v in failures:
        rep.add_row((g.format(u), g.format(v)), "fail", identity=ident)
    rep.counts = {"failures": len(failures)}
    if samples:
        rep.counts["samples"] = samples
    rep.status = "fail" if failures else "pass"
    return rep
