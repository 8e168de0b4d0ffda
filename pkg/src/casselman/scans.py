"""
Conjecture scans and descent certificates.

Scans are report-only: they never raise on a counterexample, they count and
list it.  Every scan runs on dense indices over a whole Weyl group.

* ``descent_conjecture_scan``: for u < v, is there a left descent s of v
  with su > u, or with su < u and u not <= sv?  Pure Bruhat combinatorics,
  vectorized over all pairs at once.
* ``ad_recursion_check``: for each minimal t = r_a in AD(u,v), with
  b = -v^-1 a, test
      r_{u,v} = q r_{tu,tv} + (q-1) z^b/(z^b - 1) r_{u,tv}
      bar m_{u,v} = ((1 - q z^b)/(1 - z^b)) bar m_{u,tv}.
* ``product_formula_scan``: Q_{u,v} = 1 => m_{u,v} = prod over S(u,v), and
  P_{u,v} = 1 => m'_{u,v} = (-1)^{l(v)-l(u)} prod over S'(u,v).
* ``poles_scan``: reduced denominators of r and m lie in S(u,v), each
  factor at most once.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import NotComparable, NotSimplyLaced
from .klpoly import kl_table
from .modular import ModCtx
from .parallel import pmap
from .report import Report
from .symbolics import RatFn
from .transition import CasselmanEngine, symbolic_engine
from .weyl import RootVec, WeylElt, WeylGroup, _ad_dense, _s_sets_dense, build_root_system

__all__ = [
    "DescentCertificate", "descent_reduce", "pole_clearance_check", "pole_data",
    "descent_failures", "descent_conjecture_scan", "ad_recursion_check",
    "product_formula_scan", "poles_scan", "run_scan", "SCANS",
]


def _require_simply_laced(group: WeylGroup, strict: bool) -> None:
    rs = group.root_system
    if rs.is_simply_laced:
        return
    msg = f"{rs.name} is not simply laced"
    if strict:
        raise NotSimplyLaced(msg)
    warnings.warn(msg, RuntimeWarning, stacklevel=3)


def _neg_pullback(g: WeylGroup, v: int, root: int) -> RootVec:
    """-v^-1 a for the positive root with index ``root``."""
    rs = g.root_system
    k = g.perms[int(g.inv[v])][root]
    return rs.roots[k - rs.num_positive] if k >= rs.num_positive else rs.roots[k]


# descent certificates ---------------------------------------------------


@dataclass
class DescentCertificate:
    """
    ``case`` is "i", "ii" or "no-descent".  For case (i), ``factor`` is
    (1 - q z^b)/(1 - z^b) with b = -v^-1 a_s, and bar m_{u,v} = factor *
    bar m_{u,sv}; for case (ii), m_{u,v} = m_{su,sv} and r_{u,v} = r_{su,sv}.
    """

    case: str
    s: int | None = None  # 1-based
    beta: RootVec | None = None
    factor: RatFn | None = None
    verified: bool = True
    checks: dict = field(default_factory=dict)


def _descent_candidates(g: WeylGroup, u: int, v: int) -> list[tuple[int, str]]:
    out = []
    leq = g.leq
    for s in range(g.rank):
        if not g.ldesc[s, v]:
            continue
        if not g.ldesc[s, u]:
            out.append((s, "i"))
        elif not leq[u, int(g.lmul[s, v])]:
            out.append((s, "ii"))
    return out


def _certify(eng: CasselmanEngine, u: int, v: int, s: int, case: str) -> DescentCertificate:
    g = eng.group
    F = eng.scalars
    sv = int(g.lmul[s, v])
    su = int(g.lmul[s, u])
    if case == "i":
        beta = _neg_pullback(g, v, s)
        factor = (F.one - F.q * F.z(beta)) * F.inv_one_minus(beta)
        mbar = eng.bar
        m_ok = mbar.m(u, v) == factor * mbar.m(u, sv)
        # S(u,v) = S(u,sv) + {b}
        n_pos = g.num_positive
        roots = g.root_system.roots
        s_uv = {roots[b] for b in _s_sets_dense(g, u, v)[0]}
        s_usv = {roots[b] for b in _s_sets_dense(g, u, sv)[0]}
        s_ok = s_uv == s_usv | {beta} and beta not in s_usv and len(s_uv) <= n_pos
        return DescentCertificate(
            "i", s + 1, beta, factor, bool(m_ok and s_ok),
            {"m_descent": bool(m_ok), "s_set_split": bool(s_ok)},
        )
    m_ok = eng.m(u, v) == eng.m(su, sv)
    r_ok = eng.r(u, v) == eng.r(su, sv)
    return DescentCertificate(
        "ii", s + 1, None, None, bool(m_ok and r_ok),
        {"m_equal": bool(m_ok), "r_equal": bool(r_ok)},
    )


def descent_reduce(u: WeylElt, v: WeylElt) -> DescentCertificate:
    """
    First left descent s of v (in index order) with su > u (case i) or with
    su < u and u not <= sv (case ii), certified symbolically; "no-descent"
    when no descent of v qualifies.
    """
    g = u.group
    if v.group is not g or u.index == v.index or not g.leq[u.index, v.index]:
        raise NotComparable(f"need {u} < {v}")
    cands = _descent_candidates(g, u.index, v.index)
    if not cands:
        return DescentCertificate("no-descent")
    s, case = cands[0]
    return _certify(symbolic_engine(g), u.index, v.index, s, case)


# poles ------------------------------------------------------------------


def pole_data(g: WeylGroup, u: int, v: int, eng: CasselmanEngine | None = None) -> dict:
    """Reduced denominators of r_{u,v} and m_{u,v} against S(u,v)."""
    eng = eng or symbolic_engine(g)
    roots = g.root_system.roots
    s_set = {roots[b] for b in _s_sets_dense(g, u, v)[0]}
    out = {"ok": True, "max_multiplicity": 0, "extra": []}
    for name, val in (("r", eng.r(u, v)), ("m", eng.m(u, v))):
        for beta, mult in val.den:
            out["max_multiplicity"] = max(out["max_multiplicity"], mult)
            if mult > 1 or beta not in s_set:
                out["ok"] = False
                out["extra"].append({"matrix": name, "root": list(beta), "mult": mult})
    return out


def pole_clearance_check(u: WeylElt, v: WeylElt) -> bool:
    g = u.group
    if v.group is not g or not g.leq[u.index, v.index]:
        raise NotComparable(f"{u} is not <= {v}")
    return pole_data(g, u.index, v.index)["ok"]


def poles_scan(group: WeylGroup) -> Report:
    g = group
    rep = Report("scan", "poles", g.root_system.name, "symbolic")
    violations = 0
    max_mult = 0
    pairs = g.comparable_pairs(strict=True)
    for u, v in pairs:
        d = pole_data(g, u, v)
        max_mult = max(max_mult, d["max_multiplicity"])
        if not d["ok"]:
            violations += 1
            rep.add_row((g.format(u), g.format(v)), "violation", factors=d["extra"])
    rep.counts = {"pairs": len(pairs), "violations": violations, "max_multiplicity": max_mult}
    return rep


# descent conjecture ----------------------------------------------------


def descent_failures(group: WeylGroup) -> np.ndarray:
    """Boolean matrix of pairs u < v for which no left descent of v qualifies."""
    g = group
    leq = g.leq
    n = g.order
    ok = np.zeros((n, n), dtype=bool)
    for s in range(g.rank):
        desc_v = g.ldesc[s][None, :]
        up_u = ~g.ldesc[s][:, None]
        # column v of leq[:, s v]
        u_not_le_sv = ~leq[:, g.lmul[s]]
        ok |= desc_v & (up_u | u_not_le_sv)
    strict = leq.copy()
    np.fill_diagonal(strict, False)
    return strict & ~ok


def descent_conjecture_scan(group: WeylGroup) -> Report:
    g = group
    _require_simply_laced(g, strict=False)
    fail = descent_failures(g)
    us, vs = np.nonzero(fail)
    pairs = sorted(zip(us.tolist(), vs.tolist()), key=g.pair_key)
    kl = kl_table(g)
    rep = Report("scan", "descent", g.root_system.name, "combinatorial")
    with_q1 = 0
    for u, v in pairs:
        q1 = kl.Q_is_one(u, v)
        with_q1 += q1
        rep.add_row((g.format(u), g.format(v)), "counterexample" if q1 else "no-descent",
                    Q=str(kl.Q_poly(u, v)))
    n_strict = int(g.leq.sum()) - g.order
    rep.counts = {"pairs": n_strict, "failing": len(pairs), "failing_with_Q1": with_q1}
    return rep


# AD recursion -----------------------------------------------------------


def _ad_check(eng: CasselmanEngine, triples) -> list[tuple[bool, bool]]:
    """(eq10 holds, eq11 holds) per (u, v, t, beta)."""
    g = eng.group
    F = eng.scalars
    mbar = eng.bar
    out = []
    for u, v, t, beta in triples:
        tu, tv = g.mul(t, u), g.mul(t, v)
        zb = F.z(beta)
        inv = F.inv_one_minus(beta)
        # z^b/(z^b - 1) = -z^b/(1 - z^b)
        rhs = F.q * eng.r(tu, tv) - (F.q - F.one) * zb * inv * eng.r(u, tv)
        ok10 = eng.r(u, v) == rhs
        fac = (F.one - F.q * zb) * inv
        ok11 = mbar.m(u, v) == fac * mbar.m(u, tv)
        out.append((bool(ok10), bool(ok11)))
    return out


def _ad_triples(g: WeylGroup, pairs) -> list[tuple[int, int, int, RootVec]]:
    out = []
    for u, v in pairs:
        _, mins = _ad_dense(g, u, v)
        for b in mins:
            out.append((u, v, g.reflections[b], _neg_pullback(g, v, b)))
    return out


def _ad_sample_task(args):
    cartan_type, rank, point, triples = args
    from .modular import ModularScalars
    g = build_root_system(cartan_type, rank).weyl_group
    return _ad_check(CasselmanEngine(g, ModularScalars(point)), triples)


def _run_modular(g: WeylGroup, task, payload, ctx: ModCtx) -> list[list]:
    rs = g.root_system
    points = ctx.points(rs.positive_roots, rs.rank)
    jobs = [(rs.cartan_type, rs.rank, pt, payload) for pt in points]
    return pmap(task, jobs)


def ad_recursion_check(group: WeylGroup, backend: str = "symbolic", ctx: ModCtx | None = None,
                       only_pq_one: bool = False) -> Report:
    """
    Failures of the AD-recursion identities, one row per (u, v, t) with P
    and Q of the pair.  A row fails when either identity fails.
    """
    g = group
    _require_simply_laced(g, strict=True)
    kl = kl_table(g)
    pairs = g.comparable_pairs(strict=True)
    if only_pq_one:
        pairs = [(u, v) for u, v in pairs if kl.P_is_one(u, v) and kl.Q_is_one(u, v)]
    triples = _ad_triples(g, pairs)
    if backend == "symbolic":
        verdicts = _ad_check(symbolic_engine(g), triples)
    elif backend == "modular":
        per_sample = _run_modular(g, _ad_sample_task, triples, ctx or ModCtx())
        verdicts = [
            (all(s[k][0] for s in per_sample), all(s[k][1] for s in per_sample))
            for k in range(len(triples))
        ]
    else:
        raise ValueError(f"unknown backend {backend!r}")
    rep = Report("scan", "ad-recursion", g.root_system.name, backend)
    n10 = n11 = 0
    for (u, v, t, beta), (ok10, ok11) in zip(triples, verdicts):
        n10 += not ok10
        n11 += not ok11
        if ok10 and ok11:
            continue
        rep.add_row(
            (g.format(u), g.format(v)), "fail",
            t=g.format(t), beta=list(beta), P=str(kl.P_poly(u, v)), Q=str(kl.Q_poly(u, v)),
            r_recursion=ok10, m_recursion=ok11,
        )
    rep.counts = {
        "pairs": len(pairs), "triples": len(triples), "failures": len(rep.rows),
        "r_failures": n10, "m_failures": n11,
    }
    if only_pq_one:
        rep.notes.append("restricted to pairs with P = Q = 1")
    return rep


# product formulas -------------------------------------------------------


def _product_check(eng: CasselmanEngine, items) -> list[bool]:
    g = eng.group
    roots = g.root_system.roots
    out = []
    for which, u, v, bs in items:
        prod = eng.gk_product([roots[b] for b in bs])
        if which == "m":
            out.append(bool(eng.m(u, v) == prod))
        else:
            d = int(g.length[v] - g.length[u])
            out.append(bool(eng.m_prime(u, v) == (prod if d % 2 == 0 else -prod)))
    return out


def _product_sample_task(args):
    cartan_type, rank, point, items = args
    from .modular import ModularScalars
    g = build_root_system(cartan_type, rank).weyl_group
    return _product_check(CasselmanEngine(g, ModularScalars(point)), items)


def product_formula_scan(group: WeylGroup, backend: str = "symbolic",
                         ctx: ModCtx | None = None) -> Report:
    g = group
    _require_simply_laced(g, strict=False)
    kl = kl_table(g)
    items = []
    for u, v in g.comparable_pairs(strict=True):
        s_set, s_prime = _s_sets_dense(g, u, v)
        if kl.Q_is_one(u, v):
            items.append(("m", u, v, s_set))
        if kl.P_is_one(u, v):
            items.append(("m'", u, v, s_prime))
    if backend == "symbolic":
        verdicts = _product_check(symbolic_engine(g), items)
    elif backend == "modular":
        per_sample = _run_modular(g, _product_sample_task, items, ctx or ModCtx())
        verdicts = [all(s[k] for s in per_sample) for k in range(len(items))]
    else:
        raise ValueError(f"unknown backend {backend!r}")
    rep = Report("scan", "product-formula", g.root_system.name, backend)
    roots = g.root_system.roots
    counts = {"Q1_pairs": 0, "Q1_violations": 0, "P1_pairs": 0, "P1_violations": 0}
    for (which, u, v, bs), ok in zip(items, verdicts):
        key = "Q1" if which == "m" else "P1"
        counts[f"{key}_pairs"] += 1
        if not ok:
            counts[f"{key}_violations"] += 1
            rep.add_row((g.format(u), g.format(v)), "violation", matrix=which,
                        roots=[list(roots[b]) for b in bs])
    rep.counts = counts
    return rep


# dispatch ---------------------------------------------------------------

SCANS = ("poles", "descent", "ad-recursion", "product-formula")


def run_scan(group: WeylGroup, name: str, backend: str = "symbolic",
             ctx: ModCtx | None = None) -> Report:
    if name == "poles":
        return poles_scan(group)
    if name == "descent":
        return descent_conjecture_scan(group)
    if name == "ad-recursion":
        return ad_recursion_check(group, backend, ctx)
    if name == "product-formula":
        return product_formula_scan(group, backend, ctx)
    raise ValueError(f"unknown scan {name!r}; expected one of {', '.join(SCANS)}")
