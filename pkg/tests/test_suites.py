import numpy as np
import pytest

from casselman import CasselmanEngine, SymbolicScalars, build_root_system
from casselman.modular import ModCtx
from casselman.suites import SUITES, mobius_matrix, run_suite, suite_failures

from conftest import el


@pytest.mark.parametrize("suite", SUITES)
def test_a2_symbolic(suite, A2):
    rep = run_suite(A2.weyl_group, suite)
    assert rep.status == "pass", rep.rows


@pytest.mark.parametrize("suite", [s for s in SUITES if s != "limits"])
def test_a2_modular_agrees(suite, A2):
    rep = run_suite(A2.weyl_group, suite, "modular", ModCtx(samples=2))
    assert rep.status == "pass", rep.rows
    assert rep.counts["samples"] == 2


def test_limits_symbolic_only(A2):
    with pytest.raises(ValueError):
        run_suite(A2.weyl_group, "limits", "modular")


def test_unknown_suite(A2):
    with pytest.raises(ValueError):
        run_suite(A2.weyl_group, "nope")


def test_mobius(A2):
    mu = mobius_matrix(A2.weyl_group)
    g = A2.weyl_group
    zeta = g.leq.astype(np.int64)
    assert (zeta @ mu == np.eye(g.order, dtype=np.int64)).all()


# mutation: corrupting one memo entry must be caught

def _fresh(g):
    return CasselmanEngine(g, SymbolicScalars(g.rank))


def test_mutated_r_caught(A2):
    g = A2.weyl_group
    u, v = el(A2, "").index, el(A2, "12").index
    eng = _fresh(g)
    eng._r[(u, v)] = eng.r(u, v) + eng.scalars.q
    assert suite_failures(eng, "duality")
    eng = _fresh(g)
    eng._r[(u, v)] = eng.r(u, v) + eng.scalars.q
    names = {name for name, *_ in suite_failures(eng, "transforms")}
    assert {"bar-sign", "descent-choice"} <= names


def test_mutated_m_caught(A2):
    g = A2.weyl_group
    u, v = el(A2, "1").index, el(A2, "121").index
    eng = _fresh(g)
    bad = eng.bar
    bad._m[(u, v)] = bad.m(u, v) * bad.scalars.q
    fails = suite_failures(eng, "fe-q1")
    assert ("functional-equation", u, v) in fails
    eng = _fresh(g)
    eng._m[(u, v)] = eng.m(u, v) + eng.scalars.one
    assert suite_failures(eng, "oracle")
