import pytest

from casselman import QPoly, build_root_system
from casselman import reproduce
from casselman.reproduce import (
    A3_ADTABLE_LISTING,
    FIGURE1_LISTING,
    a3_adtable,
    adtable_latex,
    figure1,
    figure1_latex,
    parse_listing,
    run_reproduce,
)

from conftest import el


@pytest.fixture(scope="module")
def fig():
    return figure1()


def test_listing_words_reduced(A4):
    rows = parse_listing(A4.weyl_group, FIGURE1_LISTING, 2)
    flags = [f for r in rows for f in r.flags]
    assert flags == ["stray token 'a' after 12342312; ignored"]


def test_figure1_counts(fig):
    assert fig.counts["nonzero_pairs"] == 46
    assert fig.counts["prec_marked"] == 38
    assert fig.counts["reference_match"] is True
    assert fig.status == "pass"


def test_figure1_rows(fig, A4):
    rows = {tuple(el(A4, w) for w in r["pair"]): r for r in fig.rows}
    row = rows[(el(A4, "2"), el(A4, "2312"))]
    assert row["status"] == "prec" and row["witnesses"]["c"] == "-q^-2 + q^-1"


def test_figure1_reference_order(fig):
    order = fig.extra["reference_order"]
    assert len(order) == 46
    assert all(r["c"] == r["reference_c"] and r["prec"] == r["reference_prec"] for r in order)


def test_figure1_sorted_canonically(fig, A4):
    g = A4.weyl_group
    keys = [g.pair_key((el(A4, u).index, el(A4, v).index)) for u, v in (r["pair"] for r in fig.rows)]
    assert keys == sorted(keys)


def test_figure1_mismatch_detected(monkeypatch):
    monkeypatch.setattr(reproduce, "FIGURE1_LISTING", FIGURE1_LISTING[1:])
    rep = figure1()
    assert rep.status == "fail" and rep.counts["reference_match"] is False
    assert any(n.startswith("not in reference") for n in rep.notes)


def test_figure1_other_group(A3):
    rep = figure1(A3.weyl_group)
    assert "reference_match" not in rep.counts


def test_adtable():
    rep = a3_adtable()
    assert rep.counts["failures"] == 8 and rep.counts["reference_match"] is True
    rows = {(tuple(r["pair"]), r["witnesses"]["t"]): r["witnesses"] for r in rep.rows}
    w = rows[(("s2", "s2*s1*s3*s2"), "s1*s2*s1")]
    assert w["P"] == "1 + q" and w["Q"] == "1 + q"


def test_adtable_row8(A3):
    g = A3.weyl_group
    last = parse_listing(g, A3_ADTABLE_LISTING, 3)[-1]
    assert [g.word(k) for k in last.elements] == [g.word(g.from_word([1])),
                                                  g.word(g.from_word([0, 1, 0, 2, 1])),
                                                  g.word(g.from_word([1, 2, 1]))]
    assert last.values == (QPoly({0: 1}), QPoly({0: 1, 1: 1}))


def test_latex(fig):
    tex = figure1_latex(fig)
    assert tex.startswith("\\documentclass") and tex.rstrip().endswith("\\end{document}")
    assert tex.count("\\checkmark") == 38
    assert tex.count("\\begin{array}") == tex.count("\\end{array}")
    tex = adtable_latex(a3_adtable())
    assert "1+q" in tex.replace(" ", "")


def test_unknown_target():
    with pytest.raises(ValueError):
        run_reproduce("figure2")
