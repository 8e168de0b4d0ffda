import json

import pytest

from casselman.parallel import WORKERS_ENV, pmap, worker_count
from casselman.report import SCHEMA, Report


def _square(x):
    return x * x


def test_report_json_and_csv():
    rep = Report("scan", "demo", "A2", counts={"pairs": 2})
    rep.add_row(("s1", "s1*s2"), "fail", beta=(1, 1), P="1")
    doc = json.loads(rep.to_json())
    assert doc["schema"] == SCHEMA == 1
    assert doc["rows"][0] == {"pair": ["s1", "s1*s2"], "status": "fail",
                              "witnesses": {"beta": [1, 1], "P": "1"}}
    assert "extra" not in doc
    lines = rep.to_csv().splitlines()
    assert lines[0] == "u,v,status,beta,P"
    assert lines[1] == 's1,s1*s2,fail,"(1,1)",1'
    assert rep.passed
    rep.status = "fail"
    assert not rep.passed
    assert "demo" in rep.summary()


def test_pmap_serial_and_parallel(monkeypatch):
    items = list(range(7))
    assert pmap(_square, items, workers=1) == [x * x for x in items]
    assert pmap(_square, items, workers=2) == [x * x for x in items]
    monkeypatch.setenv(WORKERS_ENV, "3")
    assert worker_count() == 3
    monkeypatch.setenv(WORKERS_ENV, "junk")
    with pytest.raises(ValueError):
        worker_count()
