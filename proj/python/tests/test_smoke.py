import os
from pathlib import Path

import pytest

import arl

FIXTURES = Path(os.environ.get("ARL_FIXTURES", Path(__file__).resolve().parents[2] / "fixtures"))


def test_module_round_trip():
    m = arl.ZlModule.parse("Z/l^2 + Zl^1", 2)
    assert m.torsion == [2]
    assert m.rank == 1
    assert arl.limit(arl.to_tower(m)) == m


def test_levels_of_zl():
    assert arl.to_tower(arl.ZlModule(3, [], 1)).level(2) == [27]


def test_hypernat():
    h = arl.HyperNat.parse("h")
    assert str(h - arl.HyperNat(1)) == "h-1"
    assert h.compare(arl.HyperNat(100)) == "GT"
    with pytest.raises(arl.ArlError) as err:
        arl.HyperNat(1) - arl.HyperNat(2)
    assert err.value.kind == "NegativeResult"


def test_fixture_upsilon():
    towers = arl.load_tower_file(str(FIXTURES / "basic.arl.json"))
    u = arl.upsilon(towers["lplus"], quotients=3)
    assert u["marker"] == "h"
    assert u["index"] == "h-1"
    assert len(u["quotients"]) == 4
    assert str(arl.tensor_zl(towers["zl"])) == "Zl^1"


def test_bad_file_reports_kind():
    with pytest.raises(arl.ArlError) as err:
        arl.load_tower_file(str(FIXTURES / "bad_matrix.arl.json"))
    assert err.value.kind == "Parse"


def test_verify_replays():
    out = arl.verify("phi", seed=7, cases=5)
    assert out["failed"] == 0 and out["unknown"] == 0
    ok, checked, mismatched = arl.replay(out["report"])
    assert ok and checked == 5 and mismatched == 0
