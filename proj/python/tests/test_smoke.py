from fractions import Fraction

import pytest

import charcyc


def test_bundled_validates():
    assert charcyc.validate(charcyc.bundled_dataset()) == []


def test_solve_single_parameter():
    report = charcyc.solve(charcyc.bundled_dataset())
    assert report["free_parameters"] == ["c"]
    assert report["parameter_bounds"] == [{"parameter": "c", "lower": "2", "upper": None}]
    rows = {tuple(r["source"]): r["mult"] for r in report["cc_table"]}
    assert rows[("S8", "1")] == {"S8": 1, "S7": 1, "S6": 2, "S5": 2, "S4": "c - 2", "S3": 1}
    assert rows[("S1", "1")] == {"S1": 1, "S0": 3}
    loc = report["localization"]["cc"]
    assert loc["S4"] == "c"
    assert all(v == 1 for k, v in loc.items() if k != "S4")


def test_packets_and_verify():
    p = charcyc.packets(charcyc.bundled_dataset())
    assert p["micro"]["S0"]["members"] == ["X5", "X13", "X17", "X19", "X20"]
    assert p["basic_matches_micro"]
    v = charcyc.verify(charcyc.bundled_dataset())
    assert v["weak_equals_union"]["outcome"] == "EQUAL"
    assert [c["outcome"] for c in v["az_micro"]] == ["EQUAL"] * 5


def test_roots():
    roots = [Fraction(-1)] * 4 + [Fraction(-3, 4)] * 2 + [Fraction(-5, 4)] * 2
    assert charcyc.check_halfinteger_roots(roots)
    assert not charcyc.check_halfinteger_roots([Fraction(-1, 2)])


def test_bad_path():
    with pytest.raises(charcyc.DatasetError):
        charcyc.validate("/nonexistent/f4a3.json")
