import csv
import io
import json
from fractions import Fraction

import pytest

from qcross.errors import InfeasibleGrid, UnknownClaim
from qcross.scan import ALIASES, CHECKS, ScanGrid, expected_h1_h2_relation, resolve_checks, scan_numeric_lemmas


def test_ratio_bounds_example():
    rep = scan_numeric_lemmas(ScanGrid(checks=("ratio_bounds",), q=(2,), m_max=5))
    rows = {r.lemma_id: r for r in rep.rows if r.grid_point == {"q": 2, "m": 5, "i": 2}}
    assert rows["ratio_bounds/up-lower"].lhs == 8
    assert rows["ratio_bounds/up-lower"].rhs == Fraction(31, 3)
    assert rows["ratio_bounds/up-upper"].rhs == 16
    assert rep.ok


def test_filtering_is_recorded():
    rep = scan_numeric_lemmas(ScanGrid(checks=("h_monotone",), q=(2,), k_max=3, n_range=(5, 9)))
    cov = rep.coverage["h_monotone"]
    # k in 1..3, t in 1..k, n in 5..9: 6 (k, t) pairs x 5 values of n
    assert cov["points_checked"] + cov["points_filtered"] == 30
    assert cov["points_filtered"] > 0
    assert all(r.grid_point["n"] >= 2 * r.grid_point["k"] + 2 for r in rep.rows)


def test_empty_grid_is_infeasible():
    with pytest.raises(InfeasibleGrid):
        scan_numeric_lemmas(ScanGrid(checks=("h1_vs_f",), q=(2,), k_max=3, n_range=(5, 9)))


def test_aliases_and_unknown_names():
    assert resolve_checks(["2.6"]) == ALIASES["2.6"]
    assert resolve_checks(["2.1", "ratio_bounds"]) == ("ratio_bounds", "gauss_bounds")
    assert set(resolve_checks(["all"])) == set(CHECKS)
    with pytest.raises(UnknownClaim):
        resolve_checks(["nope"])


def test_violation_is_reported_with_exact_values():
    rep = scan_numeric_lemmas(ScanGrid(checks=("h1_vs_h2",), q=(2,), k_max=2, n_extra=0))
    (row,) = rep.rows
    assert row.grid_point == {"q": 2, "n": 14, "k": 2, "t": 1}
    # k = t + 1 makes both constructions the same family
    assert row.lhs == row.rhs == 49 and row.status == "fail"
    assert not rep.ok and rep.violations == [row]


def test_expected_relation():
    assert expected_h1_h2_relation(4, 1) == ">"
    assert expected_h1_h2_relation(3, 1) == "="
    assert expected_h1_h2_relation(5, 2) == "<"


def test_workers_do_not_change_the_report():
    grid = ScanGrid(checks=("h_monotone", "ratio_step"), q=(2, 3), k_max=4, n_extra=3)
    assert scan_numeric_lemmas(grid).to_json() == scan_numeric_lemmas(grid, workers=2).to_json()


def test_serialization_formats():
    rep = scan_numeric_lemmas(ScanGrid(checks=("gauss_bounds",), q=(3,), m_max=3))
    d = json.loads(rep.to_json())
    assert d["violations"] == 0
    assert all("/" in r["lhs"] and "/" in r["rhs"] for r in d["rows"])
    text = rep.to_csv(["tool: test"])
    assert text.startswith("# tool: test\n")
    rows = list(csv.reader(io.StringIO("\n".join(l for l in text.splitlines() if not l.startswith("#")))))
    assert rows[0] == ["lemma_id", "grid_point", "lhs", "rhs", "relation", "status"]
    assert len(rows) == 1 + len(rep.rows)


def test_h1_gate_runs_with_h1_checks():
    rep = scan_numeric_lemmas(ScanGrid(checks=("h1_vs_f",), q=(2,), k_max=3, n_extra=0))
    assert len(rep.gate) == 3 and all(r.status == "pass" for r in rep.gate)
    rep2 = scan_numeric_lemmas(ScanGrid(checks=("h2_vs_g",), q=(2,), k_max=3, n_extra=0))
    assert rep2.gate == []
