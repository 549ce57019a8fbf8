"""Acceptance criteria, one marked group per criterion.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import json
import math
import subprocess
import sys
import time

import pytest

from dsombor import bounds as bd
from dsombor import indices as ix
from dsombor.generate import (
    EnumerationSpec, _level, canonical_code, cycle, enumerate_graphs, matching, path, star,
)
from dsombor.graph import is_connected, parse_graph6, write_graph6
from dsombor.indices import compute_all
from dsombor.verify import CONFIRMED, NOT_SUFFICIENT, characterization_audit, verify_corpus
from conftest import corpus
from oracles import naive_indices

SQ2 = math.sqrt(2)
TOL = 1e-9
MUST_HOLD = [rec.id for rec in bd.catalog() if rec.must_hold]
REGULAR_EQUALITY = ["T-SO-lower", "T-SO-upper", "T-ISI", "T-SDD-upper", "T-SDD-lower",
                    "T-AlbM", "T-AlbGA-upper", "C-MaxDeg", "B0-lower"]


def _regular_connected(graphs):
    return [g for g in graphs if g.m >= 1 and is_connected(g) and len(set(g.degrees())) == 1]


@pytest.fixture(scope="module")
def sweep7():
    return verify_corpus(corpus(7), bd.catalog(), TOL)


# 1
@pytest.mark.criterion(1)
def test_index_oracle_equivalence():
    graphs = corpus(6)
    assert len(graphs) == 208
    start = time.perf_counter()
    worst = 0.0
    for g in graphs:
        ref = naive_indices(g.n, list(g.edges()))
        for v in compute_all(g):
            want = ref[v.kind.token]
            err = abs(v.value - want) / abs(want) if want else abs(v.value)
            worst = max(worst, err)
    elapsed = time.perf_counter() - start
    assert worst <= 1e-12
    assert elapsed < 5.0


# 2
@pytest.mark.criterion(2)
def test_enumeration_counts_and_runtime():
    _level.cache_clear()
    start = time.perf_counter()
    counts = [sum(1 for _ in enumerate_graphs(EnumerationSpec(n))) for n in range(1, 8)]
    connected = [sum(1 for _ in enumerate_graphs(EnumerationSpec(n, True))) for n in range(1, 8)]
    elapsed = time.perf_counter() - start
    assert counts == [1, 2, 4, 11, 34, 156, 1044]
    assert connected == [1, 1, 2, 6, 21, 112, 853]
    assert elapsed < 60.0


# 3
@pytest.mark.criterion(3)
@pytest.mark.parametrize("bound_id", MUST_HOLD)
def test_no_hard_violations_n7(sweep7, bound_id):
    s = sweep7.bound(bound_id)
    assert s.applicable > 0
    assert s.hard_violations == [], f"{len(s.hard_violations)} violations, first {s.hard_violations[:3]}"


@pytest.mark.criterion(3)
def test_gaf_statement_weaker_than_proof():
    for g in corpus(7):
        vals = compute_all(g)
        proof = bd.evaluate_bound(g, bd.get_bound("T-GAF-proof"), vals, TOL)
        stmt = bd.evaluate_bound(g, bd.get_bound("T-GAF-stmt"), vals, TOL)
        if not proof.applicable:
            continue
        assert not stmt.hard_violation
        gaf = {v.kind: v.value for v in vals}[ix.GAF]
        if g.m > gaf:
            assert stmt.slack >= proof.slack


# 4
@pytest.mark.criterion(4)
def test_regular_dso_closed_form():
    regular = _regular_connected(corpus(7))
    assert regular
    for g in regular:
        dso = ix.compute_index(g, ix.DSO).value
        want = g.m * SQ2 / 2
        assert abs(dso - want) <= 1e-12 * want


@pytest.mark.criterion(4)
@pytest.mark.parametrize("bound_id", REGULAR_EQUALITY)
def test_regular_equality(bound_id):
    rec = bd.get_bound(bound_id)
    missed = []
    for g in _regular_connected(corpus(7)):
        e = bd.evaluate_bound(g, rec, compute_all(g), TOL)
        if bound_id == "T-SDD-lower" and g.degrees()[0] < 2:
            assert not e.applicable
            continue
        if not (e.applicable and e.equality_achieved):
            missed.append((write_graph6(g), e.slack))
    assert missed == [], f"no equality on {missed}"


# 5
@pytest.mark.criterion(5)
@pytest.mark.parametrize("m", range(1, 6))
def test_matching_dso_half_bso(m):
    g = matching(m)
    v = {x.kind: x.value for x in compute_all(g)}
    assert abs(v[ix.DSO] - v[ix.BSO] / 2) <= 1e-12 * v[ix.DSO]


@pytest.mark.criterion(5)
def test_only_matchings_reach_bso_lower(sweep7):
    s = sweep7.bound("T-BSO-lower")
    graphs = {write_graph6(g): g for g in corpus(7)}
    assert s.equality_count > 0 and s.equality_overflow == 0
    for g6 in s.equality_achievers:
        assert max(graphs[g6].degrees()) <= 1


# 6
@pytest.mark.criterion(6)
def test_spot_values():
    dso = lambda g: ix.compute_index(g, ix.DSO).value  # noqa: E731
    assert abs(dso(path(4)) - (2 * math.sqrt(5) / 3 + SQ2 / 2)) <= 1e-9
    assert abs(dso(star(4)) - 3 * math.sqrt(10) / 4) <= 1e-9
    assert abs(dso(star(4)) - 2.3717082451) <= 1e-9
    for n in range(3, 8):
        assert abs(dso(cycle(n)) - n * SQ2 / 2) <= 1e-9


# 7
def _audit(report, bound_id, claim):
    return next(a for a in characterization_audit(report) if a.bound_id == bound_id and a.claim == claim)


@pytest.mark.criterion(7)
def test_audit_so_upper_confirmed():
    report = verify_corpus(corpus(6, True), [bd.get_bound("T-SO-upper")], TOL)
    assert _audit(report, "T-SO-upper", "regular").findings == (CONFIRMED,)
    achievers = {parse_graph6(x) for x in report.stats[0].equality_achievers}
    regular = set(_regular_connected(corpus(6, True)))
    assert achievers == regular


@pytest.mark.criterion(7)
def test_audit_bso_upper_counterexample():
    report = verify_corpus(corpus(6), [bd.get_bound("T-BSO-upper")], TOL)
    a = _audit(report, "T-BSO-upper", "all-components-regular")
    assert NOT_SUFFICIENT in a.findings
    assert canonical_code(matching(2)).decode() in a.sufficiency_witnesses
    e = bd.evaluate_bound(matching(2), bd.get_bound("T-BSO-upper"), compute_all(matching(2)), TOL)
    assert e.holds and not e.equality_achieved
    assert e.lhs_value == pytest.approx(SQ2, rel=1e-12) and e.rhs_value == pytest.approx(2 * SQ2, rel=1e-12)


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "dsombor", *args], capture_output=True)


@pytest.mark.criterion(7)
def test_full_sweep_exits_zero():
    proc = _cli("sweep", "--n-max", "6", "--bounds", "all", "--jobs", "1")
    doc = json.loads(proc.stdout)
    violated = [b["id"] for b in doc["bounds"] if b["violations"]]
    assert proc.returncode == 0, f"exit {proc.returncode}; hard violations in {violated}"


# 8
@pytest.mark.criterion(8)
def test_graph6_roundtrip():
    graphs = corpus(7)
    assert len(graphs) == 1252
    for g in graphs:
        assert parse_graph6(write_graph6(g)) == g
    from dsombor.generate import complete
    assert write_graph6(complete(3)) == "Bw"
    assert write_graph6(complete(4)) == "C~"


# 9
@pytest.mark.criterion(9)
def test_sweep_determinism(tmp_path):
    outs = []
    for i, jobs in enumerate(["1", "1", "8"]):
        path_ = tmp_path / f"r{i}.json"
        _cli("sweep", "--n-max", "6", "--bounds", "all", "--jobs", jobs, "-o", str(path_))
        outs.append(path_.read_bytes())
    assert outs[0] and outs[0] == outs[1] == outs[2]
