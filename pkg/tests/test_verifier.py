import csv
import io
import json

import pytest

from cruciform import verifier as v
from cruciform.closed_forms import ExactScaled


def _entry(led, params):
    hits = [e for e in led.entries if e.params[:len(params)] == tuple(params)]
    assert hits, params
    return hits[0]


@pytest.fixture(scope="module")
def theorem1():
    return v.verify_theorem1(max_mn=2)


def test_theorem1_hand_tuples(theorem1):
    assert _entry(theorem1, (1, 1, 1, 0, 0, 0)).status == v.MATCH
    assert _entry(theorem1, (1, 1, 0, 1, 1, -1)).status == v.MATCH
    for m in range(1, 3):
        for a in range(m):
            e = _entry(theorem1, (m, 0, a, 0, m - 1 - a, 0))
            assert e.count == 2 ** (m * (m + 1) // 2) and e.status == v.MATCH


def test_theorem1_discrepancy_is_characterized(theorem1):
    e = _entry(theorem1, (2, 1, 1, 1, 0, 0))
    assert e.count == 48 and e.formula == 96 and e.status == v.MISMATCH
    assert theorem1.verdict == v.REFUTED
    assert theorem1.findings["minus_(a+c)(b+d)_correction_matches_all"]
    assert theorem1.findings["log2_count_over_formula"].exact
    assert len(theorem1.findings["hypotheses"]) == 2


def test_theorem2():
    led = v.verify_theorem2(3)
    assert led.verdict == v.CONFIRMED
    assert _entry(led, (2, 1, 1)).count == 32


def test_complementation_small():
    counts, formulas = v.verify_complementation(max_mn=2, formula_max_mn=9, extra_count_pairs=())
    assert counts.verdict == v.CONFIRMED and counts.findings["fitted_equals_printed"]
    assert _entry(formulas, (2, 1, 0, 1, 0, 1)).status == v.MATCH
    big = _entry(formulas, (9, 6, 3, 4, 5, 2))
    assert big.status == v.MISMATCH and big.observed == ExactScaled(4, 1)
    assert formulas.findings["agreement_set_is_2(a+c)=m+n-3"]


def test_krattenthaler_ledger():
    kr, chain = v.verify_krattenthaler(max_sum=3)
    e = _entry(kr, (1, 0, 0, 0, 0, 0))
    assert (e.count, e.formula, e.status) == (2, 16, v.MISMATCH)
    assert _entry(kr, (1, 1, 1, 0, 0, 0)).count == 32
    assert _entry(kr, (2, 1, 1, 1, 0, 0)).count == 192
    assert chain.verdict == v.CONFIRMED
    assert kr.findings["candidate_odd_part_failures"] == []


def test_splitting():
    counts, t_reg, formulas = v.verify_splitting(count_max_mn=2, formula_max_mn=4)
    assert counts.verdict == v.CONFIRMED and formulas.verdict == v.CONFIRMED
    assert _entry(t_reg, (1, 1, 0, 0, 0)).count == 4


def test_conjecture_and_divisibility():
    assert v.verify_conjecture(4).verdict == v.CONFIRMED
    div, ident = v.verify_divisibility(n_max=3, formula_n_max=10)
    assert [e.count for e in div.entries] == [1, 4, 60]
    assert div.verdict == ident.verdict == v.CONFIRMED


def test_engine_suite_small():
    led = v.verify_engines(max_cells=16, rect_max=4)
    assert led.verdict == v.CONFIRMED and len(led.entries) > 20


def test_verdicts_and_exit_codes():
    led = v.VerificationLedger("x")
    assert led.verdict == v.UNDECIDED
    led.add((1,), 2, ExactScaled.of(2))
    assert led.verdict == v.CONFIRMED and v.exit_code([led]) == 0
    led.add((2,), None, ExactScaled.of(2))
    assert led.verdict == v.UNDECIDED and v.exit_code([led]) == 0
    led.add((3,), 2, ExactScaled.of(4))
    assert led.verdict == v.REFUTED and v.exit_code([led]) == 2
    led.hard_failure = True
    assert v.exit_code([led]) == 1


def test_outputs_deterministic_and_well_formed(theorem1):
    again = v.verify_theorem1(max_mn=2)
    assert v.ledgers_to_json([theorem1]) == v.ledgers_to_json([again])
    doc = json.loads(v.ledgers_to_json([theorem1], header={"k": 1}))
    assert doc["verdict"] == v.REFUTED and doc["header"] == {"k": 1}
    rows = list(csv.reader(io.StringIO(v.ledgers_to_csv([theorem1]))))
    assert tuple(rows[0]) == v.CSV_COLUMNS
    assert len(rows) == len(theorem1.entries) + 1


def test_unknown_suite():
    with pytest.raises(KeyError):
        v.run_suites(["nope"])
