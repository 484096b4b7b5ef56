from __future__ import annotations

import pytest

from arrowkh.calibration import KISHINO_ARROW, CalibrationError, CalibrationResult, calibrate, self_test
from arrowkh.statesum import DEFAULT_SIDES


@pytest.fixture(scope="module")
def result():
    return calibrate()


def test_every_table_scored(result):
    assert len(result.flags) == 256


def test_unique_up_to_reflection(result):
    assert result.survivors == sorted([DEFAULT_SIDES.code, DEFAULT_SIDES.reflected().code])
    assert result.unique_up_to_reflection
    assert self_test(result) is result


def test_each_requirement_prunes(result):
    flat = [c for c, f in result.flags.items() if f[0]]
    kish = [c for c, f in result.flags.items() if f[0] and f[1]]
    moves = [c for c, f in result.flags.items() if f[2]]
    assert len(flat) < 256 and len(kish) <= len(flat)
    assert set(result.survivors) <= set(moves)


def test_self_test_rejects_ambiguity():
    fake = CalibrationResult({"RLRLLRLR": (True, True, True), "LLLLLLLL": (True, True, True)})
    with pytest.raises(CalibrationError):
        self_test(fake)
    wrong = CalibrationResult({"LLLLLLLL": (True, True, True), "RRRRRRRR": (True, True, True)})
    with pytest.raises(CalibrationError):
        self_test(wrong)


def test_summary_text(result):
    text = result.summary()
    assert "tables tested: 256" in text and DEFAULT_SIDES.code in text


def test_golden_constant_text():
    from arrowkh.poly import render

    assert render(KISHINO_ARROW) == "1 + A^4 + A^-4 - (A^4+2+A^-4)*K1^2 + 2*K2"
