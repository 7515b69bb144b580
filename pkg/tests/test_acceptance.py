"""Acceptance suite: fourteen criteria, one PASS/FAIL line each.

Counts, field, sizes and the per-criterion time limit come from
``AcceptanceConfig``. Run ``pytest tests/test_acceptance.py -v`` or
``python scripts/run_acceptance.py``.
"""

import pytest

from derivk.acceptance import CRITERIA
from derivk.config import AcceptanceConfig

CFG = AcceptanceConfig()


@pytest.mark.parametrize("criterion", CRITERIA, ids=[c.__name__ for c in CRITERIA])
def test_criterion(criterion, capsys):
    res = criterion(CFG)
    with capsys.disabled():
        print("\n" + res.line())
        for note in res.notes:
            print("    " + note)
    assert res.cases > 0 and res.rational_cases > 0
    assert not res.failures, res.failures
    assert res.seconds <= CFG.time_limit, f"{res.seconds:.1f}s"
