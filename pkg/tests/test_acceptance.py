"""The ten acceptance criteria, one test each.

Each test prints a single ``[PASS]``/``[FAIL]`` line (visible under ``pytest -v``
or when run as a script: ``python3 tests/test_acceptance.py``).
"""
import sys

import pytest

from surgery_lattices.verification import CHECKS, run_check


def _report(capsys, res):
    with capsys.disabled():
        print("\n" + res.line(), flush=True)


@pytest.mark.parametrize("number", [c[0] for c in CHECKS],
                         ids=[f"criterion_{c[0]:02d}" for c in CHECKS])
def test_criterion(number, capsys):
    res = run_check(number)
    _report(capsys, res)
    assert res.passed, res.detail


if __name__ == "__main__":
    results = [run_check(num) for num, _, _ in CHECKS]
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.passed for r in results) else 1)
