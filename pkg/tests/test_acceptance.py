import pytest

from shortstar.acceptance import CRITERIA, run_criterion

CAP = 12


@pytest.mark.parametrize("number", [n for n, _, _ in CRITERIA], ids=[f"c{n}" for n, _, _ in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number, CAP)
    with capsys.disabled():
        print(f"\ncriterion {number} ({result.title}): {'PASS' if result.passed else 'FAIL'}")
        for c in result.checks:
            if c.status != "pass":
                print(f"  {c.status}: {c.name} value={c.value} witness={c.witness} {c.error or ''}")
    failing = [(c.name, c.value, c.witness, c.error) for c in result.checks if c.status != "pass"]
    assert not failing
