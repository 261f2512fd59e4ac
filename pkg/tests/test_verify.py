import pytest

from stfib.errors import UsageError
from stfib.verify import SUITES, n_catalan_closed_form_residual, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes(name):
    rows = run_suite(name)
    failed = [r for r in rows if not r["pass"]]
    assert rows and not failed, failed[:5]


def test_unknown_suite():
    with pytest.raises(UsageError):
        run_suite("nope")


def test_n_catalan_closed_form_denominator():
    assert n_catalan_closed_form_residual(0.1) <= 1e-10
    # without the factor x in the denominator the closed form is off by 1/x
    assert n_catalan_closed_form_residual(0.1, corrected=False) > 0.5
