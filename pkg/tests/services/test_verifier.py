import math

import pytest
from unittest.mock import MagicMock, patch

from src.walkzeta.services.verifier import CheckResult, Verifier, _i_power, _result


@pytest.fixture(scope="module")
def quick_results():
    return Verifier("quick").run()


def test_quick_level_passes(quick_results):
    """A correct build passes every quick check."""
    failed = [(r.name, r.worst_error, r.detail) for r in quick_results if not r.passed]
    assert failed == []


def test_every_check_reports(quick_results):
    names = [r.name for r in quick_results]
    assert names == [name for name, _, _ in Verifier("quick").checks()]
    assert all(r.cases > 0 for r in quick_results)
    assert all(r.worst_error <= r.tolerance for r in quick_results)


def test_unknown_level():
    with pytest.raises(ValueError, match="Unknown verification level"):
        Verifier("exhaustive")


def test_callback_protocol():
    verifier = Verifier("quick")
    fake = CheckResult("fake", "Fake check", True, 0.0, 1.0, 1)
    callback = MagicMock()
    with patch.object(Verifier, "checks", return_value=[("fake", "Fake check", lambda: fake)]):
        results = verifier.run(callback)

    assert results == [fake]
    callback.assert_any_call("verify", "Checking fake...")
    callback.assert_called_with("verify", None)


def test_raising_check_is_reported_as_failure():
    verifier = Verifier("quick")

    def boom():
        raise RuntimeError("boom")

    with patch.object(Verifier, "checks", return_value=[("boom", "Always raises", boom)]):
        [result] = verifier.run()

    assert not result.passed
    assert result.detail == "RuntimeError: boom"
    assert math.isnan(result.worst_error)


def test_result_helper():
    assert _result("x", "d", [1e-12, 3e-11], 1e-10).passed
    assert not _result("x", "d", [1e-9], 1e-10).passed
    assert not _result("x", "d", [], 1e-10).passed
    assert not _result("x", "d", [float("nan")], 1e-10).passed
    assert _result("x", "d", [0.0], 0.0).passed


def test_i_power():
    assert [_i_power(x) for x in range(-2, 3)] == [-1, -1j, 1, 1j, -1]


def test_to_dict():
    data = CheckResult("kernel_origin", "d", True, 1e-15, 1e-12, 9).to_dict()
    assert data["name"] == "kernel_origin"
    assert data["cases"] == 9
