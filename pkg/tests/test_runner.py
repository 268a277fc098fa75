import json

import jsonlines
import pytest

from wallx.core.errors import UnknownSuiteError
from wallx.core.logger import LOG_PATH
from wallx.core.registry import is_slow, select_suites, suite_names
from wallx.core.runner import run_suite


@pytest.fixture
def tmp_suite(tmp_path):
    """Create a minimal temporary suite that echoes its params."""
    suite_dir = tmp_path / "suites" / "echo"
    suite_dir.mkdir(parents=True)

    suite_json = {
        "name": "echo",
        "description": "Test suite that reports its params",
        "params": {
            "d": {"type": "int", "default": 1},
            "mu": {"type": "str", "default": "-9/14"},
            "fail": {"type": "bool", "default": False},
        },
    }
    (suite_dir / "suite.json").write_text(json.dumps(suite_json))

    run_py = '''
def run(params):
    if params["d"] < 0:
        raise ValueError("negative rank")
    failed = 1 if params["fail"] else 0
    return {"params": params, "passed": 1 - failed, "failed": failed, "failures": []}
'''
    (suite_dir / "run.py").write_text(run_py)

    return suite_dir


@pytest.fixture(autouse=True)
def clean_log():
    """Remove wallx.log before each test to isolate log assertions."""
    if LOG_PATH.exists():
        LOG_PATH.unlink()
    yield
    if LOG_PATH.exists():
        LOG_PATH.unlink()


def _events():
    with jsonlines.open(LOG_PATH) as reader:
        return list(reader)


def test_run_with_defaults(tmp_suite, monkeypatch):
    """run_suite merges defaults and names the report after the suite."""
    import wallx.core.runner as runner_mod

    monkeypatch.setattr(runner_mod, "SUITES_ROOT", tmp_suite.parent)

    report = run_suite("echo")
    assert report["suite"] == "echo"
    assert report["params"] == {"d": 1, "mu": "-9/14", "fail": False}


def test_context_only_forwards_declared_keys(tmp_suite, monkeypatch):
    """Context values reach the suite only when declared; explicit params win."""
    import wallx.core.runner as runner_mod

    monkeypatch.setattr(runner_mod, "SUITES_ROOT", tmp_suite.parent)

    context = {"d": 3, "mu": "-1/3", "seed": 5, "jobs": None}
    report = run_suite("echo", params={"d": 2}, context=context)
    assert report["params"] == {"d": 2, "mu": "-1/3", "fail": False}


def test_log_contains_success(tmp_suite, monkeypatch):
    """wallx.log should contain start and success events after a run."""
    import wallx.core.runner as runner_mod

    monkeypatch.setattr(runner_mod, "SUITES_ROOT", tmp_suite.parent)

    run_suite("echo", run_id="abcd1234")

    statuses = [e["status"] for e in _events()]
    assert statuses == ["start", "success"]
    assert all(e["run_id"] == "abcd1234" for e in _events())


def test_log_records_failures(tmp_suite, monkeypatch):
    import wallx.core.runner as runner_mod

    monkeypatch.setattr(runner_mod, "SUITES_ROOT", tmp_suite.parent)

    run_suite("echo", params={"fail": True})
    assert _events()[-1]["status"] == "fail"


def test_error_is_logged_and_raised(tmp_suite, monkeypatch):
    import wallx.core.runner as runner_mod

    monkeypatch.setattr(runner_mod, "SUITES_ROOT", tmp_suite.parent)

    with pytest.raises(ValueError, match="negative rank"):
        run_suite("echo", params={"d": -1})
    last = _events()[-1]
    assert last["status"] == "error"
    assert last["error"] == "negative rank"


def test_unknown_param(tmp_suite, monkeypatch):
    """Should raise ValueError for unknown params."""
    import wallx.core.runner as runner_mod

    monkeypatch.setattr(runner_mod, "SUITES_ROOT", tmp_suite.parent)

    with pytest.raises(ValueError, match="Unknown params"):
        run_suite("echo", params={"unknown_key": "val"})


def test_unknown_suite(tmp_suite, monkeypatch):
    import wallx.core.runner as runner_mod

    monkeypatch.setattr(runner_mod, "SUITES_ROOT", tmp_suite.parent)

    with pytest.raises(UnknownSuiteError):
        run_suite("nope")


def test_local_suite_takes_priority(tmp_suite, tmp_path, monkeypatch):
    """A ./suites/<name> directory shadows the built-in suite of the same name."""
    local = tmp_path / "work" / "suites" / "polytope_fixtures"
    local.mkdir(parents=True)
    (local / "suite.json").write_text(json.dumps({"name": "polytope_fixtures", "params": {}}))
    (local / "run.py").write_text('def run(params):\n    return {"passed": 0, "failed": 0, "local": True}\n')
    monkeypatch.chdir(tmp_path / "work")

    assert run_suite("polytope_fixtures")["local"] is True


# --- built-in suites ---

def test_builtin_polytope_fixtures():
    report = run_suite("polytope_fixtures")
    assert report["failed"] == 0
    assert report["passed"] > 0


def test_builtin_level_uniqueness():
    report = run_suite("level_uniqueness", context={"d": 2, "a": 1, "mu": "-9/14"})
    assert report["failed"] == 0


def test_builtin_bwb_counts():
    report = run_suite("bwb_counts", context={"d": 2, "a": 1})
    assert report["failed"] == 0


@pytest.mark.parametrize("a", [0, 2])
def test_builtin_window_consistency_at_non_generic_mu(a):
    report = run_suite("window_consistency", context={"d": 3, "a": a, "mu": "-1/3"})
    assert report["generic"] is False
    assert report["window"] == "closed"
    assert report["failed"] == 0


@pytest.mark.parametrize("d", [1, 2, 3])
def test_builtin_pt_window(d):
    report = run_suite("pt_window", context={"d": d, "a": 1, "mu": "-9/14", "jobs": 1})
    assert report["failed"] == 0
    assert report["passed"] > 0


def test_builtin_pt_window_at_non_generic_mu():
    report = run_suite("pt_window", context={"d": 2, "a": 2, "mu": "-1/2", "jobs": 1})
    assert report["generic"] is False
    assert report["failed"] == 0


@pytest.mark.parametrize("d", [1, 2])
def test_builtin_point_decomposition(d):
    report = run_suite("point_decomposition", context={"d": d, "a": 1, "mu": "-9/14", "jobs": 1})
    assert report["failed"] == 0
    assert report["generators"] == {1: 1, 2: 3}[d]


# --- registry ---

def test_registry_order():
    assert suite_names()[0] == "polytope_fixtures"
    assert is_slow("orthogonality")
    assert not is_slow("bwb_counts")


def test_select_keeps_registry_order():
    assert select_suites(["bwb_counts", "polytope_fixtures"]) == ["polytope_fixtures", "bwb_counts"]
    assert select_suites(None) == suite_names()


def test_select_unknown():
    with pytest.raises(UnknownSuiteError):
        select_suites(["nope"])
