from __future__ import annotations

import importlib.util
import time
from pathlib import Path

from wallx.core.errors import UnknownSuiteError
from wallx.core.logger import log_event
from wallx.core.validator import load_suite, merge_params


SUITES_ROOT = Path(__file__).resolve().parent.parent / "suites"


def resolve_suite_dir(name: str) -> Path:
    """Return suite directory: local ./suites/<name> takes priority over built-ins."""
    local = Path.cwd() / "suites" / name
    if local.is_dir():
        return local
    builtin = SUITES_ROOT / name
    if builtin.is_dir():
        return builtin
    raise UnknownSuiteError(
        f"Suite '{name}' not found in {Path.cwd() / 'suites'} nor {SUITES_ROOT}"
    )


def load_run_module(suite_dir: Path):
    run_path = suite_dir / "run.py"
    if not run_path.exists():
        raise FileNotFoundError(f"run.py not found in {suite_dir}")
    spec = importlib.util.spec_from_file_location(f"suite_{suite_dir.name}.run", run_path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    if not hasattr(mod, "run"):
        raise AttributeError(f"run.py in {suite_dir} has no 'run' function")
    return mod


def run_suite(
    name: str,
    params: dict | None = None,
    context: dict | None = None,
    run_id: str | None = None,
) -> dict:
    """Run one verification suite and return its report.

    ``context`` holds the shared CLI values (d, a, mu, seed, jobs); only those the suite
    declares are forwarded. Explicit ``params`` win over context.
    """
    suite_dir = resolve_suite_dir(name)
    schema = load_suite(suite_dir)

    provided = {k: v for k, v in (context or {}).items() if k in schema.params and v is not None}
    provided.update(params or {})
    merged = merge_params(schema, provided)

    mod = load_run_module(suite_dir)

    log_event(name, "start", params=merged, run_id=run_id)
    t0 = time.perf_counter()
    try:
        report = mod.run(merged)
        duration_ms = (time.perf_counter() - t0) * 1000
        status = "success" if report.get("failed", 0) == 0 else "fail"
        log_event(name, status, duration_ms=duration_ms, run_id=run_id)
    except Exception as exc:
        duration_ms = (time.perf_counter() - t0) * 1000
        log_event(name, "error", duration_ms=duration_ms, error=str(exc), run_id=run_id)
        raise
    report.setdefault("suite", name)
    return report
