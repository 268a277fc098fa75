"""Verification registry: ordered suites run by `wallx verify`."""

from wallx.core.errors import UnknownSuiteError

VERIFY_SUITES = [
    {"suite": "polytope_fixtures"},
    {"suite": "level_uniqueness"},
    {"suite": "invariant_inequalities"},
    {"suite": "count_bijection"},
    {"suite": "transform_identities"},
    {"suite": "window_consistency"},
    {"suite": "pt_window"},
    {"suite": "point_decomposition"},
    {"suite": "bwb_counts"},
    {"suite": "orthogonality", "slow": True},
    {"suite": "adhm_layer"},
]

# Quick lookup: suite name → entry dict
_ENTRY_BY_NAME = {s["suite"]: s for s in VERIFY_SUITES}


def suite_names() -> list[str]:
    return [s["suite"] for s in VERIFY_SUITES]


def is_slow(suite: str) -> bool:
    """Return True for suites whose sweep grows fastest with d."""
    return _ENTRY_BY_NAME.get(suite, {}).get("slow", False)


def select_suites(requested: list[str] | None) -> list[str]:
    """Registry order restricted to ``requested`` (all when empty)."""
    if not requested:
        return suite_names()
    unknown = [name for name in requested if name not in _ENTRY_BY_NAME]
    if unknown:
        raise UnknownSuiteError(f"Unknown suite(s): {', '.join(unknown)}")
    return [name for name in suite_names() if name in requested]
