"""Pure Python API for wallx: returns dicts/lists, never prints.

Every value is JSON-ready: rationals are "p/q" strings, vectors are lists of them.

    from wallx.core.api import decompose, sod_summands

    decompose("0,1", a=1, mu="-9/14")["type"]
    sod_summands(d=2, a=1, mu="-9/14")
"""
from __future__ import annotations

import json

from wallx.core.errors import DimensionMismatchError
from wallx.core.wire import format_rational, format_vector, parse_int_vector, parse_rational, parse_vector


# ---------------------------------------------------------------------------
# Polytopes
# ---------------------------------------------------------------------------

def _point(text: str, d: int):
    from wallx.algebra.weights import Weight

    coords = parse_vector(text)
    if len(coords) != d:
        raise DimensionMismatchError(f"expected {d} coordinates, got {len(coords)} in '{text}'")
    return Weight(coords)


def polytope(kind: str, d: int, a: int = 0, w: int = 0) -> dict:
    """Return the zonotope as JSON (translation, segments, lines)."""
    from wallx.algebra.polytopes import build
    return build(kind, d, a, w).to_json()


def polytope_contains(kind: str, d: int, point: str, a: int = 0, w: int = 0) -> dict:
    """Membership verdict for a point; the certificate holds the segment coefficients."""
    from wallx.algebra.polytopes import build, membership

    P = build(kind, d, a, w)
    x = _point(point, d)
    return {"kind": kind, "d": d, "a": a, "x": format_vector(x), **membership(P, x).to_json()}


def polytope_points(kind: str, d: int, a: int = 0, w: int = 0, shift: str | None = None,
                    jobs: int = 1) -> list[dict]:
    """Dominant integral chi with chi + shift in the polytope, lexicographically."""
    from wallx.algebra.polytopes import build, enumerate_dominant_integral
    from wallx.algebra.weights import Weight

    P = build(kind, d, a, w)
    offset = _point(shift, d) if shift else Weight.zero(d)
    return [{"chi": format_vector(chi)}
            for chi in enumerate_dominant_integral(P, offset, jobs=jobs)]


# ---------------------------------------------------------------------------
# Invariants
# ---------------------------------------------------------------------------

def _weight(chi: str, d: int | None):
    from wallx.algebra.weights import Weight

    coords = parse_vector(chi)
    if d is not None and len(coords) != d:
        raise DimensionMismatchError(f"expected {d} coordinates, got {len(coords)} in '{chi}'")
    return Weight(coords)


def decompose(chi: str, a: int, mu: str, d: int | None = None) -> dict:
    """Level e, p, witness, type and components of a generator weight."""
    from wallx.algebra.invariants import type_of_weight

    weight = _weight(chi, d)
    mu_q = parse_rational(mu)
    out = type_of_weight(weight, a, mu_q).to_json()
    out.update({"chi": format_vector(weight), "a": a, "mu": format_rational(mu_q)})
    return out


def decompose_point(chi: str, mu: str, d: int | None = None) -> dict:
    """Blocks of a weight whose shifted point lies in V(d)."""
    from wallx.algebra.invariants import point_type_of_weight

    weight = _weight(chi, d)
    mu_q = parse_rational(mu)
    out = point_type_of_weight(weight, mu_q).to_json()
    out.update({"chi": format_vector(weight), "mu": format_rational(mu_q)})
    return out


# ---------------------------------------------------------------------------
# Summands
# ---------------------------------------------------------------------------

def sod_summands(
    d: int, a: int, mu: str, closed_ends: bool = False, side: str = "DT"
) -> list[dict]:
    """Summand labels in canonical order, each with its generator count.

    ``side`` is DT, PT, or ``points`` for the labels of the point category V(d) (a is ignored).
    """
    from wallx.algebra.sod import point_summands_with_counts, summands_with_counts

    mu_q = parse_rational(mu)
    if side == "points":
        summands = point_summands_with_counts(d, mu_q, closed_ends)
    else:
        summands = summands_with_counts(d, a, mu_q, closed_ends, side=side)
    return [s.to_json() for s in summands]


def window(chi: str, e_i: int, a: int, mu: str, side: str = "DT") -> dict:
    from wallx.algebra.sod import window_report
    from wallx.algebra.weights import Weight

    weight = Weight(parse_vector(chi))
    return {"chi": format_vector(weight), **window_report(weight, e_i, a, parse_rational(mu), side)}


# ---------------------------------------------------------------------------
# Borel-Weil-Bott
# ---------------------------------------------------------------------------

def bwb(chi: str, lam: str, a: int, framed: bool = False, include_vanished: bool = False,
        max_terms: int | None = None, d: int | None = None) -> list[dict]:
    from wallx.algebra.bwb import bwb_terms
    from wallx.algebra.weights import Cocharacter, QuiverShape, Weight

    exps = parse_int_vector(lam)
    if d is not None and len(exps) != d:
        raise DimensionMismatchError(f"expected {d} exponents, got {len(exps)} in '{lam}'")
    weight = _point(chi, len(exps))
    shape = QuiverShape(len(exps), a, framed=framed)
    terms = bwb_terms(weight, shape, Cocharacter(exps), max_terms=max_terms,
                      include_vanished=include_vanished)
    return [t.to_json() for t in terms]


def orthogonality(chi: str, chi_prime: str, a: int, mu: str, sample_cap: int | None = None,
                  seed: int = 0) -> dict:
    from wallx.algebra.bwb import DEFAULT_SAMPLE_CAP, orthogonality_check
    from wallx.algebra.weights import Weight

    left, right = Weight(parse_vector(chi)), Weight(parse_vector(chi_prime))
    if left.d != right.d:
        raise DimensionMismatchError(f"chi has d={left.d} but chi' has d={right.d}")
    verdict = orthogonality_check(None, None, left, right, a, parse_rational(mu),
                                  sample_cap=sample_cap or DEFAULT_SAMPLE_CAP, seed=seed)
    return verdict.to_json()


# ---------------------------------------------------------------------------
# ADHM
# ---------------------------------------------------------------------------

def adhm_check(path: str, m: int) -> dict:
    """Read a point file and report potential, residual flags, stability and reducedness."""
    from wallx.algebra.adhm import check_point, point_from_json

    with open(path) as f:
        data = json.load(f)
    return check_point(point_from_json(data), m)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def list_suites() -> list[dict]:
    """Return the verification suites in registry order.

    Each dict: {name, description, slow}
    """
    from wallx.core.registry import VERIFY_SUITES
    from wallx.core.runner import resolve_suite_dir
    from wallx.core.validator import load_suite

    result = []
    for entry in VERIFY_SUITES:
        schema = load_suite(resolve_suite_dir(entry["suite"]))
        result.append({
            "name": schema.name,
            "description": schema.description,
            "slow": entry.get("slow", False),
        })
    return result


def describe_suite(name: str) -> dict:
    from wallx.core.runner import resolve_suite_dir
    from wallx.core.validator import describe_params, load_suite

    schema = load_suite(resolve_suite_dir(name))
    return {"name": schema.name, "description": schema.description,
            "params": describe_params(schema)}


def verify(suites: list[str] | None = None, context: dict | None = None,
           params: dict | None = None, run_id: str | None = None) -> list[dict]:
    """Run the selected suites in registry order and return their reports.

    ``params`` maps a suite name to its explicit params.
    """
    from wallx.core.registry import select_suites
    from wallx.core.runner import run_suite

    params = params or {}
    return [run_suite(name, params.get(name), context, run_id=run_id)
            for name in select_suites(suites)]
