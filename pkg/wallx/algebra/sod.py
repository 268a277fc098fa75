"""Semiorthogonal summand labels and window bookkeeping.

A summand is labelled by a type: blocks (d_i, w_i) over a partition of e = d - d' plus the
residual pair part of rank d'. Under generic mu the open and closed slope chains select the
same labels. The PT side keeps only the pair label d' = d, and the point category V(d) is
labelled by blocks over all of d with the chain ends -1-mu and -mu.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from wallx.algebra.invariants import (
    MuParameter,
    TypeS,
    chain_bounds,
    compositions,
    transform_v_to_w,
)
from wallx.algebra.polytopes import build_W_slice, build_Wa, count_dominant_integral
from wallx.algebra.weights import (
    Cocharacter,
    Weight,
    lambda_weight_range,
    pair,
    rho,
    tau_weight,
)
from wallx.core.errors import NonGenericMuError
from wallx.core.wire import format_rational


def _slope_candidates(size: int, lo: Fraction, hi: Fraction, closed_ends: bool) -> range:
    start = math.ceil(lo * size)
    if not closed_ends and Fraction(start, size) == lo:
        start += 1
    stop = math.floor(hi * size)
    if not closed_ends and Fraction(stop, size) == hi:
        stop -= 1
    return range(start, stop + 1)


def _require_generic(d: int, mu: Fraction, closed_ends: bool) -> None:
    if not closed_ends and not MuParameter(mu).is_generic(d):
        raise NonGenericMuError(
            f"mu={mu} is not generic for d={d} (2*mu*l is an integer for some l <= d); "
            "use closed ends"
        )


def _chains(sizes, d_prime: int, lo: Fraction, hi: Fraction, closed_ends: bool):
    """Parts (d_i, w_i) over sizes whose slopes v_i/d_i increase strictly inside [lo, hi]."""
    ranges = [_slope_candidates(size, lo, hi, closed_ends) for size in sizes]
    for vs in product(*ranges):
        slopes = [Fraction(v, s) for v, s in zip(vs, sizes)]
        if any(x >= y for x, y in zip(slopes, slopes[1:])):
            continue
        parts = tuple(zip(sizes, vs))
        yield tuple(zip(sizes, transform_v_to_w(parts, d_prime)))


def enumerate_summands(
    d: int, a: int, mu, closed_ends: bool = False, side: str = "DT"
) -> list[TypeS]:
    """Summand labels of the DT category, or the single pair label d' = d on the PT side."""
    mu = Fraction(mu)
    if _side(side) == "PT":
        return [TypeS((), d, d, a, mu)]
    _require_generic(d, mu, closed_ends)
    lo, hi = chain_bounds(mu, a)
    summands = []
    for d_prime in range(d, -1, -1):
        for sizes in compositions(d - d_prime):
            for parts in _chains(sizes, d_prime, lo, hi, closed_ends):
                summands.append(TypeS(parts, d_prime, d, a, mu))
    return sorted(summands, key=TypeS.key)


def enumerate_point_summands(d: int, mu, closed_ends: bool = False) -> list[TypeS]:
    """Labels of the point category: blocks over all of d with -1-mu <= v_1/d_1 < ... <= -mu."""
    mu = Fraction(mu)
    _require_generic(d, mu, closed_ends)
    lo, hi = chain_bounds(mu, 0)
    summands = [
        TypeS(parts, 0, d, 0, mu)
        for sizes in compositions(d)
        for parts in _chains(sizes, 0, lo, hi, closed_ends)
    ]
    return sorted(summands, key=TypeS.key)


# ---------------------------------------------------------------------------
# Generator counts
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def slice_generator_count(size: int, w: int) -> int:
    """Number of dominant chi with chi + rho in W(size)_w."""
    return count_dominant_integral(build_W_slice(size, w), rho(size))


@lru_cache(maxsize=None)
def pair_generator_count(d_prime: int, a: int, mu: Fraction) -> int:
    """Number of dominant chi with chi + rho + mu sigma in Wa(1, d')."""
    shift = rho(d_prime) + MuParameter(mu).delta(d_prime)
    return count_dominant_integral(build_Wa(d_prime, a), shift)


def summand_generator_count(S: TypeS) -> int:
    count = pair_generator_count(S.d_prime, S.a, S.mu - S.e)
    for size, w in S.parts:
        if count == 0:
            break
        count *= slice_generator_count(size, w)
    return count


@dataclass(frozen=True)
class Summand:
    type: TypeS
    generators: int

    def to_json(self) -> dict:
        out = self.type.to_json()
        out["generators"] = self.generators
        return out


def summands_with_counts(
    d: int, a: int, mu, closed_ends: bool = False, side: str = "DT"
) -> list[Summand]:
    return [Summand(S, summand_generator_count(S))
            for S in enumerate_summands(d, a, mu, closed_ends, side=side)]


def point_summands_with_counts(d: int, mu, closed_ends: bool = False) -> list[Summand]:
    # d' = 0: the pair factor counts one generator
    return [Summand(S, summand_generator_count(S))
            for S in enumerate_point_summands(d, mu, closed_ends)]


# ---------------------------------------------------------------------------
# Windows
# ---------------------------------------------------------------------------

SIDES = ("DT", "PT")


def _side(side: str) -> str:
    if side not in SIDES:
        raise ValueError(f"unknown side '{side}' (expected one of {list(SIDES)})")
    return side


def _window_cocharacter(e_i: int, d: int, side: str) -> Cocharacter:
    """tau_{e_i}^{-1} on the DT side, tau_{e_i} on the PT side."""
    lam = Cocharacter.tau(e_i, d)
    return lam.inverse() if _side(side) == "DT" else lam


def window_width(e_i: int, d: int, a: int, side: str = "DT") -> int:
    if not 0 < e_i <= d:
        raise ValueError(f"window width needs 0 < e_i <= d, got e_i={e_i}, d={d}")
    if _side(side) == "PT":
        return a * e_i + 2 * e_i * (d - e_i)
    return (a + 1) * e_i + 2 * e_i * (d - e_i)


def window_shift(e_i: int, d: int, mu, side: str = "DT") -> Fraction:
    """<lambda_i, delta + d/2 tau_d> on the DT side, <lambda_i, delta> on the PT side."""
    lam = _window_cocharacter(e_i, d, side)
    if side == "PT":
        return pair(lam, MuParameter(mu).delta(d))
    return pair(lam, MuParameter(mu).delta(d) + tau_weight(d).scale(Fraction(d, 2)))


def window_interval(
    chi: Weight, e_i: int, a: int, mu, side: str = "DT"
) -> tuple[Fraction, Fraction]:
    d = chi.d
    lo, hi = lambda_weight_range(chi, _window_cocharacter(e_i, d, side))
    shift = window_shift(e_i, d, mu, side)
    return lo + shift, hi + shift


def window_contains(
    chi: Weight, e_i: int, d: int, a: int, mu, half_open: bool = True, side: str = "DT"
) -> bool:
    """DT windows are [-eta/2, eta/2), PT windows (-eta/2, eta/2]; closed when not half_open."""
    if chi.d != d:
        raise ValueError(f"weight has d={chi.d}, expected {d}")
    lo, hi = window_interval(chi, e_i, a, mu, side)
    half = Fraction(window_width(e_i, d, a, side), 2)
    if not half_open:
        return -half <= lo and hi <= half
    if side == "PT":
        return -half < lo and hi <= half
    return -half <= lo and hi < half


def window_report(chi: Weight, e_i: int, a: int, mu, side: str = "DT") -> dict:
    lo, hi = window_interval(chi, e_i, a, mu, side)
    d = chi.d
    return {
        "side": side,
        "e_i": e_i,
        "eta": window_width(e_i, d, a, side),
        "range": [format_rational(lo), format_rational(hi)],
        "half_open": window_contains(chi, e_i, d, a, mu, half_open=True, side=side),
        "closed": window_contains(chi, e_i, d, a, mu, half_open=False, side=side),
    }
