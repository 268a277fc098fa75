"""Borel-Weil-Bott expansion of attracting-locus pushforwards at the level of weights.

For a cocharacter lambda the pushforward of Gamma_L(chi) is resolved by the bundles
Gamma((chi - sigma_J)^+)[|J| - l(J)] over sub-multisets J of the lambda-negative weights.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, prod
from typing import Iterator

from wallx.algebra.invariants import TypeS, find_level_e, p, type_of_weight
from wallx.algebra.weights import (
    Cocharacter,
    QuiverShape,
    Sign,
    Weight,
    level_weight_multiset,
    pair,
    sorted_items,
    weight_multiset,
    weyl_straighten,
)
from wallx.core.errors import DecompositionError, DimensionMismatchError
from wallx.core.wire import format_rational, format_vector


DEFAULT_SAMPLE_CAP = 2 ** 14


@dataclass(frozen=True)
class BwbTerm:
    weight: Weight | None
    shift: int
    vanished: bool
    J: tuple[tuple[Weight, int], ...]
    count: int = 1

    @property
    def size(self) -> int:
        return sum(m for _, m in self.J)

    def to_json(self) -> dict:
        return {
            "weight": None if self.weight is None else format_vector(self.weight),
            "shift": self.shift,
            "vanished": self.vanished,
            "J": [[format_vector(w), m] for w, m in self.J],
            "multiplicity": self.count,
        }


def sub_multisets(items: list[tuple[Weight, int]]) -> Iterator[tuple[int, ...]]:
    """Multiplicity vectors of all sub-multisets, lexicographically."""
    yield from product(*(range(m + 1) for _, m in items))


def multiset_size(items: list[tuple[Weight, int]]) -> int:
    return prod(m + 1 for _, m in items)


def _sigma(items: list[tuple[Weight, int]], mults: tuple[int, ...], d: int) -> Weight:
    total = Weight.zero(d)
    for (weight, _), m in zip(items, mults):
        if m:
            total = total + weight.scale(m)
    return total


def bwb_terms(
    chi: Weight,
    shape: QuiverShape,
    lam: Cocharacter,
    max_terms: int | None = None,
    include_vanished: bool = False,
) -> list[BwbTerm]:
    """One term per sub-multiset J of the lambda-negative weights.

    ``count`` is the number of ways to pick J out of the weight multiset with multiplicities,
    so summing counts over all terms gives 2 ** (number of negative weights).
    """
    if chi.d != shape.d:
        raise DimensionMismatchError(f"weight has d={chi.d} but the quiver shape has d={shape.d}")
    items = sorted_items(weight_multiset(shape, Sign.NEG, lam))
    terms = []
    for mults in sub_multisets(items):
        straight = weyl_straighten(chi - _sigma(items, mults, chi.d))
        J = tuple((w, m) for (w, _), m in zip(items, mults) if m)
        count = prod(comb(total, m) for (_, total), m in zip(items, mults))
        size = sum(mults)
        if straight.vanished:
            if include_vanished:
                terms.append(BwbTerm(None, 0, True, J, count))
            continue
        terms.append(BwbTerm(straight.weight, size - straight.length, False, J, count))
        if max_terms is not None and len(terms) >= max_terms:
            break
    return terms


def expected_term_count(shape: QuiverShape, lam: Cocharacter) -> int:
    return multiset_size(sorted_items(weight_multiset(shape, Sign.NEG, lam)))


# ---------------------------------------------------------------------------
# Orthogonality
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrthogonalityVerdict:
    status: str  # pass | fail | not-applicable
    hypothesis: str | None
    checked: int = 0
    skipped_vanished: int = 0
    sampled: bool = False
    universe: int = 0
    failure: dict | None = None
    vacuous: bool = False

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "hypothesis": self.hypothesis,
            "checked": self.checked,
            "skipped_vanished": self.skipped_vanished,
            "sampled": self.sampled,
            "universe": self.universe,
            "vacuous": self.vacuous,
        }
        if self.failure is not None:
            out["failure"] = self.failure
        return out


def classify_hypothesis(p_prime: Fraction, p_chi: Fraction, e_prime: int, e: int) -> str | None:
    """Which of the three orthogonality hypotheses holds; (iii) still needs I non-empty."""
    if p_prime > p_chi:
        return "i"
    if p_prime == p_chi and e_prime < e:
        return "ii"
    if p_prime == p_chi and e_prime == e:
        return "iii"
    return None


def _sample(items, cap: int, seed: int) -> list[tuple[int, ...]]:
    rng = random.Random(seed)
    seen = set()
    out = []
    while len(out) < cap:
        mults = tuple(rng.randint(0, m) for _, m in items)
        if mults not in seen:
            seen.add(mults)
            out.append(mults)
    return sorted(out)


def orthogonality_check(
    S: TypeS | None,
    S_prime: TypeS | None,
    chi: Weight,
    chi_prime: Weight,
    a: int,
    mu,
    sample_cap: int = DEFAULT_SAMPLE_CAP,
    seed: int = 0,
) -> OrthogonalityVerdict:
    """Check <tau_e, (chi' - sigma_I)^+> > <tau_e, chi> over sub-multisets I of the
    tau_{e'}-negative weights, whenever one of the hypotheses applies."""
    mu = Fraction(mu)
    for given, weight in ((S, chi), (S_prime, chi_prime)):
        if given is not None and type_of_weight(weight, a, mu).type != given:
            raise DecompositionError(
                f"{weight} does not have the stated type {given.parts}, d'={given.d_prime}",
                code="inconsistent-invariant",
            )
    d = chi.d
    e, e_prime = find_level_e(chi, a, mu).e, find_level_e(chi_prime, a, mu).e
    p_chi, p_prime = p(chi, a, mu), p(chi_prime, a, mu)
    hypothesis = classify_hypothesis(p_prime, p_chi, e_prime, e)
    if hypothesis is None:
        return OrthogonalityVerdict("not-applicable", hypothesis)
    if e == 0:
        # tau_0 pairs to zero with everything
        return OrthogonalityVerdict("pass", hypothesis, vacuous=True)

    items = sorted_items(level_weight_multiset(e_prime, d, a))
    universe = multiset_size(items)
    sampled = universe > sample_cap
    candidates = _sample(items, sample_cap, seed) if sampled else sub_multisets(items)

    tau = Cocharacter.tau(e, d)
    bound = pair(tau, chi)
    checked = skipped = 0
    for mults in candidates:
        if hypothesis == "iii" and not any(mults):
            continue
        straight = weyl_straighten(chi_prime - _sigma(items, mults, d))
        if straight.vanished:
            skipped += 1
            continue
        checked += 1
        lhs = pair(tau, straight.weight)
        if not lhs > bound:
            failure = {
                "I": [[format_vector(w), m] for (w, _), m in zip(items, mults) if m],
                "lhs": format_rational(lhs),
                "rhs": format_rational(bound),
            }
            return OrthogonalityVerdict("fail", hypothesis, checked, skipped, sampled,
                                        universe, failure)
    return OrthogonalityVerdict("pass", hypothesis, checked, skipped, sampled, universe)
