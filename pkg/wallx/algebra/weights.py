"""Weight and coweight lattice arithmetic for the maximal torus T(d) of GL(d).

A weight is a vector of exact rationals in the basis beta_1..beta_d of standard characters; a
cocharacter is a vector of integer exponents. Dominance means non-decreasing coordinates.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from wallx.core.errors import DimensionMismatchError


@dataclass(frozen=True)
class Weight:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def of(cls, values: Iterable) -> Weight:
        return cls(tuple(values))

    @classmethod
    def zero(cls, d: int) -> Weight:
        return cls((Fraction(0),) * d)

    @property
    def d(self) -> int:
        return len(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Weight(self.coeffs[index])
        return self.coeffs[index]

    def _check(self, other: Weight) -> None:
        if self.d != other.d:
            raise DimensionMismatchError(f"dimension mismatch: {self.d} vs {other.d}")

    def __add__(self, other: Weight) -> Weight:
        self._check(other)
        return Weight(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: Weight) -> Weight:
        self._check(other)
        return Weight(tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> Weight:
        return Weight(tuple(-x for x in self.coeffs))

    def scale(self, k) -> Weight:
        k = Fraction(k)
        return Weight(tuple(k * x for x in self.coeffs))

    def shift(self, k) -> Weight:
        """Add k to every coordinate (translation by k*sigma_d)."""
        k = Fraction(k)
        return Weight(tuple(x + k for x in self.coeffs))

    def concat(self, other: Weight) -> Weight:
        return Weight(self.coeffs + other.coeffs)

    def total(self) -> Fraction:
        """Pairing with the diagonal cocharacter 1_d."""
        return sum(self.coeffs, Fraction(0))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self) -> str:
        return "Weight(" + ", ".join(str(c) for c in self.coeffs) + ")"


@dataclass(frozen=True)
class Cocharacter:
    exps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple(int(e) for e in self.exps))

    @property
    def d(self) -> int:
        return len(self.exps)

    @classmethod
    def zero(cls, d: int) -> Cocharacter:
        return cls((0,) * d)

    @classmethod
    def diagonal(cls, d: int) -> Cocharacter:
        """1_d, the central cocharacter."""
        return cls((1,) * d)

    @classmethod
    def tau(cls, e: int, d: int) -> Cocharacter:
        """tau_e = (t,..,t,1,..,1) with e copies of t."""
        if not 0 <= e <= d:
            raise ValueError(f"tau_e needs 0 <= e <= d, got e={e}, d={d}")
        return cls((1,) * e + (0,) * (d - e))

    @classmethod
    def of_partition(cls, sizes: Sequence[int], d: int) -> Cocharacter:
        """lambda_S = (t^k x d_1, ..., t x d_k, 1 x d') for the parts d_1..d_k of a type."""
        used = sum(sizes)
        if used > d:
            raise ValueError(f"parts {tuple(sizes)} exceed d={d}")
        k = len(sizes)
        exps: list[int] = []
        for index, size in enumerate(sizes):
            exps.extend([k - index] * size)
        return cls(tuple(exps) + (0,) * (d - used))

    def inverse(self) -> Cocharacter:
        return Cocharacter(tuple(-e for e in self.exps))

    def is_antidominant(self) -> bool:
        return all(x >= y for x, y in zip(self.exps, self.exps[1:]))


class Sign(str, Enum):
    """Which pairing sign a weight must have to be kept by :func:`weight_multiset`."""

    NEG = "<0"
    ZERO = "=0"
    POS = ">0"
    NONPOS = "<=0"
    NONNEG = ">=0"

    def accepts(self, value: Fraction) -> bool:
        if self is Sign.NEG:
            return value < 0
        if self is Sign.ZERO:
            return value == 0
        if self is Sign.POS:
            return value > 0
        if self is Sign.NONPOS:
            return value <= 0
        return value >= 0


@dataclass(frozen=True)
class QuiverShape:
    d: int
    a: int = 1
    framed: bool = False
    loops_at_zero: int = 0

    def __post_init__(self):
        if self.d < 0 or self.a < 0 or self.loops_at_zero < 0:
            raise ValueError(f"invalid quiver shape {self}")

    def weights(self) -> Counter:
        """The full weight multiset: roots x3 (diagonal ones included), +-beta_i x a,
        beta_i once more when framed, and one zero weight per loop at the framing vertex."""
        d = self.d
        multiset: Counter = Counter()
        for i in range(d):
            for j in range(d):
                multiset[root(i, j, d)] += 3
        for i in range(d):
            if self.a:
                multiset[basis(i, d)] += self.a
                multiset[-basis(i, d)] += self.a
            if self.framed:
                multiset[basis(i, d)] += 1
        if self.loops_at_zero:
            multiset[Weight.zero(d)] += self.loops_at_zero
        return multiset


# ---------------------------------------------------------------------------
# Distinguished weights
# ---------------------------------------------------------------------------

def basis(i: int, d: int) -> Weight:
    """beta_{i+1} (0-based index)."""
    return Weight(tuple(Fraction(1 if k == i else 0) for k in range(d)))


def root(i: int, j: int, d: int) -> Weight:
    """beta_i - beta_j (0-based); the zero weight when i == j."""
    return basis(i, d) - basis(j, d)


def rho(d: int) -> Weight:
    return Weight(tuple(Fraction(2 * i - d - 1, 2) for i in range(1, d + 1)))


def sigma(d: int) -> Weight:
    return Weight((Fraction(1),) * d)


def tau_weight(d: int) -> Weight:
    """tau_d = sigma_d / d."""
    return sigma(d).scale(Fraction(1, d)) if d else Weight(())


def multiset_sum(items: Counter, d: int) -> Weight:
    """sigma_J for a multiset J of weights."""
    total = Weight.zero(d)
    for weight, mult in items.items():
        total = total + weight.scale(mult)
    return total


# ---------------------------------------------------------------------------
# Pairings and dominance
# ---------------------------------------------------------------------------

def pair(lam: Cocharacter, chi: Weight) -> Fraction:
    if lam.d != chi.d:
        raise DimensionMismatchError(
            f"cocharacter has d={lam.d} but weight has d={chi.d}"
        )
    return sum((e * c for e, c in zip(lam.exps, chi.coeffs)), Fraction(0))


def is_dominant(chi: Weight, strict: bool = False) -> bool:
    c = chi.coeffs
    if strict:
        return all(x < y for x, y in zip(c, c[1:]))
    return all(x <= y for x, y in zip(c, c[1:]))


@dataclass(frozen=True)
class Straightened:
    weight: Weight | None
    length: int

    @property
    def vanished(self) -> bool:
        return self.weight is None


def weyl_straighten(chi: Weight) -> Straightened:
    """Dominant representative of chi under the rho-shifted Weyl action.

    Vanishes when chi + rho has a repeated coordinate; otherwise the length is the inversion
    count of the sorting permutation.
    """
    d = chi.d
    shifted = (chi + rho(d)).coeffs
    if len(set(shifted)) < d:
        return Straightened(None, 0)
    inversions = sum(
        1 for i in range(d) for j in range(i + 1, d) if shifted[i] > shifted[j]
    )
    return Straightened(Weight(tuple(sorted(shifted))) - rho(d), inversions)


def lambda_weight_range(chi: Weight, lam: Cocharacter) -> tuple[Fraction, Fraction]:
    """Extremal values of <lam, w.chi> over permutations w (rearrangement inequality)."""
    if lam.d != chi.d:
        raise DimensionMismatchError(
            f"cocharacter has d={lam.d} but weight has d={chi.d}"
        )
    exps = sorted(lam.exps)
    up = sorted(chi.coeffs)
    lo = sum((e * c for e, c in zip(exps, reversed(up))), Fraction(0))
    hi = sum((e * c for e, c in zip(exps, up)), Fraction(0))
    return lo, hi


# ---------------------------------------------------------------------------
# Weight multisets of the DT/PT quiver
# ---------------------------------------------------------------------------

def weight_multiset(shape: QuiverShape, sign: Sign | str, lam: Cocharacter) -> Counter:
    if lam.d != shape.d:
        raise DimensionMismatchError(
            f"cocharacter has d={lam.d} but the quiver shape has d={shape.d}"
        )
    sign = Sign(sign)
    return Counter({
        weight: mult
        for weight, mult in shape.weights().items()
        if sign.accepts(pair(lam, weight))
    })


def level_weight_multiset(e: int, d: int, a: int) -> Counter:
    """Negative part of the unframed multiset against tau_e:
    (beta_i - beta_j) x3 and (-beta_j) x a for j <= e < i."""
    return weight_multiset(QuiverShape(d=d, a=a), Sign.NEG, Cocharacter.tau(e, d))


def type_weight_multiset(sizes: Sequence[int], d: int, a: int) -> Counter:
    """Negative part of the unframed multiset against the cocharacter of a type."""
    return weight_multiset(QuiverShape(d=d, a=a), Sign.NEG, Cocharacter.of_partition(sizes, d))


def sorted_items(multiset: Counter) -> list[tuple[Weight, int]]:
    """Deterministic (coordinate-lexicographic) listing of a weight multiset."""
    return sorted(multiset.items(), key=lambda item: item[0].coeffs)
