"""Decomposition invariants of generator weights.

For a dominant integral chi with x = chi + rho + delta in Va(1, d) there is a unique level e with

    x in (-(a+3f)/2 sigma_e + V(e)) + (3e/2 sigma_f + Wa(1, f)),   f = d - e,

and the V(e)-part splits further into quasi-BPS blocks (d_i, w_i) whose transformed weights v_i
obey the chain  -1-mu-a/2 <= v_1/d_1 < ... < v_k/d_k <= -mu-a/2.  The pair (blocks, d') is the
type of chi. Weights with chi + rho + delta in V(d) split the same way with d' = 0 and a = 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from wallx.algebra.polytopes import (
    THREE_HALVES,
    Segment,
    Zonotope,
    build,
    build_Va,
    build_V,
    build_W_slice,
    build_Wa,
    contains,
    enumerate_dominant_integral,
    membership,
)
from wallx.algebra.weights import (
    Cocharacter,
    Weight,
    basis,
    is_dominant,
    pair,
    rho,
    root,
)
from wallx.core.errors import DecompositionError, NotDominantError, NotInPolytopeError
from wallx.core.wire import format_rational, format_vector


# ---------------------------------------------------------------------------
# mu
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MuParameter:
    mu: Fraction

    def __post_init__(self):
        object.__setattr__(self, "mu", Fraction(self.mu))

    def delta(self, d: int) -> Weight:
        return Weight((self.mu,) * d)

    def is_generic(self, d: int) -> bool:
        """2 * mu * l is never an integer for 1 <= l <= d."""
        return all((2 * self.mu * l).denominator != 1 for l in range(1, d + 1))


def chain_bounds(mu, a: int) -> tuple[Fraction, Fraction]:
    """Ends of the slope chain: (-1 - mu - a/2, -mu - a/2)."""
    mu = Fraction(mu)
    hi = -mu - Fraction(a, 2)
    return hi - 1, hi


# ---------------------------------------------------------------------------
# Level e
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecompositionWitness:
    """x = sum_{j<i} c_ij (beta_i - beta_j) + sum_i c_i beta_i in the level-e normal form.

    Indices of ``c_roots`` are 1-based pairs (i, j) with j < i; pairs with j <= e < i carry 3/2.
    """

    e: int
    a: int
    c_roots: dict[tuple[int, int], Fraction]
    c_diag: tuple[Fraction, ...]

    @property
    def d(self) -> int:
        return len(self.c_diag)

    def recompose(self) -> Weight:
        d = self.d
        point = Weight.zero(d)
        for (i, j), c in self.c_roots.items():
            point = point + root(i - 1, j - 1, d).scale(c)
        for i, c in enumerate(self.c_diag):
            point = point + basis(i, d).scale(c)
        return point

    def p(self) -> Fraction:
        return sum((c + Fraction(self.a, 2) for c in self.c_diag[:self.e]), Fraction(0))

    def is_valid(self) -> bool:
        e, a = self.e, self.a
        for (i, j), c in self.c_roots.items():
            if not 0 <= c <= THREE_HALVES:
                return False
            if j <= e < i and c != THREE_HALVES:
                return False
        for i, c in enumerate(self.c_diag, start=1):
            if i <= e and not Fraction(-(a + 2), 2) <= c <= Fraction(-a, 2):
                return False
            if i > e and not Fraction(-a, 2) < c <= Fraction(a, 2):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "c_roots": {f"{i},{j}": format_rational(c) for (i, j), c in sorted(self.c_roots.items())},
            "c_diag": format_vector(self.c_diag),
        }


@dataclass(frozen=True)
class LevelDecomposition:
    e: int
    witness: DecompositionWitness


def levels_containing(x: Weight, a: int) -> list[int]:
    """Every e for which x lies in the level-e product polytope."""
    d = x.d
    found = []
    for e in range(d + 1):
        f = d - e
        head = x[:e].shift(Fraction(a + 3 * f, 2))
        tail = x[e:].shift(-Fraction(3 * e, 2))
        if contains(build_V(e), head) and contains(build_Wa(f, a), tail):
            found.append(e)
    return found


@lru_cache(maxsize=None)
def level_zonotope(e: int, d: int, a: int) -> Zonotope:
    """Normal form of the level-e decomposition as a zonotope in coefficient space.

    Segments are the within-block roots j < i (coefficient in [0, 3/2]) followed by one
    diagonal segment per coordinate; cross-block roots are folded into the translation.
    """
    translation = Weight.zero(d)
    segments = []
    for i in range(d):
        for j in range(i):
            if j < e <= i:
                translation = translation + root(i, j, d).scale(THREE_HALVES)
            else:
                segments.append(Segment(root(i, j, d), 0, THREE_HALVES))
    for i in range(d):
        if i < e:
            segments.append(Segment(basis(i, d), Fraction(-(a + 2), 2), Fraction(-a, 2)))
        else:
            segments.append(Segment(basis(i, d), Fraction(-a, 2), Fraction(a, 2), lo_strict=True))
    return Zonotope(translation, tuple(segments), name=f"level_{e}")


def level_witness(x: Weight, e: int, a: int) -> DecompositionWitness | None:
    d = x.d
    P = level_zonotope(e, d, a)
    m = membership(P, x)
    if not m.member:
        return None
    coefficients = iter(m.coefficients)
    c_roots: dict[tuple[int, int], Fraction] = {}
    for i in range(d):
        for j in range(i):
            c_roots[(i + 1, j + 1)] = THREE_HALVES if j < e <= i else next(coefficients)
    c_diag = tuple(coefficients)
    return DecompositionWitness(e, a, c_roots, c_diag)


def generator_point(chi: Weight, mu) -> Weight:
    """chi + rho + delta."""
    return chi + rho(chi.d) + MuParameter(mu).delta(chi.d)


def _require_dominant_integral(chi: Weight) -> None:
    if not chi.is_integral():
        raise NotDominantError(f"weight {chi} is not integral", code="not-integral")
    if not is_dominant(chi):
        raise NotDominantError(f"weight {chi} is not dominant (coordinates must not decrease)")


def require_generator(chi: Weight, a: int, mu) -> Weight:
    """Check chi is dominant integral with chi + rho + delta in Va(1, d); return that point."""
    _require_dominant_integral(chi)
    x = generator_point(chi, mu)
    if not contains(build_Va(chi.d, a), x):
        raise NotInPolytopeError(f"{chi} + rho + delta is not in Va(1, {chi.d}) for a={a}")
    return x


def _generators(kind: str, d: int, a: int, mu, jobs: int | None) -> list[Weight]:
    key = (kind, d, a, Fraction(mu))
    if key not in _GENERATORS:
        shift = rho(d) + MuParameter(mu).delta(d)
        P = build(kind, d, a)
        _GENERATORS[key] = tuple(enumerate_dominant_integral(P, shift, jobs=jobs))
    return list(_GENERATORS[key])


# (kind, d, a, mu) -> generators; jobs never changes the result so it is not part of the key
_GENERATORS: dict[tuple[str, int, int, Fraction], tuple[Weight, ...]] = {}


def enumerate_generators(d: int, a: int, mu, jobs: int | None = 1) -> list[Weight]:
    """Dominant integral chi with chi + rho + delta in Va(1, d), lexicographically.

    Lists are cached per (d, a, mu) so that suites run in one process share them.
    """
    return _generators("Va", d, a, mu, jobs)


def enumerate_pt_generators(d: int, a: int, mu, jobs: int | None = 1) -> list[Weight]:
    """Dominant integral chi with chi + rho + delta in Wa(1, d): the PT-side generators."""
    return _generators("Wa", d, a, mu, jobs)


def enumerate_point_generators(d: int, mu, jobs: int | None = 1) -> list[Weight]:
    """Dominant integral chi with chi + rho + delta in V(d)."""
    return _generators("V", d, 0, mu, jobs)


@lru_cache(maxsize=100_000)
def find_level_e(chi: Weight, a: int, mu) -> LevelDecomposition:
    x = require_generator(chi, a, mu)
    levels = levels_containing(x, a)
    if not levels:
        raise DecompositionError(f"no level e found for {chi}", code="no-level")
    if len(levels) > 1:
        raise DecompositionError(f"levels {levels} all pass for {chi}", code="level-not-unique")
    e = levels[0]
    witness = level_witness(x, e, a)
    if witness is None:
        raise DecompositionError(
            f"level {e} passes for {chi} but has no normal-form witness",
            code="inconsistent-invariant",
        )
    return LevelDecomposition(e, witness)


def level_of(chi: Weight, a: int, mu) -> int:
    return find_level_e(chi, a, mu).e


# ---------------------------------------------------------------------------
# p and p_l
# ---------------------------------------------------------------------------

def p_l(chi: Weight, l: int, a: int, mu) -> Fraction:
    d = chi.d
    x = generator_point(chi, mu)
    return (
        pair(Cocharacter.tau(l, d), x)
        + Fraction(3, 2) * l * (d - l)
        + Fraction(a, 2) * l
    )


def p(chi: Weight, a: int, mu) -> Fraction:
    level = find_level_e(chi, a, mu)
    value = p_l(chi, level.e, a, mu)
    if value != level.witness.p():
        raise DecompositionError(
            f"p({chi}) = {value} but the witness gives {level.witness.p()}",
            code="inconsistent-invariant",
        )
    if value > 0:
        raise DecompositionError(f"p({chi}) = {value} > 0", code="inconsistent-invariant")
    return value


def nonpositive_part_is_minimal(xs: Sequence, subset: Sequence[int]) -> bool:
    """For S = {i : x_i <= 0}: sum_T >= sum_S, equality forces T in S, and with |T| = |S| also T = S."""
    s = {i for i, x in enumerate(xs) if x <= 0}
    t = set(subset)
    sum_s = sum((xs[i] for i in s), Fraction(0))
    sum_t = sum((xs[i] for i in t), Fraction(0))
    if sum_t < sum_s:
        return False
    if sum_t == sum_s:
        if not t <= s:
            return False
        if len(t) == len(s) and t != s:
            return False
    return True


# ---------------------------------------------------------------------------
# w <-> v
# ---------------------------------------------------------------------------

def _corrections(sizes: Sequence[int], d_prime: int) -> list[int]:
    out = []
    for i, size in enumerate(sizes):
        after = sum(sizes[i + 1:])
        before = sum(sizes[:i])
        out.append(size * (d_prime + after - before))
    return out


def transform_w_to_v(parts: Sequence[tuple[int, int]], d_prime: int) -> tuple[int, ...]:
    sizes = [size for size, _ in parts]
    return tuple(w + c for (_, w), c in zip(parts, _corrections(sizes, d_prime)))


def transform_v_to_w(parts: Sequence[tuple[int, int]], d_prime: int) -> tuple[int, ...]:
    """Inverse of :func:`transform_w_to_v`; ``parts`` holds (d_i, v_i)."""
    sizes = [size for size, _ in parts]
    return tuple(v - c for (_, v), c in zip(parts, _corrections(sizes, d_prime)))


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TypeS:
    parts: tuple[tuple[int, int], ...]
    d_prime: int
    d: int
    a: int
    mu: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple((int(s), int(w)) for s, w in self.parts))
        object.__setattr__(self, "mu", Fraction(self.mu))
        if any(s <= 0 for s, _ in self.parts):
            raise ValueError(f"part sizes must be positive: {self.parts}")
        if self.e + self.d_prime != self.d:
            raise ValueError(f"parts {self.parts} with d'={self.d_prime} do not add up to d={self.d}")

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.parts)

    @property
    def e(self) -> int:
        return sum(self.sizes)

    @property
    def v(self) -> tuple[int, ...]:
        return transform_w_to_v(self.parts, self.d_prime)

    @property
    def p(self) -> Fraction:
        return p_of_type(self)

    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, s) for v, s in zip(self.v, self.sizes))

    def satisfies_chain(self, closed_ends: bool = True) -> bool:
        lo, hi = chain_bounds(self.mu, self.a)
        slopes = self.slopes()
        if any(x >= y for x, y in zip(slopes, slopes[1:])):
            return False
        if not slopes:
            return True
        if closed_ends:
            return lo <= slopes[0] and slopes[-1] <= hi
        return lo < slopes[0] and slopes[-1] < hi

    def cocharacter(self) -> Cocharacter:
        return Cocharacter.of_partition(self.sizes, self.d)

    def key(self) -> tuple:
        """Canonical order: d' descending, then parts lexicographically."""
        return (-self.d_prime, self.parts)

    def to_json(self) -> dict:
        return {
            "d_prime": self.d_prime,
            "parts": [[s, w] for s, w in self.parts],
            "v": list(self.v),
            "p": format_rational(self.p),
        }


def twist_type(S: TypeS, index: int) -> TypeS:
    """Tensor the index-th block by det: w_i -> w_i + d_i."""
    parts = list(S.parts)
    size, w = parts[index]
    parts[index] = (size, w + size)
    return TypeS(tuple(parts), S.d_prime, S.d, S.a, S.mu)


def p_of_type(S: TypeS) -> Fraction:
    e = S.e
    half_a = Fraction(S.a, 2)
    by_w = sum((w for _, w in S.parts), Fraction(0)) - e * (-S.mu - S.d_prime - half_a)
    by_v = sum((v for v in S.v), Fraction(0)) - e * (-S.mu - half_a)
    if by_w != by_v:
        raise DecompositionError(
            f"p(S) disagrees between w and v forms: {by_w} vs {by_v}",
            code="inconsistent-invariant",
        )
    return by_w


def compositions(n: int) -> Iterator[tuple[int, ...]]:
    """Ordered partitions of n into positive parts, lexicographically."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


@lru_cache(maxsize=100_000)
def _in_slice(block: tuple[Fraction, ...], w: int) -> bool:
    size = len(block)
    return contains(build_W_slice(size, w), Weight(block) + rho(size))


@dataclass(frozen=True)
class TypeDecomposition:
    type: TypeS
    components: tuple[Weight, ...]
    residual: Weight
    level: LevelDecomposition

    def to_json(self) -> dict:
        return {
            "e": self.level.e,
            "p": format_rational(self.type.p),
            "witness": self.level.witness.to_json(),
            "type": self.type.to_json(),
            "components": [format_vector(c) for c in self.components],
            "residual": format_vector(self.residual),
        }


def _split_head(
    head: Weight, d_prime: int, d: int, a: int, mu: Fraction
) -> list[tuple[TypeS, tuple[Weight, ...]]]:
    """Every way to cut head into blocks on W slices whose v-chain holds."""
    matches = []
    for sizes in compositions(head.d):
        blocks, start = [], 0
        for size in sizes:
            blocks.append(head[start:start + size])
            start += size
        parts = tuple((size, int(block.total())) for size, block in zip(sizes, blocks))
        S = TypeS(parts, d_prime, d, a, mu)
        if not S.satisfies_chain(closed_ends=True):
            continue
        if all(_in_slice(block.coeffs, w) for block, (_, w) in zip(blocks, parts)):
            matches.append((S, tuple(blocks)))
    return matches


def _unique_split(chi: Weight, matches: list) -> tuple[TypeS, tuple[Weight, ...]]:
    if not matches:
        raise DecompositionError(f"no type found for {chi}", code="no-type")
    if len(matches) > 1:
        raise DecompositionError(
            f"{len(matches)} types found for {chi}", code="type-not-unique"
        )
    return matches[0]


def type_of_weight(chi: Weight, a: int, mu) -> TypeDecomposition:
    mu = Fraction(mu)
    level = find_level_e(chi, a, mu)
    d, e = chi.d, level.e
    d_prime = d - e
    head, residual = chi[:e], chi[e:]

    if not contains(build_Wa(d_prime, a), residual + rho(d_prime) + MuParameter(mu - e).delta(d_prime)):
        raise DecompositionError(
            f"residual {residual} of {chi} is not in Wa(1, {d_prime})",
            code="inconsistent-invariant",
        )
    S, blocks = _unique_split(chi, _split_head(head, d_prime, d, a, mu))
    return TypeDecomposition(S, blocks, residual, level)


@dataclass(frozen=True)
class PointDecomposition:
    """Blocks of a V(d) generator; the type has no pair part and a = 0."""

    type: TypeS
    components: tuple[Weight, ...]

    def to_json(self) -> dict:
        return {
            "type": self.type.to_json(),
            "components": [format_vector(c) for c in self.components],
        }


def point_type_of_weight(chi: Weight, mu) -> PointDecomposition:
    """Split chi with chi + rho + delta in V(d) into blocks with -1-mu <= v_1/d_1 < ... <= -mu."""
    mu = Fraction(mu)
    _require_dominant_integral(chi)
    if not contains(build_V(chi.d), generator_point(chi, mu)):
        raise NotInPolytopeError(f"{chi} + rho + delta is not in V({chi.d})")
    S, blocks = _unique_split(chi, _split_head(chi, 0, chi.d, 0, mu))
    return PointDecomposition(S, blocks)



# ---------------------------------------------------------------------------
# Order
# ---------------------------------------------------------------------------

class Order(str, Enum):
    IN_O = "in-O"
    NOT_IN_O = "not-in-O"
    BOTH = "both-directions"
    INCOMPARABLE = "incomparable"


TieBreak = Callable[[TypeS, TypeS], "bool | None"]


def no_tie_break(S_prime: TypeS, S: TypeS) -> bool | None:
    """Default for the last clause of the order: undecided."""
    return None


def _in_order(S_prime: TypeS, S: TypeS, tie_break: TieBreak) -> bool | None:
    p_prime, p_s = p_of_type(S_prime), p_of_type(S)
    if p_prime != p_s:
        return p_prime > p_s
    if S_prime.e != S.e:
        return S_prime.e < S.e
    return tie_break(S_prime, S)


def compare_types(S_prime: TypeS, S: TypeS, tie_break: TieBreak | None = None) -> Order:
    """Whether (S', S) belongs to the order O (S > S')."""
    tie_break = tie_break or no_tie_break
    forward = _in_order(S_prime, S, tie_break)
    backward = _in_order(S, S_prime, tie_break)
    if forward and backward:
        return Order.BOTH
    if forward:
        return Order.IN_O
    if forward is None:
        return Order.INCOMPARABLE
    return Order.NOT_IN_O
