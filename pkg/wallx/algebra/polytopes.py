"""Zonotopes of the weight space and exact membership.

A :class:`Zonotope` is ``translation + sum t_k * direction_k + sum s_m * line_m`` with each t_k in
an interval that may be open at either end and each s_m free. Membership is decided in
coefficient space by the exact simplex of :mod:`wallx.algebra.lp`; strict bounds become a slack
``eps`` that must have a strictly positive optimum.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, partial
from typing import Sequence

from wallx.algebra.lp import Inequality, fm_feasible, maximize
from wallx.algebra.weights import Weight, basis, is_dominant, root, tau_weight
from wallx.core.errors import DimensionMismatchError, UnboundedPolytopeError
from wallx.core.pool import ordered_map
from wallx.core.wire import format_rational, format_vector, parse_json_vector, parse_rational


THREE_HALVES = Fraction(3, 2)


@dataclass(frozen=True)
class Segment:
    direction: Weight
    lo: Fraction
    hi: Fraction
    lo_strict: bool = False
    hi_strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))

    def admits(self, t: Fraction) -> bool:
        above = t > self.lo if self.lo_strict else t >= self.lo
        below = t < self.hi if self.hi_strict else t <= self.hi
        return above and below

    def to_json(self) -> dict:
        return {
            "direction": format_vector(self.direction),
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
            "lo_strict": self.lo_strict,
            "hi_strict": self.hi_strict,
        }


@dataclass(frozen=True)
class Zonotope:
    translation: Weight
    segments: tuple[Segment, ...] = ()
    lines: tuple[Weight, ...] = ()
    name: str = field(default="", compare=False)

    @property
    def d(self) -> int:
        return self.translation.d

    @property
    def is_bounded(self) -> bool:
        return not self.lines

    def translate(self, offset: Weight) -> Zonotope:
        return Zonotope(self.translation + offset, self.segments, self.lines, self.name)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "translation": format_vector(self.translation),
            "segments": [s.to_json() for s in self.segments],
            "lines": [format_vector(line) for line in self.lines],
        }

    @classmethod
    def from_json(cls, data: dict) -> Zonotope:
        segments = tuple(
            Segment(
                Weight(parse_json_vector(s["direction"])),
                parse_rational(s["lo"]),
                parse_rational(s["hi"]),
                bool(s.get("lo_strict", False)),
                bool(s.get("hi_strict", False)),
            )
            for s in data.get("segments", [])
        )
        lines = tuple(Weight(parse_json_vector(line)) for line in data.get("lines", []))
        return cls(Weight(parse_json_vector(data["translation"])), segments, lines,
                   data.get("name", ""))


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def _root_segments(d: int) -> list[Segment]:
    return [
        Segment(root(i, j, d), 0, THREE_HALVES)
        for i in range(d) for j in range(d) if i != j
    ]


def build_W(d: int) -> Zonotope:
    """3/2 sum[0, beta_i - beta_j] + R tau_d."""
    lines = (tau_weight(d),) if d else ()
    return Zonotope(Weight.zero(d), tuple(_root_segments(d)), lines, name="W")


def build_W_slice(d: int, w: int) -> Zonotope:
    """The slice of W(d) with total weight w, i.e. 3/2 sum[0, beta_i - beta_j] + w tau_d."""
    return Zonotope(tau_weight(d).scale(w), tuple(_root_segments(d)), name="W_slice")


def build_V(d: int) -> Zonotope:
    """3/2 sum[0, beta_i - beta_j] + sum[-beta_k, 0]."""
    segments = _root_segments(d) + [Segment(basis(k, d), -1, 0) for k in range(d)]
    return Zonotope(Weight.zero(d), tuple(segments), name="V")


def build_Wa(d: int, a: int) -> Zonotope:
    """3/2 sum[0, beta_i - beta_j] + a/2 sum(-beta_k, beta_k]."""
    half = Fraction(a, 2)
    segments = _root_segments(d) + [
        Segment(basis(k, d), -half, half, lo_strict=True) for k in range(d)
    ]
    return Zonotope(Weight.zero(d), tuple(segments), name="Wa")


def build_Va(d: int, a: int) -> Zonotope:
    """3/2 sum[0, beta_i - beta_j] + a/2 sum[-beta_k, beta_k] + sum[-beta_k, 0]."""
    half = Fraction(a, 2)
    segments = _root_segments(d)
    segments += [Segment(basis(k, d), -half, half) for k in range(d)]
    segments += [Segment(basis(k, d), -1, 0) for k in range(d)]
    return Zonotope(Weight.zero(d), tuple(segments), name="Va")


BUILDERS = {
    "W": lambda d, a, w: build_W(d),
    "W_slice": lambda d, a, w: build_W_slice(d, w),
    "V": lambda d, a, w: build_V(d),
    "Wa": lambda d, a, w: build_Wa(d, a),
    "Va": lambda d, a, w: build_Va(d, a),
}


def build(kind: str, d: int, a: int = 0, w: int = 0) -> Zonotope:
    if kind not in BUILDERS:
        raise ValueError(f"unknown polytope kind '{kind}' (expected one of {sorted(BUILDERS)})")
    return BUILDERS[kind](d, a, w)


# ---------------------------------------------------------------------------
# Membership
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Group:
    """Segments sharing a direction up to sign, merged into one interval."""

    direction: Weight
    members: tuple[tuple[int, int], ...]  # (segment index, sign)
    lo: Fraction
    hi: Fraction
    lo_strict: bool
    hi_strict: bool


def _signed(seg: Segment, sign: int) -> tuple[Fraction, Fraction, bool, bool]:
    if sign > 0:
        return seg.lo, seg.hi, seg.lo_strict, seg.hi_strict
    return -seg.hi, -seg.lo, seg.hi_strict, seg.lo_strict


def _merge(segments: Sequence[Segment]) -> list[_Group]:
    order: list[tuple] = []
    buckets: dict[tuple, list[tuple[int, int]]] = {}
    for index, seg in enumerate(segments):
        coeffs = seg.direction.coeffs
        lead = next((c for c in coeffs if c != 0), Fraction(1))
        key = coeffs if lead > 0 else tuple(-c for c in coeffs)
        if key not in buckets:
            buckets[key] = []
            order.append(key)
        buckets[key].append((index, 1 if lead > 0 else -1))
    groups = []
    for key in order:
        members = tuple(buckets[key])
        lo = hi = Fraction(0)
        lo_strict = hi_strict = False
        for index, sign in members:
            s_lo, s_hi, s_lo_strict, s_hi_strict = _signed(segments[index], sign)
            lo += s_lo
            hi += s_hi
            lo_strict = lo_strict or s_lo_strict
            hi_strict = hi_strict or s_hi_strict
        groups.append(_Group(Weight(key), members, lo, hi, lo_strict, hi_strict))
    return groups


def _split(group: _Group, segments: Sequence[Segment], total: Fraction) -> dict[int, Fraction]:
    """Distribute a merged coefficient back over the group's segments, respecting strictness."""
    out: dict[int, Fraction] = {}
    members = list(group.members)
    for position, (index, sign) in enumerate(members):
        lo, hi, lo_strict, hi_strict = _signed(segments[index], sign)
        rest_lo = rest_hi = Fraction(0)
        rest_lo_strict = rest_hi_strict = False
        for other, other_sign in members[position + 1:]:
            o_lo, o_hi, o_lo_strict, o_hi_strict = _signed(segments[other], other_sign)
            rest_lo += o_lo
            rest_hi += o_hi
            rest_lo_strict = rest_lo_strict or o_lo_strict
            rest_hi_strict = rest_hi_strict or o_hi_strict
        lower = [(lo, lo_strict), (total - rest_hi, rest_hi_strict)]
        upper = [(hi, hi_strict), (total - rest_lo, rest_lo_strict)]
        low = max(v for v, _ in lower)
        high = min(v for v, _ in upper)
        value = low if low == high else (low + high) / 2
        out[index] = sign * value
        total -= value
    return out


@dataclass(frozen=True)
class Membership:
    member: bool
    coefficients: tuple[Fraction, ...] | None = None
    line_coefficients: tuple[Fraction, ...] | None = None

    def to_json(self) -> dict:
        out: dict = {"member": self.member}
        if self.member:
            out["certificate"] = {
                "segments": format_vector(self.coefficients),
                "lines": format_vector(self.line_coefficients),
            }
        return out


def _check_dim(P: Zonotope, x: Weight) -> None:
    if P.d != x.d:
        raise DimensionMismatchError(f"polytope has d={P.d} but point has d={x.d}")


# normals are enumerated per subset, so the scan stops paying off in high rank
MAX_FACET_SCAN_D = 8


@lru_cache(maxsize=None)
def _subset_normals(d: int) -> tuple[tuple[int, ...], ...]:
    """+-1_S for non-empty S: the facet normals of zonotopes built from roots and coordinates."""
    out = []
    for mask in itertools.product((0, 1), repeat=d):
        if any(mask):
            out.append(mask)
            out.append(tuple(-m for m in mask))
    return tuple(out)


def _outside_closure(P: Zonotope, groups: Sequence[_Group], x: Weight) -> bool:
    """Cheap exact proof that x misses the closure of P; False only means "not proven"."""
    if P.d > MAX_FACET_SCAN_D:
        return False
    target = (x - P.translation).coeffs
    for u in _subset_normals(P.d):
        if any(sum(k * c for k, c in zip(u, line.coeffs)) != 0 for line in P.lines):
            continue
        reach = Fraction(0)
        for g in groups:
            s = sum(k * c for k, c in zip(u, g.direction.coeffs))
            reach += max(g.lo * s, g.hi * s)
        if sum(k * c for k, c in zip(u, target)) > reach:
            return True
    return False


def membership(P: Zonotope, x: Weight) -> Membership:
    """Exact membership test returning segment and line coefficients when x is in P."""
    _check_dim(P, x)
    groups = _merge(P.segments)
    if _outside_closure(P, groups, x):
        return Membership(False)
    strict_rows = [(g, side) for g in groups for side in ("lo", "hi")
                   if (g.lo_strict if side == "lo" else g.hi_strict)]
    n_groups, n_lines, n_strict = len(groups), len(P.lines), len(strict_rows)
    use_eps = n_strict > 0
    n = n_groups + n_lines + n_strict + (1 if use_eps else 0)
    eps = n - 1

    a_eq: list[list[Fraction]] = []
    b_eq: list[Fraction] = []
    target = x - P.translation
    for i in range(P.d):
        row = [Fraction(0)] * n
        for k, g in enumerate(groups):
            row[k] = g.direction.coeffs[i]
        for m, line in enumerate(P.lines):
            row[n_groups + m] = line.coeffs[i]
        a_eq.append(row)
        b_eq.append(target.coeffs[i])
    # t - eps - r = lo  /  t + eps + r = hi
    for s, (g, side) in enumerate(strict_rows):
        k = groups.index(g)
        row = [Fraction(0)] * n
        row[k] = Fraction(1)
        slack = n_groups + n_lines + s
        if side == "lo":
            row[eps], row[slack] = Fraction(-1), Fraction(-1)
            b_eq.append(g.lo)
        else:
            row[eps], row[slack] = Fraction(1), Fraction(1)
            b_eq.append(g.hi)
        a_eq.append(row)

    bounds = [(g.lo, g.hi) for g in groups]
    bounds += [(None, None)] * n_lines
    bounds += [(Fraction(0), None)] * n_strict
    if use_eps:
        bounds.append((Fraction(0), Fraction(1)))
    c = [Fraction(0)] * n
    if use_eps:
        c[eps] = Fraction(1)

    result = maximize(c, a_eq, b_eq, bounds)
    if result.status != "optimal" or (use_eps and result.value <= 0):
        return Membership(False)

    coefficients: dict[int, Fraction] = {}
    for k, g in enumerate(groups):
        coefficients.update(_split(g, P.segments, result.x[k]))
    return Membership(
        True,
        tuple(coefficients[i] for i in range(len(P.segments))),
        tuple(result.x[n_groups:n_groups + n_lines]),
    )


def contains(P: Zonotope, x: Weight) -> bool:
    return membership(P, x).member


def contains_fm(P: Zonotope, x: Weight) -> bool:
    """Membership by Fourier-Motzkin elimination over the merged segment coefficients."""
    _check_dim(P, x)
    groups = _merge(P.segments)
    n_groups, n_lines = len(groups), len(P.lines)
    n = n_groups + n_lines
    target = x - P.translation
    equalities = []
    for i in range(P.d):
        coeffs = [g.direction.coeffs[i] for g in groups]
        coeffs += [line.coeffs[i] for line in P.lines]
        equalities.append((coeffs, target.coeffs[i]))
    inequalities = []
    for k, g in enumerate(groups):
        unit = [Fraction(0)] * n
        unit[k] = Fraction(1)
        inequalities.append(Inequality(tuple(unit), -g.lo, g.lo_strict))
        inequalities.append(Inequality(tuple(-u for u in unit), g.hi, g.hi_strict))
    return fm_feasible(n, equalities, inequalities)


def recompose(P: Zonotope, m: Membership) -> Weight:
    point = P.translation
    for seg, t in zip(P.segments, m.coefficients):
        point = point + seg.direction.scale(t)
    for line, s in zip(P.lines, m.line_coefficients):
        point = point + line.scale(s)
    return point


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def coordinate_box(P: Zonotope) -> list[tuple[Fraction, Fraction]]:
    """Per-coordinate bounds of a bounded zonotope."""
    if not P.is_bounded:
        raise UnboundedPolytopeError(f"polytope '{P.name}' has free lines")
    box = []
    for i in range(P.d):
        lo = hi = P.translation.coeffs[i]
        for seg in P.segments:
            c = seg.direction.coeffs[i]
            lo += min(c * seg.lo, c * seg.hi)
            hi += max(c * seg.lo, c * seg.hi)
        box.append((lo, hi))
    return box


def _dominant_tuples(ranges: list[tuple[int, int]]):
    def walk(prefix: tuple[int, ...], i: int):
        if i == len(ranges):
            yield prefix
            return
        lo, hi = ranges[i]
        start = max(lo, prefix[-1]) if prefix else lo
        for value in range(start, hi + 1):
            yield from walk(prefix + (value,), i + 1)

    yield from walk((), 0)


def _member_or_none(P: Zonotope, shift: Weight, chi: tuple[int, ...]):
    weight = Weight(chi)
    return weight if contains(P, weight + shift) else None


def enumerate_dominant_integral(P: Zonotope, shift: Weight, jobs: int = 1) -> list[Weight]:
    """All dominant integral chi with chi + shift in P, in lexicographic order."""
    _check_dim(P, shift)
    box = coordinate_box(P)
    ranges = [
        (math.ceil(lo - s), math.floor(hi - s))
        for (lo, hi), s in zip(box, shift.coeffs)
    ]
    if any(lo > hi for lo, hi in ranges):
        return []
    candidates = list(_dominant_tuples(ranges))
    found = ordered_map(partial(_member_or_none, P, shift), candidates, jobs=jobs)
    return [w for w in found if w is not None]


def count_dominant_integral(P: Zonotope, shift: Weight) -> int:
    return len(enumerate_dominant_integral(P, shift))


def brute_force_dominant_integral(P: Zonotope, shift: Weight, margin: int = 1) -> list[Weight]:
    """Slow reference: scan an enlarged integer box without the dominance-aware walk."""
    box = coordinate_box(P)
    axes = [
        range(math.floor(lo - s) - margin, math.ceil(hi - s) + margin + 1)
        for (lo, hi), s in zip(box, shift.coeffs)
    ]
    found = []
    for chi in itertools.product(*axes):
        weight = Weight(chi)
        if is_dominant(weight) and contains(P, weight + shift):
            found.append(weight)
    return sorted(found, key=lambda w: w.coeffs)
