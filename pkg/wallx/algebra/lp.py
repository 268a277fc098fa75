"""Exact rational linear programming.

``maximize`` states the problem as sympy relations and solves it with the exact simplex behind
``sympy.solvers.simplex.lpmax``, returning :class:`fractions.Fraction`. ``fm_feasible`` decides
feasibility of a system of (possibly strict) inequalities by Fourier-Motzkin elimination; it is
slow but shares no code with the simplex and serves as the second oracle for polytope membership.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import Eq, Rational, false, symbols, true
from sympy.solvers.simplex import InfeasibleLPError, UnboundedLPError, lpmax


Bound = tuple["Fraction | None", "Fraction | None"]


@dataclass(frozen=True)
class LPResult:
    status: str  # optimal | infeasible | unbounded
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


# ---------------------------------------------------------------------------
# Simplex
# ---------------------------------------------------------------------------

def _rational(v) -> Rational:
    v = Fraction(v)
    return Rational(v.numerator, v.denominator)


def maximize(
    c: Sequence,
    a_eq: Sequence[Sequence],
    b_eq: Sequence,
    bounds: Sequence[Bound],
) -> LPResult:
    """max c.x  s.t.  a_eq x = b_eq  and  lo_j <= x_j <= hi_j (None = unbounded side)."""
    n = len(c)
    if len(bounds) != n:
        raise ValueError(f"expected {n} bounds, got {len(bounds)}")
    xs = symbols(f"x:{n}")
    constraints = []
    for x, (lo, hi) in zip(xs, bounds):
        if lo is not None and hi is not None and Fraction(hi) < Fraction(lo):
            return LPResult("infeasible")
        if lo is not None:
            constraints.append(x >= _rational(lo))
        if hi is not None:
            constraints.append(x <= _rational(hi))
    for row, rhs in zip(a_eq, b_eq):
        lhs = sum((_rational(v) * x for v, x in zip(row, xs)), Rational(0))
        constraints.append(Eq(lhs, _rational(rhs)))
    # zero rows collapse to true/false before reaching the solver
    if any(rel == false for rel in constraints):
        return LPResult("infeasible")
    constraints = [rel for rel in constraints if rel != true]

    objective = sum((_rational(v) * x for v, x in zip(c, xs)), Rational(0))
    if not constraints and objective == 0:
        return LPResult("optimal", Fraction(0), (Fraction(0),) * n)
    try:
        value, point = lpmax(objective, constraints)
    except InfeasibleLPError:
        return LPResult("infeasible")
    except UnboundedLPError:
        return LPResult("unbounded")
    # a free variable absent from every relation is left out of the solution
    return LPResult(
        "optimal",
        Fraction(str(value)),
        tuple(Fraction(str(point.get(x, 0))) for x in xs),
    )


# ---------------------------------------------------------------------------
# Fourier-Motzkin
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Inequality:
    """sum(coeffs[k] * x_k) + const >= 0, or > 0 when strict."""

    coeffs: tuple[Fraction, ...]
    const: Fraction
    strict: bool = False

    def normalized(self) -> Inequality:
        scale = max((abs(c) for c in self.coeffs), default=Fraction(0))
        if scale == 0:
            return self
        return Inequality(tuple(c / scale for c in self.coeffs), self.const / scale, self.strict)


def _substitute(coeffs, const, var, expr_coeffs, expr_const):
    """Replace x_var by expr in coeffs.x + const."""
    f = coeffs[var]
    if f == 0:
        return tuple(coeffs), const
    new = [c + f * e for c, e in zip(coeffs, expr_coeffs)]
    new[var] = Fraction(0)
    return tuple(new), const + f * expr_const


def _dedupe(ineqs: list[Inequality]) -> list[Inequality]:
    best: dict[tuple, Inequality] = {}
    for ineq in ineqs:
        ineq = ineq.normalized()
        key = ineq.coeffs
        old = best.get(key)
        if old is None or ineq.const < old.const or (ineq.const == old.const and ineq.strict):
            best[key] = ineq
    return list(best.values())


def fm_feasible(
    n: int,
    equalities: Sequence[tuple[Sequence, Fraction]],
    inequalities: Sequence[Inequality],
) -> bool:
    """Decide whether some x in R^n satisfies every equality (coeffs.x == rhs) and inequality."""
    eqs = [(tuple(Fraction(c) for c in coeffs), -Fraction(rhs)) for coeffs, rhs in equalities]
    ineqs = [Inequality(tuple(Fraction(c) for c in q.coeffs), Fraction(q.const), q.strict)
             for q in inequalities]

    while eqs:
        coeffs, const = eqs.pop()
        var = next((k for k in range(n) if coeffs[k] != 0), None)
        if var is None:
            if const != 0:
                return False
            continue
        # x_var = -(rest + const) / coeffs[var]
        pivot = coeffs[var]
        expr = tuple(Fraction(0) if k == var else -c / pivot for k, c in enumerate(coeffs))
        expr_const = -const / pivot
        eqs = [_substitute(c, k, var, expr, expr_const) for c, k in eqs]
        ineqs = [Inequality(*_substitute(q.coeffs, q.const, var, expr, expr_const), q.strict)
                 for q in ineqs]

    remaining = [k for k in range(n) if any(q.coeffs[k] != 0 for q in ineqs)]
    while remaining:
        ineqs = _dedupe(ineqs)

        def cost(k):
            pos = sum(1 for q in ineqs if q.coeffs[k] > 0)
            neg = sum(1 for q in ineqs if q.coeffs[k] < 0)
            return pos * neg - pos - neg

        var = min(remaining, key=cost)
        remaining.remove(var)
        pos = [q for q in ineqs if q.coeffs[var] > 0]
        neg = [q for q in ineqs if q.coeffs[var] < 0]
        kept = [q for q in ineqs if q.coeffs[var] == 0]
        for p in pos:
            for q in neg:
                fp, fq = p.coeffs[var], -q.coeffs[var]
                coeffs = tuple(fq * x + fp * y for x, y in zip(p.coeffs, q.coeffs))
                kept.append(Inequality(coeffs, fq * p.const + fp * q.const, p.strict or q.strict))
        ineqs = kept

    for q in ineqs:
        if q.const < 0 or (q.strict and q.const == 0):
            return False
    return True
