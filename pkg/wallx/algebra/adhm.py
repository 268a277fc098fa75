"""Extended ADHM data with potential.

A point is (u_1..u_{a+1}, v_1..v_a, A, B, C, alpha) over Q with u's columns, v's rows and
A, B, C square. For a = 1 the potential is

    W = sum_{(i,j) in I_m} alpha_ij v A^i B^j u_2 + Tr C (u_1 v + [A, B]).

Residual convention: for a matrix variable X the residual R_X has (R_X)[l, k] = dW/dX[k, l]
(the cyclic derivative), so R_C = u_1 v + [A, B]. For the column u the residual is the row of
partials, for the row v it is the column of partials.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np
import sympy
from pydantic import BaseModel, field_validator
from sympy import ImmutableMatrix, Matrix, Poly, Rational, eye, symbols

from wallx.core.errors import ShapeMismatchError
from wallx.core.wire import format_rational, parse_rational


X, Y, T = symbols("x y t")

REDUCEDNESS_SEED = 20240611
FD_STEP = 1e-6
FD_REL_TOL = 1e-6


def to_rational(value) -> Rational:
    if isinstance(value, Rational):
        return value
    q = parse_rational(value) if not isinstance(value, Fraction) else value
    return Rational(q.numerator, q.denominator)


def index_set(m: int) -> list[tuple[int, int]]:
    """I_m = {(i, j) : 1 <= i + j <= m}, by degree then descending power of x."""
    return [(i, total - i) for total in range(1, m + 1) for i in range(total, -1, -1)]


@dataclass(frozen=True)
class AdhmPoint:
    u: tuple[ImmutableMatrix, ...]
    v: tuple[ImmutableMatrix, ...]
    A: ImmutableMatrix
    B: ImmutableMatrix
    C: ImmutableMatrix
    alpha: tuple[tuple[tuple[int, int], Rational], ...] = ()

    def __post_init__(self):
        d = self.A.shape[0]
        for name in ("A", "B", "C"):
            if getattr(self, name).shape != (d, d):
                raise ShapeMismatchError(f"{name} has shape {getattr(self, name).shape}, expected ({d}, {d})")
        for k, col in enumerate(self.u):
            if col.shape != (d, 1):
                raise ShapeMismatchError(f"u_{k + 1} has shape {col.shape}, expected ({d}, 1)")
        for k, row in enumerate(self.v):
            if row.shape != (1, d):
                raise ShapeMismatchError(f"v_{k + 1} has shape {row.shape}, expected (1, {d})")
        if len(self.u) != len(self.v) + 1:
            raise ShapeMismatchError(f"expected a+1 u's for a v's, got {len(self.u)} and {len(self.v)}")

    @classmethod
    def build(cls, u, v, A, B, C, alpha: dict | None = None) -> AdhmPoint:
        def mat(rows):
            return ImmutableMatrix([[to_rational(x) for x in row] for row in rows])

        d = len(A)
        return cls(
            tuple(ImmutableMatrix(d, 1, [to_rational(x) for x in col]) for col in u),
            tuple(ImmutableMatrix(1, d, [to_rational(x) for x in row]) for row in v),
            mat(A) if d else ImmutableMatrix.zeros(0, 0),
            mat(B) if d else ImmutableMatrix.zeros(0, 0),
            mat(C) if d else ImmutableMatrix.zeros(0, 0),
            tuple(sorted((tuple(k), to_rational(c)) for k, c in (alpha or {}).items())),
        )

    @property
    def d(self) -> int:
        return self.A.shape[0]

    @property
    def a(self) -> int:
        return len(self.v)

    @property
    def alpha_map(self) -> dict[tuple[int, int], Rational]:
        return dict(self.alpha)


# ---------------------------------------------------------------------------
# JSON payload
# ---------------------------------------------------------------------------

Scalar = Union[str, int]


class AdhmPayload(BaseModel):
    u: list[list[Scalar]]
    v: list[list[Scalar]] = []
    A: list[list[Scalar]]
    B: list[list[Scalar]]
    C: list[list[Scalar]]
    alpha: dict[str, Scalar] = {}

    @field_validator("alpha")
    @classmethod
    def check_alpha_keys(cls, value: dict) -> dict:
        for key in value:
            parts = key.split(",")
            if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
                raise ValueError(f"alpha key must look like 'i,j', got '{key}'")
        return value


def point_from_json(data: dict) -> AdhmPoint:
    payload = AdhmPayload(**data)
    alpha = {
        tuple(int(p) for p in key.split(",")): value
        for key, value in payload.alpha.items()
    }
    return AdhmPoint.build(payload.u, payload.v, payload.A, payload.B, payload.C, alpha)


def point_to_json(point: AdhmPoint) -> dict:
    def rows(M):
        return [[str(M[i, j]) for j in range(M.shape[1])] for i in range(M.shape[0])]

    return {
        "u": [[str(x) for x in col] for col in point.u],
        "v": [[str(x) for x in row] for row in point.v],
        "A": rows(point.A),
        "B": rows(point.B),
        "C": rows(point.C),
        "alpha": {f"{i},{j}": str(c) for (i, j), c in point.alpha},
    }


# ---------------------------------------------------------------------------
# f_alpha
# ---------------------------------------------------------------------------

def _check_alpha(alpha: dict, m: int) -> None:
    allowed = set(index_set(m))
    extra = [key for key in alpha if key not in allowed]
    if extra:
        raise ShapeMismatchError(f"alpha indices {sorted(extra)} are outside I_{m}")


def f_alpha_poly(alpha: dict) -> Poly:
    expr = sympy.Integer(1)
    for (i, j), c in alpha.items():
        expr += to_rational(c) * X**i * Y**j
    return Poly(expr, X, Y, domain="QQ")


def eval_f_alpha(alpha: dict, A: Matrix, B: Matrix) -> Matrix:
    """Id + sum alpha_ij A^i B^j (A-powers on the left)."""
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ShapeMismatchError(f"A {A.shape} and B {B.shape} must be square of equal size")
    out = Matrix(eye(A.shape[0]))
    for (i, j), c in alpha.items():
        out += to_rational(c) * (A**i) * (B**j)
    return out


def eval_f_alpha_scalar(alpha: dict, x, y) -> Rational:
    x, y = to_rational(x), to_rational(y)
    return sympy.Integer(1) + sum(
        (to_rational(c) * x**i * y**j for (i, j), c in alpha.items()), sympy.Integer(0)
    )


# ---------------------------------------------------------------------------
# Potential and critical locus
# ---------------------------------------------------------------------------

def _require_pair_layout(point: AdhmPoint) -> None:
    if point.a != 1:
        raise ShapeMismatchError(f"the potential needs a=1 (two u's, one v), got a={point.a}")


def _scalar(M: Matrix) -> Rational:
    return M[0, 0]


def potential(point: AdhmPoint, m: int, with_unit: bool = False) -> Rational:
    _require_pair_layout(point)
    alpha = point.alpha_map
    _check_alpha(alpha, m)
    u1, u2 = point.u
    (v,) = point.v
    A, B, C = point.A, point.B, point.C
    d = point.d
    shifted = eval_f_alpha(alpha, A, B) - eye(d)
    value = _scalar(v * shifted * u2) if d else sympy.Integer(0)
    if with_unit and d:
        value += _scalar(v * u2)
    value += (C * (u1 * v + A * B - B * A)).trace() if d else 0
    return Rational(value)


def nu_map(point: AdhmPoint) -> Matrix:
    """[A, B] + u_1 v_1."""
    A, B = point.A, point.B
    out = A * B - B * A
    if point.v:
        out += point.u[0] * point.v[0]
    return Matrix(out)


def mu_map(point: AdhmPoint, m: int) -> tuple[Matrix, Matrix]:
    """(nu, v f_alpha(A, B))."""
    _require_pair_layout(point)
    alpha = point.alpha_map
    _check_alpha(alpha, m)
    return nu_map(point), Matrix(point.v[0] * eval_f_alpha(alpha, point.A, point.B))


def critical_residuals(point: AdhmPoint, m: int, with_unit: bool = False) -> dict[str, Matrix]:
    _require_pair_layout(point)
    alpha = point.alpha_map
    _check_alpha(alpha, m)
    u1, u2 = point.u
    (v,) = point.v
    A, B, C = point.A, point.B, point.C
    d = point.d
    shifted = eval_f_alpha(alpha, A, B) - eye(d)
    if with_unit:
        shifted += eye(d)
    outer = u2 * v

    res_A = B * C - C * B
    res_B = C * A - A * C
    for (i, j), c in alpha.items():
        c = to_rational(c)
        for r in range(i):
            res_A += c * A**(i - 1 - r) * B**j * outer * A**r
        for s in range(j):
            res_B += c * B**(j - 1 - s) * outer * A**i * B**s

    keys = index_set(m)
    res_alpha = Matrix(len(keys), 1, [
        _scalar(v * A**i * B**j * u2) if d else 0 for i, j in keys
    ])
    return {
        "C": Matrix(u1 * v + A * B - B * A),
        "u1": Matrix(v * C),
        "u2": Matrix(v * shifted),
        "v": Matrix(shifted * u2 + C * u1),
        "A": Matrix(res_A),
        "B": Matrix(res_B),
        "alpha": res_alpha,
    }


def is_critical(point: AdhmPoint, m: int, with_unit: bool = False) -> bool:
    return all(block.is_zero_matrix for block in critical_residuals(point, m, with_unit).values())


# ---------------------------------------------------------------------------
# Floating variant (derivative spot checks only)
# ---------------------------------------------------------------------------

def to_arrays(point: AdhmPoint, m: int) -> dict[str, np.ndarray]:
    def arr(M):
        return np.array([[float(M[i, j]) for j in range(M.shape[1])] for i in range(M.shape[0])],
                        dtype=float).reshape(M.shape)

    alpha = point.alpha_map
    return {
        "u1": arr(point.u[0]),
        "u2": arr(point.u[1]),
        "v": arr(point.v[0]),
        "A": arr(point.A),
        "B": arr(point.B),
        "C": arr(point.C),
        "alpha": np.array([[float(alpha.get(key, 0))] for key in index_set(m)], dtype=float)
        .reshape(len(index_set(m)), 1),
    }


def potential_numeric(arrays: dict[str, np.ndarray], m: int, with_unit: bool = False) -> float:
    A, B, C = arrays["A"], arrays["B"], arrays["C"]
    u1, u2, v = arrays["u1"], arrays["u2"], arrays["v"]
    d = A.shape[0]
    mp = np.linalg.matrix_power
    shifted = np.eye(d) if with_unit else np.zeros((d, d))
    for c, (i, j) in zip(arrays["alpha"][:, 0], index_set(m)):
        shifted = shifted + c * mp(A, i) @ mp(B, j)
    value = (v @ shifted @ u2)[0, 0]
    value += np.trace(C @ (u1 @ v + A @ B - B @ A))
    return float(value)


def finite_difference_residuals(
    point: AdhmPoint, m: int, step: float = FD_STEP, with_unit: bool = False
) -> dict[str, np.ndarray]:
    """Central differences laid out like :func:`critical_residuals`."""
    base = to_arrays(point, m)
    out = {}
    for name, block in base.items():
        grad = np.zeros_like(block)
        for index in np.ndindex(block.shape):
            plus = {k: a.copy() for k, a in base.items()}
            minus = {k: a.copy() for k, a in base.items()}
            plus[name][index] += step
            minus[name][index] -= step
            grad[index] = (potential_numeric(plus, m, with_unit)
                           - potential_numeric(minus, m, with_unit)) / (2 * step)
        out[name] = grad if name == "alpha" else grad.T
    return out


def residuals_match_finite_differences(
    point: AdhmPoint, m: int, step: float = FD_STEP, rel_tol: float = FD_REL_TOL,
    with_unit: bool = False,
) -> bool:
    exact = critical_residuals(point, m, with_unit)
    numeric = finite_difference_residuals(point, m, step, with_unit)
    for name, block in exact.items():
        expected = np.array(block.tolist(), dtype=float).reshape(block.shape)
        got = numeric[name]
        if expected.shape != got.shape:
            return False
        scale = np.maximum(1.0, np.abs(expected))
        if np.any(np.abs(expected - got) > rel_tol * scale):
            return False
    return True


# ---------------------------------------------------------------------------
# Stability
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StabilityVerdict:
    side: str
    semistable: bool
    certificate: tuple[tuple[Rational, ...], ...] = ()

    def to_json(self) -> dict:
        return {
            "side": self.side,
            "semistable": self.semistable,
            "invariant_subspace": [[str(x) for x in vec] for vec in self.certificate],
        }


def span_closure(vectors: list[Matrix], ops: list[Matrix]) -> list[Matrix]:
    """Basis of the smallest subspace containing ``vectors`` and stable under ``ops``."""
    basis = Matrix.hstack(*vectors).columnspace() if vectors else []
    while True:
        if not basis:
            return []
        grown = list(basis) + [op * b for op in ops for b in basis]
        new_basis = Matrix.hstack(*grown).columnspace()
        if len(new_basis) == len(basis):
            return basis
        basis = new_basis


def is_semistable(point: AdhmPoint, side: str = "DT") -> StabilityVerdict:
    """DT: C<A,B,C> applied to the u's spans V. PT: the same for the v's in the dual."""
    side = side.upper()
    d = point.d
    if side == "DT":
        vectors = [Matrix(col) for col in point.u]
        ops = [Matrix(point.A), Matrix(point.B), Matrix(point.C)]
    elif side == "PT":
        vectors = [Matrix(row.T) for row in point.v]
        ops = [Matrix(point.A.T), Matrix(point.B.T), Matrix(point.C.T)]
    else:
        raise ValueError(f"side must be DT or PT, got '{side}'")
    basis = span_closure(vectors, ops)
    if len(basis) == d:
        return StabilityVerdict(side, True)
    certificate = tuple(tuple(b[k, 0] for k in range(d)) for b in basis)
    return StabilityVerdict(side, False, certificate)


# ---------------------------------------------------------------------------
# Reducedness of the curve f_alpha = 0
# ---------------------------------------------------------------------------

def squarefree_by_gcd(alpha: dict) -> bool:
    """Slow reference: f is squarefree iff gcd(f, df/dx, df/dy) is constant."""
    f = f_alpha_poly(alpha)
    g = f.gcd(f.diff(X)).gcd(f.diff(Y))
    return g.total_degree() == 0


def squarefree_by_factorization(alpha: dict) -> bool:
    _, factors = f_alpha_poly(alpha).sqf_list()
    return all(mult == 1 for _, mult in factors)


def _line_certifies(f: Poly, degree: int, x0: int, y0: int, px: int, py: int) -> bool:
    restricted = Poly(f.as_expr().subs({X: x0 + px * T, Y: y0 + py * T}), T, domain="QQ")
    if restricted.degree() != degree:
        return False
    return restricted.gcd(restricted.diff(T)).degree() == 0


def is_reduced(alpha: dict, m: int, seed: int = REDUCEDNESS_SEED, lines: int | None = None) -> bool:
    """Whether f_alpha is squarefree.

    A restriction to a line that keeps the full degree and is squarefree proves it; if none of the
    seeded lines does, the square-free factorization decides.
    """
    _check_alpha(alpha, m)
    f = f_alpha_poly(alpha)
    degree = f.total_degree()
    if degree <= 1:
        return True
    rng = random.Random(seed)
    wanted = lines if lines is not None else m * m + 1
    radius = 2 * m + 3
    tried: set[tuple[int, int, int, int]] = set()
    while len(tried) < wanted:
        line = (rng.randint(-radius, radius), rng.randint(-radius, radius),
                rng.randint(1, radius), rng.randint(-radius, radius))
        if line in tried:
            continue
        tried.add(line)
        if _line_certifies(f, degree, *line):
            return True
    return squarefree_by_factorization(alpha)


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------

def check_point(point: AdhmPoint, m: int) -> dict:
    out: dict = {"d": point.d, "a": point.a, "m": m}
    if point.a == 1:
        residuals = critical_residuals(point, m)
        out["potential"] = format_rational(Fraction(str(potential(point, m))))
        out["residual_norms"] = {name: bool(block.is_zero_matrix) for name, block in residuals.items()}
        out["critical"] = all(out["residual_norms"].values())
        out["nu_zero"] = bool(nu_map(point).is_zero_matrix)
    out["dt_semistable"] = is_semistable(point, "DT").semistable
    out["pt_semistable"] = is_semistable(point, "PT").semistable
    out["reduced"] = is_reduced(point.alpha_map, m)
    return out
