import random

import pytest
from pydantic import ValidationError
from sympy import ImmutableMatrix, Matrix, Rational

from wallx.algebra.adhm import (
    AdhmPoint,
    check_point,
    critical_residuals,
    eval_f_alpha_scalar,
    index_set,
    is_critical,
    is_reduced,
    is_semistable,
    nu_map,
    point_from_json,
    point_to_json,
    potential,
    residuals_match_finite_differences,
    squarefree_by_factorization,
    squarefree_by_gcd,
)
from wallx.core.errors import ShapeMismatchError


def _scalar_point(alpha=None):
    return AdhmPoint.build([[1], [2]], [[3]], [[1]], [[5]], [[7]], alpha or {(1, 0): "1/2"})


def _zero_point(d):
    zero = [[0] * d for _ in range(d)]
    return AdhmPoint.build([[0] * d, [0] * d], [[0] * d], zero, zero, zero)


def _random_matrix(rng, rows, cols):
    return ImmutableMatrix(rows, cols, [Rational(rng.randint(-3, 3), rng.randint(1, 2))
                                        for _ in range(rows * cols)])


def _random_point(rng, d, a=1, m=2):
    return AdhmPoint(
        tuple(_random_matrix(rng, d, 1) for _ in range(a + 1)),
        tuple(_random_matrix(rng, 1, d) for _ in range(a)),
        _random_matrix(rng, d, d),
        _random_matrix(rng, d, d),
        _random_matrix(rng, d, d),
        tuple((key, Rational(rng.randint(-2, 2))) for key in index_set(m)),
    )


def _random_invertible(rng, d):
    while True:
        g = _random_matrix(rng, d, d)
        if g.det() != 0:
            return g


def _conjugate(point, g):
    h = g.inv()
    return AdhmPoint(
        tuple(ImmutableMatrix(g * col) for col in point.u),
        tuple(ImmutableMatrix(row * h) for row in point.v),
        ImmutableMatrix(g * point.A * h),
        ImmutableMatrix(g * point.B * h),
        ImmutableMatrix(g * point.C * h),
        point.alpha,
    )


# --- points ---

class TestPoint:
    def test_index_set(self):
        assert index_set(2) == [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]

    def test_shapes(self):
        p = _scalar_point()
        assert p.d == 1
        assert p.a == 1

    def test_bad_matrix_shape(self):
        with pytest.raises(ShapeMismatchError):
            AdhmPoint.build([[1], [0]], [[1]], [[0]], [[0]], [[0, 0]])

    def test_u_count_must_match_v(self):
        with pytest.raises(ShapeMismatchError):
            AdhmPoint.build([[1]], [[1]], [[0]], [[0]], [[0]])

    def test_json(self):
        p = point_from_json({
            "u": [["1"], [0]], "v": [["1/3"]], "A": [["0"]], "B": [["2"]], "C": [["0"]],
            "alpha": {"1,0": "1/2"},
        })
        assert p.alpha_map == {(1, 0): Rational(1, 2)}
        assert point_to_json(p)["v"] == [["1/3"]]

    def test_bad_alpha_key(self):
        with pytest.raises(ValidationError):
            point_from_json({"u": [[1], [0]], "v": [[1]], "A": [[0]], "B": [[0]], "C": [[0]],
                             "alpha": {"x": 1}})


# --- potential ---

class TestPotential:
    def test_scalar_value(self):
        assert potential(_scalar_point(), 1) == 24

    def test_unit_term(self):
        assert potential(_scalar_point(), 1, with_unit=True) == 30

    def test_alpha_outside_index_set(self):
        with pytest.raises(ShapeMismatchError):
            potential(_scalar_point({(2, 0): 1}), 1)

    def test_needs_two_u(self):
        p = AdhmPoint.build([[1], [0], [0]], [[1], [1]], [[0]], [[0]], [[0]])
        with pytest.raises(ShapeMismatchError):
            potential(p, 1)

    def test_nu(self):
        assert nu_map(_scalar_point()) == Matrix([[3]])


# --- critical locus ---

class TestCritical:
    def test_zero_point(self):
        assert is_critical(_zero_point(2), 1)

    def test_scalar_residuals(self):
        res = critical_residuals(_scalar_point(), 1)
        assert res["C"] == Matrix([[3]])
        assert res["u1"] == Matrix([[21]])
        assert res["u2"] == Matrix([[Rational(3, 2)]])
        assert res["v"] == Matrix([[8]])
        assert res["alpha"] == Matrix([[6], [30]])

    def test_finite_differences(self):
        p = AdhmPoint.build(
            [[1, 0], [Rational(1, 2), -1]],
            [[2, 1]],
            [[0, 1], [1, 0]],
            [[1, -1], [0, 2]],
            [[Rational(1, 3), 0], [1, 1]],
            {(1, 0): 1, (0, 1): -2, (1, 1): Rational(1, 2), (0, 2): 1},
        )
        assert residuals_match_finite_differences(p, 2)
        assert residuals_match_finite_differences(p, 2, with_unit=True)

    def test_gauge_invariance(self):
        rng = random.Random(17)
        for _ in range(15):
            d = rng.randint(1, 3)
            point = _random_point(rng, d)
            g = _random_invertible(rng, d)
            h = g.inv()
            moved = _conjugate(point, g)
            assert potential(moved, 2) == potential(point, 2)
            res, res_moved = critical_residuals(point, 2), critical_residuals(moved, 2)
            for name in ("C", "A", "B"):
                assert res_moved[name] == g * res[name] * h
            for name in ("u1", "u2"):
                assert res_moved[name] == res[name] * h
            assert res_moved["v"] == g * res["v"]
            assert res_moved["alpha"] == res["alpha"]


# --- stability ---

class TestStability:
    def test_dt_spans(self):
        p = AdhmPoint.build([[1, 0], [0, 0]], [[0, 0]], [[0, 0], [1, 0]], [[0, 0], [0, 0]],
                            [[0, 0], [0, 0]])
        assert is_semistable(p, "DT").semistable

    def test_dt_certificate(self):
        p = AdhmPoint.build([[1, 0], [0, 0]], [[0, 1]], [[0, 0], [0, 0]], [[0, 0], [0, 0]],
                            [[0, 0], [0, 0]])
        verdict = is_semistable(p, "DT")
        assert not verdict.semistable
        assert verdict.to_json()["invariant_subspace"] == [["1", "0"]]

    def test_pt_uses_v(self):
        p = AdhmPoint.build([[0, 0], [0, 0]], [[0, 1]], [[0, 0], [1, 0]], [[0, 0], [0, 0]],
                            [[0, 0], [0, 0]])
        assert is_semistable(p, "PT").semistable
        assert not is_semistable(p, "DT").semistable

    def test_bad_side(self):
        with pytest.raises(ValueError):
            is_semistable(_scalar_point(), "XT")

    def test_dt_survives_more_framing(self):
        rng = random.Random(23)
        for _ in range(30):
            d = rng.randint(1, 3)
            point = _random_point(rng, d)
            # sparse operators so that both verdicts occur
            point = AdhmPoint(point.u, point.v, *(
                ImmutableMatrix(d, d, lambda i, j, M=M: M[i, j] if rng.random() < 0.3 else 0)
                for M in (point.A, point.B, point.C)
            ), point.alpha)
            enlarged = AdhmPoint(point.u + (_random_matrix(rng, d, 1),),
                                 point.v + (_random_matrix(rng, 1, d),),
                                 point.A, point.B, point.C, point.alpha)
            if is_semistable(point, "DT").semistable:
                assert is_semistable(enlarged, "DT").semistable
            before = len(is_semistable(point, "DT").certificate)
            after = is_semistable(enlarged, "DT")
            assert after.semistable or len(after.certificate) >= before


# --- reducedness ---

class TestReduced:
    def test_square(self):
        alpha = {(1, 0): 2, (2, 0): 1}
        assert eval_f_alpha_scalar(alpha, -1, 0) == 0
        assert not is_reduced(alpha, 2)
        assert not squarefree_by_gcd(alpha)
        assert not squarefree_by_factorization(alpha)

    def test_squarefree(self):
        alpha = {(1, 1): 1}
        assert is_reduced(alpha, 2)
        assert squarefree_by_gcd(alpha)

    def test_linear_is_reduced(self):
        assert is_reduced({}, 1)
        assert is_reduced({(0, 1): 3}, 1)

    def test_oracles_agree(self):
        cases = [
            {(1, 0): 1, (0, 1): 1},
            {(2, 0): 1, (0, 2): -1, (1, 0): 2, (0, 1): 2},
            {(2, 0): 1, (1, 1): 2, (0, 2): 1, (1, 0): 2, (0, 1): 2},
            {(1, 1): 3, (2, 1): 1},
        ]
        for alpha in cases:
            assert is_reduced(alpha, 3) == squarefree_by_gcd(alpha)


# --- check_point ---

class TestCheckPoint:
    def test_zero_point(self):
        out = check_point(_zero_point(1), 1)
        assert out["critical"] is True
        assert out["dt_semistable"] is False
        assert out["reduced"] is True
        assert out["potential"] == "0"
