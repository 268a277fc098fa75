import random
from fractions import Fraction

from sympy import Poly

from wallx.algebra.adhm import (
    X,
    Y,
    AdhmPoint,
    critical_residuals,
    index_set,
    is_reduced,
    is_semistable,
    residuals_match_finite_differences,
    squarefree_by_gcd,
)
from wallx.core.report import SuiteReport


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-3, 3), rng.choice([1, 2, 3]))


def random_point(rng: random.Random, d: int, m: int, zero_u: bool = False) -> AdhmPoint:
    def vec():
        return [random_rational(rng) for _ in range(d)]

    def mat():
        return [vec() for _ in range(d)]

    u = [vec(), vec()]
    if zero_u:
        for col in u:
            if rng.random() < 0.5:
                col[:] = [0] * d
    alpha = {key: random_rational(rng) for key in index_set(m) if rng.random() < 0.7}
    return AdhmPoint.build(u, [vec()], mat(), mat(), mat(), alpha)


def random_alpha(rng: random.Random, m: int) -> dict:
    return {key: random_rational(rng) for key in index_set(m) if rng.random() < 0.6}


def repeated_factor_alpha(rng: random.Random, m: int) -> dict:
    """alpha with f_alpha = (1 + b1 x + b2 y)^2 (times a linear factor when m >= 3)."""
    g = 1 + random_rational(rng) * X + random_rational(rng) * Y
    f = g**2
    if m >= 3:
        f *= 1 + random_rational(rng) * X + random_rational(rng) * Y
    poly = Poly(f.expand(), X, Y)
    return {
        monom: Fraction(int(c.p), int(c.q))
        for monom, c in zip(poly.monoms(), poly.coeffs())
        if monom != (0, 0)
    }


def run(params: dict) -> dict:
    seed, points, alpha_cases = params["seed"], params["points"], params["alpha_cases"]
    rng = random.Random(seed)
    report = SuiteReport("adhm_layer", seed=seed)

    for k in range(points):
        d, m = rng.randint(1, 3), rng.randint(1, 2)
        point = random_point(rng, d, m)
        for with_unit in (False, True):
            report.check(residuals_match_finite_differences(point, m, with_unit=with_unit),
                         check="finite-differences", index=k, d=d, m=m, with_unit=with_unit)
        u1, _ = point.u
        expected = u1 * point.v[0] + point.A * point.B - point.B * point.A
        report.check(critical_residuals(point, m)["C"] == expected, check="C-block", index=k)
    report.progress(f"{points} random points")

    for k in range(points):
        point = random_point(rng, 1, 1, zero_u=True)
        nonzero = any(not col.is_zero_matrix for col in point.u)
        report.check(is_semistable(point, "DT").semistable == nonzero,
                     check="rank-one-stability", index=k)

    for k in range(alpha_cases):
        m = rng.randint(1, 3)
        alpha = repeated_factor_alpha(rng, m) if m >= 2 and k % 2 else random_alpha(rng, m)
        report.check(is_reduced(alpha, m) == squarefree_by_gcd(alpha), check="reduced",
                     index=k, m=m, alpha={f"{i},{j}": str(c) for (i, j), c in sorted(alpha.items())})
    report.progress(f"{alpha_cases} alpha checked against the gcd oracle")

    return report.to_dict()
