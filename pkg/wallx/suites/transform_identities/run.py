import random
from fractions import Fraction

from wallx.algebra.invariants import TypeS, p_of_type, transform_v_to_w, transform_w_to_v, twist_type
from wallx.core.errors import DecompositionError
from wallx.core.report import SuiteReport


def random_sizes(rng: random.Random, e: int) -> tuple[int, ...]:
    if e == 0:
        return ()
    cuts = sorted(c for c in range(1, e) if rng.random() < 0.5)
    bounds = [0, *cuts, e]
    return tuple(hi - lo for lo, hi in zip(bounds, bounds[1:]))


def random_type(rng: random.Random, d_max: int) -> TypeS:
    d = rng.randint(1, d_max)
    d_prime = rng.randint(0, d)
    sizes = random_sizes(rng, d - d_prime)
    parts = tuple((s, rng.randint(-3 * d, 3 * d)) for s in sizes)
    mu = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
    return TypeS(parts, d_prime, d, rng.randint(0, 3), mu)


def run(params: dict) -> dict:
    seed, cases, d_max = params["seed"], params["cases"], params["d_max"]
    rng = random.Random(seed)
    report = SuiteReport("transform_identities", seed=seed, cases=cases)

    for _ in range(cases):
        S = random_type(rng, d_max)
        label = {"parts": [list(x) for x in S.parts], "d_prime": S.d_prime, "mu": str(S.mu)}
        v = transform_w_to_v(S.parts, S.d_prime)
        back = transform_v_to_w(tuple(zip(S.sizes, v)), S.d_prime)
        report.check(back == tuple(w for _, w in S.parts), check="round-trip", **label)
        report.check(sum(v) - sum(w for _, w in S.parts) == S.e * S.d_prime,
                     check="sum-identity", **label)
        try:
            value = p_of_type(S)
        except DecompositionError:
            report.fail(check="p-forms", **label)
            continue
        report.passed += 1
        if S.parts:
            index = rng.randrange(len(S.parts))
            report.check(p_of_type(twist_type(S, index)) == value + S.parts[index][0],
                         check="twist", index=index, **label)

    report.progress(f"{cases} random types")
    return report.to_dict()
