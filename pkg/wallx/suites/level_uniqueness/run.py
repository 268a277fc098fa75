from functools import partial

from wallx.algebra.invariants import (
    enumerate_generators,
    generator_point,
    level_witness,
    levels_containing,
)
from wallx.core.pool import ordered_map
from wallx.core.report import SuiteReport, mu_param
from wallx.core.wire import format_vector


def run(params: dict) -> dict:
    d, a, jobs = params["d"], params["a"], params["jobs"]
    mu = mu_param(params)
    report = SuiteReport("level_uniqueness", d=d, a=a, mu=str(mu))

    generators = enumerate_generators(d, a, mu, jobs=jobs)
    report.progress(f"{len(generators)} generators for d={d}, a={a}, mu={mu}")
    points = [generator_point(chi, mu) for chi in generators]
    levels = ordered_map(partial(levels_containing, a=a), points, jobs=jobs)

    histogram: dict[int, int] = {}
    for chi, x, found in zip(generators, points, levels):
        if not report.check(len(found) == 1, chi=format_vector(chi), levels=found):
            continue
        e = found[0]
        histogram[e] = histogram.get(e, 0) + 1
        witness = level_witness(x, e, a)
        if witness is None or not witness.is_valid() or witness.recompose() != x:
            report.fail(chi=format_vector(chi), e=e, check="witness")

    report.extra["generators"] = len(generators)
    report.extra["levels"] = {str(e): n for e, n in sorted(histogram.items())}
    return report.to_dict()
