from collections import Counter

from wallx.algebra.invariants import enumerate_point_generators, point_type_of_weight
from wallx.algebra.sod import point_summands_with_counts
from wallx.core.errors import WallxError
from wallx.core.report import SuiteReport, mu_param
from wallx.core.wire import format_vector


def run(params: dict) -> dict:
    d, jobs = params["d"], params["jobs"]
    mu = mu_param(params)
    report = SuiteReport("point_decomposition", d=d, mu=str(mu))

    generators = enumerate_point_generators(d, mu, jobs=jobs)
    summands = point_summands_with_counts(d, mu, closed_ends=True)
    total = sum(s.generators for s in summands)
    report.progress(f"{len(generators)} generators, {len(summands)} point labels")
    report.check(len(generators) == total, check="total",
                 generators=len(generators), summand_total=total)

    by_type: Counter = Counter()
    for chi in generators:
        try:
            by_type[point_type_of_weight(chi, mu).type] += 1
        except WallxError as exc:
            report.fail(chi=format_vector(chi), check="type", error=exc.code, message=str(exc))

    labels = {s.type for s in summands}
    for summand in summands:
        report.check(by_type[summand.type] == summand.generators, check="summand",
                     type=summand.type.to_json(), typed=by_type[summand.type],
                     counted=summand.generators)
    for S in sorted(set(by_type) - labels, key=lambda S: S.key()):
        report.fail(check="unlisted-type", type=S.to_json(), typed=by_type[S])

    report.extra["generators"] = len(generators)
    report.extra["summands"] = len(summands)
    return report.to_dict()
