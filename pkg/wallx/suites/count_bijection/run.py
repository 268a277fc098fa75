from collections import Counter

from wallx.algebra.invariants import MuParameter, enumerate_generators, type_of_weight
from wallx.algebra.sod import enumerate_summands, summands_with_counts
from wallx.core.errors import WallxError
from wallx.core.report import SuiteReport, mu_param
from wallx.core.wire import format_vector


def run(params: dict) -> dict:
    d, a, jobs = params["d"], params["a"], params["jobs"]
    mu = mu_param(params)
    closed_ends = params["closed_ends"]
    report = SuiteReport("count_bijection", d=d, a=a, mu=str(mu), closed_ends=closed_ends)

    generators = enumerate_generators(d, a, mu, jobs=jobs)
    summands = summands_with_counts(d, a, mu, closed_ends=closed_ends)
    total = sum(s.generators for s in summands)
    report.progress(f"{len(generators)} generators, {len(summands)} summands")
    report.check(len(generators) == total, check="total",
                 generators=len(generators), summand_total=total)

    by_type: Counter = Counter()
    for chi in generators:
        try:
            by_type[type_of_weight(chi, a, mu).type] += 1
        except WallxError as exc:
            report.fail(chi=format_vector(chi), check="type", error=exc.code, message=str(exc))

    labels = {s.type for s in summands}
    for summand in summands:
        report.check(by_type[summand.type] == summand.generators, check="summand",
                     type=summand.type.to_json(), typed=by_type[summand.type],
                     counted=summand.generators)
    for S in sorted(set(by_type) - labels, key=lambda S: S.key()):
        report.fail(check="unlisted-type", type=S.to_json(), typed=by_type[S])

    if closed_ends and MuParameter(mu).is_generic(d):
        report.check(enumerate_summands(d, a, mu, closed_ends=False) == [s.type for s in summands],
                     check="open-equals-closed")

    report.extra["generators"] = len(generators)
    report.extra["summands"] = len(summands)
    return report.to_dict()
