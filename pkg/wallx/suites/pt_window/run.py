from wallx.algebra.invariants import (
    MuParameter,
    TypeS,
    enumerate_generators,
    enumerate_pt_generators,
    type_of_weight,
)
from wallx.algebra.sod import summands_with_counts, window_contains, window_report
from wallx.core.errors import WallxError
from wallx.core.report import SuiteReport, mu_param
from wallx.core.wire import format_vector


def run(params: dict) -> dict:
    d, a, jobs = params["d"], params["a"], params["jobs"]
    mu = mu_param(params)
    generic = MuParameter(mu).is_generic(d)
    report = SuiteReport("pt_window", d=d, a=a, mu=str(mu), generic=generic)

    generators = enumerate_pt_generators(d, a, mu, jobs=jobs)
    report.progress(f"{len(generators)} PT generators, strata e_i = 1..{d}")

    for chi in generators:
        label = format_vector(chi)
        for e_i in range(1, d + 1):
            if window_contains(chi, e_i, d, a, mu, side="PT"):
                report.passed += 1
            else:
                report.fail(chi=label, check="in-window",
                            **window_report(chi, e_i, a, mu, side="PT"))

    (summand,) = summands_with_counts(d, a, mu, closed_ends=True, side="PT")
    report.check(summand.generators == len(generators), check="total",
                 generators=len(generators), summand_total=summand.generators)

    dt_generators = set(enumerate_generators(d, a, mu, jobs=jobs))
    pair_type = TypeS((), d, d, a, mu)
    for chi in generators:
        label = format_vector(chi)
        report.check(chi in dt_generators, chi=label, check="dt-generator")
        if not generic:
            continue
        try:
            S = type_of_weight(chi, a, mu).type
        except WallxError as exc:
            report.fail(chi=label, check="type", error=exc.code, message=str(exc))
            continue
        report.check(S == pair_type, chi=label, check="pair-type", type=S.to_json())

    report.extra["generators"] = len(generators)
    return report.to_dict()
