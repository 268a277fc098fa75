from wallx.algebra.invariants import MuParameter, enumerate_generators
from wallx.algebra.sod import window_contains, window_report
from wallx.core.report import SuiteReport, mu_param
from wallx.core.wire import format_vector


def run(params: dict) -> dict:
    d, a, jobs = params["d"], params["a"], params["jobs"]
    mu = mu_param(params)
    generic = MuParameter(mu).is_generic(d)
    report = SuiteReport("window_consistency", d=d, a=a, mu=str(mu), generic=generic,
                         window="half-open" if generic else "closed")

    generators = enumerate_generators(d, a, mu, jobs=jobs)
    report.progress(f"{len(generators)} generators, strata e_i = 1..{d}")

    for chi in generators:
        label = format_vector(chi)
        for e_i in range(1, d + 1):
            closed = window_contains(chi, e_i, d, a, mu, half_open=False)
            if not generic:
                # endpoints of the window can be hit, only the closed window holds
                if not closed:
                    report.fail(chi=label, check="in-window", **window_report(chi, e_i, a, mu))
                else:
                    report.passed += 1
                continue
            half_open = window_contains(chi, e_i, d, a, mu, half_open=True)
            if half_open:
                report.passed += 1
            else:
                report.fail(chi=label, check="in-window", **window_report(chi, e_i, a, mu))
            report.check(closed == half_open, chi=label, e_i=e_i, check="half-open-equals-closed")

    report.extra["generators"] = len(generators)
    return report.to_dict()
