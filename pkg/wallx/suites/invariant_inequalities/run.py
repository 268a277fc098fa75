from wallx.algebra.invariants import enumerate_generators, find_level_e, p, p_l
from wallx.core.errors import WallxError
from wallx.core.report import SuiteReport, mu_param
from wallx.core.wire import format_rational, format_vector


def run(params: dict) -> dict:
    d, a, jobs = params["d"], params["a"], params["jobs"]
    mu = mu_param(params)
    report = SuiteReport("invariant_inequalities", d=d, a=a, mu=str(mu))

    generators = enumerate_generators(d, a, mu, jobs=jobs)
    report.progress(f"{len(generators)} generators")

    zero_p_matches_level_zero = True
    for chi in generators:
        label = format_vector(chi)
        try:
            e = find_level_e(chi, a, mu).e
            value = p(chi, a, mu)
        except WallxError as exc:
            report.fail(chi=label, check="p", error=exc.code, message=str(exc))
            continue
        report.check(value <= 0, chi=label, check="p<=0", p=format_rational(value))
        for l in range(d + 1):
            other = p_l(chi, l, a, mu)
            ok = other > value if l > e else other >= value
            report.check(ok, chi=label, check="p_l", l=l, e=e,
                         p=format_rational(value), p_l=format_rational(other))
        if (value == 0) != (e == 0):
            zero_p_matches_level_zero = False

    report.extra["generators"] = len(generators)
    report.extra["zero_p_iff_level_zero"] = zero_p_matches_level_zero
    return report.to_dict()
