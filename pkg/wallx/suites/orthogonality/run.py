from collections import Counter

from wallx.algebra.bwb import orthogonality_check
from wallx.algebra.invariants import enumerate_generators
from wallx.core.report import SuiteReport, mu_param
from wallx.core.wire import format_vector


def run(params: dict) -> dict:
    d, a, seed, cap = params["d"], params["a"], params["seed"], params["sample_cap"]
    mu = mu_param(params)
    report = SuiteReport("orthogonality", d=d, a=a, mu=str(mu), seed=seed)

    generators = enumerate_generators(d, a, mu)
    report.progress(f"{len(generators) ** 2} ordered pairs")

    by_hypothesis: Counter = Counter()
    sampled = vacuous = 0
    for chi in generators:
        for chi_prime in generators:
            verdict = orthogonality_check(None, None, chi, chi_prime, a, mu,
                                          sample_cap=cap, seed=seed)
            if verdict.status == "not-applicable":
                by_hypothesis["not-applicable"] += 1
                continue
            by_hypothesis[verdict.hypothesis] += 1
            sampled += verdict.sampled
            vacuous += verdict.vacuous
            report.check(verdict.ok, chi=format_vector(chi), chi_prime=format_vector(chi_prime),
                         **verdict.to_json())

    report.extra["pairs"] = dict(sorted(by_hypothesis.items()))
    report.extra["sampled_pairs"] = sampled
    report.extra["vacuous_pairs"] = vacuous
    return report.to_dict()
