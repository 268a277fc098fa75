from wallx.algebra.bwb import bwb_terms, expected_term_count
from wallx.algebra.invariants import enumerate_generators
from wallx.algebra.weights import (
    Cocharacter,
    QuiverShape,
    Sign,
    Weight,
    is_dominant,
    weight_multiset,
)
from wallx.core.report import SuiteReport, mu_param
from wallx.core.wire import format_vector


def run(params: dict) -> dict:
    d, a, framed = params["d"], params["a"], params["framed"]
    mu = mu_param(params)
    shape = QuiverShape(d, a, framed=framed)
    report = SuiteReport("bwb_counts", d=d, a=a, mu=str(mu), framed=framed)

    weights = [Weight.zero(d)] + [w for w in enumerate_generators(d, a, mu) if not w.is_zero()]
    report.progress(f"{len(weights)} weights x {d + 1} cocharacters")

    for e in range(d + 1):
        lam = Cocharacter.tau(e, d)
        negative = sum(weight_multiset(shape, Sign.NEG, lam).values())
        expected = expected_term_count(shape, lam)
        for chi in weights:
            label = {"chi": format_vector(chi), "e": e}
            terms = bwb_terms(chi, shape, lam, include_vanished=True)
            report.check(len(terms) == expected, check="terms", got=len(terms),
                         expected=expected, **label)
            report.check(sum(t.count for t in terms) == 2 ** negative, check="multiplicity",
                         **label)
            for term in terms:
                if term.vanished:
                    continue
                report.check(is_dominant(term.weight) and term.shift <= term.size,
                             check="term", weight=format_vector(term.weight), **label)

    report.extra["weights"] = len(weights)
    return report.to_dict()
