from fractions import Fraction

from wallx.algebra.invariants import levels_containing
from wallx.algebra.polytopes import build_Va, build_Wa, contains, contains_fm
from wallx.algebra.weights import Weight
from wallx.core.report import SuiteReport
from wallx.core.wire import format_vector


def fixtures(a: int) -> list[tuple[str, Weight, bool, bool, list[int]]]:
    """(label, x, in Va, in Wa, levels) for the labelled rank-2 points."""
    h = Fraction(a, 2)
    out = [
        ("top-right", Weight.of([h - Fraction(3, 2), h + Fraction(3, 2)]), True, True, [0]),
        ("top-middle", Weight.of([-Fraction(3, 2) - h, h + Fraction(3, 2)]), True, False, [1]),
        ("top-left", Weight.of([-Fraction(5, 2) - h, h + Fraction(3, 2)]), True, False, [1]),
        ("middle-left", Weight.of([-Fraction(5, 2) - h, -h + Fraction(3, 2)]), True, False, [2]),
        ("bottom-left", Weight.of([-Fraction(5, 2) - h, -h + Fraction(1, 2)]), True, False, [2]),
    ]
    if a == 1:
        out.append(("open-corner", Weight.of([Fraction(-1, 2), Fraction(-1, 2)]), True, False, [2]))
    return out


def run(params: dict) -> dict:
    a_values = params["a_values"]
    report = SuiteReport("polytope_fixtures", a_values=a_values)

    for a in a_values:
        Va, Wa = build_Va(2, a), build_Wa(2, a)
        for label, x, in_va, in_wa, levels in fixtures(a):
            detail = {"a": a, "label": label, "x": format_vector(x)}
            report.check(contains(Va, x) == in_va, check="in-Va", expected=in_va, **detail)
            report.check(contains(Wa, x) == in_wa, check="in-Wa", expected=in_wa, **detail)
            report.check(contains_fm(Wa, x) == in_wa, check="in-Wa-fm", expected=in_wa, **detail)
            got = levels_containing(x, a)
            report.check(got == levels, check="levels", expected=levels, got=got, **detail)
        report.progress(f"a={a}: {len(fixtures(a))} fixtures")

    return report.to_dict()
