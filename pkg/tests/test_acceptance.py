"""Acceptance criteria, one line each.

Run ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python3 tests/test_acceptance.py`` to print only the lines.
Criteria that do not hold as worded are kept as strict xfails, with the
measured outcome in the line.
"""

from __future__ import annotations

import random
import sys
import time

import pytest

from hypinv import census as cs
from hypinv import curves as cv
from hypinv import moduli as md
from hypinv import suites
from hypinv.divisors import Divisor, canonical_divisor, is_linearly_equivalent, rational_places, rr_dimension, two_torsion_classes

RESULTS: list[str] = []


def report(tag: str, passed: bool, detail: str) -> bool:
    RESULTS.append(f"{'PASS' if passed else 'FAIL'} {tag}: {detail}")
    return passed


# 1 ------------------------------------------------------------------------


def criterion_closed_form_grid():
    start = time.perf_counter()
    bad = 0
    for pi in range(2, 41):
        for g in range(0, 21):
            r = 2 * (pi - 1) - 4 * (g - 1)
            bad += md.ramification_count(pi, g) != r
            bad += md.dim_family(pi, g).dim != (2 * pi - g - 1 if r >= 0 else None)
            bad += md.dim_hyp_family(pi, g).dim != (pi if r in (0, 2, 4) else None)
            if g >= 2:
                bad += md.dim_family_hyperelliptic_base(pi, g).dim != (2 * pi - 2 * g + 1 if r >= 0 else None)
            if g >= 1:
                want = None if r < 0 else (0 if r == 0 else r - (1 if g == 1 else 0))
                bad += md.dim_fixed_base(pi, g).dim != want
                kinds = ["elliptic"] if g == 1 else ["hyperelliptic"]
                for kind in kinds:
                    hyp = {(4, "hyperelliptic"): 2, (2, "hyperelliptic"): 1, (0, "hyperelliptic"): 0,
                           (4, "elliptic"): 3 - 1, (2, "elliptic"): 2 - 1}.get((r, kind))
                    bad += md.dim_hyp_fixed_base(pi, g, kind).dim != hyp
    elapsed = time.perf_counter() - start
    return report("C1 closed-form grid", bad == 0 and elapsed < 1.0, f"{bad} mismatches on 2<=pi<=40, 0<=g<=20 in {elapsed:.2f}s")


# 2, 3 ---------------------------------------------------------------------

CORPUS = ((2, 5), (2, 7), (3, 5))


def criterion_complement_corpus():
    total = fails = classes = hurwitz = 0
    for genus, q in CORPUS:
        rep = cs.verify_complement_corpus(genus, q)
        total += rep.checks
        hurwitz += rep.hurwitz_checks
        classes += rep.classes
        fails += len(rep.failures)
    return report(
        "C2 complement corpus",
        fails == 0 and total > 0,
        f"{classes} classes, {total} complement checks, {hurwitz} Hurwitz checks, {fails} failures",
    )


def criterion_window():
    violations = 0
    dists = []
    for genus, q in CORPUS:
        rep = cs.survey_involutions(genus, q)
        violations += len(rep.window_violations)
        dists.append(f"g={genus}/F{q}:{sorted(rep.involution_distribution)}")
    return report("C3 window", violations == 0, f"{violations} violations; quotient genera {' '.join(dists)}")


# 4 ------------------------------------------------------------------------


def criterion_base_points():
    detail, ok = [], True
    for genus in (2, 3):
        rep = suites.suite_basepoints(genus, 7)
        ok &= rep["passed"]
        detail.append(f"genus {genus}: {len(rep['checks'])} systems, K+g12 -> {len(rep['checks'][0]['base_points'])}")
    return report("C4 base points", ok, "; ".join(detail) + " (K+P -> 1, sum g12+P+Q -> 2 for every Weierstrass P, Q)")


# 5 ------------------------------------------------------------------------

RR_CURVES = ((7, [0, 6, 0, 0, 0, 0, 0, 1]), (11, [3, 1, 0, 5, 0, 1]), (7, [1, 0, 1, 0, 0, 0, 1]), (13, [2, 0, 3, 1, 1]))


def criterion_riemann_roch():
    bad = tested = 0
    for p, f in RR_CURVES:
        C = cv.make_curve(p, f)
        K = canonical_divisor(C, 1)
        pts = rational_places(C, 1)
        rng = random.Random(p * 1000 + len(f))
        bad += rr_dimension(C, Divisor(C, 1)) != 1
        bad += rr_dimension(C, K) != C.genus
        for _ in range(200):
            supp = {P: rng.randint(-2, 3) for P in rng.sample(pts, min(4, len(pts)))}
            D = Divisor(C, 1, supp)
            shift = rng.randint(-2, 2 * C.genus + 2) - D.degree
            D = D + Divisor(C, 1, {rng.choice(pts): shift})
            tested += 1
            bad += rr_dimension(C, D) - rr_dimension(C, K - D) != D.degree - C.genus + 1
    return report("C5 Riemann-Roch", bad == 0, f"{tested} random divisors on {len(RR_CURVES)} curves (g=3,2,2,1), {bad} failures")


# 6 ------------------------------------------------------------------------


def criterion_two_torsion():
    found = []
    ok = True
    for genus in (1, 2):
        C = suites.split_curve(genus, 7)
        reps = two_torsion_classes(C, 1)
        zero = Divisor(C, 1)
        ok &= len(reps) == 2 ** (2 * genus)
        ok &= all(is_linearly_equivalent(T * 2, zero) for T in reps)
        ok &= all(not is_linearly_equivalent(S, T) for i, S in enumerate(reps) for T in reps[i + 1 :])
        found.append(len(reps))
    return report("C6 two-torsion", ok, f"found {found[0]} (g=1) and {found[1]} (g=2) pairwise inequivalent classes")


# 7 ------------------------------------------------------------------------


def _twists():
    return suites.suite_uniqueness(2, 7, 50)


def criterion_twist_quadratic():
    rep = _twists()
    n = sum(c["iso_k2"] for c in rep["checks"])
    return report("C7a twists isomorphic over F_49", n == len(rep["checks"]), f"{n}/{len(rep['checks'])} pairs")


def criterion_twist_base():
    rep = _twists()
    distinct = sum(not c["iso_k1"] for c in rep["checks"])
    witnesses = [e["moebius"] for e in rep["isomorphic_over_base"]]
    return report(
        "C7b twists distinct over F_7",
        distinct == len(rep["checks"]),
        f"{distinct}/{len(rep['checks'])} pairs; exceptions carry extra automorphisms, witnesses {witnesses}",
    )


# 8 ------------------------------------------------------------------------


def criterion_branch_locus():
    rep = suites.suite_branch_locus((5, 7, 11))
    got = [f"{c['base']} r={c['r']}: {c['exponent']}" for c in rep["checks"]]
    return report("C8 branch-locus exponents", rep["passed"], "; ".join(got) + " (expected 2/3/1/2)")


# 9 ------------------------------------------------------------------------


def criterion_family_even():
    dims = [cs.family_parameter_count("y²=f(x²)", pi).estimated_dim for pi in (2, 3, 4, 5)]
    return report("C9a y²=f(x²) parameter count", dims == [2, 3, 4, 5], f"estimated {dims} for pi=2..5")


def criterion_family_odd():
    dims = [cs.family_parameter_count("y²=x·f(x²)", pi).estimated_dim for pi in (2, 3, 4, 5)]
    return report(
        "C9b y²=x·f(x²) parameter count",
        dims == [2, 3, 4, 5],
        f"estimated {dims} for pi=2..5; x -> -x acts with order four on this family",
    )


CRITERIA = [
    criterion_closed_form_grid,
    criterion_complement_corpus,
    criterion_window,
    criterion_base_points,
    criterion_riemann_roch,
    criterion_two_torsion,
    criterion_twist_quadratic,
    criterion_twist_base,
    criterion_branch_locus,
    criterion_family_even,
    criterion_family_odd,
]

# Worded criteria that are false as stated; see the README.
KNOWN_FALSE = {
    criterion_twist_base: "curves with an extra automorphism are isomorphic to their twist over the base field",
    criterion_family_odd: "the family y²=x·f(x²) has an order-four automorphism, not an involution, and dimension pi-1",
}


@pytest.mark.parametrize(
    "criterion",
    [
        pytest.param(c, marks=pytest.mark.xfail(strict=True, reason=KNOWN_FALSE[c])) if c in KNOWN_FALSE else c
        for c in CRITERIA
    ],
    ids=[c.__name__.removeprefix("criterion_") for c in CRITERIA],
)
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    for c in CRITERIA:
        c()
    print("\n".join(RESULTS))
    sys.exit(0)
