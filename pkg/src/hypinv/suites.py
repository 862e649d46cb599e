"""Verification suites shared by the command line and the test-suite.

Each suite returns a JSON-ready dict with a boolean "passed" and the list
of individual checks; failures carry a witness.
"""

from __future__ import annotations

import itertools
import random

from . import census as cs
from . import curves as cv
from .divisors import (
    Divisor,
    base_points,
    canonical_divisor,
    g12,
    is_linearly_equivalent,
    two_torsion_classes,
    weierstrass_places,
)
from .ff import Poly, field, is_squarefree

SUITES = ("hurwitz", "complement", "basepoints", "torsion", "uniqueness", "window", "branch-locus")

# Expected exponents of the admissible branch loci.
BRANCH_EXPONENTS = {("hyperelliptic", 4): 2, ("elliptic", 4): 3, ("hyperelliptic", 2): 1, ("elliptic", 2): 2}


class SuiteError(ValueError):
    pass


def split_curve(genus: int, q: int) -> cv.HyperCurve:
    """y^2 = x (x - 1) ... (x - 2g): every Weierstrass place is rational."""
    if q < 2 * genus + 1:
        raise SuiteError(f"F_{q} is too small for a split genus-{genus} curve")
    F = field(q)
    f = Poly(F, [1])
    for i in range(2 * genus + 1):
        f = f * Poly(F, [F.neg(i), 1])
    return cv.make_curve(q, f)


def _place(P) -> str:
    return str(P)


def _result(checks: list[dict], **extra) -> dict:
    return extra | {"checks": checks, "passed": all(c["passed"] for c in checks)}


def suite_hurwitz(genus: int, q: int) -> dict:
    rep = cs.verify_complement_corpus(genus, q)
    bad = [f for f in rep.failures if f["check"] in ("hurwitz", "normal_form")]
    checks = [
        {"name": "hurwitz", "count": rep.hurwitz_checks, "failures": [f for f in bad if f["check"] == "hurwitz"]},
        {"name": "normal_form_genus", "count": rep.normal_form_checks, "failures": [f for f in bad if f["check"] == "normal_form"]},
    ]
    for c in checks:
        c["passed"] = not c["failures"]
    return _result(checks, classes=rep.classes)


def suite_complement(genus: int, q: int) -> dict:
    rep = cs.verify_complement_corpus(genus, q)
    checks = [
        {
            "name": "complement",
            "count": rep.checks,
            "failures": [f for f in rep.failures if f["check"] == "complement"],
        }
    ]
    checks[0]["passed"] = not checks[0]["failures"]
    return _result(checks, classes=rep.classes)


def suite_window(genus: int, q: int) -> dict:
    rep = cs.survey_involutions(genus, q)
    counts = rep.involution_counts
    pairing = [
        {"g": g, "count": counts.get(g, 0), "complement_count": counts.get(genus - g, 0)}
        for g in sorted(counts)
        if 0 < g < genus
    ]
    checks = [
        {"name": "window", "failures": rep.window_violations, "passed": not rep.window_violations},
        {
            "name": "pairing",
            "counts": pairing,
            "passed": all(p["count"] == p["complement_count"] for p in pairing),
        },
    ]
    return _result(checks, report=rep.as_dict())


def suite_basepoints(genus: int, q: int) -> dict:
    """Base points of K + g12 (none), K + P (P), and (g-2) g12 + P + Q (P, Q)."""
    if genus < 2:
        raise SuiteError("base-point suite needs genus >= 2")
    C = split_curve(genus, q)
    K, G = canonical_divisor(C, 1), g12(C, 1)
    W = weierstrass_places(C, 1)
    one = {P: Divisor(C, 1, {P: 1}) for P in W}
    checks = []
    bp = base_points(C, K + G)
    checks.append({"name": "K+g12", "base_points": [_place(P) for P in sorted(bp)], "passed": not bp})
    for P in W:
        bp = base_points(C, K + one[P])
        checks.append({"name": f"K+{P}", "base_points": [_place(x) for x in sorted(bp)], "passed": bp == {P}})
    for P, Q in itertools.combinations(W, 2):
        bp = base_points(C, G * (genus - 2) + one[P] + one[Q])
        checks.append(
            {"name": f"(g-2)g12+{P}+{Q}", "base_points": [_place(x) for x in sorted(bp)], "passed": bp == {P, Q}}
        )
    return _result(checks, curve=str(C))


def suite_torsion(genus: int, q: int) -> dict:
    C = split_curve(genus, q)
    reps = two_torsion_classes(C, 1)
    zero = Divisor(C, 1)
    doubles = all(is_linearly_equivalent(T * 2, zero) for T in reps)
    distinct = all(not is_linearly_equivalent(S, T) for S, T in itertools.combinations(reps, 2))
    checks = [
        {"name": "count", "found": len(reps), "expected": 2 ** (2 * genus), "passed": len(reps) == 2 ** (2 * genus)},
        {"name": "two_torsion", "passed": doubles},
        {"name": "pairwise_inequivalent", "passed": distinct},
    ]
    return _result(checks, curve=str(C), classes=len(reps))


def twist_sample(genus: int, q: int, size: int = 50, seed: int = 0) -> list[list[int]]:
    """Deterministic sample of squarefree forms of full degree 2g + 2."""
    F = field(q)
    rng = random.Random(seed)
    seen, out = set(), []
    while len(out) < size:
        coeffs = tuple(rng.randrange(q) for _ in range(2 * genus + 2)) + (rng.randrange(1, q),)
        if coeffs in seen:
            continue
        seen.add(coeffs)
        if is_squarefree(Poly(F, coeffs)):
            out.append(list(coeffs))
    return out


def twist_witness(C: cv.HyperCurve, T: cv.HyperCurve) -> tuple[int, int, int, int] | None:
    """A Moebius map M over F_q with F_C o M = kappa * F_T, kappa a square."""
    F = field(C.p)
    for M in cv.pgl2(F):
        kappa = cv.proportionality(F, cv.transform_form(F, C.form, M), T.form)
        if kappa is not None and F.is_square(kappa):
            return M
    return None


def suite_uniqueness(genus: int, q: int, size: int = 50) -> dict:
    """y^2 = f and its quadratic twist become isomorphic over F_q^2.

    Over F_q itself the pair is usually distinct; a pair that is already
    isomorphic is listed with the Moebius witness (such a curve has an extra
    automorphism exchanging the two twists).  Those exceptions do not fail
    the suite.
    """
    F = field(q)
    n = F.nonresidue()
    checks, exceptions = [], []
    for coeffs in twist_sample(genus, q, size):
        C = cv.make_curve(q, coeffs)
        T = cv.make_curve(q, [F.mul(n, c) for c in coeffs])
        over_q = cv.iso_test(C, T, 1)
        over_q2 = cv.iso_test(C, T, 2)
        checks.append({"f": coeffs, "iso_k1": over_q, "iso_k2": over_q2, "passed": over_q2})
        if over_q:
            exceptions.append({"f": coeffs, "moebius": list(twist_witness(C, T))})
    return _result(checks, nonresidue=n, isomorphic_over_base=exceptions)


def suite_branch_locus(q_list=(5, 7, 11)) -> dict:
    checks = []
    for (base, r), expected in BRANCH_EXPONENTS.items():
        est = cs.branch_locus_dimension(base, r, q_list)
        checks.append(est.as_dict() | {"expected": expected, "passed": est.exponent == expected})
    return _result(checks)


def run_suite(name: str, genus: int = 2, q: int = 7, q_list=(5, 7, 11)) -> dict:
    if name == "branch-locus":
        return suite_branch_locus(q_list)
    table = {
        "hurwitz": suite_hurwitz,
        "complement": suite_complement,
        "window": suite_window,
        "basepoints": suite_basepoints,
        "torsion": suite_torsion,
        "uniqueness": suite_uniqueness,
    }
    if name not in table:
        raise SuiteError(f"unknown suite {name!r}")
    return table[name](genus, q)
