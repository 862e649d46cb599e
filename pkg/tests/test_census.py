import random

import pytest

from hypinv import census as cs
from hypinv import curves as cv
from hypinv.ff import BudgetError, Poly, field, is_squarefree


@pytest.mark.parametrize("genus,q", [(1, 5), (1, 7), (2, 3), (2, 5)])
def test_class_count_matches_burnside(genus, q):
    assert len(cs.class_representatives(genus, q)) == cs.count_classes_burnside(genus, q)


def test_genus_one_shape():
    curves_ = cs.enumerate_hyperelliptic(1, 5)
    assert curves_ and all(C.genus == 1 for C in curves_)


def test_genus_two_shape_and_order():
    reps = cs.class_representatives(2, 5)
    F = field(5)
    for r in reps:
        f = Poly(F, r)
        assert f.degree in (5, 6) and is_squarefree(f)
        assert f.lead() in (1, F.nonresidue())
    keys = [(Poly(F, r).degree, Poly(F, r).lead(), r[::-1]) for r in reps]
    assert keys == sorted(keys)


def test_representative_is_least_in_its_class():
    """No scalar multiple of a transform of a rep sorts before it."""
    q = 5
    F = field(q)
    reps = cs.class_representatives(2, q)
    rng = random.Random(1)
    group = list(cv.pgl2(F))
    for r in rng.sample(reps, 10):
        key = (Poly(F, r).degree, Poly(F, r).lead(), r[::-1])
        for M in group:
            img = cv.transform_form(F, r, M)
            for kappa in (1, 4):
                g = tuple(F.mul(kappa, v) for v in img)
                p = Poly(F, g)
                if p.lead() in (1, F.nonresidue()):
                    assert (p.degree, p.lead(), g[::-1]) >= key


def test_budget_and_field_errors():
    with pytest.raises(BudgetError):
        cs.enumerate_hyperelliptic(3, 11)
    with pytest.raises(BudgetError):
        cs.enumerate_hyperelliptic(4, 3)
    with pytest.raises(cs.CensusError):
        cs.enumerate_hyperelliptic(2, 9)


def test_batched_search_matches_find_involutions():
    q = 7
    curves_ = cs.enumerate_hyperelliptic(2, q)
    batch = cs._batch_involutions(curves_, q)
    rng = random.Random(0)
    for i in rng.sample(range(len(curves_)), 60):
        want = [(s.moebius, s.y_factor) for s in cv.find_involutions(curves_[i])]
        assert [(s.moebius, s.y_factor) for s in batch[i]] == want


def test_survey_genus_two():
    rep = cs.survey_involutions(2, 7)
    assert rep.window_violations == []
    assert set(rep.involution_distribution) == {0, 1}
    assert rep.involution_distribution[0] == rep.total_classes


def test_survey_genus_three():
    rep = cs.survey_involutions(3, 5)
    assert rep.window_violations == []
    assert set(rep.involution_distribution) == {0, 1, 2}
    counts = rep.involution_counts
    assert counts[1] == counts[2]
    assert rep.involution_distribution[1] == rep.involution_distribution[2]


def test_survey_is_deterministic():
    assert cs.survey_involutions(2, 5).as_dict() == cs.survey_involutions(2, 5).as_dict()


def test_complement_corpus_accounting():
    rep = cs.verify_complement_corpus(2, 5)
    survey = cs.survey_involutions(2, 5)
    assert rep.passed
    assert rep.checks == sum(n for g, n in survey.involution_counts.items() if g > 0)
    assert rep.hurwitz_checks == rep.checks + rep.classes


def test_complement_corpus_genus_two_q11():
    rep = cs.verify_complement_corpus(2, 11)
    assert rep.passed and rep.checks > 0


@pytest.mark.parametrize("pi", [2, 3, 4, 5])
def test_even_family_parameter_count(pi):
    est = cs.family_parameter_count("y²=f(x²)", pi)
    assert (est.raw, est.group, est.stabilizer) == (pi + 2, 2, 0)
    assert est.estimated_dim == pi == est.raw - (est.group - est.stabilizer)
    assert est.stabilizer_size < est.q - 1


def test_ascii_tag_alias():
    assert cs.family_parameter_count("y^2=f(x^2)", 3).estimated_dim == 3


@pytest.mark.parametrize("pi", [2, 3, 4, 5])
def test_odd_normal_form_family_count(pi):
    est = cs.family_parameter_count("y²=x·f(x²)", pi)
    assert est.estimated_dim == pi - 1


@pytest.mark.parametrize("pi", [2, 3, 4, 5])
def test_odd_normal_form_carries_no_involution(pi):
    """x -> -x multiplies the form by -1, so its lifts have order four."""
    est = cs.family_parameter_count("y²=x·f(x²)", pi)
    C = cv.make_curve(est.q, list(est.sample))
    F = field(est.q)
    kappa = cv.proportionality(F, cv.transform_form(F, C.form, (F.neg(1), 0, 0, 1)), C.form)
    assert kappa == F.neg(1)  # F(-X, Z) = -F(X, Z)
    # an involution needs kappa == lambda^(pi+1) with lambda = 1
    assert kappa != 1


def test_general_family_parameter_count():
    est = cs.family_parameter_count("y²=f(x)", 2)
    assert est.estimated_dim == 2 * 2 - 1


def test_unknown_family():
    with pytest.raises(cs.CensusError):
        cs.family_parameter_count("y²=x³", 3)


@pytest.mark.parametrize("q", [5, 7, 11])
def test_trace_zero_bases(q):
    E = cs.trace_zero_base("elliptic", q)
    H = cs.trace_zero_base("hyperelliptic", q)
    assert E.genus == 1 and H.genus == 2
    assert cs._point_count(E) == cs._point_count(H) == q + 1


def _brute_points(C):
    F = field(C.p)
    n = sum(1 for x in F.elements() for y in F.elements() if F.mul(y, y) == C.f(x))
    if C.degree % 2:
        return n + 1
    return n + (2 if F.is_square(C.f.lead()) else 0)


@pytest.mark.parametrize("q", [5, 7, 11])
def test_point_count_brute_force(q):
    for kind in ("elliptic", "hyperelliptic"):
        C = cs.trace_zero_base(kind, q)
        assert _brute_points(C) == q + 1


@pytest.mark.parametrize(
    "base,r,expected", [("hyperelliptic", 4, 2), ("elliptic", 4, 3), ("hyperelliptic", 2, 1), ("elliptic", 2, 2)]
)
def test_branch_locus_exponent(base, r, expected):
    est = cs.branch_locus_dimension(base, r, (5, 7, 11))
    assert est.exponent == expected


def test_branch_locus_closed_counts():
    """With m = q + 1 rational non-Weierstrass places the counts are exact polynomials."""
    est = cs.branch_locus_dimension("hyperelliptic", 4, (5, 7))
    assert est.counts == {5: 6 * 4, 7: 8 * 6}
    est = cs.branch_locus_dimension("elliptic", 2, (5, 7))
    assert est.counts == {5: 6 * 5, 7: 8 * 7}


def test_branch_locus_inconclusive_is_a_value():
    poor = cv.make_curve(7, [3, 0, 0, 1, 0, 0, 1])  # two rational places
    bases = {5: cs.trace_zero_base("hyperelliptic", 5), 7: poor}
    est = cs.branch_locus_dimension(bases, 2, (5, 7))
    assert est.inconclusive
    assert est.as_dict()["exponent"] == "inconclusive"


def test_branch_locus_argument_errors():
    with pytest.raises(cs.CensusError):
        cs.branch_locus_dimension("elliptic", 3)
    with pytest.raises(cs.CensusError):
        cs.branch_locus_dimension("elliptic", 2, (5,))
