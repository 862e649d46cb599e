import itertools
import random

import pytest

from hypinv.curves import make_curve
from hypinv.divisors import (
    INF_RAMIFIED,
    Divisor,
    DivisorError,
    Place,
    base_points,
    canonical_divisor,
    fibre,
    g12,
    is_linearly_equivalent,
    linear_system,
    rational_places,
    rr_basis,
    rr_dimension,
    two_torsion_classes,
    weierstrass_places,
)
from hypinv.ff import BudgetError, field
from hypinv.linalg import rank
from hypinv.suites import split_curve

CURVES = {
    "genus3_odd": (7, [0, 6, 0, 0, 0, 0, 0, 1]),  # x^7 - x
    "genus2_odd": (11, [3, 1, 0, 5, 0, 1]),
    "genus2_even": (7, [1, 0, 1, 0, 0, 0, 1]),
    "genus2_split": (7, [0, 6, 1, 6, 1, 6, 1]),  # x (x-1) ... (x-5)
    "genus1_cubic": (5, [1, 1, 0, 1]),
    "genus1_quartic": (13, [2, 0, 3, 1, 1]),
}


def _curve(name):
    return make_curve(*CURVES[name])


def random_divisor(C, k, rng, lo=-2, hi=None):
    pts = rational_places(C, k)
    hi = 2 * C.genus + 2 if hi is None else hi
    target = rng.randint(lo, hi)
    supp = {}
    for P in rng.sample(pts, min(len(pts), rng.randint(1, 4))):
        supp[P] = rng.randint(-2, 3)
    D = Divisor(C, k, supp)
    P = rng.choice(pts)
    return D + Divisor(C, k, {P: target - D.degree})


def test_divisor_arithmetic():
    C = _curve("genus2_split")
    P, Q = rational_places(C, 1)[:2]
    D = Divisor(C, 1, {P: 2, Q: -1})
    assert D.degree == 1
    assert (D - D).support == {}
    assert (D * 3).degree == 3
    assert -(-D) == D
    assert not D.is_effective() and Divisor(C, 1, {P: 1}).is_effective()
    assert hash(D + Divisor(C, 1)) == hash(D)


def test_zero_and_canonical():
    for name in CURVES:
        C = _curve(name)
        assert rr_dimension(C, Divisor(C, 1)) == 1
        assert rr_dimension(C, canonical_divisor(C, 1)) == C.genus


@pytest.mark.parametrize("name", sorted(CURVES))
def test_riemann_roch_identity(name):
    C = _curve(name)
    rng = random.Random(name)
    K = canonical_divisor(C, 1)
    for _ in range(60):
        D = random_divisor(C, 1, rng)
        assert rr_dimension(C, D) - rr_dimension(C, K - D) == D.degree - C.genus + 1


@pytest.mark.parametrize("genus", [2, 3])
def test_weierstrass_gap_sequence(genus):
    """At a Weierstrass place the non-gaps are the even numbers and 2g onward."""
    C = split_curve(genus, 7)
    g = C.genus
    for P in (Place(INF_RAMIFIED), weierstrass_places(C, 1)[0]):
        for n in range(0, 3 * g + 2):
            nongaps = [m for m in range(n + 1) if m % 2 == 0 or m >= 2 * g]
            assert rr_dimension(C, Divisor(C, 1, {P: n})) == len(nongaps)


def test_ordinary_point_gaps():
    C = _curve("genus2_odd")
    g = C.genus
    P = next(P for P in rational_places(C, 1) if P.y != 0 and not P.is_infinite)
    for n in range(0, 3 * g + 2):
        expected = 1 if n <= g else n - g + 1
        assert rr_dimension(C, Divisor(C, 1, {P: n})) == expected


@pytest.mark.parametrize("name", ["genus2_even", "genus2_split", "genus3_odd"])
def test_principal_divisors(name):
    C = _curve(name)
    G = g12(C, 1)
    for x0 in sorted({P.x for P in rational_places(C, 1) if not P.is_infinite}):
        assert is_linearly_equivalent(fibre(C, 1, x0), G)  # div(x - x0)
    if name != "genus2_even":
        W = weierstrass_places(C, 1)
        # div(y) = sum of the Weierstrass places minus (g + 1) g12
        assert is_linearly_equivalent(Divisor(C, 1, {P: 1 for P in W}), G * (C.genus + 1))


def test_elliptic_group_law():
    """On a genus-1 curve P - O classes are distinct and the induced law is associative."""
    C = _curve("genus1_cubic")
    pts = rational_places(C, 1)
    O = Place(INF_RAMIFIED)
    one = {P: Divisor(C, 1, {P: 1}) for P in pts}
    for P, Q in itertools.combinations(pts, 2):
        assert not is_linearly_equivalent(one[P], one[Q])
    add = {}
    for P, Q in itertools.product(pts, repeat=2):
        S = [R for R in pts if is_linearly_equivalent(one[P] + one[Q], one[R] + one[O])]
        assert len(S) == 1
        add[P, Q] = S[0]
    for P, Q, R in itertools.product(pts, repeat=3):
        assert add[add[P, Q], R] == add[P, add[Q, R]]
    assert all(add[P, O] == P for P in pts)


def test_base_change_preserves_dimension():
    C = _curve("genus2_even")
    rng = random.Random(5)
    for _ in range(25):
        D = random_divisor(C, 1, rng)
        D2 = Divisor(C, 2, {Place(P.kind, P.x, P.y): n for P, n in D.support.items()})
        assert rr_dimension(C, D) == rr_dimension(C, D2)


def test_basis_has_h0_elements():
    C = _curve("genus2_odd")
    D = Divisor(C, 1, {Place(INF_RAMIFIED): 5})
    basis = rr_basis(C, D)
    assert len(basis) == rr_dimension(C, D) == 4  # 1, x, x^2, y
    F = field(C.p)
    pts = [P for P in rational_places(C, 1) if not P.is_infinite]
    values = [[F.add(a(P.x), F.mul(b(P.x), P.y)) for P in pts] for a, b, d in basis]
    assert all(d.degree == 0 for _, _, d in basis)
    # the basis functions are linearly independent as functions on the points
    assert rank(F, values, len(pts)) == 4


def test_base_points_split_genus_two():
    C = _curve("genus2_split")
    K, G = canonical_divisor(C, 1), g12(C, 1)
    W = weierstrass_places(C, 1)
    assert base_points(C, K + G) == frozenset()
    P, Q = W[0], W[1]
    assert base_points(C, K + Divisor(C, 1, {P: 1})) == {P}
    assert base_points(C, Divisor(C, 1, {P: 1, Q: 1})) == {P, Q}
    assert linear_system(C, K).h0 == 2


def test_two_torsion_counts():
    for name, k, expected in (("genus2_split", 1, 16), ("genus3_odd", 1, 64), ("genus1_cubic", 3, 4)):
        C = _curve(name)
        reps = two_torsion_classes(C, k)
        assert len(reps) == expected
        zero = Divisor(C, k)
        assert all(is_linearly_equivalent(T * 2, zero) for T in reps)


def test_two_torsion_needs_split_weierstrass():
    with pytest.raises(DivisorError):
        two_torsion_classes(_curve("genus1_cubic"), 2)


def test_errors():
    C = _curve("genus2_split")
    P, Q = rational_places(C, 1)[:2]
    with pytest.raises(DivisorError, match="degree mismatch"):
        is_linearly_equivalent(Divisor(C, 1, {P: 1}), Divisor(C, 1))
    with pytest.raises(BudgetError):
        rr_dimension(C, Divisor(C, 1, {P: 40}))
    assert rr_dimension(C, Divisor(C, 1, {P: -1})) == 0
    with pytest.raises(DivisorError):
        linear_system(C, Divisor(C, 1, {P: 1, Q: -1}))
    other = _curve("genus2_even")
    with pytest.raises(DivisorError):
        rr_dimension(other, Divisor(C, 1, {P: 1}))
