import pytest

from hypinv import moduli as md
from hypinv.moduli import BaseKind


def test_ramification_from_hurwitz():
    # 2 pi - 2 = 2 (2 g - 2) + r
    for pi in range(2, 30):
        for g in range(0, 20):
            assert 2 * pi - 2 == 2 * (2 * g - 2) + md.ramification_count(pi, g)


@pytest.mark.parametrize(
    "g,aut,mod,hyp", [(0, 3, 0, None), (1, 1, 1, 1), (2, 0, 3, 3), (3, 0, 6, 5), (10, 0, 27, 19)]
)
def test_classical_dimensions(g, aut, mod, hyp):
    assert md.aut_dim(g) == aut
    assert md.moduli_dim(g) == mod
    if hyp is not None:
        assert md.hyperelliptic_locus_dim(g) == hyp


def test_family_dimension_grid():
    for pi in range(2, 41):
        for g in range(0, 21):
            r = 2 * (pi - 1) - 4 * (g - 1)
            fam = md.dim_family(pi, g)
            assert fam.r == r
            assert fam.dim == (2 * pi - g - 1 if r >= 0 else None)
            ch = md.dim_hyp_family(pi, g)
            assert ch.dim == (pi if r in (0, 2, 4) else None)
            if g >= 2:
                hb = md.dim_family_hyperelliptic_base(pi, g)
                assert hb.dim == (2 * pi - 2 * g + 1 if r >= 0 else None)


@pytest.mark.parametrize(
    "pi,g,dim",
    [(4, 1, 5), (2, 1, 1), (5, 2, 4), (3, 2, 0), (2, 3, None), (6, 2, 6)],
)
def test_fixed_base(pi, g, dim):
    assert md.dim_fixed_base(pi, g).dim == dim


def test_fixed_base_requires_positive_genus():
    with pytest.raises(md.QueryError):
        md.dim_fixed_base(3, 0)


@pytest.mark.parametrize(
    "pi,g,kind,dim",
    [
        (5, 2, "hyperelliptic", 2),
        (4, 2, "hyperelliptic", 1),
        (3, 2, "hyperelliptic", 0),
        (3, 1, "elliptic", 2),
        (2, 1, "elliptic", 1),
        (7, 3, "hyperelliptic", 2),
        (6, 3, "nonhyperelliptic", None),
        (9, 3, "hyperelliptic", None),
    ],
)
def test_hyperelliptic_fixed_base(pi, g, kind, dim):
    assert md.dim_hyp_fixed_base(pi, g, kind).dim == dim


def test_branch_image_dims():
    assert md.branch_image_dim(2, BaseKind.HYPERELLIPTIC) == {4: 2, 2: 1}
    assert md.branch_image_dim(1, "elliptic") == {4: 3, 2: 2}
    assert md.branch_image_dim(4, "nonhyperelliptic") == {}


def test_kind_validation():
    with pytest.raises(md.QueryError):
        md.dim_hyp_fixed_base(3, 2, "elliptic")
    with pytest.raises(md.QueryError):
        md.dim_hyp_fixed_base(3, 1, "hyperelliptic")
    with pytest.raises(md.QueryError):
        md.dim_hyp_fixed_base(5, 2, "nonhyperelliptic")
    with pytest.raises(ValueError):
        md.dim_hyp_fixed_base(5, 2, "bogus")


@pytest.mark.parametrize("pi,g", [(1, 0), (2, -1)])
def test_query_validation(pi, g):
    with pytest.raises(md.QueryError):
        md.FamilyQuery(pi, g)
    with pytest.raises(md.QueryError):
        md.dim_family(pi, g)


def test_window():
    for pi in range(2, 30):
        for g in range(1, 20):
            assert md.in_window(pi, g) == (pi in (2 * g - 1, 2 * g, 2 * g + 1))


def test_complement_genus():
    assert md.complement_genus(5, 2) == 3
    assert md.complement_genus(3, 1) == 2
    assert md.complement_genus(2, 1) == 1
    for pi in range(2, 30):
        for g in range(1, pi):
            if md.in_window(pi, g):
                h = md.complement_genus(pi, g)
                assert md.in_window(pi, h) and md.complement_genus(pi, h) == g
    with pytest.raises(md.QueryError):
        md.complement_genus(6, 1)


@pytest.mark.parametrize(
    "pi,g,kind,case,form,nbase",
    [
        (5, 2, "any", "TwoG12", "KplusG12", 0),
        (4, 2, "any", "OneG12", "KplusP", 1),
        (3, 2, "any", "Unramified", "SumG12plusPQ", 2),
        (3, 1, "any", "FourPointsPaired", "KplusG12", 0),
        (2, 1, "any", "TwoPointsFree", "KplusP", 1),
    ],
)
def test_branch_form(pi, g, kind, case, form, nbase):
    bf = md.branch_form(pi, g, kind)
    assert (bf.case, bf.b_form, bf.expected_base_points) == (case, form, nbase)


def test_empty_is_value():
    fd = md.dim_family(2, 3)
    assert fd.empty and fd.status == "empty" and fd.as_dict()["dim"] is None
