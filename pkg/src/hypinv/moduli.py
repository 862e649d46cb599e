"""Closed-form dimensions of families of curves with an involution.

pi is the genus of the covering curve C, g the genus of the quotient X and
r = 2(pi - 1) - 4(g - 1) the number of ramification points of C -> X.
Empty families are ordinary return values, never exceptions.
"""

from __future__ import annotations

import dataclasses
import enum


class BaseKind(str, enum.Enum):
    ANY = "any"
    ELLIPTIC = "elliptic"
    HYPERELLIPTIC = "hyperelliptic"
    NONHYPERELLIPTIC = "nonhyperelliptic"
    GENERIC = "generic"


class QueryError(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class FamilyQuery:
    pi: int
    g: int
    base_kind: BaseKind = BaseKind.ANY

    def __post_init__(self):
        if self.pi < 2:
            raise QueryError("pi must be at least 2")
        if self.g < 0:
            raise QueryError("g must be non-negative")


@dataclasses.dataclass(frozen=True)
class FamilyDim:
    dim: int | None  # None means the family is empty
    r: int
    case_label: str

    @property
    def empty(self) -> bool:
        return self.dim is None

    @property
    def status(self) -> str:
        return "empty" if self.dim is None else "dim"

    def as_dict(self) -> dict:
        return {"status": self.status, "dim": self.dim, "r": self.r, "case": self.case_label}


@dataclasses.dataclass(frozen=True)
class BranchForm:
    case: str  # TwoG12 | FourPointsPaired | OneG12 | TwoPointsFree | Unramified
    b_form: str  # KplusG12 | KplusP | SumG12plusPQ
    expected_base_points: int


def _check(pi: int, g: int) -> None:
    if pi < 2:
        raise QueryError("pi must be at least 2")
    if g < 0:
        raise QueryError("g must be non-negative")


def ramification_count(pi: int, g: int) -> int:
    return 2 * (pi - 1) - 4 * (g - 1)


def aut_dim(g: int) -> int:
    """Dimension of the automorphism group of a genus-g curve."""
    if g < 0:
        raise QueryError("g must be non-negative")
    return 3 if g == 0 else (1 if g == 1 else 0)


def moduli_dim(g: int) -> int:
    if g < 0:
        raise QueryError("g must be non-negative")
    return 0 if g == 0 else (1 if g == 1 else 3 * (g - 1))


def hyperelliptic_locus_dim(g: int) -> int:
    """Dimension of the hyperelliptic locus in M_g, g >= 1 (M_1 itself for g = 1)."""
    if g < 1:
        raise QueryError("g must be positive")
    return 2 * g - 1


def in_window(pi: int, g: int) -> bool:
    return ramification_count(pi, g) in (0, 2, 4)


def dim_fixed_base(pi: int, g: int) -> FamilyDim:
    """Curves of genus pi with an involution over one fixed X of genus g > 0."""
    _check(pi, g)
    if g == 0:
        raise QueryError("fixed-base proposition requires g > 0")
    r = ramification_count(pi, g)
    if r < 0:
        return FamilyDim(None, r, "r<0")
    if r == 0:
        assert g != 1, "r = 0 with g = 1 forces pi = 1"
        return FamilyDim(0, r, "r=0")
    return FamilyDim(r - aut_dim(g), r, "r>0")


def dim_family(pi: int, g: int) -> FamilyDim:
    """dim C_pi^g, the curves of genus pi with an involution of genus g."""
    _check(pi, g)
    r = ramification_count(pi, g)
    if r < 0:
        return FamilyDim(None, r, "r<0")
    if r == 0:
        assert g not in (0, 1)
        built, label = moduli_dim(g), "r=0"
    else:
        built, label = r - aut_dim(g) + moduli_dim(g), "r>0"
    closed = 2 * pi - g - 1
    assert built == closed, (pi, g, built, closed)
    return FamilyDim(closed, r, label)


def dim_family_hyperelliptic_base(pi: int, g: int) -> FamilyDim:
    """Curves of genus pi with an involution over some hyperelliptic X of genus g."""
    _check(pi, g)
    if g < 2:
        raise QueryError("hyperelliptic base needs g >= 2 (use dim_family for elliptic bases)")
    r = ramification_count(pi, g)
    if r < 0:
        return FamilyDim(None, r, "r<0")
    fixed = dim_fixed_base(pi, g).dim
    closed = 2 * pi - 2 * g + 1
    assert fixed + hyperelliptic_locus_dim(g) == closed
    return FamilyDim(closed, r, "r>0" if r else "r=0")


def _resolve_kind(g: int, kind: BaseKind | str) -> BaseKind:
    kind = BaseKind(kind)
    if kind in (BaseKind.ANY, BaseKind.GENERIC):
        if g == 1:
            return BaseKind.ELLIPTIC
        return BaseKind.HYPERELLIPTIC if g == 2 else BaseKind.NONHYPERELLIPTIC
    if kind == BaseKind.ELLIPTIC and g != 1:
        raise QueryError("an elliptic base has g = 1")
    if kind == BaseKind.HYPERELLIPTIC and g < 2:
        raise QueryError("a hyperelliptic base has g >= 2")
    if kind == BaseKind.NONHYPERELLIPTIC and g < 3:
        raise QueryError("non-hyperelliptic curves have g >= 3")
    return kind


# dim Im(q_h): the branch loci admissible for a hyperelliptic cover
_IMAGE_DIM = {
    (BaseKind.HYPERELLIPTIC, 4): 2,
    (BaseKind.ELLIPTIC, 4): 3,
    (BaseKind.HYPERELLIPTIC, 2): 1,
    (BaseKind.ELLIPTIC, 2): 2,
}


def branch_image_dim(g: int, base_kind: BaseKind | str) -> dict[int, int]:
    kind = _resolve_kind(g, base_kind)
    return {r: d for (k, r), d in _IMAGE_DIM.items() if k == kind}


def dim_hyp_fixed_base(pi: int, g: int, base_kind: BaseKind | str = BaseKind.ANY) -> FamilyDim:
    """Hyperelliptic curves of genus pi with an involution over a fixed X."""
    _check(pi, g)
    if g == 0:
        raise QueryError("fixed-base proposition requires g > 0")
    kind = _resolve_kind(g, base_kind)
    r = ramification_count(pi, g)
    if kind == BaseKind.NONHYPERELLIPTIC:
        return FamilyDim(None, r, "base neither elliptic nor hyperelliptic")
    if r not in (0, 2, 4):
        return FamilyDim(None, r, "outside hyperelliptic window")
    if r == 0:
        return FamilyDim(0, r, "hyperelliptic window r=0")
    d = _IMAGE_DIM[(kind, r)] - aut_dim(g)
    assert d == {4: 2, 2: 1}[r]
    return FamilyDim(d, r, f"hyperelliptic window r={r}")


def dim_hyp_family(pi: int, g: int) -> FamilyDim:
    """dim Ch_pi^g, the hyperelliptic curves of genus pi with an involution of genus g."""
    _check(pi, g)
    r = ramification_count(pi, g)
    if r not in (0, 2, 4):
        return FamilyDim(None, r, "outside hyperelliptic window")
    fixed = dim_hyp_fixed_base(pi, g, BaseKind.ELLIPTIC if g == 1 else BaseKind.HYPERELLIPTIC).dim
    assert fixed + hyperelliptic_locus_dim(g) == pi
    return FamilyDim(pi, r, f"hyperelliptic window r={r}")


def complement_genus(pi: int, g: int) -> int:
    """Genus of delta o sigma when sigma has genus g on a hyperelliptic curve."""
    _check(pi, g)
    if g < 1 or not in_window(pi, g):
        raise QueryError(f"(pi={pi}, g={g}) is outside the hyperelliptic window")
    h = pi - g
    assert dim_hyp_family(pi, g).dim == dim_hyp_family(pi, h).dim == pi
    return h


def branch_form(pi: int, g: int, base_kind: BaseKind | str = BaseKind.ANY) -> BranchForm:
    _check(pi, g)
    if g < 1 or not in_window(pi, g):
        raise QueryError(f"(pi={pi}, g={g}) is outside the hyperelliptic window")
    kind = _resolve_kind(g, base_kind)
    if kind == BaseKind.NONHYPERELLIPTIC:
        raise QueryError("no hyperelliptic cover of a non-hyperelliptic base")
    r = ramification_count(pi, g)
    case = {
        (BaseKind.HYPERELLIPTIC, 4): "TwoG12",
        (BaseKind.ELLIPTIC, 4): "FourPointsPaired",
        (BaseKind.HYPERELLIPTIC, 2): "OneG12",
        (BaseKind.ELLIPTIC, 2): "TwoPointsFree",
        (BaseKind.HYPERELLIPTIC, 0): "Unramified",
    }[(kind, r)]
    b_form, nbase = {4: ("KplusG12", 0), 2: ("KplusP", 1), 0: ("SumG12plusPQ", 2)}[r]
    return BranchForm(case, b_form, nbase)
