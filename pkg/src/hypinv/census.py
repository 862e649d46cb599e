"""Exhaustive censuses over small prime fields.

Isomorphism classes of curves y^2 = F(X, Z) (F a squarefree binary form of
degree n = 2g + 2) are the orbits of F -> kappa * (F o M), M in GL2(F_q),
kappa a nonzero square.  Forms are normalized to leading coefficient 1 or
the least non-residue, which absorbs kappa; the orbits of PGL2 are then
the connected components of the graph whose edges are the three generators
x -> x + 1, x -> w x (w primitive) and x -> 1/x, applied to every form at
once with numpy.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import math
import random
from collections import Counter
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import curves as cv
from .curves import CurveInvolution, HyperCurve, make_curve
from .divisors import (
    Divisor,
    g12,
    is_linearly_equivalent,
    rational_places,
)
from .ff import BudgetError, GF, Poly, field, is_prime, is_squarefree
from .linalg import nullspace
from .moduli import ramification_count

CENSUS_LIMITS = {1: 13, 2: 13, 3: 7}


class CensusError(ValueError):
    pass


def _check_budget(genus: int, q: int) -> GF:
    if not is_prime(q) or q == 2:
        raise CensusError("census fields must be odd primes")
    limit = CENSUS_LIMITS.get(genus)
    if limit is None or q > limit:
        raise BudgetError(f"census for genus {genus} over F_{q} exceeds the budget")
    return field(q)


def _primitive_root(q: int) -> int:
    F = field(q)
    order = q - 1
    fac = [p for p in range(2, order + 1) if order % p == 0 and is_prime(p)]
    return next(w for w in range(2, q) if all(pow(w, order // p, q) != 1 for p in fac))


# ---------------------------------------------------------------------------
# orbit enumeration


def _node_layout(n: int, q: int):
    """Node blocks: forms of degree n-1 and n with lead in {1, nr}."""
    offsets = {n - 1: 0, n: 2 * q ** (n - 1)}
    return offsets, 2 * q ** (n - 1) + 2 * q**n


def _node_forms(n: int, q: int, nr: int) -> np.ndarray:
    offsets, total = _node_layout(n, q)
    out = np.zeros((total, n + 1), dtype=np.int64)
    for d, off in offsets.items():
        size = q**d
        local = np.arange(size, dtype=np.int64)
        for bit, lead in enumerate((1, nr)):
            block = out[off + bit * size : off + (bit + 1) * size]
            rem = local.copy()
            for i in range(d):
                block[:, i] = rem % q
                rem //= q
            block[:, d] = lead
    return out


def _node_index(forms: np.ndarray, n: int, q: int, nr: int) -> np.ndarray:
    """Normalize rows by a square scalar and map them to node indices (-1: outside)."""
    offsets, _ = _node_layout(n, q)
    nz = forms != 0
    deg = n - np.argmax(nz[:, ::-1], axis=1)
    deg[~nz.any(axis=1)] = -1
    valid = deg >= n - 1
    rows = np.arange(len(forms))
    lead = np.where(valid, forms[rows, np.clip(deg, 0, n)], 1)
    sq = np.zeros(q, dtype=bool)
    sq[[(x * x) % q for x in range(1, q)]] = True
    kappa = np.array([0] + [pow(c, q - 2, q) * (1 if sq[c] else nr) % q for c in range(1, q)])
    normed = forms * kappa[lead][:, None] % q
    pw = q ** np.arange(n + 1, dtype=np.int64)
    dclip = np.clip(deg, n - 1, n)
    newlead = normed[rows, dclip]
    low = (normed * pw).sum(axis=1) - newlead * pw[dclip]
    bit = (newlead != 1).astype(np.int64)
    off = np.where(dclip == n, offsets[n], offsets[n - 1])
    idx = off + bit * pw[dclip] + low
    return np.where(valid, idx, -1)


def _np_subst(q: int, M: Sequence[int], n: int) -> np.ndarray:
    return np.array(cv.substitution_matrix(field(q), M, n), dtype=np.int64)


@functools.lru_cache(maxsize=16)
def class_representatives(genus: int, q: int) -> tuple[tuple[int, ...], ...]:
    """Lexicographically least form of every isomorphism class, in order.

    Forms are compared by (degree, leading coefficient, F_{n-1}, ..., F_0),
    so odd-degree models come first.  For genus 1 these are classes of
    double covers of the line, not of elliptic curves.
    """
    F = _check_budget(genus, q)
    n = 2 * genus + 2
    nr = F.nonresidue()
    forms = _node_forms(n, q, nr)
    N = len(forms)
    w = _primitive_root(q)
    src, dst = [], []
    for M in ((1, 1, 0, 1), (w, 0, 0, 1), (0, 1, 1, 0)):
        img = _node_index(forms @ _np_subst(q, M, n).T % q, n, q, nr)
        ok = img >= 0
        src.append(np.nonzero(ok)[0])
        dst.append(img[ok])
    src_a, dst_a = np.concatenate(src), np.concatenate(dst)
    graph = coo_matrix((np.ones(len(src_a), dtype=np.int8), (src_a, dst_a)), shape=(N, N)).tocsr()
    ncomp, labels = connected_components(graph, directed=False)
    first = np.full(ncomp, N, dtype=np.int64)
    np.minimum.at(first, labels, np.arange(N, dtype=np.int64))
    reps = []
    for idx in np.sort(first):
        coeffs = tuple(int(c) for c in forms[idx])
        poly = Poly(F, coeffs)
        if poly.degree >= n - 1 and is_squarefree(poly):
            reps.append(coeffs)
    return tuple(reps)


def enumerate_hyperelliptic(genus: int, q: int) -> list[HyperCurve]:
    """One curve per F_q-isomorphism class of genus-``genus`` curves y^2 = f(x)."""
    return [make_curve(q, list(c)) for c in class_representatives(genus, q)]


def count_classes_burnside(genus: int, q: int) -> int:
    """Independent orbit count by Burnside's lemma over GL2(F_q) x squares.

    The fixed forms of each group element form a linear subspace, so only
    its vectors are tested for squarefreeness.
    """
    F = _check_budget(genus, q)
    n = 2 * genus + 2
    squares = sorted({(x * x) % q for x in range(1, q)})

    @functools.lru_cache(maxsize=None)
    def good(coeffs: tuple[int, ...]) -> bool:
        poly = Poly(F, coeffs)
        return not poly.is_zero() and poly.degree >= n - 1 and is_squarefree(poly)

    total = 0
    group = 0
    for a, b, c, d in itertools.product(range(q), repeat=4):
        if (a * d - b * c) % q == 0:
            continue
        L = cv.substitution_matrix(F, (a, b, c, d), n)
        for kap in squares:
            group += 1
            rows = [[(kap * L[i][j] - (i == j)) % q for j in range(n + 1)] for i in range(n + 1)]
            basis = nullspace(F, rows, n + 1)
            for combo in itertools.product(range(q), repeat=len(basis)):
                v = [0] * (n + 1)
                for coef, vec in zip(combo, basis):
                    if coef:
                        v = [(x + coef * y) % q for x, y in zip(v, vec)]
                total += good(tuple(v))
    assert total % group == 0
    return total // group


# ---------------------------------------------------------------------------
# involution surveys


def _batch_involutions(curves_: Sequence[HyperCurve], q: int) -> list[list[CurveInvolution]]:
    """find_involutions(C, 1) for many curves of one genus, vectorized."""
    if not curves_:
        return []
    F = field(q)
    g = curves_[0].genus
    n = 2 * g + 2
    R = np.array([C.form for C in curves_], dtype=np.int64)
    first = np.argmax(R != 0, axis=1)
    rows = np.arange(len(R))
    inv_tab = np.array([0] + [pow(c, q - 2, q) for c in range(1, q)])
    out: list[dict] = [{} for _ in curves_]
    for i, C in enumerate(curves_):
        delta = CurveInvolution(C, F, (1, 0, 0, 1), F.neg(1))
        out[i][delta.key] = delta
    for M in cv.involutive_moebius(F):
        img = R @ _np_subst(q, M, n).T % q
        kappa = img[rows, first] * inv_tab[R[rows, first]] % q
        hit = np.all(img == kappa[:, None] * R % q, axis=1)
        lam = cv._square_scalar(F, M)
        target = F.pow(lam, g + 1)
        for i in np.nonzero(hit & (kappa == target))[0]:
            e = F.sqrt(int(kappa[i]))
            if e is None:
                continue
            for s in (e, F.neg(e)):
                inv = CurveInvolution(curves_[i], F, M, s)
                out[i].setdefault(inv.key, inv)
    return [[d[k] for k in sorted(d)] for d in out]


@dataclasses.dataclass
class CensusReport:
    q: int
    genus: int
    total_classes: int
    involution_distribution: dict[int, int]
    involution_counts: dict[int, int]
    window_violations: list[dict]

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "genus": self.genus,
            "total_classes": self.total_classes,
            "involution_distribution": {str(k): v for k, v in sorted(self.involution_distribution.items())},
            "involution_counts": {str(k): v for k, v in sorted(self.involution_counts.items())},
            "window_violations": self.window_violations,
        }


def _witness(C: HyperCurve, s: CurveInvolution) -> dict:
    return {"f": list(C.form), "moebius": list(s.moebius), "y_factor": s.y_factor}


def survey_involutions(genus: int, q: int) -> CensusReport:
    """Quotient genera of every F_q-rational involution on every class."""
    curves_ = enumerate_hyperelliptic(genus, q)
    classes: Counter = Counter()
    counts: Counter = Counter()
    violations = []
    for C, invs in zip(curves_, _batch_involutions(curves_, q)):
        seen = set()
        for s in invs:
            g = cv.quotient_genus(s)
            counts[g] += 1
            seen.add(g)
            if not s.is_canonical() and ramification_count(genus, g) not in (0, 2, 4):
                violations.append(_witness(C, s) | {"quotient_genus": g})
        for g in seen:
            classes[g] += 1
    return CensusReport(q, genus, len(curves_), dict(classes), dict(counts), violations)


@dataclasses.dataclass
class ComplementReport:
    q: int
    genus: int
    classes: int
    checks: int
    hurwitz_checks: int
    normal_form_checks: int
    failures: list[dict]

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return dataclasses.asdict(self) | {"passed": self.passed}


def verify_complement_corpus(genus: int, q: int) -> ComplementReport:
    """genus(delta o sigma) == pi - genus(sigma) for every non-canonical sigma.

    Alongside, each fixed-point count is checked against Riemann-Hurwitz
    and, when the explicit quotient equation is available, its genus is
    compared with the Hurwitz genus.
    """
    curves_ = enumerate_hyperelliptic(genus, q)
    checks = hurwitz = nf = 0
    failures = []
    for C, invs in zip(curves_, _batch_involutions(curves_, q)):
        delta = next(s for s in invs if s.is_canonical())
        for s in invs:
            rep = cv.fixed_points_geometric(s)
            g = cv.quotient_genus(s, rep)
            hurwitz += 1
            if rep.r != ramification_count(C.genus, g) or rep.r % 2:
                failures.append(_witness(C, s) | {"check": "hurwitz", "r": rep.r})
            quo = cv.quotient_curve_normal_form(s)
            if isinstance(quo, HyperCurve):
                nf += 1
                if quo.genus != g:
                    failures.append(_witness(C, s) | {"check": "normal_form", "genus": quo.genus, "expected": g})
            if s.is_canonical():
                continue
            checks += 1
            ds = cv.compose(delta, s)
            h = cv.quotient_genus(ds)
            if h != C.genus - g:
                failures.append(_witness(C, s) | {"check": "complement", "g": g, "complement": h})
    return ComplementReport(q, genus, len(curves_), checks, hurwitz, nf, failures)


# ---------------------------------------------------------------------------
# parameter counts


@dataclasses.dataclass(frozen=True)
class DimensionEstimate:
    family_tag: str
    pi: int
    raw: int
    group: int
    stabilizer: int
    estimated_dim: int
    q: int
    stabilizer_size: int
    sample: tuple[int, ...]
    notes: str

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


FAMILY_TAGS = ("y²=f(x²)", "y²=x·f(x²)", "y²=f(x)")
_TAG_ALIASES = {"y^2=f(x^2)": "y²=f(x²)", "y^2=x*f(x^2)": "y²=x·f(x²)", "y^2=f(x)": "y²=f(x)"}


def _sample_prime(deg: int) -> int:
    p = 2 * deg + 1
    while not is_prime(p):
        p += 1
    return p


def _family_members(tag: str, pi: int, q: int, rng: random.Random) -> Iterable[list[int]]:
    while True:
        if tag == "y²=f(x²)":
            f0 = [rng.randrange(1, q)] + [rng.randrange(q) for _ in range(pi)] + [rng.randrange(1, q)]
            coeffs = [0] * (2 * pi + 3)
            for i, c in enumerate(f0):
                coeffs[2 * i] = c
        elif tag == "y²=x·f(x²)":
            f0 = [rng.randrange(1, q)] + [rng.randrange(q) for _ in range(pi - 1)] + [rng.randrange(1, q)]
            coeffs = [0] * (2 * pi + 2)
            for i, c in enumerate(f0):
                coeffs[2 * i + 1] = c
        else:
            coeffs = [rng.randrange(q) for _ in range(2 * pi + 2)] + [rng.randrange(1, q)]
        yield coeffs


def _stabilizer_group(tag: str, F: GF) -> Iterable[tuple[int, int, int, int]]:
    if tag == "y²=f(x)":
        yield from cv.pgl2(F)
        return
    for lam in range(1, F.q):
        yield (lam, 0, 0, 1)  # x -> lam x
        yield (0, lam, 1, 0)  # x -> lam / x


def family_parameter_count(family_tag: str, pi: int, q: int | None = None, seed: int = 0) -> DimensionEstimate:
    """Parameter count raw - (group - stabilizer) for a normal-form family.

    raw counts every coefficient of f (no normalization); the group is the
    residual equivalences x -> lam x and y -> mu y (x -> 1/x is finite), or
    PGL2 and y-scaling for the unrestricted family.  The stabilizer of a
    sample member is found by brute force over F_q; a positive-dimensional
    stabilizer would have at least q - 1 rational points.
    """
    tag = _TAG_ALIASES.get(family_tag, family_tag)
    if tag not in FAMILY_TAGS:
        raise CensusError(f"unknown family tag {family_tag!r}")
    if pi < 2:
        raise CensusError("pi must be at least 2")
    deg = 2 * pi + 2
    q = q or _sample_prime(deg)
    if tag == "y²=f(x)" and q > cv.INVOLUTION_SCAN_BUDGET:
        raise BudgetError(f"PGL2(F_{q}) stabilizer scan exceeds the budget")
    F = field(q)
    if tag == "y²=f(x²)":
        raw, group, note = pi + 2, 2, "f of degree pi+1 in u = x^2, f(0) != 0; group x -> lam x, y -> mu y"
    elif tag == "y²=x·f(x²)":
        raw, group, note = pi + 1, 2, "f of degree pi, f(0) != 0; group x -> lam x, y -> mu y"
    else:
        raw, group, note = 2 * pi + 3, 4, "f of degree 2pi+2; group PGL2 and y -> mu y"
    rng = random.Random(seed)
    for coeffs in _family_members(tag, pi, q, rng):
        poly = Poly.from_ints(F, coeffs)
        if not is_squarefree(poly):
            continue
        C = make_curve(q, poly)
        if C.genus != pi:
            continue
        form = C.form
        stab = sum(
            1
            for M in _stabilizer_group(tag, F)
            if cv.proportionality(F, cv.transform_form(F, form, M), form) is not None
        )
        if stab < q - 1:
            break
    stab_dim = 0 if stab < q - 1 else 1
    return DimensionEstimate(tag, pi, raw, group, stab_dim, raw - (group - stab_dim), q, stab, tuple(coeffs), note)


# ---------------------------------------------------------------------------
# branch loci


@dataclasses.dataclass
class BranchLocusEstimate:
    base: str
    r: int
    counts: dict[int, int]
    per_q: dict[int, int]
    exponent: int | None  # None: inconclusive

    @property
    def inconclusive(self) -> bool:
        return self.exponent is None

    def as_dict(self) -> dict:
        return {
            "base": self.base,
            "r": self.r,
            "counts": {str(k): v for k, v in self.counts.items()},
            "per_q": {str(k): v for k, v in self.per_q.items()},
            "exponent": self.exponent if self.exponent is not None else "inconclusive",
        }


def _point_count(C: HyperCurve) -> int:
    return len(rational_places(C, 1))


@functools.lru_cache(maxsize=None)
def trace_zero_base(kind: str, q: int) -> HyperCurve:
    """First base curve (lexicographic search) with exactly q + 1 rational points.

    The elliptic base is y^2 = x^3 + a x + b.  The genus-2 base is an even
    sextic without rational roots, so no Weierstrass place is rational.
    """
    F = field(q)
    if kind == "elliptic":
        for b, a in itertools.product(range(q), repeat=2):
            poly = Poly.from_ints(F, [b, a, 0, 1])
            if is_squarefree(poly):
                C = make_curve(q, poly)
                if _point_count(C) == q + 1:
                    return C
    elif kind == "hyperelliptic":
        for tail in itertools.product(range(q), repeat=6):
            coeffs = list(tail) + [1]
            poly = Poly.from_ints(F, coeffs)
            if tail[0] == 0 or any(poly(x) == 0 for x in range(q)) or not is_squarefree(poly):
                continue
            C = make_curve(q, poly)
            if _point_count(C) == q + 1:
                return C
    raise CensusError(f"no trace-zero {kind} base over F_{q}")


def _count_admissible(C: HyperCurve, kind: str, r: int) -> int:
    """Ordered tuples of distinct rational places forming an admissible branch set.

    Tuples are counted on one labelled component of the incidence (the
    labelling fixed by the linear-equivalence condition), which keeps the
    leading coefficient of the point count at one.
    """
    k = 1
    pts = rational_places(C, k)
    one = {P: Divisor(C, k, {P: 1}) for P in pts}
    if kind == "elliptic" and r == 2:
        return len(pts) * (len(pts) - 1)
    if kind == "elliptic" and r == 4:
        origin = pts[-1]
        total: dict = {}
        for P, Q in itertools.combinations_with_replacement(pts, 2):
            lhs = one[P] + one[Q]
            total[P, Q] = total[Q, P] = next(
                R for R in pts if is_linearly_equivalent(lhs, one[R] + one[origin])
            )
        complement = {(P, total[P, Q]): Q for P in pts for Q in pts}
        count = 0
        for a1, a2 in itertools.permutations(pts, 2):
            s = total[a1, a2]
            for a3 in pts:
                if a3 in (a1, a2):
                    continue
                a4 = complement[a3, s]
                if a4 not in (a1, a2, a3):
                    count += 1
        return count
    G = g12(C, k)
    pairs = [(P, Q) for P, Q in itertools.permutations(pts, 2) if is_linearly_equivalent(one[P] + one[Q], G)]
    if r == 2:
        return len(pairs)
    count = 0
    for a1, a2 in pairs:
        rest = [P for P in pts if P not in (a1, a2)]
        base = one[a1] + one[a2] - G * 2
        for a3, a4 in itertools.permutations(rest, 2):
            if is_linearly_equivalent(base + one[a3] + one[a4], Divisor(C, k)):
                count += 1
    return count


def branch_locus_dimension(
    base: str | Mapping[int, HyperCurve], r: int, q_list: Sequence[int] = (5, 7, 11)
) -> BranchLocusEstimate:
    """Exponent d with (number of admissible branch sets over F_q) ~ q^d.

    ``base`` is "elliptic", "hyperelliptic" (genus 2), or a mapping q -> curve.
    The exponent round(log N / log q) must agree across every q in q_list,
    otherwise the estimate is inconclusive.
    """
    if r not in (2, 4):
        raise CensusError("r must be 2 or 4")
    if len(q_list) < 2:
        raise CensusError("at least two field sizes are required")
    counts, per_q = {}, {}
    label = base if isinstance(base, str) else "explicit"
    for q in q_list:
        if isinstance(base, str):
            C = trace_zero_base(base, q)
            kind = base
        else:
            C = base[q]
            kind = "elliptic" if C.genus == 1 else "hyperelliptic"
        n = _count_admissible(C, kind, r)
        counts[q] = n
        per_q[q] = round(math.log(n) / math.log(q)) if n > 0 else -1
    values = set(per_q.values())
    exponent = values.pop() if len(values) == 1 else None
    return BranchLocusEstimate(label, r, counts, per_q, exponent)
