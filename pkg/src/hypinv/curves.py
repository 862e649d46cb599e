"""Hyperelliptic curves y^2 = f(x) over F_p and their involutions.

A curve of genus g is handled through its binary form of degree n = 2g+2,

    F(X, Z) = Z^n f(X/Z),

so odd-degree models (a branch point at infinity) and even-degree models
share one code path.  An automorphism is a pair (M, e) with M = (a, b; c, d)
acting on (X : Z) and e scaling Y in the weighted projective model
Y^2 = F(X, Z); on affine points it reads

    (x, y) -> ((a x + b) / (c x + d),  e * y / (c x + d)^(g+1)).

It is an automorphism iff F(aX + bZ, cX + dZ) = e^2 F(X, Z).
"""

from __future__ import annotations

import dataclasses
import itertools
import warnings
from typing import Iterable, Iterator, Sequence

from .ff import GF, BudgetError, FieldError, Poly, embedding, field, is_squarefree

INVOLUTION_SCAN_BUDGET = 50  # largest q = p^k scanned over PGL2(F_q)

ONE_PLACE = "OnePlace"
TWO_PLACES = "TwoPlaces"


class CurveError(ValueError):
    pass


class InvolutionError(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class HyperCurve:
    p: int
    f: Poly
    genus: int
    infinity_model: str

    @property
    def degree(self) -> int:
        return self.f.degree

    @property
    def form(self) -> tuple[int, ...]:
        """Coefficients F_0..F_n of the binary form, F_i at X^i Z^(n-i)."""
        n = 2 * self.genus + 2
        return tuple(self.f[i] for i in range(n + 1))

    def form_over(self, fld: GF) -> tuple[int, ...]:
        table = embedding(self.p, 1, fld.k)
        return tuple(table[c] for c in self.form)

    def __str__(self) -> str:
        return f"y^2 = {self.f} over GF({self.p})"


def make_curve(p: int, f: Poly | Sequence[int]) -> HyperCurve:
    if p == 2:
        raise CurveError("characteristic 2 unsupported")
    F = field(p)
    if not isinstance(f, Poly):
        f = Poly.from_ints(F, f)
    if f.field != F:
        raise CurveError("curve polynomial must have coefficients in the prime field")
    if f.degree < 3:
        raise CurveError("deg f must be at least 3")
    if not is_squarefree(f):
        raise CurveError("singular model: f is not squarefree")
    genus = (f.degree - 1) // 2
    model = ONE_PLACE if f.degree % 2 else TWO_PLACES
    return HyperCurve(p, f, genus, model)


# ---------------------------------------------------------------------------
# binary forms


def hom_eval(F: GF, form: Sequence[int], X: int, Z: int) -> int:
    n = len(form) - 1
    if Z == 0:
        return F.mul(form[n], F.pow(X, n))
    x = F.div(X, Z)
    acc = 0
    for c in reversed(form):
        acc = F.add(F.mul(acc, x), c)
    return F.mul(acc, F.pow(Z, n))


def substitution_matrix(F: GF, M: Sequence[int], n: int) -> list[list[int]]:
    """Matrix L with (F o M)_j = sum_i L[j][i] F_i for forms of degree n."""
    a, b, c, d = M
    lin1, lin2 = Poly(F, [b, a]), Poly(F, [d, c])
    p1 = [Poly(F, [1])]
    p2 = [Poly(F, [1])]
    for _ in range(n):
        p1.append(p1[-1] * lin1)
        p2.append(p2[-1] * lin2)
    L = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        col = p1[i] * p2[n - i]
        for j, v in enumerate(col.coeffs):
            L[j][i] = v
    return L


def transform_form(F: GF, form: Sequence[int], M: Sequence[int]) -> tuple[int, ...]:
    """The form (X, Z) -> form(aX + bZ, cX + dZ)."""
    n = len(form) - 1
    a, b, c, d = M
    lin1, lin2 = Poly(F, [b, a]), Poly(F, [d, c])
    out = Poly(F, [])
    p1 = Poly(F, [1])
    pw2 = [Poly(F, [1])]
    for _ in range(n):
        pw2.append(pw2[-1] * lin2)
    for i in range(n + 1):
        if form[i]:
            out = out + p1 * pw2[n - i] * form[i]
        p1 = p1 * lin1
    return tuple(out[j] for j in range(n + 1))


def proportionality(F: GF, g: Sequence[int], h: Sequence[int]) -> int | None:
    """kappa with g == kappa * h coefficientwise, or None."""
    kappa = None
    for gi, hi in zip(g, h):
        if hi == 0:
            if gi != 0:
                return None
            continue
        r = F.div(gi, hi)
        if kappa is None:
            kappa = r
        elif r != kappa:
            return None
    return kappa


def normalize_pair(F: GF, M: Sequence[int], e: int, genus: int) -> tuple[tuple[int, ...], int]:
    """Scale M so that d == 1 (or c == 1 when d == 0), adjusting e to match."""
    a, b, c, d = M
    piv = d if d else c
    s = F.inv(piv)
    M2 = tuple(F.mul(s, v) for v in (a, b, c, d))
    return M2, F.mul(e, F.pow(s, genus + 1))


def pgl2(F: GF) -> Iterator[tuple[int, int, int, int]]:
    """Normalized representatives of PGL2(F), identity first."""
    yield (1, 0, 0, 1)
    for a, b, c in itertools.product(F.elements(), repeat=3):
        if (a, b, c) == (1, 0, 0):
            continue
        if F.sub(a, F.mul(b, c)):
            yield (a, b, c, 1)
    for a, b in itertools.product(F.elements(), repeat=2):
        if b:
            yield (a, b, 1, 0)


def involutive_moebius(F: GF) -> Iterator[tuple[int, int, int, int]]:
    """Normalized trace-zero matrices: the order-2 elements of PGL2(F)."""
    for a in F.elements():
        na = F.neg(a)
        for b in F.elements():
            # c == 1, d == -a
            if F.add(F.mul(a, a), b):
                yield (a, b, 1, na)
    one, mone = 1, F.neg(1)
    for b in F.elements():
        # c == 0, a == -1, d == 1 (same class as a == 1, d == -1)
        yield (mone, b, 0, one)


# ---------------------------------------------------------------------------
# involutions


@dataclasses.dataclass(frozen=True)
class CurveInvolution:
    host: HyperCurve
    field: GF
    moebius: tuple[int, int, int, int]
    y_factor: int

    def __post_init__(self):
        F, g = self.field, self.host.genus
        a, b, c, d = self.moebius
        det = F.sub(F.mul(a, d), F.mul(b, c))
        if det == 0:
            raise InvolutionError("singular Moebius matrix")
        M, e = normalize_pair(F, self.moebius, self.y_factor, g)
        object.__setattr__(self, "moebius", M)
        object.__setattr__(self, "y_factor", e)
        form = self.host.form_over(F)
        if transform_form(F, form, M) != tuple(F.mul(F.mul(e, e), v) for v in form):
            raise InvolutionError("substitution identity fails")
        if self.is_identity():
            raise InvolutionError("not an involution: identity map")
        lam = _square_scalar(F, M)
        if lam is None or F.mul(e, e) != F.pow(lam, g + 1):
            raise InvolutionError("composite has order > 2")

    def is_identity(self) -> bool:
        return self.moebius == (1, 0, 0, 1) and self.y_factor == 1

    def is_canonical(self) -> bool:
        return self.moebius == (1, 0, 0, 1) and self.y_factor == self.field.neg(1)

    @property
    def key(self) -> tuple[int, ...]:
        return self.moebius + (self.y_factor,)

    def apply(self, x: int, y: int) -> tuple[int, int] | None:
        """Image of an affine point, or None if it lands at infinity."""
        F = self.field
        a, b, c, d = self.moebius
        den = F.add(F.mul(c, x), d)
        if den == 0:
            return None
        nx = F.div(F.add(F.mul(a, x), b), den)
        ny = F.div(F.mul(self.y_factor, y), F.pow(den, self.host.genus + 1))
        return nx, ny

    def describe(self) -> str:
        F = self.field
        a, b, c, d = self.moebius
        return f"x -> ({a}x + {b})/({c}x + {d}), y -> {self.y_factor}*y/({c}x + {d})^{self.host.genus + 1}" + (
            f" over {F}" if F.k > 1 else ""
        )


def _square_scalar(F: GF, M: Sequence[int]) -> int | None:
    a, b, c, d = M
    m00 = F.add(F.mul(a, a), F.mul(b, c))
    m01 = F.add(F.mul(a, b), F.mul(b, d))
    m10 = F.add(F.mul(c, a), F.mul(d, c))
    m11 = F.add(F.mul(c, b), F.mul(d, d))
    if m01 or m10 or m00 != m11:
        return None
    return m00


def canonical_involution(C: HyperCurve, fld: GF | None = None) -> CurveInvolution:
    """The hyperelliptic involution (x, y) -> (x, -y)."""
    if C.genus < 2:
        warnings.warn("on a genus-1 curve the involution (x, -y) depends on the model", stacklevel=2)
    F = fld or field(C.p)
    return CurveInvolution(C, F, (1, 0, 0, 1), F.neg(1))


def _check_scan(C: HyperCurve, k: int, allow_genus1: bool) -> GF:
    if C.genus < 2 and not allow_genus1:
        raise CurveError("involution search on genus-1 hosts is disabled (allow_genus1=True to enable)")
    q = C.p**k
    if q > INVOLUTION_SCAN_BUDGET:
        raise BudgetError(f"PGL2(F_{q}) scan exceeds the budget q <= {INVOLUTION_SCAN_BUDGET}")
    return field(C.p, k)


def find_involutions(C: HyperCurve, k: int = 1, allow_genus1: bool = False) -> list[CurveInvolution]:
    """All involutions of C defined over F_{p^k}, sorted by normalized key.

    Scans the order-2 classes of PGL2(F_{p^k}); for each Moebius map that
    carries the branch form to a multiple kappa of itself with
    kappa == lambda^(g+1) (lambda = the scalar M^2), both square roots of
    kappa give an involution.  The canonical involution is always present.
    """
    F = _check_scan(C, k, allow_genus1)
    g = C.genus
    form = C.form_over(F)
    found = {}
    delta = canonical_involution(C, F) if g >= 2 else CurveInvolution(C, F, (1, 0, 0, 1), F.neg(1))
    found[delta.key] = delta
    for M in involutive_moebius(F):
        kappa = proportionality(F, transform_form(F, form, M), form)
        if kappa is None:
            continue
        lam = _square_scalar(F, M)
        if kappa != F.pow(lam, g + 1):
            continue  # order 4: the lift squares to the canonical involution
        e = F.sqrt(kappa)
        if e is None:
            continue
        for sign in (e, F.neg(e)):
            inv = CurveInvolution(C, F, M, sign)
            found.setdefault(inv.key, inv)
    return [found[key] for key in sorted(found)]


# ---------------------------------------------------------------------------
# fixed points and quotients


@dataclasses.dataclass(frozen=True)
class RamificationReport:
    """Geometric fixed places of an involution.

    ``affine_fixed`` lists (x0, places) for each fixed point x0 of the
    Moebius action (encoded in GF(p^extension_degree_used)) with the number
    of fixed places over it.  For the canonical involution every branch
    point is fixed; those are counted from the degree of the squarefree
    form and ``affine_fixed`` stays empty.
    """

    r: int
    affine_fixed: tuple[tuple[int, int], ...]
    infinity_fixed: int
    extension_degree_used: int


def _moebius_fixed_points(F: GF, M: Sequence[int]) -> list[tuple[int, int]]:
    """Fixed points (X : Z) of an order-2 Moebius map, over F (caller's field)."""
    a, b, c, d = M
    if c == 0:
        # x -> (a x + b)/d with d == -a: fixed at -b/(2a) and infinity
        x0 = F.div(F.neg(b), F.mul(F.from_int(2), a))
        return [(x0, 1), (1, 0)]
    # c x^2 + (d - a) x - b = 0
    B = F.sub(d, a)
    disc = F.add(F.mul(B, B), F.mul(F.from_int(4), F.mul(c, b)))
    s = F.sqrt(disc)
    if s is None:
        raise AssertionError("fixed points of an order-2 map lie in the quadratic extension")
    inv2c = F.inv(F.mul(F.from_int(2), c))
    roots = {F.mul(F.sub(s, B), inv2c), F.mul(F.sub(F.neg(s), B), inv2c)}
    return [(x, 1) for x in sorted(roots)]


def fixed_points_geometric(sigma: CurveInvolution) -> RamificationReport:
    C, g = sigma.host, sigma.host.genus
    if sigma.moebius == (1, 0, 0, 1):
        return RamificationReport(2 * g + 2, (), 1 if C.infinity_model == ONE_PLACE else 0, 0)
    kb = 2 * sigma.field.k
    big = field(C.p, kb)
    emb = embedding(C.p, sigma.field.k, kb)
    M = tuple(emb[v] for v in sigma.moebius)
    e = emb[sigma.y_factor]
    form = C.form_over(big)
    a, b, c, d = M
    affine, inf_fixed = [], 0
    for X, Z in _moebius_fixed_points(big, M):
        if hom_eval(big, form, X, Z) == 0:
            count = 1
        else:
            # M(X, Z) = mu (X, Z); the fibre multiplier is e * mu^-(g+1) = +-1
            mu = a if Z == 0 else big.add(big.mul(c, X), d)
            m = big.div(e, big.pow(mu, g + 1))
            assert m in (1, big.neg(1)), "fibre multiplier of an involution must be +-1"
            count = 2 if m == 1 else 0
        if Z == 0:
            inf_fixed = count
        elif count:
            affine.append((X, count))
    r = sum(n for _, n in affine) + inf_fixed
    return RamificationReport(r, tuple(affine), inf_fixed, kb)


def quotient_genus(sigma: CurveInvolution, report: RamificationReport | None = None) -> int:
    """Genus of C/sigma from Riemann-Hurwitz: 2*pi - 2 = 2(2g - 2) + r."""
    r = (report or fixed_points_geometric(sigma)).r
    num = 2 * sigma.host.genus + 2 - r
    if num % 4 or num < 0:
        raise InvolutionError("inconsistent fixed-point count")
    return num // 4


@dataclasses.dataclass(frozen=True)
class Unsupported:
    reason: str


def quotient_curve_normal_form(sigma: CurveInvolution) -> HyperCurve | Unsupported:
    """Explicit equation of C/sigma when sigma is conjugate to x -> -x over F_p.

    After moving the two Moebius fixed points to 0 and infinity the curve
    reads y^2 = f0(x^2).  If sigma fixes y there, the quotient is
    v^2 = f0(u); if it negates y, the invariant w = x y gives w^2 = u f0(u).
    """
    C, F, g = sigma.host, sigma.field, sigma.host.genus
    if sigma.moebius == (1, 0, 0, 1):
        return Unsupported("canonical involution: the quotient is the projective line")
    if F.k != 1:
        return Unsupported("involution not defined over the prime field")
    a, b, c, d = sigma.moebius
    lam = _square_scalar(F, sigma.moebius)
    if c != 0 and not F.is_square(lam):
        return Unsupported("Moebius fixed points are not rational")
    (x1, _), (x2, z2) = _moebius_fixed_points(F, sigma.moebius)
    N = (x2, x1, 1, 1) if z2 else (1, x1, 0, 1)
    new = transform_form(F, C.form, N)
    if any(new[i] for i in range(1, len(new), 2)):
        raise AssertionError("conjugated form is not even")
    mu = F.add(F.mul(c, x1), d)
    eps = F.div(sigma.y_factor, F.pow(mu, g + 1))
    f0 = [new[i] for i in range(0, len(new), 2)]
    if eps == 1:
        return make_curve(C.p, Poly(F, f0))
    return make_curve(C.p, Poly(F, [0] + f0))


def compose(sigma: CurveInvolution, tau: CurveInvolution) -> CurveInvolution:
    """The automorphism sigma o tau, checked to be an involution."""
    if sigma.host != tau.host:
        raise InvolutionError("involutions live on different curves")
    F = sigma.field if sigma.field.k >= tau.field.k else tau.field
    lift_s = embedding(F.p, sigma.field.k, F.k)
    lift_t = embedding(F.p, tau.field.k, F.k)
    a1, b1, c1, d1 = (lift_s[v] for v in sigma.moebius)
    a2, b2, c2, d2 = (lift_t[v] for v in tau.moebius)
    M = (
        F.add(F.mul(a1, a2), F.mul(b1, c2)),
        F.add(F.mul(a1, b2), F.mul(b1, d2)),
        F.add(F.mul(c1, a2), F.mul(d1, c2)),
        F.add(F.mul(c1, b2), F.mul(d1, d2)),
    )
    e = F.mul(lift_s[sigma.y_factor], lift_t[tau.y_factor])
    return CurveInvolution(sigma.host, F, M, e)


def iso_test(C1: HyperCurve, C2: HyperCurve, k: int = 1) -> bool:
    """Whether y^2 = f1 and y^2 = f2 are isomorphic over F_{p^k}.

    Searches M in PGL2(F_{p^k}) with F1 o M = kappa * F2 and kappa a square.
    Sample-point evaluation rejects most candidates before the full check.
    """
    if C1.p != C2.p:
        raise CurveError("curves over different fields")
    if C1.genus != C2.genus:
        return False
    q = C1.p**k
    if q > INVOLUTION_SCAN_BUDGET:
        raise BudgetError(f"PGL2(F_{q}) scan exceeds the budget q <= {INVOLUTION_SCAN_BUDGET}")
    F = field(C1.p, k)
    f1, f2 = C1.form_over(F), C2.form_over(F)
    samples = [(x, 1) for x in F.elements()] + [(1, 0)]
    targets = [(X, Z, hom_eval(F, f2, X, Z)) for X, Z in samples]
    for M in pgl2(F):
        a, b, c, d = M
        kappa = None
        ok = True
        for X, Z, t in targets:
            v = hom_eval(F, f1, F.add(F.mul(a, X), F.mul(b, Z)), F.add(F.mul(c, X), F.mul(d, Z)))
            if t == 0:
                if v:
                    ok = False
                    break
                continue
            r = F.div(v, t)
            if kappa is None:
                kappa = r
            elif r != kappa:
                ok = False
                break
        if not ok or (kappa is not None and not F.is_square(kappa)):
            continue
        exact = proportionality(F, transform_form(F, f1, M), f2)
        # kappa stays None when every sample point is a branch point
        if exact is not None and exact == (kappa if kappa is not None else exact) and F.is_square(exact):
            return True
    return False


def parse_coefficients(text: str) -> list[int]:
    """Parse '1,0,1' (constant term first) into integers."""
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError as exc:
        raise CurveError(f"bad coefficient list {text!r}") from exc


def involution_orbit_closed(invs: Iterable[CurveInvolution]) -> bool:
    """True if the set is closed under composition with the canonical involution."""
    invs = list(invs)
    keys = {s.key for s in invs}
    for s in invs:
        if s.is_canonical():
            continue
        delta = CurveInvolution(s.host, s.field, (1, 0, 0, 1), s.field.neg(1))
        if compose(delta, s).key not in keys:
            return False
    return True
