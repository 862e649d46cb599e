"""Divisors, Riemann-Roch spaces and 2-torsion on y^2 = f(x).

Every function in L(D) has the shape (a(x) + b(x) y) / d(x) where d is
fixed by the affine x-support of D; the coefficients of a and b are the
unknowns of a linear system whose rows are the Laurent coefficients of the
numerator at each place where a pole must be cancelled or a zero forced.
All places live over one field GF(p^k) chosen by the caller.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
from typing import Iterable, Mapping

from .curves import ONE_PLACE, HyperCurve
from .ff import GF, BudgetError, Poly, embedding, field
from .linalg import nullspace, rank

RR_FIELD_BUDGET = 10**4

AFFINE = "Affine"
INF_PLUS = "InfinityPlus"
INF_MINUS = "InfinityMinus"
INF_RAMIFIED = "InfinityRamified"


class DivisorError(ValueError):
    pass


@dataclasses.dataclass(frozen=True, order=True)
class Place:
    kind: str
    x: int = 0
    y: int = 0

    def __str__(self) -> str:
        if self.kind == AFFINE:
            return f"({self.x},{self.y})"
        return {INF_PLUS: "inf+", INF_MINUS: "inf-", INF_RAMIFIED: "inf"}[self.kind]

    @property
    def is_infinite(self) -> bool:
        return self.kind != AFFINE


class Divisor:
    """Formal sum of places of ``curve`` over GF(p^k)."""

    __slots__ = ("curve", "k", "support")

    def __init__(self, curve: HyperCurve, k: int, support: Mapping[Place, int] | Iterable[tuple[Place, int]] = ()):
        items: dict[Place, int] = {}
        pairs = support.items() if isinstance(support, Mapping) else support
        for P, n in pairs:
            items[P] = items.get(P, 0) + n
        self.curve = curve
        self.k = k
        self.support = {P: n for P, n in sorted(items.items()) if n}

    @property
    def degree(self) -> int:
        return sum(self.support.values())

    def _check(self, other: "Divisor") -> None:
        if self.curve != other.curve or self.k != other.k:
            raise DivisorError("divisors on different curves or fields")

    def __add__(self, other: "Divisor") -> "Divisor":
        self._check(other)
        return Divisor(self.curve, self.k, itertools.chain(self.support.items(), other.support.items()))

    def __neg__(self) -> "Divisor":
        return Divisor(self.curve, self.k, {P: -n for P, n in self.support.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, m: int) -> "Divisor":
        return Divisor(self.curve, self.k, {P: m * n for P, n in self.support.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Divisor)
            and (self.curve, self.k) == (other.curve, other.k)
            and self.support == other.support
        )

    def __hash__(self) -> int:
        return hash((self.curve, self.k, tuple(self.support.items())))

    def is_effective(self) -> bool:
        return all(n > 0 for n in self.support.values())

    def __repr__(self) -> str:
        if not self.support:
            return "0"
        return " + ".join(f"{n}*{P}" if n != 1 else str(P) for P, n in self.support.items())


@dataclasses.dataclass(frozen=True)
class LinearSystemReport:
    h0: int
    base_points: frozenset


# ---------------------------------------------------------------------------
# Laurent series in a local parameter


class Laurent:
    """sum c[i] t^(val + i), known for exponents < prec (None: exact)."""

    __slots__ = ("F", "val", "c", "prec")

    def __init__(self, F: GF, val: int, c: list[int], prec: int | None):
        if prec is not None:
            c = c[: max(0, prec - val)]
        self.F, self.val, self.c, self.prec = F, val, c, prec

    def __mul__(self, other: "Laurent") -> "Laurent":
        F = self.F
        val = self.val + other.val
        cands = []
        if self.prec is not None:
            cands.append(self.prec + other.val)
        if other.prec is not None:
            cands.append(other.prec + self.val)
        prec = min(cands) if cands else None
        n = len(self.c) + len(other.c) - 1
        if prec is not None:
            n = min(n, prec - val)
        out = [0] * max(n, 0)
        for i, a in enumerate(self.c):
            if a == 0 or i >= n:
                continue
            for j, b in enumerate(other.c):
                if i + j >= n:
                    break
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Laurent(F, val, out, prec)

    def coeff(self, e: int) -> int:
        if self.prec is not None and e >= self.prec:
            raise ValueError("coefficient beyond known precision")
        i = e - self.val
        return self.c[i] if 0 <= i < len(self.c) else 0


def _series_sqrt(F: GF, phi: list[int], root0: int, n: int) -> list[int]:
    """Power series s with s^2 = phi, s(0) = root0, to n terms."""
    s = [root0] + [0] * (n - 1)
    inv2r = F.inv(F.mul(F.from_int(2), root0))
    for m in range(1, n):
        acc = phi[m] if m < len(phi) else 0
        for i in range(1, m):
            acc = F.sub(acc, F.mul(s[i], s[m - i]))
        s[m] = F.mul(acc, inv2r)
    return s


def _series_inverse(F: GF, w: list[int], n: int) -> list[int]:
    inv0 = F.inv(w[0])
    out = [inv0] + [0] * (n - 1)
    for m in range(1, n):
        acc = 0
        for i in range(1, min(m, len(w) - 1) + 1):
            acc = F.add(acc, F.mul(w[i], out[m - i]))
        out[m] = F.neg(F.mul(acc, inv0))
    return out


def _series_mul(F: GF, a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * n
    for i, ai in enumerate(a[:n]):
        if ai:
            for j, bj in enumerate(b[: n - i]):
                if bj:
                    out[i + j] = F.add(out[i + j], F.mul(ai, bj))
    return out


def _poly_series(F: GF, h: list[int], u: list[int], n: int) -> list[int]:
    """h(u(t)) truncated to n terms, u(0) == 0."""
    acc = [0] * n
    for c in reversed(h):
        acc = _series_mul(F, acc, u, n)
        acc[0] = F.add(acc[0], c)
    return acc


def _branch_param(F: GF, h: list[int], n: int) -> list[int]:
    """u(t) with t^2 = u * h(u), u(0) = 0, to n terms (h(0) != 0)."""
    u = [0] * n
    t2 = [0] * n
    if n > 2:
        t2[2] = 1
    for _ in range(n // 2 + 2):
        u = _series_mul(F, t2, _series_inverse(F, _poly_series(F, h, u, n), n), n)
    return u


class RRContext:
    """A curve base-changed to GF(p^k), with place expansions cached."""

    def __init__(self, curve: HyperCurve, k: int):
        if curve.p**k > RR_FIELD_BUDGET:
            raise BudgetError(f"GF({curve.p}^{k}) exceeds the Riemann-Roch field budget {RR_FIELD_BUDGET}")
        self.curve, self.k = curve, k
        self.F = F = field(curve.p, k)
        self.f = curve.f.lift(F)
        self.g = curve.genus
        self.odd = curve.infinity_model == ONE_PLACE
        self.s0 = None if self.odd else F.sqrt(self.f.lead())
        self._cache: dict = {}

    def check_place(self, P: Place) -> None:
        F = self.F
        if P.kind == AFFINE:
            if F.mul(P.y, P.y) != self.f(P.x):
                raise DivisorError(f"{P} is not on the curve")
        elif P.kind == INF_RAMIFIED:
            if not self.odd:
                raise DivisorError("InfinityRamified only exists on odd-degree models")
        else:
            if self.odd:
                raise DivisorError("InfinityPlus/Minus only exist on even-degree models")
            if self.s0 is None:
                raise DivisorError("incomplete place data: infinity places are not rational over this field")

    def expansion(self, P: Place, n: int) -> tuple[Laurent, Laurent]:
        """(x, y) as Laurent series in a uniformizer at P, relative precision n."""
        key = (P, n)
        if key in self._cache:
            return self._cache[key]
        F, f, g = self.F, self.f, self.g
        if P.kind == AFFINE and P.y != 0:
            shifted = f.compose(Poly(F, [P.x, 1])).coeffs
            xs = Laurent(F, 0, [P.x, 1], None)
            ys = Laurent(F, 0, _series_sqrt(F, list(shifted), P.y, n), n)
        elif P.kind == AFFINE:
            h = (f.compose(Poly(F, [P.x, 1])) // Poly(F, [0, 1])).coeffs
            u = _branch_param(F, list(h), n + 1)
            xs = Laurent(F, 0, [F.add(P.x, u[0])] + u[1:], n + 1)
            ys = Laurent(F, 1, [1], None)
        elif P.kind in (INF_PLUS, INF_MINUS):
            rev = [f[2 * g + 2 - i] for i in range(2 * g + 3)]
            root0 = self.s0 if P.kind == INF_PLUS else F.neg(self.s0)
            xs = Laurent(F, -1, [1], None)
            ys = Laurent(F, -(g + 1), _series_sqrt(F, rev, root0, n), -(g + 1) + n)
        else:
            # z = y / x^(g+1) at t = 1/x satisfies z^2 = t R(t)
            rev = [f[2 * g + 1 - i] for i in range(2 * g + 2)]
            t = _branch_param(F, rev, n + 3)
            w = t[2:]
            xs = Laurent(F, -2, _series_inverse(F, w, n), -2 + n)
            xg = Laurent(F, 0, [1], None)
            for _ in range(g + 1):
                xg = xg * xs
            ys = Laurent(F, 1, [1], None) * xg
        self._cache[key] = (xs, ys)
        return xs, ys

    def places_over(self, x0: int) -> list[Place]:
        F = self.F
        v = self.f(x0)
        if v == 0:
            return [Place(AFFINE, x0, 0)]
        y0 = F.sqrt(v)
        if y0 is None:
            return []
        return sorted({Place(AFFINE, x0, y0), Place(AFFINE, x0, F.neg(y0))})

    def infinity_places(self) -> list[Place]:
        if self.odd:
            return [Place(INF_RAMIFIED)]
        if self.s0 is None:
            return []
        return [Place(INF_PLUS), Place(INF_MINUS)]

    def rational_places(self) -> list[Place]:
        out = []
        for x0 in self.F.elements():
            out.extend(self.places_over(x0))
        return out + self.infinity_places()

    def weierstrass_places(self) -> list[Place]:
        out = [Place(AFFINE, x0, 0) for x0 in self.F.elements() if self.f(x0) == 0]
        if self.odd:
            out.append(Place(INF_RAMIFIED))
        if len(out) != 2 * self.g + 2:
            raise DivisorError(f"Weierstrass places are not all rational over GF({self.curve.p}^{self.k})")
        return out

    def ram_index(self, P: Place) -> int:
        """Valuation at P of the uniformizer of the x-line below P."""
        if P.kind == INF_RAMIFIED or (P.kind == AFFINE and P.y == 0):
            return 2
        return 1


@functools.lru_cache(maxsize=64)
def context(curve: HyperCurve, k: int) -> RRContext:
    return RRContext(curve, k)


def _effective_context(D: Divisor) -> RRContext:
    """The context for D; even models whose infinity places are not rational
    are base-changed to the quadratic extension (h^0 is stable under it)."""
    ctx = context(D.curve, D.k)
    if ctx.odd or ctx.s0 is not None:
        return ctx
    if any(P.is_infinite for P in D.support):
        raise DivisorError("incomplete place data: infinity places are not rational over this field")
    return context(D.curve, 2 * D.k)


def _lift_place(P: Place, src: RRContext, dst: RRContext) -> Place:
    if src is dst or P.kind != AFFINE:
        return P
    table = embedding(src.curve.p, src.k, dst.k)
    return Place(AFFINE, table[P.x], table[P.y])


def _rr_system(D: Divisor):
    ctx0 = context(D.curve, D.k)
    for P in D.support:
        ctx0.check_place(P)
    ctx = _effective_context(D)
    F, g = ctx.F, ctx.g
    supp = {_lift_place(P, ctx0, ctx): n for P, n in D.support.items()}
    # denominator d(x) = prod (x - x0)^m(x0)
    mult: dict[int, int] = {}
    for P, n in supp.items():
        if P.kind == AFFINE and n > 0:
            need = -(-n // 2) if P.y == 0 else n
            mult[P.x] = max(mult.get(P.x, 0), need)
    deg_d = sum(mult.values())
    if ctx.odd:
        N = supp.get(Place(INF_RAMIFIED), 0) + 2 * deg_d
        A, B = N // 2 if N >= 0 else -1, (N - 2 * g - 1) // 2 if N >= 2 * g + 1 else -1
    else:
        N = max(supp.get(Place(INF_PLUS), 0), supp.get(Place(INF_MINUS), 0)) + deg_d
        A, B = N, N - g - 1
    A, B = max(A, -1), max(B, -1)
    ncols = (A + 1) + (B + 1)
    # required valuation of a + b y at each relevant place
    required: dict[Place, int] = {}
    for x0, m in mult.items():
        for Q in ctx.places_over(x0):
            required[Q] = ctx.ram_index(Q) * m - supp.get(Q, 0)
    for P, n in supp.items():
        if P.kind == AFFINE and P.x not in mult:
            required[P] = -n
    for Q in ctx.infinity_places():
        required[Q] = -ctx.ram_index(Q) * deg_d - supp.get(Q, 0)
    rows = []
    for Q, need in sorted(required.items()):
        if ncols == 0:
            break
        if Q.is_infinite:
            e = ctx.ram_index(Q)
            low = min(-e * A if A >= 0 else 0, -e * B - (2 * g + 2) * e // 2 if B >= 0 else 0)
        else:
            low = 0
        if need <= low:
            continue
        n = need - low + 2
        xs, ys = ctx.expansion(Q, n)
        monos = []
        cur = Laurent(F, 0, [1], None)
        for _ in range(A + 1):
            monos.append(cur)
            cur = cur * xs
        cur = ys
        for _ in range(B + 1):
            monos.append(cur)
            cur = cur * xs
        for m_ in monos:
            if m_.prec is not None and m_.prec < need:
                raise AssertionError("insufficient series precision")
        for ex in range(low, need):
            rows.append([m_.coeff(ex) for m_ in monos])
    return ctx, rows, ncols, (A, B, mult)


def rr_dimension(C: HyperCurve, D: Divisor) -> int:
    """dim L(D) over the field of D."""
    if D.curve != C:
        raise DivisorError("divisor lives on another curve")
    if D.degree > 6 * C.genus + 6:
        raise BudgetError(f"deg D = {D.degree} exceeds 6g+6")
    if D.degree < 0:
        return 0
    ctx, rows, ncols, _ = _rr_system(D)
    return ncols - rank(ctx.F, rows, ncols)


def rr_basis(C: HyperCurve, D: Divisor) -> list[tuple[Poly, Poly, Poly]]:
    """Basis of L(D) as triples (a, b, d) meaning (a + b y) / d."""
    ctx, rows, ncols, (A, B, mult) = _rr_system(D)
    F = ctx.F
    d = Poly(F, [1])
    for x0, m in mult.items():
        d = d * Poly(F, [F.neg(x0), 1]) ** m
    out = []
    for v in nullspace(F, rows, ncols):
        out.append((Poly(F, v[: A + 1]), Poly(F, v[A + 1 :]), d))
    return out


def is_linearly_equivalent(D1: Divisor, D2: Divisor) -> bool:
    if D1.degree != D2.degree:
        raise DivisorError("degree mismatch")
    return rr_dimension(D1.curve, D1 - D2) == 1


def linear_system(C: HyperCurve, D: Divisor) -> LinearSystemReport:
    h0 = rr_dimension(C, D)
    if h0 == 0:
        raise DivisorError("empty linear system has no base points")
    ctx = context(C, D.k)
    base = frozenset(P for P in ctx.rational_places() if rr_dimension(C, D - Divisor(C, D.k, {P: 1})) == h0)
    return LinearSystemReport(h0, base)


def base_points(C: HyperCurve, D: Divisor) -> frozenset:
    """Rational places P (over the field of D) with h0(D - P) == h0(D)."""
    return linear_system(C, D).base_points


# ---------------------------------------------------------------------------
# distinguished divisors


def place_divisor(C: HyperCurve, k: int, P: Place, n: int = 1) -> Divisor:
    return Divisor(C, k, {P: n})


def g12(C: HyperCurve, k: int) -> Divisor:
    """A fibre of x: the infinity fibre when rational, else the first split fibre."""
    ctx = context(C, k)
    inf = ctx.infinity_places()
    if ctx.odd:
        return Divisor(C, k, {inf[0]: 2})
    if inf:
        return Divisor(C, k, {P: 1 for P in inf})
    for x0 in ctx.F.elements():
        Ps = ctx.places_over(x0)
        if Ps:
            return Divisor(C, k, {P: 3 - len(Ps) for P in Ps})
    raise DivisorError("no rational fibre")  # pragma: no cover


def fibre(C: HyperCurve, k: int, x0: int) -> Divisor:
    Ps = context(C, k).places_over(x0)
    if not Ps:
        raise DivisorError(f"fibre over {x0} has no rational places")
    return Divisor(C, k, {P: 3 - len(Ps) for P in Ps})


def canonical_divisor(C: HyperCurve, k: int) -> Divisor:
    """K = (g - 1) * g12, the divisor of dx / y up to equivalence."""
    return g12(C, k) * (C.genus - 1)


def weierstrass_places(C: HyperCurve, k: int) -> list[Place]:
    return context(C, k).weierstrass_places()


def rational_places(C: HyperCurve, k: int) -> list[Place]:
    return context(C, k).rational_places()


def two_torsion_classes(C: HyperCurve, k: int) -> list[Divisor]:
    """Representatives sum_{P in S} P - (|S|/2) g12 of all 2-torsion classes.

    S runs over even subsets of the Weierstrass places avoiding the last one
    (one per complementary pair), in lexicographic order of the subset;
    later subsets equivalent to an earlier one are dropped.
    """
    W = weierstrass_places(C, k)
    G = g12(C, k)
    reps: list[Divisor] = []
    for size in range(0, len(W), 2):
        for S in itertools.combinations(W[:-1], size):
            T = Divisor(C, k, {P: 1 for P in S}) - G * (size // 2)
            if not any(is_linearly_equivalent(T, R) for R in reps):
                reps.append(T)
    return reps
