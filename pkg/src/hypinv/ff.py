"""Exact arithmetic in F_p and F_{p^k} (p odd) and dense univariate polynomials.

Field elements are plain integers.  In F_{p^k} the integer ``sum c_i p^i``
stands for the residue class of ``sum c_i t^i`` modulo the defining
polynomial, so F_p sits inside every extension as ``0 .. p-1``.
Multiplication and addition in proper extensions go through exp/log and
Zech-logarithm tables built once per field.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterable, Sequence

SCAN_BUDGET = 10**6


class FieldError(ValueError):
    pass


class BudgetError(RuntimeError):
    """Raised when an exhaustive scan would exceed its hard cap."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# raw coefficient-list polynomial helpers over F_p (used to build extensions)


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    inv = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        coef = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, m, p)


def _ppowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result, base = [1], _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible_prime(c: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    k = len(c) - 1
    m = list(c)
    if k == 1:
        return True
    if m[0] == 0:
        return False
    x = [0, 1]
    # x^(p^k) == x mod m, and gcd(x^(p^(k/l)) - x, m) == 1 for primes l | k
    if _ppowmod(x, p**k, m, p) != _pmod(x, m, p):
        return False
    for ell in _prime_factors(k):
        h = _ppowmod(x, p ** (k // ell), m, p)
        h = h + [0] * max(0, 2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_pgcd(m, _trim(h), p)) > 1:
            return False
    return True


def _irreducible_coeffs(p: int, k: int) -> tuple[int, ...]:
    # candidates ordered lexicographically on (c_0, ..., c_{k-1}), monic
    for tail in itertools.product(range(p), repeat=k):
        c = tail + (1,)
        if _is_irreducible_prime(c, p):
            return c
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------


class GF:
    """The finite field with ``p**k`` elements, p an odd prime.

    Use :func:`field` to get cached instances; two ``GF`` objects with the
    same ``(p, k)`` are interchangeable.
    """

    def __init__(self, p: int, k: int = 1):
        if p == 2:
            raise FieldError("characteristic 2 unsupported")
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be positive")
        q = p**k
        if q > SCAN_BUDGET:
            raise BudgetError(f"field of size {q} exceeds the budget {SCAN_BUDGET}")
        self.p, self.k, self.q = p, k, q
        self.modulus = _irreducible_coeffs(p, k) if k > 1 else (0, 1)
        if k > 1:
            self._build_tables()

    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        m = list(self.modulus)
        order = q - 1
        factors = _prime_factors(order)

        def enc(c):
            return sum(ci * p**i for i, ci in enumerate(c))

        def dec(a):
            out = []
            for _ in range(k):
                a, r = divmod(a, p)
                out.append(r)
            return _trim(out)

        gen = None
        for cand in range(p, q):
            c = dec(cand)
            if all(_ppowmod(c, order // ell, m, p) != [1] for ell in factors):
                gen = c
                break
        assert gen is not None
        exp = [0] * (2 * order)
        log = [0] * q
        cur = [1]
        for i in range(order):
            v = enc(cur)
            exp[i] = exp[i + order] = v
            log[v] = i
            cur = _pmulmod(cur, gen, m, p)
        # Zech table: zech[j] = log(1 + g^j), -1 when 1 + g^j == 0
        zech = [0] * order
        for j in range(order):
            d = dec(exp[j])
            d = d + [0] * (k - len(d))
            d[0] = (d[0] + 1) % p
            v = enc(d)
            zech[j] = log[v] if v else -1
        self._exp, self._log, self._zech = exp, log, zech
        self._half = order // 2

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    def __len__(self) -> int:
        return self.q

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    # -- integer-level arithmetic (hot paths) --

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % (self.q - 1)]
        return 0 if z < 0 else self._exp[la + z]

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return 0 if a == 0 else self._exp[self._log[a] + self._half]

    def sub(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if self.k == 1:
            if a == 0:
                return 0 if e > 0 else (1 if e == 0 else self.inv(0))
            return pow(a, e % (self.p - 1), self.p)
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0 if e else 1
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_p -> this field."""
        return n % self.p

    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        if self.k == 1:
            return pow(a, (self.p - 1) // 2, self.p) == 1
        return self._log[a] % 2 == 0

    def sqrt(self, a: int) -> int | None:
        """A square root of a, or None if a is not a square."""
        if a == 0:
            return 0
        if not self.is_square(a):
            return None
        if self.k > 1:
            return self._exp[self._log[a] // 2]
        p = self.p
        if p % 4 == 3:
            return pow(a, (p + 1) // 4, p)
        for r in range(1, p):  # p <= 997, a direct scan is fine
            if r * r % p == a:
                return r
        raise AssertionError  # pragma: no cover

    def nonresidue(self) -> int:
        """The smallest (as encoded integer) non-square of the field."""
        return next(a for a in range(2, self.q) if not self.is_square(a))

    def elements(self) -> range:
        return range(self.q)

    def digits(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)


@functools.lru_cache(maxsize=None)
def field(p: int, k: int = 1) -> GF:
    return GF(p, k)


@functools.lru_cache(maxsize=None)
def embedding(p: int, k_small: int, k_big: int) -> tuple[int, ...]:
    """Table of the field embedding GF(p^k_small) -> GF(p^k_big).

    The image of the generating root is the smallest root (as encoded
    integer) of the small field's modulus, so the map is deterministic.
    """
    if k_big % k_small:
        raise FieldError(f"GF(p^{k_small}) does not embed in GF(p^{k_big})")
    small, big = field(p, k_small), field(p, k_big)
    if k_small == 1:
        return tuple(range(p))
    mod = Poly(big, small.modulus)
    alpha = next(a for a in big.elements() if mod(a) == 0)
    powers = [1]
    for _ in range(k_small - 1):
        powers.append(big.mul(powers[-1], alpha))
    table = []
    for a in small.elements():
        acc = 0
        for d, pw in zip(small.digits(a), powers):
            if d:
                acc = big.add(acc, big.mul(d, pw))
        table.append(acc)
    return tuple(table)


class FieldElement:
    """An immutable element of a finite field, with operator support."""

    __slots__ = ("field", "value")

    def __init__(self, fld: GF, value: int):
        if fld.k == 1:
            value %= fld.p
        elif not 0 <= value < fld.q:
            raise FieldError(f"{value} is not an element encoding of {fld}")
        object.__setattr__(self, "field", fld)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("field elements are immutable")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.div(self.value, o))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        if self.field.k == 1:
            return f"{self.value} (mod {self.field.p})"
        return f"{self.field}[{self.value}]"


# ---------------------------------------------------------------------------


class Poly:
    """Dense univariate polynomial, coefficients lowest degree first.

    Coefficients are encoded field integers of ``self.field``.  The zero
    polynomial has an empty coefficient tuple.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, fld: GF, coeffs: Iterable[int]):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.field = fld
        self.coeffs = tuple(c)

    @classmethod
    def from_ints(cls, fld: GF, ints: Iterable[int]) -> "Poly":
        return cls(fld, [fld.from_int(i) for i in ints])

    @classmethod
    def monomial(cls, fld: GF, n: int, c: int = 1) -> "Poly":
        return cls(fld, [0] * n + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if c == 1 and i:
                terms.append(mono)
            else:
                cs = str(c) if self.field.k == 1 else f"[{c}]"
                terms.append(cs + ("*" + mono if mono else ""))
        return " + ".join(terms)

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, [F.add(self[i], other[i]) for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        F = self.field
        if isinstance(other, int):
            return Poly(F, [F.mul(c, other) for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly(F, [])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    def __pow__(self, e: int) -> "Poly":
        result = Poly(self.field, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return Poly(F, []), self
        quo = [0] * (dq + 1)
        inv = F.inv(other.lead())
        d = other.degree
        for s in range(dq, -1, -1):
            c = F.mul(r[s + d], inv)
            quo[s] = c
            if c:
                for i, oc in enumerate(other.coeffs):
                    r[s + i] = F.sub(r[s + i], F.mul(c, oc))
        return Poly(F, quo), Poly(F, r[:d])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * self.field.inv(self.lead())

    def derivative(self) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def compose(self, other: "Poly") -> "Poly":
        out = Poly(self.field, [])
        for c in reversed(self.coeffs):
            out = out * other + Poly(self.field, [c])
        return out

    def lift(self, big: GF) -> "Poly":
        """The same polynomial with coefficients embedded into ``big``."""
        table = embedding(self.field.p, self.field.k, big.k)
        return Poly(big, [table[c] for c in self.coeffs])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def is_squarefree(f: Poly) -> bool:
    """True iff gcd(f, f') is a nonzero constant."""
    if f.is_zero():
        raise FieldError("zero polynomial has no squarefree status")
    return poly_gcd(f, f.derivative()).degree == 0


def roots_in_extension(f: Poly, k: int) -> list[int]:
    """All roots of f in GF(p^(k * f.field.k)), as encoded integers, sorted.

    ``k`` is the degree of the scanned field over the field of ``f``.
    """
    if f.is_zero():
        raise FieldError("zero polynomial")
    kk = f.field.k * k
    size = f.field.p**kk
    if size > SCAN_BUDGET:
        raise BudgetError(f"root scan needs a field of size {size} > {SCAN_BUDGET}")
    big = field(f.field.p, kk)
    g = f.lift(big)
    return [a for a in big.elements() if g(a) == 0]


def find_irreducible(p: int, k: int) -> Poly:
    """Lexicographically smallest monic irreducible of degree k over F_p.

    Candidates are ordered by their coefficient tuple, constant term first.
    """
    if p**k > SCAN_BUDGET:
        raise BudgetError(f"p^k = {p**k} exceeds {SCAN_BUDGET}")
    return Poly(field(p), _irreducible_coeffs(p, k))
