"""Exact arithmetic in quadratic fields: elements, units, class groups, ideals.

Everything here is integer/rational arithmetic with no rounding; numpy is used
only to enumerate reduced binary quadratic forms in bulk.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, isqrt

import numpy as np

from .errors import LogicError


# ---------------------------------------------------------------------------
# integer utilities


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; adequate for desk-scale inputs."""
    n = abs(n)
    if n <= 1:
        return {}
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 5
    step = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += step
        step = 6 - step  # alternate +2, +4 over 6k±1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=65536)
def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    return all(e == 1 for e in factorize(n).values())


def squarefree_core(d: int) -> tuple[int, int]:
    """Split d = d0 * s**2 with d0 squarefree."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    d0 = 1
    s = 1
    for p, e in factorize(d).items():
        if e % 2:
            d0 *= p
        s *= p ** (e // 2)
    return d0, s


def field_discriminant(m: int) -> int:
    """Discriminant of Q(sqrt(m)) for squarefree m."""
    if m in (0, 1) or not is_squarefree(m):
        raise ValueError(f"{m} is not a valid field radicand")
    return m if m % 4 == 1 else 4 * m


def is_fundamental_discriminant(D: int) -> bool:
    if D == 1 or D == 0:
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n)."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    k = 1
    if n < 0:
        n = -n
        if a < 0:
            k = -1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v and a % 2 == 0:
        return 0
    if v % 2 == 1 and a % 8 in (3, 5):
        k = -k
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                k = -k
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a %= n
    return k if n == 1 else 0


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _icbrt(n: int) -> int:
    """Floor of the cube root of n >= 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 0
    k = int(round(n ** (1.0 / 3.0)))
    while k ** 3 > n:
        k -= 1
    while (k + 1) ** 3 <= n:
        k += 1
    return k


# ---------------------------------------------------------------------------
# quadratic field elements


@dataclass(frozen=True)
class QuadElem:
    """(a + b*sqrt(m))/2 when half is set, else a + b*sqrt(m); m squarefree."""

    m: int
    a: int
    b: int
    half: bool = False

    def __post_init__(self):
        if self.m in (0, 1) or not is_squarefree(self.m):
            raise ValueError(f"invalid radicand {self.m}")
        if self.half:
            if self.m % 4 != 1:
                raise ValueError("half-coordinates need m = 1 mod 4")
            if (self.a - self.b) % 2 != 0:
                raise ValueError("half-coordinates need a = b mod 2")
            if self.a % 2 == 0 and self.b % 2 == 0:
                object.__setattr__(self, "a", self.a // 2)
                object.__setattr__(self, "b", self.b // 2)
                object.__setattr__(self, "half", False)

    @staticmethod
    def make(m: int, a: int, b: int, denom_pow: int) -> "QuadElem":
        """(a + b*sqrt(m)) / 2**denom_pow, reduced to canonical form."""
        while denom_pow > 0 and a % 2 == 0 and b % 2 == 0:
            a //= 2
            b //= 2
            denom_pow -= 1
        if denom_pow == 0:
            return QuadElem(m, a, b, False)
        if denom_pow == 1:
            return QuadElem(m, a, b, True)
        raise LogicError("non-integral quadratic element")

    @staticmethod
    def integer(m: int, n: int) -> "QuadElem":
        return QuadElem(m, n, 0, False)

    def _coerce(self, other) -> "QuadElem":
        if isinstance(other, QuadElem):
            if other.m != self.m:
                raise ValueError("mixed radicands")
            return other
        if isinstance(other, int):
            return QuadElem(self.m, other, 0, False)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        h = max(self.half, o.half)
        f1 = 2 if h and not self.half else 1
        f2 = 2 if h and not o.half else 1
        return QuadElem.make(self.m, self.a * f1 + o.a * f2, self.b * f1 + o.b * f2, int(h))

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.m, -self.a, -self.b, self.half)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a = self.a * o.a + self.b * o.b * self.m
        b = self.a * o.b + self.b * o.a
        return QuadElem.make(self.m, a, b, int(self.half) + int(o.half))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QuadElem":
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadElem.integer(self.m, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "QuadElem":
        return QuadElem(self.m, self.a, -self.b, self.half)

    def norm(self) -> int:
        n = self.a * self.a - self.m * self.b * self.b
        if self.half:
            assert n % 4 == 0
            return n // 4
        return n

    def trace(self) -> int:
        return self.a if self.half else 2 * self.a

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() in (1, -1)

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n not in (1, -1):
            raise ValueError("inverse is only available for units")
        c = self.conjugate()
        return c if n == 1 else -c

    def render(self) -> str:
        """Canonical string, e.g. "(29+3*sqrt(93))/2" or "5+2*sqrt(6)"."""
        if self.b == 0:
            return str(self.a)
        root = f"sqrt({self.m})"
        coeff = abs(self.b)
        term = root if coeff == 1 else f"{coeff}*{root}"
        if self.a == 0:
            body = term if self.b > 0 else f"-{term}"
        else:
            sign = "+" if self.b > 0 else "-"
            body = f"{self.a}{sign}{term}"
        return f"({body})/2" if self.half else body

    def __repr__(self):
        return f"QuadElem({self.render()})"


# ---------------------------------------------------------------------------
# fundamental units by the continued fraction of (b0 + sqrt(D))/2


def fundamental_unit(D: int) -> QuadElem:
    """Fundamental unit > 1 of the real quadratic order of discriminant D."""
    if D <= 4 or not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a positive fundamental discriminant")
    sqD = isqrt(D)
    b0 = D % 2
    P, Q = b0, 2
    seen: dict[tuple[int, int], int] = {}
    surds: list[tuple[int, int]] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(surds)
        surds.append((P, Q))
        a = (P + sqD) // Q  # Q stays positive for this starting surd
        assert Q > 0
        P = a * Q - P
        Q = (D - P * P) // Q
    start = seen[(P, Q)]
    cycle = surds[start:]

    # unit = product of the complete quotients (P_j + sqrt(D))/Q_j over one period
    u, v, den = 1, 0, 1
    for Pj, Qj in cycle:
        u, v = u * Pj + v * D, u + v * Pj
        den *= Qj
    m = D if D % 4 == 1 else D // 4
    root_scale = 1 if D % 4 == 1 else 2  # sqrt(D) = root_scale * sqrt(m)
    fa = Fraction(2 * u, den)
    fb = Fraction(2 * v * root_scale, den)
    if fa.denominator != 1 or fb.denominator != 1:
        raise LogicError("continued-fraction unit has a non-dyadic denominator")
    eps = QuadElem.make(m, fa.numerator, fb.numerator, 1)
    if eps.norm() not in (1, -1) or eps.a <= 0 or eps.b <= 0:
        raise LogicError(f"continued fraction did not produce a unit > 1 for D={D}")
    if eps.norm() != (1 if len(cycle) % 2 == 0 else -1):
        raise LogicError("unit norm disagrees with the period parity")
    if D % 3 == 0 and eps.norm() != 1:
        raise LogicError("norm must be +1 when 3 divides the discriminant")
    return eps


# ---------------------------------------------------------------------------
# binary quadratic forms


@dataclass(frozen=True)
class BqForm:
    a: int
    b: int
    c: int

    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def content(self) -> int:
        return gcd(gcd(abs(self.a), abs(self.b)), abs(self.c))

    def evaluate(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def is_reduced(self) -> bool:
        disc = self.discriminant()
        a, b, c = self.a, self.b, self.c
        if disc < 0:
            if a <= 0:
                return False
            if not (abs(b) <= a <= c):
                return False
            if (abs(b) == a or a == c) and b < 0:
                return False
            return True
        s = isqrt(disc)
        if b <= 0 or b > s:
            return False
        t = 2 * abs(a)
        return t - b <= s and t + b >= s + 1  # sqrt(disc)-b < 2|a| < sqrt(disc)+b

    def __repr__(self):
        return f"BqForm({self.a}, {self.b}, {self.c})"


def reduce_definite(f: BqForm) -> BqForm:
    a, b, c = f.a, f.b, f.c
    assert a > 0 and f.discriminant() < 0
    while True:
        if not (-a < b <= a):
            r = b % (2 * a)
            if r > a:
                r -= 2 * a
            c += (r * r - b * b) // (4 * a)
            b = r
        if a > c:
            a, b, c = c, -b, a
            continue
        break
    if a == c and b < 0:
        b = -b
    if b == -a:
        b = a
    return BqForm(a, b, c)


def _rho_indefinite(f: BqForm, disc: int, s: int) -> BqForm:
    a, b, c = f.a, f.b, f.c
    t = 2 * abs(c)
    if abs(c) > s:
        r = (-b) % t
        if r > abs(c):
            r -= t
    else:
        r = s - ((s + b) % t)
    return BqForm(c, r, (r * r - disc) // (4 * c))


def reduce_indefinite(f: BqForm) -> BqForm:
    disc = f.discriminant()
    assert disc > 0
    s = isqrt(disc)
    g = f
    while not g.is_reduced():
        g = _rho_indefinite(g, disc, s)
    return g


def form_cycle(f: BqForm) -> list[BqForm]:
    """The rho-cycle through a reduced indefinite form (its proper class)."""
    assert f.is_reduced()
    disc = f.discriminant()
    s = isqrt(disc)
    out = [f]
    g = _rho_indefinite(f, disc, s)
    while g != f:
        out.append(g)
        g = _rho_indefinite(g, disc, s)
    return out


def principal_form(disc: int) -> BqForm:
    b0 = disc % 2
    return BqForm(1, b0, (b0 * b0 - disc) // 4)


def compose_forms(f1: BqForm, f2: BqForm) -> BqForm:
    """Gauss composition of primitive forms of the same discriminant (unreduced)."""
    disc = f1.discriminant()
    if f2.discriminant() != disc:
        raise ValueError("discriminants differ")
    a1, b1 = f1.a, f1.b
    # replace f2 by an equivalent form whose leading coefficient is prime to a1
    x, y = 1, 0
    if gcd(f2.a, a1) != 1:
        found = False
        for bound in range(1, 40):
            for x in range(-bound, bound + 1):
                for y in range(-bound, bound + 1):
                    if gcd(x, y) != 1:
                        continue
                    v = f2.evaluate(x, y)
                    if v != 0 and gcd(v, a1) == 1:
                        found = True
                        break
                if found:
                    break
            if found:
                break
        if not found:
            raise LogicError("no represented value coprime to a1 found")
    g, u0, v0 = _xgcd(x, y)
    assert g == 1
    u, v = -v0, u0  # x*v - y*u = 1
    a2 = f2.evaluate(x, y)
    b2 = 2 * (f2.a * x * u + f2.c * y * v) + f2.b * (x * v + y * u)
    # B = b1 mod 2a1 and B = b2 mod 2a2 (solvable: gcd(a1,a2)=1, b1=b2=disc mod 2)
    mod = abs(a2)
    k = ((b2 - b1) // 2 % mod) * pow(a1 % mod, -1, mod) % mod if mod > 1 else 0
    B = b1 + 2 * a1 * k
    A = a1 * a2
    C = (B * B - disc) // (4 * A)
    out = BqForm(A, B, C)
    assert out.content() == 1
    return out


class FormClassGroup:
    """Class group of primitive forms of a fundamental discriminant.

    For disc > 0 this is the narrow group (classes = cycles of reduced forms)
    or its quotient by the class of (-1, b0, *) when narrow=False.  Heavy
    structure (tables, divisors) is computed on demand so that bulk order-only
    queries stay cheap.
    """

    def __init__(self, discriminant: int, narrow: bool):
        self.discriminant = discriminant
        self.narrow = narrow
        if discriminant < 0:
            self._rep_array = _definite_reduced_array(discriminant)
            self._order = len(self._rep_array)
        else:
            reduced = _indefinite_reduced_forms(discriminant)
            cycles = []
            seen: set[tuple[int, int, int]] = set()
            lookup: dict[tuple[int, int, int], int] = {}
            for f in reduced:
                key = f.tuple()
                if key in seen:
                    continue
                cyc = form_cycle(f)
                idx = len(cycles)
                for g in cyc:
                    seen.add(g.tuple())
                    lookup[g.tuple()] = idx
                cycles.append(min(c.tuple() for c in cyc))
            assert len(seen) == len(reduced)
            order_idx = sorted(range(len(cycles)), key=lambda i: cycles[i])
            renumber = {old: new for new, old in enumerate(order_idx)}
            self._narrow_keys = [cycles[i] for i in order_idx]
            self._narrow_lookup = {k: renumber[v] for k, v in lookup.items()}
            self._order = len(self._narrow_keys)
            if not narrow:
                self._fold_totally_positive()

    # -- construction helpers -------------------------------------------------

    def _fold_totally_positive(self):
        """Quotient the narrow group by the class of the norm -1 direction."""
        disc = self.discriminant
        b0 = disc % 2
        t = self._narrow_class_index(BqForm(-1, b0, (disc - b0 * b0) // 4))
        ident = self._narrow_class_index(principal_form(disc))
        coset: dict[int, int] = {}
        keys: list[tuple[int, int, int]] = []
        section: list[int] = []
        for i in range(self._order):
            if i in coset:
                continue
            j = self._narrow_compose(i, t)
            idx = len(keys)
            coset[i] = idx
            coset[j] = idx
            keys.append(min(self._narrow_keys[i], self._narrow_keys[j]))
            section.append(i)
        order_idx = sorted(range(len(keys)), key=lambda i: keys[i])
        renumber = {old: new for new, old in enumerate(order_idx)}
        self._coset_map = {i: renumber[c] for i, c in coset.items()}
        self._quot_keys = [keys[i] for i in order_idx]
        self._section = [section[i] for i in order_idx]
        expected = self._order if t == ident else self._order // 2
        self._order = len(self._quot_keys)
        assert self._order == expected

    def _narrow_class_index(self, f: BqForm) -> int:
        return self._narrow_lookup[reduce_indefinite(f).tuple()]

    def _narrow_compose(self, i: int, j: int) -> int:
        fi = BqForm(*self._narrow_keys[i])
        fj = BqForm(*self._narrow_keys[j])
        return self._narrow_class_index(reduce_indefinite(compose_forms(fi, fj)))

    # -- public surface --------------------------------------------------------

    @property
    def order(self) -> int:
        return self._order

    @cached_property
    def representatives(self) -> list[BqForm]:
        if self.discriminant < 0:
            return [BqForm(int(a), int(b), int(c)) for a, b, c in self._rep_array]
        keys = self._narrow_keys if self.narrow else self._quot_keys
        return [BqForm(*k) for k in keys]

    @cached_property
    def _definite_lookup(self) -> dict[tuple[int, int, int], int]:
        return {f.tuple(): i for i, f in enumerate(self.representatives)}

    def class_index(self, f: BqForm) -> int:
        """Index of the class of f among the canonical representatives."""
        if f.discriminant() != self.discriminant:
            raise ValueError("form has the wrong discriminant")
        if f.content() != 1:
            raise ValueError("form is not primitive")
        if self.discriminant < 0:
            return self._definite_lookup[reduce_definite(f).tuple()]
        i = self._narrow_lookup[reduce_indefinite(f).tuple()]
        return i if self.narrow else self._coset_map[i]

    @cached_property
    def identity(self) -> int:
        return self.class_index(principal_form(self.discriminant))

    def compose(self, i: int, j: int) -> int:
        if self.discriminant < 0:
            fi = self.representatives[i]
            fj = self.representatives[j]
            return self.class_index(compose_forms(fi, fj))
        if self.narrow:
            return self._narrow_compose(i, j)
        return self._coset_map[self._narrow_compose(self._section[i], self._section[j])]

    def inverse(self, i: int) -> int:
        f = self.representatives[i]
        return self.class_index(BqForm(f.a, -f.b, f.c))

    def power(self, i: int, n: int) -> int:
        if n < 0:
            return self.power(self.inverse(i), -n)
        acc = self.identity
        base = i
        while n:
            if n & 1:
                acc = self.compose(acc, base)
            base = self.compose(base, base)
            n >>= 1
        return acc

    @cached_property
    def table(self) -> list[list[int]]:
        h = self.order
        return [[self.compose(i, j) for j in range(h)] for i in range(h)]

    def element_order(self, i: int) -> int:
        n = 1
        x = i
        while x != self.identity:
            x = self.compose(x, i)
            n += 1
        return n

    @cached_property
    def rank3(self) -> int:
        """3-rank: log3 of the number of classes killed by cubing."""
        count = sum(1 for i in range(self.order) if self.power(i, 3) == self.identity)
        rank = 0
        while 3 ** rank < count:
            rank += 1
        assert 3 ** rank == count
        return rank

    @cached_property
    def elementary_divisors(self) -> list[int]:
        """Invariant factors d1 | d2 | ... with product = order."""
        n = self.order
        if n == 1:
            return []
        parts: dict[int, list[int]] = {}
        for p in factorize(n):
            counts = [1]
            j = 1
            while True:
                c = sum(1 for i in range(n) if self.power(i, p ** j) == self.identity)
                counts.append(c)
                if c == counts[-2]:
                    counts.pop()
                    break
                j += 1
            mults = []
            for j in range(1, len(counts)):
                ratio = counts[j] // counts[j - 1]
                e = 0
                while p ** e < ratio:
                    e += 1
                assert p ** e == ratio
                mults.append(e)  # number of cyclic factors with exponent >= j
            lam = []
            for idx in range(mults[0] if mults else 0):
                lam.append(sum(1 for mj in mults if mj > idx))
            parts[p] = sorted(lam, reverse=True)
        rmax = max(len(v) for v in parts.values())
        divisors = []
        for k in range(rmax):
            d = 1
            for p, lam in parts.items():
                if k < len(lam):
                    d *= p ** lam[k]
            divisors.append(d)
        divisors = sorted(divisors)
        prod = 1
        for d in divisors:
            prod *= d
        assert prod == n
        return divisors


def _definite_reduced_array(disc: int) -> np.ndarray:
    """All reduced primitive (a, b, c) with b^2 - 4ac = disc < 0, lex-sorted."""
    n = -disc
    amax = max(isqrt(n // 3), 1)
    a = np.arange(1, amax + 1, dtype=np.int64)
    b = np.arange(disc & 1, amax + 1, 2, dtype=np.int64)
    A = a[None, :]
    B = b[:, None]
    num = B * B - disc
    ok = (B <= A) & (num % (4 * A) == 0)
    C = np.where(ok, num // (4 * A), 0)
    ok &= C >= A
    aa = np.broadcast_to(A, ok.shape)[ok]
    bb = np.broadcast_to(B, ok.shape)[ok]
    cc = C[ok]
    prim = np.gcd(np.gcd(aa, bb), cc) == 1
    aa, bb, cc = aa[prim], bb[prim], cc[prim]
    interior = (bb != 0) & (bb != aa) & (aa != cc)
    rows = np.concatenate(
        [
            np.stack([aa, bb, cc], axis=1),
            np.stack([aa[interior], -bb[interior], cc[interior]], axis=1),
        ]
    )
    order = np.lexsort((rows[:, 2], rows[:, 1], rows[:, 0]))
    return rows[order]


def _indefinite_reduced_forms(disc: int) -> list[BqForm]:
    s = isqrt(disc)
    out = []
    for b in range(2 - (disc & 1), s + 1, 2):
        n = (disc - b * b) // 4
        lo = (s - b) // 2 + 1
        hi = (s + b) // 2
        for a in range(max(lo, 1), hi + 1):
            if n % a:
                continue
            c = n // a
            if gcd(gcd(a, b), c) != 1:
                continue
            out.append(BqForm(a, b, -c))
            out.append(BqForm(-a, b, c))
    return out


def class_group(discriminant: int, narrow: bool = False) -> FormClassGroup:
    """Form class group of a fundamental discriminant.

    For discriminant > 0, narrow=True gives the narrow group (cycles of
    reduced indefinite forms); narrow=False the ordinary class group.
    """
    if not is_fundamental_discriminant(discriminant):
        raise ValueError(f"{discriminant} is not a fundamental discriminant")
    if discriminant < 0:
        return FormClassGroup(discriminant, narrow=False)
    return FormClassGroup(discriminant, narrow=narrow)


# ---------------------------------------------------------------------------
# Dirichlet class number for imaginary fields (oracle route)


@lru_cache(maxsize=1024)
def _legendre_row(p: int) -> np.ndarray:
    row = np.full(p, -1, dtype=np.int8)
    row[0] = 0
    x = np.arange(1, p, dtype=np.int64)
    row[(x * x) % p] = 1
    return row


_CHI_MINUS4 = np.array([0, 1, 0, -1], dtype=np.int8)
_CHI_8 = np.array([0, 1, 0, -1, 0, -1, 0, 1], dtype=np.int8)
_CHI_MINUS8 = np.array([0, 1, 0, 1, 0, -1, 0, -1], dtype=np.int8)


def _prime_discriminant_factors(disc: int) -> list[int]:
    """Write a fundamental discriminant as a product of prime discriminants."""
    rest = abs(disc)
    odd = []
    while rest % 2 == 0:
        rest //= 2
    for p in factorize(rest):
        odd.append(p if p % 4 == 1 else -p)
    prod = 1
    for q in odd:
        prod *= q
    two_part = disc // prod
    assert two_part in (1, -4, 8, -8)
    return odd + ([] if two_part == 1 else [two_part])


def _chi_row(disc: int) -> np.ndarray:
    n = abs(disc)
    row = np.ones(n, dtype=np.int8)
    for q in _prime_discriminant_factors(disc):
        if q % 2:
            p = abs(q)
            base = _legendre_row(p) if p < 4096 else _legendre_row.__wrapped__(p)
            row *= np.tile(base, n // p + 1)[:n]
        else:
            pat = {-4: _CHI_MINUS4, 8: _CHI_8, -8: _CHI_MINUS8}[q]
            row *= np.tile(pat, n // len(pat) + 1)[:n]
    return row


def dirichlet_h_imag(disc: int) -> int:
    """Class number of an imaginary quadratic field from the character sum
    h = -(1/|disc|) * sum_{a=1}^{|disc|-1} chi(a) * a  (disc < -4)."""
    if disc >= 0 or not is_fundamental_discriminant(disc):
        raise ValueError(f"{disc} is not a negative fundamental discriminant")
    if disc in (-3, -4):
        return 1  # extra units; the sum formula needs the w/2 correction
    row = _chi_row(disc)
    total = int(np.dot(row.astype(np.int64), np.arange(abs(disc), dtype=np.int64)))
    assert total % disc == 0
    h = total // disc  # disc < 0, total < 0
    assert h >= 1
    return h


# ---------------------------------------------------------------------------
# ideals of imaginary quadratic orders


def _omega_params(m: int) -> tuple[int, int]:
    """omega = (t + sqrt(m))/s integral basis element {1, omega}."""
    return (2, 1) if m % 4 == 1 else (1, 0)


@dataclass(frozen=True)
class IdealRep:
    """Ideal g*(Z*n + Z*(bp + omega)) of the maximal order of Q(sqrt(m))."""

    m: int
    g: int
    n: int
    bp: int

    @property
    def norm(self) -> int:
        return self.g * self.g * self.n

    def basis_elements(self) -> tuple[QuadElem, QuadElem]:
        s, t = _omega_params(self.m)
        e1 = QuadElem.integer(self.m, self.g * self.n)
        e2 = QuadElem.make(self.m, self.g * (s * self.bp + t), self.g, 1 if s == 2 else 0)
        return e1, e2

    @staticmethod
    def from_elements(m: int, gens: list[QuadElem]) -> "IdealRep":
        if m >= 0:
            raise ValueError("ideal arithmetic is implemented for imaginary fields only")
        s, t = _omega_params(m)
        omega = QuadElem.make(m, t, 1, 1 if s == 2 else 0)
        rows = []
        for x in gens:
            if x.m != m:
                raise ValueError("generator in the wrong field")
            for y in (x, x * omega):
                # coordinates of y over {1, omega}
                if s == 2:
                    num_a, num_b, h = y.a, y.b, y.half
                    yc = num_b if h else 2 * num_b
                    xc = (num_a - num_b) // 2 if h else num_a - num_b
                else:
                    assert not y.half
                    xc, yc = y.a, y.b
                rows.append((xc, yc))
        return IdealRep._from_rows(m, rows)

    @staticmethod
    def _from_rows(m: int, rows: list[tuple[int, int]]) -> "IdealRep":
        r = (0, 0)
        for row in rows:
            if row[1] == 0:
                continue
            g, u, v = _xgcd(r[1], row[1])
            r = (u * r[0] + v * row[0], g)
        C = r[1]
        assert C != 0, "rows do not span a full lattice"
        if C < 0:
            r = (-r[0], -r[1])
            C = -C
        A = 0
        for row in rows:
            q = row[1] // C
            A = gcd(A, row[0] - q * r[0])
        assert A != 0, "rows do not span a full lattice"
        A = abs(A)
        B = r[0] % A
        if A % C or B % C:
            raise LogicError("module is not an ideal of the maximal order")
        g = C
        n = A // C
        bp = (B // C) % n if n > 1 else 0
        return IdealRep(m, g, n, bp)

    @staticmethod
    def principal(x: QuadElem) -> "IdealRep":
        return IdealRep.from_elements(x.m, [x])

    def conjugate(self) -> "IdealRep":
        e1, e2 = self.basis_elements()
        return IdealRep.from_elements(self.m, [e1.conjugate(), e2.conjugate()])

    def __mul__(self, other: "IdealRep") -> "IdealRep":
        if not isinstance(other, IdealRep):
            return NotImplemented
        if other.m != self.m:
            raise ValueError("mixed fields")
        f1, f2 = self.basis_elements()
        g1, g2 = other.basis_elements()
        out = IdealRep.from_elements(self.m, [f1 * g1, f1 * g2, f2 * g1, f2 * g2])
        assert out.norm == self.norm * other.norm
        return out

    def __pow__(self, k: int) -> "IdealRep":
        if k < 1:
            raise ValueError("positive powers only")
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def contains(self, x: QuadElem) -> bool:
        s, _ = _omega_params(self.m)
        if s == 2:
            yc = Fraction(x.b) if x.half else Fraction(2 * x.b)
            xc = Fraction(x.a - x.b, 2) if x.half else Fraction(x.a - x.b)
        else:
            xc, yc = Fraction(x.a), Fraction(x.b)
        cy = yc / self.g
        if cy.denominator != 1:
            return False
        cx = (xc - cy * self.g * self.bp) / (self.g * self.n)
        return cx.denominator == 1


def prime_above_3_split(d: int) -> tuple[IdealRep, IdealRep]:
    """The two primes above 3 in Q(sqrt(-d)) when 3 splits (d = 2 mod 3)."""
    if d < 1 or not is_squarefree(d):
        raise ValueError("d must be a squarefree positive radicand")
    if d % 3 != 2:
        raise ValueError(f"3 does not split in Q(sqrt(-{d}))")
    m = -d
    c = next(c for c in (1, 2) if (c * c + d) % 3 == 0)
    p = IdealRep.from_elements(m, [QuadElem.integer(m, 3), QuadElem(m, c, 1)])
    if p.norm != 3:
        raise LogicError("constructed ideal does not have norm 3")
    pbar = p.conjugate()
    assert p != pbar
    assert p * pbar == IdealRep.principal(QuadElem.integer(m, 3))
    return p, pbar


def ideal_power_generator(p: IdealRep, h: int) -> QuadElem:
    """Generator of p**h, assuming that power is principal; |norm| = norm(p)**h.

    Lagrange-Gauss reduction finds the shortest vector of the ideal lattice;
    for an imaginary quadratic ideal that vector generates iff the ideal is
    principal.  Sign is normalized to trace >= 0 (b > 0 on trace 0).
    """
    ideal = p ** h
    v1, v2 = ideal.basis_elements()

    def bil2(x: QuadElem, y: QuadElem) -> int:
        return (x * y.conjugate()).trace()

    if v2.norm() < v1.norm():
        v1, v2 = v2, v1
    while True:
        t = (2 * bil2(v1, v2) + 2 * v1.norm()) // (4 * v1.norm())  # round to nearest
        v2 = v2 - t * v1
        if v2.norm() < v1.norm():
            v1, v2 = v2, v1
        else:
            break
    alpha = v1
    if alpha.norm() != p.norm ** h:
        raise LogicError(
            f"p^{h} is not principal (shortest norm {alpha.norm()} != {p.norm ** h})"
        )
    if not (IdealRep.principal(alpha) == ideal):
        raise LogicError("shortest vector does not generate the ideal")
    if alpha.trace() < 0 or (alpha.trace() == 0 and alpha.b < 0):
        alpha = -alpha
    return alpha


def is_cube(x: QuadElem) -> QuadElem | None:
    """A beta with beta**3 = x (imaginary quadratic), or None."""
    if x.m >= 0:
        raise ValueError("cube search is for imaginary fields")
    if x.is_zero():
        raise ValueError("x must be nonzero")
    n = x.norm()
    k = _icbrt(n)
    if k ** 3 != n:
        return None
    am = -x.m
    half_ok = x.m % 4 == 1
    cands: set[QuadElem] = set()
    # |b| <= sqrt(4k/|m|); enumerate exactly
    for q in range(isqrt((4 * k) // am) + 1):
        rem4 = 4 * k - am * q * q
        if rem4 >= 0 and half_ok:
            pp = isqrt(rem4)
            if pp * pp == rem4 and (pp - q) % 2 == 0:
                for sp in (pp, -pp):
                    for sq in (q, -q):
                        cands.add(QuadElem.make(x.m, sp, sq, 1))
        rem1 = k - am * q * q
        if rem1 >= 0:
            pp = isqrt(rem1)
            if pp * pp == rem1:
                for sp in (pp, -pp):
                    for sq in (q, -q):
                        cands.add(QuadElem(x.m, sp, sq))
    for beta in sorted(cands, key=lambda e: (e.a, e.b, e.half)):
        cube = beta ** 3
        if cube == x:
            return beta
        if cube == -x:
            return -beta
    return None


# ---------------------------------------------------------------------------
# the degree-6 field K1 = Q(sqrt(3d), theta), theta = zeta9 + zeta9^-1


def _cubic_mul(u: tuple, v: tuple) -> tuple:
    """Multiply in Q[theta]/(theta^3 - 3*theta + 1)."""
    w0 = u[0] * v[0]
    w1 = u[0] * v[1] + u[1] * v[0]
    w2 = u[0] * v[2] + u[1] * v[1] + u[2] * v[0]
    w3 = u[1] * v[2] + u[2] * v[1]
    w4 = u[2] * v[2]
    # theta^3 = 3*theta - 1, theta^4 = 3*theta^2 - theta
    return (w0 - w3, w1 + 3 * w3 - w4, w2 + 3 * w4)


def _cubic_tau(u: tuple) -> tuple:
    # theta -> theta^2 - 2
    return (u[0] - 2 * u[1] + 4 * u[2], -u[2], u[1] - u[2])


@dataclass(frozen=True)
class K1Elem:
    """Element of Q(sqrt(3d), theta) over the basis {1, theta, theta^2} x {1, sqrt(3d)}."""

    d: int
    coords: tuple[Fraction, Fraction, Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        if self.d < 1 or self.d % 3 == 0:
            raise ValueError("d must be positive with 3 not dividing d")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @staticmethod
    def one(d: int) -> "K1Elem":
        return K1Elem(d, (1, 0, 0, 0, 0, 0))

    @staticmethod
    def from_quad(x: QuadElem, d: int) -> "K1Elem":
        """Embed (a + b*sqrt(m0))/2^h, m0 = squarefree core of 3d."""
        m0, s = squarefree_core(3 * d)
        if x.m != m0:
            raise ValueError(f"element lives over sqrt({x.m}), expected sqrt({m0})")
        den = 2 if x.half else 1
        return K1Elem(d, (Fraction(x.a, den), 0, 0, Fraction(x.b, den * s), 0, 0))

    def _parts(self):
        c = self.coords
        return c[:3], c[3:]

    def __add__(self, other: "K1Elem") -> "K1Elem":
        self._check(other)
        return K1Elem(self.d, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "K1Elem") -> "K1Elem":
        self._check(other)
        return K1Elem(self.d, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return K1Elem(self.d, tuple(-a for a in self.coords))

    def _check(self, other):
        if not isinstance(other, K1Elem) or other.d != self.d:
            raise ValueError("operands live in different fields")

    def __mul__(self, other: "K1Elem") -> "K1Elem":
        self._check(other)
        a, b = self._parts()
        c, e = other._parts()
        rad = 3 * self.d
        p = _cubic_mul(a, c)
        q = _cubic_mul(b, e)
        u = tuple(x + rad * y for x, y in zip(p, q))
        r = _cubic_mul(a, e)
        s = _cubic_mul(b, c)
        v = tuple(x + y for x, y in zip(r, s))
        return K1Elem(self.d, u + v)

    def __pow__(self, n: int) -> "K1Elem":
        if n < 0:
            raise ValueError("negative powers not supported")
        acc = K1Elem.one(self.d)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def tau(self) -> "K1Elem":
        """Generator of Gal(K1/K0): theta -> theta^2 - 2, sqrt(3d) fixed."""
        a, b = self._parts()
        return K1Elem(self.d, _cubic_tau(a) + _cubic_tau(b))

    def g_flip(self) -> "K1Elem":
        """Gal(K1/B1): sqrt(3d) -> -sqrt(3d), theta fixed."""
        a, b = self._parts()
        return K1Elem(self.d, a + tuple(-x for x in b))

    def relative_norm(self) -> tuple[Fraction, Fraction]:
        """Norm to Q(sqrt(3d)) as a pair (u, v) = u + v*sqrt(3d)."""
        t1 = self.tau()
        y = self * t1 * t1.tau()
        c = y.coords
        if c[1] or c[2] or c[4] or c[5]:
            raise LogicError("relative norm left theta components")
        return c[0], c[3]

    def absolute_norm(self) -> Fraction:
        u, v = self.relative_norm()
        return u * u - 3 * self.d * v * v

    def is_unit(self) -> bool:
        return self.absolute_norm() in (1, -1)


def verify_unit_relations(eps0: QuadElem, eps1: K1Elem, eps2: K1Elem, case: str) -> bool:
    """Check eps2^(1-tau) = eps1 and eps2^(1+tau+tau^2) = eps0 (case i) or 1 (case ii)."""
    if case not in ("i", "ii"):
        raise ValueError("case must be 'i' or 'ii'")
    if eps1.d != eps2.d:
        raise ValueError("eps1 and eps2 live in different fields")
    if eps0.norm() not in (1, -1):
        raise ValueError("eps0 is not a unit")
    if not eps1.is_unit() or not eps2.is_unit():
        raise ValueError("eps1 and eps2 must be units")
    d = eps2.d
    t2 = eps2.tau()
    rel1 = (t2 * eps1) == eps2  # eps2^(1-tau) = eps1
    prod = eps2 * t2 * t2.tau()
    target = K1Elem.from_quad(eps0, d) if case == "i" else K1Elem.one(d)
    return rel1 and prod == target
