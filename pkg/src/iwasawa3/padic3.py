"""Truncated 3-adic arithmetic: Q3, ramified quadratic extensions, Z3[zeta9].

Every value carries the number of 3-adic coefficient digits it is certified
to; answers that would need more digits raise PrecisionError instead of
guessing.  pi is the uniformizer 1 - zeta9 of Q3(zeta9), with v_pi(3) = 6.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    HypothesisError,
    IntegralityError,
    LogicError,
    NoSquareRootError,
    PrecisionError,
)
from .quadfield import QuadElem, field_discriminant

DEFAULT_PRECISION = 24


def _v3(n: int) -> int:
    if n == 0:
        raise ZeroDivisionError("valuation of zero")
    v = 0
    while n % 3 == 0:
        n //= 3
        v += 1
    return v


class Z3Approx:
    """An integer of Z3 known modulo 3**prec."""

    __slots__ = ("value", "prec")

    def __init__(self, value: int, prec: int):
        if prec < 1:
            raise PrecisionError("no certified digits left")
        self.prec = prec
        self.value = value % (3 ** prec)

    def _coerce(self, other) -> "Z3Approx":
        if isinstance(other, Z3Approx):
            return other
        if isinstance(other, int):
            return Z3Approx(other, self.prec)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = min(self.prec, o.prec)
        return Z3Approx(self.value + o.value, p)

    __radd__ = __add__

    def __neg__(self):
        return Z3Approx(-self.value, self.prec)

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
        p = min(self.prec, o.prec)
        return Z3Approx(self.value * o.value, p)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Z3Approx":
        if n < 0:
            return self.unit_inverse() ** (-n)
        return Z3Approx(pow(self.value, n, 3 ** self.prec), self.prec)

    @property
    def is_unit(self) -> bool:
        return self.value % 3 != 0

    def unit_inverse(self) -> "Z3Approx":
        if not self.is_unit:
            raise ValueError("not a unit in Z3")
        return Z3Approx(pow(self.value, -1, 3 ** self.prec), self.prec)

    def div_exact(self, n: int) -> "Z3Approx":
        """Divide by a nonzero integer; loses _v3(n) digits of precision."""
        v = _v3(n)
        u = n // (3 ** v)
        if v:
            if self.value % (3 ** v):
                raise IntegralityError(f"value not divisible by 3^{v}")
            if self.prec - v < 1:
                raise PrecisionError("division by 3 exhausted the precision")
            out = Z3Approx(self.value // (3 ** v), self.prec - v)
        else:
            out = Z3Approx(self.value, self.prec)
        return out * Z3Approx(pow(u, -1, 3 ** out.prec), out.prec)

    def residue(self, digits: int) -> int:
        if digits > self.prec:
            raise PrecisionError(f"know {self.prec} digits, asked for {digits}")
        return self.value % (3 ** digits)

    def congruent_to(self, other, digits: int) -> bool:
        o = self._coerce(other)
        return (self - o).residue(digits) == 0

    def valuation(self) -> int:
        if self.value == 0:
            raise PrecisionError("zero at tracked precision; valuation uncertified")
        return _v3(self.value)

    def __repr__(self):
        return f"Z3Approx({self.value} + O(3^{self.prec}))"


def hensel_sqrt(a: Z3Approx, seed: int) -> Z3Approx:
    """Square root of a unit a with root = seed (mod 3), by Newton lifting."""
    if not a.is_unit:
        raise NoSquareRootError("argument is not a 3-adic unit")
    if a.value % 3 != 1:
        raise NoSquareRootError(f"{a.value % 3} is not a square modulo 3")
    seed %= 3
    if seed == 0 or (seed * seed - a.value) % 3 != 0:
        raise NoSquareRootError("seed does not square to the argument mod 3")
    K = a.prec
    x = seed
    k = 1
    while k < K:
        k = min(2 * k, K)
        mod = 3 ** k
        x = (x + a.value * pow(x, -1, mod)) * pow(2, -1, mod) % mod
    r = Z3Approx(x, K)
    assert (r * r - a).residue(K) == 0
    assert r.value % 3 == seed
    return r


def iwasawa_log_q3(u: Z3Approx) -> Z3Approx:
    """Iwasawa logarithm on Z3 units: (1/2) log(u^2); kills the sign torsion."""
    if not u.is_unit:
        raise ValueError("logarithm needs a unit")
    K = u.prec
    t = u * u - 1
    # v3(t) >= 1: term k has valuation >= k - v3(k)
    total = Z3Approx(0, K)
    power = Z3Approx(1, K)
    k = 1
    while k - _v3(max(k, 1)) <= K + 1:
        power = power * t
        term = power.div_exact(k)
        total = total + (term if k % 2 else -term)
        k += 1
    return total.div_exact(2)


@dataclass(frozen=True)
class RamQuadLocal:
    """x + y*sqrt(m) in the ramified quadratic extension Q3(sqrt(m)), v3(m) = 1.

    The normalized valuation has v(sqrt(m)) = 1 and v(3) = 2.
    """

    m: int
    x: Z3Approx
    y: Z3Approx

    def __post_init__(self):
        if _v3(self.m) != 1:
            raise ValueError("radicand must have 3-adic valuation exactly 1")

    @property
    def prec(self) -> int:
        return min(self.x.prec, self.y.prec)

    def _coerce(self, other):
        if isinstance(other, RamQuadLocal):
            if other.m != self.m:
                raise ValueError("mixed local fields")
            return other
        if isinstance(other, (int, Z3Approx)):
            z = other if isinstance(other, Z3Approx) else Z3Approx(other, self.prec)
            return RamQuadLocal(self.m, z, Z3Approx(0, z.prec))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RamQuadLocal(self.m, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return RamQuadLocal(self.m, -self.x, -self.y)

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
        return RamQuadLocal(
            self.m,
            self.x * o.x + self.m * (self.y * o.y),
            self.x * o.y + self.y * o.x,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RamQuadLocal":
        if n < 0:
            raise ValueError("negative powers not supported")
        acc = self._coerce(1)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def conjugate(self) -> "RamQuadLocal":
        return RamQuadLocal(self.m, self.x, -self.y)

    def norm(self) -> Z3Approx:
        return self.x * self.x - self.m * (self.y * self.y)

    @property
    def is_unit(self) -> bool:
        return self.x.is_unit

    def div_exact(self, n: int) -> "RamQuadLocal":
        return RamQuadLocal(self.m, self.x.div_exact(n), self.y.div_exact(n))

    def __repr__(self):
        return f"RamQuadLocal({self.x.value} + {self.y.value}*sqrt({self.m}) + O(3^{self.prec}))"


def iwasawa_log_ramquad(u: RamQuadLocal) -> RamQuadLocal:
    """log3 on norm-one units of the ramified quadratic field.

    Computed as log(u^6)/6; u^6 = 1 mod pi'^3 puts the series inside the
    convergence region v > e/(p-1) = 1.  The result is antisymmetric: its
    rational part vanishes, log3(u) = y' * sqrt(m).
    """
    if not u.is_unit:
        raise ValueError("logarithm needs a unit")
    K = u.prec
    n = u.norm()
    if n.residue(n.prec) != 1:
        raise ValueError("ramified-quadratic logarithm requires norm 1")
    w = u ** 6
    t = w - 1
    # v(t) >= 3 in the pi'-valuation; term k has v >= 3k - 2*v3(k)
    total = t._coerce(0)
    power = t._coerce(1)
    k = 1
    while 3 * k - 2 * _v3(max(k, 1)) <= 2 * K + 2:
        power = power * t
        term = power.div_exact(k)
        total = total + (term if k % 2 else -term)
        k += 1
    result = total.div_exact(6)
    if result.x.value != 0:
        raise LogicError("log of a norm-one unit has a nonzero rational part")
    return result


def log_eps_ratio(eps0: QuadElem, D: int, prec: int = DEFAULT_PRECISION) -> Z3Approx:
    """(log3 eps0)/sqrt(D) as an element of Z3, for 3 | D.

    eps0 must be a norm +1 unit of the real field of discriminant D.  The
    ratio is 3-integral by construction; a failed exact division surfaces as
    IntegralityError.
    """
    m = eps0.m
    if D % 3 != 0 or field_discriminant(m) != D:
        raise ValueError("D must be the discriminant of eps0's field, divisible by 3")
    if eps0.norm() != 1:
        raise ValueError("eps0 must have norm +1")
    den = 2 if eps0.half else 1
    u = RamQuadLocal(
        m,
        Z3Approx(eps0.a, prec).div_exact(den),
        Z3Approx(eps0.b, prec).div_exact(den),
    )
    lg = iwasawa_log_ramquad(u)
    ratio = lg.y
    if D == 4 * m:
        ratio = ratio.div_exact(2)  # sqrt(D) = 2 sqrt(m)
    return ratio


def log_ratio_mod9(eps0: QuadElem, D: int, prec: int = DEFAULT_PRECISION) -> int:
    """Residue of (log3 eps0)/sqrt(D) modulo 9."""
    return log_eps_ratio(eps0, D, prec).residue(2)


# ---------------------------------------------------------------------------
# the cyclotomic local ring Z3[zeta9]


def _poly_reduce_phi9(c: list) -> list:
    """Reduce degree <= 10 coefficients modulo Phi9 = x^6 + x^3 + 1 in place."""
    for k in range(len(c) - 1, 5, -1):
        v = c[k]
        if v:
            c[k - 3] -= v
            c[k - 6] -= v
        c[k] = 0
    return c[:6]


def _poly_mul_phi9(a, b) -> list:
    out = [0] * 11
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _poly_reduce_phi9(out)


# 3/pi as an exact ring element: product of (1 - zeta9^j) over j = 2,4,5,7,8
def _compute_pi_complement() -> tuple:
    acc = [1, 0, 0, 0, 0, 0]
    for j in (2, 4, 5, 7, 8):
        factor = [0] * 6
        factor[0] = 1
        mono = [0] * 11
        mono[j] = 1
        mono = _poly_reduce_phi9(mono)
        factor = [f - m for f, m in zip(factor, mono)]
        acc = _poly_mul_phi9(acc, factor)
    check = _poly_mul_phi9(acc, [1, -1, 0, 0, 0, 0])
    assert check == [3, 0, 0, 0, 0, 0]
    return tuple(acc)


_PI_COMPLEMENT = _compute_pi_complement()


class Zeta9Local:
    """Element of Z3[zeta9] with six coefficients known modulo 3**prec."""

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs, prec: int):
        if prec < 1:
            raise PrecisionError("no certified digits left")
        mod = 3 ** prec
        self.coeffs = tuple(int(c) % mod for c in coeffs)
        if len(self.coeffs) != 6:
            raise ValueError("need exactly six coefficients")
        self.prec = prec

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def from_int(n: int, prec: int) -> "Zeta9Local":
        return Zeta9Local((n, 0, 0, 0, 0, 0), prec)

    @staticmethod
    def zeta9(prec: int) -> "Zeta9Local":
        return Zeta9Local((0, 1, 0, 0, 0, 0), prec)

    @staticmethod
    def zeta3(prec: int) -> "Zeta9Local":
        return Zeta9Local((0, 0, 0, 1, 0, 0), prec)

    @staticmethod
    def pi(prec: int) -> "Zeta9Local":
        return Zeta9Local((1, -1, 0, 0, 0, 0), prec)

    @staticmethod
    def sqrt_minus3(prec: int) -> "Zeta9Local":
        return Zeta9Local((1, 0, 0, 2, 0, 0), prec)  # 1 + 2*zeta3

    @staticmethod
    def pi_power(j: int, prec: int) -> "Zeta9Local":
        return Zeta9Local.pi(prec) ** j

    @staticmethod
    def zeta9_power(a: int, prec: int) -> "Zeta9Local":
        a %= 9
        mono = [0] * 11
        mono[a] = 1
        return Zeta9Local(_poly_reduce_phi9(mono), prec)

    # -- ring operations --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Zeta9Local):
            return other
        if isinstance(other, int):
            return Zeta9Local.from_int(other, self.prec)
        if isinstance(other, Z3Approx):
            return Zeta9Local.from_int(other.value, other.prec)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = min(self.prec, o.prec)
        return Zeta9Local([a + b for a, b in zip(self.coeffs, o.coeffs)], p)

    __radd__ = __add__

    def __neg__(self):
        return Zeta9Local([-a for a in self.coeffs], self.prec)

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
        p = min(self.prec, o.prec)
        return Zeta9Local(_poly_mul_phi9(self.coeffs, o.coeffs), p)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Zeta9Local":
        if n < 0:
            raise ValueError("negative powers not supported")
        acc = Zeta9Local.from_int(1, self.prec)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def sigma(self, k: int) -> "Zeta9Local":
        """Galois action zeta9 -> zeta9^k for k coprime to 9."""
        if k % 3 == 0:
            raise ValueError("k must be coprime to 9")
        out = [0] * 11
        for i, ci in enumerate(self.coeffs):
            if ci:
                out[(i * k) % 9] += ci
        return Zeta9Local(_poly_reduce_phi9(out), self.prec)

    def tau(self) -> "Zeta9Local":
        """The local lift of Gal(B1/Q): zeta9 -> zeta9^4."""
        return self.sigma(4)

    def sigma_minus1(self) -> "Zeta9Local":
        return self.sigma(8)

    def coefficients(self) -> tuple[Z3Approx, ...]:
        return tuple(Z3Approx(c, self.prec) for c in self.coeffs)

    # -- pi-adic structure -------------------------------------------------------

    def is_zero_at_precision(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def residue_digit(self) -> int:
        """Image in the residue field F3 (zeta9 -> 1)."""
        return sum(self.coeffs) % 3

    @property
    def is_unit(self) -> bool:
        return self.residue_digit() != 0

    def _try_div_pi(self) -> "Zeta9Local | None":
        w = _poly_mul_phi9(self.coeffs, _PI_COMPLEMENT)
        mod = 3 ** self.prec
        w = [c % mod for c in w]
        if any(c % 3 for c in w):
            return None
        if self.prec == 1:
            raise PrecisionError("pi-division exhausted the precision")
        return Zeta9Local([c // 3 for c in w], self.prec - 1)

    def _lift(self, prec: int) -> "Zeta9Local":
        # Any lift of the coefficients shares all pi-digits below 6*self.prec.
        return Zeta9Local(self.coeffs, prec)

    def pi_digits(self, n: int) -> tuple[int, ...]:
        """First n digits of the pi-adic expansion; needs 6*prec >= n."""
        if 6 * self.prec < n:
            raise PrecisionError(f"need pi-precision {n}, certified {6 * self.prec}")
        z = self._lift(self.prec + n)
        digits = []
        for _ in range(n):
            c = z.residue_digit()
            digits.append(c)
            z = (z - c)._try_div_pi()
            assert z is not None
        return tuple(digits)

    def __repr__(self):
        return f"Zeta9Local({list(self.coeffs)} + O(3^{self.prec}))"


@dataclass(frozen=True)
class PiPrecision:
    """A modulus pi**n for congruence statements."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("modulus exponent must be positive")

    @property
    def coeff_digits(self) -> int:
        return (self.n + 5) // 6


def _pi_exponent(n) -> int:
    return n.n if isinstance(n, PiPrecision) else int(n)


def pi_valuation(z: Zeta9Local) -> int:
    """v_pi(z) with v_pi(3) = 6; certified up to 6*prec."""
    if z.is_zero_at_precision():
        raise PrecisionError("zero at tracked precision; valuation uncertified")
    limit = 6 * z.prec
    w = z._lift(z.prec + limit)
    v = 0
    while w.residue_digit() == 0:
        w = w._try_div_pi()
        v += 1
        assert v <= limit
    return v


def congruent_mod_pi(x: Zeta9Local, y, n) -> bool:
    """Whether v_pi(x - y) >= n."""
    n = _pi_exponent(n)
    o = x._coerce(y)
    d = x - o
    if 6 * d.prec < n:
        raise PrecisionError(f"need pi-precision {n}, certified {6 * d.prec}")
    if d.is_zero_at_precision():
        return True
    return all(c == 0 for c in d.pi_digits(n))


# ---------------------------------------------------------------------------
# cubes modulo pi^9


def _np_polymul_phi9(A: np.ndarray, B: np.ndarray, mod: int) -> np.ndarray:
    n = A.shape[0]
    out = np.zeros((n, 11), dtype=np.int64)
    for i in range(6):
        for j in range(6):
            out[:, i + j] += A[:, i] * B[:, j]
        out %= mod
    for k in range(10, 5, -1):
        out[:, k - 3] -= out[:, k]
        out[:, k - 6] -= out[:, k]
        out[:, k] = 0
    return out[:, :6] % mod


@lru_cache(maxsize=1)
def cube_residues_mod_pi9() -> frozenset[int]:
    """All cubes of units in (Z3[zeta9]/pi^9)^*, keyed by packed pi-digits.

    Built once by cubing every one of the 2*3^8 unit residues.  Cubing kills
    the whole 1 + pi^3 layer (3x has valuation >= 9 once v(x) >= 3), so the
    map is 3^6-to-1 and exactly 18 distinct cubes exist.
    """
    workprec = 11
    mod = 3 ** workprec
    pis = np.empty((9, 6), dtype=np.int64)
    for j in range(9):
        pis[j] = Zeta9Local.pi_power(j, workprec).coeffs
    grids = np.meshgrid(*([np.arange(1, 3)] + [np.arange(3)] * 8), indexing="ij")
    digits = np.stack([g.ravel() for g in grids], axis=1)  # (13122, 9)
    Z = digits.astype(np.int64) @ pis % mod
    sq = _np_polymul_phi9(Z, Z, mod)
    cubes = _np_polymul_phi9(sq, Z, mod)
    # multiply-by-nu matrix: row j = coefficients of (3/pi) * x^j
    numat = np.empty((6, 6), dtype=np.int64)
    for j in range(6):
        mono = [0] * 6
        mono[j] = 1
        numat[j] = _poly_mul_phi9(list(_PI_COMPLEMENT), mono)
    keys = np.zeros(len(cubes), dtype=np.int64)
    W = cubes.copy()
    m = mod
    for r in range(9):
        dig = W.sum(axis=1) % 3
        keys += dig * (3 ** r)
        W[:, 0] -= dig
        W = W @ numat % m
        assert not (W % 3).any()
        W //= 3
        m //= 3
        W %= m
    out = frozenset(int(k) for k in keys)
    assert len(out) == 18  # brute-force derived; kernel is the full 1 + pi^3 layer
    return out


def _pack_digits(digits) -> int:
    return sum(c * 3 ** i for i, c in enumerate(digits))


def is_cube_mod_pi9(u: Zeta9Local) -> bool:
    """Whether u is congruent to a cube of a unit modulo pi^9."""
    if u.prec < 2:
        raise PrecisionError("cube test mod pi^9 needs coefficient precision >= 2")
    if not u.is_unit:
        raise ValueError("cube test is for pi-adic units")
    return _pack_digits(u.pi_digits(9)) in cube_residues_mod_pi9()


# ---------------------------------------------------------------------------
# embeddings and the zeta9^a normal form


def embed_split_eps(
    eps0: QuadElem, prec: int = DEFAULT_PRECISION, conjugate: bool = False
) -> Zeta9Local:
    """Image of a unit of Q(sqrt(3*d0)) in Z3[zeta9] at one prime above 3.

    Requires the split case d0 = 2 mod 3.  Deterministic branch: the 3-adic
    square root of -d0 uses the seed 1 lift and sqrt(-3) = 1 + 2*zeta3;
    conjugate=True selects the other completion (root negated).
    """
    m = eps0.m
    if m % 3 != 0 or _v3(m) != 1:
        raise ValueError("eps0 must live over sqrt(3*d0)")
    d0 = m // 3
    if d0 % 3 != 2:
        raise ValueError(f"3 does not split for d0={d0}; embedding undefined")
    r = hensel_sqrt(Z3Approx(-d0, prec), seed=1)
    if conjugate:
        r = -r
    root_img = Zeta9Local.sqrt_minus3(prec) * r  # image of sqrt(3*d0)
    den = 2 if eps0.half else 1
    inv_den = pow(den, -1, 3 ** prec)
    img = (Zeta9Local.from_int(eps0.a, prec) + root_img * eps0.b) * inv_den
    assert img.is_unit
    return img


def identity_vector_checks(prec: int = 12) -> list[tuple[str, bool]]:
    """Named pi-adic expansion identities used as a regression battery.

    Covers the expansions of -3, sqrt(-3), zeta3 mod pi^10, the cube shape for
    all 27 digit triples mod pi^9, the five tau(pi^j) vectors mod pi^10, and
    the norm shape x^(1+tau+tau^2) = +-zeta3^a (1 + 2 a5 pi^9) mod pi^10.
    """

    def pp(*terms):
        out = Zeta9Local.from_int(0, prec)
        for c, j in terms:
            out = out + Zeta9Local.pi_power(j, prec) * c
        return out

    checks: list[tuple[str, bool]] = []
    checks.append(
        ("minus3_pi6_pi9", congruent_mod_pi(Zeta9Local.from_int(-3, prec), pp((1, 6), (1, 9)), 10))
    )
    checks.append(
        (
            "sqrt_minus3_pi3",
            congruent_mod_pi(Zeta9Local.sqrt_minus3(prec), pp((1, 3), (-1, 6), (-1, 7), (1, 8)), 10),
        )
    )
    checks.append(
        (
            "zeta3_one_minus_pi3",
            congruent_mod_pi(Zeta9Local.zeta3(prec), pp((1, 0), (-1, 3), (1, 7), (-1, 8)), 10),
        )
    )
    cube_ok = True
    for a in range(3):
        for b in range(3):
            for c in range(3):
                lhs = pp((1, 0), (a, 1), (b, 2), (c, 3)) ** 3
                rhs = pp((1, 0), (a, 3), (b, 6), (-a, 7), (-(a * a + b), 8))
                cube_ok &= congruent_mod_pi(lhs, rhs, 9)
    checks.append(("cube_shape_27_triples", cube_ok))
    tau_vectors = {
        5: [(1, 5), (-1, 7), (1, 8), (1, 9)],
        6: [(1, 6)],
        7: [(1, 7), (1, 9)],
        8: [(1, 8)],
        9: [(1, 9)],
    }
    for j, rhs in tau_vectors.items():
        checks.append(
            (f"tau_pi{j}", congruent_mod_pi(Zeta9Local.pi_power(j, prec).tau(), pp(*rhs), 10))
        )
    norm_ok = True
    tail = (1, 2, 0, 1)  # fixed a6..a9; only sign, a, a5 survive in the target
    for sign in (1, -1):
        for a in range(9):
            for a5 in range(3):
                x = Zeta9Local.zeta9_power(a, prec) * sign * (
                    pp((1, 0), (a5, 5), (tail[0], 6), (tail[1], 7), (tail[2], 8), (tail[3], 9))
                )
                y = x * x.tau() * x.tau().tau()
                target = Zeta9Local.zeta3(prec) ** a * sign * pp((1, 0), (2 * a5, 9))
                norm_ok &= congruent_mod_pi(y, target, 10)
    checks.append(("tau_norm_shape", norm_ok))
    return checks


def unit_normal_form(eps: Zeta9Local) -> tuple[int, int, tuple[int, ...]]:
    """Decompose eps = sign * zeta9^a * (1 + a5 pi^5 + ... + a9 pi^9) mod pi^10.

    Hypothesis: eps * sigma_-1(eps) must be a cube mod pi^9 (the finite local
    surrogate for "sigma_-1(eps) = eps^-1 times a cube").  Returns
    (sign, a, (a5, ..., a9)).
    """
    if not eps.is_unit:
        raise ValueError("normal form is for units")
    prod = eps * eps.sigma_minus1()
    if not is_cube_mod_pi9(prod):
        raise HypothesisError("eps * sigma_-1(eps) is not a cube mod pi^9")
    sign = 1 if eps.residue_digit() == 1 else -1
    work = eps if sign == 1 else -eps
    for a in range(9):
        eta = work * Zeta9Local.zeta9_power(-a, eps.prec)
        digits = eta.pi_digits(10)
        if digits[1] == 0 and digits[2] == 0 and digits[3] == 0 and digits[4] == 0:
            assert digits[0] == 1
            return sign, a, tuple(digits[5:10])
    raise HypothesisError("no zeta9^a normal form exists at this precision")
