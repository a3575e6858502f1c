"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) of
Q[x]/Phi_n(x) as an integer numerator vector over one positive common
denominator.  That form is canonical for a fixed conductor, so equality
and hashing of matrices built from these numbers is structural.

Binary operations promote both operands to the lcm of their conductors.
There is no automatic descent to a smaller conductor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from numbers import Rational

import numpy as np

from .errors import ConductorMismatch, ConductorTooLarge, DivisionByZero

DEFAULT_MAX_CONDUCTOR = 360
_max_conductor = DEFAULT_MAX_CONDUCTOR


def get_max_conductor() -> int:
    return _max_conductor


def set_max_conductor(n: int) -> None:
    """Change the largest conductor any field operation may use."""
    global _max_conductor
    if n < 1:
        raise ValueError("max conductor must be positive")
    _max_conductor = int(n)


# ---------------------------------------------------------------- number theory


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


# ---------------------------------------------------------------- polynomials


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients listed from the constant term up."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c) or (0,))

    @property
    def degree(self) -> int:
        if self.coeffs == (0,):
            return -1
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self):
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            mag = abs(c)
            body = str(mag) if (mag != 1 or k == 0) else ""
            if body and mono:
                body += "*"
            terms.append(("-" if c < 0 else "+", body + mono))
        if not terms:
            return "0"
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, t in terms[1:]:
            s += f" {sign} {t}"
        return s


def _exact_divide(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(q) - 1, -1, -1):
        coef = num[i + len(den) - 1]
        if coef % lead:
            raise ArithmeticError("inexact polynomial division")
        coef //= lead
        q[i] = coef
        if coef:
            for j, d in enumerate(den):
                num[i + j] -= coef * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("nonzero remainder")
    return q


@lru_cache(maxsize=None)
def _phi_coeffs(n: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in divisors(n)[:-1]:
        poly = _exact_divide(poly, list(_phi_coeffs(d)))
    return tuple(poly)


def cyclotomic_polynomial(n: int) -> IntPolynomial:
    """Return Phi_n, the minimal polynomial of a primitive n-th root of unity."""
    if n < 1:
        raise ValueError("n must be positive")
    return IntPolynomial(_phi_coeffs(n))


# ---------------------------------------------------------------- field tables


class _Field:
    """Precomputed tables for one conductor."""

    def __init__(self, n: int):
        self.n = n
        phi_poly = _phi_coeffs(n)
        self.phi = phi = len(phi_poly) - 1
        self.modulus = phi_poly
        # x^i reduced mod Phi_n for 0 <= i < max(n, 2*phi - 1)
        top = max(n, 2 * phi - 1)
        rows = []
        cur = [0] * phi
        cur[0] = 1
        for _ in range(top):
            rows.append(tuple(cur))
            lead = cur[-1]
            cur = [0] + cur[:-1]
            if lead:
                for j in range(phi):
                    cur[j] -= lead * phi_poly[j]
        self.xpow = rows
        self.powers = rows[:n]  # zeta_n^k for k in [0, n)
        self.root_index = {row: k for k, row in enumerate(self.powers)}
        conv = np.zeros((phi * phi, 2 * phi - 1), dtype=np.int64)
        for i in range(phi):
            for j in range(phi):
                conv[i * phi + j, i + j] = 1
        red = np.array(rows[: 2 * phi - 1], dtype=np.int64).reshape(2 * phi - 1, phi)
        self.mul_table = conv @ red
        self.mul_table_obj = self.mul_table.astype(object)
        self.mul_table_max = int(np.abs(self.mul_table).max())
        trace = []
        for i in range(phi):
            g = math.gcd(i, n)
            trace.append(Fraction(mobius(n // g) * phi // euler_phi(n // g), phi))
        self.norm_trace = tuple(trace)


@lru_cache(maxsize=None)
def _field_cached(n: int) -> _Field:
    return _Field(n)


def field(n: int) -> _Field:
    if n < 1:
        raise ValueError("conductor must be positive")
    if n > _max_conductor:
        raise ConductorTooLarge(f"conductor {n} exceeds the configured maximum {_max_conductor}")
    return _field_cached(n)


@lru_cache(maxsize=None)
def promotion_matrix(n: int, m: int) -> np.ndarray:
    """Matrix taking power-basis coordinates at conductor n to conductor m."""
    if m % n:
        raise ConductorMismatch(f"conductor {n} does not divide {m}")
    src, dst = field(n), field(m)
    step = m // n
    mat = np.array([dst.powers[(i * step) % m] for i in range(src.phi)], dtype=np.int64)
    return mat.reshape(src.phi, dst.phi)


def _gcd_all(values, start: int = 0) -> int:
    return reduce(math.gcd, values, start)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as a rational")


# ---------------------------------------------------------------- CycNum


class CycNum:
    """An element of Q(zeta_n) with exact rational coordinates."""

    __slots__ = ("n", "num", "den")

    def __init__(self, n: int, num, den: int = 1):
        f = field(n)
        num = tuple(int(x) for x in num)
        if len(num) != f.phi:
            raise ValueError(f"expected {f.phi} coordinates for conductor {n}, got {len(num)}")
        den = int(den)
        if den == 0:
            raise DivisionByZero("zero denominator")
        if den < 0:
            num, den = tuple(-x for x in num), -den
        g = _gcd_all(num, den)
        if g > 1:
            num, den = tuple(x // g for x in num), den // g
        self.n = n
        self.num = num
        self.den = den

    # constructors

    @classmethod
    def from_coeffs(cls, n: int, coeffs) -> "CycNum":
        fr = [_as_fraction(c) for c in coeffs]
        den = math.lcm(*(c.denominator for c in fr)) if fr else 1
        return cls(n, [c.numerator * (den // c.denominator) for c in fr], den)

    @classmethod
    def rational(cls, q, n: int = 1) -> "CycNum":
        q = _as_fraction(q)
        phi = field(n).phi
        return cls(n, [q.numerator] + [0] * (phi - 1), q.denominator)

    @classmethod
    def coerce(cls, x, n: int = 1) -> "CycNum":
        if isinstance(x, CycNum):
            return x
        return cls.rational(x, n)

    # views

    @property
    def conductor(self) -> int:
        return self.n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def promote(self, m: int) -> "CycNum":
        """Express the same element in Q(zeta_m); needs conductor | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ConductorMismatch(f"conductor {self.n} does not divide {m}")
        dst = field(m)
        step = m // self.n
        out = [0] * dst.phi
        for i, c in enumerate(self.num):
            if c:
                row = dst.powers[(i * step) % m]
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return CycNum(m, out, self.den)

    def demote(self) -> "CycNum":
        """The same element over the smallest conductor that contains it."""
        if self.is_rational():
            return CycNum.rational(self.coeffs[0])
        for m in divisors(self.n):
            if m == self.n:
                break
            coords = _solve_in_subfield(self.num, m, self.n)
            if coords is None:
                continue
            best = CycNum(m, coords, self.den)
            # Q(zeta_m) = Q(zeta_2m) for odd m; keep the sparser basis
            if m % 2 and self.n % (2 * m) == 0:
                alt = CycNum(2 * m, _solve_in_subfield(self.num, 2 * m, self.n), self.den)
                if sum(map(bool, alt.num)) < sum(map(bool, best.num)):
                    best = alt
            return best
        return self

    def _unify(self, other) -> tuple["CycNum", "CycNum"]:
        other = CycNum.coerce(other)
        if other.n == self.n:
            return self, other
        m = math.lcm(self.n, other.n)
        return self.promote(m), other.promote(m)

    # arithmetic

    def __neg__(self):
        return CycNum(self.n, [-x for x in self.num], self.den)

    def __add__(self, other):
        if not isinstance(other, (CycNum, int, Fraction)):
            return NotImplemented
        a, b = self._unify(other)
        den = math.lcm(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        return CycNum(a.n, [x * fa + y * fb for x, y in zip(a.num, b.num)], den)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (CycNum, int, Fraction)):
            return NotImplemented
        return self + (-CycNum.coerce(other))

    def __rsub__(self, other):
        return CycNum.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycNum(self.n, [x * q.numerator for x in self.num], self.den * q.denominator)
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._unify(other)
        f = field(a.n)
        phi = f.phi
        prod = [0] * (2 * phi - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        prod[i + j] += x * y
        out = prod[:phi]
        for s in range(phi, 2 * phi - 1):
            c = prod[s]
            if c:
                for j, r in enumerate(f.xpow[s]):
                    if r:
                        out[j] += c * r
        return CycNum(a.n, out, a.den * b.den)

    __rmul__ = __mul__

    def inv(self) -> "CycNum":
        """Multiplicative inverse by the extended Euclidean algorithm mod Phi_n."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        f = field(self.n)
        # Bezout: s*a + t*Phi = g (g a nonzero constant since Phi is irreducible)
        r0 = [Fraction(c) for c in f.modulus]
        r1 = _trim([Fraction(c) for c in self.num])
        s0: list[Fraction] = [Fraction(0)]
        s1: list[Fraction] = [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r1 is a nonzero constant c with s1 * a = c  (mod Phi)
        c = r1[0]
        coeffs = [x / c for x in s1] + [Fraction(0)] * f.phi
        result = CycNum.from_coeffs(self.n, coeffs[: f.phi])
        return result * Fraction(self.den)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, CycNum):
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return CycNum.coerce(other) * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inv()
        k = abs(k)
        result = CycNum.rational(1, self.n)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conj(self) -> "CycNum":
        """Apply zeta -> zeta^-1 (complex conjugation)."""
        f = field(self.n)
        out = [0] * f.phi
        for i, c in enumerate(self.num):
            if c:
                for j, r in enumerate(f.powers[(-i) % self.n]):
                    if r:
                        out[j] += c * r
        return CycNum(self.n, out, self.den)

    def galois(self, u: int) -> "CycNum":
        """Apply the automorphism zeta -> zeta^u, gcd(u, n) = 1."""
        if math.gcd(u, self.n) != 1:
            raise ValueError("u must be a unit mod the conductor")
        f = field(self.n)
        out = [0] * f.phi
        for i, c in enumerate(self.num):
            if c:
                for j, r in enumerate(f.powers[(i * u) % self.n]):
                    if r:
                        out[j] += c * r
        return CycNum(self.n, out, self.den)

    # comparison

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNum.rational(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        if self.n == other.n:
            return self.den == other.den and self.num == other.num
        a, b = self._unify(other)
        return a.den == b.den and a.num == b.num

    def normalized_trace(self) -> Fraction:
        """Tr(a)/[K:Q]; independent of the conductor used to express a."""
        tr = field(self.n).norm_trace
        return sum((c * t for c, t in zip(self.num, tr)), Fraction(0)) / self.den

    def __hash__(self):
        return hash(self.normalized_trace())

    def __bool__(self):
        return not self.is_zero()

    # roots of unity

    def as_root_of_unity(self) -> tuple[int, int] | None:
        """(k, m) in lowest terms with self = e^(2 pi i k/m), or None."""
        if self.den != 1:
            return None
        m = math.lcm(2, self.n)
        k = field(m).root_index.get(self.promote(m).num)
        if k is None:
            return None
        g = math.gcd(k, m)
        return k // g, m // g

    # rendering

    def __complex__(self):
        return complex(sum(c * np.exp(2j * np.pi * i / self.n) for i, c in enumerate(self.num)) / self.den)

    def poly_str(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                mono = ""
            elif k == 1:
                mono = f"zeta({self.n})"
            else:
                mono = f"zeta({self.n})^{k}"
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, t in terms[1:]:
            s += f" {sign} {t}"
        return s

    def __str__(self):
        if self.is_zero():
            return "0"
        root = self.as_root_of_unity()
        if root is not None:
            return "1" if root == (0, 1) else f"e({root[0]}/{root[1]})"
        return self.demote().poly_str()

    def __repr__(self):
        return f"CycNum({self.n}, {self.poly_str()!r})"


def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    r = _trim(a[: len(b) - 1] or [Fraction(0)])
    return _trim(q), r


# ---------------------------------------------------------------- module API


def _solve_in_subfield(num: tuple[int, ...], m: int, n: int) -> list[int] | None:
    """Integer-scaled coordinates x over conductor m with promote(x) = num, or None."""
    P = promotion_matrix(m, n)  # rows: images of the conductor-m basis
    rows, cols = P.shape
    # augmented system P^t x = num, by Fraction elimination
    aug = [[Fraction(int(P[i, j])) for i in range(rows)] + [Fraction(num[j])] for j in range(cols)]
    pivots = []
    r = 0
    for c in range(rows):
        piv = next((i for i in range(r, cols) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(cols):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][-1] != 0 for i in range(r, cols)):
        return None
    x = [Fraction(0)] * rows
    for i, c in enumerate(pivots):
        x[c] = aug[i][-1]
    if any(v.denominator != 1 for v in x):
        return None
    return [int(v) for v in x]


def root_of_unity(k: int, n: int) -> CycNum:
    """zeta_n^k in Q(zeta_n)."""
    if n < 1:
        raise ValueError("n must be positive")
    return CycNum(n, field(n).powers[k % n])


def zeta(n: int) -> CycNum:
    return root_of_unity(1, n)


def add(a: CycNum, b: CycNum) -> CycNum:
    return a + b


def mul(a: CycNum, b: CycNum) -> CycNum:
    return a * b


def neg(a: CycNum) -> CycNum:
    return -a


def inv(a: CycNum) -> CycNum:
    return a.inv()


def conj(a: CycNum) -> CycNum:
    return a.conj()


def promote(a: CycNum, m: int) -> CycNum:
    return a.promote(m)


def as_root_of_unity(a: CycNum) -> tuple[int, int] | None:
    return a.as_root_of_unity()
