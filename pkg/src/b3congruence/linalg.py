"""Small dense matrices over a cyclotomic field.

A CycMatrix keeps one conductor n, one positive common denominator and an
integer array of shape (d, d, phi(n)) holding power-basis numerators.
Products run through a precomputed multiplication table for Q(zeta_n).
The int64 path is used only when an a-priori bound rules out overflow;
otherwise the same contraction runs on Python ints (dtype=object).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cyclotomic import CycNum, field, promotion_matrix, root_of_unity
from .errors import DimensionMismatch, NotTriangular, SingularMatrix

_INT64_SAFE = 1 << 62

DEFAULT_ORDER_CAP = 1000


def _max_abs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return max(abs(int(x)) for x in arr.flat)
    return int(np.abs(arr).max())


def _shrink(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object and _max_abs(arr) < _INT64_SAFE:
        return arr.astype(np.int64)
    return arr


class CycMatrix:
    """Immutable square matrix with entries in Q(zeta_n)."""

    __slots__ = ("n", "den", "num", "dim", "_key")

    def __init__(self, n: int, num: np.ndarray, den: int = 1):
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if num.ndim != 3 or num.shape[0] != num.shape[1] or num.shape[2] != field(n).phi:
            raise DimensionMismatch(f"bad numerator array shape {num.shape} for conductor {n}")
        if den < 0:
            num, den = -num, -den
        if num.dtype == object:
            g = math.gcd(den, *(int(x) for x in num.flat))
        else:
            g = math.gcd(den, int(np.gcd.reduce(num, axis=None))) if num.size else den
        if g > 1:
            num = num // g
            den //= g
        num = _shrink(num)
        num.flags.writeable = False
        self.n = n
        self.den = den
        self.num = num
        self.dim = num.shape[0]
        self._key = None

    # construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "CycMatrix":
        d = len(rows)
        if any(len(r) != d for r in rows):
            raise DimensionMismatch("matrix must be square")
        entries = [[CycNum.coerce(x) for x in r] for r in rows]
        n = math.lcm(1, *(e.n for r in entries for e in r))
        entries = [[e.promote(n) for e in r] for r in entries]
        den = math.lcm(1, *(e.den for r in entries for e in r))
        phi = field(n).phi
        big = any(abs(x) * (den // e.den) >= _INT64_SAFE for r in entries for e in r for x in e.num)
        num = np.zeros((d, d, phi), dtype=object if big else np.int64)
        for i, r in enumerate(entries):
            for j, e in enumerate(r):
                f = den // e.den
                num[i, j, :] = [x * f for x in e.num]
        return cls(n, num, den)

    @classmethod
    def identity(cls, d: int, n: int = 1) -> "CycMatrix":
        num = np.zeros((d, d, field(n).phi), dtype=np.int64)
        for i in range(d):
            num[i, i, 0] = 1
        return cls(n, num, 1)

    @classmethod
    def scalar(cls, c, d: int) -> "CycMatrix":
        c = CycNum.coerce(c)
        zero = CycNum.rational(0, c.n)
        return cls.from_rows([[c if i == j else zero for j in range(d)] for i in range(d)])

    @classmethod
    def diag(cls, entries: Sequence) -> "CycMatrix":
        d = len(entries)
        return cls.from_rows([[entries[i] if i == j else 0 for j in range(d)] for i in range(d)])

    # views

    @property
    def conductor(self) -> int:
        return self.n

    def entry(self, i: int, j: int) -> CycNum:
        return CycNum(self.n, [int(x) for x in self.num[i, j]], self.den)

    def __getitem__(self, ij) -> CycNum:
        return self.entry(*ij)

    def rows(self) -> list[list[CycNum]]:
        return [[self.entry(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def key(self) -> tuple:
        """Canonical hashable form, valid for comparisons at a fixed conductor."""
        if self._key is None:
            if self.num.dtype == object:
                body = tuple(int(x) for x in self.num.flat)
            else:
                body = self.num.tobytes()
            self._key = (self.n, self.den, body)
        return self._key

    def promote(self, m: int) -> "CycMatrix":
        if m == self.n:
            return self
        P = promotion_matrix(self.n, m)
        num = self.num
        if _max_abs(num) * _max_abs(P) * P.shape[0] >= _INT64_SAFE:
            num, P = num.astype(object), P.astype(object)
        return CycMatrix(m, num @ P, self.den)

    def _unify(self, other: "CycMatrix") -> tuple["CycMatrix", "CycMatrix"]:
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")
        if self.n == other.n:
            return self, other
        m = math.lcm(self.n, other.n)
        return self.promote(m), other.promote(m)

    # arithmetic

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        if not isinstance(other, CycMatrix):
            return NotImplemented
        a, b = self._unify(other)
        f = field(a.n)
        d, phi = a.dim, f.phi
        bound = d * _max_abs(a.num) * _max_abs(b.num) * phi * phi * f.mul_table_max
        if bound < _INT64_SAFE:
            an, bn, table = a.num, b.num, f.mul_table
        else:
            an, bn, table = a.num.astype(object), b.num.astype(object), f.mul_table_obj
        q = np.tensordot(an, bn, axes=([1], [0]))  # (i, s, j, t)
        q = q.transpose(0, 2, 1, 3).reshape(d, d, phi * phi)
        return CycMatrix(a.n, q @ table, a.den * b.den)

    def __mul__(self, c) -> "CycMatrix":
        if isinstance(c, (int, Fraction)):
            c = Fraction(c)
            num = self.num
            if _max_abs(num) * abs(c.numerator) >= _INT64_SAFE:
                num = num.astype(object)
            return CycMatrix(self.n, num * c.numerator, self.den * c.denominator)
        if isinstance(c, CycNum):
            return CycMatrix.scalar(c, self.dim) @ self
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other: "CycMatrix") -> "CycMatrix":
        if not isinstance(other, CycMatrix):
            return NotImplemented
        a, b = self._unify(other)
        den = math.lcm(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        an, bn = a.num, b.num
        if (_max_abs(an) * fa + _max_abs(bn) * fb) >= _INT64_SAFE:
            an, bn = an.astype(object), bn.astype(object)
        return CycMatrix(a.n, an * fa + bn * fb, den)

    def __neg__(self):
        return CycMatrix(self.n, -self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __pow__(self, k: int) -> "CycMatrix":
        return mat_pow(self, k)

    def __eq__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if self.dim != other.dim:
            return False
        a, b = self._unify(other)
        return a.den == b.den and np.array_equal(a.num, b.num)

    def __hash__(self):
        return hash(tuple(e.normalized_trace() for r in self.rows() for e in r))

    def det(self) -> CycNum:
        r = self.rows()
        if self.dim == 1:
            return r[0][0]
        if self.dim == 2:
            return r[0][0] * r[1][1] - r[0][1] * r[1][0]
        return _det_rows(r)

    # rendering

    def to_strings(self) -> list[list[str]]:
        return [[str(e) for e in row] for row in self.rows()]

    def __str__(self):
        return format_matrix(self)

    def __repr__(self):
        return f"CycMatrix(n={self.n}, rows={self.to_strings()!r})"


def _det_rows(r: list[list[CycNum]]) -> CycNum:
    d = len(r)
    if d == 1:
        return r[0][0]
    total = CycNum.rational(0)
    for j in range(d):
        if r[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in r[1:]]
        term = r[0][j] * _det_rows(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def format_matrix(A: CycMatrix) -> str:
    cells = A.to_strings()
    width = max(len(c) for row in cells for c in row)
    return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)


# ---------------------------------------------------------------- operations


def mat_mul(A: CycMatrix, B: CycMatrix) -> CycMatrix:
    return A @ B


def mat_apply(A: CycMatrix, v: Sequence) -> tuple[CycNum, ...]:
    """Column action A v."""
    if len(v) != A.dim:
        raise DimensionMismatch("vector length does not match matrix")
    v = [CycNum.coerce(x) for x in v]
    rows = A.rows()
    return tuple(_dot(rows[i], v) for i in range(A.dim))


def vec_mat(v: Sequence, A: CycMatrix) -> tuple[CycNum, ...]:
    """Row action v A."""
    if len(v) != A.dim:
        raise DimensionMismatch("vector length does not match matrix")
    v = [CycNum.coerce(x) for x in v]
    rows = A.rows()
    return tuple(_dot(v, [rows[i][j] for i in range(A.dim)]) for j in range(A.dim))


def _dot(a, b) -> CycNum:
    total = CycNum.rational(0)
    for x, y in zip(a, b):
        if not (x.is_zero() or y.is_zero()):
            total = total + x * y
    return total


def mat_inverse(A: CycMatrix) -> CycMatrix:
    """Exact inverse through the adjugate."""
    det = A.det()
    if det.is_zero():
        raise SingularMatrix("matrix is singular")
    r = A.rows()
    d = A.dim
    if d == 1:
        return CycMatrix.from_rows([[det.inv()]])
    dinv = det.inv()
    adj = []
    for i in range(d):
        row = []
        for j in range(d):
            # adj[i][j] = (-1)^(i+j) * minor(j, i)
            minor = [rr[:i] + rr[i + 1:] for k, rr in enumerate(r) if k != j]
            c = _det_rows(minor)
            if (i + j) % 2:
                c = -c
            row.append(c * dinv)
        adj.append(row)
    return CycMatrix.from_rows(adj)


def mat_pow(A: CycMatrix, k: int) -> CycMatrix:
    if k < 0:
        return mat_pow(mat_inverse(A), -k)
    result = CycMatrix.identity(A.dim, A.n)
    base = A
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def commutator(A: CycMatrix, B: CycMatrix) -> CycMatrix:
    """A B A^-1 B^-1."""
    return A @ B @ mat_inverse(A) @ mat_inverse(B)


def is_identity(A: CycMatrix) -> bool:
    if A.den != 1:
        return False
    d = A.dim
    num = A.num
    for i in range(d):
        for j in range(d):
            cell = num[i, j]
            if i == j:
                if cell[0] != 1 or any(cell[1:]):
                    return False
            elif any(cell):
                return False
    return True


def is_scalar(A: CycMatrix) -> CycNum | None:
    d = A.dim
    num = A.num
    for i in range(d):
        for j in range(d):
            if i != j and any(num[i, j]):
                return None
    if any(not np.array_equal(num[i, i], num[0, 0]) for i in range(1, d)):
        return None
    return A.entry(0, 0)


def is_upper_triangular(A: CycMatrix) -> bool:
    return all(not any(A.num[i, j]) for i in range(A.dim) for j in range(i))


def is_lower_triangular(A: CycMatrix) -> bool:
    return all(not any(A.num[i, j]) for i in range(A.dim) for j in range(i + 1, A.dim))


def diag_spectrum(A: CycMatrix) -> list[CycNum]:
    """Eigenvalues of a triangular matrix, read off the diagonal."""
    if not (is_upper_triangular(A) or is_lower_triangular(A)):
        raise NotTriangular("spectrum is only available for triangular matrices")
    return [A.entry(i, i) for i in range(A.dim)]


def _eigen_orders(A: CycMatrix) -> list[int] | None:
    if not (is_upper_triangular(A) or is_lower_triangular(A)):
        return None
    eigs = diag_spectrum(A)
    if any(eigs[i] == eigs[j] for i in range(len(eigs)) for j in range(i)):
        return None
    orders = []
    for e in eigs:
        root = e.as_root_of_unity()
        if root is None:
            return None
        orders.append(root[1])
    return orders


def mat_order(A: CycMatrix, cap: int = DEFAULT_ORDER_CAP) -> int | None:
    """Least k >= 1 with A^k = I, or None if no such k <= cap."""
    orders = _eigen_orders(A)
    if orders is not None:
        # distinct eigenvalues: A is diagonalizable and its order is the lcm
        candidate = math.lcm(*orders)
        if candidate > cap:
            return None
        if is_identity(mat_pow(A, candidate)):
            return candidate
    return mat_order_by_iteration(A, cap)


def mat_order_by_iteration(A: CycMatrix, cap: int = DEFAULT_ORDER_CAP) -> int | None:
    M = A
    for k in range(1, cap + 1):
        if is_identity(M):
            return k
        M = M @ A
    return None


def trace(A: CycMatrix) -> CycNum:
    total = CycNum.rational(0, A.n)
    for i in range(A.dim):
        total = total + A.entry(i, i)
    return total


def charpoly(A: CycMatrix) -> list[CycNum]:
    """Coefficients of det(x I - A), constant term first (Faddeev-LeVerrier)."""
    d = A.dim
    coeffs = [CycNum.rational(0, A.n)] * d + [CycNum.rational(1, A.n)]
    M = CycMatrix.identity(d, A.n) * 0
    ident = CycMatrix.identity(d, A.n)
    for k in range(1, d + 1):
        M = A @ M + ident * coeffs[d - k + 1]
        coeffs[d - k] = trace(A @ M) * Fraction(-1, k)
    return coeffs


def _poly_eval(coeffs: Sequence[CycNum], x: CycNum) -> CycNum:
    acc = CycNum.rational(0, x.n)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs: Sequence[CycNum], root: CycNum) -> list[CycNum]:
    """Quotient of the polynomial by (x - root)."""
    out = []
    acc = CycNum.rational(0, root.n)
    for c in reversed(coeffs[1:]):
        acc = acc * root + c
        out.append(acc)
    return out[::-1]


def root_of_unity_spectrum(A: CycMatrix, cap: int = DEFAULT_ORDER_CAP) -> list[tuple[int, int]] | None:
    """Eigenvalues of a finite-order matrix as reduced (k, m) pairs, sorted by angle.

    Roots of the characteristic polynomial are searched among the
    ord(A)-th roots of unity, with multiplicity. None when A has no
    finite order below cap.
    """
    order = mat_order(A, cap)
    if order is None:
        return None
    poly = charpoly(A)
    m = math.lcm(A.n, order)
    found = []
    for k in range(order):
        z = root_of_unity(k, order).promote(m)
        while len(poly) > 1 and _poly_eval(poly, z).is_zero():
            g = math.gcd(k, order)
            found.append((k // g, order // g) if k else (0, 1))
            poly = _deflate(poly, z)
    if len(poly) != 1:
        raise ArithmeticError("characteristic polynomial did not split over the expected roots of unity")
    return found
