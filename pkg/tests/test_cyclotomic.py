import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from b3congruence.cyclotomic import (
    CycNum,
    cyclotomic_polynomial,
    divisors,
    euler_phi,
    field,
    mobius,
    root_of_unity,
    set_max_conductor,
    get_max_conductor,
    zeta,
)
from b3congruence.errors import ConductorTooLarge, DivisionByZero


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_div(a, b):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    assert not any(a), "inexact division"
    return q


def mobius_oracle(n):
    """Phi_n = prod_{d | n} (x^d - 1)^mu(n/d), numerator and denominator kept apart."""
    num, den = [1], [1]
    for d in divisors(n):
        mu = mobius(n // d)
        f = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = _poly_mul(num, f)
        elif mu == -1:
            den = _poly_mul(den, f)
    return _poly_div(num, den)


def test_phi12():
    assert str(cyclotomic_polynomial(12)) == "x^4 - x^2 + 1"


@pytest.mark.parametrize("n", range(1, 61))
def test_cyclotomic_polynomial_matches_mobius_product(n):
    p = cyclotomic_polynomial(n)
    assert list(p.coeffs) == mobius_oracle(n)
    assert p.degree == euler_phi(n)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 12, 24, 30])
def test_zeta_is_primitive_root(n):
    z = zeta(n)
    powers = [z ** k for k in range(1, n + 1)]
    assert powers[-1] == 1
    assert all(p != 1 for p in powers[:-1])


def test_sqrt2_from_eighth_roots():
    s = root_of_unity(1, 8) + root_of_unity(7, 8)
    assert s * s == 2


def test_inverse_of_one_plus_zeta5():
    a = 1 + zeta(5)
    assert a * a.inv() == 1
    assert a / a == 1


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        CycNum.rational(0, 5).inv()


def test_as_root_of_unity():
    assert (-zeta(3)).as_root_of_unity() == (5, 6)
    assert CycNum.rational(2).as_root_of_unity() is None
    assert CycNum.rational(1).as_root_of_unity() == (0, 1)
    assert CycNum.rational(-1).as_root_of_unity() == (1, 2)
    assert (1 + zeta(5)).as_root_of_unity() is None


def test_cross_conductor_equality_and_hash():
    a = zeta(3).promote(12)
    assert a == zeta(12) ** 4
    assert zeta(3) == zeta(12) ** 4
    assert hash(zeta(3)) == hash(zeta(12) ** 4)
    assert len({zeta(3), zeta(12) ** 4, zeta(6) ** 2}) == 1


def test_max_conductor_guard():
    old = get_max_conductor()
    try:
        set_max_conductor(30)
        with pytest.raises(ConductorTooLarge):
            field(31)
    finally:
        set_max_conductor(old)


def test_rendering():
    assert str(zeta(8)) == "e(1/8)"
    assert str(CycNum.rational(0, 7)) == "0"
    assert str(root_of_unity(1, 8) + root_of_unity(7, 8)) == "zeta(8) - zeta(8)^3"
    # elements are shown over the smallest field that holds them
    assert str(zeta(6).promote(72) * Fraction(1, 2)) == "1/2*zeta(6)"


# ------------------------------------------------------------ ring axioms


def elements(n):
    phi = euler_phi(n)
    nums = st.lists(st.integers(-9, 9), min_size=phi, max_size=phi)
    return st.builds(lambda num, den: CycNum(n, num, den), nums, st.integers(1, 4))


def _cvalue(a):
    return complex(a)


def _ring_axioms(a, b, c):
    zero = CycNum.rational(0, a.n)
    one = CycNum.rational(1, a.n)
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + zero == a and a * one == a
    assert a + (-a) == zero
    if not a.is_zero():
        assert a * a.inv() == one
    # independent floating-point embedding of the product
    assert cmath.isclose(_cvalue(a * b), _cvalue(a) * _cvalue(b), rel_tol=1e-9, abs_tol=1e-9)


@settings(max_examples=1000)
@given(elements(5), elements(5), elements(5))
def test_ring_axioms_conductor_5(a, b, c):
    _ring_axioms(a, b, c)


@settings(max_examples=1000)
@given(elements(8), elements(8), elements(8))
def test_ring_axioms_conductor_8(a, b, c):
    _ring_axioms(a, b, c)


@settings(max_examples=1000)
@given(elements(12), elements(12), elements(12))
def test_ring_axioms_conductor_12(a, b, c):
    _ring_axioms(a, b, c)


@settings(max_examples=1000)
@given(elements(24), elements(24), elements(24))
def test_ring_axioms_conductor_24(a, b, c):
    _ring_axioms(a, b, c)


@settings(max_examples=200)
@given(elements(12), elements(12), st.sampled_from([24, 36, 60]))
def test_promote_is_a_ring_homomorphism(a, b, m):
    assert (a * b).promote(m) == a.promote(m) * b.promote(m)
    assert (a + b).promote(m) == a.promote(m) + b.promote(m)
    assert a.promote(m).demote() == a


@settings(max_examples=200)
@given(elements(24), elements(24))
def test_conjugation(a, b):
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()
    assert cmath.isclose(complex(a.conj()), complex(a).conjugate(), abs_tol=1e-9)


@given(st.integers(min_value=-100, max_value=100), st.sampled_from([1, 2, 3, 5, 8, 9, 12, 18, 24]))
def test_root_of_unity_roundtrip(k, n):
    z = root_of_unity(k, n)
    kk, m = z.as_root_of_unity()
    assert Fraction(kk, m) == Fraction(k % n, n)
    assert cmath.isclose(complex(z), cmath.exp(2j * cmath.pi * k / n), abs_tol=1e-12)
