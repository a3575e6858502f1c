import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from b3congruence.cyclotomic import CycNum, euler_phi, root_of_unity, zeta
from b3congruence.errors import NotTriangular, SingularMatrix
from b3congruence.linalg import (
    CycMatrix,
    charpoly,
    commutator,
    diag_spectrum,
    is_identity,
    is_scalar,
    mat_apply,
    mat_inverse,
    mat_order,
    mat_order_by_iteration,
    mat_pow,
    root_of_unity_spectrum,
    vec_mat,
)


def to_complex(A: CycMatrix) -> np.ndarray:
    return np.array([[complex(x) for x in row] for row in A.rows()])


def matrices(n, d):
    phi = euler_phi(n)
    entry = st.builds(lambda num, den: CycNum(n, num, den),
                      st.lists(st.integers(-4, 4), min_size=phi, max_size=phi), st.integers(1, 3))
    return st.lists(st.lists(entry, min_size=d, max_size=d), min_size=d, max_size=d).map(CycMatrix.from_rows)


@settings(max_examples=100)
@given(matrices(12, 3), matrices(12, 3))
def test_product_matches_complex_oracle(A, B):
    assert np.allclose(to_complex(A @ B), to_complex(A) @ to_complex(B), atol=1e-8)


@settings(max_examples=100)
@given(matrices(8, 2), matrices(8, 2))
def test_determinant_is_multiplicative(A, B):
    assert (A @ B).det() == A.det() * B.det()


@settings(max_examples=100)
@given(matrices(5, 3))
def test_inverse(A):
    if A.det().is_zero():
        with pytest.raises(SingularMatrix):
            mat_inverse(A)
        return
    I = CycMatrix.identity(3, A.n)
    assert A @ mat_inverse(A) == I
    assert mat_inverse(A) @ A == I


def test_mixed_conductors_promote():
    A = CycMatrix.diag([zeta(3), 1])
    B = CycMatrix.diag([zeta(4), 1])
    C = A @ B
    assert C.n == 12
    assert C[0, 0] == root_of_unity(7, 12)


def test_large_entries_switch_to_python_ints():
    A = CycMatrix.from_rows([[2 ** 40, 1], [0, 1]])
    B = A @ A @ A
    assert B[0, 0] == CycNum.rational(2 ** 120)


def test_orders():
    assert mat_order(CycMatrix.identity(2)) == 1
    assert mat_order(CycMatrix.diag([zeta(4), -zeta(4)])) == 4
    T = CycMatrix.from_rows([[1, 1], [0, 1]])
    assert mat_order(T, cap=50) is None
    S = CycMatrix.from_rows([[0, -1], [1, 0]])
    assert mat_order(S) == 4
    A = CycMatrix.from_rows([[zeta(3), 1], [0, zeta(5)]])
    assert mat_order(A) == mat_order_by_iteration(A) == 15


def test_pow_and_commutator():
    A = CycMatrix.from_rows([[1, 1], [0, 1]])
    B = CycMatrix.from_rows([[1, 0], [1, 1]])
    assert mat_pow(A, -3) == CycMatrix.from_rows([[1, -3], [0, 1]])
    assert is_identity(commutator(A, A))
    assert commutator(A, B) == CycMatrix.from_rows([[3, -1], [1, 0]])


def test_commutator_definition():
    A = CycMatrix.from_rows([[1, 1], [0, 1]])
    B = CycMatrix.from_rows([[1, 0], [1, 1]])
    assert commutator(A, B) == A @ B @ mat_inverse(A) @ mat_inverse(B)


def test_scalar_and_spectrum():
    assert is_scalar(CycMatrix.scalar(zeta(6), 3)) == zeta(6)
    assert is_scalar(CycMatrix.diag([1, 2])) is None
    with pytest.raises(NotTriangular):
        diag_spectrum(CycMatrix.from_rows([[0, 1], [1, 0]]))


def test_row_and_column_actions():
    A = CycMatrix.from_rows([[1, 2], [3, 4]])
    assert mat_apply(A, (1, 0)) == (1, 3)
    assert vec_mat((1, 0), A) == (1, 2)


def test_charpoly_and_spectrum_against_numpy():
    A = CycMatrix.from_rows([[0, -1, 0], [1, 0, 0], [0, 0, zeta(3)]])
    cp = charpoly(A)
    assert cp[-1] == 1 and cp[0] == -A.det()
    spec = root_of_unity_spectrum(A)
    assert sorted(spec) == sorted([(1, 4), (3, 4), (1, 3)])
    ev = np.linalg.eigvals(to_complex(A))
    for k, n in spec:
        assert np.min(np.abs(ev - np.exp(2j * np.pi * k / n))) < 1e-9


def test_spectrum_with_multiplicity():
    assert root_of_unity_spectrum(CycMatrix.scalar(-1, 3)) == [(1, 2)] * 3
