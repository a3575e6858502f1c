import math

import pytest

from b3congruence.braid import RepSpec, scale_to_modular, tw_construct
from b3congruence.catalog import theorem_a_cases
from b3congruence.closure import enumerate_group, is_closed
from b3congruence.congruence import to_modular_rep
from b3congruence.cyclotomic import zeta
from b3congruence.linalg import CycMatrix, mat_order


def test_identity_group():
    r = enumerate_group([CycMatrix.identity(2)])
    assert r.finite and r.order == 1 and not r.cap_hit


def test_cyclic_group():
    r = enumerate_group([CycMatrix.diag([zeta(4), -zeta(4)])], keep_elements=True)
    assert r.order == 4
    assert is_closed(r.elements, [CycMatrix.diag([zeta(4), -zeta(4)])])


def test_sign_rep_image_regression():
    m = to_modular_rep(tw_construct(RepSpec.parse(2, ["0/1", "1/2"])))
    r = enumerate_group([m.X, m.Y], keep_elements=True)
    assert r.order == 6  # S_3
    assert is_closed(r.elements, [m.X, m.Y])


def test_infinite_group_hits_cap():
    T = CycMatrix.from_rows([[1, 1], [0, 1]])
    r = enumerate_group([T], cap=50)
    assert r.cap_hit and not r.finite and r.order is None


def test_mixed_conductors():
    r = enumerate_group([CycMatrix.diag([zeta(3), 1]), CycMatrix.diag([1, zeta(4)])])
    assert r.order == 12


@pytest.mark.parametrize("case", theorem_a_cases(), ids=lambda c: c.name)
def test_catalog_images_are_finite(case):
    m = to_modular_rep(scale_to_modular(tw_construct(case.spec))[0])
    r = enumerate_group([m.X, m.Y], keep_elements=True)
    assert r.finite and not r.cap_hit
    assert r.order % mat_order(m.X) == 0
    assert r.order % mat_order(m.Y) == 0
    assert is_closed(r.elements, [m.X, m.Y])
    # the order of X in the finite group is the level found by the congruence test
    assert mat_order(m.X) == case.expected_level
    assert math.gcd(r.order, case.expected_level) == case.expected_level
