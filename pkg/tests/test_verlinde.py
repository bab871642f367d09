from itertools import product

import pytest

from sl2fusion.compositions import Composition
from sl2fusion.errors import UsageError
from sl2fusion.verlinde import (VerlindeElement, fusion_multiply, pi_D, verlinde_coefficients,
                                verprop_failures)

pi = VerlindeElement.basis


def test_products_from_identities():
    assert pi(2, 2) * pi(2, 2) == pi(1, 2)
    assert pi(2, 3) * pi(2, 3) == pi(1, 3) + pi(3, 3)
    assert pi(2, 3) * pi(3, 3) == pi(2, 3)


def test_mismatched_size_rejected():
    with pytest.raises(UsageError):
        fusion_multiply(pi(1, 2), pi(1, 3))


def test_pi_D_examples():
    assert pi_D(Composition.zero(2)) == VerlindeElement.one(3)
    assert verlinde_coefficients(Composition((0, 2, 0))) == (1, 0, 1)
    assert verlinde_coefficients(Composition((0, 1, 1))) == (0, 1, 0)
    assert verlinde_coefficients(Composition((0, 0, 1))) == (0, 0, 1)
    assert verlinde_coefficients(Composition((0, 3, 0))) == (0, 2, 0)
    assert verlinde_coefficients(Composition.zero(4)) == (1, 0, 0, 0, 0)


@pytest.mark.parametrize("m", range(1, 9))
def test_identities_exhaustive(m):
    assert verprop_failures(m) == []


@pytest.mark.parametrize("m", range(1, 7))
def test_commutative_associative(m):
    basis = [pi(i, m) for i in range(1, m + 1)]
    for x, y in product(basis, repeat=2):
        assert x * y == y * x
        assert all(c >= 0 for c in (x * y).coeffs)
    for x, y, z in product(basis, repeat=3):
        assert (x * y) * z == x * (y * z)


@pytest.mark.parametrize("m", range(1, 7))
def test_unit_and_su2_truncation(m):
    for i in range(1, m + 1):
        assert VerlindeElement.one(m) * pi(i, m) == pi(i, m)
    # products stay inside the level: total dimension-like count never negative
    for i, j in product(range(1, m + 1), repeat=2):
        prod = pi(i, m) * pi(j, m)
        assert sum(prod.coeffs) == min(i, j, m + 1 - i, m + 1 - j)
