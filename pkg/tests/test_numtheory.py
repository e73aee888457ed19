from __future__ import annotations

import math

import pytest
import sympy

from ringsums.numtheory import classical_mobius, classical_ramanujan, euler_phi, factorize


@pytest.mark.parametrize("n", range(1, 200))
def test_against_sympy(n):
    assert euler_phi(n) == sympy.totient(n)
    assert classical_mobius(n) == sympy.mobius(n)
    assert factorize(n) == sympy.factorint(n)


@pytest.mark.parametrize("n", range(1, 40))
def test_ramanujan_against_cosine_sum(n):
    for a in range(n):
        direct = sum(math.cos(2 * math.pi * k * a / n) for k in range(1, n + 1) if math.gcd(k, n) == 1)
        assert classical_ramanujan(n, a) == round(direct)


def test_known_values():
    assert [classical_ramanujan(12, a) for a in range(12)] == [4, 0, 2, 0, -2, 0, -4, 0, -2, 0, 2, 0]
    assert classical_ramanujan(1, 0) == 1


def test_rejects_nonpositive():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        classical_ramanujan(0, 1)
