from __future__ import annotations

import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringsums import (
    NotASubgroup,
    PremiseNotMet,
    Side,
    SideMismatch,
    build_ring,
    character_sum,
    cyclic_subgroup,
    enumerate_lattice,
    largest_ideal_in,
    make_matrix_ring,
    make_product,
    make_zmod,
    perp,
    psi,
    ramanujan_bruteforce,
    ramanujan_closed_form,
    ramanujan_right,
    ramanujan_theorem,
    ramanujan_twosided,
)
from ringsums.characters import Branch, conductor, f_alpha, g_alpha, mobius_sum, pivot_ideal
from ringsums.lattice import bracket_class
from ringsums.specfile import load_corpus


def psi_float(R, a, x):
    return cmath.exp(2j * math.pi * sum(ai * xi / m for ai, xi, m in zip(R.decode(a), R.decode(x), R.moduli)))


def test_psi_matches_float_definition():
    R = make_product([make_zmod(2), make_zmod(3), make_zmod(4)])
    assert conductor(R) == 12
    for a in range(0, R.order, 5):
        for x in R.elements():
            assert abs(psi(R, a, x).to_complex() - psi_float(R, a, x)) < 1e-9


def test_psi_is_additive_character():
    R = make_matrix_ring(make_zmod(3), 2)
    for a in (1, 17, 40):
        for x, y in [(2, 5), (33, 71), (80, 80)]:
            assert psi(R, a, R.add(x, y)) == psi(R, a, x) * psi(R, a, y)


def test_example_value_in_z2xz3():
    R = make_product([make_zmod(2), make_zmod(3)])
    assert str(psi(R, (1, 1), (1, 2))) == "w (w=w6)"


def test_r12_of_four():
    R = make_zmod(12)
    lat = enumerate_lattice(R, Side.LEFT)
    assert ramanujan_bruteforce(R, 4, 1) == -2
    assert ramanujan_closed_form(lat, 4, 1).value == -2
    res = ramanujan_theorem(lat, 4, 1)
    assert res.value == -2 and res.branch is Branch.SUBSET_SUM and res.K.size == 4


def test_alpha_zero_gives_bracket_size():
    for name, spec in load_corpus():
        if name not in ("M2(Z2)", "T2(Z2)", "Z36"):
            continue
        R = build_ring(spec)
        lat = enumerate_lattice(R, Side.LEFT)
        for x in R.elements():
            n = len(bracket_class(R, x, Side.LEFT))
            assert ramanujan_bruteforce(R, 0, x) == n
            res = ramanujan_theorem(lat, 0, x)
            assert res.value == n and res.branch is Branch.FULL


def test_cyclic_subgroup_and_perp():
    R = make_product([make_zmod(5), make_zmod(5), make_zmod(25)])
    assert len(cyclic_subgroup(R, (1, 0, 5))) == 5
    assert len(cyclic_subgroup(R, (1, 1, 4))) == 25
    P = perp(R, cyclic_subgroup(R, (1, 0, 5)))
    assert len(P) == 125 and R.index((1, 1, 4)) in P
    with pytest.raises(NotASubgroup):
        perp(R, [R.index((1, 0, 0))])


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(2, 6), min_size=1, max_size=2), st.data())
def test_perp_duality(ns, data):
    R = make_product([make_zmod(n) for n in ns])
    a = data.draw(st.integers(0, R.order - 1))
    S = cyclic_subgroup(R, a)
    P = perp(R, S)
    assert len(P) * len(S) == R.order
    assert set(perp(R, P.elements).elements) == set(S)


def test_f_and_g_alpha():
    R = make_zmod(12)
    lat = enumerate_lattice(R, Side.LEFT)
    for I in lat:
        for a in R.elements():
            assert f_alpha(lat, a, I) in (0, I.size)
    J = lat.principal(1)
    assert g_alpha(lat, 4, J) == ramanujan_bruteforce(R, 4, 1)


def test_largest_ideal_inside_subgroup():
    R = make_matrix_ring(make_zmod(2), 2)
    lat = enumerate_lattice(R, Side.LEFT)
    for x in R.elements():
        for a in R.elements():
            K = pivot_ideal(lat, a, x)
            H = lat.principal(x).mask
            assert K.mask & ~H == 0
    assert largest_ideal_in(lat, range(R.order)) == lat.top


def test_summation_identity_matches_bruteforce():
    R = make_matrix_ring(make_zmod(2), 2)
    lat = enumerate_lattice(R, Side.LEFT)
    for x in R.elements():
        for a in R.elements():
            assert mobius_sum(lat, a, x) == ramanujan_bruteforce(R, a, x)


def test_premise_not_met_for_unit_in_m2z2():
    R = make_matrix_ring(make_zmod(2), 2)
    lat = enumerate_lattice(R, Side.LEFT)
    with pytest.raises(PremiseNotMet):
        ramanujan_closed_form(lat, 3, R.one)
    res = ramanujan_theorem(lat, 3, R.one)
    assert not res.minimal_premise
    assert res.value == ramanujan_bruteforce(R, 3, R.one)


def test_side_checks():
    R = make_matrix_ring(make_zmod(2), 2)
    left = enumerate_lattice(R, Side.LEFT)
    right = enumerate_lattice(R, Side.RIGHT)
    with pytest.raises(SideMismatch):
        ramanujan_theorem(right, 0, 1)
    with pytest.raises(SideMismatch):
        ramanujan_right(left, 0, 1)
    with pytest.raises(SideMismatch):
        ramanujan_twosided(left, 0, 1)


def test_single_character_value_is_not_rational():
    R = make_product([make_zmod(5)])
    v = character_sum(R, 1, [1])
    assert not v.is_integer


@pytest.mark.parametrize("side", list(Side))
def test_m2z3_all_sides(side):
    R = make_matrix_ring(make_zmod(3), 2)
    lat = enumerate_lattice(R, side)
    fn = {Side.LEFT: ramanujan_theorem, Side.RIGHT: ramanujan_right, Side.TWOSIDED: ramanujan_twosided}[side]
    for x in range(0, R.order, 4):
        for a in range(0, R.order, 3):
            assert fn(lat, a, x).value == ramanujan_bruteforce(R, a, x, side)
