from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringsums import (
    ConvergenceFailure,
    Limits,
    LoopsForbidden,
    MismatchReport,
    NotSymmetricSet,
    Side,
    SizeLimitExceeded,
    bracket_graph,
    build_cayley,
    compare_spectra,
    enumerate_lattice,
    make_matrix_ring,
    make_product,
    make_zmod,
    spectrum_babai,
    spectrum_numeric,
    spectrum_unitary,
    units,
)
from ringsums.jacobi import jacobi_eigenvalues, off_norm


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 25), st.integers(0, 2**32 - 1))
def test_jacobi_matches_numpy(n, seed):
    rng = np.random.default_rng(seed)
    B = rng.normal(size=(n, n))
    A = B + B.T
    got = jacobi_eigenvalues(A)
    want = np.sort(np.linalg.eigvalsh(A))[::-1]
    assert np.allclose(got, want, atol=1e-9)


def test_jacobi_repeated_eigenvalues():
    A = np.kron(np.eye(3), np.ones((3, 3)) - np.eye(3))  # three triangles
    assert np.allclose(jacobi_eigenvalues(A), [2, 2, 2, -1, -1, -1, -1, -1, -1])


def test_jacobi_input_checks():
    with pytest.raises(ValueError):
        jacobi_eigenvalues(np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(ConvergenceFailure):
        jacobi_eigenvalues(np.array([[0.0, 1.0], [1.0, 0.0]]), max_sweeps=0)
    assert off_norm(np.diag([1.0, 2.0])) == 0.0


def test_unitary_cycle_z4():
    R = make_zmod(4)
    G = build_cayley(R, units(R))
    rep = spectrum_babai(G)
    assert [(int(str(v)), m) for v, m in rep.entries] == [(2, 1), (0, 2), (-2, 1)]


def test_complete_graph_z5():
    G = bracket_graph(make_zmod(5), 1)
    rep = spectrum_babai(G)
    assert [(str(v), m) for v, m in rep.entries] == [("4", 1), ("-1", 4)]


def test_flagship_spectrum():
    R = make_matrix_ring(make_zmod(2), 2)
    G = build_cayley(R, units(R))
    rep = spectrum_babai(G)
    reference = np.round(np.linalg.eigvalsh(G.adjacency().astype(float))).astype(int)
    vals, counts = np.unique(reference, return_counts=True)
    assert {(str(v), m) for v, m in rep.entries} == {(str(v), int(c)) for v, c in zip(vals, counts)}
    assert rep.integral and all(rep.invariants().values())


def test_non_integral_spectrum_is_exact():
    # C5 as Cay(Z5, {1, 4}) has eigenvalues 2 cos(2 pi k / 5)
    R = make_zmod(5)
    rep = spectrum_babai(build_cayley(R, [1, 4]))
    assert not rep.integral
    assert all(rep.invariants().values())
    want = sorted((2 * np.cos(2 * np.pi * k / 5) for k in range(5)), reverse=True)
    assert np.allclose(rep.real_values(), want)
    compare_spectra(rep, spectrum_numeric(build_cayley(R, [1, 4])))


@pytest.mark.parametrize("side", list(Side))
def test_bracket_graph_routes_agree(side):
    R = make_matrix_ring(make_zmod(2), 2)
    lat = enumerate_lattice(R, side)
    for x in range(1, R.order):
        G = bracket_graph(R, x, side)
        compare_spectra(spectrum_babai(G), spectrum_unitary(lat, x))


def test_connection_set_validation():
    R = make_zmod(6)
    with pytest.raises(LoopsForbidden):
        build_cayley(R, [0, 1, 5])
    with pytest.raises(NotSymmetricSet):
        build_cayley(R, [1, 2, 5])
    G = build_cayley(R, [1, 5])
    assert G.adjacent(0, 1) and not G.adjacent(0, 2)


def test_dense_limit():
    R = make_zmod(20, limits=Limits(dense_limit=10))
    with pytest.raises(SizeLimitExceeded):
        build_cayley(R, [1, 19]).adjacency()


def test_mismatch_reports_every_difference():
    R = make_product([make_zmod(3), make_zmod(3)])
    a = spectrum_babai(build_cayley(R, units(R)))
    b = spectrum_babai(build_cayley(R, [1, 2]))
    with pytest.raises(MismatchReport) as info:
        compare_spectra(a, b)
    assert len(info.value.mismatches) >= 1
    numeric = spectrum_numeric(build_cayley(R, units(R)))
    numeric[0] += 0.5
    numeric[-1] -= 0.5
    with pytest.raises(MismatchReport) as info:
        compare_spectra(a, numeric)
    assert len(info.value.mismatches) == 2


def test_report_serialization():
    rep = spectrum_babai(build_cayley(make_zmod(4), [1, 3]))
    doc = rep.to_json()
    assert doc["integral"] and doc["order"] == 4
    assert [e["multiplicity"] for e in doc["entries"]] == [1, 2, 1]
    assert rep.csv_rows() == [("2", 1, True), ("0", 2, True), ("-2", 1, True)]
