import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expsav.fourier import apply_multipliers
from expsav.grids import fd_laplacian_eigenvalues, make_grid, spectral_laplacian_eigenvalues
from expsav.tables import build_kg_tables, build_nls_tables, sin_over_x, versine_over_x2

import oracles


def table_as_dense(table: np.ndarray, grid) -> np.ndarray:
    """Assemble the dense node-space matrix of one diagonal block."""
    cols = [apply_multipliers(e.astype(complex), table, grid).real
            for e in np.eye(grid.size)]
    return np.column_stack(cols)


def test_zero_mode_entries():
    g = make_grid(0, 1, 2, 1)
    t = build_kg_tables(g, np.array([0.0, -1.0]), omega=1.0, tau=0.1)
    assert (t.e11[0], t.e12[0], t.e21[0], t.e22[0]) == (1.0, 0.1, 0.0, 1.0)
    assert t.p11[0] == 1.0
    assert t.p12[0] == pytest.approx(0.05)
    assert t.p21[0] == 0.0
    assert t.p22[0] == 1.0


def test_omega_zero_gives_shear_block():
    g = make_grid(0, 1, 4, 1)
    lam = fd_laplacian_eigenvalues(g)
    t = build_kg_tables(g, lam, omega=0.0, tau=0.7)
    np.testing.assert_allclose(t.e11, 1.0)
    np.testing.assert_allclose(t.e12, 0.7)
    np.testing.assert_allclose(t.e21, 0.0)


def test_rejects_positive_eigenvalues():
    g = make_grid(0, 1, 2, 1)
    with pytest.raises(ValueError):
        build_kg_tables(g, np.array([0.0, 1.0]), omega=1.0, tau=0.1)


def test_exp_matches_dense_matrix_exponential():
    g = make_grid(0, 8, 8, 1)
    tau, omega = 0.3, 1.0
    t = build_kg_tables(g, fd_laplacian_eigenvalues(g), omega, tau)
    (e11, e12, e21, e22), (p11, p12, p21, p22) = oracles.dense_wave_operators(g, omega, tau)
    for table, dense in [(t.e11, e11), (t.e12, e12), (t.e21, e21), (t.e22, e22)]:
        np.testing.assert_allclose(table_as_dense(table, g), dense, atol=1e-11)
    for table, dense in [(t.p11, p11), (t.p12, p12), (t.p21, p21), (t.p22, p22)]:
        np.testing.assert_allclose(table_as_dense(table, g), dense, atol=1e-10)


def test_determinant_one_blocks():
    g = make_grid(-5, 5, 64, 1)
    t = build_kg_tables(g, fd_laplacian_eigenvalues(g), omega=2.3, tau=0.17)
    det = t.e11 * t.e22 - t.e12 * t.e21
    np.testing.assert_allclose(det, 1.0, atol=1e-13)


def test_series_branch_consistency():
    # direct formulas at x = 1e-3 vs the series expressions used below 1e-4
    x = np.array([1e-3])
    x2 = x * x
    series_s1 = 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0))
    series_c2 = 0.5 * (1.0 - x2 / 12.0 * (1.0 - x2 / 30.0 * (1.0 - x2 / 56.0)))
    assert sin_over_x(x)[0] == pytest.approx(series_s1[0], rel=1e-10)
    assert versine_over_x2(x)[0] == pytest.approx(series_c2[0], rel=1e-10)


def test_flow_property_squares():
    g = make_grid(0, 1, 16, 1)
    lam = fd_laplacian_eigenvalues(g)
    t1 = build_kg_tables(g, lam, omega=1.4, tau=0.05)
    t2 = build_kg_tables(g, lam, omega=1.4, tau=0.10)
    e11 = t1.e11 * t1.e11 + t1.e12 * t1.e21
    e12 = t1.e11 * t1.e12 + t1.e12 * t1.e22
    e21 = t1.e21 * t1.e11 + t1.e22 * t1.e21
    e22 = t1.e21 * t1.e12 + t1.e22 * t1.e22
    np.testing.assert_allclose(e11, t2.e11, atol=1e-12)
    np.testing.assert_allclose(e12, t2.e12, atol=1e-12)
    np.testing.assert_allclose(e21, t2.e21, atol=1e-12 * np.max(np.abs(t2.e21) + 1))
    np.testing.assert_allclose(e22, t2.e22, atol=1e-12)


def test_nls_zero_mode():
    g = make_grid(0, 1, 2, 1)
    t = build_nls_tables(g, np.array([0.0, -4.0]), tau=0.3)
    assert t.expD[0] == 1.0
    assert t.sigma[0] == 1.0


def test_nls_half_turn():
    # tau * lam = pi: expD = -1, sigma = (-1 - 1)/(i pi) = 2i/pi
    g = make_grid(0, 1, 2, 1)
    t = build_nls_tables(g, np.array([np.pi, 0.0]), tau=1.0)
    assert t.expD[0] == pytest.approx(-1.0)
    assert t.sigma[0] == pytest.approx(2j / np.pi)


def test_nls_unit_modulus():
    g = make_grid(0, 2 * np.pi, 32, 1)
    t = build_nls_tables(g, spectral_laplacian_eigenvalues(g), tau=0.07)
    np.testing.assert_allclose(np.abs(t.expD), 1.0, atol=1e-14)
    assert np.all(np.isfinite(t.sigma))


def test_nls_sigma_matches_quadrature():
    g = make_grid(0, 2 * np.pi, 8, 1)
    lam = spectral_laplacian_eigenvalues(g)
    tau = 0.2
    t = build_nls_tables(g, lam, tau)
    _, sigma_dense = oracles.dense_schroedinger_operators(g, lam, tau)
    cols = [apply_multipliers(e.astype(complex), t.sigma, g) for e in np.eye(8)]
    np.testing.assert_allclose(np.column_stack(cols), sigma_dense, atol=1e-11)


@settings(deadline=None, max_examples=30)
@given(tau=st.floats(1e-3, 1.0), omega=st.floats(0.0, 4.0), seed=st.integers(0, 2**31 - 1))
def test_determinant_one_property(tau, omega, seed):
    rng = np.random.default_rng(seed)
    g = make_grid(0, 1, 8, 1)
    lam = -np.abs(rng.normal(size=8)) * 100.0
    t = build_kg_tables(g, lam, omega, tau)
    det = t.e11 * t.e22 - t.e12 * t.e21
    np.testing.assert_allclose(det, 1.0, atol=1e-13)
