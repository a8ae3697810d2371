import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expsav.fourier import (SpectralDiagonal, apply_diagonal, dft_forward, dft_inverse,
                            has_conjugate_symmetry)
from expsav.grids import (ComplexField, Field, fd_laplacian_eigenvalues, make_grid,
                          norm_l2, spectral_laplacian_eigenvalues)

import oracles


def test_constant_field_is_mode_zero():
    g = make_grid(0, 1, 8, 1)
    coeffs = dft_forward(ComplexField(g, np.full(8, 3.0 + 0j)))
    assert coeffs[0] == pytest.approx(24.0)  # unnormalized forward transform
    np.testing.assert_allclose(coeffs[1:], 0.0, atol=1e-13)


def test_roundtrip_random():
    rng = np.random.default_rng(1)
    g = make_grid(0, 1, 64, 1)
    u = rng.normal(size=64) + 1j * rng.normal(size=64)
    back = dft_inverse(dft_forward(ComplexField(g, u)), g)
    np.testing.assert_allclose(back.values, u, atol=1e-13)


def test_matches_naive_dft():
    rng = np.random.default_rng(2)
    g = make_grid(0, 1, 8, 1)
    u = rng.normal(size=8) + 1j * rng.normal(size=8)
    np.testing.assert_allclose(dft_forward(ComplexField(g, u)), oracles.naive_dft(u),
                               atol=1e-12)


def test_roundtrip_2d():
    rng = np.random.default_rng(3)
    g = make_grid(0, 1, 8, 2)
    u = rng.normal(size=64) + 1j * rng.normal(size=64)
    back = dft_inverse(dft_forward(ComplexField(g, u)), g)
    np.testing.assert_allclose(back.values, u, atol=1e-13)


def test_apply_identity():
    rng = np.random.default_rng(4)
    g = make_grid(0, 1, 16, 1)
    u = Field(g, rng.normal(size=16))
    out = apply_diagonal(u, SpectralDiagonal(g, np.ones(16)))
    assert isinstance(out, Field)
    np.testing.assert_allclose(out.values, u.values, atol=1e-13)


@pytest.mark.parametrize("dim,n", [(1, 16), (2, 4)])
def test_apply_fd_multipliers_is_stencil(dim, n):
    rng = np.random.default_rng(5)
    g = make_grid(-1, 1, n, dim)
    u = Field(g, rng.normal(size=g.size))
    out = apply_diagonal(u, SpectralDiagonal(g, fd_laplacian_eigenvalues(g)))
    assert isinstance(out, Field)
    dense = oracles.dense_fd_laplacian(g)
    np.testing.assert_allclose(out.values, dense @ u.values, atol=1e-11)


def test_apply_spectral_on_sine():
    g = make_grid(0, 2 * np.pi, 32, 1)
    x = g.axis_nodes(0)
    u = Field(g, np.sin(x))
    out = apply_diagonal(u, SpectralDiagonal(g, spectral_laplacian_eigenvalues(g)))
    np.testing.assert_allclose(out.values, -np.sin(x), atol=1e-12)


def test_apply_nonsymmetric_multipliers_gives_complex():
    g = make_grid(0, 1, 8, 1)
    mult = np.zeros(8, dtype=complex)
    mult[1] = 1.0  # projects onto one mode: not conjugate-symmetric
    assert not has_conjugate_symmetry(mult, g)
    out = apply_diagonal(Field(g, np.cos(2 * np.pi * g.axis_nodes(0))), SpectralDiagonal(g, mult))
    assert isinstance(out, ComplexField)


def test_parseval():
    rng = np.random.default_rng(6)
    g = make_grid(-2, 2, 32, 1)
    u = ComplexField(g, rng.normal(size=32) + 1j * rng.normal(size=32))
    node_sq = norm_l2(u) ** 2
    coeffs = dft_forward(u)
    mode_sq = g.cell * np.sum(np.abs(coeffs) ** 2) / g.size
    assert node_sq == pytest.approx(mode_sq, rel=1e-12)


@settings(deadline=None, max_examples=25)
@given(seed=st.integers(0, 2**31 - 1))
def test_apply_is_linear(seed):
    rng = np.random.default_rng(seed)
    g = make_grid(0, 1, 16, 1)
    d = SpectralDiagonal(g, rng.normal(size=16) + 1j * rng.normal(size=16))
    u = rng.normal(size=16) + 1j * rng.normal(size=16)
    v = rng.normal(size=16) + 1j * rng.normal(size=16)
    alpha, beta = rng.normal(), rng.normal()
    lhs = apply_diagonal(ComplexField(g, alpha * u + beta * v), d).values
    rhs = (alpha * apply_diagonal(ComplexField(g, u), d).values
           + beta * apply_diagonal(ComplexField(g, v), d).values)
    scale = np.max(np.abs(rhs)) + 1.0
    np.testing.assert_allclose(lhs, rhs, atol=1e-12 * scale)


@settings(deadline=None, max_examples=25)
@given(seed=st.integers(0, 2**31 - 1))
def test_apply_composes(seed):
    rng = np.random.default_rng(seed)
    g = make_grid(0, 1, 16, 1)
    m1 = rng.normal(size=16) + 1j * rng.normal(size=16)
    m2 = rng.normal(size=16) + 1j * rng.normal(size=16)
    u = ComplexField(g, rng.normal(size=16) + 1j * rng.normal(size=16))
    once = apply_diagonal(u, SpectralDiagonal(g, m1 * m2)).values
    twice = apply_diagonal(apply_diagonal(u, SpectralDiagonal(g, m2)), SpectralDiagonal(g, m1)).values
    scale = np.max(np.abs(once)) + 1.0
    np.testing.assert_allclose(twice, once, atol=1e-12 * scale)


def test_apply_grid_mismatch():
    g1, g2 = make_grid(0, 1, 8, 1), make_grid(0, 1, 16, 1)
    with pytest.raises(ValueError):
        apply_diagonal(Field(g1, np.zeros(8)), SpectralDiagonal(g2, np.ones(16)))
