"""Linearly implicit exponential integrator for the cubic Schroedinger equation.

i u_t + Lap(u) + beta |u|^2 u = 0 on a periodic box, discretized
pseudo-spectrally (the Laplacian is diagonal in Fourier space with symbol
lam). The auxiliary variable q = sqrt(<|u|^4, 1> + C0) quadratizes the
quartic energy term. One step reads

    u' = expD u + Phi gamma * q^{n+1/2},    Phi = i beta tau F^-1 Sigma F,
    gamma = |uhat|^2 uhat / sqrt(<|uhat|^4, 1> + C0),

with uhat the (3 u^n - u^{n-1})/2 extrapolation (u^0 at the first step).
Pairing the update with gamma in both inner-product slots closes a 2x2
linear system for (X, Y) = (<gamma, u'>, <u', gamma>), after which u' is
recovered explicitly and q advances through its midpoint value:

    q^{n+1/2} = q^n + (X + Y)/2 - Re<gamma, u^n>,   q' = 2 q^{n+1/2} - q^n.

The conserved functional (see nls_modified_energy) is
<Lap u, u> + beta/2 q^2 - beta/2 C0, which reduces to the continuous
Hamiltonian integral of (-|grad u|^2 + beta/2 |u|^4) at t = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import SolverError
from .fourier import apply_multipliers
from .grids import ComplexField, GridSpec, sample, spectral_laplacian_eigenvalues
from .tables import NlsTables

# determinant of the 2x2 closure below this (relative) means corrupted tables
_DET_TOL = 1e-14


@dataclass(frozen=True)
class NlsProblem:
    """Cubic Schroedinger equation with nonlinearity strength beta."""

    grid: GridSpec
    beta: float
    u0: Callable
    C0: float = 0.0
    laplacian_symbol: np.ndarray | None = None  # defaults to the spectral symbol


@dataclass(frozen=True, eq=False)
class NlsState:
    """Wave function and auxiliary value at step n.

    q starts positive; the evolved value may pass through zero when C0 = 0
    (only q^2 enters the energy, so the sign is immaterial).
    """

    u: ComplexField
    q: float
    u_prev: ComplexField | None
    n: int
    t: float

    def __post_init__(self):
        if self.u_prev is None and self.n != 0:
            raise ValueError("only the initial state may lack a previous level")


def nls_init(problem: NlsProblem) -> NlsState:
    """Sample u0 and the consistent q(0) = sqrt(<|u0|^4, 1> + C0)."""
    grid = problem.grid
    u0 = sample(grid, problem.u0).astype(np.complex128)
    radicand = grid.cell * float(np.sum(np.abs(u0) ** 4)) + problem.C0
    if radicand <= 0.0:
        raise ValueError(
            f"<|u0|^4, 1> + C0 = {radicand:g} is not positive; increase C0"
        )
    return NlsState(u=ComplexField(grid, u0), q=float(np.sqrt(radicand)),
                    u_prev=None, n=0, t=0.0)


def nls_predictor(state: NlsState) -> ComplexField:
    """Extrapolated half-step value, u^0 at the first step."""
    if state.u_prev is None:
        return state.u
    return ComplexField(state.u.grid, 1.5 * state.u.values - 0.5 * state.u_prev.values)


def nls_step(state: NlsState, tables: NlsTables, problem: NlsProblem) -> NlsState:
    """Advance one step of size tables.tau; returns the new state."""
    grid = problem.grid
    if tables.grid != grid:
        raise ValueError("tables built on a different grid")
    cell = grid.cell
    tau = tables.tau
    u, q = state.u.values, state.q

    uhat = nls_predictor(state).values
    abs2 = np.abs(uhat) ** 2
    s2 = cell * float(np.sum(abs2**2)) + problem.C0
    if s2 <= 0.0:
        raise SolverError(f"<|uhat|^4, 1> + C0 = {s2:g} is not positive")
    s = np.sqrt(s2)
    gamma = (abs2 * uhat) / s

    eu = apply_multipliers(u, tables.expD, grid)
    phi_gamma = 1j * problem.beta * tau * apply_multipliers(gamma, tables.sigma, grid)

    # <a, b> = cell * sum a conj(b); vdot conjugates its first argument
    ip_gamma_u = cell * np.vdot(u, gamma)            # <gamma, u^n>
    b = eu + phi_gamma * (q - ip_gamma_u.real)       # <g,u> + <u,g> = 2 Re<g,u>
    a = cell * np.vdot(phi_gamma, gamma)             # <gamma, Phi gamma>

    # [[1 - a/2, -a/2], [-conj(a)/2, 1 - conj(a)/2]] @ (X, Y) = (<gamma,b>, <b,gamma>)
    det = 1.0 - a.real
    if abs(det) < _DET_TOL * (1.0 + abs(a)):
        raise SolverError(f"2x2 closure is singular (det = {det:g}); tables are corrupted")
    rhs1 = cell * np.vdot(b, gamma)                  # <gamma, b>
    rhs2 = np.conj(rhs1)                             # <b, gamma>
    ac = np.conj(a)
    x = ((1.0 - 0.5 * ac) * rhs1 + 0.5 * a * rhs2) / det
    y = (0.5 * ac * rhs1 + (1.0 - 0.5 * a) * rhs2) / det

    u_new = 0.5 * phi_gamma * (x + y) + b
    q_half = q + 0.5 * (x + y).real - ip_gamma_u.real
    q_new = 2.0 * q_half - q

    return NlsState(u=ComplexField(grid, u_new), q=float(q_new),
                    u_prev=state.u, n=state.n + 1, t=(state.n + 1) * tau)


def nls_kinetic(state: NlsState, problem: NlsProblem) -> float:
    """<Lap u, u> evaluated through the spectral symbol (a real number <= 0)."""
    lam = _symbol(problem)
    du = apply_multipliers(state.u.values, lam.astype(np.complex128), problem.grid)
    return float((problem.grid.cell * np.vdot(state.u.values, du)).real)


def nls_modified_energy(state: NlsState, problem: NlsProblem) -> float:
    """Conserved functional <Lap u, u> + beta/2 q^2 - beta/2 C0.

    The sign convention is fixed so the value at t = 0 equals the discrete
    Hamiltonian <Lap u, u> + beta/2 <|u|^4, 1>; the negated functional is
    conserved too (trivially), but does not reduce to the Hamiltonian.
    """
    return nls_kinetic(state, problem) + 0.5 * problem.beta * (state.q**2 - problem.C0)


def nls_hamiltonian(state: NlsState, problem: NlsProblem) -> float:
    """Discrete Hamiltonian <Lap u, u> + beta/2 <|u|^4, 1> (monitored only)."""
    quartic = problem.grid.cell * float(np.sum(np.abs(state.u.values) ** 4))
    return nls_kinetic(state, problem) + 0.5 * problem.beta * quartic


def _symbol(problem: NlsProblem) -> np.ndarray:
    if problem.laplacian_symbol is not None:
        return problem.laplacian_symbol
    return spectral_laplacian_eigenvalues(problem.grid)
