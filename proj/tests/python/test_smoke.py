import math

import numpy as np
import pytest

import ntype


def test_resonant_evolution_reaches_entangled_state():
    p = ntype.SystemParams.symmetric(5.0)
    times, states = ntype.evolve(p, ntype.DensityMatrix.bare_state(1), t_end=20.0, sample_every=1000)
    assert states.shape == (21, 4, 4)
    assert times[-1] == 20.0
    np.testing.assert_allclose(np.trace(states, axis1=1, axis2=2), 1.0, atol=1e-9)
    final = ntype.DensityMatrix(states[-1])
    assert abs(ntype.dem(final) - 1.36) < 0.02


def test_steady_state_routes_agree():
    p = ntype.SystemParams.with_rabi(3.0, 2.0, 4.0, 0.5)
    a = ntype.steady_state_linear(p)
    b = ntype.steady_state_evolve(p, ntype.DensityMatrix.bare_state(1))
    np.testing.assert_allclose(a.matrix, b.matrix, atol=1e-6)
    np.testing.assert_allclose(ntype.rhs(p, a), 0.0, atol=1e-10)


def test_degenerate_cases_raise():
    with pytest.raises(ntype.DegenerateSteadyState):
        ntype.steady_state_linear(ntype.SystemParams())
    with pytest.raises(ntype.DegenerateDressedBasis):
        ntype.dressed_basis(0.0, 5.0)
    with pytest.raises(ValueError):
        ntype.SystemParams.symmetric(-1.0).validate()
    with pytest.raises(ntype.InvalidState):
        ntype.DensityMatrix(np.diag([1.0, 1.0, 0.0, 0.0]).astype(complex))


def test_dressed_basis_diagonalizes_hamiltonian():
    b = ntype.dressed_basis(5.0, 5.0)
    u = b.unitary
    h = ntype.hamiltonian_resonant(ntype.SystemParams.symmetric(5.0))
    d = u.conj().T @ h @ u
    np.testing.assert_allclose(d - np.diag(np.diag(d)), 0.0, atol=1e-9)
    np.testing.assert_allclose(np.diag(d).real, b.energies, atol=1e-9)
    assert b.gram_residual() < 1e-10


def test_analytic_and_numeric_dem():
    values, valid = ntype.analytic_eigenvalues(ntype.analytic_coherence(5.0))
    assert valid and sum(values) == 1.0
    assert ntype.analytic_dem(0.5) is None
    assert 1.38 < ntype.analytic_dem(50.0) < math.log(4.0)
    rows = ntype.compare([0.5, 5.0, 10.0])
    assert rows[0]["analytic_valid"] is False and rows[0]["abs_diff"] is None
    assert rows[1]["abs_diff"] < 0.02


def test_sweep_grid():
    dem = ntype.sweep([0.0, 5.0], [-1.0, 0.0, 1.0], threads=2)
    assert dem.shape == (2, 3)
    np.testing.assert_array_equal(dem[0], 0.0)
    assert abs(dem[1, 1] - 1.36) < 0.02
