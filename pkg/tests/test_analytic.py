import math

import numpy as np
import pytest

from dicke2.analytic import (
    entangled_eigenstates,
    pure_squeezed_vector,
    steady_coherent,
    steady_squeezed,
)
from dicke2.dynamics import SystemParams, build_liouvillian
from dicke2.errors import InvalidInputError, NotApplicableError, ParameterBoundError
from dicke2.model import DickeState
from dicke2.numerics import vectorize

R2 = math.sqrt(2)
N_GRID = np.linspace(0.0, 5.0, 26)


def test_vacuum():
    assert steady_squeezed(0.0, 0.0).gg == 1.0


def test_classical_quarter():
    rho = steady_squeezed(0.25, 0.25)
    assert (rho.ee, rho.ss, rho.eg.real, rho.gg) == pytest.approx(
        (1 / 21, 1 / 7, 2 / 21, 17 / 21), abs=1e-15
    )


def test_quantum_one_is_pure():
    rho = steady_squeezed(1.0, R2)
    assert (rho.ee, rho.ss, rho.eg.real) == pytest.approx((1 / 3, 0, R2 / 3), abs=1e-15)
    assert rho.purity() == pytest.approx(1.0, abs=1e-14)


def test_negative_m_flips_only_the_coherence():
    a, b = steady_squeezed(0.6, 0.5), steady_squeezed(0.6, -0.5)
    assert (a.ee, a.ss, a.gg) == (b.ee, b.ss, b.gg)
    assert a.eg == -b.eg


def test_squeezed_errors():
    with pytest.raises(ParameterBoundError):
        steady_squeezed(1.0, 2.0)
    with pytest.raises(ParameterBoundError):
        steady_squeezed(-1.0, 0.0)
    with pytest.raises(InvalidInputError, match="real"):
        steady_squeezed(1.0, 0.5j)


@pytest.mark.parametrize("n", N_GRID)
def test_quantum_purity(n):
    assert steady_squeezed(n, math.sqrt(n * (n + 1))).purity() == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("n", N_GRID)
def test_squeezed_is_annihilated(n):
    for m in (n, -n, math.sqrt(n * (n + 1)), 0.3 * n):
        L = build_liouvillian(SystemParams(0.0, 1.0, n, m))
        assert np.max(np.abs(L @ vectorize(steady_squeezed(n, m).matrix))) < 1e-10


@pytest.mark.parametrize("om", np.linspace(0.0, 6.0, 25))
def test_coherent_is_annihilated(om):
    L = build_liouvillian(SystemParams(om))
    assert np.max(np.abs(L @ vectorize(steady_coherent(om).matrix))) < 1e-10


def test_coherent_examples():
    assert steady_coherent(0.0).gg == 1.0
    rho = steady_coherent(1.0)
    assert (rho.ee, rho.ss, rho.sg.real, rho.es.real, rho.eg.real) == pytest.approx(
        (1 / 11, 3 / 11, 3 * R2 / 11, R2 / 11, 2 / 11), abs=1e-15
    )


def test_coherent_strong_drive_limit():
    rho = steady_coherent(1e5)
    assert (rho.ee, rho.ss, rho.gg) == pytest.approx((1 / 3, 1 / 3, 1 / 3), abs=1e-9)
    assert max(abs(rho.es), abs(rho.sg), abs(rho.eg)) < 1e-4


def test_coherent_gamma_scaling():
    assert np.allclose(steady_coherent(2.0, 2.0).matrix, steady_coherent(1.0).matrix, atol=1e-15)
    with pytest.raises(ParameterBoundError):
        steady_coherent(-1.0)


def test_eigenstates_diagonal():
    rho = DickeState.from_elements(ee=0.2, ss=0.1, eg=0.0)
    dec = entangled_eigenstates(rho)
    assert (dec.pi_plus, dec.pi_minus) == pytest.approx((0.7, 0.2))
    assert np.array_equal(dec.psi_plus, [0, 1])


def test_eigenstates_tie_prefers_ground():
    dec = entangled_eigenstates(DickeState.from_elements(ee=0.25, ss=0.5, eg=0.0))
    assert np.array_equal(dec.psi_plus, [0, 1])


def test_eigenstates_quantum_one():
    dec = entangled_eigenstates(steady_squeezed(1.0, R2))
    assert dec.pi_plus == pytest.approx(1.0, abs=1e-12)
    assert dec.pi_minus == pytest.approx(0.0, abs=1e-12)
    assert np.allclose(dec.psi_plus, np.array([1, R2]) / math.sqrt(3), atol=1e-12)


def test_eigenstates_classical_quarter():
    dec = entangled_eigenstates(steady_squeezed(0.25, 0.25))
    assert (dec.pi_plus, dec.pi_minus) == pytest.approx((0.8212, 0.0359), abs=1e-4)
    assert dec.residual_population == pytest.approx(1 / 7)


@pytest.mark.parametrize("n", N_GRID[1:])
def test_eigenstate_invariants(n):
    for m in (n, -n, math.sqrt(n * (n + 1)), -math.sqrt(n * (n + 1))):
        rho = steady_squeezed(n, m)
        dec = entangled_eigenstates(rho)
        assert dec.pi_plus + dec.pi_minus + dec.residual_population == pytest.approx(1, abs=1e-12)
        assert dec.pi_plus >= dec.pi_minus >= 0
        assert abs(np.vdot(dec.psi_plus, dec.psi_minus)) < 1e-10
        assert np.linalg.norm(dec.psi_plus) == pytest.approx(1.0)
        assert np.max(np.abs(dec.reconstruct() - rho.matrix)) < 1e-10


@pytest.mark.parametrize("n", N_GRID[1:])
def test_pure_state_vector(n):
    dec = entangled_eigenstates(steady_squeezed(n, math.sqrt(n * (n + 1))))
    assert abs(dec.pi_minus) < 1e-10
    assert np.max(np.abs(dec.psi_plus - pure_squeezed_vector(n))) < 1e-10


def test_eigenstates_rejects_one_photon_coherences():
    with pytest.raises(NotApplicableError, match="hermitian_eigen"):
        entangled_eigenstates(steady_coherent(1.0))
