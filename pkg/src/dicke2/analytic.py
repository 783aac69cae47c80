"""
Closed-form steady states and the two-photon eigenstate decomposition.

These are the oracles for the numerical solver and the fast path for the
squeezed-only and laser-only sweeps.  There is no closed form when both the
laser and the squeezed field are on.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, NotApplicableError, ParameterBoundError
from .model import DickeState

_COHERENCE_TOL = 1e-12


def _real_m(m_corr):
    if np.imag(m_corr) != 0:
        raise InvalidInputError(
            f"closed forms assume a real two-photon correlation, got M = {m_corr}"
        )
    return float(np.real(m_corr))


def steady_squeezed(n_ph, m_corr):
    """Steady state under squeezed vacuum alone (no laser).

    ``rho_eg`` is real and carries the sign of ``m_corr``; the populations
    depend on ``|M|`` only.
    """
    m = _real_m(m_corr)
    if n_ph < 0:
        raise ParameterBoundError(f"n_ph must be >= 0, got {n_ph}")
    if m * m > n_ph * (n_ph + 1) * (1 + 1e-12) + 1e-12:
        raise ParameterBoundError(f"M^2 = {m * m:.6g} exceeds N(N+1) = {n_ph * (n_ph + 1):.6g}")
    # Written in terms of d = N(N+1) - M^2 >= 0, which avoids the cancellation
    # between the N^3 terms near the pure-state boundary.
    d = max(n_ph * (n_ph + 1) - m * m, 0.0)
    two_n1 = 2 * n_ph + 1
    bracket = 1 + 3 * d
    ee = (n_ph + (2 * n_ph - 1) * d) / (two_n1 * bracket)
    ss = d / bracket
    eg = m / (two_n1 * bracket)
    return DickeState.from_elements(ee=ee, ss=ss, eg=eg)


def steady_coherent(omega, gamma=1.0):
    """Steady state under resonant laser driving alone (no squeezed field)."""
    if omega < 0:
        raise ParameterBoundError(f"omega must be >= 0, got {omega}")
    o2 = omega * omega
    g2 = gamma * gamma
    d = 3 * o2 * o2 + 4 * g2 * o2 + 4 * g2 * g2
    r2 = math.sqrt(2)
    return DickeState.from_elements(
        ee=o2 * o2 / d,
        ss=(o2 * o2 + 2 * g2 * o2) / d,
        sg=r2 * gamma * omega * (o2 + 2 * g2) / d,
        es=r2 * gamma * omega * o2 / d,
        eg=2 * g2 * o2 / d,
    )


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral split of the E/G block of a squeezed-only state.

    ``psi_plus`` and ``psi_minus`` are unit vectors of amplitudes on
    ``(|e>, |g>)``; ``pi_plus >= pi_minus`` are their populations and
    ``residual_population`` is the weight left on ``|s>``.
    """

    psi_plus: np.ndarray
    psi_minus: np.ndarray
    pi_plus: float
    pi_minus: float
    residual_population: float

    def reconstruct(self):
        """Rebuild the 3x3 density matrix from the decomposition."""
        m = np.zeros((3, 3), dtype=np.complex128)
        idx = [0, 2]
        for pop, psi in ((self.pi_plus, self.psi_plus), (self.pi_minus, self.psi_minus)):
            m[np.ix_(idx, idx)] += pop * np.outer(psi, np.conj(psi))
        m[1, 1] = self.residual_population
        return m

    def as_dicke_vector(self, which="plus"):
        psi = self.psi_plus if which == "plus" else self.psi_minus
        return np.array([psi[0], 0.0, psi[1]], dtype=np.complex128)


def _block_eigvec(ee, gg, eg, pi):
    # Two candidate null vectors of (block - pi); pick the better conditioned.
    from_e_row = np.array([eg, pi - ee], dtype=np.complex128)
    from_g_row = np.array([pi - gg, np.conj(eg)], dtype=np.complex128)
    v = from_e_row if np.linalg.norm(from_e_row) >= np.linalg.norm(from_g_row) else from_g_row
    return v / np.linalg.norm(v)


def entangled_eigenstates(rho):
    """Diagonalize the E/G block of a state without one-photon coherences."""
    if abs(rho.es) > _COHERENCE_TOL or abs(rho.sg) > _COHERENCE_TOL:
        raise NotApplicableError(
            "state has one-photon coherences; use numerics.hermitian_eigen instead"
        )
    ee, gg, eg = rho.ee, rho.gg, rho.eg
    half_sum = 0.5 * (gg + ee)
    half_split = 0.5 * math.sqrt((gg - ee) ** 2 + 4 * abs(eg) ** 2)
    pi_plus = half_sum + half_split
    pi_minus = max(half_sum - half_split, 0.0)

    if abs(eg) == 0.0:
        # Already diagonal; G wins ties.
        e_vec = np.array([1.0, 0.0], dtype=np.complex128)
        g_vec = np.array([0.0, 1.0], dtype=np.complex128)
        psi_plus, psi_minus = (g_vec, e_vec) if gg >= ee else (e_vec, g_vec)
    else:
        psi_plus = _block_eigvec(ee, gg, eg, pi_plus)
        # Orthogonal complement in two dimensions.
        psi_minus = np.array([-np.conj(psi_plus[1]), np.conj(psi_plus[0])])
    psi_plus = _fix_phase(psi_plus)
    psi_minus = _fix_phase(psi_minus)
    return EigenDecomposition(psi_plus, psi_minus, pi_plus, pi_minus, rho.ss)


def _fix_phase(v):
    k = int(np.argmax(np.abs(v)))
    return v * (np.conj(v[k]) / abs(v[k]))


def pure_squeezed_vector(n_ph):
    """Amplitudes on ``(|e>, |g>)`` of the pure state reached for ``M^2 = N(N+1)``."""
    norm = math.sqrt(2 * n_ph + 1)
    return np.array([math.sqrt(n_ph), math.sqrt(n_ph + 1)], dtype=np.complex128) / norm
