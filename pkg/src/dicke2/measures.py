"""
Spin squeezing and entanglement of two-atom Dicke states.

Two squeezing parameters are evaluated along the axes n1, n2 orthogonal to
the mean spin (total spin S = 1):

* Kitagawa-Ueda      xi_S = (2/S) Var(S_n)
* spectroscopic      xi_R = 2 S Var(S_n) / <S_n3>**2 = xi_S / U**2

Entanglement is measured by ``E = max(0, -2 * lambda_min)`` where
``lambda_min`` is the smallest eigenvalue of the partial transpose.  Note this
is twice the usual negativity, so that E = 1 for a Bell state.
"""
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ConsistencyError, PhaseConventionError
from .model import collective_operators, dicke_to_product, expectation
from .numerics import CubicCoefficients, cubic_roots, hermitian_eigen

MEAN_Y_TOL = 1e-8
ZERO_SPIN_TOL = 1e-10
ROUNDOFF_TOL = 1e-14
SPECTRUM_TOL = 1e-9
_IMAG_TOL = 1e-12
_COHERENCE_TOL = 1e-12


@dataclass(frozen=True)
class SpinMoments:
    mean_x: float
    mean_y: float
    mean_z: float
    second_xx: float
    second_yy: float
    second_zz: float
    cross_xz_sym: float

    @property
    def spin_length(self):
        return math.sqrt(self.mean_x**2 + self.mean_y**2 + self.mean_z**2)


def _real_expectation(op, rho):
    value = expectation(op, rho)
    if abs(value.imag) > _IMAG_TOL:
        raise ConsistencyError(
            f"expectation of a Hermitian operator has imaginary part {value.imag:.3e}"
        )
    return value.real


def spin_moments(rho):
    """First moments and symmetrized second moments of the collective spin."""
    ops = collective_operators()
    sx, sy, sz = ops.S_x, ops.S_y, ops.S_z
    mean_y = _real_expectation(sy, rho)
    if abs(mean_y) > MEAN_Y_TOL:
        raise PhaseConventionError(
            f"<S_y> = {mean_y:.3e}: coherences are not real, so the mean spin "
            "does not lie in the x-z plane"
        )
    return SpinMoments(
        mean_x=_real_expectation(sx, rho),
        mean_y=mean_y,
        mean_z=_real_expectation(sz, rho),
        second_xx=_real_expectation(sx @ sx, rho),
        second_yy=_real_expectation(sy @ sy, rho),
        second_zz=_real_expectation(sz @ sz, rho),
        cross_xz_sym=_real_expectation((sx @ sz + sz @ sx) / 2, rho),
    )


@dataclass(frozen=True)
class SqueezingReport:
    """Rotation angle, U and both squeezing parameters along n1 and n2.

    ``xi_r_*`` is ``inf`` (and ``xi_r_unbounded`` set) when the mean spin
    vanishes.
    """

    alpha: float
    u_param: float
    xi_s_n1: float
    xi_s_n2: float
    xi_r_n1: float
    xi_r_n2: float
    xi_r_unbounded: bool = False


def squeezing_parameters(rho):
    mom = spin_moments(rho)
    # Round-off in mean_x must not flip alpha between +pi and -pi.
    mean_x = 0.0 if abs(mom.mean_x) < ROUNDOFF_TOL else mom.mean_x
    alpha = math.atan2(mean_x, mom.mean_z)
    ca, sa = math.cos(alpha), math.sin(alpha)

    # Variances along n1 = (cos a, 0, -sin a) and n2 = y; the mean spin lies
    # along n3 so both components have zero mean.
    var_n1 = (
        mom.second_zz * sa * sa
        + mom.second_xx * ca * ca
        - mom.cross_xz_sym * math.sin(2 * alpha)
    )
    var_n2 = mom.second_yy
    spin = 1.0
    xi_s_n1 = 2 / spin * var_n1
    xi_s_n2 = 2 / spin * var_n2

    m = rho.matrix
    u = (rho.ee - rho.gg) * ca + (m[0, 1] + m[1, 2] + m[1, 0] + m[2, 1]).real * sa / math.sqrt(2)

    if mom.spin_length < ZERO_SPIN_TOL:
        return SqueezingReport(alpha, u, xi_s_n1, xi_s_n2, math.inf, math.inf, True)
    return SqueezingReport(alpha, u, xi_s_n1, xi_s_n2, xi_s_n1 / u**2, xi_s_n2 / u**2)


def partial_transpose(rho4):
    """Transpose the second qubit's indices of a 4x4 two-qubit matrix."""
    r = np.asarray(rho4, dtype=np.complex128).reshape(2, 2, 2, 2)
    return r.transpose(0, 3, 2, 1).reshape(4, 4)


@dataclass(frozen=True)
class SqueezedOnlySpectrum:
    """PT eigenvalues of a state without one-photon coherences."""

    lambda_1_minus: float
    lambda_1_plus: float
    lambda_2_minus: float
    lambda_2_plus: float

    def values(self):
        return np.array(
            [self.lambda_1_minus, self.lambda_1_plus, self.lambda_2_minus, self.lambda_2_plus]
        )


@dataclass(frozen=True)
class CubicSpectrum:
    """PT eigenvalues split into the exchange-antisymmetric one and the three
    symmetric-sector roots of the characteristic cubic."""

    p1: float
    coefficients: CubicCoefficients
    roots: np.ndarray

    def values(self):
        return np.concatenate([[self.p1], self.roots.real])


@dataclass(frozen=True)
class EntanglementReport:
    pt_eigenvalues: np.ndarray
    measure_e: float
    closed_form: Optional[object] = field(default=None)

    @property
    def pt_min_eigenvalue(self):
        return float(self.pt_eigenvalues[0])


def squeezed_only_spectrum(rho):
    ss, eg = rho.ss, abs(rho.eg)
    ee, gg = rho.ee, rho.gg
    root = math.sqrt((ee - gg) ** 2 + ss * ss)
    return SqueezedOnlySpectrum(
        lambda_1_minus=0.5 * ss - eg,
        lambda_1_plus=0.5 * ss + eg,
        lambda_2_minus=0.5 * ((ee + gg) - root),
        lambda_2_plus=0.5 * ((ee + gg) + root),
    )


def pt_cubic(rho):
    """Characteristic cubic of the PT restricted to the exchange-symmetric
    sector, for real coherences.  ``rho_eg`` enters with its sign."""
    ee, ss, gg = rho.ee, rho.ss, rho.gg
    es, sg, eg = rho.es.real, rho.sg.real, rho.eg.real
    c = 0.5 * ss + eg
    det_eg = ee * gg - 0.25 * ss * ss
    return CubicCoefficients(
        a2=-(1 - 0.5 * ss + eg),
        a1=(1 - ss) * c + det_eg - es * es - sg * sg,
        a0=-c * det_eg + gg * es * es + ee * sg * sg - ss * sg * es,
    )


def cubic_spectrum(rho):
    coeffs = pt_cubic(rho)
    return CubicSpectrum(p1=antisymmetric_pt_eigenvalue(rho), coefficients=coeffs, roots=cubic_roots(coeffs))


def closed_form_spectrum(rho):
    """Closed-form PT spectrum, or None when coherences are complex."""
    m = rho.matrix
    if np.max(np.abs(m.imag)) > _COHERENCE_TOL:
        return None
    if abs(rho.es) <= _COHERENCE_TOL and abs(rho.sg) <= _COHERENCE_TOL:
        return squeezed_only_spectrum(rho)
    return cubic_spectrum(rho)


def negativity(rho):
    """Partial-transpose spectrum and the entanglement measure E.

    The numerical spectrum is always cross-checked against the closed form
    when one applies; a mismatch above 1e-9 raises ConsistencyError.
    """
    pt = partial_transpose(dicke_to_product(rho))
    eigvals, _ = hermitian_eigen(pt)
    closed = closed_form_spectrum(rho)
    if closed is not None:
        if isinstance(closed, CubicSpectrum) and np.any(closed.roots.imag != 0):
            raise ConsistencyError(f"PT cubic has complex roots {closed.roots}")
        expected = np.sort(closed.values())
        gap = float(np.max(np.abs(expected - eigvals)))
        if gap > SPECTRUM_TOL:
            raise ConsistencyError(
                f"numerical PT spectrum {eigvals} disagrees with closed form "
                f"{expected} by {gap:.3e}"
            )
    e = max(0.0, -2.0 * float(eigvals[0]))
    return EntanglementReport(pt_eigenvalues=eigvals, measure_e=e, closed_form=closed)


def antisymmetric_pt_eigenvalue(rho):
    """PT eigenvalue on the exchange-antisymmetric vector |eg> - |ge>.

    Equals ``ss/2 - Re(eg)`` for real coherences; this is the eigenvalue that
    ties E to the n2 squeezing parameter.
    """
    return 0.5 * rho.ss - rho.eg.real


@dataclass(frozen=True)
class RelationCheck:
    """``applies`` is True when the negative PT eigenvalue is the antisymmetric
    one, the regime in which E = 1 - xi_S(n2) holds exactly."""

    e: float
    one_minus_xi: float
    gap: float
    applies: bool


def relation_check(rho):
    """Compare E with 1 - xi_S along n2."""
    ent = negativity(rho)
    one_minus_xi = 1.0 - squeezing_parameters(rho).xi_s_n2
    p_anti = antisymmetric_pt_eigenvalue(rho)
    applies = ent.measure_e > 0 and abs(p_anti - ent.pt_min_eigenvalue) <= SPECTRUM_TOL
    return RelationCheck(
        e=ent.measure_e,
        one_minus_xi=one_minus_xi,
        gap=abs(ent.measure_e - one_minus_xi),
        applies=applies,
    )


def analyze(rho):
    """Squeezing and entanglement of one state, in one call."""
    return squeezing_parameters(rho), negativity(rho)
