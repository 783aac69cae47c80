"""
Master equation for two atoms driven by a resonant laser and a broadband
squeezed vacuum, in the interaction picture (hbar = 1)::

    drho/dt = i[H, rho]
              - G(N+1)/2 (S+S- rho + rho S+S- - 2 S- rho S+)
              - G N/2    (S-S+ rho + rho S-S+ - 2 S+ rho S-)
              + G M/2    (S+S+ rho + rho S+S+ - 2 S+ rho S+)
              + G M*/2   (S-S- rho + rho S-S- - 2 S- rho S-)

with ``H = -i (Omega/2)(S+ - S-)``.  Detunings are zero.  The Liouvillian acts
on column-stacked 3x3 density matrices.
"""
import math
import numbers
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, IntegrationError, ParameterBoundError
from .model import DIM, DickeState, collective_operators
from .numerics import devectorize, null_vector, vectorize

DEFAULT_DT = 1e-3
DRIFT_TOL = 1e-9
RESIDUAL_TOL = 1e-10
_BOUND_SLACK = 1e-12


@dataclass(frozen=True)
class SystemParams:
    """Drive and reservoir parameters.

    ``omega`` and all rates share the unit of ``gamma`` (1 by default).  With
    real ``m_corr`` the sign encodes the squeezing phase (0 or pi).  Setting
    ``classical`` additionally enforces ``|M| <= N``.
    """

    omega: float = 0.0
    gamma: float = 1.0
    n_ph: float = 0.0
    m_corr: complex = 0.0
    classical: bool = False

    def __post_init__(self):
        for name in ("omega", "gamma", "n_ph"):
            value = getattr(self, name)
            if not (isinstance(value, numbers.Real) and math.isfinite(value)):
                raise ParameterBoundError(f"{name} must be a finite real, got {value!r}")
        if not np.isfinite(self.m_corr):
            raise ParameterBoundError("m_corr must be finite")
        if self.omega < 0:
            raise ParameterBoundError(f"omega must be >= 0, got {self.omega}")
        if self.gamma <= 0:
            raise ParameterBoundError(f"gamma must be > 0, got {self.gamma}")
        if self.n_ph < 0:
            raise ParameterBoundError(f"n_ph must be >= 0, got {self.n_ph}")
        bound = self.n_ph * (self.n_ph + 1)
        if abs(self.m_corr) ** 2 > bound * (1 + _BOUND_SLACK) + _BOUND_SLACK:
            raise ParameterBoundError(
                f"|M|^2 = {abs(self.m_corr) ** 2:.6g} exceeds N(N+1) = {bound:.6g}"
            )
        if self.classical and abs(self.m_corr) > self.n_ph * (1 + _BOUND_SLACK):
            raise ParameterBoundError(
                f"classical squeezing requires |M| <= N, got |M| = {abs(self.m_corr):.6g}"
            )

    @property
    def m_is_real(self):
        return np.imag(self.m_corr) == 0


def _spre(a):
    return np.kron(np.eye(DIM), a)


def _spost(b):
    return np.kron(b.T, np.eye(DIM))


def _sprepost(a, b):
    """Superoperator of rho -> a rho b."""
    return np.kron(b.T, a)


def _dissipator_like(jump_left, jump_right):
    # rho -> J_l J_r rho + rho J_l J_r - 2 J_r rho J_l
    prod = jump_left @ jump_right
    return _spre(prod) + _spost(prod) - 2 * _sprepost(jump_right, jump_left)


def build_liouvillian(p):
    """9x9 generator ``L`` with ``vec(drho/dt) = L @ vec(rho)``."""
    ops = collective_operators()
    sp, sm = ops.S_plus, ops.S_minus
    h = -0.5j * p.omega * (sp - sm)
    g = p.gamma
    m = complex(p.m_corr)

    L = 1j * (_spre(h) - _spost(h))
    L = L - 0.5 * g * (p.n_ph + 1) * _dissipator_like(sp, sm)
    L = L - 0.5 * g * p.n_ph * _dissipator_like(sm, sp)
    # S+S+ rho + rho S+S+ - 2 S+ rho S+, and its conjugate partner
    L = L + 0.5 * g * m * _dissipator_like(sp, sp)
    L = L + 0.5 * g * np.conj(m) * _dissipator_like(sm, sm)
    return L


def steady_state(L):
    """Trace-normalized, Hermitized null vector of ``L`` as a DickeState."""
    v = null_vector(L)
    rho = devectorize(v, DIM)
    rho = rho / np.trace(rho)
    rho = 0.5 * (rho + rho.conj().T)
    residual = np.max(np.abs(L @ vectorize(rho)))
    if residual > RESIDUAL_TOL:
        raise ConsistencyError(f"steady-state residual {residual:.3e} exceeds {RESIDUAL_TOL}")
    return DickeState(rho)


def solve_steady_state(p):
    return steady_state(build_liouvillian(p))


def rk4_step_matrix(L, h):
    """One classical RK4 step for the linear system y' = L y, as a matrix."""
    a = h * L
    eye = np.eye(L.shape[0], dtype=np.complex128)
    a2 = a @ a
    a3 = a2 @ a
    return eye + a + a2 / 2 + a3 / 6 + a3 @ a / 24


def propagate(rho0, p, t_final, dt=DEFAULT_DT):
    """Integrate the master equation from ``rho0`` up to ``t_final``.

    Fixed-step RK4; the step is shrunk slightly if needed so that an integer
    number of steps lands exactly on ``t_final``.  Trace or positivity drift
    above 1e-9 at any step raises IntegrationError.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if t_final < 0:
        raise ValueError(f"t_final must be >= 0, got {t_final}")
    y = vectorize(rho0.matrix if isinstance(rho0, DickeState) else rho0)
    n_steps = math.ceil(t_final / dt - 1e-9)
    if n_steps == 0:
        return DickeState(devectorize(y, DIM))
    step = rk4_step_matrix(build_liouvillian(p), t_final / n_steps)

    traj = np.empty((n_steps, y.size), dtype=np.complex128)
    trace_idx = [i * (DIM + 1) for i in range(DIM)]
    for k in range(n_steps):
        y = step @ y
        drift = abs(y[trace_idx].sum() - 1.0)
        if drift > DRIFT_TOL:
            raise IntegrationError(
                f"trace drift {drift:.3e} at step {k + 1}; try a smaller dt than {dt}"
            )
        traj[k] = y

    mats = traj.reshape(n_steps, DIM, DIM).transpose(0, 2, 1)
    herm = np.max(np.abs(mats - mats.conj().transpose(0, 2, 1)), axis=(1, 2))
    lowest = np.linalg.eigvalsh(0.5 * (mats + mats.conj().transpose(0, 2, 1)))[:, 0]
    bad = np.flatnonzero((herm > DRIFT_TOL) | (lowest < -DRIFT_TOL))
    if bad.size:
        k = bad[0]
        raise IntegrationError(
            f"state left the physical set at step {k + 1} (hermiticity defect "
            f"{herm[k]:.3e}, lowest eigenvalue {lowest[k]:.3e}); try a smaller dt than {dt}"
        )

    rho = devectorize(y, DIM)
    rho = 0.5 * (rho + rho.conj().T)
    return DickeState(rho / np.trace(rho))
