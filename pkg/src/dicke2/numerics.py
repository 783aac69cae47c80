"""
Small dense complex linear algebra.

Matrices are plain ``numpy`` arrays of dtype complex128.  Everything here is
sized for the two-atom problem (at most 16x16), so clarity wins over speed.

Vectorization is column-stacking throughout the package:
``vec(A @ X @ B) == kron(B.T, A) @ vec(X)``.
"""
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateSteadyStateError,
    InvalidInputError,
    NoSteadyStateError,
)

MAX_DIM = 16
HERMITIAN_TOL = 1e-12


def as_matrix(m, square=True):
    """Return ``m`` as a complex128 2-D array after validating it."""
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2:
        raise InvalidInputError(f"expected a 2-D matrix, got shape {a.shape}")
    rows, cols = a.shape
    if rows > MAX_DIM or cols > MAX_DIM:
        raise InvalidInputError(f"matrix {rows}x{cols} exceeds {MAX_DIM}x{MAX_DIM}")
    if square and rows != cols:
        raise InvalidInputError(f"matrix must be square, got {rows}x{cols}")
    if not np.all(np.isfinite(a)):
        i, j = np.argwhere(~np.isfinite(a))[0]
        raise InvalidInputError(f"non-finite entry at ({i}, {j})")
    return a


def adjoint(m):
    return np.conj(np.transpose(m))


def outer(u, v):
    """|u><v|"""
    return np.outer(u, np.conj(v))


def vectorize(m):
    return np.asarray(m, dtype=np.complex128).reshape(-1, order="F")


def devectorize(v, dim=None):
    v = np.asarray(v, dtype=np.complex128)
    if dim is None:
        dim = int(round(np.sqrt(v.size)))
    if dim * dim != v.size:
        raise InvalidInputError(f"vector of length {v.size} is not a square matrix")
    return v.reshape((dim, dim), order="F")


def hermiticity_defect(m):
    """Largest |m - m^dagger| entry and its position."""
    d = np.abs(m - adjoint(m))
    i, j = np.unravel_index(np.argmax(d), d.shape)
    return float(d[i, j]), (int(i), int(j))


def check_hermitian(m, tol=HERMITIAN_TOL):
    a = as_matrix(m)
    defect, (i, j) = hermiticity_defect(a)
    if defect > tol:
        raise InvalidInputError(
            f"matrix is not Hermitian: entry ({i}, {j}) differs from the conjugate "
            f"of ({j}, {i}) by {defect:.3e} (tolerance {tol:.1e})"
        )
    return a


def _jacobi_rotate(a, v, p, q):
    # Zero a[p, q] with a unitary acting on the (p, q) plane.
    b = a[p, q]
    mod = abs(b)
    phase = b / mod
    app = a[p, p].real
    aqq = a[q, q].real
    tau = (aqq - app) / (2.0 * mod)
    t = np.copysign(1.0, tau) / (abs(tau) + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    # J = diag(1, conj(phase)) @ [[c, s], [-s, c]]
    rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
    idx = [p, q]
    a[:, idx] = a[:, idx] @ rot
    a[idx, :] = adjoint(rot) @ a[idx, :]
    a[p, q] = a[q, p] = 0.0
    a[p, p] = app - t * mod
    a[q, q] = aqq + t * mod
    v[:, idx] = v[:, idx] @ rot


def hermitian_eigen(m, max_sweeps=60):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues ascending and the
    eigenvectors stored as orthonormal columns.
    """
    a = check_hermitian(m)
    a = 0.5 * (a + adjoint(a))
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    if n == 0:
        return np.zeros(0), v
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n), v

    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.abs(np.triu(a, 1)) ** 2))
        if off <= 1e-17 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > 1e-300:
                    _jacobi_rotate(a, v, p, q)
    else:
        raise InvalidInputError("Jacobi iteration did not converge")

    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def eigenvalues_hermitian(m):
    return hermitian_eigen(m)[0]


@dataclass(frozen=True)
class CubicCoefficients:
    """Monic cubic p**3 + a2 p**2 + a1 p + a0."""

    a2: float
    a1: float
    a0: float

    def __post_init__(self):
        for name in ("a2", "a1", "a0"):
            if not np.isfinite(getattr(self, name)):
                raise InvalidInputError(f"cubic coefficient {name} is not finite")

    def __call__(self, p):
        return ((p + self.a2) * p + self.a1) * p + self.a0

    def derivative(self, p):
        return (3.0 * p + 2.0 * self.a2) * p + self.a1


def cubic_roots(c):
    """Roots of a monic cubic from the eigenvalues of its companion matrix.

    Each root gets at most a few Newton corrections, kept only if they reduce
    the residual.  Roots with ``|imag| < 1e-9`` are returned as exactly real.
    The result is sorted by real part.
    """
    companion = np.array(
        [[-c.a2, -c.a1, -c.a0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], dtype=float
    )
    roots = np.linalg.eigvals(companion).astype(np.complex128)

    polished = []
    for r in roots:
        res = abs(c(r))
        for _ in range(3):
            d = c.derivative(r)
            if d == 0:
                break
            with np.errstate(all="ignore"):
                trial = r - c(r) / d
                trial_res = abs(c(trial))
            if not trial_res < res:  # also rejects NaN
                break
            r, res = trial, trial_res
        if abs(r.imag) < 1e-9:
            r = complex(r.real, 0.0)
        polished.append(r)

    polished.sort(key=lambda z: (z.real, z.imag))
    return np.array(polished, dtype=np.complex128)


def null_vector(m, tol=1e-10):
    """Unit vector spanning the one-dimensional null space of ``m``.

    ``tol`` is relative to the largest singular value.  The phase is fixed so
    the largest-magnitude entry is real and positive.
    """
    a = as_matrix(m)
    _, s, vh = np.linalg.svd(a)
    smax = s[0] if s.size else 0.0
    cutoff = tol * smax
    small = np.flatnonzero(s <= cutoff)
    if small.size == 0:
        raise NoSteadyStateError(
            f"no singular value below {cutoff:.3e}; smallest is {s[-1]:.3e}"
        )
    if small.size > 1:
        gap = s[-2] / smax if smax else 0.0
        raise DegenerateSteadyStateError(
            f"{small.size} singular values below {cutoff:.3e}; "
            f"second-smallest relative singular value is {gap:.3e}",
            gap=gap,
        )
    v = np.conj(vh[-1])
    k = int(np.argmax(np.abs(v)))
    v = v * (np.conj(v[k]) / abs(v[k]))
    v[k] = abs(v[k])
    return v / np.linalg.norm(v)
