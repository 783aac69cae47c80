"""
Two-atom Dicke space.

The symmetric (triplet) states of two two-level atoms are ordered by
decreasing energy::

    E = |e1 e2>,   S = (|e1 g2> + |g1 e2>)/sqrt(2),   G = |g1 g2>

The singlet is decoupled by the collective dynamics and is left out.  The
product basis is ordered ``|e1e2>, |e1g2>, |g1e2>, |g1g2>``.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidInputError
from .numerics import adjoint, as_matrix, eigenvalues_hermitian, hermiticity_defect

E, S, G = 0, 1, 2
DIM = 3
STATE_TOL = 1e-12

# Columns are the Dicke states expressed in the product basis.
EMBEDDING = np.array(
    [
        [1.0, 0.0, 0.0],
        [0.0, 1 / np.sqrt(2), 0.0],
        [0.0, 1 / np.sqrt(2), 0.0],
        [0.0, 0.0, 1.0],
    ],
    dtype=np.complex128,
)


def basis_vector(level):
    v = np.zeros(DIM, dtype=np.complex128)
    v[level] = 1.0
    return v


@dataclass(frozen=True)
class CollectiveOperators:
    S_plus: np.ndarray
    S_minus: np.ndarray
    S_x: np.ndarray
    S_y: np.ndarray
    S_z: np.ndarray


@lru_cache(maxsize=None)
def _operators():
    sp = np.zeros((DIM, DIM), dtype=np.complex128)
    sp[E, S] = np.sqrt(2)
    sp[S, G] = np.sqrt(2)
    sm = adjoint(sp)
    ops = CollectiveOperators(
        S_plus=sp,
        S_minus=sm,
        S_x=(sp + sm) / 2,
        S_y=(sp - sm) / 2j,
        S_z=np.diag([1.0, 0.0, -1.0]).astype(np.complex128),
    )
    for m in vars(ops).values():
        m.setflags(write=False)
    return ops


def collective_operators():
    """Collective spin-1 operators S+, S-, Sx, Sy, Sz in the (E, S, G) basis."""
    return _operators()


class DickeState:
    """Validated 3x3 density matrix in the (E, S, G) basis.

    Element accessors follow the usual naming, e.g. ``rho.eg`` is <E|rho|G>.
    """

    __slots__ = ("_m",)

    def __init__(self, matrix, tol=STATE_TOL):
        m = as_matrix(matrix)
        if m.shape != (DIM, DIM):
            raise InvalidInputError(f"Dicke state must be 3x3, got {m.shape}")
        defect, (i, j) = hermiticity_defect(m)
        if defect > tol:
            raise InvalidInputError(
                f"density matrix not Hermitian at ({i}, {j}): defect {defect:.3e}"
            )
        tr = np.trace(m)
        if abs(tr - 1.0) > tol:
            raise InvalidInputError(f"density matrix trace is {tr.real:.15g}, not 1")
        lam = eigenvalues_hermitian(m)[0]
        if lam < -tol:
            raise InvalidInputError(
                f"density matrix not positive semidefinite: eigenvalue {lam:.3e}"
            )
        m.setflags(write=False)
        self._m = m

    @classmethod
    def from_elements(cls, ee, ss, eg=0.0, es=0.0, sg=0.0, gg=None):
        """Build a state from its upper-triangle elements; ``gg`` defaults to
        ``1 - ee - ss``."""
        if gg is None:
            gg = 1.0 - ee - ss
        m = np.array(
            [[ee, es, eg], [np.conj(es), ss, sg], [np.conj(eg), np.conj(sg), gg]],
            dtype=np.complex128,
        )
        return cls(m)

    @classmethod
    def pure(cls, amplitudes):
        psi = np.asarray(amplitudes, dtype=np.complex128)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, np.conj(psi)))

    @property
    def matrix(self):
        return self._m

    def __getitem__(self, idx):
        return self._m[idx]

    ee = property(lambda self: self._m[E, E].real)
    ss = property(lambda self: self._m[S, S].real)
    gg = property(lambda self: self._m[G, G].real)
    es = property(lambda self: self._m[E, S])
    eg = property(lambda self: self._m[E, G])
    sg = property(lambda self: self._m[S, G])

    def purity(self):
        return float(np.real(np.trace(self._m @ self._m)))

    def to_product(self):
        return dicke_to_product(self)

    def __repr__(self):
        return f"DickeState({np.array2string(self._m, precision=6)})"


def ground_state():
    return DickeState.pure(basis_vector(G))


def dicke_to_product(rho):
    """Embed a Dicke-basis state into the 4x4 product basis.

    ``S`` maps to the symmetric combination, so the central block carries
    ``ss/2`` and the S-coherences pick up a factor ``1/sqrt(2)``.
    """
    m = rho.matrix if isinstance(rho, DickeState) else as_matrix(rho)
    if m.shape != (DIM, DIM):
        raise InvalidInputError(f"expected a 3x3 matrix, got {m.shape}")
    # Written out entry by entry so the S-block is exactly ss/2.
    r = 1 / np.sqrt(2)
    out = np.empty((4, 4), dtype=np.complex128)
    src = (E, S, S, G)
    weight = (1.0, r, r, 1.0)
    for i in range(4):
        for j in range(4):
            if src[i] == S and src[j] == S:
                out[i, j] = m[S, S] / 2
            else:
                out[i, j] = weight[i] * weight[j] * m[src[i], src[j]]
    return out


def check_product_state(rho4, tol=STATE_TOL):
    """Validate a 4x4 two-qubit state living on the symmetric subspace."""
    m = as_matrix(rho4)
    if m.shape != (4, 4):
        raise InvalidInputError(f"product state must be 4x4, got {m.shape}")
    defect, (i, j) = hermiticity_defect(m)
    if defect > tol:
        raise InvalidInputError(f"product state not Hermitian at ({i}, {j})")
    if abs(np.trace(m) - 1.0) > tol:
        raise InvalidInputError("product state trace is not 1")
    if eigenvalues_hermitian(m)[0] < -tol:
        raise InvalidInputError("product state not positive semidefinite")
    singlet = np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2)
    leak = np.max(np.abs(m @ singlet))
    if leak > tol:
        raise InvalidInputError(f"product state has singlet weight {leak:.3e}")
    return m


def expectation(op, rho):
    """tr(op rho)."""
    o = as_matrix(op)
    m = rho.matrix if isinstance(rho, DickeState) else as_matrix(rho)
    if o.shape != m.shape:
        raise InvalidInputError(
            f"operator shape {o.shape} does not match state shape {m.shape}"
        )
    return complex(np.trace(o @ m))
