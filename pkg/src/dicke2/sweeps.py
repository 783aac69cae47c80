"""
Named parameter sweeps, entanglement-threshold search and the self-check.

A scenario fixes everything but one swept variable: the squeezed-field
photon number ``N`` for the two squeezed-vacuum scenarios, the Rabi frequency
``Omega`` (in units of Gamma) for the laser-driven ones.
"""
import math
from dataclasses import astuple, dataclass, fields
from typing import Optional

import numpy as np

from . import analytic
from .dynamics import SystemParams, build_liouvillian, propagate, solve_steady_state, steady_state
from .errors import ConsistencyError, InvalidInputError
from .measures import (
    CubicSpectrum,
    SqueezedOnlySpectrum,
    negativity,
    relation_check,
    squeezing_parameters,
)
from .model import DickeState, collective_operators, ground_state
from .numerics import CubicCoefficients, cubic_roots, hermitian_eigen

KINDS = ("classical-squeezed", "quantum-squeezed", "coherent", "combined")
M_MODES = ("classical", "quantum", "custom")
SOLVERS = ("analytic", "numeric", "both")
AGREEMENT_TOL = 1e-9


def correlation_for(n_ph, m_mode, m_sign=1, m_value=None):
    """Two-photon correlation M for a given photon number and mode."""
    if m_mode == "classical":
        return m_sign * n_ph
    if m_mode == "quantum":
        return m_sign * math.sqrt(n_ph * (n_ph + 1))
    if m_mode == "custom":
        if m_value is None:
            raise InvalidInputError("m_mode 'custom' needs an explicit m_value")
        return float(m_value)
    raise InvalidInputError(f"unknown m_mode {m_mode!r}; expected one of {M_MODES}")


@dataclass(frozen=True)
class Scenario:
    """One of the four driving configurations.

    ``n_ph``, ``m_mode``, ``m_sign`` and ``m_value`` are only read by the
    ``combined`` kind (``m_sign`` also flips M for the squeezed kinds).
    """

    kind: str
    n_ph: float = 0.0
    m_mode: str = "quantum"
    m_sign: int = 1
    m_value: Optional[float] = None
    gamma: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInputError(f"unknown scenario {self.kind!r}; expected one of {KINDS}")
        if self.m_sign not in (1, -1):
            raise InvalidInputError(f"m_sign must be +1 or -1, got {self.m_sign}")

    @property
    def sweep_variable(self):
        return "n_ph" if self.kind.endswith("-squeezed") else "omega"

    @property
    def has_analytic(self):
        return self.kind != "combined"

    def params_at(self, x):
        x = float(x)
        if self.kind == "classical-squeezed":
            return SystemParams(0.0, self.gamma, x, self.m_sign * x, classical=True)
        if self.kind == "quantum-squeezed":
            return SystemParams(0.0, self.gamma, x, correlation_for(x, "quantum", self.m_sign))
        if self.kind == "coherent":
            return SystemParams(x * self.gamma, self.gamma, 0.0, 0.0)
        m = correlation_for(self.n_ph, self.m_mode, self.m_sign, self.m_value)
        return SystemParams(x * self.gamma, self.gamma, self.n_ph, m,
                            classical=self.m_mode == "classical")

    def numeric_state(self, x):
        return solve_steady_state(self.params_at(x))

    def analytic_state(self, x):
        if not self.has_analytic:
            raise InvalidInputError("the combined scenario has no closed-form steady state")
        p = self.params_at(x)
        if self.kind == "coherent":
            return analytic.steady_coherent(p.omega, p.gamma)
        return analytic.steady_squeezed(p.n_ph, p.m_corr)

    def state(self, x, solver="analytic"):
        return self.analytic_state(x) if solver == "analytic" else self.numeric_state(x)


@dataclass(frozen=True)
class SweepRow:
    param: float
    rho_ee: float
    rho_ss: float
    rho_eg: float
    rho_gg: float
    rho_es: float
    rho_sg: float
    alpha: float
    xi_s_n1: float
    xi_s_n2: float
    xi_r_n1: float
    xi_r_n2: float
    measure_e: float
    pt_min_eigenvalue: float

    @classmethod
    def columns(cls):
        return [f.name for f in fields(cls)]

    def values(self):
        return astuple(self)


def row_for_state(x, rho):
    sq = squeezing_parameters(rho)
    ent = negativity(rho)
    return SweepRow(
        param=float(x),
        rho_ee=float(rho.ee),
        rho_ss=float(rho.ss),
        rho_eg=float(rho.eg.real),
        rho_gg=float(rho.gg),
        rho_es=float(rho.es.real),
        rho_sg=float(rho.sg.real),
        alpha=float(sq.alpha),
        xi_s_n1=float(sq.xi_s_n1),
        xi_s_n2=float(sq.xi_s_n2),
        xi_r_n1=float(sq.xi_r_n1),
        xi_r_n2=float(sq.xi_r_n2),
        measure_e=float(ent.measure_e),
        pt_min_eigenvalue=ent.pt_min_eigenvalue,
    )


def default_solver(scenario):
    return "analytic" if scenario.has_analytic else "numeric"


def grid(start, stop, steps):
    if steps < 2:
        raise InvalidInputError(f"a sweep needs at least 2 steps, got {steps}")
    return np.linspace(start, stop, int(steps))


def _rows_disagree(a, b):
    for u, v in zip(a.values(), b.values()):
        if math.isinf(u) or math.isinf(v):
            if u != v:
                return True
        elif abs(u - v) > AGREEMENT_TOL * max(1.0, abs(u)):
            return True
    return False


def run_scenario_sweep(scenario, start, stop, steps, solver=None):
    """Rows of states and measures over an evenly spaced grid."""
    solver = solver or default_solver(scenario)
    if solver not in SOLVERS:
        raise InvalidInputError(f"unknown solver {solver!r}; expected one of {SOLVERS}")
    if solver != "numeric" and not scenario.has_analytic:
        raise InvalidInputError(f"solver {solver!r} is not available for the combined scenario")
    xs = grid(start, stop, steps)
    # Fail on bound violations before any work is done.
    for x in xs:
        scenario.params_at(x)

    rows, offending = [], []
    for x in xs:
        if solver == "both":
            exact = scenario.analytic_state(x)
            numeric = scenario.numeric_state(x)
            row = row_for_state(x, exact)
            state_gap = np.max(np.abs(exact.matrix - numeric.matrix))
            if state_gap > AGREEMENT_TOL or _rows_disagree(row, row_for_state(x, numeric)):
                offending.append((float(x), float(state_gap)))
        else:
            row = row_for_state(x, scenario.state(x, solver))
        rows.append(row)
    if offending:
        listing = ", ".join(f"{x:.6g} (state gap {g:.2e})" for x, g in offending[:10])
        raise ConsistencyError(
            f"analytic and numeric solvers disagree at {len(offending)} grid point(s): {listing}"
        )
    return rows


def entanglement_at(scenario, x):
    solver = default_solver(scenario)
    return negativity(scenario.state(x, solver)).measure_e


def find_threshold(scenario, lo, hi, tol=1e-6):
    """Bisect for the point where E switches between zero and positive."""
    if not lo < hi:
        raise InvalidInputError(f"bracket must satisfy lo < hi, got [{lo}, {hi}]")
    lo_ent = entanglement_at(scenario, lo) > 0
    hi_ent = entanglement_at(scenario, hi) > 0
    if lo_ent == hi_ent:
        state = "entangled" if lo_ent else "separable"
        raise InvalidInputError(
            f"no entanglement onset in [{lo}, {hi}]: both ends are {state}"
        )
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        if (entanglement_at(scenario, mid) > 0) == lo_ent:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# Presets for the four figures: (scenario, start, stop).
FIGURES = {
    1: (Scenario("classical-squeezed"), 0.01, 2.0),
    2: (Scenario("quantum-squeezed"), 0.01, 10.0),
    3: (Scenario("coherent"), 0.01, 3.0),
    4: (Scenario("combined", n_ph=0.1, m_mode="quantum", m_sign=-1), 0.01, 3.0),
}
FIGURE_STEPS = 300


def figure_sweep(number, steps=FIGURE_STEPS, solver=None):
    if number not in FIGURES:
        raise InvalidInputError(f"figure must be one of {sorted(FIGURES)}, got {number}")
    scenario, start, stop = FIGURES[number]
    return run_scenario_sweep(scenario, start, stop, steps, solver)


# --------------------------------------------------------------------------
# self-check


@dataclass
class CheckResult:
    name: str
    passed: bool
    max_residual: float
    detail: str = ""


def _check(name, residual, limit, detail=""):
    return CheckResult(name, bool(residual <= limit), float(residual), detail)


def _check_eigensolver(rng):
    worst = 0.0
    for n in range(1, 17):
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        a = a + a.conj().T
        w, v = hermitian_eigen(a)
        worst = max(
            worst,
            np.max(np.abs(v @ np.diag(w) @ v.conj().T - a)),
            np.max(np.abs(v.conj().T @ v - np.eye(n))),
            abs(w.sum() - np.trace(a).real),
        )
    return _check("eigensolver reconstruction/orthonormality", worst, 1e-10)


def _check_cubic(rng):
    worst = 0.0
    for _ in range(200):
        a2, a1, a0 = rng.normal(size=3) * 3
        r = cubic_roots(CubicCoefficients(a2, a1, a0))
        worst = max(
            worst,
            abs(r.sum() + a2),
            abs(r[0] * r[1] + r[0] * r[2] + r[1] * r[2] - a1),
            abs(r.prod() + a0),
        )
    return _check("cubic roots Vieta relations", worst, 1e-9)


def _check_operators():
    ops = collective_operators()
    sp, sm, sx, sy, sz = ops.S_plus, ops.S_minus, ops.S_x, ops.S_y, ops.S_z
    worst = max(
        np.max(np.abs(sp @ sm - sm @ sp - 2 * sz)),
        np.max(np.abs(sz @ sp - sp @ sz - sp)),
        np.max(np.abs(sz @ sm - sm @ sz + sm)),
        np.max(np.abs(sx @ sx + sy @ sy + sz @ sz - 2 * np.eye(3))),
    )
    return _check("collective spin algebra", worst, 1e-12)


def _param_grid():
    pts = []
    for n in (0.0, 0.1, 0.5, 1.0, 2.0):
        for sign in (1, -1):
            for m in {0.0, n, math.sqrt(n * (n + 1))}:
                for om in (0.0, 0.3, 1.0, 2.5):
                    pts.append(SystemParams(om, 1.0, n, sign * m))
    return pts


def _check_liouvillian():
    trace_worst, real_worst, zero_worst = 0.0, -np.inf, 0.0
    bad_unique = 0
    left = np.eye(3).reshape(-1, order="F")
    for p in _param_grid():
        L = build_liouvillian(p)
        trace_worst = max(trace_worst, np.max(np.abs(left @ L)))
        ev = np.linalg.eigvals(L)
        real_worst = max(real_worst, np.max(ev.real))
        near_zero = np.sum(np.abs(ev) < 1e-10)
        if near_zero != 1:
            bad_unique += 1
        zero_worst = max(zero_worst, np.min(np.abs(ev)))
    return [
        _check("Liouvillian trace preservation", trace_worst, 1e-12),
        _check("Liouvillian dissipativity (max Re eigenvalue)", max(real_worst, 0.0), 1e-10),
        _check("Liouvillian unique zero eigenvalue", float(bad_unique), 0.0,
               f"{bad_unique} parameter points without exactly one zero eigenvalue"),
    ]


def _check_oracles():
    worst_sq, worst_coh = 0.0, 0.0
    for n in np.linspace(0.05, 2.0, 40):
        for m in (n, math.sqrt(n * (n + 1))):
            for sign in (1, -1):
                numeric = solve_steady_state(SystemParams(0.0, 1.0, n, sign * m))
                exact = analytic.steady_squeezed(n, sign * m)
                worst_sq = max(worst_sq, np.max(np.abs(numeric.matrix - exact.matrix)))
    for om in np.linspace(0.1, 5.0, 50):
        numeric = solve_steady_state(SystemParams(om, 1.0, 0.0, 0.0))
        worst_coh = max(worst_coh, np.max(np.abs(numeric.matrix - analytic.steady_coherent(om).matrix)))
    return [
        _check("numeric vs closed-form steady state (squeezed vacuum)", worst_sq, 1e-10),
        _check("numeric vs closed-form steady state (laser only)", worst_coh, 1e-10),
    ]


def _scenario_states():
    for kind, xs in (
        ("classical-squeezed", np.linspace(0.01, 2.0, 60)),
        ("quantum-squeezed", np.linspace(0.01, 10.0, 60)),
        ("coherent", np.linspace(0.01, 3.0, 60)),
    ):
        sc = Scenario(kind)
        for x in xs:
            yield kind, sc.analytic_state(x)
            yield kind, sc.numeric_state(x)
    for sign in (1, -1):
        sc = Scenario("combined", n_ph=0.1, m_sign=sign)
        for x in np.linspace(0.01, 3.0, 60):
            yield "combined", sc.numeric_state(x)


def _check_measures():
    spectrum_fail, lam2_min = 0, np.inf
    identity_gap, trace_gap, multi_negative = 0.0, 0.0, 0
    for _, rho in _scenario_states():
        try:
            rep = negativity(rho)
        except ConsistencyError:
            spectrum_fail += 1
            continue
        if isinstance(rep.closed_form, SqueezedOnlySpectrum):
            lam2_min = min(lam2_min, rep.closed_form.lambda_2_minus)
        trace_gap = max(trace_gap, abs(rep.pt_eigenvalues.sum() - 1.0))
        multi_negative += int(np.sum(rep.pt_eigenvalues < -1e-12) > 1)
        rel = relation_check(rho)
        if rel.applies:
            identity_gap = max(identity_gap, rel.gap)
    return [
        _check("PT spectrum numeric vs closed form", float(spectrum_fail), 0.0,
               f"{spectrum_fail} states with a disagreement above 1e-9"),
        _check("lambda_2- >= 0 for squeezed-vacuum states", max(0.0, -lam2_min), 0.0,
               f"smallest lambda_2- = {lam2_min:.3e}"),
        _check("PT trace", trace_gap, 1e-10),
        _check("at most one negative PT eigenvalue", float(multi_negative), 0.0),
        _check("E = 1 - xi_S(n2) where the antisymmetric PT eigenvalue is negative",
               identity_gap, 1e-10),
    ]


def m_sign_scan(sign, omegas=None, n_values=None):
    """Scan Omega in (0, 2], N in (0, 1] with M = sign*sqrt(N(N+1)).

    Returns ``(unsqueezed_entangled, min_root)``: the grid points with E > 0
    but neither xi_S below 1, and the smallest PT cubic root seen.
    """
    omegas = np.linspace(0.05, 2.0, 40) if omegas is None else omegas
    n_values = np.linspace(0.05, 1.0, 20) if n_values is None else n_values
    hits, min_root = [], np.inf
    for n in n_values:
        for om in omegas:
            rho = solve_steady_state(SystemParams(om, 1.0, n, correlation_for(n, "quantum", sign)))
            rep = negativity(rho)
            if isinstance(rep.closed_form, CubicSpectrum):
                min_root = min(min_root, float(rep.closed_form.roots.real.min()))
            sq = squeezing_parameters(rho)
            if rep.measure_e > 0 and sq.xi_s_n1 >= 1 and sq.xi_s_n2 >= 1:
                hits.append((float(om), float(n), rep.measure_e))
    return hits, min_root


def _check_sign_scans():
    pos_hits, pos_root = m_sign_scan(+1)
    neg_hits, neg_root = m_sign_scan(-1)
    mirror = (
        f"mirror: M<0 gives {len(neg_hits)} such points; "
        f"M>0 smallest cubic root {pos_root:.3e}"
    )
    return [
        CheckResult(
            "M>0: entanglement without Kitagawa-Ueda squeezing exists",
            bool(pos_hits),
            float(len(pos_hits)),
            f"{len(pos_hits)} points with E>0, xi_S(n1)>=1, xi_S(n2)>=1; {mirror}",
        ),
        _check(
            "M<0: all PT cubic roots >= -1e-10",
            max(0.0, -neg_root),
            1e-10,
            f"smallest root {neg_root:.3e}; {mirror}",
        ),
    ]


def _check_propagation():
    # Quantum-squeezed relaxation slows like 1/(2N); N = 0.5 still settles by t = 50.
    worst = 0.0
    cases = [
        SystemParams(1.0, 1.0, 0.0, 0.0),
        SystemParams(0.0, 1.0, 0.25, 0.25),
        SystemParams(0.0, 1.0, 0.5, math.sqrt(0.75)),
        SystemParams(1.0, 1.0, 0.1, -math.sqrt(0.11)),
    ]
    for p in cases:
        final = propagate(ground_state(), p, 50.0)
        worst = max(worst, np.max(np.abs(final.matrix - solve_steady_state(p).matrix)))
    decay = SystemParams()
    excited = DickeState.pure([1, 0, 0])
    for t in (0.5, 1.0, 3.0):
        rho = propagate(excited, decay, t)
        worst = max(worst, abs(rho.ee - math.exp(-2 * t)), abs(rho.ss - 2 * t * math.exp(-2 * t)))
    return _check("time propagation vs steady state / cascade decay", worst, 1e-6)


def self_check(seed=12345):
    rng = np.random.default_rng(seed)
    results = [_check_eigensolver(rng), _check_cubic(rng), _check_operators()]
    results += _check_liouvillian()
    results += _check_oracles()
    results += _check_measures()
    results.append(_check_propagation())
    results += _check_sign_scans()
    return results


def steady_state_for(params, solver="numeric"):
    """Steady state of arbitrary parameters; the closed forms are used when
    requested and applicable."""
    if solver == "numeric":
        return steady_state(build_liouvillian(params))
    if params.omega == 0:
        exact = analytic.steady_squeezed(params.n_ph, params.m_corr)
    elif params.n_ph == 0 and params.m_corr == 0:
        exact = analytic.steady_coherent(params.omega, params.gamma)
    else:
        raise InvalidInputError("no closed form when both the laser and squeezed field are on")
    if solver == "both":
        numeric = solve_steady_state(params)
        gap = np.max(np.abs(exact.matrix - numeric.matrix))
        if gap > AGREEMENT_TOL:
            raise ConsistencyError(f"analytic and numeric steady states differ by {gap:.3e}")
    return exact
