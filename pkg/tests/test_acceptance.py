"""
Acceptance criteria, one test each.  Every test prints a single PASS/FAIL
line (also collected into the terminal summary by conftest.py).

Run alone with:  pytest tests/test_acceptance.py -s
"""
import math

import numpy as np
import pytest

from dicke2.analytic import steady_coherent, steady_squeezed
from dicke2.dynamics import SystemParams, propagate, solve_steady_state
from dicke2.measures import (
    CubicSpectrum,
    negativity,
    partial_transpose,
    relation_check,
    squeezing_parameters,
)
from dicke2.model import DickeState, basis_vector, dicke_to_product, E, ground_state
from dicke2.sweeps import FIGURES, FIGURE_STEPS, Scenario, find_threshold, grid, m_sign_scan

RESULTS = {}


def record(number, title, passed, detail):
    line = f"{'PASS' if passed else 'FAIL'}  criterion {number:>2}: {title} -- {detail}"
    RESULTS[number] = line
    print(line)
    assert passed, line


def entanglement(rho):
    return negativity(rho).measure_e


def test_criterion_01_classical_threshold():
    sc = Scenario("classical-squeezed")
    x = find_threshold(sc, 0.1, 1.0)
    below = [entanglement(sc.analytic_state(n)) for n in np.linspace(1e-3, 0.5 - 1e-3, 200)]
    above = [entanglement(sc.analytic_state(n)) for n in np.linspace(0.5, 2.0, 200)]
    ok = abs(x - 0.5) <= 1e-6 and min(below) > 0 and max(above) == 0
    record(1, "classical onset at N = 1/2", ok,
           f"threshold {x:.9f}, min E below {min(below):.3e}, max E above {max(above):.3e}")


def test_criterion_02_classical_spectroscopic():
    worst = min(
        squeezing_parameters(steady_squeezed(n, n)).xi_r_n2 for n in np.linspace(1e-3, 5.0, 500)
    )
    record(2, "classical xi_R(n2) > 1 for N in (0, 5]", worst > 1, f"smallest xi_R(n2) {worst:.6f}")


def test_criterion_03_quantum_pure_and_maximal():
    ns = np.linspace(0.0, 50.0, 501)
    ss_gap = purity_gap = e_gap = 0.0
    es = []
    for n in ns:
        rho = Scenario("quantum-squeezed").analytic_state(n)
        e = entanglement(rho)
        es.append(e)
        ss_gap = max(ss_gap, abs(rho.ss))
        purity_gap = max(purity_gap, abs(rho.purity() - 1))
        e_gap = max(e_gap, abs(e - 2 * math.sqrt(n * (n + 1)) / (2 * n + 1)))
    monotone = bool(np.all(np.diff(es) > 0))
    ok = ss_gap <= 1e-12 and purity_gap <= 1e-10 and e_gap <= 1e-10 and es[-1] > 0.99 and monotone
    record(3, "quantum state pure, E = 2 sqrt(N(N+1))/(2N+1)", ok,
           f"|rho_ss| {ss_gap:.1e}, purity gap {purity_gap:.1e}, E gap {e_gap:.1e}, "
           f"E(50) {es[-1]:.6f}, increasing {monotone}")


def test_criterion_04_identity():
    parts, ok = [], True
    for number, (sc, start, stop) in sorted(FIGURES.items()):
        worst, count, carriers = 0.0, 0, set()
        for x in grid(start, stop, FIGURE_STEPS):
            rho = sc.state(x, "analytic" if sc.has_analytic else "numeric")
            rel = relation_check(rho)
            if rel.e > 0:
                count += 1
                worst = max(worst, rel.gap)
                sq = squeezing_parameters(rho)
                carriers |= {k for k, v in (("n1", sq.xi_s_n1), ("n2", sq.xi_s_n2)) if v < 1}
        ok &= worst < 1e-10
        parts.append(f"{sc.kind}: {count} entangled pts, max gap {worst:.2e}, "
                     f"squeezed along {'/'.join(sorted(carriers)) or 'none'}")
    record(4, "E = 1 - xi_S(n2) wherever E > 0", ok, "; ".join(parts))


def test_criterion_05_coherent():
    sc = Scenario("coherent")
    x = find_threshold(sc, 1.0, 2.0)
    e1 = entanglement(steady_coherent(1.0))
    ok = abs(x - math.sqrt(2)) <= 1e-6 and abs(e1 - 1 / 11) <= 1e-10
    record(5, "coherent onset at sqrt(2), E(1) = 1/11", ok,
           f"threshold {x:.9f}, E(1) - 1/11 = {e1 - 1 / 11:.1e}")


def test_criterion_06_combined_vanishing_point():
    sc = FIGURES[4][0]
    xs = grid(0.01, 3.0, 300)
    es = [entanglement(sc.numeric_state(x)) for x in xs]
    last = max(i for i, e in enumerate(es) if e > 0)
    vanish = find_threshold(sc, xs[last], xs[last + 1])
    ok = 2.0 <= vanish <= 2.2
    record(6, "combined N=0.1, M=-sqrt(0.11): E vanishes in [2.0, 2.2]", ok,
           f"E vanishes at Omega = {vanish:.6f}")


def test_criterion_07_oracles():
    worst = 0.0
    for n in np.round(np.arange(1, 41) * 0.05, 10):
        for m in (n, math.sqrt(n * (n + 1))):
            numeric = solve_steady_state(SystemParams(0.0, 1.0, n, m))
            worst = max(worst, np.max(np.abs(numeric.matrix - steady_squeezed(n, m).matrix)))
    for om in np.round(np.arange(1, 51) * 0.1, 10):
        numeric = solve_steady_state(SystemParams(om))
        worst = max(worst, np.max(np.abs(numeric.matrix - steady_coherent(om).matrix)))
    record(7, "numeric steady states match closed forms", worst <= 1e-10,
           f"max elementwise gap {worst:.2e}")


def test_criterion_08_pt_spectrum():
    worst, counts = 0.0, {"squeezed-only": 0, "cubic": 0}
    for sc, start, stop in FIGURES.values():
        for x in grid(start, stop, FIGURE_STEPS):
            rho = sc.state(x, "analytic" if sc.has_analytic else "numeric")
            rep = negativity(rho)
            cf = rep.closed_form
            counts["cubic" if isinstance(cf, CubicSpectrum) else "squeezed-only"] += 1
            worst = max(worst, np.max(np.abs(np.sort(cf.values()) - rep.pt_eigenvalues)))
    record(8, "numeric PT spectrum matches closed forms", worst <= 1e-9,
           f"max gap {worst:.2e} over {counts}")


def test_criterion_09_dynamics():
    decay = 0.0
    excited = DickeState.pure(basis_vector(E))
    for t in np.linspace(0.0, 3.0, 13):
        rho = propagate(excited, SystemParams(), t)
        decay = max(decay, abs(rho.ee - math.exp(-2 * t)), abs(rho.ss - 2 * t * math.exp(-2 * t)))
    # One representative point per scenario; see README on relaxation times.
    cases = {
        "classical-squeezed N=0.25": SystemParams(0.0, 1.0, 0.25, 0.25),
        "quantum-squeezed N=0.5": SystemParams(0.0, 1.0, 0.5, math.sqrt(0.75)),
        "coherent Omega=1": SystemParams(1.0),
        "combined N=0.1 Omega=1": SystemParams(1.0, 1.0, 0.1, -math.sqrt(0.11)),
    }
    gaps = {}
    for name, p in cases.items():
        final = propagate(ground_state(), p, 50.0)
        gaps[name] = float(np.max(np.abs(final.matrix - solve_steady_state(p).matrix)))
    ok = decay <= 1e-6 and max(gaps.values()) <= 1e-8
    record(9, "cascade decay and relaxation to the steady state", ok,
           f"decay error {decay:.1e}; " + ", ".join(f"{k}: {v:.1e}" for k, v in gaps.items()))


def test_criterion_10_sign_scans():
    pos_hits, pos_root = m_sign_scan(+1)
    neg_hits, neg_root = m_sign_scan(-1)
    ok = bool(pos_hits) and neg_root >= -1e-10
    record(10, "M>0 entangled-unsqueezed point exists; M<0 cubic roots >= 0", ok,
           f"M>0: {len(pos_hits)} points, smallest root {pos_root:.3e}; "
           f"M<0: {len(neg_hits)} points, smallest root {neg_root:.3e}")


def test_criterion_11_random_states():
    rng = np.random.default_rng(20261019)
    herm = trace = psd = pt_trace = 0.0
    multi = 0
    for _ in range(1000):
        n = rng.uniform(0.0, 3.0)
        m = math.sqrt(n * (n + 1)) * math.sqrt(rng.uniform()) * np.exp(1j * rng.choice(
            [0.0, math.pi, rng.uniform(0.0, 2 * math.pi)]))
        if abs(m.imag) < 1e-15:
            m = m.real
        p = SystemParams(rng.uniform(0.0, 5.0), 1.0, n, m)
        rho = solve_steady_state(p).matrix
        herm = max(herm, np.max(np.abs(rho - rho.conj().T)))
        trace = max(trace, abs(np.trace(rho) - 1))
        psd = min(psd, np.linalg.eigvalsh(rho)[0])
        w = np.linalg.eigvalsh(partial_transpose(dicke_to_product(rho)))
        pt_trace = max(pt_trace, abs(w.sum() - 1))
        multi += int(np.sum(w < 0) > 1)
    ok = herm <= 1e-12 and trace <= 1e-12 and psd >= -1e-12 and pt_trace <= 1e-10 and multi == 0
    record(11, "1000 random steady states are physical", ok,
           f"hermiticity {herm:.1e}, trace {trace:.1e}, min eigenvalue {psd:.1e}, "
           f"PT trace {pt_trace:.1e}, states with >1 negative PT eigenvalue {multi}")
