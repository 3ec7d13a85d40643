"""End-to-end acceptance gate.

Each test prints one PASS/FAIL line with the quantity it measured before
asserting, so the full gate status is visible in the pytest output.
"""

import numpy as np
import pytest

from squidcavity.dynamics import trace
from squidcavity.linalg import hermitian_eig, propagator, propagator_oracle
from squidcavity.measurement import fidelity, postselect, target_c_with_vacuum
from squidcavity.model import (
    CouplingParams,
    analytic_eigenvalues,
    block_decompose,
    build_h0,
    build_h_full,
    dark_state,
    symmetry_transform,
)
from squidcavity.dynamics import evolve
from squidcavity.optimize import find_t0, sweep

TRIPLES = ((0.25, 1.89), (2.95, 1.10), (0.60, 1.37))


def report(n, ok, detail):
    print(f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, detail


def test_criterion_01_dark_state_nullity():
    rng = np.random.default_rng(20260823)
    worst = 0.0
    for _ in range(200):
        g1, g2, om1, om2 = rng.uniform(0.01, 3.0, 4)
        p = CouplingParams(g1, g2, om1, om2, 0.0)
        worst = max(worst, float(np.linalg.norm(build_h0(p) @ dark_state(p))))
    report(1, worst <= 1e-12, f"max ||H0 d|| = {worst:.3e}")


def test_criterion_02_antisymmetric_sector():
    worst = 0.0
    for g in (0.05, 0.5, 1.0, 2.0, 3.0):
        for gp in (0.05, 1.0, 3.0):
            vals = hermitian_eig(
                block_decompose(CouplingParams.symmetric(g, gp)).h2
            ).eigenvalues
            worst = max(worst, float(np.max(np.abs(vals - [-1.0, 1.0]))))
    report(2, worst <= 1e-12, f"max |E -/+1| = {worst:.3e}")


def test_criterion_03_analytic_vs_numeric_grid():
    gs = np.linspace(0.06, 3.0, 50)
    worst = 0.0
    for g in gs:
        for gp in gs:
            p = CouplingParams.symmetric(float(g), float(gp))
            diff = analytic_eigenvalues(p) - hermitian_eig(build_h_full(p)).eigenvalues
            worst = max(worst, float(np.max(np.abs(diff))))
    report(3, worst <= 1e-10, f"max spectrum deviation = {worst:.3e} on 50x50 grid")


def test_criterion_04_block_decomposition():
    t = symmetry_transform().transform
    worst_cross = 0.0
    worst_block = 0.0
    for g, gp in [(0.3, 0.4), (1.0, 1.0), (2.9, 0.2), (0.1, 2.9)]:
        p = CouplingParams.symmetric(g, gp)
        hc = t @ build_h_full(p).real @ t.T
        worst_cross = max(worst_cross, float(np.max(np.abs(hc[:2, 2:]))))
        worst_cross = max(worst_cross, float(np.max(np.abs(hc[2:, :2]))))
        blocks = block_decompose(p)
        worst_block = max(worst_block, float(np.max(np.abs(hc[:2, :2] - blocks.h2.real))))
        worst_block = max(worst_block, float(np.max(np.abs(hc[2:, 2:] - blocks.h4.real))))
    report(
        4,
        worst_cross <= 1e-14 and worst_block <= 1e-14,
        f"cross = {worst_cross:.3e}, block mismatch = {worst_block:.3e}",
    )


def test_criterion_05_unitarity_and_leakage():
    worst_sum = 0.0
    worst_leak = 0.0
    for g, gp in TRIPLES + ((1.0, 1.0),):
        tr = trace(CouplingParams.symmetric(g, gp), t_max=200.0, n_steps=4001)
        worst_sum = max(worst_sum, float(np.max(np.abs(tr.probs.sum(axis=1) - 1.0))))
        worst_leak = max(worst_leak, float(np.max(tr.leakage)))
    report(
        5,
        worst_sum <= 1e-8 and worst_leak <= 1e-10,
        f"max |sum P - 1| = {worst_sum:.3e}, max leakage = {worst_leak:.3e}",
    )


def test_criterion_06_propagator_oracle():
    rng = np.random.default_rng(20260823)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 7))
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = (a + a.conj().T) / 2.0
        t = float(rng.uniform(0.0, 5.0))
        u1 = propagator(hermitian_eig(h), t)
        u2 = propagator_oracle(h, t)
        worst = max(worst, float(np.max(np.abs(u1 - u2))))
    report(6, worst <= 1e-8, f"max elementwise deviation = {worst:.3e}")


def test_criterion_07_initial_component():
    g = 0.25
    tr = trace(CouplingParams.symmetric(g, 1.89), t_max=1.0, n_steps=2)
    p3_0 = float(tr.probs[0, 2])
    closed = 2 * g * g / (2 * g * g + 1)
    ok = abs(p3_0 - closed) <= 1e-12 and abs(p3_0 - 0.1111) <= 5e-4
    report(7, ok, f"P3(0) = {p3_0:.6f}, closed form {closed:.6f}")


@pytest.mark.parametrize("g,gp", TRIPLES)
def test_criterion_08_reference_pairs_feasible(g, gp):
    res = find_t0(CouplingParams.symmetric(g, gp), 1e-6, t_max=200.0)
    ok = res.feasible and res.p3 + res.p4 >= 1 - 1e-6 - 1e-8
    report(
        8,
        ok,
        f"(g={g}, g'={gp}): feasible={res.feasible}, t0={res.t0:.6f}, "
        f"P1+P2={res.p1p2:.3e}, P3={res.p3:.6f}, P4={res.p4:.6f}",
    )


def test_criterion_09_postselection_fidelity():
    # applies at each certified measurement time from the previous criterion
    target = target_c_with_vacuum()
    worst = 1.0
    checked = 0
    for g, gp in TRIPLES:
        p = CouplingParams.symmetric(g, gp)
        res = find_t0(p, 1e-6, t_max=200.0)
        if not res.feasible:
            continue
        checked += 1
        f = fidelity(postselect(evolve(p, res.t0), "g").collapsed, target)
        worst = min(worst, f)
    ok = checked > 0 and worst >= 1 - 1e-5
    report(9, ok, f"min fidelity = {worst:.8f} over {checked} certified pair(s)")


def test_criterion_10_threshold_monotonicity():
    grids = sweep((0.05, 3.0), (0.05, 3.0), 30, [6, 1], t_max=200.0)
    by_j = {g.threshold_exponent: g for g in grids}
    tight, loose = by_j[6], by_j[1]
    violations = 0
    n_tight = 0
    n_loose = 0
    for i in range(30):
        for k in range(30):
            a = tight.cells[i][k]
            b = loose.cells[i][k]
            n_tight += a.feasible
            n_loose += b.feasible
            if a.feasible and (not b.feasible or b.p3 < a.p3 - 1e-9):
                violations += 1
    ok = violations == 0 and 0 < n_tight < n_loose
    report(
        10,
        ok,
        f"violations={violations}, feasible cells j=6: {n_tight}, j=1: {n_loose}",
    )


def test_criterion_11_t0_offsets_reported_and_reproducible():
    rows = []
    for _ in range(2):
        run = []
        for g, gp in TRIPLES:
            res = find_t0(CouplingParams.symmetric(g, gp), 1e-6, t_max=200.0)
            run.append((abs(res.t0 - np.pi / gp), abs(res.t0 - np.pi / (2 * gp))))
        rows.append(run)
    ok = rows[0] == rows[1] and all(np.isfinite(v) for pair in rows[0] for v in pair)
    detail = "; ".join(
        f"(g={g}, g'={gp}): |t0-pi/g'|={d1:.6f}, |t0-pi/2g'|={d2:.6f}"
        for (g, gp), (d1, d2) in zip(TRIPLES, rows[0])
    )
    report(11, ok, detail)
