"""Acceptance suite: the ten exit criteria, each at its stated tolerance.

Every test prints one `[criterion NN] PASS/FAIL ...` line (unconditionally,
bypassing capture) and then asserts, so a plain `pytest tests/test_acceptance.py`
shows the scoreboard.
"""

import math
import time

import numpy as np
import pytest

from spinphonon import (
    BeamMode,
    CouplingCurveSpec,
    CouplingParams,
    DomainError,
    DotProfile,
    HilbertSpec,
    IntegrationSpec,
    LindbladModel,
    annihilation,
    basis_density,
    default_sweep_spec,
    default_transfer_spec,
    dissipator,
    evolve,
    hamiltonian_jc,
    partial_trace_spin,
    run_coupling_curve,
    run_error_sweep,
    run_state_transfer,
    spin_ops,
    standard_channels,
    sweet_spot_field,
    thermal_occupation,
)
from spinphonon.constants import EV, MU_B
from spinphonon.experiments import TWO_PI_MHZ

L = 400e-9
PAPER_PARAMS = dict(
    delta_so=370e-6,
    beam=BeamMode(length_l=L, u0=2.5e-12),
    dot=DotProfile.from_alpha(center_zc=L / 2, alpha=40.0 / L),
)


@pytest.fixture
def report(capsys):
    def _report(num, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {num:2d}] {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, f"criterion {num}: {detail}"

    return _report


def test_criterion_01_coupling_curve(report):
    spec = CouplingCurveSpec(
        params=CouplingParams(**PAPER_PARAMS), center_start=0.0, center_stop=L,
        points=401,
    )
    t0 = time.perf_counter()
    res = run_coupling_curve(spec)
    elapsed = time.perf_counter() - t0

    peak_ok = abs(res.max_abs_g_mhz - 0.961) <= 0.02 * 0.961
    mid = res.g_mhz[200]
    mid_ok = abs(mid) < 1e-9
    g = res.g_mhz
    mirrored = -g[::-1]
    scale = np.maximum(np.abs(g), np.abs(mirrored))
    mask = scale > 1e-12
    mask[200] = False
    antisym = float(np.max(np.abs(g - mirrored)[mask] / scale[mask]))
    ok = peak_ok and mid_ok and antisym < 1e-8 and elapsed < 1.0
    report(1, ok,
           f"coupling curve: max|g| = {res.max_abs_g_mhz:.4f} MHz (target 0.961 +-2%), "
           f"|g(l/2)| = {abs(mid):.1e} MHz (< 1e-9), antisymmetry {antisym:.1e} "
           f"(< 1e-8), {elapsed * 1e3:.0f} ms for 401 points (< 1 s)")


def test_criterion_02_transfer_fidelity(report):
    spec = default_transfer_spec()  # 2pi x (500, 0.9, 0.01, 0.01) MHz, 10 mK, N = 9
    t0 = time.perf_counter()
    res = run_state_transfer(spec)
    elapsed = time.perf_counter() - t0
    ok = abs(res.fidelity - 0.979) <= 0.01 and elapsed < 10.0
    report(2, ok,
           f"transfer fidelity F = {res.fidelity:.4f} (target 0.979 +- 0.01), "
           f"{elapsed:.2f} s (< 10 s)")


def test_criterion_03_lossless_oracle(report):
    spec = default_transfer_spec(gamma_r=0.0, gamma_s=0.0, temperature=0.0)
    res = run_state_transfer(spec)
    rabi_err = float(np.max(np.abs(res.p10 - np.cos(spec.g * res.times) ** 2)))
    ok = res.fidelity >= 1 - 1e-6 and rabi_err < 1e-6
    report(3, ok,
           f"lossless swap: F = 1 - {1 - res.fidelity:.1e} (>= 1 - 1e-6), "
           f"max |p10 - cos^2(gt)| = {rabi_err:.1e} (< 1e-6)")


def test_criterion_04_lindblad_invariants(report):
    spec = default_transfer_spec()
    hs = HilbertSpec(spec.fock_levels)
    n_bath = thermal_occupation(spec.omega_r, spec.temperature)
    model = LindbladModel(
        hamiltonian=hamiltonian_jc(hs, spec.g),
        channels=standard_channels(hs, spec.gamma_r, spec.gamma_s, n_bath),
        g=spec.g, gamma_r=spec.gamma_r, gamma_s=spec.gamma_s,
    )
    t_end = math.pi / (2 * spec.g)
    res = evolve(model, basis_density(hs, 1, 0),
                 IntegrationSpec(t_end=t_end, dt=1.0 / (200 * spec.g)))
    drift = float(np.max(np.abs(np.einsum("tii->t", res.states) - 1.0)))
    herm = float(np.max(np.abs(res.states - res.states.conj().transpose(0, 2, 1))))
    mineig = float(min(np.min(np.linalg.eigvalsh(s)) for s in res.states))

    rng = np.random.default_rng(2024)
    worst_tr = 0.0
    for _ in range(100):
        o = rng.normal(size=(hs.dim, hs.dim)) + 1j * rng.normal(size=(hs.dim, hs.dim))
        o /= np.linalg.norm(o)
        m = rng.normal(size=(hs.dim, hs.dim)) + 1j * rng.normal(size=(hs.dim, hs.dim))
        rho = m @ m.conj().T
        rho /= np.trace(rho).real
        worst_tr = max(worst_tr, abs(np.trace(dissipator(o, rho))))

    ok = drift < 1e-6 and herm < 1e-8 and mineig >= -1e-6 and worst_tr < 1e-12
    report(4, ok,
           f"invariants over the reference run: trace drift {drift:.1e} (< 1e-6), "
           f"hermiticity {herm:.1e} (< 1e-8), min eig {mineig:.1e} (>= -1e-6); "
           f"dissipator trace residual {worst_tr:.1e} on 100 random inputs (< 1e-12)")


def test_criterion_05_thermal_fixed_point(report):
    hs = HilbertSpec(10)
    gamma_r = 0.01 * TWO_PI_MHZ
    n_bath = thermal_occupation(500 * TWO_PI_MHZ, 0.010)
    a = annihilation(hs)
    model = LindbladModel(
        hamiltonian=np.zeros((hs.dim, hs.dim), complex),
        channels=((a, (n_bath + 1) * gamma_r), (a.conj().T, n_bath * gamma_r)),
        gamma_r=gamma_r, temperature=0.010,
    )
    res = evolve(model, basis_density(hs, 0, 0),
                 IntegrationSpec(t_end=10.0 / gamma_r, dt=0.01 / gamma_r,
                                 record_stride=100))
    phonon = partial_trace_spin(res.final_state)
    occ = float(np.arange(hs.fock_levels) @ np.diag(phonon).real)
    levels = np.arange(hs.fock_levels)
    geometric = n_bath**levels / (1 + n_bath) ** (levels + 1.0)
    dist = float(np.max(np.abs(np.diag(phonon).real - geometric)))
    ok = (
        abs(n_bath - 0.0998) < 1e-3
        and abs(occ - n_bath) / n_bath < 0.01
        and dist < 1e-3
    )
    report(5, ok,
           f"thermal fixed point: n_B = {n_bath:.4f} (~0.0998), <a^dag a> = {occ:.5f} "
           f"(rel dev {abs(occ - n_bath) / n_bath:.1e} < 1%), "
           f"geometric-distribution residual {dist:.1e}")


def test_criterion_06_amplitude_damping_oracle(report):
    hs = HilbertSpec(10)
    gamma_s = 0.01 * TWO_PI_MHZ
    ops = spin_ops(hs)
    model = LindbladModel(
        hamiltonian=np.zeros((hs.dim, hs.dim), complex),
        channels=((ops.sigma_minus, gamma_s),),
        gamma_s=gamma_s,
    )
    t_end = 2.0 / gamma_s
    res = evolve(model, basis_density(hs, 1, 0),
                 IntegrationSpec(t_end=t_end, dt=t_end / 2000, record_stride=100))
    excited = np.einsum("tii->t", res.states[:, hs.fock_levels:, hs.fock_levels:]).real
    err = float(np.max(np.abs(excited - np.exp(-gamma_s * res.times))))
    ok = len(res.times) >= 20 and err < 1e-6
    report(6, ok,
           f"amplitude damping: max |p_e - exp(-gamma_s t)| = {err:.1e} over "
           f"{len(res.times)} sampled times (< 1e-6)")


@pytest.mark.filterwarnings("ignore::UserWarning")  # coarse dt is the point here
def test_criterion_07_convergence_and_truncation(report):
    spec = default_transfer_spec()
    hs = HilbertSpec(spec.fock_levels)
    n_bath = thermal_occupation(spec.omega_r, spec.temperature)
    model = LindbladModel(
        hamiltonian=hamiltonian_jc(hs, spec.g),
        channels=standard_channels(hs, spec.gamma_r, spec.gamma_s, n_bath),
        g=spec.g,
    )
    t_end = math.pi / (2 * spec.g)
    rho0 = basis_density(hs, 1, 0)

    def final(n_steps):
        return evolve(model, rho0,
                      IntegrationSpec(t_end=t_end, dt=t_end / n_steps,
                                      record_stride=n_steps)).final_state

    coarse, half, reference = final(32), final(64), final(128)
    err_coarse = float(np.max(np.abs(coarse - reference)))
    err_half = float(np.max(np.abs(half - reference)))
    ratio = err_coarse / err_half

    f_base = run_state_transfer(spec).fidelity
    f_double = run_state_transfer(default_transfer_spec(fock_levels=20)).fidelity
    df = abs(f_double - f_base)

    ok = 10.0 <= ratio <= 25.0 and df < 1e-4
    report(7, ok,
           f"order-4 convergence: halving dt shrinks the final-state error "
           f"{ratio:.1f}x (in [10, 25]); doubling the truncation moves F by "
           f"{df:.1e} (< 1e-4)")


def test_criterion_08_rwa_cross_check(report):
    jc = run_state_transfer(default_transfer_spec())
    full = run_state_transfer(default_transfer_spec(model="full"))
    dp10 = abs(jc.p10[-1] - full.p10[-1])
    dp01 = abs(jc.p01[-1] - full.p01[-1])
    g_over_wr = default_transfer_spec().g / default_transfer_spec().omega_r
    ok = dp10 <= 0.02 and dp01 <= 0.02
    report(8, ok,
           f"RWA cross-check at g/omega_r = {g_over_wr:.1e}: lab-frame vs "
           f"interaction-picture populations differ by |dp10| = {dp10:.1e}, "
           f"|dp01| = {dp01:.1e} (<= 0.02)")


def test_criterion_09_sweep_monotonicity(report):
    details = []
    ok = True
    for swept in ("gamma_s", "gamma_r", "temperature"):
        res = run_error_sweep(default_sweep_spec(swept))
        increasing = bool(np.all(np.diff(res.errors) > 0)) and not res.failures
        ok = ok and increasing
        details.append(f"{swept}: {'strictly increasing' if increasing else 'NOT monotone'}")
    report(9, ok, "error sweeps (defaults): " + "; ".join(details))


def test_criterion_10_sweet_spot_field(report):
    p0 = CouplingParams(**PAPER_PARAMS, delta_kkp=0.0)
    b_star = sweet_spot_field(p0)
    closed_form = p0.delta_so * EV / (2 * MU_B)
    exact_ok = b_star == closed_form
    value_ok = abs(b_star - 3.20) < 0.01
    try:
        sweet_spot_field(
            CouplingParams(**PAPER_PARAMS, delta_kkp=370e-6, mu_orb=1.1 * MU_B)
        )
        rejected = False
    except DomainError:
        rejected = True
    ok = exact_ok and value_ok and rejected
    report(10, ok,
           f"sweet-spot field: B* = {b_star:.4f} T (delta_so/(2 mu_B) exactly, "
           f"~3.20 T); negative radicand {'rejected' if rejected else 'NOT rejected'}")
