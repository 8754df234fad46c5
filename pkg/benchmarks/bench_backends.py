#!/usr/bin/env python3
"""Benchmark the compiled RK4 kernel against the pure-NumPy fallback.

Times the damped swap at the reference operating point for a few truncation
levels, in both the interaction picture (short horizon) and the lab frame
(the hot case: ~87k steps at dt = 1/(100 omega_r)).

Usage: python benchmarks/bench_backends.py [--quick]
"""

import argparse
import math
import time

import numpy as np

from spinphonon import (
    HilbertSpec,
    IntegrationSpec,
    LindbladModel,
    basis_density,
    evolve,
    hamiltonian_full,
    hamiltonian_jc,
    standard_channels,
    thermal_occupation,
)
from spinphonon.backends import available_backends
from spinphonon.experiments import TWO_PI_MHZ

OMEGA_R = 500 * TWO_PI_MHZ
G = 0.9 * TWO_PI_MHZ
GAMMA = 0.01 * TWO_PI_MHZ


def build(fock_levels, lab_frame):
    hs = HilbertSpec(fock_levels)
    h = (hamiltonian_full(hs, OMEGA_R, G, OMEGA_R) if lab_frame
         else hamiltonian_jc(hs, G))
    n_bath = thermal_occupation(OMEGA_R, 0.010)
    return LindbladModel(
        hamiltonian=h,
        channels=standard_channels(hs, GAMMA, GAMMA, n_bath),
        omega_r=OMEGA_R if lab_frame else None, g=G,
    ), basis_density(hs, 1, 0)


def run_case(label, fock_levels, lab_frame, n_steps_cap=None):
    model, rho0 = build(fock_levels, lab_frame)
    t_end = math.pi / (2 * G)
    dt = 1.0 / (100 * OMEGA_R) if lab_frame else 1.0 / (200 * G)
    n_steps = round(t_end / dt)
    if n_steps_cap and n_steps > n_steps_cap:
        t_end *= n_steps_cap / n_steps
        n_steps = n_steps_cap
    spec = IntegrationSpec(t_end=t_end, dt=dt, record_stride=max(1, n_steps // 50))

    timings = {}
    states = {}
    for backend in available_backends():
        best = math.inf
        for _ in range(2 if n_steps < 10_000 else 1):
            t0 = time.perf_counter()
            res = evolve(model, rho0, spec, backend=backend, check_invariants=False)
            best = min(best, time.perf_counter() - t0)
        timings[backend] = best
        states[backend] = res.final_state

    d = model.dim
    line = f"{label:<28} d={d:<3} steps={n_steps:<6}"
    for backend, elapsed in timings.items():
        line += f"  {backend}: {elapsed:8.3f} s ({elapsed / n_steps * 1e6:6.1f} us/step)"
    if len(timings) == 2:
        line += f"  speedup: {timings['python'] / timings['compiled']:.1f}x"
        mismatch = np.max(np.abs(states["compiled"] - states["python"]))
        line += f"  (max state diff {mismatch:.1e})"
    print(line)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true",
                        help="cap the lab-frame run at 10k steps")
    args = parser.parse_args()
    cap = 10_000 if args.quick else None

    print(f"backends: {', '.join(available_backends())}")
    run_case("interaction picture, N=9", 10, lab_frame=False)
    run_case("interaction picture, N=19", 20, lab_frame=False)
    run_case("lab frame, N=9", 10, lab_frame=True, n_steps_cap=cap)


if __name__ == "__main__":
    main()
