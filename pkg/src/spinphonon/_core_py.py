"""Pure-NumPy fixed-step RK4 kernel for the master equation.

Same contract as the compiled kernel in ``_core``: propagate

    drho/dt = G rho + rho G^dag + sum_k rates[k] * ops[k] rho ops_dag[k]

with classical fourth-order Runge-Kutta, Hermitian symmetrization after
every step, recording the state at the step indices in ``rec_idx``
(sorted, starting at 0, ending at n_steps).
"""

from __future__ import annotations

import numpy as np


def rk4_lindblad(G, Gdag, ops, ops_dag, rates, rho0, dt, n_steps, rec_idx):
    d = rho0.shape[0]
    r = np.asarray(rates, float).reshape(-1, 1, 1)
    have_channels = ops.shape[0] > 0

    def rhs(p):
        drho = G @ p + p @ Gdag
        if have_channels:
            drho += np.sum(r * (ops @ p @ ops_dag), axis=0)
        return drho

    out = np.empty((len(rec_idx), d, d), complex)
    rec_pos = 0
    rho = rho0.astype(complex).copy()
    if rec_idx[rec_pos] == 0:
        out[rec_pos] = rho
        rec_pos += 1
    for step in range(1, n_steps + 1):
        k1 = rhs(rho)
        k2 = rhs(rho + (0.5 * dt) * k1)
        k3 = rhs(rho + (0.5 * dt) * k2)
        k4 = rhs(rho + dt * k3)
        rho += (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        rho = 0.5 * (rho + rho.conj().T)
        if rec_pos < len(rec_idx) and step == rec_idx[rec_pos]:
            out[rec_pos] = rho
            rec_pos += 1
    return out
