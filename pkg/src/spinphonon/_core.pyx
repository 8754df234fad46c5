# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled fixed-step RK4 kernel for the master equation.

Propagates drho/dt = G rho + rho G^dag + sum_k r_k ops_k rho ops_dag_k with
classical fourth-order Runge-Kutta and per-step Hermitian symmetrization,
recording states at the given step indices.  Matrix products go through
BLAS zgemm; everything else is flat vector arithmetic on preallocated
buffers, so the per-step cost is free of Python overhead.
"""

import numpy as np

cimport numpy as cnp
from libc.string cimport memcpy
from scipy.linalg.cython_blas cimport zgemm

cnp.import_array()

ctypedef double complex zcplx


cdef inline void _gemm(int d, zcplx* A, zcplx* B, zcplx alpha, zcplx beta,
                       zcplx* C) noexcept nogil:
    # Row-major C = alpha * A @ B + beta * C.  BLAS is column-major, so
    # compute C^T = alpha * B^T @ A^T by swapping the operands.
    cdef char no = b'N'
    zgemm(&no, &no, &d, &d, &d, &alpha, B, &d, A, &d, &beta, C, &d)


cdef void _rhs(int d, int nc, zcplx* G, zcplx* Gdag, zcplx* ops, zcplx* ops_dag,
               double* rates, zcplx* rho, zcplx* out, zcplx* scratch) noexcept nogil:
    cdef Py_ssize_t k, dd = <Py_ssize_t>d * d
    cdef zcplx one = 1.0, zero = 0.0, rk
    _gemm(d, G, rho, one, zero, out)
    _gemm(d, rho, Gdag, one, one, out)
    for k in range(nc):
        rk = rates[k]
        _gemm(d, ops + k * dd, rho, one, zero, scratch)
        _gemm(d, scratch, ops_dag + k * dd, rk, one, out)


def rk4_lindblad(cnp.ndarray[zcplx, ndim=2] G,
                 cnp.ndarray[zcplx, ndim=2] Gdag,
                 cnp.ndarray[zcplx, ndim=3] ops,
                 cnp.ndarray[zcplx, ndim=3] ops_dag,
                 cnp.ndarray[double, ndim=1] rates,
                 cnp.ndarray[zcplx, ndim=2] rho0,
                 double dt, Py_ssize_t n_steps,
                 cnp.ndarray[cnp.int64_t, ndim=1] rec_idx):
    cdef int d = rho0.shape[0]
    cdef int nc = ops.shape[0]
    cdef Py_ssize_t n_rec = rec_idx.shape[0]

    G = np.ascontiguousarray(G)
    Gdag = np.ascontiguousarray(Gdag)
    ops = np.ascontiguousarray(ops)
    ops_dag = np.ascontiguousarray(ops_dag)
    rates = np.ascontiguousarray(rates)

    out_arr = np.empty((n_rec, d, d), dtype=complex)
    rho_arr = np.ascontiguousarray(rho0).copy()
    k1_arr = np.empty((d, d), dtype=complex)
    k2_arr = np.empty((d, d), dtype=complex)
    k3_arr = np.empty((d, d), dtype=complex)
    k4_arr = np.empty((d, d), dtype=complex)
    stage_arr = np.empty((d, d), dtype=complex)
    scratch_arr = np.empty((d, d), dtype=complex)

    cdef zcplx[:, :, ::1] out = out_arr
    cdef zcplx[:, ::1] rho_mv = rho_arr
    cdef zcplx[:, ::1] k1m = k1_arr, k2m = k2_arr, k3m = k3_arr, k4m = k4_arr
    cdef zcplx[:, ::1] stage_mv = stage_arr, scratch_mv = scratch_arr
    cdef zcplx[:, ::1] G_mv = G, Gd_mv = Gdag
    cdef zcplx[:, :, ::1] ops_mv = ops, opsd_mv = ops_dag
    cdef double[::1] rates_mv = rates
    cdef cnp.int64_t[::1] rec = np.ascontiguousarray(rec_idx)

    cdef zcplx* rho = &rho_mv[0, 0]
    cdef zcplx* k1 = &k1m[0, 0]
    cdef zcplx* k2 = &k2m[0, 0]
    cdef zcplx* k3 = &k3m[0, 0]
    cdef zcplx* k4 = &k4m[0, 0]
    cdef zcplx* stage = &stage_mv[0, 0]
    cdef zcplx* scratch = &scratch_mv[0, 0]
    cdef zcplx* Gp = &G_mv[0, 0]
    cdef zcplx* Gdp = &Gd_mv[0, 0]
    cdef zcplx* opsp = &ops_mv[0, 0, 0] if nc > 0 else NULL
    cdef zcplx* opsdp = &opsd_mv[0, 0, 0] if nc > 0 else NULL
    cdef double* ratesp = &rates_mv[0] if nc > 0 else NULL

    cdef Py_ssize_t step, i, j, dd = <Py_ssize_t>d * d, rec_pos = 0
    cdef double half_dt = 0.5 * dt, sixth_dt = dt / 6.0
    cdef zcplx m

    with nogil:
        if rec_pos < n_rec and rec[rec_pos] == 0:
            memcpy(&out[rec_pos, 0, 0], rho, dd * sizeof(zcplx))
            rec_pos += 1
        for step in range(1, n_steps + 1):
            _rhs(d, nc, Gp, Gdp, opsp, opsdp, ratesp, rho, k1, scratch)
            for i in range(dd):
                stage[i] = rho[i] + half_dt * k1[i]
            _rhs(d, nc, Gp, Gdp, opsp, opsdp, ratesp, stage, k2, scratch)
            for i in range(dd):
                stage[i] = rho[i] + half_dt * k2[i]
            _rhs(d, nc, Gp, Gdp, opsp, opsdp, ratesp, stage, k3, scratch)
            for i in range(dd):
                stage[i] = rho[i] + dt * k3[i]
            _rhs(d, nc, Gp, Gdp, opsp, opsdp, ratesp, stage, k4, scratch)
            for i in range(dd):
                rho[i] = rho[i] + sixth_dt * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i])
            # rho <- (rho + rho^dag) / 2
            for i in range(d):
                rho_mv[i, i] = rho_mv[i, i].real + 0.0j
                for j in range(i + 1, d):
                    m = 0.5 * (rho_mv[i, j] + rho_mv[j, i].conjugate())
                    rho_mv[i, j] = m
                    rho_mv[j, i] = m.conjugate()
            if rec_pos < n_rec and rec[rec_pos] == step:
                memcpy(&out[rec_pos, 0, 0], rho, dd * sizeof(zcplx))
                rec_pos += 1
    return out_arr
