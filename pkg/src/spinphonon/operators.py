"""Operators on the truncated spin (x) phonon Hilbert space.

Basis convention: spin is the slow index, phonon the fast one, so the basis
state |s, n> has index s*(N+1) + n for spin s in {0, 1} and phonon number
n in {0, ..., N}.  Spin |0> is the ground state; sigma3 = |1><1| - |0><0|,
sigma_plus = |1><0|, sigma_minus = |0><1|.

All operators are dense complex matrices (total dimension stays small
enough that sparsity buys nothing).  Internal units have hbar = 1, so
Hamiltonian entries are angular frequencies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


@dataclass(frozen=True)
class HilbertSpec:
    """Truncation of the phonon mode: ``fock_levels`` = N+1 states |0..N>."""

    fock_levels: int

    def __post_init__(self):
        if self.fock_levels < 2:
            raise ValueError(f"need at least 2 phonon levels, got {self.fock_levels}")

    @property
    def dim(self) -> int:
        return 2 * self.fock_levels

    def index(self, spin: int, phonon: int) -> int:
        if spin not in (0, 1):
            raise ValueError(f"spin must be 0 or 1, got {spin}")
        if not 0 <= phonon < self.fock_levels:
            raise ValueError(f"phonon number {phonon} outside 0..{self.fock_levels - 1}")
        return spin * self.fock_levels + phonon


class SpinOps(NamedTuple):
    sigma1: np.ndarray
    sigma3: np.ndarray
    sigma_plus: np.ndarray
    sigma_minus: np.ndarray


def tensor(spin_factor: np.ndarray, phonon_factor: np.ndarray) -> np.ndarray:
    """Kronecker product in the fixed spin (x) phonon ordering."""
    if spin_factor.shape[0] != spin_factor.shape[1] or phonon_factor.shape[0] != phonon_factor.shape[1]:
        raise ValueError("tensor factors must be square")
    if spin_factor.shape[0] != 2:
        raise ValueError(f"spin factor must be 2x2, got {spin_factor.shape}")
    return np.kron(np.asarray(spin_factor, complex), np.asarray(phonon_factor, complex))


def annihilation(spec: HilbertSpec) -> np.ndarray:
    """Phonon annihilation operator a, embedded as identity (x) a."""
    nf = spec.fock_levels
    a = np.diag(np.sqrt(np.arange(1, nf, dtype=float)), 1)
    return tensor(np.eye(2), a)


def spin_ops(spec: HilbertSpec) -> SpinOps:
    """(sigma1, sigma3, sigma_plus, sigma_minus), each tensored with the
    phonon identity."""
    sp = np.zeros((2, 2))
    sp[1, 0] = 1.0          # |1><0|
    sm = sp.T.copy()        # |0><1|
    s1 = sp + sm
    s3 = np.diag([-1.0, 1.0])
    iph = np.eye(spec.fock_levels)
    return SpinOps(tensor(s1, iph), tensor(s3, iph), tensor(sp, iph), tensor(sm, iph))


def hamiltonian_full(spec: HilbertSpec, omega_s: float, g: float, omega_r: float) -> np.ndarray:
    """Lab-frame Hamiltonian (hbar = 1):

        H = (omega_s/2) sigma3 + g (a + a^dag) sigma1 + omega_r a^dag a
    """
    if omega_s < 0 or omega_r < 0:
        raise ValueError("omega_s and omega_r must be >= 0")
    a = annihilation(spec)
    ops = spin_ops(spec)
    return (
        0.5 * omega_s * ops.sigma3
        + g * (a + a.conj().T) @ ops.sigma1
        + omega_r * (a.conj().T @ a)
    )


def hamiltonian_jc(spec: HilbertSpec, g: float) -> np.ndarray:
    """Interaction-picture Hamiltonian after the rotating-wave approximation:

        H_in = g a sigma_plus + g a^dag sigma_minus
    """
    a = annihilation(spec)
    ops = spin_ops(spec)
    return g * (a @ ops.sigma_plus + a.conj().T @ ops.sigma_minus)


def basis_ket(spec: HilbertSpec, spin: int, phonon: int) -> np.ndarray:
    ket = np.zeros(spec.dim, complex)
    ket[spec.index(spin, phonon)] = 1.0
    return ket


def basis_density(spec: HilbertSpec, spin: int, phonon: int) -> np.ndarray:
    """Pure-state density matrix |s, n><s, n|."""
    k = basis_ket(spec, spin, phonon)
    return np.outer(k, k.conj())
