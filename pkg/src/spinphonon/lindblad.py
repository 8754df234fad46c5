"""Master equation, time evolution, and state metrics.

The density matrix obeys (hbar = 1)

    drho/dt = -i [H, rho] + sum_k rate_k D[o_k] rho,
    D[o] rho = o rho o^dag - (1/2) {o^dag o, rho},

with the standard damped-mode channel set built from the bath occupation
n_B: [(a, (n_B+1) gamma_r), (a^dag, n_B gamma_r), (sigma_minus, gamma_s)].
Time integration is classical fixed-step fourth-order Runge-Kutta with
Hermitian symmetrization after every step; trace drift is a diagnostic and
never renormalized away.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .backends import get_kernel
from .constants import HBAR, KB
from .errors import IntegrationError, NumericalError
from .operators import HilbertSpec, annihilation, spin_ops

# Tolerances for validating an input density matrix.
HERM_TOL = 1e-10
TRACE_TOL = 1e-8
EIG_FLOOR = -1e-8

# Tolerances each recorded state of an evolution must satisfy.
EVOLVE_TRACE_TOL = 1e-6
EVOLVE_HERM_TOL = 1e-8
EVOLVE_EIG_FLOOR = -1e-6

# Eigenvalues of a state more negative than this abort the fidelity instead
# of being clipped.
FIDELITY_CLIP = -1e-10


def thermal_occupation(omega_r: float, temperature: float) -> float:
    """Bose occupation n_B = 1/(exp(hbar w / k_B T) - 1); exactly 0 at T=0."""
    if omega_r <= 0:
        raise ValueError(f"omega_r must be positive, got {omega_r}")
    if temperature < 0:
        raise ValueError(f"temperature must be >= 0, got {temperature}")
    if temperature == 0.0:
        return 0.0
    x = HBAR * omega_r / (KB * temperature)
    if x > 700.0:  # 1/expm1 would overflow; the occupation is ~exp(-x)
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def dissipator(o: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Lindblad dissipator D[o] rho = o rho o^dag - (1/2){o^dag o, rho}."""
    if o.shape != rho.shape or o.shape[0] != o.shape[1]:
        raise ValueError(f"dimension mismatch: o {o.shape} vs rho {rho.shape}")
    od = o.conj().T
    odo = od @ o
    return o @ rho @ od - 0.5 * (odo @ rho + rho @ odo)


@dataclass(frozen=True)
class LindbladModel:
    """Hamiltonian plus (collapse operator, rate) channels.

    The scalar fields record the physical parameters the model was built
    from; only the ones entering the generator feed the step-size heuristic.
    """

    hamiltonian: np.ndarray
    channels: tuple = ()
    omega_r: float | None = None
    omega_s: float | None = None
    g: float | None = None
    gamma_r: float | None = None
    gamma_s: float | None = None
    temperature: float | None = None

    def __post_init__(self):
        h = self.hamiltonian
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise ValueError(f"hamiltonian must be square, got shape {h.shape}")
        for o, rate in self.channels:
            if o.shape != h.shape:
                raise ValueError(
                    f"channel operator shape {o.shape} does not match "
                    f"hamiltonian shape {h.shape}"
                )
            if rate < 0:
                raise ValueError(f"channel rate must be >= 0, got {rate}")

    @property
    def dim(self) -> int:
        return self.hamiltonian.shape[0]

    def dominant_angular_frequency(self) -> float:
        """Largest frequency scale of the generator: the maximum adjacent
        level spacing of H, or the largest channel rate."""
        eigs = np.sort(np.linalg.eigvalsh(self.hamiltonian))
        gap = float(np.max(np.diff(eigs))) if len(eigs) > 1 else 0.0
        rates = [rate for _, rate in self.channels]
        return max([gap] + rates) if rates else gap


def standard_channels(
    spec: HilbertSpec,
    gamma_r: float,
    gamma_s: float,
    n_bath: float,
    gamma_phi: float = 0.0,
) -> tuple:
    """Damped-mode channels [(a, (n_B+1) g_r), (a^dag, n_B g_r), (s-, g_s)].

    ``gamma_phi`` adds an optional pure-dephasing channel (sigma3, gamma_phi);
    it defaults to zero and is not part of the standard set.
    """
    a = annihilation(spec)
    ops = spin_ops(spec)
    channels = [
        (a, (n_bath + 1.0) * gamma_r),
        (a.conj().T, n_bath * gamma_r),
        (ops.sigma_minus, gamma_s),
    ]
    if gamma_phi > 0.0:
        channels.append((ops.sigma3, gamma_phi))
    return tuple(channels)


def master_rhs(model: LindbladModel, rho: np.ndarray) -> np.ndarray:
    """Right-hand side -i[H, rho] + sum_k rate_k D[o_k] rho."""
    h = model.hamiltonian
    drho = -1j * (h @ rho - rho @ h)
    for o, rate in model.channels:
        if rate != 0.0:
            drho += rate * dissipator(o, rho)
    return drho


@dataclass(frozen=True)
class IntegrationSpec:
    """Fixed-step integration horizon: total time, step, and how often the
    state is recorded (every ``record_stride`` steps plus the final one)."""

    t_end: float
    dt: float
    record_stride: int = 1

    def __post_init__(self):
        if not 0 < self.dt <= self.t_end:
            raise ValueError(f"need 0 < dt <= t_end, got dt={self.dt}, t_end={self.t_end}")
        if self.record_stride < 1:
            raise ValueError(f"record_stride must be >= 1, got {self.record_stride}")


@dataclass(frozen=True)
class EvolutionResult:
    times: np.ndarray            # (n_rec,) seconds
    states: np.ndarray           # (n_rec, d, d) density matrices
    dt: float                    # actual step used
    n_steps: int
    backend: str

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


def validate_density_matrix(
    rho: np.ndarray,
    herm_tol: float = HERM_TOL,
    trace_tol: float = TRACE_TOL,
    eig_floor: float = EIG_FLOOR,
) -> None:
    """Raise if rho is not Hermitian, unit-trace, and positive within tolerance."""
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > herm_tol:
        raise ValueError(f"not Hermitian: max |rho - rho^dag| = {herm:.3e} > {herm_tol}")
    tr = np.trace(rho)
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"trace {tr} deviates from 1 by more than {trace_tol}")
    if eig_floor > -np.inf:
        low = float(np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))))
        if low < eig_floor:
            raise ValueError(f"negative eigenvalue {low:.3e} below floor {eig_floor}")


def _check_recorded(states, rec_idx):
    for pos in range(states.shape[0]):
        step = int(rec_idx[pos])
        rho = states[pos]
        if not np.all(np.isfinite(rho.view(float))):
            raise IntegrationError(f"non-finite state entries at step {step}", step)
        drift = abs(np.trace(rho).real - 1.0) + abs(np.trace(rho).imag)
        if drift > EVOLVE_TRACE_TOL:
            raise IntegrationError(
                f"trace drift {drift:.3e} > {EVOLVE_TRACE_TOL} at step {step}", step
            )
        herm = np.max(np.abs(rho - rho.conj().T))
        if herm > EVOLVE_HERM_TOL:
            raise IntegrationError(
                f"Hermiticity residual {herm:.3e} > {EVOLVE_HERM_TOL} at step {step}", step
            )
        try:
            low = float(np.min(np.linalg.eigvalsh(rho)))
        except np.linalg.LinAlgError as exc:
            raise IntegrationError(
                f"eigendecomposition of the state failed at step {step}: {exc}", step
            ) from exc
        if low < EVOLVE_EIG_FLOOR:
            raise IntegrationError(
                f"eigenvalue {low:.3e} below {EVOLVE_EIG_FLOOR} at step {step}", step
            )


def evolve(
    model: LindbladModel,
    rho0: np.ndarray,
    spec: IntegrationSpec,
    backend: str = "auto",
    check_invariants: bool = True,
) -> EvolutionResult:
    """Integrate the master equation from rho0 over spec.t_end.

    The step is adjusted (downward, if needed) so an integer number of steps
    lands exactly on t_end.  Every recorded state is checked against the
    trace/Hermiticity/positivity invariants; a breach raises
    :class:`IntegrationError` with the offending step index.
    """
    validate_density_matrix(rho0)
    if rho0.shape != model.hamiltonian.shape:
        raise ValueError(
            f"rho0 shape {rho0.shape} does not match model dimension {model.dim}"
        )

    wmax = model.dominant_angular_frequency()
    if wmax > 0 and spec.dt > 1.0 / (50.0 * wmax):
        warnings.warn(
            f"dt = {spec.dt:.3e} s exceeds 1/(50 * dominant angular frequency) "
            f"= {1.0 / (50.0 * wmax):.3e} s; accuracy may degrade",
            stacklevel=2,
        )

    n_steps = max(1, round(spec.t_end / spec.dt))
    dt = spec.t_end / n_steps
    rec_idx = np.unique(
        np.concatenate([np.arange(0, n_steps + 1, spec.record_stride), [n_steps]])
    ).astype(np.int64)

    kernel = get_kernel(backend)
    used = backend if backend not in (None, "auto") else (
        "compiled" if kernel.__module__.endswith("_core") else "python"
    )

    h = np.ascontiguousarray(model.hamiltonian, dtype=complex)
    ops = [np.ascontiguousarray(o, dtype=complex) for o, rate in model.channels if rate != 0.0]
    rates = np.array([rate for _, rate in model.channels if rate != 0.0], dtype=float)
    d = model.dim
    ops_arr = np.array(ops) if ops else np.zeros((0, d, d), complex)
    ops_dag = np.ascontiguousarray(ops_arr.conj().transpose(0, 2, 1))
    # G = -iH - (1/2) sum_k r_k o_k^dag o_k; then
    # rhs(rho) = G rho + rho G^dag + sum_k r_k o_k rho o_k^dag
    G = -1j * h
    for o, rate in zip(ops, rates):
        G -= 0.5 * rate * (o.conj().T @ o)
    Gdag = np.ascontiguousarray(G.conj().T)
    G = np.ascontiguousarray(G)

    states = kernel(
        G, Gdag, ops_arr, ops_dag, rates,
        np.ascontiguousarray(rho0, dtype=complex), dt, n_steps, rec_idx,
    )
    if check_invariants:
        _check_recorded(states, rec_idx)
    return EvolutionResult(
        times=rec_idx * dt, states=states, dt=dt, n_steps=n_steps, backend=used
    )


def fidelity(rho_t: np.ndarray, rho: np.ndarray) -> float:
    """Uhlmann fidelity F(rho_t, rho) = Tr sqrt(sqrt(rho) rho_t sqrt(rho)).

    Square-root convention: F equals sqrt(<psi|rho|psi>) when rho_t is the
    pure state |psi><psi|.  Eigenvalues above ``FIDELITY_CLIP`` (slightly
    negative from roundoff) are clipped to zero; anything lower raises.
    """
    for name, mat in (("rho_t", rho_t), ("rho", rho)):
        try:
            # Evolved states carry the (looser) integrator guarantees;
            # negative eigenvalues are policed by the clipping threshold below.
            validate_density_matrix(
                mat,
                herm_tol=EVOLVE_HERM_TOL,
                trace_tol=EVOLVE_TRACE_TOL,
                eig_floor=-np.inf,
            )
        except ValueError as exc:
            raise ValueError(f"{name} is not a valid density matrix: {exc}") from exc
    try:
        w, v = np.linalg.eigh(rho)
        w = _clip_spectrum(w, "rho")
        sqrt_rho = (v * np.sqrt(w)) @ v.conj().T
        mid = sqrt_rho @ rho_t @ sqrt_rho
        w2 = np.linalg.eigvalsh(0.5 * (mid + mid.conj().T))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed in fidelity: {exc}") from exc
    w2 = _clip_spectrum(w2, "sqrt(rho) rho_t sqrt(rho)")
    return min(float(np.sum(np.sqrt(w2))), 1.0)


def _clip_spectrum(w, label):
    low = float(np.min(w))
    if low < FIDELITY_CLIP:
        raise NumericalError(
            f"{label} has eigenvalue {low:.3e} below the clipping threshold "
            f"{FIDELITY_CLIP}; refusing to mask it"
        )
    return np.clip(w, 0.0, None)


def partial_trace_phonon(rho: np.ndarray) -> np.ndarray:
    """Trace out the phonon factor, returning the 2x2 spin state."""
    d = rho.shape[0]
    nf = d // 2
    return np.einsum("anbn->ab", rho.reshape(2, nf, 2, nf))


def partial_trace_spin(rho: np.ndarray) -> np.ndarray:
    """Trace out the spin factor, returning the (N+1)x(N+1) phonon state."""
    d = rho.shape[0]
    nf = d // 2
    return np.einsum("anam->nm", rho.reshape(2, nf, 2, nf))
