"""The three experiments: coupling curve, state transfer, and error sweeps.

All frequencies entering the simulator are angular (rad/s); configuration
files carry MHz values with an explicit ``two_pi`` flag and the conversion
happens exactly once, at load time.  The coupling curve, by contrast,
reports plain frequency g/h in MHz, the convention of the coupling layer.

The transfer experiment drives the interaction-picture swap |1,0> -> |0,1>
for a duration t = pi/(2 g) and scores it against the pure target |0,1>.
The reported transfer fidelity uses the squared-overlap convention,
F = <target|rho|target> for a pure target (the square of the square-root
Uhlmann convention used by :func:`spinphonon.lindblad.fidelity`); see
README for why the two conventions coexist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .coupling import CouplingParams, coupling_strength
from .errors import IntegrationError, NumericalError, QuadratureError
from .lindblad import (
    IntegrationSpec,
    LindbladModel,
    evolve,
    fidelity,
    standard_channels,
    thermal_occupation,
)
from .operators import HilbertSpec, basis_density, hamiltonian_full, hamiltonian_jc

TWO_PI_MHZ = 2.0 * math.pi * 1e6

SWEEPABLE = ("gamma_s", "gamma_r", "temperature")


@dataclass(frozen=True)
class TransferSpec:
    """Inputs of one state-transfer run.  Frequencies/rates in rad/s, T in K."""

    omega_r: float
    g: float
    gamma_r: float
    gamma_s: float
    temperature: float
    fock_levels: int = 10
    dt: float | None = None
    model: str = "jc"

    def __post_init__(self):
        if self.g <= 0:
            raise ValueError(f"transfer needs g > 0, got {self.g}")
        for name in ("omega_r", "gamma_r", "gamma_s", "temperature"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)}")
        if self.model not in ("jc", "full"):
            raise ValueError(f"model must be 'jc' or 'full', got {self.model!r}")
        if self.dt is not None and self.dt <= 0:
            raise ValueError(f"dt override must be positive, got {self.dt}")


@dataclass(frozen=True)
class SweepSpec:
    base: TransferSpec
    swept_parameter: str
    values: tuple

    def __post_init__(self):
        if self.swept_parameter not in SWEEPABLE:
            raise ValueError(
                f"swept_parameter must be one of {SWEEPABLE}, got {self.swept_parameter!r}"
            )
        vals = tuple(float(v) for v in self.values)
        if len(vals) == 0:
            raise ValueError("sweep needs at least one value")
        if any(v < 0 for v in vals):
            raise ValueError("sweep values must be >= 0")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("sweep values must be strictly increasing")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class CouplingCurveSpec:
    params: CouplingParams
    center_start: float        # m
    center_stop: float         # m
    points: int = 401

    def __post_init__(self):
        l = self.params.beam.length_l
        if not (0 <= self.center_start < self.center_stop <= l):
            raise ValueError(
                f"center range [{self.center_start}, {self.center_stop}] must lie "
                f"inside [0, {l}] with start < stop"
            )
        if self.points < 2:
            raise ValueError(f"need at least 2 points, got {self.points}")


def default_transfer_spec(**overrides) -> TransferSpec:
    """Reference operating point: (w_r, g, g_r, g_s) = 2pi x (500, 0.9, 0.01,
    0.01) MHz at T = 10 mK, N = 9, interaction-picture model."""
    base = dict(
        omega_r=500.0 * TWO_PI_MHZ,
        g=0.9 * TWO_PI_MHZ,
        gamma_r=0.01 * TWO_PI_MHZ,
        gamma_s=0.01 * TWO_PI_MHZ,
        temperature=0.010,
        fock_levels=10,
        dt=None,
        model="jc",
    )
    base.update(overrides)
    return TransferSpec(**base)


def default_sweep_spec(swept_parameter: str, values=None, **base_overrides) -> SweepSpec:
    """Sweep over one dissipation parameter with the others held at the
    reference point of the corresponding figure:

    - gamma_s sweep: gamma_r = 0;
    - gamma_r sweep: gamma_s = 0;
    - temperature sweep: gamma_s = 0, gamma_r = 2pi x 0.001 MHz.

    Default ranges: rates 2pi x [0, 0.05] MHz, temperature [0, 100] mK,
    11 points each.
    """
    holds = {
        "gamma_s": dict(gamma_r=0.0),
        "gamma_r": dict(gamma_s=0.0),
        "temperature": dict(gamma_s=0.0, gamma_r=0.001 * TWO_PI_MHZ),
    }
    if swept_parameter not in holds:
        raise ValueError(f"swept_parameter must be one of {SWEEPABLE}, got {swept_parameter!r}")
    if values is None:
        if swept_parameter == "temperature":
            values = tuple(np.linspace(0.0, 0.100, 11))
        else:
            values = tuple(np.linspace(0.0, 0.05, 11) * TWO_PI_MHZ)
    overrides = {**holds[swept_parameter], **base_overrides}
    return SweepSpec(
        base=default_transfer_spec(**overrides),
        swept_parameter=swept_parameter,
        values=tuple(values),
    )


@dataclass(frozen=True)
class TransferResult:
    times: np.ndarray        # s
    p10: np.ndarray          # population of |1,0>
    p01: np.ndarray          # population of |0,1>
    coherence: np.ndarray    # <0,1| rho |1,0>
    fidelity: float          # squared-overlap transfer fidelity at t_end
    spec: TransferSpec
    dt: float
    n_steps: int
    backend: str


def _default_dt(spec: TransferSpec) -> float:
    if spec.dt is not None:
        return spec.dt
    if spec.model == "full":
        return 1.0 / (100.0 * spec.omega_r)
    return 1.0 / (200.0 * spec.g)


def run_state_transfer(spec: TransferSpec, backend: str = "auto") -> TransferResult:
    """Swap the spin excitation into the phonon mode under dissipation.

    Starts from |1,0><1,0| (spin excited, resonator pre-cooled to vacuum),
    evolves for t_end = pi/(2 g), and reports populations, the coherence
    <0,1|rho|1,0>, and the squared-overlap fidelity against |0,1>.
    """
    hs = HilbertSpec(spec.fock_levels)
    if spec.model == "full":
        h = hamiltonian_full(hs, spec.omega_r, spec.g, spec.omega_r)  # resonant
    else:
        h = hamiltonian_jc(hs, spec.g)
    n_bath = thermal_occupation(spec.omega_r, spec.temperature)
    model = LindbladModel(
        hamiltonian=h,
        channels=standard_channels(hs, spec.gamma_r, spec.gamma_s, n_bath),
        omega_r=spec.omega_r,
        omega_s=spec.omega_r,
        g=spec.g,
        gamma_r=spec.gamma_r,
        gamma_s=spec.gamma_s,
        temperature=spec.temperature,
    )
    t_end = math.pi / (2.0 * spec.g)
    dt = _default_dt(spec)
    n_steps = max(1, round(t_end / dt))
    stride = max(1, n_steps // 800)
    result = evolve(
        model,
        basis_density(hs, 1, 0),
        IntegrationSpec(t_end=t_end, dt=dt, record_stride=stride),
        backend=backend,
    )
    i10 = hs.index(1, 0)
    i01 = hs.index(0, 1)
    target = basis_density(hs, 0, 1)
    f_transfer = fidelity(target, result.final_state) ** 2
    return TransferResult(
        times=result.times,
        p10=result.states[:, i10, i10].real,
        p01=result.states[:, i01, i01].real,
        coherence=result.states[:, i01, i10].copy(),
        fidelity=f_transfer,
        spec=spec,
        dt=result.dt,
        n_steps=result.n_steps,
        backend=result.backend,
    )


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    values: np.ndarray
    errors: np.ndarray       # 1 - F, NaN where a run failed
    failures: tuple          # (index, message) pairs
    dt: float
    n_steps: int
    backend: str


def run_error_sweep(spec: SweepSpec, backend: str = "auto") -> SweepResult:
    """One transfer per swept value; the other parameters stay at base.

    Failed runs are recorded as NaN with their error message collected, so
    partial sweeps still produce a table.
    """
    errors = np.full(len(spec.values), np.nan)
    failures = []
    dt_used = n_steps_used = None
    backend_used = backend
    for i, value in enumerate(spec.values):
        run_spec = replace(spec.base, **{spec.swept_parameter: value})
        try:
            res = run_state_transfer(run_spec, backend=backend)
        except (IntegrationError, NumericalError, QuadratureError) as exc:
            failures.append((i, str(exc)))
            continue
        errors[i] = 1.0 - res.fidelity
        dt_used, n_steps_used, backend_used = res.dt, res.n_steps, res.backend
    return SweepResult(
        spec=spec,
        values=np.asarray(spec.values, float),
        errors=errors,
        failures=tuple(failures),
        dt=dt_used if dt_used is not None else float("nan"),
        n_steps=n_steps_used if n_steps_used is not None else 0,
        backend=backend_used,
    )


@dataclass(frozen=True)
class CouplingCurveResult:
    spec: CouplingCurveSpec
    centers: np.ndarray        # m
    g_mhz: np.ndarray          # plain frequency g/h
    max_abs_g_mhz: float
    argmax_center: float       # m


def run_coupling_curve(spec: CouplingCurveSpec) -> CouplingCurveResult:
    """Tabulate g(z'_c) over the center grid and locate the magnitude peak."""
    centers = np.linspace(spec.center_start, spec.center_stop, spec.points)
    g_mhz = np.array([coupling_strength(spec.params, c) for c in centers])
    imax = int(np.argmax(np.abs(g_mhz)))
    return CouplingCurveResult(
        spec=spec,
        centers=centers,
        g_mhz=g_mhz,
        max_abs_g_mhz=float(abs(g_mhz[imax])),
        argmax_center=float(centers[imax]),
    )
