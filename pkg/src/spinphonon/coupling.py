"""Beam eigenmode, dot density profile, and the electrically tunable coupling.

The mechanical layer is the fundamental flexural eigenmode of a nanotube
clamped at z = 0 and z = l,

    f(z) = cosh(kz) - cos(kz) + C (sin(kz) - sinh(kz)),
    C = (cos b - cosh b) / (sin b - sinh b),   k = b / l,

with b the fundamental clamped-clamped root (cos b cosh b = 1, b = 4.7300407...).
f is normalized so that the quadrature of f^2 over [0, l] equals l.  The
machine-precision root is the default: truncating b to 4.730 skews the mode
by ~1e-4 (nonzero slope at the midpoint, normalization off by 9e-6), which
would leak into the coupling curve as a spurious g(l/2) of a few 1e-5 MHz.
An explicit normalization scale keeps user-supplied truncated roots usable.

The electron sits in a parabolic lateral dot; its ground-state density is a
Gaussian of inverse width alpha = sqrt(m* w0 / hbar) centered at the dot
center, which an axial electric field E_z displaces by e E_z / (m* w0^2).

The coupling strength is

    g = delta_so * <f'> * u0 / (2 sqrt(2)),    <f'> = integral f'(z) n(z) dz,

reported as a plain frequency g/h in MHz (signed, following <f'>).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .constants import E_CHARGE, EV, H_PLANCK_EVS, HBAR, MU_B
from .errors import DomainError, QuadratureError

# Fundamental root of cos(b) cosh(b) = 1, to machine precision.
BETA0_CLAMPED = 4.730040744862704

# Gaussian mass outside [0, l] is < 1e-10 only for alpha*l above this bound;
# below it the clipped-tail quadrature is still computed but flagged.
MIN_ALPHA_L = 20.0

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(12)


@dataclass(frozen=True)
class BeamMode:
    """Geometry and fundamental flexural eigenmode of the doubly clamped tube.

    length_l: suspended length (m); u0: zero-point amplitude (m);
    beta0: dimensionless fundamental root.
    """

    length_l: float
    u0: float = 0.0
    beta0: float = BETA0_CLAMPED

    def __post_init__(self):
        if not self.length_l > 0:
            raise DomainError(f"beam length must be positive, got {self.length_l}")
        if self.u0 < 0:
            raise DomainError(f"zero-point amplitude must be >= 0, got {self.u0}")
        if not self.beta0 > 0:
            raise DomainError(f"beta0 must be positive, got {self.beta0}")

    @cached_property
    def shape_coeff(self) -> float:
        b = self.beta0
        return (math.cos(b) - math.cosh(b)) / (math.sin(b) - math.sinh(b))

    @cached_property
    def norm_scale(self) -> float:
        """Scale making the quadrature of f^2 over [0, l] equal l exactly."""
        x = _panel_nodes(2048)
        raw = self._raw_shape(x)
        integral = _panel_sum(raw * raw, 2048)
        return 1.0 / math.sqrt(integral)

    def _raw_shape(self, x):
        # x = z/l in [0, 1]
        bx = self.beta0 * x
        return np.cosh(bx) - np.cos(bx) + self.shape_coeff * (np.sin(bx) - np.sinh(bx))

    def _raw_slope(self, x):
        # d f / d(z/l)
        bx = self.beta0 * x
        return self.beta0 * (
            np.sinh(bx) + np.sin(bx) + self.shape_coeff * (np.cos(bx) - np.cosh(bx))
        )


@dataclass(frozen=True)
class DotProfile:
    """Parabolic-dot parameters.

    Supply either ``alpha`` directly or the pair ``(m_star, omega0)``;
    alpha is derived from the pair as sqrt(m* w0 / hbar).  When both routes
    are given they must agree to 1e-6 relative.
    """

    center_zc: float
    alpha: float | None = None
    omega0: float | None = None
    m_star: float | None = None

    def __post_init__(self):
        pair_given = self.omega0 is not None and self.m_star is not None
        if (self.omega0 is None) != (self.m_star is None):
            raise DomainError("m_star and omega0 must be supplied together")
        if pair_given:
            if self.m_star <= 0 or self.omega0 <= 0:
                raise DomainError("m_star and omega0 must be positive")
            derived_sq = self.m_star * self.omega0 / HBAR
            if self.alpha is None:
                object.__setattr__(self, "alpha", math.sqrt(derived_sq))
            elif abs(self.alpha**2 - derived_sq) > 1e-6 * derived_sq:
                raise DomainError(
                    f"alpha={self.alpha} inconsistent with "
                    f"sqrt(m*.omega0/hbar)={math.sqrt(derived_sq)}"
                )
        if self.alpha is None:
            raise DomainError("need alpha or the (m_star, omega0) pair")
        if self.alpha <= 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")

    @classmethod
    def from_alpha(cls, center_zc, alpha):
        return cls(center_zc=center_zc, alpha=alpha)

    @classmethod
    def from_oscillator(cls, center_zc, m_star, omega0):
        return cls(center_zc=center_zc, m_star=m_star, omega0=omega0)


@dataclass(frozen=True)
class CouplingParams:
    """Everything needed for the coupling strength and the sweet-spot field.

    delta_so, delta_kkp in eV; mu_orb in J/T (only used by the sweet-spot
    formula and may be omitted otherwise).
    """

    delta_so: float
    beam: BeamMode
    dot: DotProfile
    delta_kkp: float = 0.0
    mu_orb: float | None = None

    def __post_init__(self):
        if not self.delta_so > 0:
            raise DomainError(f"delta_so must be positive, got {self.delta_so}")
        if self.delta_kkp < 0:
            raise DomainError(f"delta_kkp must be >= 0, got {self.delta_kkp}")
        if not 0 < self.dot.center_zc < self.beam.length_l:
            raise DomainError(
                f"dot center {self.dot.center_zc} outside the open interval "
                f"(0, {self.beam.length_l})"
            )


def _check_z(z, length_l):
    z = np.asarray(z, dtype=float)
    if np.any(z < 0) or np.any(z > length_l):
        raise DomainError(f"z outside the beam span [0, {length_l}]")
    return z


def mode_shape(z, beam: BeamMode):
    """Dimensionless deflection f(z) of the fundamental mode, 0 <= z <= l."""
    z = _check_z(z, beam.length_l)
    out = beam.norm_scale * beam._raw_shape(z / beam.length_l)
    return float(out) if out.ndim == 0 else out


def mode_slope(z, beam: BeamMode):
    """df/dz of the fundamental mode (1/m), 0 <= z <= l."""
    z = _check_z(z, beam.length_l)
    out = beam.norm_scale * beam._raw_slope(z / beam.length_l) / beam.length_l
    return float(out) if out.ndim == 0 else out


def density_profile(z, dot: DotProfile, effective_center: float):
    """Ground-state electron density (1/m) at z for the dot displaced to
    ``effective_center``."""
    z = np.asarray(z, dtype=float)
    a = dot.alpha
    out = (a / math.sqrt(math.pi)) * np.exp(-(a * (z - effective_center)) ** 2)
    return float(out) if out.ndim == 0 else out


def shifted_center(dot: DotProfile, field_ez: float, beam: BeamMode | None = None) -> float:
    """Effective dot center z_c + e E_z / (m* w0^2) under an axial field.

    Requires the dot's (m_star, omega0) pair.  If ``beam`` is given and the
    result leaves [0, l], a warning is issued; the coupling stays computable
    because the quadrature clips the density tail at the beam ends.
    """
    if dot.m_star is None or dot.omega0 is None:
        raise DomainError("shifted_center needs a dot with m_star and omega0 resolved")
    zc = dot.center_zc + E_CHARGE * field_ez / (dot.m_star * dot.omega0**2)
    if beam is not None and not 0 <= zc <= beam.length_l:
        warnings.warn(
            f"shifted center {zc:.3e} m lies outside the beam span "
            f"[0, {beam.length_l:.3e}]; density tail will be clipped",
            stacklevel=2,
        )
    return zc


def _panel_nodes(n_panels: int) -> np.ndarray:
    """Gauss-Legendre nodes for n_panels equal panels of [0, 1], flattened."""
    edges = np.linspace(0.0, 1.0, n_panels + 1)
    half = 0.5 / n_panels
    mids = 0.5 * (edges[:-1] + edges[1:])
    return (mids[:, None] + half * _GL_NODES[None, :]).ravel()


def _panel_sum(values: np.ndarray, n_panels: int) -> float:
    half = 0.5 / n_panels
    return float(np.sum(values.reshape(n_panels, -1) @ _GL_WEIGHTS) * half)


def avg_slope(
    beam: BeamMode,
    dot: DotProfile,
    effective_center: float,
    rel_tol: float = 1e-8,
) -> float:
    """Density-weighted average of the mode slope, integral of f'(z) n(z) dz.

    Composite Gauss-Legendre quadrature over [0, l], refined by panel
    doubling until two levels agree to ``rel_tol`` relative.  Integration is
    limited to the tube; for alpha*l below 20 the clipped Gaussian tail is
    no longer negligible and a warning is issued.
    """
    al = dot.alpha * beam.length_l
    if al < MIN_ALPHA_L:
        warnings.warn(
            f"alpha*l = {al:.3g} < {MIN_ALPHA_L:g}: Gaussian tail clipped at the "
            "clamps is not negligible",
            stacklevel=2,
        )
    c = effective_center / beam.length_l

    def integral(n_panels):
        x = _panel_nodes(n_panels)
        fp = beam.norm_scale * beam._raw_slope(x)          # df/d(z/l)
        n = (al / math.sqrt(math.pi)) * np.exp(-(al * (x - c)) ** 2)  # n * l
        # dz = l dx cancels against the 1/l of both densities above
        return _panel_sum(fp * n, n_panels) / beam.length_l

    # Panels must resolve the Gaussian width 1/alpha.
    n_panels = int(max(32, min(65536, math.ceil(0.75 * al))))
    prev = integral(n_panels)
    floor = 1e-12 * max(1.0, al) / beam.length_l
    for _ in range(3):
        n_panels *= 2
        cur = integral(n_panels)
        if abs(cur - prev) <= max(rel_tol * abs(cur), floor):
            return cur
        prev = cur
    raise QuadratureError(
        f"avg_slope quadrature did not converge to rel_tol={rel_tol} "
        f"(last residual {abs(cur - prev):.3e})",
        estimate=cur,
        residual=abs(cur - prev),
    )


def coupling_strength(p: CouplingParams, effective_center: float) -> float:
    """Spin-phonon coupling g = delta_so <f'> u0 / (2 sqrt 2), returned as a
    plain frequency g/h in MHz (signed; sign follows <f'>)."""
    mean_slope = avg_slope(p.beam, p.dot, effective_center)
    g_ev = p.delta_so * mean_slope * p.beam.u0 / (2.0 * math.sqrt(2.0))
    return g_ev / H_PLANCK_EVS / 1e6


def sweet_spot_field(p: CouplingParams) -> float:
    """Magnetic field magnitude B* (T) at which the two-level spin-qubit
    reduction applies.

    The radicand 1 - 4 dkk^2 / (dso (mu_orb/mu_B^2 - 1)) is evaluated
    literally in reduced units (energies in ueV, moments in units of mu_B);
    as printed it is dimensionally odd, see README.  dkk = 0 short-circuits
    to a radicand of exactly one.
    """
    dso_uev = p.delta_so * 1e6
    dkk_uev = p.delta_kkp * 1e6
    if dkk_uev == 0.0:
        radicand = 1.0
    else:
        if p.mu_orb is None:
            raise DomainError("sweet_spot_field with delta_kkp > 0 needs mu_orb")
        mu_red = p.mu_orb / MU_B
        denom = dso_uev * (mu_red - 1.0)
        if denom == 0.0:
            raise DomainError(
                f"sweet-spot radicand undefined: mu_orb equals mu_B "
                f"(mu_orb={p.mu_orb} J/T) with delta_kkp={p.delta_kkp} eV"
            )
        radicand = 1.0 - 4.0 * dkk_uev**2 / denom
        if radicand < 0.0:
            raise DomainError(
                f"sweet-spot radicand negative for delta_so={p.delta_so} eV, "
                f"delta_kkp={p.delta_kkp} eV, mu_orb={p.mu_orb} J/T"
            )
    return (p.delta_so * EV) / (2.0 * MU_B) * math.sqrt(radicand)
