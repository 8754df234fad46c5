"""YAML run configurations with per-key source lines in every error.

Schema (see README for the full key/unit table): the top-level ``kind``
selects transfer, sweep, or coupling.  Every frequency-like quantity is a
mapping ``{mhz: <number>, two_pi: <bool>}`` -- the flag is mandatory so a
value like "2pi x 0.9 MHz" is unambiguous on disk.  Angular frequencies in
rad/s leave this module; nothing downstream converts units again.
"""

from __future__ import annotations

import math

import yaml

from .constants import MU_B
from .coupling import BeamMode, CouplingParams, DotProfile
from .errors import ConfigError
from .experiments import (
    SWEEPABLE,
    CouplingCurveSpec,
    SweepSpec,
    TransferSpec,
    default_sweep_spec,
    default_transfer_spec,
)

_MISSING = object()


class _ConfigMap(dict):
    """Mapping that remembers the source line of each key."""

    def __init__(self):
        super().__init__()
        self.key_lines = {}


class _Loader(yaml.SafeLoader):
    pass


def _construct_mapping(loader, node):
    loader.flatten_mapping(node)
    mapping = _ConfigMap()
    for key_node, value_node in node.value:
        key = loader.construct_object(key_node, deep=True)
        if key in mapping:
            raise ConfigError(f"duplicate key {key!r} (line {key_node.start_mark.line + 1})")
        mapping[key] = loader.construct_object(value_node, deep=True)
        mapping.key_lines[key] = key_node.start_mark.line + 1
    return mapping


_Loader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_mapping)


class _Section:
    """One mapping level; tracks which keys were consumed so leftovers can
    be reported as unknown, with their source lines."""

    def __init__(self, mapping, path=""):
        if not isinstance(mapping, dict):
            raise ConfigError(f"'{path or '<top>'}' must be a mapping of keys to values")
        self._map = mapping
        self._path = path
        self._used = set()

    def _label(self, key):
        full = f"{self._path}.{key}" if self._path else key
        line = getattr(self._map, "key_lines", {}).get(key)
        return f"'{full}'" + (f" (line {line})" if line is not None else "")

    def has(self, key):
        return key in self._map

    def take(self, key, default=_MISSING):
        if key in self._map:
            self._used.add(key)
            return self._map[key]
        if default is _MISSING:
            raise ConfigError(
                f"missing required key '{self._path + '.' if self._path else ''}{key}'"
            )
        return default

    def number(self, key, default=_MISSING, minimum=None):
        if not self.has(key) and default is not _MISSING:
            return default
        val = self.take(key)
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise ConfigError(f"{self._label(key)} must be a number, got {val!r}")
        if minimum is not None and val < minimum:
            raise ConfigError(f"{self._label(key)} must be >= {minimum}, got {val}")
        return float(val)

    def integer(self, key, default=_MISSING, minimum=None):
        if not self.has(key) and default is not _MISSING:
            return default
        val = self.take(key)
        if isinstance(val, bool) or not isinstance(val, int):
            raise ConfigError(f"{self._label(key)} must be an integer, got {val!r}")
        if minimum is not None and val < minimum:
            raise ConfigError(f"{self._label(key)} must be >= {minimum}, got {val}")
        return val

    def string(self, key, default=_MISSING, choices=None):
        if not self.has(key) and default is not _MISSING:
            return default
        val = self.take(key)
        if not isinstance(val, str):
            raise ConfigError(f"{self._label(key)} must be a string, got {val!r}")
        if choices is not None and val not in choices:
            raise ConfigError(f"{self._label(key)} must be one of {choices}, got {val!r}")
        return val

    def subsection(self, key, default=_MISSING):
        if not self.has(key) and default is not _MISSING:
            return default
        val = self.take(key)
        path = f"{self._path}.{key}" if self._path else key
        return _Section(val, path)

    def frequency(self, key, default=_MISSING, minimum=0.0):
        """A {mhz, two_pi} mapping converted to rad/s."""
        if not self.has(key) and default is not _MISSING:
            return default
        sub = self.subsection(key)
        mhz = sub.number("mhz", minimum=minimum)
        angular = _two_pi_flag(sub, key, self._path)
        sub.finish()
        return mhz * 1e6 * (2.0 * math.pi if angular else 1.0)

    def frequency_list(self, key):
        sub = self.subsection(key)
        values = sub.take("mhz")
        if not isinstance(values, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in values
        ):
            raise ConfigError(f"{sub._label('mhz')} must be a list of numbers")
        angular = _two_pi_flag(sub, key, self._path)
        sub.finish()
        scale = 1e6 * (2.0 * math.pi if angular else 1.0)
        return [float(v) * scale for v in values]

    def number_list(self, key):
        values = self.take(key)
        if not isinstance(values, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in values
        ):
            raise ConfigError(f"{self._label(key)} must be a list of numbers")
        return [float(v) for v in values]

    def finish(self):
        unknown = [k for k in self._map if k not in self._used]
        if unknown:
            raise ConfigError(
                "unknown key" + ("s " if len(unknown) > 1 else " ")
                + ", ".join(self._label(k) for k in unknown)
            )


def _two_pi_flag(sub, key, parent_path):
    full = f"{parent_path}.{key}" if parent_path else key
    if not sub.has("two_pi"):
        raise ConfigError(
            f"'{full}' is a frequency and must carry an explicit two_pi flag"
        )
    flag = sub.take("two_pi")
    if not isinstance(flag, bool):
        raise ConfigError(f"{sub._label('two_pi')} must be a boolean, got {flag!r}")
    return flag


def load_config(path):
    """Parse a config file into a TransferSpec, SweepSpec, or CouplingCurveSpec."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        raw = yaml.load(text, Loader=_Loader)
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    if raw is None:
        raise ConfigError(f"{path} is empty")
    top = _Section(raw)
    kind = top.string("kind", choices=("transfer", "sweep", "coupling"))
    if kind == "transfer":
        spec = _transfer_spec(top)
    elif kind == "sweep":
        spec = _sweep_spec(top)
    else:
        spec = _coupling_spec(top)
    top.finish()
    return spec


def _transfer_fields(sec, defaults: TransferSpec):
    fields = dict(
        omega_r=sec.frequency("omega_r", default=defaults.omega_r),
        g=sec.frequency("g", default=defaults.g),
        gamma_r=sec.frequency("gamma_r", default=defaults.gamma_r),
        gamma_s=sec.frequency("gamma_s", default=defaults.gamma_s),
        fock_levels=sec.integer("fock_levels", default=defaults.fock_levels, minimum=2),
        model=sec.string("model", default=defaults.model, choices=("jc", "full")),
    )
    t_mk = sec.number("temperature_mk", default=None, minimum=0.0)
    fields["temperature"] = defaults.temperature if t_mk is None else t_mk * 1e-3
    dt = sec.number("dt_s", default=None)
    if dt is not None and dt <= 0:
        raise ConfigError(f"{sec._label('dt_s')} must be positive, got {dt}")
    fields["dt"] = dt if dt is not None else defaults.dt
    return fields


def _wrap_spec_errors(builder, *args):
    try:
        return builder(*args)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _transfer_spec(top):
    fields = _transfer_fields(top, default_transfer_spec())
    return _wrap_spec_errors(lambda: TransferSpec(**fields))


def _sweep_spec(top):
    swept = top.string("swept", choices=SWEEPABLE)
    if top.has("values"):
        if swept == "temperature":
            vals = top.subsection("values")
            values = [v * 1e-3 for v in vals.number_list("mk")]
            vals.finish()
        else:
            values = top.frequency_list("values")
    else:
        values = None
    base_defaults = default_sweep_spec(swept).base
    if top.has("base"):
        base_sec = top.subsection("base")
        fields = _transfer_fields(base_sec, base_defaults)
        base_sec.finish()
        base = _wrap_spec_errors(lambda: TransferSpec(**fields))
    else:
        base = base_defaults
    if values is None:
        return _wrap_spec_errors(
            lambda: SweepSpec(base=base, swept_parameter=swept,
                              values=default_sweep_spec(swept).values)
        )
    return _wrap_spec_errors(
        lambda: SweepSpec(base=base, swept_parameter=swept, values=tuple(values))
    )


def _coupling_spec(top):
    length = top.number("length_nm", minimum=0.0) * 1e-9
    u0 = top.number("u0_pm", minimum=0.0) * 1e-12
    beta0 = top.number("beta0", default=4.730)
    delta_so = top.number("delta_so_uev", minimum=0.0) * 1e-6
    delta_kkp = top.number("delta_kkp_uev", default=0.0, minimum=0.0) * 1e-6
    mu_orb_mub = top.number("mu_orb_mub", default=None)

    dot_sec = top.subsection("dot", default=None)
    center_over_l = 0.5
    alpha = m_star = omega0 = None
    if dot_sec is not None:
        center_over_l = dot_sec.number("center_over_l", default=0.5)
        if dot_sec.has("alpha_times_l"):
            alpha = dot_sec.number("alpha_times_l", minimum=0.0) / length
        if dot_sec.has("m_star_kg") or dot_sec.has("omega0"):
            m_star = dot_sec.number("m_star_kg", minimum=0.0)
            omega0 = dot_sec.frequency("omega0")
        dot_sec.finish()
    if alpha is None and m_star is None:
        alpha = 40.0 / length

    sweep_sec = top.subsection("sweep", default=None)
    start_over_l, stop_over_l, points = 0.0, 1.0, 401
    if sweep_sec is not None:
        start_over_l = sweep_sec.number("start_over_l", default=0.0)
        stop_over_l = sweep_sec.number("stop_over_l", default=1.0)
        points = sweep_sec.integer("points", default=401, minimum=2)
        sweep_sec.finish()

    def build():
        beam = BeamMode(length_l=length, u0=u0, beta0=beta0)
        dot = DotProfile(
            center_zc=center_over_l * length, alpha=alpha, m_star=m_star, omega0=omega0
        )
        params = CouplingParams(
            delta_so=delta_so,
            beam=beam,
            dot=dot,
            delta_kkp=delta_kkp,
            mu_orb=None if mu_orb_mub is None else mu_orb_mub * MU_B,
        )
        return CouplingCurveSpec(
            params=params,
            center_start=start_over_l * length,
            center_stop=stop_over_l * length,
            points=points,
        )

    return _wrap_spec_errors(build)
