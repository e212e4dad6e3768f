"""Run configuration: flat ``key = value [unit]`` files with explicit units.

Grammar, one statement per line::

    # comment (also allowed after a statement)
    key = value [unit]

Unknown keys and missing or wrong unit suffixes are hard errors. Physical
quantities must carry one of: GHz, MHz (frequencies, stored as angular
rad/s), ns (times), km, cm (lengths), dB_per_km, dB_per_cm (attenuation).
Chip-scale cm quantities are normalized into the km lane by scaling the
attenuation up and the span down by 100, preserving the span loss product.

Recognized keys:

* run control: ``scenario`` (built-in name), ``hops``, ``seed``,
  ``pclick_override``, ``p_link``, ``q_swap``, ``t_final``, ``dt``
* node physics: ``omega_c``, ``omega_m``, ``g_mc``, ``kappa_d``,
  ``gamma_d``, ``kappa_phi``, ``gamma_phi``, ``dim_c``, ``dim_m``
* inline scenario: ``scenario_name``, ``alpha``, ``span``, ``eta_read``,
  ``eta_conv``, ``eta_extra``, ``eta_det``, ``eta_col``, ``p_bsa``, ``m_mux``

An inline scenario must be complete (``eta_conv`` may be omitted for purely
microwave links) and cannot be combined with the ``scenario`` key. An empty
file yields all defaults: the resonant 10 GHz node and the chip-a scenario.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from .dynamics import LindbladParams
from .network import BUILTIN_SCENARIOS, NoiseModel, ScenarioParams, get_scenario

TWO_PI = 2.0 * math.pi

COMMANDS = ("pair", "chain", "sweep")
OUTPUT_FORMATS = ("csv", "svg")


class ConfigError(ValueError):
    """Unparseable or contradictory run configuration."""


@dataclass
class RunConfig:
    """Everything one deterministic run needs."""

    command: str = "pair"
    scenario: ScenarioParams = field(default_factory=lambda: BUILTIN_SCENARIOS["chip-a"])
    hops: int = 4
    noise: NoiseModel = field(default_factory=NoiseModel)
    lindblad: LindbladParams = field(default_factory=LindbladParams)
    seed: int = 0
    output_dir: Path = field(default_factory=lambda: Path("out"))
    formats: tuple[str, ...] = ("csv",)
    pclick_override: float | None = None
    ideal: bool = False
    t_final: float | None = None  # seconds
    dt: float | None = None  # seconds

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"command must be one of {COMMANDS}, got {self.command!r}")
        if self.hops < 1:
            raise ConfigError(f"hops must be >= 1, got {self.hops}")
        if not self.formats:
            raise ConfigError("at least one output format is required")
        bad = [f for f in self.formats if f not in OUTPUT_FORMATS]
        if bad:
            raise ConfigError(f"unknown output formats {bad}; valid: {OUTPUT_FORMATS}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must fit in 64 bits, got {self.seed}")
        self.output_dir = Path(self.output_dir)


_FREQ_UNITS = {"ghz": 1e9, "mhz": 1e6}
_TIME_UNITS = {"ns": 1e-9}
_LENGTH_UNITS = {"km": 1.0, "cm": 1.0 / 100.0}
_ATTEN_UNITS = {"db_per_km": 1.0, "db_per_cm": 100.0}

_FREQ_KEYS = ("omega_c", "omega_m", "g_mc", "kappa_d", "gamma_d", "kappa_phi", "gamma_phi")
_TIME_KEYS = ("t_final", "dt")
_FRACTION_KEYS = ("eta_read", "eta_conv", "eta_extra", "eta_det", "eta_col",
                  "p_bsa", "p_link", "q_swap", "pclick_override")
_COUNT_KEYS = {"hops": 1, "seed": 0, "dim_c": 2, "dim_m": 2, "m_mux": 1}
_NAME_KEYS = ("scenario", "scenario_name")

_INLINE_REQUIRED = ("alpha", "span", "eta_read", "eta_extra", "eta_det",
                    "eta_col", "p_bsa", "m_mux")
_INLINE_KEYS = _INLINE_REQUIRED + ("eta_conv", "scenario_name")

KNOWN_KEYS = frozenset(_FREQ_KEYS) | set(_TIME_KEYS) | set(_FRACTION_KEYS) \
    | set(_COUNT_KEYS) | set(_NAME_KEYS) | {"alpha", "span"}


def _parse_number(token: str, where: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ConfigError(f"{where}: cannot parse {token!r} as a number") from None


def _parse_value(key: str, value: str, unit: str | None, where: str):
    if key in _FREQ_KEYS:
        if unit is None:
            raise ConfigError(f"{where}: {key} needs a unit suffix (GHz or MHz)")
        mult = _FREQ_UNITS.get(unit.lower())
        if mult is None:
            raise ConfigError(f"{where}: {key} takes GHz or MHz, not {unit!r}")
        v = _parse_number(value, where)
        if v < 0:
            raise ConfigError(f"{where}: {key} must be >= 0")
        return TWO_PI * v * mult
    if key in _TIME_KEYS:
        if unit is None or unit.lower() not in _TIME_UNITS:
            raise ConfigError(f"{where}: {key} needs the ns unit suffix")
        v = _parse_number(value, where)
        if v <= 0:
            raise ConfigError(f"{where}: {key} must be > 0")
        return v * _TIME_UNITS[unit.lower()]
    if key == "span":
        if unit is None or unit.lower() not in _LENGTH_UNITS:
            raise ConfigError(f"{where}: span takes km or cm, got {unit!r}")
        v = _parse_number(value, where)
        if v <= 0:
            raise ConfigError(f"{where}: span must be > 0")
        return v * _LENGTH_UNITS[unit.lower()]
    if key == "alpha":
        if unit is None or unit.lower() not in _ATTEN_UNITS:
            raise ConfigError(f"{where}: alpha takes dB_per_km or dB_per_cm, got {unit!r}")
        v = _parse_number(value, where)
        if v < 0:
            raise ConfigError(f"{where}: alpha must be >= 0")
        return v * _ATTEN_UNITS[unit.lower()]
    if unit is not None:
        raise ConfigError(f"{where}: {key} takes no unit suffix, got {unit!r}")
    if key in _FRACTION_KEYS:
        v = _parse_number(value, where)
        if not 0.0 <= v <= 1.0:
            raise ConfigError(f"{where}: {key}={v} outside [0, 1]")
        return v
    if key in _COUNT_KEYS:
        try:
            v = int(value)
        except ValueError:
            raise ConfigError(f"{where}: {key} must be an integer, got {value!r}") from None
        if v < _COUNT_KEYS[key]:
            raise ConfigError(f"{where}: {key} must be >= {_COUNT_KEYS[key]}, got {v}")
        return v
    if key in _NAME_KEYS:
        return value
    raise ConfigError(f"{where}: unhandled key {key!r}")  # pragma: no cover


def parse_config_text(text: str, source: str = "<config>") -> RunConfig:
    """Parse config text into a RunConfig; see the module docstring for keys."""
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        where = f"{source}:{lineno}"
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{where}: expected 'key = value [unit]', got {raw.strip()!r}")
        key_part, value_part = line.split("=", 1)
        key = key_part.strip().lower()
        if key not in KNOWN_KEYS:
            raise ConfigError(f"{where}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{where}: duplicate key {key!r}")
        tokens = value_part.split()
        if not tokens:
            raise ConfigError(f"{where}: missing value for {key!r}")
        if len(tokens) > 2:
            raise ConfigError(f"{where}: too many tokens after '=' for {key!r}")
        unit = tokens[1] if len(tokens) == 2 else None
        values[key] = _parse_value(key, tokens[0], unit, where)

    inline_present = [k for k in _INLINE_KEYS if k in values]
    if "scenario" in values and inline_present:
        raise ConfigError(
            f"{source}: 'scenario' cannot be combined with inline scenario keys {inline_present}"
        )

    if inline_present:
        missing = [k for k in _INLINE_REQUIRED if k not in values]
        if missing:
            raise ConfigError(f"{source}: inline scenario is missing keys {missing}")
        scenario = ScenarioParams(
            name=str(values.get("scenario_name", "custom")),
            alpha=values["alpha"],
            l_span=values["span"],
            eta_read=values["eta_read"],
            eta_conv=values.get("eta_conv"),
            eta_extra=values["eta_extra"],
            eta_det=values["eta_det"],
            eta_col=values["eta_col"],
            p_bsa=values["p_bsa"],
            m_mux=values["m_mux"],
        )
    elif "scenario" in values:
        try:
            scenario = get_scenario(str(values["scenario"]))
        except ValueError as exc:
            raise ConfigError(f"{source}: {exc}") from None
    else:
        scenario = BUILTIN_SCENARIOS["chip-a"]

    lb_kwargs = {k: values[k] for k in (*_FREQ_KEYS, "dim_c", "dim_m") if k in values}
    noise_kwargs = {k: values[k] for k in ("p_link", "q_swap") if k in values}
    try:
        lindblad = LindbladParams(**lb_kwargs)
        noise = NoiseModel(**noise_kwargs)
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from None

    return RunConfig(
        scenario=scenario,
        hops=int(values.get("hops", 4)),
        noise=noise,
        lindblad=lindblad,
        seed=int(values.get("seed", 0)),
        pclick_override=values.get("pclick_override"),
        t_final=values.get("t_final"),
        dt=values.get("dt"),
    )


def load_config(path: str | Path) -> RunConfig:
    """Read and parse a config file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    return parse_config_text(text, source=str(path))


def scenario_to_config(s: ScenarioParams) -> str:
    """Serialize a scenario as config lines that re-load to an equal value.

    Floats are written with full repr precision so the round trip is exact.
    """
    lines = [
        f"scenario_name = {s.name}",
        f"alpha = {s.alpha!r} dB_per_km",
        f"span = {s.l_span!r} km",
        f"eta_read = {s.eta_read!r}",
    ]
    if s.eta_conv is not None:
        lines.append(f"eta_conv = {s.eta_conv!r}")
    lines += [
        f"eta_extra = {s.eta_extra!r}",
        f"eta_det = {s.eta_det!r}",
        f"eta_col = {s.eta_col!r}",
        f"p_bsa = {s.p_bsa!r}",
        f"m_mux = {s.m_mux}",
    ]
    return "\n".join(lines) + "\n"
