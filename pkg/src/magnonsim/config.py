"""Flat key=value run configuration: parsing, validation, serialization.

The parameter space is a dozen scalars, so the format is deliberately
minimal: one ``key = value`` per line, ``#`` starts a comment, bracketed
section headers are ignored, unknown keys are hard errors.  Override
strings (``key=value``) are applied after the file contents.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields

from .errors import ValidationError
from .liouvillian import SystemParams
from .sweep import AxisSpec

MODES = ("steady", "sweep", "resonance", "thermal-threshold", "check")
OUTPUT_FORMATS = ("csv", "json")
NOISE_CHANNELS = ("m_th", "n_th")

_PARAM_FLOAT_KEYS = (
    "delta_m", "delta_q", "chi_qm", "omega_s", "omega_d",
    "kappa_m", "kappa_q", "kappa_1", "n_th", "m_th", "gamma_ref_hz", "kappa_phi",
)


@dataclass(frozen=True)
class RunConfig:
    """Fully validated description of one CLI invocation."""

    mode: str = "steady"
    params: SystemParams = field(default_factory=SystemParams)
    axes: tuple[AxisSpec, ...] = ()
    output_path: str | None = None
    output_format: str = "csv"
    workers: int = 1
    noise_channel: str | None = None
    noise_hi: float = 0.1
    omega_m_gamma: float = 8500.0
    omega_q_gamma: float = 8500.0


def _parse_float(key: str, raw: str, where: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ValidationError(f"{where}: key {key!r} has unparsable number {raw!r}") from None


def _parse_int(key: str, raw: str, where: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"{where}: key {key!r} has unparsable integer {raw!r}") from None


def _parse_axis(key: str, raw: str, where: str) -> AxisSpec:
    parts = [p.strip() for p in raw.replace(",", " ").split()]
    if len(parts) != 4:
        raise ValidationError(
            f"{where}: key {key!r} must be 'parameter,start,stop,points', got {raw!r}"
        )
    name = parts[0]
    start = _parse_float(key, parts[1], where)
    stop = _parse_float(key, parts[2], where)
    points = _parse_int(key, parts[3], where)
    try:
        return AxisSpec(parameter=name, start=start, stop=stop, points=points)
    except ValidationError as exc:
        raise ValidationError(f"{where}: key {key!r}: {exc}") from None


def _apply_entry(state: dict, key: str, raw: str, where: str) -> None:
    if key == "mode":
        if raw not in MODES:
            raise ValidationError(f"{where}: mode must be one of {MODES}, got {raw!r}")
        state["mode"] = raw
    elif key in _PARAM_FLOAT_KEYS:
        state["param_overrides"][key] = _parse_float(key, raw, where)
    elif key == "n_fock":
        state["param_overrides"][key] = _parse_int(key, raw, where)
    elif key in ("axis1", "axis2"):
        state[key] = _parse_axis(key, raw, where)
    elif key == "output_path":
        state["output_path"] = raw
    elif key == "output_format":
        if raw not in OUTPUT_FORMATS:
            raise ValidationError(
                f"{where}: output_format must be one of {OUTPUT_FORMATS}, got {raw!r}"
            )
        state["output_format"] = raw
    elif key == "workers":
        value = _parse_int(key, raw, where)
        if value < 1:
            raise ValidationError(f"{where}: workers must be >= 1, got {value}")
        state["workers"] = value
    elif key == "noise_channel":
        if raw not in NOISE_CHANNELS:
            raise ValidationError(
                f"{where}: noise_channel must be one of {NOISE_CHANNELS}, got {raw!r}"
            )
        state["noise_channel"] = raw
    elif key == "noise_hi":
        value = _parse_float(key, raw, where)
        if not value > 0.0:
            raise ValidationError(f"{where}: noise_hi must be positive, got {value}")
        state["noise_hi"] = value
    elif key in ("omega_m", "omega_q"):
        value = _parse_float(key, raw, where)
        if not value > 0.0:
            raise ValidationError(f"{where}: {key} must be positive, got {value}")
        state["omega_m_gamma" if key == "omega_m" else "omega_q_gamma"] = value
    else:
        raise ValidationError(f"{where}: unknown key {key!r}")


def parse_config(text: str, overrides: list[str] | None = None) -> RunConfig:
    """Parse a flat key=value document plus ``key=value`` override strings.

    Missing model keys fall back to the defaults of
    :class:`~magnonsim.liouvillian.SystemParams`; every violated invariant is
    reported with the offending key and location.
    """
    state: dict = {
        "mode": "steady",
        "param_overrides": {},
        "axis1": None,
        "axis2": None,
        "output_path": None,
        "output_format": "csv",
        "workers": 1,
        "noise_channel": None,
        "noise_hi": 0.1,
        "omega_m_gamma": 8500.0,
        "omega_q_gamma": 8500.0,
    }

    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.startswith("[") and stripped.endswith("]"):
            continue  # section headers carry no information here
        if "=" not in stripped:
            raise ValidationError(f"line {lineno}: expected 'key = value', got {line.rstrip()!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        _apply_entry(state, key, raw, f"line {lineno}")

    for item in overrides or []:
        if "=" not in item:
            raise ValidationError(f"override {item!r}: expected 'key=value'")
        key, raw = (part.strip() for part in item.split("=", 1))
        _apply_entry(state, key, raw, f"override {item!r}")

    try:
        params = SystemParams(**state["param_overrides"])
    except ValidationError as exc:
        raise ValidationError(f"invalid model parameters: {exc}") from None

    axes = tuple(a for a in (state["axis1"], state["axis2"]) if a is not None)
    if state["axis1"] is None and state["axis2"] is not None:
        raise ValidationError("axis2 given without axis1")

    mode = state["mode"]
    if mode == "sweep" and not axes:
        raise ValidationError("mode 'sweep' requires at least one axis (key axis1)")
    if mode == "steady" and axes:
        raise ValidationError("mode 'steady' takes no axes")
    if mode == "thermal-threshold" and state["noise_channel"] is None:
        raise ValidationError("mode 'thermal-threshold' requires noise_channel = m_th or n_th")

    return RunConfig(
        mode=mode,
        params=params,
        axes=axes,
        output_path=state["output_path"],
        output_format=state["output_format"],
        workers=state["workers"],
        noise_channel=state["noise_channel"],
        noise_hi=state["noise_hi"],
        omega_m_gamma=state["omega_m_gamma"],
        omega_q_gamma=state["omega_q_gamma"],
    )


def serialize_config(config: RunConfig) -> str:
    """Render a RunConfig as a document that parses back to an equal config."""
    lines = [f"mode = {config.mode}"]
    defaults = SystemParams()
    for f in fields(SystemParams):
        value = getattr(config.params, f.name)
        if value is None and getattr(defaults, f.name) is None:
            continue
        lines.append(f"{f.name} = {value!r}")
    for slot, axis in zip(("axis1", "axis2"), config.axes):
        lines.append(f"{slot} = {axis.parameter},{axis.start!r},{axis.stop!r},{axis.points}")
    if config.output_path is not None:
        lines.append(f"output_path = {config.output_path}")
    lines.append(f"output_format = {config.output_format}")
    lines.append(f"workers = {config.workers}")
    if config.noise_channel is not None:
        lines.append(f"noise_channel = {config.noise_channel}")
    lines.append(f"noise_hi = {config.noise_hi!r}")
    lines.append(f"omega_m = {config.omega_m_gamma!r}")
    lines.append(f"omega_q = {config.omega_q_gamma!r}")
    return "\n".join(lines) + "\n"
