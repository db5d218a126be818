"""
Run configuration: key=value files, their parsed form, and the resolved echo.

Every key has a parser and a formatter; ``format_config`` writes keys in
table order so that parsing the echo reproduces an identical RunConfig.
"""

from dataclasses import dataclass, fields, replace
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, Optional, Tuple, Union

from components.errors import ConfigError, DomainError, GatedRunError

FUNCTIONS = ("poly", "sin", "xi", "xi-derivative", "ht")
METHOD_NAMES = ("bnqn", "newton", "relaxed", "random-relaxed", "nu")
GATE_HEIGHT = 1e4


def _float(text: str) -> float:
    text = text.strip()
    if "/" in text:
        return float(Fraction(text))
    return float(text)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise ValueError("must be a positive integer")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise ValueError("must be >= 0")
    return value


def _positive_float(text: str) -> float:
    value = _float(text)
    if not value > 0:
        raise ValueError("must be positive")
    return value


def _bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError("expected true or false")


def _choice(options: Tuple[str, ...]) -> Callable[[str], str]:
    def parse(text: str) -> str:
        value = text.strip().lower().replace("_", "-")
        if value not in options:
            raise ValueError(f"expected one of {', '.join(options)}")
        return value
    return parse


def _number_list(text: str) -> Tuple[str, ...]:
    """Semicolon-separated complex numbers kept as normalized strings."""
    items = tuple(item.strip().replace(" ", "") for item in text.split(";") if item.strip())
    for item in items:
        complex(item.replace("i", "j"))
    return tuple(item.replace("i", "j") for item in items)


def _float_list(text: str) -> Tuple[float, ...]:
    return tuple(_float(item) for item in text.replace(";", ",").split(",") if item.strip())


def _point_list(text: str) -> Tuple[Tuple[float, float], ...]:
    """``x,y; x,y`` pairs."""
    points = []
    for item in text.split(";"):
        if not item.strip():
            continue
        parts = [p for p in item.split(",")]
        if len(parts) != 2:
            raise ValueError("points are written x,y and separated by ';'")
        points.append((_float(parts[0]), _float(parts[1])))
    return tuple(points)


def _method_list(text: str) -> Tuple[str, ...]:
    parse = _choice(METHOD_NAMES)
    return tuple(parse(item) for item in text.split(";") if item.strip())


def _rect(text: str) -> Tuple[float, float, float, float]:
    values = _float_list(text)
    if len(values) != 4:
        raise ValueError("rect is x_lo,x_hi,y_lo,y_hi")
    return values  # type: ignore[return-value]


def _text(text: str) -> str:
    return text.strip()


def _fmt_scalar(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, tuple):
        if value and isinstance(value[0], tuple):
            return ";".join(",".join(_fmt_scalar(c) for c in item) for item in value)
        if value and isinstance(value[0], float):
            return ",".join(_fmt_scalar(v) for v in value)
        return ";".join(_fmt_scalar(v) for v in value)
    return _fmt_scalar(value)


# key -> parser; an empty value always means "unset" (None) for optional keys
PARSERS: Dict[str, Callable[[str], Any]] = {
    "preset": _text,
    "function": _choice(FUNCTIONS),
    "roots": _number_list,
    "coefficients": _number_list,
    "derivative_order": _positive_int,
    "heat_t": _float,
    "series_terms": _positive_int,
    "upper_cutoff": _positive_float,
    "quadrature_nodes": _positive_int,
    "method": _choice(METHOD_NAMES),
    "comparators": _method_list,
    "alpha": lambda t: _number_list(t)[0],
    "voronoi_render": _bool,
    "extra_sites": _number_list,
    "basin_csv": _text,
    "deltas": _float_list,
    "theta": _float,
    "tau": _positive_float,
    "gamma0": _positive_float,
    "max_iter": _non_negative_int,
    "grad_tol": _positive_float,
    "max_halvings": _positive_int,
    "root_tol": _positive_float,
    "dps": _positive_int,
    "guard_digits": _non_negative_int,
    "x_min": _float,
    "x_max": _float,
    "y_min": _float,
    "y_max": _float,
    "nx": _positive_int,
    "ny": _positive_int,
    "y_render_scale": _positive_float,
    "seeds": _point_list,
    "seed_height": _float,
    "seed_count": _positive_int,
    "seed_spacing": _positive_float,
    "refine_splits": _non_negative_int,
    "extension_budget": _non_negative_int,
    "verify_radius": _positive_float,
    "t_lo": _float,
    "t_hi": _float,
    "scan_step": _positive_float,
    "rect": _rect,
    "workers": _non_negative_int,
    "out": _text,
    "seed": _non_negative_int,
}


@dataclass(frozen=True)
class RunConfig:
    preset: Optional[str] = None
    # target function
    function: str = "poly"
    roots: Tuple[str, ...] = ()
    coefficients: Tuple[str, ...] = ()
    derivative_order: int = 1
    heat_t: float = 0.0
    series_terms: Optional[int] = None
    upper_cutoff: Optional[float] = None
    quadrature_nodes: int = 32
    # iteration
    method: str = "bnqn"
    comparators: Tuple[str, ...] = ()
    alpha: Optional[str] = None
    voronoi_render: bool = False
    extra_sites: Tuple[str, ...] = ()
    basin_csv: Optional[str] = None
    deltas: Optional[Tuple[float, ...]] = None
    theta: float = 1.0
    tau: float = 1.0
    gamma0: float = 1.0
    max_iter: int = 30
    grad_tol: Optional[float] = None
    max_halvings: int = 200
    root_tol: float = 1e-6
    # precision
    dps: Optional[int] = None
    guard_digits: int = 10
    # grid
    x_min: float = -2.0
    x_max: float = 2.0
    y_min: float = -2.0
    y_max: float = 2.0
    nx: int = 50
    ny: int = 50
    y_render_scale: float = 1.0
    # seeds and scans
    seeds: Tuple[Tuple[float, float], ...] = ()
    seed_height: Optional[float] = None
    seed_count: int = 31
    seed_spacing: float = 1.0 / 30.0
    refine_splits: int = 10
    extension_budget: int = 60
    verify_radius: float = 1e-6
    t_lo: Optional[float] = None
    t_hi: Optional[float] = None
    scan_step: float = 0.05
    rect: Optional[Tuple[float, float, float, float]] = None
    # run
    workers: Optional[int] = None
    out: str = "out"
    seed: int = 0

    @property
    def digits(self) -> int:
        """Explicit dps, else 100 for ξ-based targets and 50 otherwise."""
        if self.dps is not None:
            return self.dps
        return 100 if self.function in ("xi", "xi-derivative") else 50

    def with_overrides(self, **changes) -> "RunConfig":
        changes = {k: v for k, v in changes.items() if v is not None}
        return replace(self, **changes)

    def check_gate(self, allow_long: bool) -> None:
        heights = [abs(self.seed_height)] if self.seed_height is not None else []
        heights += [abs(y) for _, y in self.seeds]
        if self.t_hi is not None:
            heights.append(abs(self.t_hi))
        if heights and max(heights) > GATE_HEIGHT and not allow_long:
            raise GatedRunError("gated: long-running")


CONFIG_KEYS = tuple(f.name for f in fields(RunConfig))
assert set(CONFIG_KEYS) == set(PARSERS), "every RunConfig field needs a parser"


def parse_lines(lines: Iterable[str]) -> Dict[str, Any]:
    """Parse key=value lines into typed values; ``#`` starts a comment."""
    values: Dict[str, Any] = {}
    for number, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {number}: expected key=value, got {raw.strip()!r}")
        key, text = (part.strip() for part in line.split("=", 1))
        if key not in PARSERS:
            raise ConfigError(f"line {number}: unknown key {key!r}", key=key)
        if text == "":
            values[key] = None
            continue
        try:
            values[key] = PARSERS[key](text)
        except (ValueError, ArithmeticError, IndexError, DomainError) as e:
            raise ConfigError(f"line {number}: invalid value for {key!r}: {text!r} ({e})", key=key) from e
    return values


def build_config(values: Dict[str, Any], base: Optional[RunConfig] = None) -> RunConfig:
    base = base or RunConfig()
    defaults = RunConfig()
    resolved = {}
    for key, value in values.items():
        resolved[key] = getattr(defaults, key) if value is None and getattr(defaults, key) is not None else value
    config = replace(base, **resolved)
    validate(config)
    return config


def validate(config: RunConfig) -> None:
    if not config.x_min < config.x_max:
        raise ConfigError("x_min must be below x_max", key="x_min")
    if not config.y_min < config.y_max:
        raise ConfigError("y_min must be below y_max", key="y_min")
    if config.dps is not None and config.dps < 15:
        raise ConfigError("dps must be at least 15", key="dps")
    if config.deltas is not None and (len(config.deltas) < 3 or len(set(config.deltas)) != len(config.deltas)):
        raise ConfigError("deltas needs at least three distinct values", key="deltas")
    if not 0 < config.gamma0 <= 1:
        raise ConfigError("gamma0 must lie in (0, 1]", key="gamma0")
    if config.theta < 0:
        raise ConfigError("theta must be >= 0", key="theta")
    if config.heat_t > 0.5:
        raise ConfigError("heat_t must be <= 0.5", key="heat_t")
    if config.function == "poly" and not (config.roots or config.coefficients):
        raise ConfigError("poly needs roots or coefficients", key="roots")
    if config.roots and config.coefficients:
        raise ConfigError("give either roots or coefficients, not both", key="coefficients")
    if (config.t_lo is None) != (config.t_hi is None):
        raise ConfigError("t_lo and t_hi go together", key="t_lo" if config.t_lo is None else "t_hi")
    if config.t_lo is not None and config.t_hi < config.t_lo:
        raise ConfigError("t_hi must not be below t_lo", key="t_hi")


def parse_config(text: str, base: Optional[RunConfig] = None) -> RunConfig:
    return build_config(parse_lines(text.splitlines()), base)


def load_config(path: Union[str, Path], base: Optional[RunConfig] = None) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    return parse_config(text, base)


def format_config(config: RunConfig) -> str:
    """Every key in table order, one per line; unset optional keys are left empty."""
    return "".join(f"{key}={_fmt(getattr(config, key))}\n" for key in CONFIG_KEYS)
