"""``key = value`` experiment configuration with dotted keys.

Blank lines and ``#`` comments are ignored.  Vectors are comma separated.
Unknown keys are rejected so that typos fail loudly.
"""
from dataclasses import dataclass, replace
import math

import numpy as np

from .errors import ConfigError

FRAMES = ("pst", "helicity", "adapted")
FORMATS = ("csv", "json")
DEFAULT_THETAS = tuple(k * math.pi / 6 for k in range(7))


@dataclass(frozen=True)
class ExperimentConfig:
    mass: float = 1.0
    p0: tuple = (0.0, 0.0, 2.0)
    width: float = 0.5
    spinor: tuple = (1.0, 0.0, 0.0, 0.0)
    grid_n: int = 21
    grid_k: float = 4.0
    boost_axis: tuple = (1.0, 0.0, 0.0)
    rapidities: tuple = (0.0, 0.5, 1.0, 2.0)
    frame: str = "adapted"
    experiment: str = "relspin"
    output_path: str = None
    output_format: str = "csv"
    wigner_xi: tuple = None
    wigner_eta: tuple = (0.25, 0.5, 1.0, 2.0)
    wigner_theta: tuple = DEFAULT_THETAS
    gauge_t: tuple = None
    entangle_p1: tuple = None
    entangle_p2: tuple = None
    entangle_width: float = None
    entangle_grid_n: int = 7
    entangle_grid_k: float = None

    def __post_init__(self):
        validate(self)

    @property
    def spinor_complex(self):
        re1, im1, re2, im2 = self.spinor
        return np.array([complex(re1, im1), complex(re2, im2)])

    @property
    def custom_t(self):
        if not self.frame.startswith("custom:"):
            return None
        return _floats(self.frame[len("custom:"):], "frame", 4)


def _floats(text, key, length=None):
    try:
        values = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ConfigError(f"{key}: expected comma-separated numbers, got {text!r}") from None
    if length is not None and len(values) != length:
        raise ConfigError(f"{key}: expected {length} numbers, got {len(values)}")
    if not all(math.isfinite(v) for v in values):
        raise ConfigError(f"{key}: values must be finite")
    return values


def _float(text, key):
    return _floats(text, key, 1)[0]


def _int(text, key):
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {text!r}") from None


def _unit(values, key):
    norm = math.sqrt(sum(v * v for v in values))
    if norm == 0:
        raise ConfigError(f"{key}: axis must be nonzero")
    return tuple(v / norm for v in values)


_PARSERS = {
    "mass": ("mass", _float),
    "p0": ("p0", lambda t, k: _floats(t, k, 3)),
    "width": ("width", _float),
    "spinor": ("spinor", lambda t, k: _floats(t, k, 4)),
    "grid.n": ("grid_n", _int),
    "grid.k": ("grid_k", _float),
    "boost.axis": ("boost_axis", lambda t, k: _unit(_floats(t, k, 3), k)),
    "rapidities": ("rapidities", _floats),
    "frame": ("frame", lambda t, k: t.strip()),
    "experiment": ("experiment", lambda t, k: t.strip()),
    "output.path": ("output_path", lambda t, k: t.strip()),
    "output.format": ("output_format", lambda t, k: t.strip().lower()),
    "wigner.xi": ("wigner_xi", _floats),
    "wigner.eta": ("wigner_eta", _floats),
    "wigner.theta": ("wigner_theta", _floats),
    "gauge.t": ("gauge_t", lambda t, k: _floats(t, k, 4)),
    "entangle.p1": ("entangle_p1", lambda t, k: _floats(t, k, 3)),
    "entangle.p2": ("entangle_p2", lambda t, k: _floats(t, k, 3)),
    "entangle.width": ("entangle_width", _float),
    "entangle.grid.n": ("entangle_grid_n", _int),
    "entangle.grid.k": ("entangle_grid_k", _float),
}


def validate(cfg):
    if not cfg.mass > 0:
        raise ConfigError("mass must be positive")
    if not cfg.width > 0:
        raise ConfigError("width must be positive")
    if not any(cfg.spinor):
        raise ConfigError("spinor must be nonzero")
    for key, n in (("grid.n", cfg.grid_n), ("entangle.grid.n", cfg.entangle_grid_n)):
        if n < 3 or n % 2 == 0:
            raise ConfigError(f"{key} must be an odd integer >= 3")
    for key, k in (("grid.k", cfg.grid_k), ("entangle.grid.k", cfg.entangle_grid_k)):
        if k is not None and not k > 0:
            raise ConfigError(f"{key} must be positive")
    if cfg.entangle_width is not None and not cfg.entangle_width > 0:
        raise ConfigError("entangle.width must be positive")
    if not cfg.rapidities:
        raise ConfigError("rapidities must be non-empty")
    if cfg.frame not in FRAMES and not cfg.frame.startswith("custom:"):
        raise ConfigError(
            f"frame must be one of {', '.join(FRAMES)} or custom:t0,t1,t2,t3; got {cfg.frame!r}"
        )
    if cfg.frame.startswith("custom:") and not any(cfg.custom_t):
        raise ConfigError("custom frame direction must be nonzero")
    if cfg.output_format not in FORMATS:
        raise ConfigError(f"output.format must be csv or json, got {cfg.output_format!r}")
    for key in ("wigner_xi", "wigner_eta"):
        values = getattr(cfg, key)
        if values is not None and any(v < 0 for v in values):
            raise ConfigError(f"{key.replace('_', '.')} values must be non-negative")


def parse_config(text):
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _PARSERS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        name, parse = _PARSERS[key]
        values[name] = parse(value, key)
    return ExperimentConfig(**values)


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None


def with_overrides(cfg, **changes):
    changes = {k: v for k, v in changes.items() if v is not None}
    return replace(cfg, **changes) if changes else cfg
