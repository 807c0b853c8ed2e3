"""Experiment configuration: JSON schema, defaults and validation."""
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import jsonschema

from .confined import SystemConfig
from .constants import TOL, Tolerances

EXPERIMENTS = (
    "verify-dense",
    "verify-closed",
    "defect",
    "falsify-pauli",
    "clock",
    "arrival",
    "crosscheck-toa",
)

_int_list = {"type": "array", "items": {"type": "integer"}, "minItems": 1}

SCHEMA = {
    "type": "object",
    "required": ["experiment", "system"],
    "additionalProperties": False,
    "properties": {
        "experiment": {"enum": list(EXPERIMENTS)},
        "system": {
            "type": "object",
            "required": ["l", "mu", "gamma", "K"],
            "additionalProperties": False,
            "properties": {
                "l": {"type": "number", "exclusiveMinimum": 0},
                "mu": {"type": "number", "exclusiveMinimum": 0},
                "gamma": {"type": "number", "exclusiveMinimum": -math.pi, "exclusiveMaximum": math.pi},
                "K": {"type": "integer", "minimum": 1},
            },
        },
        "quad_order": {"type": "integer", "minimum": 2},
        "seeds": _int_list,
        "K_series": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "support": {"type": "integer", "minimum": 1},
        "bump_m": {"type": "integer", "minimum": 2},
        "epsilon": {"type": "number"},
        "eigenindex": {"type": "integer"},
        "pairs": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        },
        "periods": {"type": "integer", "minimum": 1},
        "time_points": {"type": "integer", "minimum": 2},
        "grid_points": {"type": "integer", "minimum": 3},
        "w": {"type": "number", "exclusiveMinimum": 0},
        "t_max": {"type": "number", "exclusiveMinimum": 0},
        "output_dir": {"type": "string", "minLength": 1},
        "tolerances": {
            "type": "object",
            "additionalProperties": False,
            "properties": {name: {"type": "number", "exclusiveMinimum": 0} for name in asdict(TOL)},
        },
    },
}


class ConfigError(ValueError):
    """Malformed or schema-violating configuration."""


@dataclass
class ExperimentConfig:
    experiment: str
    system: SystemConfig
    quad_order: int = 64
    seeds: list = field(default_factory=lambda: list(range(50)))
    K_series: Optional[list] = None
    support: Optional[int] = None
    bump_m: int = 4
    epsilon: float = 1.0
    eigenindex: int = 0
    pairs: list = field(default_factory=lambda: [[0, 1], [1, 2], [-1, 2]])
    periods: int = 3
    time_points: Optional[int] = None
    grid_points: int = 513
    w: Optional[float] = None
    t_max: Optional[float] = None
    output_dir: str = "ccr_forge_out"
    tolerances: Tolerances = TOL

    def echo(self):
        """Fully resolved configuration, as written into the report.

        The output location is left out so runs in different directories
        produce identical reports.
        """
        out = asdict(self)
        del out["output_dir"]
        out["system"] = asdict(self.system)
        out["tolerances"] = self.tolerances.as_dict()
        return out


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from None


def validate(raw, strict=False):
    """Check ``raw`` against the schema; return (ExperimentConfig, warnings).

    Unknown keys are errors in strict mode and warnings (then ignored)
    otherwise. Physics errors in the system block raise ``ValueError``.
    """
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(raw), key=lambda e: [str(p) for p in e.absolute_path])
    warnings = []
    fatal = []
    for err in errors:
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        if err.validator == "additionalProperties" and not strict:
            warnings.append(f"{where}: {err.message} (ignored)")
        else:
            fatal.append(f"{where}: {err.message}")
    if fatal:
        raise ConfigError("invalid config: " + "; ".join(fatal))
    known = SCHEMA["properties"]
    data = {k: v for k, v in raw.items() if k in known}
    sysd = {k: v for k, v in data.pop("system").items() if k in known["system"]["properties"]}
    tol = TOL.updated(**{k: v for k, v in data.pop("tolerances", {}).items() if k in asdict(TOL)})
    cfg = ExperimentConfig(system=SystemConfig(**sysd), tolerances=tol, **data)
    return cfg, warnings
