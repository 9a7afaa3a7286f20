"""
Run configuration.

RunConfig collects everything a CLI invocation needs. Values may come from a
plain key=value file and from command-line flags; flags win. Every field is
validated on construction, and invalid values raise ConfigurationError.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple, Union

from cuspidal_shadow.exceptions import ConfigurationError
from cuspidal_shadow.liecore import CartanDatum, parse_cartan

logger = logging.getLogger(__name__)

COMMANDS = ("roots", "words", "pbw", "gbasis", "invariants", "qdata", "cuspline", "verify")
FORMATS = ("json", "tsv")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")
SWEEPS = (
    "convexity",
    "pbw-basis",
    "global-basis",
    "unitriangularity",
    "strong-datum",
    "unmixed",
    "parameterization",
    "invariants",
    "bilex-order",
)

DEFAULT_SEED = 1729


def parse_int_list(key: str, value: Union[str, Tuple[int, ...], None]) -> Optional[Tuple[int, ...]]:
    """'1,2,1' → (1, 2, 1); tuples pass through."""
    if value is None or isinstance(value, tuple):
        return value
    text = str(value).strip()
    if not text:
        return None
    try:
        return tuple(int(part) for part in text.replace(" ", "").split(","))
    except ValueError:
        raise ConfigurationError(key, value, "expected comma-separated integers") from None


def parse_k_range(value: Union[str, Tuple[int, int], None]) -> Optional[Tuple[int, int]]:
    """'-3:6' → (-3, 6), both ends inclusive."""
    if value is None or isinstance(value, tuple):
        return value
    low, sep, high = str(value).partition(":")
    try:
        bounds = (int(low), int(high))
    except ValueError:
        raise ConfigurationError("k_range", value, "expected LOW:HIGH") from None
    if not sep or bounds[0] > bounds[1]:
        raise ConfigurationError("k_range", value, "expected LOW:HIGH with LOW <= HIGH")
    return bounds


def _parse_bool(key: str, value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off", ""):
        return False
    raise ConfigurationError(key, value, "expected a boolean")


def _parse_int(key: str, value: Any) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigurationError(key, value, "expected an integer") from None


@dataclass(frozen=True)
class RunConfig:
    """
    Validated settings of one run.

    Examples:
        >>> RunConfig.from_mapping({"command": "roots", "cartan": "D4"}).cartan_datum.rank
        4
    """

    command: str
    cartan: str
    word: Optional[Tuple[int, ...]] = None
    height_bound: int = 6
    word_cap: int = 10000
    output: Optional[str] = None
    format: str = "json"
    seed: int = DEFAULT_SEED
    cache: Optional[str] = None
    workers: int = 1
    weight: Optional[Tuple[int, ...]] = None
    left: Optional[Tuple[int, ...]] = None
    right: Optional[Tuple[int, ...]] = None
    quiver: Optional[str] = None
    phi_base: int = 0
    k_range: Optional[Tuple[int, int]] = None
    param: Optional[str] = None
    sweeps: Tuple[str, ...] = SWEEPS
    timings: bool = False
    log_level: str = "WARNING"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigurationError("command", self.command, f"expected one of {', '.join(COMMANDS)}")
        parse_cartan(self.cartan)
        if self.height_bound < 1:
            raise ConfigurationError("height_bound", self.height_bound, "must be at least 1")
        if self.word_cap < 1:
            raise ConfigurationError("word_cap", self.word_cap, "must be at least 1")
        if self.workers < 1:
            raise ConfigurationError("workers", self.workers, "must be at least 1")
        if self.format not in FORMATS:
            raise ConfigurationError("format", self.format, f"expected one of {', '.join(FORMATS)}")
        if self.phi_base % 2:
            raise ConfigurationError("phi_base", self.phi_base, "φ(1) must be even")
        if self.log_level not in LOG_LEVELS:
            raise ConfigurationError("log_level", self.log_level, f"expected one of {', '.join(LOG_LEVELS)}")
        unknown = [s for s in self.sweeps if s not in SWEEPS]
        if unknown or not self.sweeps:
            raise ConfigurationError("sweeps", ",".join(self.sweeps), f"known sweeps are {', '.join(SWEEPS)}")

    @property
    def cartan_datum(self) -> CartanDatum:
        return CartanDatum.of_type(*parse_cartan(self.cartan))

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> RunConfig:
        """Build from raw strings (config file or argparse); None values are skipped.

        Raises:
            ConfigurationError: On unknown keys or invalid values
        """
        known = {f.name for f in fields(cls)}
        kwargs: Dict[str, Any] = {}
        for key, value in values.items():
            key = key.replace("-", "_")
            if value is None:
                continue
            if key not in known:
                raise ConfigurationError(key, value, "unknown configuration key")
            if key in ("height_bound", "word_cap", "seed", "workers", "phi_base"):
                value = _parse_int(key, value)
            elif key in ("word", "weight", "left", "right"):
                value = parse_int_list(key, value)
            elif key == "k_range":
                value = parse_k_range(value)
            elif key == "timings":
                value = _parse_bool(key, value)
            elif key == "sweeps" and isinstance(value, str):
                value = tuple(s.strip() for s in value.split(",") if s.strip())
            elif key in ("cartan", "format", "log_level"):
                value = str(value).strip()
                value = value.upper() if key in ("cartan", "log_level") else value.lower()
            if value is not None:
                kwargs[key] = value
        for required in ("command", "cartan"):
            if required not in kwargs:
                raise ConfigurationError(required, None, "is required")
        return cls(**kwargs)

    @staticmethod
    def read_file(path: Union[str, Path]) -> Dict[str, str]:
        """Parse key=value lines; '#' starts a comment and blank lines are ignored.

        Raises:
            ConfigurationError: If the file is missing or a line has no '='
        """
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as e:
            raise ConfigurationError("config", str(path), f"cannot read file: {e}") from None
        values: Dict[str, str] = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigurationError("config", str(path), f"line {number} is not key=value")
            values[key.strip()] = value.strip()
        return values

    @classmethod
    def load(cls, path: Optional[Union[str, Path]], overrides: Mapping[str, Any]) -> RunConfig:
        """File values first, then every non-None override on top."""
        values: Dict[str, Any] = dict(cls.read_file(path)) if path else {}
        values.update({k.replace("-", "_"): v for k, v in overrides.items() if v is not None})
        config = cls.from_mapping(values)
        logger.debug(f"Resolved configuration: {config}")
        return config
