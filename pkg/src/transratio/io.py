"""Reading population CSV files and ``key=value`` summary-constant files."""

from __future__ import annotations

import math
from importlib import resources
from pathlib import Path

from .errors import ParseError
from .population import Population, SummaryParams

PARAM_KEYS = ("N", "n", "Ybar", "Xbar", "Sx2", "Sy2", "rho", "R", "Rstar_bar")
REQUIRED_PARAM_KEYS = ("N", "n", "Ybar", "Xbar", "Sx2", "Sy2", "rho")
_INT_KEYS = ("N", "n")


def _parse_real(text: str, line: int, what: str) -> float:
    text = text.strip()
    # plain decimal only: no thousands separators, no comma decimals
    if not text or "," in text or "_" in text:
        raise ParseError(f"invalid {what} value {text!r}", line)
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"invalid {what} value {text!r}", line) from None
    if not math.isfinite(value):
        raise ParseError(f"{what} value {text!r} is not finite", line)
    return value


def parse_population_csv(text: str) -> Population:
    """Parse ``x,y`` CSV text; the header must be exactly ``x,y``."""
    x, y = [], []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if lineno == 1:
            line = line.lstrip("﻿")
        if not line:
            continue
        if not header_seen:
            if line != "x,y":
                raise ParseError(f"expected header 'x,y', got {line!r}", lineno)
            header_seen = True
            continue
        fields = line.split(",")
        if len(fields) != 2:
            raise ParseError(f"expected 2 fields, got {len(fields)}", lineno)
        x.append(_parse_real(fields[0], lineno, "x"))
        y.append(_parse_real(fields[1], lineno, "y"))
    if not header_seen:
        raise ParseError("empty file: missing 'x,y' header")
    if len(x) < 2:
        raise ParseError(f"population needs at least 2 rows (got {len(x)})")
    return Population(x, y)


def read_population_csv(path: str | Path) -> Population:
    return parse_population_csv(Path(path).read_text(encoding="utf-8"))


def parse_params(text: str) -> SummaryParams:
    """Parse ``key=value`` summary constants.

    Blank lines and ``#`` comments are skipped; unknown or repeated keys are
    rejected.
    """
    values: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected key=value, got {line!r}", lineno)
        key, _, value = (part.strip() for part in line.partition("="))
        if key not in PARAM_KEYS:
            raise ParseError(f"unknown key {key!r} (allowed: {', '.join(PARAM_KEYS)})", lineno)
        if key in values:
            raise ParseError(f"duplicate key {key!r}", lineno)
        number = _parse_real(value, lineno, key)
        if key in _INT_KEYS:
            if number != int(number):
                raise ParseError(f"{key} must be an integer (got {value!r})", lineno)
            number = int(number)
        values[key] = number
    missing = [k for k in REQUIRED_PARAM_KEYS if k not in values]
    if missing:
        raise ParseError(f"missing required keys: {', '.join(missing)}")
    return SummaryParams.from_constants(**values)


def read_params(path: str | Path) -> SummaryParams:
    return parse_params(Path(path).read_text(encoding="utf-8"))


def rao_params_path() -> Path:
    """Path of the bundled female literacy / work participation constants."""
    return Path(str(resources.files("transratio") / "data" / "rao.params"))


def rao_params() -> SummaryParams:
    return read_params(rao_params_path())
