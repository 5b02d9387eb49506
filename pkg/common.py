import json
import logging
import math
import re
import sys
from typing import Optional, Tuple

import numpy as np
from pydantic import TypeAdapter
from pydantic import ValidationError as PydanticValidationError

logger = logging.getLogger(__name__)

EXIT_VALIDATION = 2
EXIT_RESOURCE = 3


class DekoError(Exception):
    """Base class for every error the library raises on purpose."""

    exit_code = 1


class ValidationError(DekoError):
    """Input that violates an invariant of a decorated object or file format."""

    exit_code = EXIT_VALIDATION


class DomainError(ValidationError):
    """An element, function or distribution used on the wrong decoration space."""


class ArgumentError(ValidationError):
    """Arguments that are individually valid but do not fit together."""


class UnsupportedOperationError(ValidationError):
    """The operation is not defined for the given kind of decoration space."""


class MomentInfeasibilityError(ValidationError):
    """A cell of a moment sequence is not the moment vector of any distribution."""

    def __init__(self, message: str, cell: Tuple[int, int], violation: float):
        super().__init__(message)
        self.cell = cell
        self.violation = violation


class ResourceGuardError(DekoError):
    """An exhaustive enumeration would exceed its configured budget."""

    exit_code = EXIT_RESOURCE


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """
    Create the PCG64 generator used everywhere randomness is needed

    Args:
        seed: Non-negative user seed
        stream: Extra integers that select an independent stream for the same seed

    Returns:
        A numpy Generator; identical arguments give identical draws
    """
    if seed < 0 or any(s < 0 for s in stream):
        raise ArgumentError(f"Seeds must be non-negative, got {(seed, *stream)}")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, *stream])))


def falling_factorial(n: int, k: int) -> int:
    result = 1
    for i in range(k):
        result *= n - i
    return result


def check_guard(count: float, limit: float, what: str, fallback: Optional[str] = None) -> None:
    """Raise ResourceGuardError when an enumeration of ``count`` items exceeds ``limit``."""
    if count > limit:
        hint = f"; use {fallback} instead" if fallback else ""
        raise ResourceGuardError(f"{what} needs {count:.3g} evaluations, above the limit {limit:.3g}{hint}")


def parse_payload(schema, data):
    """
    Validate decoded JSON against a pydantic model or TypeAdapter

    Raises:
        ValidationError: With pydantic's message when the payload does not match
    """
    adapter = schema if isinstance(schema, TypeAdapter) else TypeAdapter(schema)
    try:
        return adapter.validate_python(data)
    except PydanticValidationError as e:
        raise ValidationError(f"Invalid payload: {e}")


def load_json(path: str):
    """Decode a JSON input file, raising ValidationError when it cannot be read."""
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise ValidationError(f"Cannot read JSON from {path}: {e}")


_FLOAT_MARK = "\x00float:"
_MARKED_FLOAT = re.compile(r'"\\u0000float:([^"]*)"')


def float_text(x: float) -> str:
    """17 significant digits, always readable back as a float."""
    text = f"{x:.17g}"
    return text if any(c in text for c in ".e") else text + ".0"


def _mark_floats(value):
    if isinstance(value, float) and math.isfinite(value):
        return _FLOAT_MARK + float_text(value)
    if isinstance(value, dict):
        return {key: _mark_floats(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_mark_floats(item) for item in value]
    return value


def dump_json(payload) -> str:
    """Fixed layout for every JSON output: two-space indent, keys in insertion order, floats to 17 digits."""
    if hasattr(payload, "model_dump"):
        payload = payload.model_dump(mode="json")
    text = json.dumps(_mark_floats(payload), indent=2, allow_nan=False)
    return _MARKED_FLOAT.sub(lambda match: match.group(1), text) + "\n"


def write_output(text: str, out: Optional[str] = None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    except OSError as e:
        raise ValidationError(f"Cannot write {out}: {e}")
    logger.info(f"Wrote {out}")
