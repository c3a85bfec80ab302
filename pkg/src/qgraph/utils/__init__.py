"""Simple utilities for QGraph application."""

import json
import logging
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, List, Optional, Sequence, Union

from rich.console import Console
from rich.logging import RichHandler

from qgraph.exceptions import ValidationError


# Vertex labels: bit i of a mask is the 1-indexed label i + 1
def bits_to_labels(bits: int) -> List[int]:
    """Ascending 1-indexed labels of a bitmask."""
    labels = []
    index = 0
    while bits:
        if bits & 1:
            labels.append(index + 1)
        bits >>= 1
        index += 1
    return labels


def labels_to_bits(labels: Iterable[int], n: int) -> int:
    """Bitmask of 1-indexed labels, range-checked against n."""
    bits = 0
    for label in labels:
        if isinstance(label, bool) or not isinstance(label, int):
            raise ValidationError(f"Vertex label must be an integer, got {label!r}", "input", label)
        if not 1 <= label <= n:
            raise ValidationError(f"Vertex label {label} outside 1..{n}", "range", label)
        bits |= 1 << (label - 1)
    return bits


def format_set(bits: int) -> str:
    """Compact set notation, e.g. ``{2,3,5}``."""
    return "{" + ",".join(str(label) for label in bits_to_labels(bits)) + "}"


def member_key(bits: int) -> tuple:
    """Sort key putting members in lexicographic label order with the empty set first."""
    return tuple(bits_to_labels(bits))


def sorted_members(members: Iterable[int]) -> List[int]:
    """Members in canonical (lexicographic label) order."""
    return sorted(members, key=member_key)


# Rationals
def fraction_to_json(value: Fraction) -> Union[int, str]:
    """Integers stay integers, everything else becomes ``"p/q"``."""
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def fraction_from_json(value: Union[int, str]) -> Fraction:
    """Inverse of :func:`fraction_to_json`."""
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ValidationError(f"Not a rational number: {value!r}", "input", value)


def format_weights(weights: Sequence[Fraction]) -> str:
    """Weight distribution in the ``(21_4, 42_6)`` notation, skipping A_0 and zeros."""
    parts = [f"{fraction_to_json(a)}_{d}" for d, a in enumerate(weights) if d > 0 and a != 0]
    return "(" + ", ".join(parts) + ")"


# JSON files
def load_json_file(path: Union[str, Path]) -> Any:
    """Read a JSON document, turning I/O and syntax problems into ValidationError."""
    file_path = Path(path)
    try:
        with open(file_path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise ValidationError(f"File not found: {file_path}", "input", str(file_path))
    except json.JSONDecodeError as e:
        raise ValidationError(f"Invalid JSON in {file_path}: {e}", "input", str(file_path))


def dump_json(data: Any) -> str:
    """Canonical JSON text used for every report."""
    return json.dumps(data, indent=2, sort_keys=False)


# Time budgets
class Deadline:
    """Monotonic-clock deadline; ``None`` seconds means unlimited."""

    def __init__(self, seconds: Optional[float] = None):
        self.seconds = seconds
        self.started = time.monotonic()
        self.expires = None if seconds is None else self.started + seconds

    @classmethod
    def until(cls, expires: Optional[float]) -> "Deadline":
        """A deadline at an absolute ``time.monotonic()`` instant, shared across processes."""
        deadline = cls()
        deadline.expires = expires
        if expires is not None:
            deadline.seconds = max(0.0, expires - deadline.started)
        return deadline

    def expired(self) -> bool:
        return self.expires is not None and time.monotonic() >= self.expires

    def remaining(self) -> Optional[float]:
        if self.expires is None:
            return None
        return max(0.0, self.expires - time.monotonic())

    def elapsed(self) -> float:
        return time.monotonic() - self.started


# Logging
def setup_logging(verbose: bool = False, console: Optional[Console] = None) -> None:
    """Route the ``qgraph`` logger through rich on stderr."""
    logger = logging.getLogger("qgraph")
    logger.handlers.clear()
    handler = RichHandler(
        console=console or Console(stderr=True),
        show_path=False,
        rich_tracebacks=verbose,
    )
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.setLevel(logging.INFO if verbose else logging.WARNING)
    logger.propagate = False


__all__ = [
    'bits_to_labels', 'labels_to_bits', 'format_set', 'member_key', 'sorted_members',
    'fraction_to_json', 'fraction_from_json', 'format_weights',
    'load_json_file', 'dump_json', 'Deadline', 'setup_logging',
]
