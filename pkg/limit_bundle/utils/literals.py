"""Parsing and printing of the vector and matrix literals used by ``sample``."""

from typing import Iterable, List

from ..geometry.finseq import FinVec
from .scalars import Scalar, ScalarMode, is_exact


def parse_scalar(text: str, mode: ScalarMode) -> Scalar:
    """
    Parse "3", "-2/3" or "0.5" into a scalar of ``mode``.

    Raises:
        ValueError: If the literal is not a number.
    """
    text = text.strip()
    if not text:
        raise ValueError("Empty number literal")
    try:
        return mode.coerce(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Invalid number literal '{text}': {e}") from None


def parse_vector(text: str, mode: ScalarMode) -> FinVec:
    """
    Parse a comma separated vector literal such as "1,-2/3,0.5".

    An empty literal or "0" is the zero vector.
    """
    text = text.strip().strip("()[]")
    if not text:
        return FinVec()
    return FinVec(tuple(parse_scalar(part, mode) for part in text.split(",")))


def parse_matrix(text: str, mode: ScalarMode) -> List[List[Scalar]]:
    """
    Parse a matrix literal: rows separated by ";", entries by ",".

    Raises:
        ValueError: If the rows have different lengths.
    """
    rows = [[parse_scalar(part, mode) for part in row.split(",")] for row in text.strip().split(";") if row.strip()]
    widths = {len(row) for row in rows}
    if len(widths) > 1:
        raise ValueError(f"Matrix rows have different lengths: {sorted(widths)}")
    return rows


def format_scalar(value: Scalar) -> str:
    if is_exact(value):
        return str(value)
    return repr(float(value))


def format_vector(v: Iterable[Scalar]) -> str:
    return "(" + ", ".join(format_scalar(c) for c in v) + ")"


def format_matrix(block) -> str:
    if not block:
        return "identity"
    return "\n".join("[" + ", ".join(format_scalar(c) for c in row) + "]" for row in block)
