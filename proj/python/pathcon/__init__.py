"""Path-constraint incorporation for PDAGs and PAGs."""

from ._core import (
    InvariantError,
    ParseError,
    ResourceError,
    bench,
    check,
    convert,
    incorporate,
    select,
)

__all__ = [
    "InvariantError",
    "ParseError",
    "ResourceError",
    "bench",
    "check",
    "convert",
    "incorporate",
    "select",
]
