from .parser import parse_context, parse_term, parse_type, parse_value
from .printer import show, show_context, show_type

__all__ = [
    "parse_context",
    "parse_term",
    "parse_type",
    "parse_value",
    "show",
    "show_context",
    "show_type",
]
