from .checker import (
    OK,
    Ok,
    binding_type,
    check_pi_wellformed,
    infer_type,
    is_cps_shape,
    is_monadic,
    is_monadic_typing,
    well_formed_type,
)
from .context import EMPTY, Calculus, TypingContext

__all__ = [
    "EMPTY",
    "OK",
    "Calculus",
    "Ok",
    "TypingContext",
    "binding_type",
    "check_pi_wellformed",
    "infer_type",
    "is_cps_shape",
    "is_monadic",
    "is_monadic_typing",
    "well_formed_type",
]
