from .adm import (
    binding_order,
    is_saturated,
    readback,
    readback_context,
    readback_type,
    to_admin,
    to_admin_context,
    to_admin_type,
)
from .cps import (
    answer_type,
    cont_type,
    cps_context,
    cps_transform,
    cps_type,
    cps_value,
    target_calculus,
)
from .embed import PAR_CONSTANT, PAR_TYPE, embed_context, embed_parallel
from .pi_bridge import erase_dead_values, from_pi, to_pi
from .saturate import inhabit, saturate_usages

__all__ = [
    "PAR_CONSTANT",
    "PAR_TYPE",
    "answer_type",
    "binding_order",
    "cont_type",
    "cps_context",
    "cps_transform",
    "cps_type",
    "cps_value",
    "embed_context",
    "embed_parallel",
    "erase_dead_values",
    "from_pi",
    "inhabit",
    "is_saturated",
    "readback",
    "readback_context",
    "readback_type",
    "saturate_usages",
    "target_calculus",
    "to_admin",
    "to_admin_context",
    "to_admin_type",
]
