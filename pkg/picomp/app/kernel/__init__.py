from .alpha import alpha_equal, canonical, freshen, rename_apart
from .congruence import (
    CongruenceStep,
    congruence_key,
    congruent,
    join_spine,
    normalize_congruence,
    normalize_with_trace,
    replay_congruence,
    split_spine,
)
from .desugar import desugar, plug
from .names import Ident, NameSupply, ident
from .scope import free_vars, size
from .subst import rename, substitute
from .terms import (
    Abs,
    AdmBinding,
    AdmDecl,
    AdmPar,
    App,
    Hole,
    InputGuard,
    Nu,
    Out,
    Par,
    PiPar,
    PolyAbs,
    PolyApp,
    Star,
    Usage,
    Var,
)
from .types import (
    BEHAVIOR,
    CH_UNIT,
    RESULT,
    UNIT,
    Arrow,
    Behavior,
    Chan,
    Result,
    TypeExpr,
    Unit,
    chan_type,
    fn_type,
)

__all__ = [
    "Abs",
    "AdmBinding",
    "AdmDecl",
    "AdmPar",
    "App",
    "Arrow",
    "BEHAVIOR",
    "Behavior",
    "CH_UNIT",
    "Chan",
    "CongruenceStep",
    "Hole",
    "Ident",
    "InputGuard",
    "NameSupply",
    "Nu",
    "Out",
    "Par",
    "PiPar",
    "PolyAbs",
    "PolyApp",
    "RESULT",
    "Result",
    "Star",
    "TypeExpr",
    "UNIT",
    "Unit",
    "Usage",
    "Var",
    "alpha_equal",
    "canonical",
    "chan_type",
    "congruence_key",
    "congruent",
    "desugar",
    "fn_type",
    "free_vars",
    "freshen",
    "ident",
    "join_spine",
    "normalize_congruence",
    "normalize_with_trace",
    "plug",
    "rename",
    "rename_apart",
    "replay_congruence",
    "size",
    "split_spine",
    "substitute",
]
