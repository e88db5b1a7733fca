from __future__ import annotations

import os
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent

_seed = os.environ.get("PICOMP_SEED")
SEED_OVERRIDE = int(_seed) if _seed not in (None, "") else None

STEP_BUDGET = int(os.environ.get("PICOMP_STEP_BUDGET", "100000"))
GRAPH_BUDGET = int(os.environ.get("PICOMP_GRAPH_BUDGET", "10000"))

CORPUS_SIZE = int(os.environ.get("PICOMP_CORPUS_SIZE", "500"))
MAX_SIZE = int(os.environ.get("PICOMP_MAX_SIZE", "15"))
ARITY_CAP = int(os.environ.get("PICOMP_ARITY_CAP", "3"))
TYPE_DEPTH_CAP = int(os.environ.get("PICOMP_TYPE_DEPTH_CAP", "3"))
SEEDED_RUNS = int(os.environ.get("PICOMP_SEEDED_RUNS", "8"))
WORKERS = int(os.environ.get("PICOMP_WORKERS", "1"))

LOG_LEVEL = os.environ.get("PICOMP_LOG_LEVEL", "WARNING").upper()
_events = os.environ.get("PICOMP_EVENTS_DIR")
EVENTS_DIR = Path(_events) if _events else None
