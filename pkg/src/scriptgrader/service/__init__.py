from .core import (
    APPROVED,
    DRAFT,
    EVALUATED,
    PUBLISHED,
    ConflictOnStateTransition,
    GradingService,
    MissingModelCheckpoint,
    WrongState,
)
from .store import Journal, NotFound, Store

__all__ = [
    "APPROVED",
    "DRAFT",
    "EVALUATED",
    "PUBLISHED",
    "ConflictOnStateTransition",
    "GradingService",
    "Journal",
    "MissingModelCheckpoint",
    "NotFound",
    "Store",
    "WrongState",
]
