from app.decomposition.base import (
    DecompositionError,
    FragmentMismatchError,
    PartitionError,
    UnreachableSubgameError,
)
from app.decomposition.frontiers import FrontierFactory
from app.decomposition.partition import (
    Subgame,
    SubgamePartition,
    TrunkView,
    partition_game,
    subgame_forest,
    trunk_game,
)
from app.decomposition.recovery import RecoveryGame, build_recovery_game, resolve_subgame
from app.decomposition.stitch import stitch
from app.decomposition.values import all_cfvs_from_profile, cfvs_from_profile

__all__ = [
    "DecompositionError",
    "FragmentMismatchError",
    "FrontierFactory",
    "PartitionError",
    "RecoveryGame",
    "Subgame",
    "SubgamePartition",
    "TrunkView",
    "UnreachableSubgameError",
    "all_cfvs_from_profile",
    "build_recovery_game",
    "cfvs_from_profile",
    "partition_game",
    "resolve_subgame",
    "stitch",
    "subgame_forest",
    "trunk_game",
]
