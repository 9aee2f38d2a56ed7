from app.baselines.abstraction import AbstractionMap, build_abstraction
from app.baselines.base import BaselineError, UnsupportedGameError, ZeroReachError
from app.baselines.cfvs import all_cfvs_from_best_response, cfvs_from_best_response
from app.baselines.unsafe import UnsafeResolution, unsafe_resolve, unsafe_resolve_all

__all__ = [
    "AbstractionMap",
    "BaselineError",
    "UnsafeResolution",
    "UnsupportedGameError",
    "ZeroReachError",
    "all_cfvs_from_best_response",
    "build_abstraction",
    "cfvs_from_best_response",
    "unsafe_resolve",
    "unsafe_resolve_all",
]
