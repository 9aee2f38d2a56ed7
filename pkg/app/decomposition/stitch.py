# app/decomposition/stitch.py
from app.decomposition.base import FragmentMismatchError
from app.decomposition.partition import SubgamePartition
from app.games.profile import StrategyFragment, StrategyProfile


def stitch(
    profile: StrategyProfile,
    partition: SubgamePartition,
    index: int,
    fragment: StrategyFragment,
) -> StrategyProfile:
    """
    Replace one player's strategy inside subgame `index` with `fragment`.

    Raises:
        FragmentMismatchError: If the fragment's keys are not exactly the
            player's information sets in that subgame
    """
    expected = partition.subgame(index).infoset_keys[fragment.player]
    provided = set(fragment.keys())
    if provided != expected:
        extra = sorted(str(key) for key in provided - expected)
        missing = sorted(str(key) for key in expected - provided)
        raise FragmentMismatchError(
            f"Fragment for player {fragment.player + 1} does not match subgame {index}: "
            f"{len(missing)} missing, {len(extra)} unexpected"
            + (f" (e.g. {(missing or extra)[0]})" if missing or extra else "")
        )
    return profile.replace(fragment.distributions)
