from app.games.rules.kuhn import KuhnRules
from app.games.rules.leduc import LeducRules
from app.games.rules.rps import RockPaperScissorsRules

__all__ = ["KuhnRules", "LeducRules", "RockPaperScissorsRules"]
