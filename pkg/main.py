import functools
import sys

import click
from pydantic import ValidationError

from app.core.config import settings
from app.core.logging import get_logger
from app.decomposition import PartitionError, partition_game
from app.decomposition.frontiers import FrontierFactory
from app.games import GameError, UnknownGameError, build_game
from app.schemas.experiment import load_experiment_config, load_presets
from app.services.experiment_service import ExperimentService, validate_game
from app.services.space_service import SPACE_HEADER, SpaceService
from app.utils.formatters import format_number, write_csv

logger = get_logger("app")

EXIT_CONFIG_ERROR = 2
EXIT_NUMERIC_ERROR = 3


def experiment_options(f):
    """Flags shared by every experiment command"""
    options = [
        click.option("--preset", help="Named experiment from the preset file"),
        click.option("--game", help="Game name (rps, kuhn, leduc, leduc-abstract)"),
        click.option("--frontier", help="Frontier name (none, default, depth:<k> or a game frontier)"),
        click.option("--iters", "iterations", type=int, help="Whole-game CFR iterations"),
        click.option("--trunk-iters", "trunk_iterations", type=int, help="CFR-D trunk iterations"),
        click.option("--subgame-iters", "subgame_iterations", type=int, help="CFR-D subgame iterations"),
        click.option(
            "--recovery-iters",
            "recovery_iterations",
            type=int,
            multiple=True,
            help="Recovery iterations per subgame (repeat to sweep)",
        ),
        click.option("--eval-every", type=int, help="Checkpoint spacing (0 disables, unset for powers of two)"),
        click.option("--out", help="Output directory"),
        click.option("--workers", type=int, help="Subgame worker processes"),
        click.option("--seed", type=int, help="Seed for a random profile when no --strategy is given"),
        click.option("--strategy", type=click.Path(), help="Strategy file"),
        click.option("--cfvs", type=click.Path(), help="Counterfactual value file"),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def run_command(f):
    """Map failures onto exit codes: 2 for configuration, 3 for game or numeric errors"""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except ValidationError as e:
            for error in e.errors():
                location = ".".join(str(part) for part in error["loc"]) or "config"
                click.echo(f"Error: {location}: {error['msg']}", err=True)
            sys.exit(EXIT_CONFIG_ERROR)
        except click.UsageError:
            raise
        except (UnknownGameError, PartitionError) as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_CONFIG_ERROR)
        except (GameError, ArithmeticError) as e:
            logger.error(f"{type(e).__name__}: {e}")
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_NUMERIC_ERROR)
        except ValueError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_CONFIG_ERROR)

    return wrapper


def echo_summary(summary):
    for key, value in summary.items():
        if isinstance(value, float):
            value = format_number(value)
        click.echo(f"{key}: {value}")


def service_for(preset, overrides) -> ExperimentService:
    config = load_experiment_config(preset, overrides)
    logger.info(f"Running with config {config.model_dump(exclude_none=True)}")
    return ExperimentService(config)


@click.group()
def cli():
    """CFR, CFR-D and safe subgame recovery for two-player zero-sum games"""
    pass


@cli.command()
@experiment_options
@run_command
def solve(preset, **overrides):
    """Solve a whole game with CFR and write its strategy and trace"""
    echo_summary(service_for(preset, overrides).solve())


@cli.command()
@experiment_options
@run_command
def recover(preset, **overrides):
    """Re-solve a strategy's subgames safely and unsafely and compare them"""
    echo_summary(service_for(preset, overrides).recover())


@cli.command()
@experiment_options
@run_command
def cfrd(preset, **overrides):
    """Run CFR-D, store trunk strategy and root values, then recover the subgames"""
    echo_summary(service_for(preset, overrides).cfrd())


@cli.command("resolve-abstract")
@experiment_options
@run_command
def resolve_abstract(preset, **overrides):
    """Re-solve a lifted abstract-game strategy and compare safe and unsafe results"""
    echo_summary(service_for(preset, overrides).resolve_abstract())


@cli.command()
@experiment_options
@run_command
def exploit(preset, **overrides):
    """Exploitability of a strategy file"""
    echo_summary(service_for(preset, overrides).exploit())


@cli.command()
@click.option("--game", default=settings.DEFAULT_GAME, help="Game name")
@run_command
def validate(game):
    """Check a game's structure and print its size"""
    echo_summary(validate_game(game))


@cli.command()
@click.option("--game", default=settings.DEFAULT_GAME, help="Game name")
@click.option("--frontier", default="default", help="Frontier name")
@click.option("--out", default=None, help="Write the table as CSV to this path")
@run_command
def space(game, frontier, out):
    """Floats and bytes needed to solve and to use a strategy"""
    definition = build_game(game)
    partition = partition_game(definition, FrontierFactory.create(game, frontier))
    rows = SpaceService(definition, partition).report()
    click.echo(",".join(SPACE_HEADER))
    for row in rows:
        click.echo(",".join(str(value) for value in row))
    if out:
        write_csv(out, SPACE_HEADER, rows)


@cli.command("list-presets")
def list_presets():
    """List the experiments in the preset file"""
    presets = load_presets()
    if not presets:
        click.echo(f"No presets in {settings.EXPERIMENT_CONFIG_PATH}")
        return
    click.echo("Available presets:")
    for name, preset in presets.items():
        click.echo(f"  - {name} ({preset.get('game', settings.DEFAULT_GAME)})")


if __name__ == "__main__":
    cli()
