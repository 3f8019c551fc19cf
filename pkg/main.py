#!/usr/bin/env python3
"""
renorm-lab - renormalized matrix products and their exponential limits
Command-line entry point: one subcommand per experiment
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

# Add src to path for imports
sys.path.append(str(Path(__file__).parent / "src"))

from core.experiment_engine import ExperimentEngine, ExperimentOutcome  # noqa: E402
from utils.config_manager import ConfigManager  # noqa: E402
from utils.error_handling import (  # noqa: E402
    ConfigurationError,
    RenormError,
    install_exception_hook,
)
from utils.logger import setup_logger  # noqa: E402

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2

SUBCOMMANDS = {
    "exp": "matrix exponential of matrices.matrix against the series oracle",
    "product": "renormalized product at parameters.n against exp(tA)",
    "scan": "convergence scan over parameters.n_grid",
    "symsum": "ordered symmetric sums against brute force and the norm budget",
    "lemma-scalar": "scalar products of a periodic sequence against e^l",
    "lemma-weighted": "weighted averages against L times the integral of x^k",
    "hyperwalk": "hyperbolic walk trajectories, CSV and SVG",
    "figure": "SVG from an existing trajectory CSV (computed if absent)",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON configuration file")
    common.add_argument("--seed", type=int, help="seed of stochastic sequence models")
    common.add_argument("--out", type=Path, help="output directory for artifacts")
    common.add_argument(
        "--check", action="store_true", help="exit nonzero if a tolerance is violated"
    )
    common.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="PATH=JSON",
        help="override a configuration value, e.g. --set parameters.n=1000",
    )

    parser = argparse.ArgumentParser(
        prog="renorm-lab",
        description="Renormalized matrix products, symmetric sums and hyperbolic walks",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    for name, help_text in SUBCOMMANDS.items():
        commands.add_parser(name, parents=[common], help=help_text)

    init = commands.add_parser("init-config", help="write the default configuration")
    init.add_argument("path", type=Path)
    return parser


def configure(args: argparse.Namespace) -> ConfigManager:
    """Load the configuration file and apply overrides; flags win over --set and the file"""
    config_manager = ConfigManager(args.config)
    config_manager.set_value("experiment.kind", args.command.replace("-", "_"))
    for assignment in args.set:
        config_manager.apply_override(assignment)
    if args.seed is not None:
        config_manager.set_value("sequence.seed", args.seed)
    if args.out is not None:
        config_manager.set_value("output.directory", str(args.out))
    if args.check:
        config_manager.set_value("experiment.check", True)
    return config_manager


def print_outcome(outcome: ExperimentOutcome) -> None:
    if outcome.value is None:
        return
    for row in outcome.value.entries:
        print("  ".join(f"{z.real:.17g}{z.imag:+.17g}j" for z in row))


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    load_dotenv()
    install_exception_hook()

    args = build_parser().parse_args(argv)
    logger = setup_logger("main")

    if args.command == "init-config":
        try:
            path = ConfigManager().save_config(args.path)
        except ConfigurationError as e:
            logger.error("❌ %s", e)
            return EXIT_CONFIG
        logger.info("✅ Default configuration written to %s", path)
        return EXIT_OK

    try:
        engine = ExperimentEngine(configure(args))
        outcome = engine.run()
    except ConfigurationError as e:
        logger.error("❌ Configuration error: %s", e)
        return EXIT_CONFIG
    except RenormError as e:
        logger.error("❌ %s failed: %s", args.command, e)
        return EXIT_FAILURE

    print_outcome(outcome)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
