"""
Neron Component Series Tool
Command-line entry point: Tate's algorithm, closed-form component series,
oracle verification, torus cohomology and the psi family
"""

import argparse
import logging
import sys
import traceback
from typing import List, Optional

from pydantic import ValidationError

from modules.config import Settings
from modules.errors import EXIT_INPUT, EXIT_MISMATCH, NeronError
from modules.job_runner import JobRunner, JobSpec

logger = logging.getLogger("neron")

VERSION = "1.0.0"


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per report"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit canonical JSON instead of text")
    common.add_argument("--terms", type=int, default=None, help="Series coefficients to print or compare")
    common.add_argument("--workers", type=int, default=None, help="Threads for the verify sweep")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")

    parser = argparse.ArgumentParser(
        prog="neron",
        description="Neron component series of elliptic curves over k((t))",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    commands = parser.add_subparsers(dest="command", required=True)

    tate = commands.add_parser("tate", parents=[common], help="Kodaira type and reduction tower of a curve")
    tate.add_argument("path", help="Curve file")

    series = commands.add_parser("series", parents=[common], help="Closed-form component series")
    series.add_argument("path", help="Curve file or reduction data file")
    series.add_argument("--wild", action="store_true", help="Use the wild elliptic tower for wild curves")

    verify = commands.add_parser("verify", parents=[common], help="Check a closed form against the oracle")
    verify.add_argument("path", help="Curve file or reduction data file")
    verify.add_argument("--dmax", type=int, default=None, help="Largest base change degree")
    verify.add_argument("--data", dest="data_path", default=None, help="Claimed tower to verify the curve against")

    torus = commands.add_parser("torus", parents=[common], help="Component group of a torus from its lattice")
    torus.add_argument("path", help="Lattice file")

    psi = commands.add_parser("psi", parents=[common], help="Closed form of sum d^a T^d")
    psi.add_argument("a", type=int, help="Exponent a >= 0")

    return parser


def build_job(args: argparse.Namespace, settings: Settings) -> JobSpec:
    """JobSpec from parsed arguments, falling back to settings"""
    default_terms = settings.psi_terms if args.command == "psi" else settings.terms
    return JobSpec(
        command=args.command,
        path=getattr(args, "path", None),
        argument=getattr(args, "a", None),
        data_path=getattr(args, "data_path", None),
        terms=args.terms if args.terms is not None else default_terms,
        dmax=getattr(args, "dmax", None) or settings.dmax,
        output_format="json" if args.json else "text",
        wild=getattr(args, "wild", False),
    )


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the CLI

    Args:
        argv: Arguments without the program name

    Returns:
        Exit code: 0 success, 1 input error, 2 precision loss,
        3 unsupported input, 4 verification mismatch
    """
    args = build_parser().parse_args(argv)

    try:
        settings = Settings.from_env()
        overrides = {}
        if args.workers is not None:
            overrides["workers"] = args.workers
        if args.log_level is not None:
            overrides["log_level"] = args.log_level.upper()
        settings = Settings(**{**settings.model_dump(), **overrides})
    except ValidationError as e:
        print(f"error: invalid settings: {e}", file=sys.stderr)
        return EXIT_INPUT

    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, settings.log_level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        job = build_job(args, settings)
        result = JobRunner(settings).run(job)
    except NeronError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as e:
        logger.debug(traceback.format_exc())
        print(f"error: unexpected failure: {e}", file=sys.stderr)
        return EXIT_INPUT

    print(result.output)
    if not result.passed:
        return EXIT_MISMATCH
    return 0


if __name__ == "__main__":
    sys.exit(main())
