"""Command line: ``isogeny2 run`` computes rational representations, ``isogeny2 version`` reports versions.

Examples
--------
>>> parse_ints("14030, 9041,56122")
[14030, 9041, 56122]
>>> parse_tangent("53481:50651,0;0,5538:11076")
[[[53481, 50651], 0], [0, [5538, 11076]]]

"""

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from dataclasses import fields
from pathlib import Path

from isogeny2.core.errors import IsogenyError
from isogeny2.core.names import VALID_PATH_OPTIONS
from isogeny2.core.options import option_manager
from isogeny2.core.tostring import tostring
from isogeny2.core.version import version_info
from isogeny2.pipeline import RunConfig, TangentEntry, run

logging.basicConfig(level=logging.INFO)
LOGGER = logging.getLogger(__name__)
LOGGER.setLevel(logging.INFO)

EXIT_OK, EXIT_REJECTED, EXIT_ERROR = 0, 1, 2


def parse_ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def parse_tangent(text: str) -> list[list[TangentEntry]]:
    """Rows separated by ``;``, entries by ``,``; ``a:b`` stands for ``a + b alpha``."""

    def entry(word: str) -> TangentEntry:
        return [int(c) for c in word.split(":")] if ":" in word else int(word)

    rows = [[entry(w) for w in row.split(",")] for row in text.replace(" ", "").split(";")]
    if len(rows) != 2 or any(len(row) != 2 for row in rows):  # noqa: PLR2004
        msg = f"A tangent matrix is 2x2, got {text!r}."
        raise argparse.ArgumentTypeError(msg)
    return rows


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isogeny2", description="Explicit isogenies between genus-2 Jacobians.")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log pipeline details.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("version", help="Print the versions of isogeny2 and its dependencies.")

    run_parser = sub.add_parser("run", help="Compute the rational representation of an isogeny.")
    run_parser.add_argument("--config", type=Path, help="JSON file with the run configuration; flags override it.")
    run_parser.add_argument("--p", type=int, help="Characteristic of the base field.")
    run_parser.add_argument("--path", choices=VALID_PATH_OPTIONS, help="Kind of isogeny.")
    for side, suffix in (("source", ""), ("target", "-prime")):
        run_parser.add_argument(f"--j{suffix}", type=parse_ints, help=f"Igusa invariants j1,j2,j3 of the {side}.")
        run_parser.add_argument(f"--g{suffix}", type=parse_ints, help=f"Gundlach invariants g1,g2 of the {side}.")
        run_parser.add_argument(f"--curve{suffix}", type=parse_ints, help=f"Coefficients a0,...,a6 of the {side}.")
    run_parser.add_argument("--ell", type=int, help="Level of a Siegel isogeny.")
    run_parser.add_argument("--beta-norm", type=int, help="Norm of beta for a Hilbert isogeny.")
    run_parser.add_argument("--beta-trace", type=int, help="Trace of beta for a Hilbert isogeny.")
    run_parser.add_argument("--m", type=int, help="Multiplier of an endomorphism [m].")
    run_parser.add_argument("--modeq", help="Modular-equation file.")
    run_parser.add_argument("--tangent", type=parse_tangent, help='Tangent matrix, "a,b;c,d" with x:y for x + y alpha.')
    run_parser.add_argument("--tangent-minpoly", type=parse_ints, help="c0,c1 with alpha^2 + c1 alpha + c0 = 0.")
    run_parser.add_argument("--precision", type=int, help="Precision of the lift; only raises the required one.")
    run_parser.add_argument("--seed", type=int, help="Seed of the random choices.")
    run_parser.add_argument("--nb-cpu", type=int, help="Worker processes used for the candidates.")
    run_parser.add_argument("--out", help="Write the JSON output there instead of stdout.")
    return parser


CONFIG_FLAGS = [field.name for field in fields(RunConfig)]


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """The configuration file, if any, updated with the flags given."""
    flags = {name: getattr(args, name) for name in CONFIG_FLAGS}
    if args.config is not None:
        return RunConfig.from_json(args.config).updated(**flags)
    missing = [name for name in ("p", "path") if flags[name] is None]
    if missing:
        msg = f"Without --config, give --{' and --'.join(missing)}."
        raise ValueError(msg)
    return RunConfig.from_dict({k: v for k, v in flags.items() if v is not None})


def run_command(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    if args.nb_cpu is not None:
        option_manager.set_option("nb_cpu", args.nb_cpu)
    output = run(config)
    sys.stderr.write(tostring(output) + "\n")
    document = output.to_json()
    if config.out:
        Path(config.out).write_text(document + "\n", encoding="utf-8")
        LOGGER.info("output written to %s", config.out)
    else:
        sys.stdout.write(document + "\n")
    return EXIT_OK if output.accepted else EXIT_REJECTED


def set_verbosity(*, verbose: bool) -> None:
    """DEBUG for every isogeny2 logger when verbose, WARNING otherwise."""
    level = logging.DEBUG if verbose else logging.WARNING
    for name in list(logging.root.manager.loggerDict):
        if name.split(".")[0] == "isogeny2":
            logging.getLogger(name).setLevel(level)


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the ``isogeny2`` command; returns the exit status.

    0 when a candidate is accepted (or for ``version``), 1 when every candidate is rejected, 2 on invalid input or
    when the curves or candidates cannot be built.
    """
    args = build_parser().parse_args(argv)
    set_verbosity(verbose=args.verbose)

    if args.command == "version":
        sys.stdout.write(json.dumps(version_info(), indent=4) + "\n")
        return EXIT_OK

    try:
        return run_command(args)
    except IsogenyError as error:
        LOGGER.error("%s (requires: %s)", error, error.condition)  # noqa: TRY400
    except (ValueError, OSError) as error:
        LOGGER.error("%s", error)  # noqa: TRY400
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

