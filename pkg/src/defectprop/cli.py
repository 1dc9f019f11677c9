#!/usr/bin/env python

"""
defectprop: tables of the dispiration path-integral results.

Commands::

    defectprop geometry   [--config FILE] [--output FILE] [--format csv|json]
    defectprop spectrum   [--config FILE] [--compare schrodinger-cone] ...
    defectprop propagator [--config FILE] ...
    defectprop verify     [--config FILE] ...

The table goes to ``--output`` (or ``output.path`` of the configuration),
otherwise to standard output.  Log messages go to standard error.

Exit codes: 0 success, 1 a verification check failed, 2 configuration
error, 3 any other error in the domain of the computation.
"""

import argparse
import logging
import sys

from .plans.geometry_plan import geometry_report
from .plans.propagator_plan import propagator_report
from .plans.spectrum_plan import spectrum_report
from .plans.verify_plan import failed
from .plans.verify_plan import verify_report
from .startup import startup
from .utils.config_loaders import COMPARE_CHOICES
from .utils.config_loaders import OUTPUT_FORMATS
from .utils.config_loaders import load_run_config
from .utils.exceptions import ConfigError
from .utils.exceptions import DefectPropError
from .utils.reporter import status_summary
from .utils.reporter import summary
from .utils.table_output import write_table

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_DOMAIN_ERROR = 3

COMMANDS = {
    "geometry": geometry_report,
    "spectrum": spectrum_report,
    "propagator": propagator_report,
    "verify": verify_report,
}


def get_CLI_options(argv=None) -> argparse.Namespace:
    """Get command line interface options.

    Returns:
        argparse.Namespace: Parsed command line arguments
    """
    parser = argparse.ArgumentParser(
        prog="defectprop",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )

    parser.add_argument("command", choices=list(COMMANDS), help="table to compute")

    parser.add_argument(
        "--config", action="store", default=None, help="run configuration (JSON or YAML)"
    )

    parser.add_argument("--output", action="store", default=None, help="output file")

    parser.add_argument(
        "--format", action="store", default=None, choices=OUTPUT_FORMATS, help="output format"
    )

    parser.add_argument(
        "--compare",
        action="store",
        default=None,
        choices=COMPARE_CHOICES,
        help="spectrum only: add the comparison columns",
    )

    parser.add_argument(
        "-v", "--verbose", action="store_true", help="DEBUG messages on the console"
    )

    options = parser.parse_args(argv)
    if options.compare is not None and options.command != "spectrum":
        parser.error("--compare applies to the spectrum command only")
    return options


def _overrides(options):
    """Configuration entries given on the command line."""
    overrides = {}
    output = {
        key: value
        for key, value in (("format", options.format), ("path", options.output))
        if value is not None
    }
    if output:
        overrides["output"] = output
    if options.compare is not None:
        overrides["spectrum"] = {"compare": options.compare}
    return overrides


def main(argv=None) -> int:
    """Main entry point for the command line interface.

    Returns:
        int: process exit code
    """
    options = get_CLI_options(argv)
    startup(verbose=options.verbose)

    try:
        config = load_run_config(options.config, _overrides(options))
        table = COMMANDS[options.command](config)
    except ConfigError as exc:
        logger.error("configuration error: %s", exc)
        return EXIT_CONFIG_ERROR
    except DefectPropError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_DOMAIN_ERROR

    logger.info("%s:\n%s", options.command, summary(table))
    output = config.output
    write_table(
        table,
        path=output["path"],
        fmt=output["format"],
        precision=output["precision"],
        stream=sys.stdout,
    )

    if options.command == "verify":
        logger.info("verification:\n%s", status_summary(table))
        if failed(table):
            logger.warning("%d verification checks failed", failed(table))
            return EXIT_VERIFY_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
