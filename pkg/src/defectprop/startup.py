"""
Start a defectprop session.

Loads the package defaults (``configs/iconfig.yml``) and configures
logging from ``configs/extra_logging.yml``, both through apsbits.
"""

import logging
from pathlib import Path

from apsbits.utils.config_loaders import load_config
from apsbits.utils.logging_setup import configure_logging

package_path = Path(__file__).parent
iconfig_path = package_path / "configs" / "iconfig.yml"
extra_logging_configs_path = package_path / "configs" / "extra_logging.yml"

PACKAGE_LOGGER = "defectprop"

logger = logging.getLogger(__name__)


def _console_handlers():
    for name in ("", PACKAGE_LOGGER):
        for handler in logging.getLogger(name).handlers:
            if isinstance(handler, logging.StreamHandler) and not isinstance(
                handler, logging.FileHandler
            ):
                yield handler


def startup(verbose=False):
    """
    Configure logging and return the package defaults.

    ``verbose`` lowers the package logger and the console to DEBUG.
    """
    configure_logging(extra_logging_configs_path=extra_logging_configs_path)
    if verbose:
        logging.getLogger(PACKAGE_LOGGER).setLevel(logging.DEBUG)
        for handler in _console_handlers():
            handler.setLevel(logging.DEBUG)
    iconfig = load_config(iconfig_path)
    logger.debug(
        "defectprop with iconfig %s (version %s)",
        iconfig_path,
        iconfig.get("ICONFIG_VERSION"),
    )
    return iconfig
