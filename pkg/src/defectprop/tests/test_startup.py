"""Session start: package defaults and logging."""

import logging

from defectprop import startup


def test_startup_returns_iconfig():
    iconfig = startup.startup()
    assert iconfig["ICONFIG_VERSION"] == "1.0.0"
    assert iconfig["DEFECT"] == {"gamma": 0.0, "b": 0.0}
    assert startup.extra_logging_configs_path.exists()


def test_verbose_startup_logs_debug():
    startup.startup(verbose=True)
    assert logging.getLogger("defectprop").getEffectiveLevel() == logging.DEBUG
    for handler in startup._console_handlers():
        assert handler.level == logging.DEBUG
