import logging
import sys

from config import VERBOSE_LOGGING

_CONFIGURED = False


def _configure():
    global _CONFIGURED
    if _CONFIGURED:
        return
    handler = logging.StreamHandler(sys.stderr)  # stdout is reserved for CLI output
    handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger("homset")
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if VERBOSE_LOGGING else logging.WARNING)
    root.propagate = False
    _CONFIGURED = True


def get_logger(name):
    """Return a logger under the package namespace, configuring it on first use."""
    _configure()
    return logging.getLogger(f"homset.{name}")
