"""Colored console output for the command-line front end."""

import logging
import sys

from colorama import Fore, Style, init

init(autoreset=True)

LEVEL_COLORS = {
    logging.DEBUG: Fore.WHITE,
    logging.INFO: Fore.CYAN,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.RED + Style.BRIGHT,
}


class ColorFormatter(logging.Formatter):
    """Prefix records with the level color; warnings and errors keep their level name."""

    def format(self, record):
        message = super().format(record)
        color = LEVEL_COLORS.get(record.levelno, "")
        if record.levelno >= logging.WARNING:
            message = f"{record.levelname.lower()}: {message}"
        return f"{color}{message}{Style.RESET_ALL}"


def setup_logging(quiet=False, verbose=False, stream=None):
    """
    Route library loggers to a colored stderr handler.

    Args:
        quiet (bool): Only warnings and errors
        verbose (bool): Include debug records
        stream: Target stream (stderr by default)
    """
    level = logging.WARNING if quiet else (logging.DEBUG if verbose else logging.INFO)
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(ColorFormatter("%(message)s"))
    root = logging.getLogger("utils")
    root.handlers[:] = [handler]
    root.setLevel(level)
    root.propagate = False
    return handler


def header(text):
    print(f"\n{Fore.CYAN}{Style.BRIGHT}{text}")


def success(text):
    print(f"{Fore.GREEN}✓ {text}")


def failure(text):
    print(f"{Fore.RED}✗ {text}")


def warning(text):
    print(f"{Fore.YELLOW}{text}")


def field(label, value):
    print(f"{Fore.BLUE}{label}: {Fore.WHITE}{value}")
