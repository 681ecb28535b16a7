# File: utils/console.py
# Functions:
# - status()
# - success()
# - warn()
# - fail()
# - progress()

import sys

from tqdm import tqdm

import os
# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import config


def _emit(marker, message):
    if config.VERBOSE:
        print(f"{marker} {message}", file=sys.stderr, flush=True)


def status(message):
    """Progress line (⏳) on stderr."""
    _emit("⏳", message)


def success(message):
    _emit("✅", message)


def warn(message):
    _emit("⚠️", message)


def fail(message):
    """
    Failure line (❌). Printed even in quiet mode.
    """
    print(f"❌ {message}", file=sys.stderr, flush=True)


def progress(iterable, desc, total=None):
    """
    Wraps an iterable in a tqdm bar on stderr (disabled when quiet).

    Args:
        iterable: Items to iterate over
        desc (str): Bar label
        total (int): Optional length hint

    Returns:
        Iterator over the same items
    """
    return tqdm(iterable, desc=desc, total=total, file=sys.stderr,
                disable=not config.VERBOSE, leave=False)
