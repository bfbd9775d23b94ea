import argparse
import os
import sys
from fractions import Fraction

from dotenv import load_dotenv

load_dotenv()

# ---------------------------------------------------------------------------
# Config
# ---------------------------------------------------------------------------

CENSUS_PARALLEL = os.environ.get("CENSUS_PARALLEL", "")  # empty -> one worker per core
CENSUS_CACHE_DIR = os.environ.get("CENSUS_CACHE_DIR", ".cache")
CENSUS_PROGRESS = os.environ.get("CENSUS_PROGRESS", "1")

OEIS_BASE_URL = os.environ.get("OEIS_BASE_URL", "https://oeis.org")
OEIS_TIMEOUT = os.environ.get("OEIS_TIMEOUT", "15")


def validate_config() -> bool:
    errors = []
    if CENSUS_PARALLEL and (not CENSUS_PARALLEL.isdigit() or int(CENSUS_PARALLEL) < 1):
        errors.append(f"CENSUS_PARALLEL must be a positive integer, got {CENSUS_PARALLEL!r}")
    if CENSUS_PROGRESS not in ("0", "1"):
        errors.append(f"CENSUS_PROGRESS must be 0 or 1, got {CENSUS_PROGRESS!r}")
    try:
        if float(OEIS_TIMEOUT) <= 0:
            errors.append(f"OEIS_TIMEOUT must be positive, got {OEIS_TIMEOUT!r}")
    except ValueError:
        errors.append(f"OEIS_TIMEOUT is not a number: {OEIS_TIMEOUT!r}")
    if not OEIS_BASE_URL.startswith(("http://", "https://")):
        errors.append(f"OEIS_BASE_URL must be an http(s) URL, got {OEIS_BASE_URL!r}")
    if errors:
        for e in errors:
            print(f"[ERROR] {e}", file=sys.stderr)
        print("\nFix the environment variables (see .env.example) and re-run.", file=sys.stderr)
        return False
    return True


def default_parallel() -> int:
    if CENSUS_PARALLEL:
        return int(CENSUS_PARALLEL)
    return os.cpu_count() or 1


def progress_enabled() -> bool:
    return CENSUS_PROGRESS == "1"


# ---------------------------------------------------------------------------
# Argument parsers
# ---------------------------------------------------------------------------

def parse_lengths_arg(value: str) -> tuple[Fraction, ...]:
    """Comma-separated integers, decimals or p/q fractions."""
    try:
        entries = tuple(Fraction(part.strip()) for part in value.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"Invalid length vector '{value}'. Expected e.g. 1,1,2 or 1/2,3.")
    return entries


def parse_code_arg(value: str) -> str:
    """Genetic code text: genes separated by ';', elements by ','; '-' is the empty code."""
    text = value.strip()
    if text == "-":
        return text
    for gene in text.split(";"):
        parts = gene.split(",")
        if not all(p.strip().isdigit() and int(p) >= 1 for p in parts):
            raise argparse.ArgumentTypeError(f"Invalid genetic code '{value}'. Expected e.g. 6,3;6,2,1 or -.")
    return text


def parse_hex_arg(value: str) -> str:
    text = value.strip().lower().removeprefix("0x")
    if not text or any(c not in "0123456789abcdef" for c in text):
        raise argparse.ArgumentTypeError(f"Invalid truth table '{value}'. Expected lowercase hex digits.")
    return text


def parse_positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"Invalid number '{value}'. Expected a positive integer.")
    if number < 1:
        raise argparse.ArgumentTypeError(f"Invalid number '{value}'. Expected a positive integer.")
    return number
