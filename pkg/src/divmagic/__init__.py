"""Optimal magic constants for division, remainder and divisibility by a constant."""

from .bounds import (
    BoundInterval,
    Capability,
    DivisionSpec,
    Scheme,
    Source,
    admits,
    legacy_interval,
    optimal_interval,
    quotient_interval,
    quotient_interval_multadd,
    remainder_interval,
    remainder_interval_multadd,
)
from .errors import CapabilityError, DivMagicError, DomainError, OutOfRangeError, SearchExhausted
from .evaluator import Rounder, eval_quotient, eval_remainder, is_divisible
from .finder import MMode, MagicConstants, Prefer, SearchConstraints, choose_scheme, find_constants
from .oracle import verify_exhaustive
from .rational import Ratio

__version__ = "0.1.0"
