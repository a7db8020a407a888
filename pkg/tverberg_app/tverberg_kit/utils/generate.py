"""Seeded random instances over the rationals.

The generator is splitmix64, integer only, so a seed gives the same points on
every platform:

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)

all modulo 2**64. A coordinate takes two draws: numerator ``r mod (2**17 + 1)
- 2**16`` and denominator ``1 + r mod denom_bound``.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import List

from tverberg_kit.core.errors import GenerationError, InputError
from tverberg_kit.core.rational import PointConfig, RatVector, is_general_position

logger = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
NUMERATOR_SPAN = 1 << 16
DEFAULT_ATTEMPTS = 1000


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def numerator(self) -> int:
        return self.next() % (2 * NUMERATOR_SPAN + 1) - NUMERATOR_SPAN

    def rational(self, denom_bound: int) -> Fraction:
        num = self.numerator()
        return Fraction(num, 1 + self.next() % denom_bound)

    def unit_offset(self, dim: int) -> RatVector:
        """A vector with coordinates in [-1, 1] on the 2**-16 grid."""
        return tuple(Fraction(self.numerator(), NUMERATOR_SPAN) for _ in range(dim))


def generate_instance(seed: int, count: int, dim: int, denom_bound: int,
                      attempts: int = DEFAULT_ATTEMPTS) -> PointConfig:
    """Deterministic random configuration in general position."""
    if count < 1 or dim < 1 or denom_bound < 1:
        raise InputError("count, dim and denom_bound must all be positive")
    rng = SplitMix64(seed)
    for attempt in range(1, attempts + 1):
        rows: List[RatVector] = [tuple(rng.rational(denom_bound) for _ in range(dim)) for _ in range(count)]
        config = PointConfig(dim, tuple(rows))
        if is_general_position(config):
            if attempt > 1:
                logger.debug("seed %d accepted after %d draws", seed, attempt)
            return config
    raise GenerationError(f"no configuration in general position after {attempts} draws (seed {seed})")
