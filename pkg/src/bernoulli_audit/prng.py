"""Deterministic SHA-256 pseudorandom stream seeded by a dice ceremony.

The stream is pinned at the byte level so that any independent
implementation can replay an audit: draw ``k`` hashes the UTF-8 bytes of
``"<seed>,<k>"`` (the 20-digit seed, a comma, and the draw counter in
decimal with no leading zeros), reads the digest as a big-endian 256-bit
integer ``d``, and returns the largest double <= d / 2**256.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

SEED_LENGTH = 20

_TWO_256 = 2**256


class SeedError(ValueError):
    """Raised for a malformed dice seed; the message names the offending position."""


def validate_seed(digits: str) -> str:
    """Check that a seed is exactly 20 decimal digits and return it unchanged."""
    if not isinstance(digits, str):
        raise SeedError(f"seed must be a string of {SEED_LENGTH} digits")
    if len(digits) != SEED_LENGTH:
        raise SeedError(
            f"seed must be exactly {SEED_LENGTH} digits, got {len(digits)}"
        )
    for pos, ch in enumerate(digits, start=1):
        if not ch.isascii() or not ch.isdigit():
            raise SeedError(f"seed has non-digit character {ch!r} at position {pos}")
    return digits


@dataclass
class Generator:
    """Seeded uniform stream on [0, 1); state is exactly (seed, counter).

    The counter advances by one per draw, so a serialized (seed, counter)
    pair resumes the identical stream. A generator has a single owner and
    must not be shared for concurrent draws.
    """

    seed: str
    counter: int = field(default=0)

    def __post_init__(self) -> None:
        validate_seed(self.seed)
        if self.counter < 0:
            raise ValueError("counter must be non-negative")

    def next_uniform(self) -> float:
        """Return the next uniform value in [0, 1) and advance the counter."""
        message = f"{self.seed},{self.counter}".encode()
        digest = hashlib.sha256(message).digest()
        self.counter += 1
        return _fraction_below(int.from_bytes(digest, "big"))

    def state(self) -> dict:
        """Serializable state: {seed, counter}."""
        return {"seed": self.seed, "counter": self.counter}

    @classmethod
    def from_state(cls, state: dict) -> "Generator":
        return cls(seed=state["seed"], counter=int(state["counter"]))


def new_generator(seed: str) -> Generator:
    """Build a generator at counter 0 from a 20-digit ceremony seed."""
    return Generator(seed=validate_seed(seed))


def _fraction_below(d: int) -> float:
    """Largest double at or below d / 2**256.

    Plain division rounds to nearest, which can land above the true
    quotient (and can produce 1.0 for d near 2**256); one nextafter step
    restores the at-or-below guarantee exactly.
    """
    x = d / _TWO_256
    num, den = x.as_integer_ratio()
    if num * _TWO_256 > d * den:
        x = math.nextafter(x, 0.0)
    return x
