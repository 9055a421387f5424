"""Geometric skip sampling of ordered ballot bundles.

Walking a bundle in canonical order, the gaps between selected ballots
in a Bernoulli(p) sample are independent Geometric(p) variables, so one
uniform draw per *selected* ballot suffices: Y = ceil(ln(U) / ln(1-p)).
The walk needs no ballot count up front; it simply stops once the
cumulative skip total passes the end of the physical stack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .prng import Generator

# Smallest positive double; substituted for u = 0 so the log is finite
# and the skip becomes very large instead of undefined.
_TINY = 5e-324


def validate_rate(p: float) -> float:
    if not (0.0 <= p <= 1.0) or math.isnan(p):
        raise ValueError(f"sampling rate must be in [0, 1], got {p}")
    return p


def geometric_skip(u: float, p: float) -> int:
    """Gap to the next selected ballot: ceil(ln(u)/ln(1-p)), at least 1.

    Requires 0 < p < 1; callers special-case p = 0 and p = 1 because
    ln(1-p) is 0 or -inf there. u in [1-p, 1) yields exactly 1.
    """
    if not (0.0 < p < 1.0):
        raise ValueError(f"geometric skip needs a rate strictly inside (0, 1), got {p}")
    if u == 0.0:
        u = _TINY
    return math.ceil(math.log(u) / math.log(1.0 - p))


@dataclass
class SkipSequence:
    """One round's walk over a bundle.

    positions[j] is the cumulative sum of the skips Y_1..Y_{j+1}; the
    first cumulative sum exceeding bundle_size ends the walk and is not
    included. draws_consumed counts uniform draws, including the
    terminating one, so a replay knows how far the stream advanced.
    """

    bundle_size: int
    rate: float
    positions: list[int] = field(default_factory=list)
    skips: list[int] = field(default_factory=list)
    draws_consumed: int = 0

    def csv_rows(self, bundle_id: str, round_index: int) -> list[dict]:
        """Worksheet rows: bundle_id, round, draw_index, y, position."""
        return [
            {
                "bundle_id": bundle_id,
                "round": round_index,
                "draw_index": j + 1,
                "y": y,
                "position": pos,
            }
            for j, (y, pos) in enumerate(zip(self.skips, self.positions))
        ]


def sample_bundle(gen: Generator, p: float, bundle_size: int) -> SkipSequence:
    """Select positions 1..bundle_size by geometric skipping at rate p.

    p = 0 selects nothing and draws nothing; p = 1 selects every position
    and draws nothing. Otherwise one uniform is consumed per skip,
    including the final skip that runs past the end of the bundle.
    """
    validate_rate(p)
    if bundle_size < 1:
        raise ValueError(f"bundle_size must be at least 1, got {bundle_size}")
    seq = SkipSequence(bundle_size=bundle_size, rate=p)
    if p == 0.0:
        return seq
    if p == 1.0:
        seq.positions = list(range(1, bundle_size + 1))
        seq.skips = [1] * bundle_size
        return seq
    total = 0
    while True:
        y = geometric_skip(gen.next_uniform(), p)
        seq.draws_consumed += 1
        total += y
        if total > bundle_size:
            return seq
        seq.skips.append(y)
        seq.positions.append(total)


def compose_rates(rates: list[float]) -> float:
    """Effective selection probability of successive rounds: 1 - prod(1 - p_k)."""
    miss = 1.0
    for p in rates:
        miss *= 1.0 - validate_rate(p)
    return 1.0 - miss


def sample_round_k(
    gen: Generator,
    p_k: float,
    bundle_size: int,
    already_selected: set[int],
) -> set[int]:
    """Positions newly selected by an escalation round at rate p_k.

    The walk covers the whole bundle in canonical order (audited ballots
    keep their place in the stack) and repeats are discarded afterwards;
    since selections are independent, this matches tossing the coin only
    for not-yet-selected ballots.
    """
    if not already_selected <= set(range(1, bundle_size + 1)):
        raise ValueError("already_selected contains positions outside the bundle")
    walk = sample_bundle(gen, p_k, bundle_size)
    return set(walk.positions) - already_selected
