"""Sequential risk calculation for Bernoulli ballot-polling audits.

For a (winner, loser) pair the null hypothesis is that the loser got at
least as many valid votes as the winner; the alternative is that the
reported tallies are correct. Conditional on the attained sample size the
sample is a simple random sample, so the null and alternative likelihoods
are products of falling factorials. The null likelihood is maximized over
the unknown count x of winner-equals-loser valid votes, and the P-value is
the likelihood ratio at that maximizer, capped at 1. The resulting test is
sequential: the minimum P-value over successive sampling rounds still
respects the risk limit.

All likelihood arithmetic stays in natural-log space, summed term by
term, because the falling factorials overflow for realistic populations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

CONFIRM = "CONFIRM"
ESCALATE = "ESCALATE"

# Smallest positive double, used as a floor so a P-value never collapses
# to exactly 0 even when exp() underflows.
_P_FLOOR = 5e-324


class TallyError(ValueError):
    """Inconsistent or invalid tallies."""


class InfeasibleNullError(ValueError):
    """No integer nuisance value is compatible with the sample counts."""


@dataclass(frozen=True)
class SampleTally:
    """Audited counts for one (winner, loser) pair, cumulative across rounds.

    for_winner counts ballots with a valid vote for the winner but not the
    loser; for_loser the reverse; other counts ballots with votes for both
    or neither.
    """

    for_winner: int
    for_loser: int
    other: int = 0

    def __post_init__(self) -> None:
        for name in ("for_winner", "for_loser", "other"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 0:
                raise TallyError(f"{name} must be a non-negative integer, got {value!r}")

    @property
    def total(self) -> int:
        return self.for_winner + self.for_loser + self.other


@dataclass(frozen=True)
class ReportedTallies:
    """Reported results for one (winner, loser) pair; the alternative hypothesis."""

    winner_votes: int
    loser_votes: int
    other_votes: int
    total_ballots: int

    def __post_init__(self) -> None:
        for name in ("winner_votes", "loser_votes", "other_votes", "total_ballots"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 0:
                raise TallyError(f"{name} must be a non-negative integer, got {value!r}")
        if self.winner_votes + self.loser_votes + self.other_votes != self.total_ballots:
            raise TallyError(
                "reported tallies must sum to the total ballot count: "
                f"{self.winner_votes} + {self.loser_votes} + {self.other_votes} "
                f"!= {self.total_ballots}"
            )
        if self.winner_votes <= self.loser_votes:
            raise TallyError(
                "reported winner must lead the reported loser "
                f"({self.winner_votes} <= {self.loser_votes})"
            )


@dataclass(frozen=True)
class RiskResult:
    """Outcome of a risk calculation for one pair.

    x_star is the integer nuisance maximizer (None when no value is
    feasible); log_p is ln of the likelihood ratio before capping;
    p_value is min(1, exp(log_p)); anomaly is set when the sample is
    impossible under the reported results or under every null population,
    in which case p_value is 1 and the audit should escalate.
    """

    x_star: int | None
    log_p: float
    p_value: float
    anomaly: bool

    def to_json_dict(self, winner: str, loser: str, decision: str) -> dict:
        return {
            "pair": {"winner": winner, "loser": loser},
            "x_star": self.x_star,
            "log_p": self.log_p,
            "p_value": self.p_value,
            "anomaly": self.anomaly,
            "decision": decision,
        }


def _log_falling_factorial(top: float, count: int) -> float:
    """Sum of ln(top - i) for i in 0..count-1; -inf if any factor is <= 0."""
    if count == 0:
        return 0.0
    factors = top - np.arange(count, dtype=np.float64)
    if factors[-1] <= 0.0:
        return float("-inf")
    return float(np.log(factors).sum())


def log_null_likelihood(x: float, tally: SampleTally, n_total: int) -> float:
    """Log-likelihood of the sample under a null population with x votes each
    for winner and loser (and n_total - 2x others), up to a constant.

    Requires x >= max(for_winner, for_loser) and n_total - 2x >= other;
    returns -inf if a factor still comes out nonpositive.
    """
    bw, bl, bu = tally.for_winner, tally.for_loser, tally.other
    if x < max(bw, bl) or n_total - 2 * x < bu:
        raise ValueError(
            f"x={x} outside the feasible nuisance range for tally "
            f"({bw}, {bl}, {bu}) with N={n_total}"
        )
    return (
        _log_falling_factorial(x, bw)
        + _log_falling_factorial(x, bl)
        + _log_falling_factorial(n_total - 2 * x, bu)
    )


def _slope(x: float, tally: SampleTally, n_total: int) -> float:
    """Derivative of the log null likelihood in x."""
    bw, bl, bu = tally.for_winner, tally.for_loser, tally.other
    total = 0.0
    if bw:
        total += float(np.reciprocal(x - np.arange(bw, dtype=np.float64)).sum())
    if bl:
        total += float(np.reciprocal(x - np.arange(bl, dtype=np.float64)).sum())
    if bu:
        total -= 2.0 * float(
            np.reciprocal(n_total - 2.0 * x - np.arange(bu, dtype=np.float64)).sum()
        )
    return total


def nuisance_bounds(tally: SampleTally, n_total: int) -> tuple[int, int]:
    """Integer range of feasible null nuisance values (may be empty)."""
    lo = max(tally.for_winner, tally.for_loser)
    hi = (n_total - tally.other) // 2
    return lo, hi


def optimal_nuisance(tally: SampleTally, n_total: int) -> int:
    """Integer x maximizing the null likelihood.

    The log likelihood is strictly concave, so if its slope keeps one sign
    the maximum sits at an endpoint; otherwise the real root of the slope
    is bracketed by bisection and the better of its two neighboring
    integers wins. Equal-value ties break to the smaller integer.
    """
    lo, hi = nuisance_bounds(tally, n_total)
    if lo > hi:
        raise InfeasibleNullError(
            f"no null population can produce tally ({tally.for_winner}, "
            f"{tally.for_loser}, {tally.other}) with N={n_total}"
        )
    if lo == hi:
        return lo
    if _slope(lo, tally, n_total) <= 0.0:
        return lo
    if _slope(hi, tally, n_total) >= 0.0:
        return hi
    a, b = float(lo), float(hi)
    while b - a > 1e-9:
        mid = 0.5 * (a + b)
        if _slope(mid, tally, n_total) > 0.0:
            a = mid
        else:
            b = mid
    # The bracket may straddle an exact integer root, so consider the
    # integers adjacent to both bracket ends.
    candidates = sorted(
        {
            min(hi, max(lo, value))
            for value in (math.floor(a), math.ceil(a), math.floor(b), math.ceil(b))
        }
    )
    best = candidates[0]
    best_value = log_null_likelihood(best, tally, n_total)
    for x in candidates[1:]:
        value = log_null_likelihood(x, tally, n_total)
        if value > best_value:
            best, best_value = x, value
    return best


def p_value(tally: SampleTally, reported: ReportedTallies) -> RiskResult:
    """Conservative sequential P-value for one (winner, loser) pair.

    Returns 1 outright when the sample favors the loser. Flags an anomaly
    (with P-value 1, failing safe toward escalation) when the sample is
    impossible under every null population or exceeds the reported counts.
    """
    n_total = reported.total_ballots
    if tally.total > n_total:
        raise TallyError(
            f"sample of {tally.total} exceeds the reported total of {n_total}"
        )
    lo, hi = nuisance_bounds(tally, n_total)
    feasible = lo <= hi
    x_star = optimal_nuisance(tally, n_total) if feasible else None

    if tally.for_loser >= tally.for_winner:
        return RiskResult(x_star=x_star, log_p=0.0, p_value=1.0, anomaly=False)
    if not feasible:
        return RiskResult(x_star=None, log_p=0.0, p_value=1.0, anomaly=True)
    if (
        tally.for_winner > reported.winner_votes
        or tally.for_loser > reported.loser_votes
        or tally.other > reported.other_votes
    ):
        return RiskResult(x_star=x_star, log_p=0.0, p_value=1.0, anomaly=True)

    log_num = log_null_likelihood(x_star, tally, n_total)
    log_den = (
        _log_falling_factorial(reported.winner_votes, tally.for_winner)
        + _log_falling_factorial(reported.loser_votes, tally.for_loser)
        + _log_falling_factorial(reported.other_votes, tally.other)
    )
    log_p = log_num - log_den
    p = min(1.0, math.exp(log_p)) if log_p < 0 else 1.0
    return RiskResult(x_star=x_star, log_p=log_p, p_value=max(p, _P_FLOOR), anomaly=False)


def pair_matrix_p_values(
    pairs: dict[tuple[str, str], tuple[SampleTally, ReportedTallies]],
) -> tuple[dict[tuple[str, str], RiskResult], float]:
    """Risk per (winner, loser) pair plus the contest's attained risk.

    The contest risk is the maximum pair P-value; auditing every pair at
    the same limit needs no multiplicity adjustment because the audit
    stops only if every null is rejected.
    """
    if not pairs:
        raise TallyError("no (winner, loser) pairs supplied")
    results = {pair: p_value(tally, reported) for pair, (tally, reported) in pairs.items()}
    attained = max(result.p_value for result in results.values())
    return results, attained


def audit_decision(risks: dict[str, float], alpha: float) -> dict[str, str]:
    """CONFIRM contests whose attained risk is at or below the limit."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"risk limit must be in (0, 1), got {alpha}")
    return {
        contest: (CONFIRM if risk <= alpha else ESCALATE)
        for contest, risk in risks.items()
    }


def attained_risk(p_history: list[float]) -> float:
    """Risk attained over rounds: the minimum P-value seen so far.

    Confirmation latches; once any round's cumulative-sample P-value
    reaches the limit the contest stays confirmed.
    """
    if not p_history:
        return 1.0
    return min(p_history)
