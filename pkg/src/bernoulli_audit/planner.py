"""Initial sampling-rate selection: ASN heuristic and simulated power.

The average sample number for a ballot-polling test at risk limit alpha
and margin m is roughly 2*ln(1/alpha)/m^2; multiplying it by 2-4 gives a
sample size with about a 90% chance of finishing in one round. There is
no closed form for the power of the sequential test under one-round
Bernoulli sampling, so rates for a target power come from Monte-Carlo
simulation with a bisection search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats
from scipy.special import gammaln


def asn(alpha: float, margin: float) -> float:
    """Expected draws for the with-replacement test to reach a decision."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    if not 0.0 < margin <= 1.0:
        raise ValueError(f"margin must be in (0, 1], got {margin}")
    return 2.0 * math.log(1.0 / alpha) / margin**2


@dataclass(frozen=True)
class PlanParams:
    """Inputs for choosing an initial sampling rate.

    margin is the winner's fractional lead over the loser among their
    valid votes; invalid_fraction is the share of ballots with a vote for
    neither (or both), which inflates the rate by 1/(1 - r).
    """

    alpha: float
    margin: float
    n_total: int
    invalid_fraction: float = 0.0
    target_power: float = 0.9
    asn_multiplier: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")
        if not 0.0 < self.margin <= 1.0:
            raise ValueError(f"margin must be in (0, 1], got {self.margin}")
        if not 0.0 <= self.invalid_fraction < 1.0:
            raise ValueError(
                f"invalid_fraction must be in [0, 1), got {self.invalid_fraction}"
            )
        if self.n_total < 1:
            raise ValueError(f"n_total must be positive, got {self.n_total}")
        if not 0.0 < self.target_power < 1.0:
            raise ValueError(f"target_power must be in (0, 1), got {self.target_power}")
        if self.asn_multiplier < 1.0:
            raise ValueError(f"asn_multiplier must be >= 1, got {self.asn_multiplier}")


def initial_rate(params: PlanParams) -> float:
    """ASN-based initial rate, inflated for invalid votes and capped at 1."""
    expected_draws = params.asn_multiplier * asn(params.alpha, params.margin)
    return min(1.0, expected_draws / ((1.0 - params.invalid_fraction) * params.n_total))


@dataclass(frozen=True)
class PowerEstimate:
    power: float
    std_error: float
    trials: int


def two_candidate_split(n_total: int, margin: float) -> tuple[int, int]:
    """Vote totals for a two-candidate population with the given margin."""
    winner = int(round(n_total * (1.0 + margin) / 2.0))
    loser = n_total - winner
    if winner <= loser:
        raise ValueError(
            f"margin {margin} is not resolvable with {n_total} ballots"
        )
    return winner, loser


def _log_p_two_candidate(
    bw: np.ndarray, bl: np.ndarray, n_total: int, vw: int, vl: int
) -> np.ndarray:
    """Vectorized log P-value for two-candidate samples with no other votes.

    With no 'other' ballots the null log likelihood increases in x, so the
    maximizer is floor(N/2); each falling-factorial log sum collapses to a
    difference of log-gamma values. Callers must mask bw <= bl and
    bw > floor(N/2) themselves.
    """
    x_star = n_total // 2
    bw = bw.astype(np.float64)
    bl = bl.astype(np.float64)
    log_num = (gammaln(x_star + 1.0) - gammaln(x_star - bw + 1.0)) + (
        gammaln(x_star + 1.0) - gammaln(x_star - bl + 1.0)
    )
    log_den = (gammaln(vw + 1.0) - gammaln(vw - bw + 1.0)) + (
        gammaln(vl + 1.0) - gammaln(vl - bl + 1.0)
    )
    return log_num - log_den


def simulate_power(
    n_total: int,
    margin: float,
    rate: float,
    alpha: float,
    trials: int,
    seed: int,
) -> PowerEstimate:
    """Chance one Bernoulli round at the given rate confirms a correctly
    reported two-candidate contest with no invalid votes.

    Each trial draws the per-candidate sample counts as independent
    binomials (exactly the Bernoulli sampling law restricted to the two
    vote classes) through inverse-CDF lookups on per-trial uniforms, so
    runs with the same seed share randomness across rates and the power
    curve is smooth in the rate.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"rate must be in [0, 1], got {rate}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    vw, vl = two_candidate_split(n_total, margin)
    rng = np.random.default_rng(seed)
    u_w = rng.random(trials)
    u_l = rng.random(trials)
    bw = stats.binom.ppf(u_w, vw, rate).astype(np.int64)
    bl = stats.binom.ppf(u_l, vl, rate).astype(np.int64)
    sampled = bw + bl

    confirmed = np.zeros(trials, dtype=bool)
    census = sampled == n_total
    confirmed[census] = bw[census] > bl[census]
    open_mask = (~census) & (bw > bl) & (bw <= n_total // 2)
    if open_mask.any():
        log_p = _log_p_two_candidate(bw[open_mask], bl[open_mask], n_total, vw, vl)
        confirmed[open_mask] = log_p <= math.log(alpha)

    power = float(confirmed.mean())
    std_error = math.sqrt(power * (1.0 - power) / trials)
    return PowerEstimate(power=power, std_error=std_error, trials=trials)


def rate_for_power(
    n_total: int,
    margin: float,
    alpha: float,
    target_power: float,
    trials: int = 1000,
    seed: int = 1,
) -> float:
    """Smallest one-round rate reaching the target power, by bisection.

    The bracket shrinks to 0.25 percentage points and the upper end is
    returned, erring toward sampling more. All power evaluations share the
    seed so the search sees a common-random-number power curve.
    """
    if not 0.0 < target_power < 1.0:
        raise ValueError(f"target_power must be in (0, 1), got {target_power}")

    def power_at(rate: float) -> float:
        return simulate_power(n_total, margin, rate, alpha, trials, seed).power

    lo = 0.0
    hi = min(1.0, max(asn(alpha, margin) / n_total, 1.0 / n_total))
    while power_at(hi) < target_power and hi < 1.0:
        lo = hi
        hi = min(1.0, 2.0 * hi)
    while hi - lo > 0.0025:
        mid = 0.5 * (lo + hi)
        if power_at(mid) >= target_power:
            hi = mid
        else:
            lo = mid
    return hi


def build_plan(
    params: PlanParams,
    method: str = "asn",
    trials: int = 1000,
    seed: int = 1,
) -> dict:
    """Audit plan document for the CLI and service."""
    if method not in ("asn", "simulated"):
        raise ValueError(f"method must be 'asn' or 'simulated', got {method!r}")
    expected_draws = asn(params.alpha, params.margin)
    if method == "asn":
        rate = initial_rate(params)
    else:
        base = rate_for_power(
            params.n_total,
            params.margin,
            params.alpha,
            params.target_power,
            trials=trials,
            seed=seed,
        )
        rate = min(1.0, base / (1.0 - params.invalid_fraction))
    # Power check of the recommended rate on the valid-vote population.
    valid_rate = rate * (1.0 - params.invalid_fraction)
    estimate = simulate_power(
        params.n_total, params.margin, min(1.0, valid_rate), params.alpha, trials, seed
    )
    return {
        "alpha": params.alpha,
        "margin": params.margin,
        "invalid_fraction": params.invalid_fraction,
        "asn": expected_draws,
        "recommended_rate": rate,
        "method": method,
        "power_estimate": estimate.power,
        "trials": trials,
    }
