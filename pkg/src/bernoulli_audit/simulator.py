"""Workload and conservatism experiments: Bernoulli polling vs BRAVO.

Trials model a two-candidate contest where every ballot is a valid vote
for one of the candidates. Populations are never materialized; a Bernoulli
round selects per-candidate counts as independent binomial draws from the
not-yet-sampled ballots, which reproduces the exact joint law of Bernoulli
sampling. The with-replacement BRAVO reference tracks Wald's likelihood
ratio draw by draw.

Simulation randomness comes from numpy's seeded generators for speed and
reproducibility; the ceremony-seeded SHA-256 stream is reserved for real
audit sampling.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from . import risk
from .planner import asn, two_candidate_split

BBP = "BBP"
BRAVO = "BRAVO"


@dataclass(frozen=True)
class TrialOutcome:
    method: str
    ballots_examined: int
    rounds: int
    confirmed: bool
    final_p: float


def run_bbp_trial(
    n_total: int,
    winner_share: float,
    rate_schedule: list[float],
    alpha: float,
    rng: np.random.Generator,
    reported_share: float | None = None,
) -> TrialOutcome:
    """One multi-round Bernoulli audit of a two-candidate contest.

    The true population has winner_share of the ballots for the winner;
    the reported results used as the alternative default to the truth.
    Sampling stops at the first round whose cumulative-tally P-value
    reaches the risk limit, or when the schedule runs out. A sample that
    reaches the whole population is a completed hand count and is decided
    by the count itself.
    """
    if not 0.5 <= winner_share <= 1.0:
        raise ValueError(f"winner_share must be in [0.5, 1], got {winner_share}")
    if not rate_schedule:
        raise ValueError("rate_schedule must contain at least one round")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    if reported_share is None:
        reported_share = winner_share
    true_w = int(round(n_total * winner_share))
    true_l = n_total - true_w
    reported_w = int(round(n_total * reported_share))
    reported_l = n_total - reported_w
    reported = (
        risk.ReportedTallies(reported_w, reported_l, 0, n_total)
        if reported_w > reported_l
        else None  # a reported tie is not a confirmable alternative
    )

    bw = bl = 0
    rounds = 0
    for rate in rate_schedule:
        rounds += 1
        if rate >= 1.0:
            bw, bl = true_w, true_l
        else:
            bw += int(rng.binomial(true_w - bw, rate))
            bl += int(rng.binomial(true_l - bl, rate))
        sampled = bw + bl
        if sampled == n_total:
            won = true_w > true_l
            return TrialOutcome(BBP, n_total, rounds, won, 0.0 if won else 1.0)
        if reported is None:
            continue
        result = risk.p_value(risk.SampleTally(bw, bl, 0), reported)
        if result.p_value <= alpha:
            return TrialOutcome(BBP, sampled, rounds, True, result.p_value)
    final_p = 1.0
    if reported is not None and (bw or bl):
        final_p = risk.p_value(risk.SampleTally(bw, bl, 0), reported).p_value
    return TrialOutcome(BBP, bw + bl, rounds, False, final_p)


def run_bravo_trial(
    winner_share: float,
    reported_share: float,
    alpha: float,
    rng: np.random.Generator,
    max_draws: int,
) -> TrialOutcome:
    """One with-replacement ballot-polling audit (the BRAVO reference).

    Ballots are drawn IID; the likelihood ratio gains a factor of
    2 * reported_share on a winner ballot and 2 * (1 - reported_share)
    otherwise, confirming once it reaches 1/alpha. An audit that has not
    confirmed by max_draws stops there, standing in for a full hand count.
    """
    if not 0.0 <= winner_share <= 1.0:
        raise ValueError(f"winner_share must be in [0, 1], got {winner_share}")
    if not 0.5 < reported_share < 1.0:
        raise ValueError(
            f"reported_share must be strictly between 0.5 and 1, got {reported_share}"
        )
    if max_draws < 1:
        raise ValueError(f"max_draws must be positive, got {max_draws}")
    step_w = math.log(2.0 * reported_share)
    step_l = math.log(2.0 * (1.0 - reported_share))
    threshold = math.log(1.0 / alpha)
    log_ratio = 0.0
    drawn = 0
    block = 4096
    while drawn < max_draws:
        size = min(block, max_draws - drawn)
        steps = np.where(rng.random(size) < winner_share, step_w, step_l)
        trajectory = log_ratio + np.cumsum(steps)
        crossed = np.nonzero(trajectory >= threshold)[0]
        if crossed.size:
            examined = drawn + int(crossed[0]) + 1
            return TrialOutcome(BRAVO, examined, 1, True, math.exp(-trajectory[crossed[0]]))
        log_ratio = float(trajectory[-1])
        drawn += size
    return TrialOutcome(BRAVO, max_draws, 1, False, min(1.0, math.exp(-log_ratio)))


def escalation_schedule(
    n_total: int, margin: float, alpha: float, max_rounds: int = 400
) -> list[float]:
    """Round rates for workload runs: quarter-ASN rounds until confirmation.

    Small equal rounds let the audit stop close to the sequential test's
    decision boundary, which is what the workload comparison measures. A
    margin of zero has no confirmable outcome, so it goes straight to a
    full count.
    """
    if margin <= 0.0:
        return [1.0]
    per_round = asn(alpha, margin) / (4.0 * n_total)
    rate = min(1.0, max(per_round, 2.0 / n_total))
    if rate >= 1.0:
        return [1.0]
    return [rate] * max_rounds


def compare_workload(
    n_total: int,
    winner_shares: list[float],
    alphas: list[float],
    trials: int,
    seed: int,
) -> list[dict]:
    """Quantile table of ballots examined per (method, winner_share, alpha).

    Trials that never confirm are counted as full hand counts of n_total
    ballots. Rows carry the 25/50/75/90th percentiles and the mean.
    """
    if not winner_shares or not alphas:
        raise ValueError("winner_shares and alphas must be non-empty")
    rows = []
    for cell, (share, alpha) in enumerate(
        (s, a) for s in winner_shares for a in alphas
    ):
        margin = 2.0 * share - 1.0
        schedule = escalation_schedule(n_total, margin, alpha)
        rng = np.random.default_rng([seed, cell, 0])
        bbp_counts = np.empty(trials, dtype=np.int64)
        for t in range(trials):
            outcome = run_bbp_trial(n_total, share, schedule, alpha, rng)
            bbp_counts[t] = outcome.ballots_examined if outcome.confirmed else n_total
        rows.append(_workload_row(BBP, n_total, share, alpha, bbp_counts, trials, seed))

        rng = np.random.default_rng([seed, cell, 1])
        if share <= 0.5:
            # No reported margin to test against: every trial is a full count.
            bravo_counts = np.full(trials, n_total, dtype=np.int64)
        else:
            bravo_counts = np.empty(trials, dtype=np.int64)
            for t in range(trials):
                outcome = run_bravo_trial(share, share, alpha, rng, n_total)
                bravo_counts[t] = (
                    outcome.ballots_examined if outcome.confirmed else n_total
                )
        rows.append(
            _workload_row(BRAVO, n_total, share, alpha, bravo_counts, trials, seed)
        )
    return rows


def _workload_row(
    method: str,
    n_total: int,
    share: float,
    alpha: float,
    counts: np.ndarray,
    trials: int,
    seed: int,
) -> dict:
    q25, q50, q75, q90 = (float(np.percentile(counts, q)) for q in (25, 50, 75, 90))
    return {
        "method": method,
        "n_total": n_total,
        "winner_share": share,
        "alpha": alpha,
        "q25": q25,
        "q50": q50,
        "q75": q75,
        "q90": q90,
        "mean": float(counts.mean()),
        "trials": trials,
        "seed": seed,
    }


WORKLOAD_COLUMNS = [
    "method",
    "n_total",
    "winner_share",
    "alpha",
    "q25",
    "q50",
    "q75",
    "q90",
    "mean",
    "trials",
    "seed",
]


def workload_csv(rows: list[dict]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=WORKLOAD_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def workload_plot(rows: list[dict], path: str) -> None:
    """SVG line chart of median workload against the winner's vote share."""
    import matplotlib

    matplotlib.use("svg")
    import matplotlib.pyplot as plt

    figure, axes = plt.subplots(figsize=(7, 4.5))
    series: dict[tuple[str, float], list[tuple[float, float]]] = {}
    for row in rows:
        series.setdefault((row["method"], row["alpha"]), []).append(
            (row["winner_share"], row["q50"])
        )
    for (method, alpha), points in sorted(series.items()):
        points.sort()
        axes.plot(
            [p[0] for p in points],
            [p[1] for p in points],
            marker="o",
            linestyle="-" if method == BBP else "--",
            label=f"{method}, risk limit {alpha:g}",
        )
    axes.set_xlabel("winner's share of votes")
    axes.set_ylabel("median ballots examined")
    axes.set_yscale("log")
    axes.legend()
    figure.tight_layout()
    figure.savefig(path, format="svg")
    plt.close(figure)


def tie_confirmation_rate(
    n_total: int,
    round_rates: list[float],
    alpha: float,
    trials: int,
    seed: int,
    reported_share: float = 0.55,
) -> float:
    """Fraction of audits of an exactly tied population that confirm.

    The reported results claim a win for one candidate, so a confirmation
    is a type-I error; the rate must stay within the risk limit.
    """
    rng = np.random.default_rng(seed)
    confirmed = 0
    for _ in range(trials):
        outcome = run_bbp_trial(
            n_total, 0.5, round_rates, alpha, rng, reported_share=reported_share
        )
        confirmed += outcome.confirmed
    return confirmed / trials
