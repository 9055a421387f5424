"""Audit orchestration: configuration, bundles, ingestion, risk, escalation.

An audit is a single JSON-serializable ledger. Bundles of physically
ordered ballots are registered with a ceremony seed before any position
is revealed; skip sequences are issued per (bundle, round) from recorded
stream offsets so every sequence replays bit-for-bit from the persisted
seeds; interpretation records accumulate into per-pair tallies; risk
reports delegate to the risk module on cumulative tallies and latch
confirmations.

No ballot manifest is required: a bundle's ballot count is discovered
while sampling (the worksheet just runs past the end of the stack) and is
recorded afterward for transparency.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field

from . import risk
from .prng import Generator, validate_seed
from .sampler import SkipSequence, compose_rates, sample_bundle, validate_rate

SCHEMA_VERSION = 1

# Central-seed audits carve the one ceremony stream into fixed blocks so
# bundles can sample in parallel with disjoint counter ranges.
CENTRAL_COUNTER_BLOCK = 1_000_000

OPEN = "OPEN"
CONFIRMED = "CONFIRMED"
FULL_COUNT = "FULL_COUNT"

PLURALITY = "plurality"
MAJORITY = "majority"
POOLED_LOSERS = "pooled_losers"

PER_SITE = "per-site"
CENTRAL = "central"


class AuditError(Exception):
    """Base for audit failures; carries a stable machine-readable code."""

    def __init__(self, code: str, message: str, detail: dict | None = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.detail = detail or {}

    def to_json_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "detail": self.detail}


class ValidationFailure(AuditError):
    pass


class NotFound(AuditError):
    pass


class Conflict(AuditError):
    pass


@dataclass
class Contest:
    """One contest under audit, with reported results.

    winners are the k >= 1 reported winners; a majority contest pools all
    losing candidates into a single pseudo-candidate at configuration
    time, so it always yields one (winner, pooled-losers) pair.
    """

    contest_id: str
    candidates: list[str]
    winners: list[str]
    reported: dict[str, int]
    n_total_reported: int
    type: str = PLURALITY

    def validate(self) -> None:
        if not self.contest_id:
            raise ValidationFailure("invalid_contest", "contest_id must be non-empty")
        if len(set(self.candidates)) != len(self.candidates) or not self.candidates:
            raise ValidationFailure(
                "invalid_contest",
                f"contest {self.contest_id}: candidates must be unique and non-empty",
            )
        if not self.winners or not set(self.winners) <= set(self.candidates):
            raise ValidationFailure(
                "invalid_contest",
                f"contest {self.contest_id}: winners must be a non-empty subset of candidates",
            )
        if len(set(self.winners)) != len(self.winners):
            raise ValidationFailure(
                "invalid_contest", f"contest {self.contest_id}: winners must be unique"
            )
        if self.type not in (PLURALITY, MAJORITY):
            raise ValidationFailure(
                "invalid_contest",
                f"contest {self.contest_id}: type must be '{PLURALITY}' or '{MAJORITY}'",
            )
        if self.type == MAJORITY and len(self.winners) != 1:
            raise ValidationFailure(
                "invalid_contest",
                f"contest {self.contest_id}: a majority contest has exactly one winner",
            )
        if not set(self.reported) <= set(self.candidates):
            raise ValidationFailure(
                "invalid_contest",
                f"contest {self.contest_id}: reported votes name unknown candidates",
            )
        if any(v < 0 for v in self.reported.values()) or self.n_total_reported < 1:
            raise ValidationFailure(
                "invalid_contest",
                f"contest {self.contest_id}: vote counts must be non-negative "
                "and the ballot total positive",
            )
        for winner, loser in self.pairs():
            vw, vl = self.pair_reported(winner, loser)
            if vw <= vl:
                raise ValidationFailure(
                    "invalid_contest",
                    f"contest {self.contest_id}: reported winner {winner} does not "
                    f"lead {loser} ({vw} vs {vl})",
                )
            if vw + vl > self.n_total_reported:
                raise ValidationFailure(
                    "invalid_contest",
                    f"contest {self.contest_id}: pair ({winner}, {loser}) reported "
                    f"votes exceed the ballot total",
                )

    def losers(self) -> list[str]:
        return [c for c in self.candidates if c not in self.winners]

    def pairs(self) -> list[tuple[str, str]]:
        if self.type == MAJORITY:
            return [(self.winners[0], POOLED_LOSERS)]
        return [(w, l) for w in self.winners for l in self.losers()]

    def pair_reported(self, winner: str, loser: str) -> tuple[int, int]:
        vw = self.reported.get(winner, 0)
        if loser == POOLED_LOSERS:
            vl = sum(self.reported.get(c, 0) for c in self.losers())
        else:
            vl = self.reported.get(loser, 0)
        return vw, vl

    def reported_tallies(self, winner: str, loser: str) -> risk.ReportedTallies:
        vw, vl = self.pair_reported(winner, loser)
        return risk.ReportedTallies(vw, vl, self.n_total_reported - vw - vl, self.n_total_reported)

    def classify(self, interpretation: str, winner: str, loser: str) -> str:
        """Map one recorded interpretation onto the pair's tally bucket."""
        if interpretation == winner:
            return "winner"
        if loser == POOLED_LOSERS:
            if interpretation in self.losers():
                return "loser"
        elif interpretation == loser:
            return "loser"
        return "other"

    def to_dict(self) -> dict:
        return {
            "contest_id": self.contest_id,
            "candidates": list(self.candidates),
            "winners": list(self.winners),
            "reported": dict(self.reported),
            "n_total_reported": self.n_total_reported,
            "type": self.type,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Contest":
        return cls(
            contest_id=data["contest_id"],
            candidates=list(data["candidates"]),
            winners=list(data["winners"]),
            reported={k: int(v) for k, v in data["reported"].items()},
            n_total_reported=int(data["n_total_reported"]),
            type=data.get("type", PLURALITY),
        )


@dataclass
class AuditConfig:
    audit_id: str
    alpha: float
    contests: list[Contest]
    round_rates: list[float]
    seed_policy: str = PER_SITE
    central_seed: str | None = None

    def validate(self) -> None:
        if not self.audit_id:
            raise ValidationFailure("invalid_config", "audit_id must be non-empty")
        if not 0.0 < self.alpha < 1.0:
            raise ValidationFailure(
                "invalid_config", f"alpha must be in (0, 1), got {self.alpha}"
            )
        if not self.round_rates:
            raise ValidationFailure("invalid_config", "at least one round rate is required")
        for rate in self.round_rates:
            if not 0.0 < rate <= 1.0:
                raise ValidationFailure(
                    "invalid_config", f"round rates must be in (0, 1], got {rate}"
                )
        if not self.contests:
            raise ValidationFailure("invalid_config", "at least one contest is required")
        ids = [c.contest_id for c in self.contests]
        if len(set(ids)) != len(ids):
            raise ValidationFailure("invalid_config", "contest ids must be unique")
        for contest in self.contests:
            contest.validate()
        if self.seed_policy not in (PER_SITE, CENTRAL):
            raise ValidationFailure(
                "invalid_config",
                f"seed_policy must be '{PER_SITE}' or '{CENTRAL}', got {self.seed_policy!r}",
            )
        if self.seed_policy == CENTRAL:
            if self.central_seed is None:
                raise ValidationFailure(
                    "invalid_config", "central seed policy requires central_seed"
                )
            try:
                validate_seed(self.central_seed)
            except ValueError as exc:
                raise ValidationFailure("invalid_seed", str(exc)) from exc

    def to_dict(self) -> dict:
        return {
            "audit_id": self.audit_id,
            "alpha": self.alpha,
            "contests": [c.to_dict() for c in self.contests],
            "round_rates": list(self.round_rates),
            "seed_policy": self.seed_policy,
            "central_seed": self.central_seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AuditConfig":
        return cls(
            audit_id=data["audit_id"],
            alpha=float(data["alpha"]),
            contests=[Contest.from_dict(c) for c in data["contests"]],
            round_rates=[float(r) for r in data["round_rates"]],
            seed_policy=data.get("seed_policy", PER_SITE),
            central_seed=data.get("central_seed"),
        )


@dataclass
class IssuedSequence:
    """A persisted per-(bundle, round) walk, replayable from its offsets."""

    round_index: int
    rate: float
    size_used: int
    counter_start: int
    draws_consumed: int
    skips: list[int]
    positions: list[int]

    def to_dict(self) -> dict:
        return {
            "round": self.round_index,
            "rate": self.rate,
            "size_used": self.size_used,
            "counter_start": self.counter_start,
            "draws_consumed": self.draws_consumed,
            "skips": list(self.skips),
            "positions": list(self.positions),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "IssuedSequence":
        return cls(
            round_index=int(data["round"]),
            rate=float(data["rate"]),
            size_used=int(data["size_used"]),
            counter_start=int(data["counter_start"]),
            draws_consumed=int(data["draws_consumed"]),
            skips=[int(y) for y in data["skips"]],
            positions=[int(p) for p in data["positions"]],
        )


@dataclass
class Bundle:
    bundle_id: str
    site_id: str
    seed: str
    counter_base: int = 0
    count_observed: int | None = None
    draws_used: int = 0
    sequences: dict[int, IssuedSequence] = field(default_factory=dict)

    def audited_positions(self, up_to_round: int | None = None) -> set[int]:
        positions: set[int] = set()
        for index, seq in self.sequences.items():
            if up_to_round is None or index <= up_to_round:
                positions.update(seq.positions)
        return positions

    def to_dict(self) -> dict:
        return {
            "bundle_id": self.bundle_id,
            "site_id": self.site_id,
            "seed": self.seed,
            "counter_base": self.counter_base,
            "count_observed": self.count_observed,
            "draws_used": self.draws_used,
            # resumable stream state in the pinned {seed, counter} form
            "generator_state": {
                "seed": self.seed,
                "counter": self.counter_base + self.draws_used,
            },
            "sequences": [self.sequences[k].to_dict() for k in sorted(self.sequences)],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Bundle":
        sequences = [IssuedSequence.from_dict(s) for s in data.get("sequences", [])]
        return cls(
            bundle_id=data["bundle_id"],
            site_id=data["site_id"],
            seed=data["seed"],
            counter_base=int(data.get("counter_base", 0)),
            count_observed=(
                int(data["count_observed"]) if data.get("count_observed") is not None else None
            ),
            draws_used=int(data.get("draws_used", 0)),
            sequences={s.round_index: s for s in sequences},
        )


@dataclass(frozen=True)
class InterpretationRecord:
    bundle_id: str
    position: int
    round_index: int
    contest_id: str
    interpretation: str

    def key(self) -> tuple[str, int, str]:
        return (self.bundle_id, self.position, self.contest_id)

    def to_dict(self) -> dict:
        return {
            "bundle_id": self.bundle_id,
            "position": self.position,
            "round": self.round_index,
            "contest_id": self.contest_id,
            "interpretation": self.interpretation,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "InterpretationRecord":
        return cls(
            bundle_id=data["bundle_id"],
            position=int(data["position"]),
            round_index=int(data["round"]),
            contest_id=data["contest_id"],
            interpretation=data["interpretation"],
        )


@dataclass
class IngestReport:
    applied: int
    rejected: list[dict]

    def to_dict(self) -> dict:
        return {"applied": self.applied, "rejected": self.rejected}


class AuditState:
    """The persistent audit ledger; one logical document, one writer."""

    def __init__(self, config: AuditConfig):
        config.validate()
        self.config = config
        self.bundles: dict[str, Bundle] = {}
        self.interpretations: list[InterpretationRecord] = []
        self._interpretation_keys: set[tuple[str, int, str]] = set()
        self.status: dict[str, str] = {c.contest_id: OPEN for c in config.contests}
        # One report per completed round, per contest, in round order.
        self.risk_history: dict[str, list[dict]] = {
            c.contest_id: [] for c in config.contests
        }
        self._central_blocks_allocated = 0

    # ----- bundles ---------------------------------------------------------

    def add_bundle(
        self,
        bundle_id: str,
        site_id: str,
        seed: str | None = None,
        count_observed: int | None = None,
    ) -> Bundle:
        """Register a bundle; its seed is recorded before any position is revealed."""
        if not bundle_id:
            raise ValidationFailure("invalid_bundle", "bundle_id must be non-empty")
        if bundle_id in self.bundles:
            raise Conflict("duplicate_bundle", f"bundle {bundle_id!r} already registered")
        if count_observed is not None and count_observed < 1:
            raise ValidationFailure(
                "invalid_bundle", f"count_observed must be positive, got {count_observed}"
            )
        if self.config.seed_policy == CENTRAL:
            if seed is not None and seed != self.config.central_seed:
                raise ValidationFailure(
                    "invalid_seed",
                    "bundles under a central seed policy use the ceremony seed",
                )
            seed = self.config.central_seed
            counter_base = self._central_blocks_allocated * CENTRAL_COUNTER_BLOCK
            self._central_blocks_allocated += 1
        else:
            if seed is None:
                raise ValidationFailure(
                    "missing_seed", "per-site seed policy requires a seed per bundle"
                )
            try:
                validate_seed(seed)
            except ValueError as exc:
                raise ValidationFailure("invalid_seed", str(exc)) from exc
            counter_base = 0
        bundle = Bundle(
            bundle_id=bundle_id,
            site_id=site_id,
            seed=seed,
            counter_base=counter_base,
            count_observed=count_observed,
        )
        self.bundles[bundle_id] = bundle
        return bundle

    def record_count(self, bundle_id: str, count: int) -> Bundle:
        """Record the ballot count discovered while sampling a bundle."""
        bundle = self._bundle(bundle_id)
        if count < 1:
            raise ValidationFailure("invalid_bundle", f"count must be positive, got {count}")
        bundle.count_observed = count
        return bundle

    def _bundle(self, bundle_id: str) -> Bundle:
        try:
            return self.bundles[bundle_id]
        except KeyError:
            raise NotFound("unknown_bundle", f"bundle {bundle_id!r} is not registered")

    # ----- sequences -------------------------------------------------------

    def issue_sequence(
        self, bundle_id: str, round_index: int, size: int | None = None
    ) -> IssuedSequence:
        """Issue (or reissue) the skip sequence for one bundle and round.

        Reissue returns the persisted walk unchanged; asking for a larger
        size extends the latest round's walk in place, which is safe
        because a longer walk shares the shorter walk as a prefix and no
        later round has consumed the stream yet.
        """
        bundle = self._bundle(bundle_id)
        if not 0 <= round_index < len(self.config.round_rates):
            raise ValidationFailure(
                "round_out_of_range",
                f"round {round_index} is outside the configured plan of "
                f"{len(self.config.round_rates)} round(s); escalate to add rounds",
                {"configured_rounds": len(self.config.round_rates)},
            )
        existing = bundle.sequences.get(round_index)
        if existing is not None:
            if size is None or size <= existing.size_used:
                return existing
            if any(k > round_index for k in bundle.sequences):
                raise Conflict(
                    "sequence_frozen",
                    f"round {round_index} of bundle {bundle_id!r} cannot be extended "
                    "after a later round consumed the seed stream",
                )
            return self._walk(bundle, round_index, size, existing.counter_start)
        if round_index > 0 and round_index - 1 not in bundle.sequences:
            raise ValidationFailure(
                "round_order",
                f"round {round_index - 1} of bundle {bundle_id!r} must be issued first",
            )
        walk_size = size if size is not None else bundle.count_observed
        if walk_size is None:
            raise ValidationFailure(
                "size_required",
                f"bundle {bundle_id!r} has no recorded ballot count; supply a size",
            )
        if walk_size < 1:
            raise ValidationFailure("invalid_size", f"size must be positive, got {walk_size}")
        counter_start = bundle.counter_base + bundle.draws_used
        return self._walk(bundle, round_index, walk_size, counter_start)

    def _walk(
        self, bundle: Bundle, round_index: int, size: int, counter_start: int
    ) -> IssuedSequence:
        gen = Generator(seed=bundle.seed, counter=counter_start)
        walk: SkipSequence = sample_bundle(gen, self.config.round_rates[round_index], size)
        issued = IssuedSequence(
            round_index=round_index,
            rate=self.config.round_rates[round_index],
            size_used=size,
            counter_start=counter_start,
            draws_consumed=walk.draws_consumed,
            skips=walk.skips,
            positions=walk.positions,
        )
        bundle.sequences[round_index] = issued
        bundle.draws_used = (counter_start - bundle.counter_base) + walk.draws_consumed
        return issued

    def rounds_issued(self) -> int:
        return max(
            (max(b.sequences) + 1 for b in self.bundles.values() if b.sequences),
            default=0,
        )

    # ----- interpretations -------------------------------------------------

    def ingest(self, records: list[InterpretationRecord]) -> IngestReport:
        """Apply interpretation records, rejecting duplicates and unknown positions."""
        applied = 0
        rejected: list[dict] = []

        def reject(record: InterpretationRecord, reason: str) -> None:
            rejected.append({"record": record.to_dict(), "reason": reason})

        contests = {c.contest_id: c for c in self.config.contests}
        for record in records:
            if record.bundle_id not in self.bundles:
                reject(record, f"bundle {record.bundle_id!r} is not registered")
                continue
            bundle = self.bundles[record.bundle_id]
            sequence = bundle.sequences.get(record.round_index)
            if sequence is None:
                reject(
                    record,
                    f"round {record.round_index} has no issued sequence for bundle "
                    f"{record.bundle_id!r}",
                )
                continue
            if record.position not in sequence.positions:
                reject(
                    record,
                    f"position {record.position} was not selected in round "
                    f"{record.round_index} of bundle {record.bundle_id!r}",
                )
                continue
            if (
                bundle.count_observed is not None
                and record.position > bundle.count_observed
            ):
                reject(
                    record,
                    f"position {record.position} is beyond the observed count "
                    f"of {bundle.count_observed}",
                )
                continue
            contest = contests.get(record.contest_id)
            if contest is None:
                reject(record, f"contest {record.contest_id!r} is not under audit")
                continue
            if (
                record.interpretation != "other"
                and record.interpretation not in contest.candidates
            ):
                reject(
                    record,
                    f"interpretation {record.interpretation!r} is neither a candidate "
                    "nor 'other'",
                )
                continue
            if record.key() in self._interpretation_keys:
                reject(record, "duplicate interpretation for this ballot and contest")
                continue
            self._interpretation_keys.add(record.key())
            self.interpretations.append(record)
            applied += 1
        return IngestReport(applied=applied, rejected=rejected)

    def tallies(self) -> dict[str, dict[tuple[str, str], risk.SampleTally]]:
        """Cumulative per-pair tallies pooled from the interpretation records."""
        contests = {c.contest_id: c for c in self.config.contests}
        counts: dict[str, dict[tuple[str, str], dict[str, int]]] = {
            cid: {pair: {"winner": 0, "loser": 0, "other": 0} for pair in c.pairs()}
            for cid, c in contests.items()
        }
        for record in self.interpretations:
            contest = contests.get(record.contest_id)
            if contest is None:
                continue
            for pair in contest.pairs():
                bucket = contest.classify(record.interpretation, *pair)
                counts[record.contest_id][pair][bucket] += 1
        return {
            cid: {
                pair: risk.SampleTally(c["winner"], c["loser"], c["other"])
                for pair, c in pairs.items()
            }
            for cid, pairs in counts.items()
        }

    # ----- risk ------------------------------------------------------------

    def risk_report(self) -> dict:
        """Per-contest, per-pair risk on cumulative tallies; latches CONFIRMED."""
        rounds = self.rounds_issued()
        if rounds == 0:
            raise ValidationFailure(
                "no_rounds", "no skip sequence has been issued yet; nothing to report"
            )
        current_round = rounds - 1
        tallies = self.tallies()
        contests_report = []
        for contest in self.config.contests:
            pair_inputs = {
                pair: (tallies[contest.contest_id][pair], contest.reported_tallies(*pair))
                for pair in contest.pairs()
            }
            results, attained = risk.pair_matrix_p_values(pair_inputs)
            anomaly = any(r.anomaly for r in results.values())
            decision = risk.CONFIRM if attained <= self.config.alpha else risk.ESCALATE
            previous = self.status[contest.contest_id]
            if previous == CONFIRMED or decision == risk.CONFIRM:
                status = CONFIRMED
            elif anomaly:
                status = FULL_COUNT
            else:
                status = OPEN
            self.status[contest.contest_id] = status
            pair_entries = [
                results[pair].to_json_dict(
                    *pair,
                    decision=(
                        risk.CONFIRM
                        if results[pair].p_value <= self.config.alpha
                        else risk.ESCALATE
                    ),
                )
                for pair in contest.pairs()
            ]
            entry = {
                "contest_id": contest.contest_id,
                "risk": attained,
                "decision": decision,
                "status": status,
                "anomaly": anomaly,
                "full_count_recommended": status == FULL_COUNT,
                "pairs": pair_entries,
            }
            contests_report.append(entry)
            history = self.risk_history[contest.contest_id]
            round_entry = {"round": current_round, "risk": attained, "pairs": pair_entries}
            if history and history[-1]["round"] == current_round:
                history[-1] = round_entry
            else:
                history.append(round_entry)
        return {
            "audit_id": self.config.audit_id,
            "alpha": self.config.alpha,
            "round": current_round,
            "cumulative_rate": compose_rates(self.config.round_rates[: rounds]),
            "contests": contests_report,
            "assumptions": {
                "population_size": "taken from reported totals; no ballot manifest"
            },
        }

    # ----- escalation ------------------------------------------------------

    def plan_escalation(self, p_next: float) -> dict:
        """Append a sampling round and issue its sequences where sizes are known."""
        try:
            validate_rate(p_next)
        except ValueError as exc:
            raise ValidationFailure("invalid_rate", str(exc)) from exc
        if not 0.0 < p_next <= 1.0:
            raise ValidationFailure(
                "invalid_rate", f"escalation rate must be in (0, 1], got {p_next}"
            )
        if all(status == CONFIRMED for status in self.status.values()):
            return {
                "status": "noop",
                "message": "all contests are confirmed; no escalation round added",
                "round_rates": list(self.config.round_rates),
            }
        self.config.round_rates.append(p_next)
        new_round = len(self.config.round_rates) - 1
        instructions = []
        for bundle in self.bundles.values():
            prior = bundle.sequences.get(new_round - 1)
            if prior is None:
                continue  # this bundle has not reached the prior round yet
            size = bundle.count_observed or prior.size_used
            already = bundle.audited_positions(up_to_round=new_round - 1)
            issued = self.issue_sequence(bundle.bundle_id, new_round, size=size)
            instructions.append(
                {
                    "bundle_id": bundle.bundle_id,
                    "round": new_round,
                    "rate": p_next,
                    "positions": list(issued.positions),
                    "new_positions": sorted(set(issued.positions) - already),
                    "skips": list(issued.skips),
                }
            )
        return {
            "status": "escalated",
            "round": new_round,
            "rate": p_next,
            "cumulative_rate": compose_rates(self.config.round_rates),
            "round_rates": list(self.config.round_rates),
            "bundles": instructions,
        }

    # ----- persistence -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "config": self.config.to_dict(),
            "bundles": [self.bundles[k].to_dict() for k in sorted(self.bundles)],
            "interpretations": [r.to_dict() for r in self.interpretations],
            "status": dict(self.status),
            "risk_history": self.risk_history,
            "central_blocks_allocated": self._central_blocks_allocated,
        }

    def export_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "AuditState":
        known = {
            "schema_version",
            "config",
            "bundles",
            "interpretations",
            "status",
            "risk_history",
            "central_blocks_allocated",
        }
        extra = set(data) - known
        if extra:
            warnings.warn(
                f"audit document carries unknown fields {sorted(extra)}; ignoring them",
                stacklevel=2,
            )
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValidationFailure(
                "schema_mismatch",
                f"unsupported audit document schema {version!r}; expected {SCHEMA_VERSION}",
            )
        state = cls(AuditConfig.from_dict(data["config"]))
        for bundle_data in data.get("bundles", []):
            bundle = Bundle.from_dict(bundle_data)
            state.bundles[bundle.bundle_id] = bundle
        for record_data in data.get("interpretations", []):
            record = InterpretationRecord.from_dict(record_data)
            state.interpretations.append(record)
            state._interpretation_keys.add(record.key())
        state.status.update(data.get("status", {}))
        for cid, history in data.get("risk_history", {}).items():
            if cid in state.risk_history:
                state.risk_history[cid] = history
        state._central_blocks_allocated = int(data.get("central_blocks_allocated", 0))
        return state

    @classmethod
    def import_json(cls, text: str | bytes) -> "AuditState":
        if isinstance(text, bytes):
            text = text.decode("utf-8", errors="replace")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationFailure(
                "parse_error",
                f"audit document is not valid JSON at byte offset {exc.pos}: {exc.msg}",
                {"offset": exc.pos},
            ) from exc
        return cls.from_dict(data)


def create_audit(config: AuditConfig) -> AuditState:
    """Validate a configuration and start an empty audit ledger."""
    return AuditState(config)
