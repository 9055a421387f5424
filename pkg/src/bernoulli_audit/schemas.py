"""Pydantic request models for the audit service."""

from __future__ import annotations

from pydantic import BaseModel, Field

from .audit import PER_SITE, PLURALITY, AuditConfig, Contest, InterpretationRecord


class ContestModel(BaseModel):
    contest_id: str
    candidates: list[str]
    winners: list[str]
    reported: dict[str, int]
    n_total_reported: int
    type: str = PLURALITY

    def to_domain(self) -> Contest:
        return Contest(
            contest_id=self.contest_id,
            candidates=self.candidates,
            winners=self.winners,
            reported=self.reported,
            n_total_reported=self.n_total_reported,
            type=self.type,
        )


class CreateAuditRequest(BaseModel):
    audit_id: str
    alpha: float
    contests: list[ContestModel]
    round_rates: list[float]
    seed_policy: str = PER_SITE
    central_seed: str | None = None

    def to_domain(self) -> AuditConfig:
        return AuditConfig(
            audit_id=self.audit_id,
            alpha=self.alpha,
            contests=[c.to_domain() for c in self.contests],
            round_rates=list(self.round_rates),
            seed_policy=self.seed_policy,
            central_seed=self.central_seed,
        )


class AddBundleRequest(BaseModel):
    bundle_id: str
    site_id: str = ""
    seed: str | None = None
    count_observed: int | None = None


class InterpretationModel(BaseModel):
    bundle_id: str
    position: int
    round: int = Field(ge=0)
    contest_id: str
    interpretation: str

    def to_domain(self) -> InterpretationRecord:
        return InterpretationRecord(
            bundle_id=self.bundle_id,
            position=self.position,
            round_index=self.round,
            contest_id=self.contest_id,
            interpretation=self.interpretation,
        )


class InterpretationsRequest(BaseModel):
    records: list[InterpretationModel]


class EscalateRequest(BaseModel):
    p_next: float
