"""HTTP API for audit stations, wrapping the audit core.

State lives in an AuditStore; every handler loads the audit document,
applies one operation, and persists the result, so the API is a thin
transactional veneer over the same functions the CLI uses. Errors come
back as { code, message, detail }.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .audit import AuditError, Conflict, NotFound
from .schemas import (
    AddBundleRequest,
    CreateAuditRequest,
    EscalateRequest,
    InterpretationsRequest,
)
from .store import AuditStore


def _status_for(error: AuditError) -> int:
    if isinstance(error, NotFound):
        return 404
    if isinstance(error, Conflict):
        return 409
    return 400


def create_app(store: AuditStore, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="Bernoulli ballot-polling audit service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(AuditError)
    async def audit_error_handler(_: Request, error: AuditError) -> JSONResponse:
        return JSONResponse(status_code=_status_for(error), content=error.to_json_dict())

    @app.post("/audits", status_code=201)
    def create_audit_endpoint(request: CreateAuditRequest) -> dict:
        state = store.create(request.to_domain())
        return {
            "audit_id": state.config.audit_id,
            "alpha": state.config.alpha,
            "round_rates": list(state.config.round_rates),
            "seed_policy": state.config.seed_policy,
            "contests": [c.contest_id for c in state.config.contests],
        }

    @app.post("/audits/{audit_id}/bundles", status_code=201)
    def add_bundle_endpoint(audit_id: str, request: AddBundleRequest) -> dict:
        state = store.load(audit_id)
        bundle = state.add_bundle(
            bundle_id=request.bundle_id,
            site_id=request.site_id,
            seed=request.seed,
            count_observed=request.count_observed,
        )
        store.save(state)
        return {
            "bundle_id": bundle.bundle_id,
            "site_id": bundle.site_id,
            "counter_base": bundle.counter_base,
            "count_observed": bundle.count_observed,
        }

    @app.get("/audits/{audit_id}/bundles/{bundle_id}/sequence")
    def sequence_endpoint(
        audit_id: str, bundle_id: str, round: int = 0, size: int | None = None
    ) -> dict:
        state = store.load(audit_id)
        issued = state.issue_sequence(bundle_id, round, size=size)
        store.save(state)
        payload = issued.to_dict()
        payload["bundle_id"] = bundle_id
        return payload

    @app.post("/audits/{audit_id}/interpretations")
    def interpretations_endpoint(
        audit_id: str, request: InterpretationsRequest
    ) -> dict:
        state = store.load(audit_id)
        report = state.ingest([r.to_domain() for r in request.records])
        store.save(state)
        return report.to_dict()

    @app.get("/audits/{audit_id}/risk")
    def risk_endpoint(audit_id: str) -> dict:
        state = store.load(audit_id)
        report = state.risk_report()
        store.save(state)
        return report

    @app.post("/audits/{audit_id}/escalate")
    def escalate_endpoint(audit_id: str, request: EscalateRequest) -> dict:
        state = store.load(audit_id)
        plan = state.plan_escalation(request.p_next)
        store.save(state)
        return plan

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="station")

    return app
