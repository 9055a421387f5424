"""File-backed registry of audit ledgers, one JSON document per audit."""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

from .audit import AuditConfig, AuditState, Conflict, NotFound, create_audit


class AuditStore:
    """Audits live as <audit_id>.json files under one directory.

    Mutations load, modify, and atomically rewrite a document; callers
    serialize writes per audit (the service handles one request at a time
    per process, and the CLI owns its file).
    """

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def path(self, audit_id: str) -> Path:
        if not audit_id or "/" in audit_id or audit_id.startswith("."):
            raise NotFound("unknown_audit", f"no audit named {audit_id!r}")
        return self.directory / f"{audit_id}.json"

    def create(self, config: AuditConfig) -> AuditState:
        path = self.path(config.audit_id)
        if path.exists():
            raise Conflict(
                "duplicate_audit", f"audit {config.audit_id!r} already exists"
            )
        state = create_audit(config)
        self.save(state)
        return state

    def load(self, audit_id: str) -> AuditState:
        path = self.path(audit_id)
        if not path.exists():
            raise NotFound("unknown_audit", f"no audit named {audit_id!r}")
        return AuditState.import_json(path.read_text())

    def save(self, state: AuditState) -> None:
        path = self.path(state.config.audit_id)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as handle:
                handle.write(state.export_json())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def list_audits(self) -> list[str]:
        return sorted(p.stem for p in self.directory.glob("*.json"))
