"""Command-line client for planning, running, and simulating audits.

Stateful subcommands operate on a single audit ledger file (--audit-file);
`serve` exposes the same operations over HTTP for audit stations.
"""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import click

from . import planner, simulator
from .audit import AuditConfig, AuditError, AuditState, InterpretationRecord, create_audit

INTERPRETATION_COLUMNS = [
    "audit_id",
    "bundle_id",
    "round",
    "position",
    "contest_id",
    "interpretation",
]


def _echo_json(payload) -> None:
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


def _load_state(audit_file: str | None) -> AuditState:
    if not audit_file:
        raise click.UsageError("--audit-file is required for this command")
    path = Path(audit_file)
    if not path.exists():
        raise click.ClickException(f"audit file {audit_file!r} does not exist")
    try:
        return AuditState.import_json(path.read_text())
    except AuditError as exc:
        raise click.ClickException(exc.message)


def _save_state(state: AuditState, audit_file: str) -> None:
    Path(audit_file).write_text(state.export_json())


def _audit_file(ctx: click.Context, override: str | None) -> str | None:
    return override or ctx.obj.get("audit_file")


@click.group()
@click.option("--audit-file", type=click.Path(), default=None, help="Audit ledger file.")
@click.option("--seed", default=None, help="20-digit ceremony seed.")
@click.option("--alpha", type=float, default=None, help="Risk limit.")
@click.option("--rate", type=float, default=None, help="Sampling rate.")
@click.pass_context
def main(ctx: click.Context, audit_file, seed, alpha, rate) -> None:
    """Bernoulli ballot-polling risk-limiting audit toolkit."""
    ctx.ensure_object(dict)
    ctx.obj.update(audit_file=audit_file, seed=seed, alpha=alpha, rate=rate)


@main.command()
@click.option("--alpha", type=float, default=None)
@click.option("--margin", type=float, required=True, help="(Vw - Vl) / (Vw + Vl).")
@click.option("--n-total", type=int, required=True)
@click.option("--invalid-fraction", type=float, default=0.0)
@click.option("--multiplier", type=float, default=1.0, help="ASN multiplier (2-4 for ~90% one-round completion).")
@click.option("--method", type=click.Choice(["asn", "simulated"]), default="asn")
@click.option("--target-power", type=float, default=0.9)
@click.option("--trials", type=int, default=1000)
@click.option("--sim-seed", type=int, default=1)
@click.pass_context
def plan(ctx, alpha, margin, n_total, invalid_fraction, multiplier, method, target_power, trials, sim_seed):
    """Recommend an initial sampling rate."""
    alpha = alpha if alpha is not None else (ctx.obj.get("alpha") or 0.05)
    params = planner.PlanParams(
        alpha=alpha,
        margin=margin,
        n_total=n_total,
        invalid_fraction=invalid_fraction,
        target_power=target_power,
        asn_multiplier=multiplier,
    )
    _echo_json(planner.build_plan(params, method=method, trials=trials, seed=sim_seed))


@main.command()
@click.option("--audit-file", type=click.Path(), default=None)
@click.option("--config", "config_path", type=click.Path(exists=True), required=True,
              help="JSON file with the audit configuration.")
@click.pass_context
def create(ctx, audit_file, config_path):
    """Create a new audit ledger from a configuration file."""
    audit_file = _audit_file(ctx, audit_file)
    if not audit_file:
        raise click.UsageError("--audit-file is required")
    if Path(audit_file).exists():
        raise click.ClickException(f"audit file {audit_file!r} already exists")
    try:
        config = AuditConfig.from_dict(json.loads(Path(config_path).read_text()))
        state = create_audit(config)
    except AuditError as exc:
        raise click.ClickException(exc.message)
    _save_state(state, audit_file)
    _echo_json({"audit_id": state.config.audit_id, "contests": list(state.status)})


@main.group()
def bundle():
    """Bundle registration."""


@bundle.command("add")
@click.option("--audit-file", type=click.Path(), default=None)
@click.option("--bundle-id", required=True)
@click.option("--site-id", default="")
@click.option("--seed", default=None, help="20-digit seed (per-site policy).")
@click.option("--count", type=int, default=None, help="Ballot count, if already known.")
@click.pass_context
def bundle_add(ctx, audit_file, bundle_id, site_id, seed, count):
    """Register a bundle and record its ceremony seed."""
    audit_file = _audit_file(ctx, audit_file)
    state = _load_state(audit_file)
    try:
        added = state.add_bundle(
            bundle_id=bundle_id,
            site_id=site_id,
            seed=seed or ctx.obj.get("seed"),
            count_observed=count,
        )
    except AuditError as exc:
        raise click.ClickException(exc.message)
    _save_state(state, audit_file)
    _echo_json({"bundle_id": added.bundle_id, "counter_base": added.counter_base})


@main.command()
@click.option("--audit-file", type=click.Path(), default=None)
@click.option("--bundle-id", required=True)
@click.option("--round", "round_index", type=int, default=0)
@click.option("--size", type=int, default=None,
              help="Walk length; needed until the bundle's count is recorded.")
@click.option("--csv", "csv_path", type=click.Path(), default=None,
              help="Also write the worksheet CSV here.")
@click.pass_context
def sequence(ctx, audit_file, bundle_id, round_index, size, csv_path):
    """Issue or reprint the skip-sequence worksheet for a bundle round."""
    audit_file = _audit_file(ctx, audit_file)
    state = _load_state(audit_file)
    try:
        issued = state.issue_sequence(bundle_id, round_index, size=size)
    except AuditError as exc:
        raise click.ClickException(exc.message)
    _save_state(state, audit_file)
    if csv_path:
        with open(csv_path, "w", newline="") as handle:
            writer = csv.DictWriter(
                handle,
                fieldnames=["bundle_id", "round", "draw_index", "y", "position"],
                lineterminator="\n",
            )
            writer.writeheader()
            for j, (y, pos) in enumerate(zip(issued.skips, issued.positions)):
                writer.writerow(
                    {
                        "bundle_id": bundle_id,
                        "round": issued.round_index,
                        "draw_index": j + 1,
                        "y": y,
                        "position": pos,
                    }
                )
    payload = issued.to_dict()
    payload["bundle_id"] = bundle_id
    _echo_json(payload)


@main.command()
@click.argument("csv_file", type=click.Path(exists=True))
@click.option("--audit-file", type=click.Path(), default=None)
@click.pass_context
def ingest(ctx, csv_file, audit_file):
    """Ingest an interpretation CSV (audit_id,bundle_id,round,position,contest_id,interpretation)."""
    audit_file = _audit_file(ctx, audit_file)
    state = _load_state(audit_file)
    records = []
    skipped = []
    with open(csv_file, newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames != INTERPRETATION_COLUMNS:
            raise click.ClickException(
                "interpretation CSV must have exactly the header "
                + ",".join(INTERPRETATION_COLUMNS)
            )
        for line, row in enumerate(reader, start=2):
            if row["audit_id"] != state.config.audit_id:
                skipped.append({"line": line, "reason": f"audit_id {row['audit_id']!r} does not match"})
                continue
            try:
                records.append(
                    InterpretationRecord(
                        bundle_id=row["bundle_id"],
                        position=int(row["position"]),
                        round_index=int(row["round"]),
                        contest_id=row["contest_id"],
                        interpretation=row["interpretation"],
                    )
                )
            except ValueError as exc:
                skipped.append({"line": line, "reason": str(exc)})
    report = state.ingest(records)
    _save_state(state, audit_file)
    payload = report.to_dict()
    payload["skipped_rows"] = skipped
    _echo_json(payload)


@main.command()
@click.option("--audit-file", type=click.Path(), default=None)
@click.pass_context
def risk(ctx, audit_file):
    """Compute the cumulative risk report."""
    audit_file = _audit_file(ctx, audit_file)
    state = _load_state(audit_file)
    try:
        report = state.risk_report()
    except AuditError as exc:
        raise click.ClickException(exc.message)
    _save_state(state, audit_file)
    _echo_json(report)


@main.command()
@click.option("--audit-file", type=click.Path(), default=None)
@click.option("--rate", "p_next", type=float, default=None)
@click.pass_context
def escalate(ctx, audit_file, p_next):
    """Add an escalation round and issue its sequences."""
    audit_file = _audit_file(ctx, audit_file)
    p_next = p_next if p_next is not None else ctx.obj.get("rate")
    if p_next is None:
        raise click.UsageError("--rate is required")
    state = _load_state(audit_file)
    try:
        plan_result = state.plan_escalation(p_next)
    except AuditError as exc:
        raise click.ClickException(exc.message)
    _save_state(state, audit_file)
    _echo_json(plan_result)


@main.command()
@click.option("--n-total", type=int, default=10_000)
@click.option("--shares", default="0.55,0.6,0.7", help="Comma-separated winner shares.")
@click.option("--alphas", default="0.05", help="Comma-separated risk limits.")
@click.option("--trials", type=int, default=2000)
@click.option("--sim-seed", type=int, default=1)
@click.option("--out", "out_path", type=click.Path(), default=None, help="CSV output path (default stdout).")
@click.option("--plot", "plot_path", type=click.Path(), default=None, help="Write an SVG chart here.")
def simulate(n_total, shares, alphas, trials, sim_seed, out_path, plot_path):
    """Compare Bernoulli-polling and BRAVO workloads by simulation."""
    share_grid = [float(s) for s in shares.split(",") if s]
    alpha_grid = [float(a) for a in alphas.split(",") if a]
    rows = simulator.compare_workload(n_total, share_grid, alpha_grid, trials, sim_seed)
    text = simulator.workload_csv(rows)
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)
    if plot_path:
        simulator.workload_plot(rows, plot_path)


@main.command()
@click.option("--data-dir", type=click.Path(), default="./audit-data")
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
@click.option("--static-dir", type=click.Path(), default=None,
              help="Serve the audit-station UI from this directory.")
def serve(data_dir, host, port, static_dir):
    """Run the audit-station HTTP API."""
    import uvicorn

    from .service import create_app
    from .store import AuditStore

    app = create_app(AuditStore(data_dir), static_dir=static_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
