"""Regenerate the frozen golden files under tests/golden/.

Run from the repository root after an intentional behavior change:

    python scripts/make_goldens.py
"""

import json
import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO_ROOT / "tests"))

from golden_support import build_pipeline_state, worksheet_csv  # noqa: E402

from bernoulli_audit.simulator import compare_workload, workload_csv  # noqa: E402

GOLDEN_DIR = REPO_ROOT / "tests" / "golden"


def main() -> None:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    state = build_pipeline_state()
    (GOLDEN_DIR / "worksheet.csv").write_text(worksheet_csv(state))
    report = state.risk_report()
    (GOLDEN_DIR / "risk_report.json").write_text(
        json.dumps(report, indent=2, sort_keys=True) + "\n"
    )
    rows = compare_workload(2000, [0.7, 0.99], [0.05], trials=50, seed=5)
    (GOLDEN_DIR / "workload.csv").write_text(workload_csv(rows))
    print(f"wrote goldens to {GOLDEN_DIR}")


if __name__ == "__main__":
    main()
