import pytest

from bernoulli_audit.audit import AuditConfig, Contest


@pytest.fixture
def two_candidate_config() -> AuditConfig:
    return AuditConfig(
        audit_id="city-2026",
        alpha=0.05,
        contests=[
            Contest(
                contest_id="mayor",
                candidates=["alice", "bob"],
                winners=["alice"],
                reported={"alice": 900, "bob": 100},
                n_total_reported=1000,
            )
        ],
        round_rates=[0.1],
    )


@pytest.fixture
def vote_for_two_config() -> AuditConfig:
    return AuditConfig(
        audit_id="council-2026",
        alpha=0.05,
        contests=[
            Contest(
                contest_id="council",
                candidates=["ann", "ben", "carol"],
                winners=["ann", "ben"],
                reported={"ann": 500, "ben": 400, "carol": 200},
                n_total_reported=1000,
            )
        ],
        round_rates=[0.1],
    )
