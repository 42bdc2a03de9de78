import time
from types import SimpleNamespace

import pytest

from arousalkit import synthetic
from arousalkit.pipeline import (
    demo_config,
    run_build,
    run_evaluate,
    run_expand,
    run_ingest,
    run_ratings,
    run_score,
    run_seeds,
    run_sheet,
    run_train,
    run_agreement,
)


@pytest.fixture(scope="session")
def demo_run(tmp_path_factory):
    """One full pipeline run on the bundled synthetic corpus, with stage
    timings, shared by the acceptance tests."""
    work_dir = tmp_path_factory.mktemp("demo")
    t_start = time.time()
    inputs = synthetic.generate_demo_inputs(work_dir, n_issues=1000, seed=7)
    config = demo_config(work_dir, seed=7, n_issues=1000)
    config.save(work_dir / "inputs" / "config.json")

    run_ingest(config)
    t0 = time.time()
    model = run_train(config)
    train_seconds = time.time() - t0
    run_seeds(config)
    candidates = run_expand(config)

    review = work_dir / "review_accept_all.csv"
    review.write_text(
        "".join(f"{c.word},accept\n" for c in candidates), encoding="utf-8"
    )
    run_sheet(config, review=str(review))
    truth = synthetic.load_truth(inputs.truth_path)
    rater_files = []
    for n, label in enumerate(("r1", "r2"), start=1):
        out = work_dir / f"ratings_{label}.csv"
        synthetic.fill_ratings(work_dir / "sheet.csv", out, truth, 7 + n)
        rater_files.append(str(out))
    run_ratings(config, rater_files, labels=["r1", "r2"])
    run_agreement(config)
    sea = run_build(config)
    run_score(config)
    table = run_evaluate(config)
    total_seconds = time.time() - t_start
    return SimpleNamespace(
        work_dir=work_dir,
        config=config,
        inputs=inputs,
        model=model,
        sea=sea,
        table=table,
        truth=truth,
        train_seconds=train_seconds,
        total_seconds=total_seconds,
    )


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion at the end of the run."""
    lines = []
    for outcome in ("passed", "failed", "skipped"):
        for report in terminalreporter.stats.get(outcome, []):
            if getattr(report, "when", "call") != "call" and outcome != "skipped":
                continue
            if "test_acceptance.py" not in report.nodeid:
                continue
            name = report.nodeid.split("::")[-1]
            lines.append((name, outcome.upper()))
    if not lines:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome in sorted(set(lines)):
        terminalreporter.write_line(f"{name}: {outcome}")
