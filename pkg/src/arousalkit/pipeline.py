"""Stage orchestration over a work directory.

Each stage reads its declared inputs, writes its artifacts into the work
directory, and records a hash of the configuration slice it depends on
in ``manifest.json``. A stage consuming an upstream artifact checks that
hash first, so a config change that invalidates earlier artifacts is
reported instead of silently mixing stale and fresh files.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Optional, Sequence

from . import corpus as corpus_mod
from . import scoring as scoring_mod
from . import synthetic
from .config import PipelineConfig, hash_config_slice
from .corpus import Priority, Vocabulary, build_vocabulary, parse_corpus
from .embedding import WordVectors, count_cooccurrences, glove_train, nearest_neighbors
from .evalstats import EvalTable, evaluate_priorities, render_tables
from .lexicon import (
    AgreementReport,
    CandidateSet,
    SeaLexicon,
    SeedSet,
    aggregate_ratings,
    apply_review,
    expand_embedding,
    expand_wordnet,
    generate_sheet,
    ingest_ratings,
    load_general_lexicon,
    load_rating_records,
    load_seed_list,
    rater_agreement,
    save_rating_records,
    select_seeds,
)
from .scoring import MODES, ScoringLexicon, resolve_sea_avg, score_corpus
from .wordnet import load_wordnet

logger = logging.getLogger(__name__)


class PipelineError(Exception):
    pass


#: config keys each stage's output depends on (cumulative over upstream)
_INGEST_KEYS = ["corpus", "min_count"]
_TRAIN_KEYS = _INGEST_KEYS + [
    "embedding.dim", "embedding.window", "embedding.x_max", "embedding.alpha",
    "embedding.learning_rate", "embedding.epochs", "embedding.seed",
]
_SEEDS_KEYS = _INGEST_KEYS + [
    "general_lexicon", "general_columns", "extra_seeds",
    "seeds.n1", "seeds.f1", "seeds.n2", "seeds.f2",
]
_EXPAND_KEYS = sorted(set(_TRAIN_KEYS + _SEEDS_KEYS + ["wordnet_dir", "k"]))
_SHEET_KEYS = _EXPAND_KEYS + ["shuffle_sheet"]

STAGE_KEYS: dict[str, list[str]] = {
    "ingest": _INGEST_KEYS,
    "train": _TRAIN_KEYS,
    "seeds": _SEEDS_KEYS,
    "expand": _EXPAND_KEYS,
    "sheet": _SHEET_KEYS,
    "ratings": _SHEET_KEYS,
    "agreement": _SHEET_KEYS + ["kappa_weighting"],
    "build": _SHEET_KEYS,
    "score": _SHEET_KEYS + ["sea_avg"],
    "evaluate": _SHEET_KEYS + ["sea_avg", "t_test"],
}

STAGE_REQUIRES: dict[str, list[str]] = {
    "ingest": [],
    "train": ["ingest"],
    "seeds": ["ingest"],
    "expand": ["ingest", "train", "seeds"],
    "sheet": ["ingest", "train", "expand"],
    "ratings": [],
    "agreement": ["ratings"],
    "build": ["ratings", "expand"],
    "score": ["build"],
    "evaluate": ["ingest", "score"],
}

STAGE_ARTIFACTS: dict[str, list[str]] = {
    "ingest": ["vocab.csv", "priorities.csv"],
    "train": ["embedding.txt"],
    "seeds": ["seeds.csv"],
    "expand": ["candidates.csv"],
    "sheet": ["sheet.csv"],
    "ratings": ["ratings.csv"],
    "agreement": ["agreement.txt"],
    "build": ["sea_lexicon.csv"],
    "score": ["scores.csv"],
    "evaluate": ["eval_d.csv", "eval_t.csv", "eval_df.csv", "eval_p.csv",
                 "eval_tables.txt"],
}


class Workspace:
    """Work-directory paths plus the stage manifest."""

    def __init__(self, config: PipelineConfig):
        self.config = config
        self.work_dir = Path(config.work_dir)
        self.manifest_path = self.work_dir / "manifest.json"

    def path(self, name: str) -> Path:
        return self.work_dir / name

    def _manifest(self) -> dict:
        if self.manifest_path.is_file():
            return json.loads(self.manifest_path.read_text(encoding="utf-8"))
        return {}

    def record_stage(self, stage: str) -> None:
        manifest = self._manifest()
        manifest[stage] = {
            "config_hash": hash_config_slice(self.config, STAGE_KEYS[stage]),
            "artifacts": STAGE_ARTIFACTS[stage],
        }
        self.work_dir.mkdir(parents=True, exist_ok=True)
        self.manifest_path.write_text(
            json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )

    def check_upstream(self, stage: str) -> None:
        self.check_stages(STAGE_REQUIRES[stage])

    def check_stages(self, stages: list[str]) -> None:
        manifest = self._manifest()
        for upstream in stages:
            for artifact in STAGE_ARTIFACTS[upstream]:
                if not self.path(artifact).is_file():
                    raise PipelineError(
                        f"missing artifact {artifact!r}; run the {upstream!r} stage first"
                    )
            entry = manifest.get(upstream)
            expected = hash_config_slice(self.config, STAGE_KEYS[upstream])
            if entry is None or entry.get("config_hash") != expected:
                raise PipelineError(
                    f"artifacts of stage {upstream!r} are stale for the current "
                    f"configuration; re-run {upstream!r}"
                )


# ---------------------------------------------------------------------------
# stages


def run_ingest(config: PipelineConfig) -> Vocabulary:
    ws = Workspace(config)
    ws.work_dir.mkdir(parents=True, exist_ok=True)
    priorities: dict[str, Priority] = {}

    def issues_with_priorities():
        for issue in parse_corpus(config.corpus):
            priorities[issue.id] = issue.priority
            yield issue

    vocab = build_vocabulary(issues_with_priorities(), min_count=config.min_count)
    vocab.save(ws.path("vocab.csv"))
    save_priorities(priorities, ws.path("priorities.csv"))
    ws.record_stage("ingest")
    logger.info("ingest: %d issues, %d vocabulary words", len(priorities), len(vocab))
    return vocab


def save_priorities(priorities: dict[str, Priority], path: Path) -> None:
    with path.open("w", encoding="utf-8") as out:
        out.write("issue_id,priority\n")
        for issue_id in sorted(priorities):
            out.write(f"{issue_id},{priorities[issue_id].value}\n")


def load_priorities(path: Path) -> dict[str, Priority]:
    priorities = {}
    with path.open("r", encoding="utf-8") as handle:
        handle.readline()
        for line in handle:
            issue_id, _, label = line.strip().partition(",")
            priorities[issue_id] = Priority.parse(label)
    return priorities


def run_train(config: PipelineConfig):
    ws = Workspace(config)
    ws.check_upstream("train")
    vocab = Vocabulary.load(ws.path("vocab.csv"))
    units = (
        stream
        for issue in parse_corpus(config.corpus)
        for stream in corpus_mod.comment_token_streams(issue)
    )
    cooc = count_cooccurrences(units, vocab, config.embedding.window)
    model = glove_train(cooc, vocab.words, config.embedding)
    model.to_vectors().save(ws.path("embedding.txt"))
    ws.record_stage("train")
    logger.info(
        "train: %d cells, loss %.2f -> %.2f",
        len(cooc), model.loss_history[0], model.loss_history[-1],
    )
    return model


def run_neighbors(config: PipelineConfig, word: str, k: Optional[int] = None):
    ws = Workspace(config)
    ws.check_stages(["train"])
    vectors = WordVectors.load(ws.path("embedding.txt"))
    return nearest_neighbors(vectors, word, k if k is not None else config.k)


def run_seeds(config: PipelineConfig) -> SeedSet:
    ws = Workspace(config)
    ws.check_upstream("seeds")
    vocab = Vocabulary.load(ws.path("vocab.csv"))
    general = load_general_lexicon(config.general_lexicon, config.general_columns)
    seeds = select_seeds(general, vocab, config.seeds)
    if config.extra_seeds:
        for seed in load_seed_list(config.extra_seeds, vocab):
            if not seeds.add(seed):
                logger.warning("extra seed %r already selected, skipped", seed.word)
    seeds.save(ws.path("seeds.csv"))
    ws.record_stage("seeds")
    return seeds


def run_expand(config: PipelineConfig) -> CandidateSet:
    ws = Workspace(config)
    ws.check_upstream("expand")
    vocab = Vocabulary.load(ws.path("vocab.csv"))
    seeds = SeedSet.load(ws.path("seeds.csv"))
    candidates = CandidateSet.from_seeds(seeds)
    db = load_wordnet(config.wordnet_dir)
    n_wn = expand_wordnet(candidates, seeds, db, vocab)
    vectors = WordVectors.load(ws.path("embedding.txt"))
    n_emb = expand_embedding(candidates, seeds, vectors, config.k)
    candidates.save(ws.path("candidates.csv"))
    ws.record_stage("expand")
    logger.info(
        "expand: %d seeds + %d wordnet + %d embedding = %d candidates",
        len(seeds), n_wn, n_emb, len(candidates),
    )
    return candidates


def run_sheet(config: PipelineConfig, review: Optional[str] = None) -> Path:
    ws = Workspace(config)
    ws.check_upstream("sheet")
    candidates = CandidateSet.load(ws.path("candidates.csv"))
    if review:
        n_accept, n_reject = apply_review(candidates, review)
        candidates.save(ws.path("candidates.csv"))
        logger.info("review: %d accepted, %d rejected", n_accept, n_reject)
    vocab = Vocabulary.load(ws.path("vocab.csv"))
    vectors = WordVectors.load(ws.path("embedding.txt"))
    out = ws.path("sheet.csv")
    generate_sheet(out, candidates.accepted_words(), vocab, vectors,
                   k=config.k, shuffle_seed=config.shuffle_sheet)
    ws.record_stage("sheet")
    return out


def run_ratings(
    config: PipelineConfig,
    sheet_files: Sequence[str],
    labels: Optional[Sequence[str]] = None,
):
    ws = Workspace(config)
    records, report = ingest_ratings(sheet_files, labels)
    if report.errors:
        for error in report.errors:
            logger.warning("rating row rejected: %s", error)
    save_rating_records(records, ws.path("ratings.csv"))
    ws.record_stage("ratings")
    logger.info(
        "ratings: %d records, %d empty cells skipped, %d rejected rows",
        report.n_records, report.n_skipped, len(report.errors),
    )
    return records, report


def run_agreement(config: PipelineConfig) -> AgreementReport:
    ws = Workspace(config)
    ws.check_upstream("agreement")
    records = load_rating_records(ws.path("ratings.csv"))
    report = rater_agreement(records, kappa_weighting=config.kappa_weighting)
    ws.path("agreement.txt").write_text("\n".join(report.lines()) + "\n",
                                        encoding="utf-8")
    ws.record_stage("agreement")
    return report


def run_build(config: PipelineConfig) -> SeaLexicon:
    ws = Workspace(config)
    ws.check_upstream("build")
    records = load_rating_records(ws.path("ratings.csv"))
    candidates = CandidateSet.load(ws.path("candidates.csv"))
    sea = aggregate_ratings(records, provenance=candidates.provenance_map())
    sea.save(ws.path("sea_lexicon.csv"))
    ws.record_stage("build")
    logger.info("build: %d lexicon words, mean arousal %.3f", len(sea), sea.mu)
    return sea


def run_score(config: PipelineConfig, modes: Sequence[str] = MODES):
    ws = Workspace(config)
    ws.check_upstream("score")
    general = ScoringLexicon(
        load_general_lexicon(config.general_lexicon, config.general_columns).arousal_map()
    )
    sea = ScoringLexicon(SeaLexicon.load(ws.path("sea_lexicon.csv")).arousal_map())
    sea_avg = resolve_sea_avg(
        sea, config.sea_avg,
        issues=parse_corpus(config.corpus) if config.sea_avg == "dataset" else None,
    )
    rows = score_corpus(parse_corpus(config.corpus), general, sea, sea_avg, modes)
    scoring_mod.save_scores(rows, ws.path("scores.csv"))
    ws.record_stage("score")
    logger.info("score: %d present rows (sea_avg %.4f)", len(rows), sea_avg)
    return rows


def run_evaluate(config: PipelineConfig) -> EvalTable:
    ws = Workspace(config)
    ws.check_upstream("evaluate")
    priorities = load_priorities(ws.path("priorities.csv"))
    rows = scoring_mod.load_scores(ws.path("scores.csv"), priorities)
    table = evaluate_priorities(rows, t_test=config.t_test)
    render_tables(table, ws.work_dir)
    ws.record_stage("evaluate")
    return table


# ---------------------------------------------------------------------------
# demo


def demo_config(work_dir: str | Path, seed: int = 7,
                n_issues: int = 1000) -> PipelineConfig:
    """Toy-scale settings sized to the bundled synthetic corpus.

    The seed frequency thresholds scale with the corpus size; each
    designated pole word occurs roughly n_issues/10 times.
    """
    config = PipelineConfig(
        corpus=str(Path(work_dir) / "inputs" / "corpus.jsonl"),
        general_lexicon=str(Path(work_dir) / "inputs" / "general_lexicon.csv"),
        wordnet_dir=str(Path(work_dir) / "inputs" / "wordnet"),
        work_dir=str(work_dir),
        min_count=min(5, max(2, n_issues // 60)),
    )
    config.embedding.dim = 32
    config.embedding.epochs = 6
    config.embedding.seed = seed
    config.seeds.f1 = max(2, n_issues // 50)
    config.seeds.f2 = max(4, n_issues // 16)
    return config


def run_demo(work_dir: str | Path, n_issues: int = 1000, seed: int = 7,
             threads: int = 1) -> EvalTable:
    """Full pipeline on generated inputs, with simulated raters."""
    work_dir = Path(work_dir)
    inputs = synthetic.generate_demo_inputs(work_dir, n_issues=n_issues, seed=seed)
    config = demo_config(work_dir, seed=seed, n_issues=n_issues)
    config.embedding.threads = threads
    config.save(work_dir / "inputs" / "config.json")

    run_ingest(config)
    run_train(config)
    run_seeds(config)
    candidates = run_expand(config)

    review_path = work_dir / "review_accept_all.csv"
    with review_path.open("w", encoding="utf-8") as out:
        for candidate in candidates:
            out.write(f"{candidate.word},accept\n")
    run_sheet(config, review=str(review_path))

    truth = synthetic.load_truth(inputs.truth_path)
    rater_files = []
    for n, label in enumerate(("r1", "r2"), start=1):
        out_path = work_dir / f"ratings_{label}.csv"
        synthetic.fill_ratings(work_dir / "sheet.csv", out_path, truth, seed + n)
        rater_files.append(str(out_path))
    run_ratings(config, rater_files, labels=["r1", "r2"])
    run_agreement(config)
    run_build(config)
    run_score(config)
    return run_evaluate(config)
