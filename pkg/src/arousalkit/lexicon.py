"""Lexicon bootstrapping: seed selection, candidate expansion, the human
rating round-trip, agreement statistics, and final lexicon assembly.

File formats owned by this module:

* seed list             one ``word,pole,source`` per line
* candidate list        header ``word,provenance,status``
* review decisions      one ``word,accept|reject`` per line
* rating sheet          ``#``-prefixed instruction block, then
                        ``word,rating,frequency,similar_words`` rows
* arousal lexicon       header ``word,arousal,r1,r2,source``
"""

from __future__ import annotations

import csv
import logging
import statistics
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .corpus import Vocabulary
from .embedding import EmbeddingModel, WordVectors, nearest_neighbors
from .stats import pearson_r, weighted_kappa
from .wordnet import SynsetDb, synonyms

logger = logging.getLogger(__name__)

SEED_SOURCES = (
    "general-lexicon",
    "survey",
    "circumplex",
    "liwc",
    "profanity",
    "brainstorm",
)

SHEET_HEADER = "word,rating,frequency,similar_words"

SHEET_INSTRUCTIONS = """\
Rating instructions:
Rate how a software developer likely felt when writing each word in an
issue report or comment, on a scale from 1 (calm) to 9 (excited).
1 means relaxed, calm, sluggish, dull, or unaroused; 9 means stimulated,
excited, frenzied, jittery, or wide-awake. If the word feels completely
neutral, neither calm nor excited, enter 5; use the other numbers for
intermediate levels of activation.
Each row lists words used in similar contexts in the issue corpus, each
with a similarity figure (1.00 = used identically, 0 = unrelated), as
clues to how the word is actually used.
Enter one whole number from 1 to 9 in the rating column, work at a quick
pace, and do not dwell on any single word."""


class LexiconFormatError(Exception):
    pass


# ---------------------------------------------------------------------------
# general-purpose lexicon


@dataclass
class GeneralEntry:
    arousal: float
    valence: Optional[float] = None
    dominance: Optional[float] = None
    arousal_sd: Optional[float] = None


class GeneralLexicon:
    """Word -> arousal map loaded from a delimited general-purpose lexicon."""

    def __init__(self, entries: dict[str, GeneralEntry]):
        self.entries = entries

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def arousal(self, word: str) -> float:
        return self.entries[word].arousal

    def arousal_map(self) -> dict[str, float]:
        return {w: e.arousal for w, e in self.entries.items()}


DEFAULT_GENERAL_COLUMNS = {
    "word": "Word",
    "arousal": "A.Mean.Sum",
    "valence": "V.Mean.Sum",
    "dominance": "D.Mean.Sum",
    "arousal_sd": "A.SD.Sum",
}


def load_general_lexicon(
    path: str | Path,
    columns: Optional[dict[str, str]] = None,
    delimiter: str = ",",
) -> GeneralLexicon:
    """Load a delimited lexicon with a header row.

    ``columns`` maps the logical names word/arousal (and optionally
    valence/dominance/arousal_sd) to header names; defaults match the
    published general-purpose arousal lexicon. Rows with arousal outside
    [1, 9] are rejected with a warning; duplicate words keep the last row.
    """
    colmap = dict(DEFAULT_GENERAL_COLUMNS)
    if columns:
        colmap.update(columns)
    path = Path(path)
    entries: dict[str, GeneralEntry] = {}
    n_dupes = n_rejected = 0
    with path.open("r", encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle, delimiter=delimiter)
        if reader.fieldnames is None:
            raise LexiconFormatError(f"{path}: empty lexicon file")
        for logical in ("word", "arousal"):
            if colmap[logical] not in reader.fieldnames:
                raise LexiconFormatError(
                    f"{path}: missing required column {colmap[logical]!r}"
                )
        for row in reader:
            word = (row[colmap["word"]] or "").strip().lower()
            if not word:
                n_rejected += 1
                continue
            try:
                arousal = float(row[colmap["arousal"]])
            except (TypeError, ValueError):
                logger.warning("%s: non-numeric arousal for %r", path, word)
                n_rejected += 1
                continue
            if not 1.0 <= arousal <= 9.0:
                logger.warning("%s: arousal %.3f out of [1,9] for %r", path, arousal, word)
                n_rejected += 1
                continue
            if word in entries:
                n_dupes += 1
            entries[word] = GeneralEntry(
                arousal=arousal,
                valence=_optional_float(row, colmap["valence"]),
                dominance=_optional_float(row, colmap["dominance"]),
                arousal_sd=_optional_float(row, colmap["arousal_sd"]),
            )
    if n_dupes:
        logger.warning("%s: %d duplicate word(s), last row wins", path, n_dupes)
    if n_rejected:
        logger.warning("%s: rejected %d row(s)", path, n_rejected)
    return GeneralLexicon(entries)


def _optional_float(row: dict, column: str) -> Optional[float]:
    value = row.get(column)
    if value in (None, ""):
        return None
    try:
        return float(value)
    except ValueError:
        return None


# ---------------------------------------------------------------------------
# seed selection


@dataclass
class Seed:
    word: str
    pole: str  # "high" | "low"
    source: str
    freq: int


class SeedSet:
    def __init__(self):
        self._entries: dict[str, Seed] = {}

    def add(self, seed: Seed) -> bool:
        """False (and no change) when the word is already a seed."""
        if seed.word in self._entries:
            return False
        if seed.pole not in ("high", "low"):
            raise ValueError(f"bad pole {seed.pole!r} for seed {seed.word!r}")
        if seed.source not in SEED_SOURCES:
            raise ValueError(f"unknown seed source {seed.source!r}")
        self._entries[seed.word] = seed
        return True

    def __iter__(self):
        return iter(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, word: str) -> bool:
        return word in self._entries

    def words(self) -> list[str]:
        return list(self._entries)

    def save(self, path: str | Path) -> None:
        with Path(path).open("w", encoding="utf-8") as out:
            out.write("word,pole,source,freq\n")
            for seed in self._entries.values():
                out.write(f"{seed.word},{seed.pole},{seed.source},{seed.freq}\n")

    @classmethod
    def load(cls, path: str | Path) -> "SeedSet":
        seeds = cls()
        with Path(path).open("r", encoding="utf-8") as handle:
            header = handle.readline().strip()
            if header != "word,pole,source,freq":
                raise LexiconFormatError(f"{path}: unexpected seed header {header!r}")
            for lineno, line in enumerate(handle, 2):
                parts = line.strip().split(",")
                if len(parts) != 4:
                    raise LexiconFormatError(f"{path}:{lineno}: bad seed row")
                seeds.add(Seed(parts[0], parts[1], parts[2], int(parts[3])))
        return seeds


@dataclass
class SeedConfig:
    n1: int = 10
    f1: int = 100
    n2: int = 10
    f2: int = 1000


class SeedSelectionError(Exception):
    pass


def select_seeds(
    general: GeneralLexicon, vocab: Vocabulary, cfg: SeedConfig = SeedConfig()
) -> SeedSet:
    """Pick frequency-validated extreme-arousal seeds from the general lexicon.

    Scanning by descending arousal (high pole) and ascending arousal (low
    pole), take the first n1 words with corpus frequency > f1, then the
    next n2 words with frequency > f2. Ties in arousal are broken
    lexicographically so the pick is independent of input row order.
    """
    if not len(general):
        raise SeedSelectionError("general lexicon is empty")
    by_desc = sorted(general.entries, key=lambda w: (-general.arousal(w), w))
    by_asc = sorted(general.entries, key=lambda w: (general.arousal(w), w))
    high = _scan_pole(by_desc, vocab, cfg, "high")
    low = _scan_pole(by_asc, vocab, cfg, "low")
    overlap = {s.word for s in high} & {s.word for s in low}
    if overlap:
        raise SeedSelectionError(
            f"words qualify for both poles: {sorted(overlap)}"
        )
    seeds = SeedSet()
    for seed in high + low:
        seeds.add(seed)
    return seeds


def _scan_pole(
    ordered_words: list[str], vocab: Vocabulary, cfg: SeedConfig, pole: str
) -> list[Seed]:
    tier1: list[Seed] = []
    tier2: list[Seed] = []
    for word in ordered_words:
        freq = vocab.freq(word)
        if len(tier1) < cfg.n1:
            if freq > cfg.f1:
                tier1.append(Seed(word, pole, "general-lexicon", freq))
        elif len(tier2) < cfg.n2:
            if freq > cfg.f2:
                tier2.append(Seed(word, pole, "general-lexicon", freq))
        else:
            break
    if len(tier1) < cfg.n1 or len(tier2) < cfg.n2:
        raise SeedSelectionError(
            f"{pole} pole short of seeds: tier1 {len(tier1)}/{cfg.n1} "
            f"(freq > {cfg.f1}), tier2 {len(tier2)}/{cfg.n2} (freq > {cfg.f2})"
        )
    return tier1 + tier2


def load_seed_list(path: str | Path, vocab: Vocabulary) -> list[Seed]:
    """Extra seeds from a ``word,pole,source`` file; frequency from the corpus."""
    seeds = []
    path = Path(path)
    with path.open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 3 or parts[1] not in ("high", "low") \
                    or parts[2] not in SEED_SOURCES:
                logger.warning("%s:%d: bad seed row, skipped", path, lineno)
                continue
            word = parts[0].lower()
            seeds.append(Seed(word, parts[1], parts[2], vocab.freq(word)))
    return seeds


# ---------------------------------------------------------------------------
# candidate expansion


@dataclass
class Provenance:
    kind: str  # "seed" | "wordnet" | "embedding"
    seed: Optional[str] = None
    similarity: Optional[float] = None

    def render(self) -> str:
        if self.kind == "seed":
            return "seed"
        if self.kind == "wordnet":
            return f"wordnet:{self.seed}"
        return f"embedding:{self.seed}:{self.similarity:.4f}"

    @classmethod
    def parse(cls, text: str) -> "Provenance":
        parts = text.split(":")
        if parts[0] == "seed" and len(parts) == 1:
            return cls("seed")
        if parts[0] == "wordnet" and len(parts) == 2:
            return cls("wordnet", seed=parts[1])
        if parts[0] == "embedding" and len(parts) == 3:
            return cls("embedding", seed=parts[1], similarity=float(parts[2]))
        raise ValueError(f"bad provenance: {text!r}")


@dataclass
class Candidate:
    word: str
    provenance: Provenance
    status: str = "pending"  # pending | accepted | rejected


class CandidateSet:
    def __init__(self):
        self._entries: dict[str, Candidate] = {}

    @classmethod
    def from_seeds(cls, seeds: SeedSet) -> "CandidateSet":
        candidates = cls()
        for seed in seeds:
            candidates.add(Candidate(seed.word, Provenance("seed")))
        return candidates

    def add(self, candidate: Candidate) -> bool:
        """False when the word is already a candidate (first provenance kept)."""
        if candidate.word in self._entries:
            return False
        if candidate.status not in ("pending", "accepted", "rejected"):
            raise ValueError(f"bad status {candidate.status!r}")
        self._entries[candidate.word] = candidate
        return True

    def __iter__(self):
        return iter(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, word: str) -> bool:
        return word in self._entries

    def get(self, word: str) -> Candidate:
        return self._entries[word]

    def with_status(self, status: str) -> list[Candidate]:
        return [c for c in self._entries.values() if c.status == status]

    def accepted_words(self) -> list[str]:
        return [c.word for c in self.with_status("accepted")]

    def provenance_map(self) -> dict[str, str]:
        return {c.word: c.provenance.render() for c in self._entries.values()}

    def save(self, path: str | Path) -> None:
        with Path(path).open("w", encoding="utf-8") as out:
            out.write("word,provenance,status\n")
            for cand in self._entries.values():
                out.write(f"{cand.word},{cand.provenance.render()},{cand.status}\n")

    @classmethod
    def load(cls, path: str | Path) -> "CandidateSet":
        candidates = cls()
        with Path(path).open("r", encoding="utf-8") as handle:
            header = handle.readline().strip()
            if header != "word,provenance,status":
                raise LexiconFormatError(f"{path}: unexpected candidate header")
            for lineno, line in enumerate(handle, 2):
                parts = line.strip().split(",")
                if len(parts) != 3:
                    raise LexiconFormatError(f"{path}:{lineno}: bad candidate row")
                candidates.add(Candidate(parts[0], Provenance.parse(parts[1]), parts[2]))
        return candidates


def expand_wordnet(
    candidates: CandidateSet, seeds: SeedSet, db: SynsetDb, vocab: Vocabulary
) -> int:
    """Add in-vocabulary synonyms of every seed as pending candidates.

    A synonym reachable from several seeds keeps its first provenance.
    Returns the number of candidates added.
    """
    added = 0
    for seed in seeds:
        for syn in sorted(synonyms(db, seed.word)):
            if syn not in vocab:
                continue
            if candidates.add(Candidate(syn, Provenance("wordnet", seed=seed.word))):
                added += 1
    return added


def expand_embedding(
    candidates: CandidateSet,
    seeds: SeedSet,
    source: Union[EmbeddingModel, WordVectors],
    k: int = 10,
) -> int:
    """Add the k nearest embedding neighbors of every seed as pending
    candidates.

    A neighbor shared by several seeds keeps the provenance with the
    higher similarity. Out-of-vocabulary seeds are skipped with a warning.
    Returns the number of candidates added.
    """
    best: dict[str, Provenance] = {}
    for seed in seeds:
        if seed.word not in source:
            logger.warning("seed %r not in the embedding vocabulary, skipped", seed.word)
            continue
        for neighbor, sim in nearest_neighbors(source, seed.word, k):
            if neighbor in candidates:
                continue
            prov = best.get(neighbor)
            if prov is None or sim > prov.similarity:
                best[neighbor] = Provenance("embedding", seed=seed.word, similarity=sim)
    added = 0
    for word, prov in best.items():
        if candidates.add(Candidate(word, prov)):
            added += 1
    return added


def apply_review(candidates: CandidateSet, decisions_path: str | Path) -> tuple[int, int]:
    """Apply an accept/reject decisions file; unknown words only warn.

    Returns (accepted, rejected) counts applied.
    """
    n_accept = n_reject = 0
    path = Path(decisions_path)
    with path.open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 2 or parts[1] not in ("accept", "reject"):
                logger.warning("%s:%d: bad decision row, skipped", path, lineno)
                continue
            word = parts[0].lower()
            if word not in candidates:
                logger.warning("%s:%d: decision for unknown word %r", path, lineno, word)
                continue
            candidate = candidates.get(word)
            candidate.status = "accepted" if parts[1] == "accept" else "rejected"
            if parts[1] == "accept":
                n_accept += 1
            else:
                n_reject += 1
    return n_accept, n_reject


# ---------------------------------------------------------------------------
# rating sheets


def generate_sheet(
    path: str | Path,
    words: Sequence[str],
    vocab: Vocabulary,
    source: Union[EmbeddingModel, WordVectors, None],
    k: int = 10,
    shuffle_seed: Optional[int] = None,
) -> None:
    """Write the rating sheet for the given candidate words.

    One row per word with an empty rating cell, the corpus frequency, and
    the k nearest embedding neighbors rendered ``word:sim`` (two decimals)
    joined by ``;``. Rows are alphabetical unless shuffle_seed is given.
    """
    missing = [w for w in words if w not in vocab]
    if missing:
        raise ValueError(f"words not in vocabulary: {sorted(missing)[:10]}")
    ordered = sorted(words)
    if shuffle_seed is not None:
        rng = np.random.default_rng(shuffle_seed)
        ordered = [ordered[i] for i in rng.permutation(len(ordered))]
    with Path(path).open("w", encoding="utf-8") as out:
        for line in SHEET_INSTRUCTIONS.splitlines():
            out.write(f"# {line}\n")
        out.write(SHEET_HEADER + "\n")
        for word in ordered:
            if source is not None and word in source:
                neighbors = nearest_neighbors(source, word, k)
                cell = ";".join(f"{w}:{sim:.2f}" for w, sim in neighbors)
            else:
                logger.warning("word %r missing from the embedding; empty neighbor cell", word)
                cell = ""
            out.write(f"{word},,{vocab.freq(word)},{cell}\n")


@dataclass
class RatingRecord:
    word: str
    rater: str
    score: int

    def __post_init__(self):
        if not 1 <= self.score <= 9:
            raise ValueError(f"score {self.score} out of 1..9 for {self.word!r}")


@dataclass
class IngestReport:
    n_records: int = 0
    n_skipped: int = 0
    errors: list[str] = dataclass_field(default_factory=list)


def ingest_ratings(
    sheet_paths: Sequence[str | Path],
    rater_labels: Optional[Sequence[str]] = None,
) -> tuple[list[RatingRecord], IngestReport]:
    """Read filled rating sheets, one per rater.

    Empty rating cells are skipped (counted); non-integer or out-of-range
    cells are collected as row errors. A word duplicated within one file
    is fatal for that file.
    """
    if not sheet_paths:
        raise ValueError("need at least one rating sheet")
    if rater_labels is None:
        rater_labels = [Path(p).stem for p in sheet_paths]
    if len(rater_labels) != len(sheet_paths):
        raise ValueError("one rater label per sheet required")
    records: list[RatingRecord] = []
    report = IngestReport()
    for label, path in zip(rater_labels, sheet_paths):
        path = Path(path)
        seen: set[str] = set()
        with path.open("r", encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, 1):
                line = line.rstrip("\n")
                if not line or line.startswith("#") or line == SHEET_HEADER:
                    continue
                parts = line.split(",")
                if len(parts) < 2:
                    report.errors.append(f"{path}:{lineno}: too few columns")
                    continue
                word = parts[0].strip().lower()
                if word in seen:
                    raise LexiconFormatError(
                        f"{path}:{lineno}: word {word!r} appears twice in one sheet"
                    )
                seen.add(word)
                cell = parts[1].strip()
                if not cell:
                    report.n_skipped += 1
                    continue
                try:
                    score = int(cell)
                except ValueError:
                    report.errors.append(f"{path}:{lineno}: non-integer rating {cell!r}")
                    continue
                if not 1 <= score <= 9:
                    report.errors.append(f"{path}:{lineno}: rating {score} out of 1..9")
                    continue
                records.append(RatingRecord(word, label, score))
                report.n_records += 1
    return records, report


def save_rating_records(records: Iterable[RatingRecord], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as out:
        out.write("word,rater,score\n")
        for record in records:
            out.write(f"{record.word},{record.rater},{record.score}\n")


def load_rating_records(path: str | Path) -> list[RatingRecord]:
    records = []
    path = Path(path)
    with path.open("r", encoding="utf-8") as handle:
        header = handle.readline().strip()
        if header != "word,rater,score":
            raise LexiconFormatError(f"{path}:1: unexpected ratings header")
        for lineno, line in enumerate(handle, 2):
            parts = line.strip().split(",")
            if len(parts) != 3:
                raise LexiconFormatError(f"{path}:{lineno}: bad rating row")
            try:
                records.append(RatingRecord(parts[0], parts[1], int(parts[2])))
            except ValueError as exc:
                raise LexiconFormatError(f"{path}:{lineno}: {exc}") from None
    return records


# ---------------------------------------------------------------------------
# the bootstrapped arousal lexicon


@dataclass
class SeaEntry:
    arousal: float
    scores: list[tuple[str, int]]  # (rater, score), rater order fixed
    provenance: str = ""


class SeaLexicon:
    """The bootstrapped arousal lexicon: per-word rater scores and means."""

    def __init__(self, entries: dict[str, SeaEntry]):
        self.entries = entries

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SeaLexicon):
            return NotImplemented
        if set(self.entries) != set(other.entries):
            return False
        for word, entry in self.entries.items():
            theirs = other.entries[word]
            if (
                abs(entry.arousal - theirs.arousal) > 1e-9
                or [s for _, s in entry.scores] != [s for _, s in theirs.scores]
                or entry.provenance != theirs.provenance
            ):
                return False
        return True

    @property
    def mu(self) -> float:
        """Mean arousal over all lexicon words, recomputed on demand."""
        if not self.entries:
            raise ValueError("empty lexicon has no mean")
        return statistics.fmean(e.arousal for e in self.entries.values())

    def arousal_map(self) -> dict[str, float]:
        return {w: e.arousal for w, e in self.entries.items()}

    def save(self, path: str | Path) -> None:
        raters = sorted({r for e in self.entries.values() for r, _ in e.scores})
        if len(raters) > 2:
            raise LexiconFormatError(
                f"lexicon file format holds at most 2 raters, got {len(raters)}"
            )
        with Path(path).open("w", encoding="utf-8") as out:
            out.write("word,arousal,r1,r2,source\n")
            for word in sorted(self.entries):
                entry = self.entries[word]
                by_rater = dict((r, s) for r, s in entry.scores)
                cells = [
                    str(by_rater[r]) if r in by_rater else "" for r in raters
                ]
                cells += [""] * (2 - len(cells))
                out.write(
                    f"{word},{entry.arousal:.4f},{cells[0]},{cells[1]},{entry.provenance}\n"
                )

    @classmethod
    def load(cls, path: str | Path) -> "SeaLexicon":
        path = Path(path)
        entries: dict[str, SeaEntry] = {}
        with path.open("r", encoding="utf-8") as handle:
            header = handle.readline().strip()
            if header != "word,arousal,r1,r2,source":
                raise LexiconFormatError(f"{path}:1: unexpected lexicon header")
            for lineno, line in enumerate(handle, 2):
                parts = line.rstrip("\n").split(",")
                if len(parts) != 5:
                    raise LexiconFormatError(f"{path}:{lineno}: expected 5 columns")
                word, arousal_text, r1, r2, provenance = parts
                try:
                    arousal = float(arousal_text)
                except ValueError:
                    raise LexiconFormatError(
                        f"{path}:{lineno}: non-numeric arousal"
                    ) from None
                scores: list[tuple[str, int]] = []
                for rater, cell in (("r1", r1), ("r2", r2)):
                    if cell == "":
                        continue
                    try:
                        score = int(cell)
                    except ValueError:
                        raise LexiconFormatError(
                            f"{path}:{lineno}: non-integer score {cell!r}"
                        ) from None
                    if not 1 <= score <= 9:
                        raise LexiconFormatError(
                            f"{path}:{lineno}: score {score} out of 1..9"
                        )
                    scores.append((rater, score))
                if not 1.0 <= arousal <= 9.0:
                    raise LexiconFormatError(
                        f"{path}:{lineno}: arousal {arousal} out of [1,9]"
                    )
                if scores and abs(arousal - statistics.fmean(s for _, s in scores)) > 5e-4:
                    raise LexiconFormatError(
                        f"{path}:{lineno}: arousal does not match the rater mean"
                    )
                if word in entries:
                    raise LexiconFormatError(f"{path}:{lineno}: duplicate word {word!r}")
                entries[word] = SeaEntry(arousal, scores, provenance)
        return cls(entries)


def aggregate_ratings(
    records: Iterable[RatingRecord],
    provenance: Optional[dict[str, str]] = None,
) -> SeaLexicon:
    """Word arousal = arithmetic mean of its rater scores."""
    by_word: dict[str, list[tuple[str, int]]] = {}
    for record in records:
        by_word.setdefault(record.word, []).append((record.rater, record.score))
    if not by_word:
        raise ValueError("no rating records to aggregate")
    entries = {}
    for word, scores in by_word.items():
        scores.sort(key=lambda rs: rs[0])
        entries[word] = SeaEntry(
            arousal=statistics.fmean(s for _, s in scores),
            scores=scores,
            provenance=(provenance or {}).get(word, ""),
        )
    return SeaLexicon(entries)


def build_lexicon(lexicon: SeaLexicon, path: str | Path) -> None:
    lexicon.save(path)


def load_lexicon(path: str | Path) -> SeaLexicon:
    return SeaLexicon.load(path)


# ---------------------------------------------------------------------------
# rater agreement


@dataclass
class AgreementReport:
    n_words: int
    raters: tuple[str, str]
    means: tuple[float, float]
    sds: tuple[float, float]
    pearson: Optional[float]  # None when degenerate (n < 3 or zero variance)
    pearson_p: Optional[float]
    kappa: float
    kappa_weighting: str
    pct_exact: float
    pct_within_one: float
    pct_opposite: float

    def lines(self) -> list[str]:
        r1, r2 = self.raters
        if self.pearson is None:
            pearson_line = "correlation (pearson): n/a (degenerate input)"
        else:
            pearson_line = (
                f"correlation (pearson): {self.pearson:.2f} "
                f"(p-value {self.pearson_p:.3e})"
            )
        return [
            f"words rated by both: {self.n_words}",
            f"mean: {self.means[0]:.2f} ({r1}), {self.means[1]:.2f} ({r2})",
            f"std deviation: {self.sds[0]:.2f} ({r1}), {self.sds[1]:.2f} ({r2})",
            pearson_line,
            f"kappa (weighted, {self.kappa_weighting}): {self.kappa:.2f}",
            f"exact agreement: {self.pct_exact:.0f}%",
            f"exact or off-by-one agreement: {self.pct_within_one:.0f}%",
            f"opposite ratings (one >5, other <5): {self.pct_opposite:.0f}%",
        ]


def rater_agreement(
    records: Iterable[RatingRecord], kappa_weighting: str = "linear"
) -> AgreementReport:
    """Agreement statistics for exactly two raters over the same word set."""
    by_rater: dict[str, dict[str, int]] = {}
    for record in records:
        by_rater.setdefault(record.rater, {})[record.word] = record.score
    if len(by_rater) != 2:
        raise ValueError(f"need exactly 2 raters, got {len(by_rater)}")
    (r1, scores1), (r2, scores2) = sorted(by_rater.items())
    only1 = sorted(set(scores1) - set(scores2))
    only2 = sorted(set(scores2) - set(scores1))
    if only1 or only2:
        raise ValueError(
            f"rater word sets differ: only {r1}: {only1[:10]}, only {r2}: {only2[:10]}"
        )
    words = sorted(scores1)
    x = np.array([scores1[w] for w in words], dtype=np.float64)
    y = np.array([scores2[w] for w in words], dtype=np.float64)
    n = len(words)
    try:
        r, p = pearson_r(x, y)
    except ValueError:
        r = p = None
    kappa = weighted_kappa(x.astype(int), y.astype(int), weighting=kappa_weighting)
    exact = float(np.mean(x == y))
    within_one = float(np.mean(np.abs(x - y) <= 1))
    opposite = float(np.mean(((x > 5) & (y < 5)) | ((x < 5) & (y > 5))))
    return AgreementReport(
        n_words=n,
        raters=(r1, r2),
        means=(float(x.mean()), float(y.mean())),
        sds=(float(x.std(ddof=1)), float(y.std(ddof=1))),
        pearson=r,
        pearson_p=p,
        kappa=kappa,
        kappa_weighting=kappa_weighting,
        pct_exact=100.0 * exact,
        pct_within_one=100.0 * within_one,
        pct_opposite=100.0 * opposite,
    )
