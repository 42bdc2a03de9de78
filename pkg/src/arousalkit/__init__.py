"""Toolkit for bootstrapping and evaluating an issue-tracker arousal lexicon."""

from .corpus import (
    Field,
    Issue,
    Priority,
    TextUnit,
    Vocabulary,
    build_vocabulary,
    extract_units,
    parse_corpus,
    tokenize,
)
from .embedding import (
    CoocMatrix,
    EmbeddingConfig,
    EmbeddingModel,
    WordVectors,
    cosine_similarity,
    count_cooccurrences,
    glove_loss,
    glove_train,
    nearest_neighbors,
    word_vector,
)
from .lexicon import (
    AgreementReport,
    CandidateSet,
    GeneralLexicon,
    RatingRecord,
    SeaLexicon,
    SeedConfig,
    SeedSet,
    aggregate_ratings,
    apply_review,
    build_lexicon,
    expand_embedding,
    expand_wordnet,
    generate_sheet,
    ingest_ratings,
    load_general_lexicon,
    load_lexicon,
    rater_agreement,
    select_seeds,
)
from .scoring import ArousalScore  # noqa: F401  (re-export alias)
from .scoring import (
    MODES,
    ScoringLexicon,
    UnitScore,
    combined_score,
    score_corpus,
    score_text,
)
from .stats import cohens_d, pearson_r, pooled_t_test, weighted_kappa, welch_t_test
from .evalstats import EvalTable, evaluate_priorities, render_tables
from .wordnet import SynsetDb, load_wordnet, synonyms

__version__ = "0.1.0"
