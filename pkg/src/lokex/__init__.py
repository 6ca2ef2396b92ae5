"""Keyword extraction from a document's own word-vector statistics.

Candidate words are embedded from single-document co-occurrence statistics,
the center of the vector cloud is estimated (plain or robust), and words are
ranked by their distance from that center, optionally weighted by the index
of the first sentence in which they appear. Frequency, position and
graph-of-words baselines plus an F1@k harness round out the toolkit.
"""

from ._accel import available_backends, backend
from .baselines import (
    BASELINE_METHODS,
    DfTable,
    GraphOfWords,
    RankedWord,
    betweenness,
    build_graph,
    core_numbers,
    df_from_vocabs,
    fnw_rank,
    k_core,
    pagerank,
    position_bias,
    run_baseline,
    tfidf_rank,
)
from .center import (
    CenterEstimate,
    PcaProjection,
    concentration_step,
    covariance,
    fast_mcd,
    pca_fit,
    pca_transform,
    sample_mean,
)
from .datasets import (
    DATASETS,
    LabeledDocument,
    Split,
    gold_stems_from_phrases,
    load_collection,
    make_split,
)
from .errors import (
    DegenerateCooccurrence,
    DimensionMismatch,
    EmptyCollection,
    EmptyDocument,
    EmptyGold,
    InsufficientDocuments,
    InsufficientSamples,
    InvalidComponentCount,
    LokexError,
    NoCandidates,
)
from .evaluation import DEFAULT_KS, EvaluationReport, evaluate_corpus, match_at_k
from .scoring import (
    ScoredKeyword,
    ScoringConfig,
    distance,
    distances_from_center,
    extract_keywords,
    rank,
    score_words,
)
from .text import (
    CandidateVocab,
    Document,
    FilterLists,
    build_candidate_index,
    filter_token,
    make_document,
    read_document,
    split_sentences,
    stem,
    tokenize,
)
from .vectors import (
    CooccurrenceMatrix,
    EmbeddingMatrix,
    GloVeConfig,
    GloVeModel,
    build_cooccurrence_matrix,
    fit_glove,
    glove_objective,
    rows_as_vectors,
    train_local_glove,
)

__version__ = "0.1.0"
