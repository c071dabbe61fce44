"""Unsupervised social network extraction from search-engine evidence."""

from .bow import BowVector, bow_from_snippets, bow_support
from .corpus import (
    CorpusIndex,
    Document,
    Query,
    QueryResult,
    Snippet,
    build_index,
    load_corpus_jsonl,
    make_snippet,
    run_query,
)
from .gateway import (
    CachedBackend,
    LiveJsonBackend,
    LiveJsonConfig,
    OfflineBackend,
    QueryCache,
    SearchBackend,
    search_cached,
)
from .graph import (
    Actor,
    EvaluationReport,
    SocialGraph,
    build_graph,
    evaluate,
    export_graph,
    graph_from_csv_edges,
)
from .methods import (
    ALL_METHODS,
    MethodMatrix,
    PairEvidence,
    RunContext,
    SimilarityMeasure,
    StrategyEvidence,
    bsm,
    busm,
    cbusm,
    count_similarity,
    dsm,
    method_matrix,
)
from .pipeline import compute_matrices, gather_run, read_actors_file, render_report
from .tokenize import TokenizerConfig, tokenize
from .urlsim import (
    UrlLayers,
    UrlSimilarity,
    layer_match,
    parse_url,
    url_pair_similarity,
    url_set_similarity,
)

__version__ = "0.1.0"
