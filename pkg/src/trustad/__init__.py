"""trustad: parse, validate, score and serve B2B trust advertisements.

The pieces compose as a pipeline: ``stad`` parses documents into graphs,
``shapes`` validates them against the vocabulary, ``profile`` extracts a
typed provider profile, ``engine`` turns profiles into weighted trust
scores, and ``store``/``service`` wrap it all in a file-backed catalog with
an HTTP API.  ``corpus`` generates deterministic synthetic documents for
testing and benchmarks.
"""

from .vocab import (
    DEFAULT_CATEGORY_RATINGS,
    Iri,
    PrefixTable,
    TrustCategory,
    default_namespace_table,
)
from .stad import (
    BlankNode,
    Literal,
    StadParseError,
    Triple,
    TrustGraph,
    canonical_triples,
    parse_document,
    serialize_graph,
)
from .shapes import Finding, ValidationReport, shape_table, validate_graph
from .profile import ExtractError, ProviderProfile, extract_profile
from .engine import (
    AnalyticsEvidence,
    TrustScoreReport,
    WeightProfile,
    aggregate_trust,
    compare,
    default_weight_profile,
    load_weight_profile,
    moscow_to_weight,
    publishable_references,
    rank,
    report_to_dict,
    score_category,
)
from .corpus import CorpusParams, SplitMix64, generate_corpus, write_corpus
from .store import CatalogStore
from .vat import MockVatVerifier, VatCheckResult

__version__ = "0.1.0"

__all__ = [
    "AnalyticsEvidence",
    "BlankNode",
    "CatalogStore",
    "CorpusParams",
    "DEFAULT_CATEGORY_RATINGS",
    "ExtractError",
    "Finding",
    "Iri",
    "Literal",
    "MockVatVerifier",
    "PrefixTable",
    "ProviderProfile",
    "SplitMix64",
    "StadParseError",
    "Triple",
    "TrustCategory",
    "TrustGraph",
    "TrustScoreReport",
    "ValidationReport",
    "VatCheckResult",
    "WeightProfile",
    "aggregate_trust",
    "canonical_triples",
    "compare",
    "default_namespace_table",
    "default_weight_profile",
    "extract_profile",
    "generate_corpus",
    "load_weight_profile",
    "moscow_to_weight",
    "parse_document",
    "publishable_references",
    "rank",
    "report_to_dict",
    "score_category",
    "serialize_graph",
    "shape_table",
    "validate_graph",
    "write_corpus",
    "__version__",
]
