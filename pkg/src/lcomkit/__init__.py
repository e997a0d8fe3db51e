"""Chidamber-Kemerer metrics with a focus on LCOM and its refinements."""

from .errors import (
    DegenerateVariance,
    DuplicateClassName,
    EmptyInput,
    InheritanceCycle,
    LengthMismatch,
    SchemaError,
    UnknownClass,
)
from .frontend import SourceUnit, dump_model_file, load_model_file, parse_source
from .metrics import (
    MetricsRecord,
    analyze_class,
    analyze_corpus,
    chain_lcom,
    connectivity,
    coupling_metrics,
    inheritance_metrics,
    lcom2,
    lcom_ck,
    nlcom,
    size_metrics,
)
from .model import (
    AttributeModel,
    ClassModel,
    CorpusModel,
    Invocation,
    MethodModel,
    MethodPolicy,
    PairEvidence,
    build_corpus,
    counted_methods,
)
from .report import (
    DescriptiveStats,
    SplitSuggestion,
    SystemSummary,
    classify_cohesion,
    correlation,
    descriptive_stats,
    suggest_split,
    system_summary,
)

__version__ = "0.1.0"
