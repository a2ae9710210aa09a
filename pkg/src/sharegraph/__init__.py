"""Data-sharing graphs from request traces.

Build weighted graphs of users who requested the same items within a time
window, measure their small-world character against random-graph and
bipartite-model baselines, and test the findings against shuffled null
traces that keep activity, popularity, and timing marginals intact.
"""

__version__ = "0.1.0"

from .affiliation import (
    AffiliationPrediction,
    BipartiteAffiliation,
    build_bipartite,
    compare_window,
    gf_moments,
    predict,
    projection_derivatives,
)
from .dsg import (
    DataSharingGraph,
    WeightDistribution,
    build_dsg,
    connected_components,
    weight_distribution,
)
from .errors import (
    DisconnectedGraphError,
    EmptyTraceError,
    ShareGraphError,
    TraceParseError,
)
from .graph import Graph, gnm_random_graph
from .metrics import (
    DegreeDistribution,
    MetricsReport,
    average_path_length,
    clustering_cc1,
    clustering_cc2,
    connected_triple_count,
    degree_distribution,
    random_baselines,
    small_world_report,
    triangle_count,
)
from .shuffle import (
    NullModelComparison,
    NullModelRow,
    ShuffleMode,
    null_model_comparison,
    shuffle_trace,
)
from .trace import (
    ParseDiagnostic,
    ParseResult,
    TimeWindow,
    Trace,
    TraceRecord,
    TraceSummary,
    generate_clustered_trace,
    generate_synthetic_trace,
    load_trace,
    parse_trace,
    render_trace,
    slice_window,
    summarize,
    window_slices,
)

__all__ = [
    "__version__",
    "AffiliationPrediction",
    "BipartiteAffiliation",
    "DataSharingGraph",
    "DegreeDistribution",
    "DisconnectedGraphError",
    "EmptyTraceError",
    "Graph",
    "MetricsReport",
    "NullModelComparison",
    "NullModelRow",
    "ParseDiagnostic",
    "ParseResult",
    "ShareGraphError",
    "ShuffleMode",
    "TimeWindow",
    "Trace",
    "TraceParseError",
    "TraceRecord",
    "TraceSummary",
    "WeightDistribution",
    "average_path_length",
    "build_bipartite",
    "build_dsg",
    "clustering_cc1",
    "clustering_cc2",
    "compare_window",
    "connected_components",
    "connected_triple_count",
    "degree_distribution",
    "generate_clustered_trace",
    "generate_synthetic_trace",
    "gf_moments",
    "gnm_random_graph",
    "load_trace",
    "null_model_comparison",
    "parse_trace",
    "predict",
    "projection_derivatives",
    "random_baselines",
    "render_trace",
    "shuffle_trace",
    "slice_window",
    "small_world_report",
    "summarize",
    "triangle_count",
    "weight_distribution",
    "window_slices",
]
