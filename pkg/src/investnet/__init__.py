"""investnet: small-world network analysis for startup-investor data.

Build a role-labelled graph from two-column affiliation data, compute its
network properties (degree distribution, density, diameter, average path
length, average clustering), fit its degree tail, classify it against
seeded random-graph baselines, and compare two networks side by side.
"""

from .errors import (DegenerateBaselineError, DegenerateGraphError,
                     EmptyGraphError, EmptyLabelError, InsufficientTailError,
                     InvestnetError, MalformedRowError, MissingColumnError,
                     NoPairsError, OutOfRangeError, ParameterError,
                     SchemaError, SelfLoopError, TooManyEdgesError)
from .graph import (ComponentPartition, Graph, NodeRole, build_graph,
                    connected_components, degree, from_edge_array,
                    is_strictly_bipartite, subgraph)
from .ingest import (EdgePair, PreprocessLog, StartupRecord, drop_self_loops,
                     load_exclusions, parse_edge_list, parse_startup_table,
                     preprocess, records_to_edge_list)
from .metrics import (ClusteringPolicy, DegreeDistribution, DensityMode,
                      MetricsReport, PathScope, PathStats, PowerLawFit,
                      apsp_stats, average_clustering, compute_report, density,
                      degree_distribution, fit_power_law, local_clustering,
                      sssp_bfs, triangle_count)
from .nullmodels import (DEFAULT_APL_RATIO_MAX, GeneratorKind, GeneratorSpec,
                         RemovalStrategy, RobustnessResult, SmallWorldVerdict,
                         gen_ba, gen_er, gen_ws, generate, robustness_probe,
                         small_world_index, verdict_against_baselines)
from .reporting import (SCHEMA_VERSION, ComparisonReport, compare_reports,
                        comparison_table, comparison_to_dict,
                        oriented_edge_labels, read_report_dict,
                        report_to_dict, write_edge_list, write_json,
                        write_node_table)

__version__ = "0.1.0"
