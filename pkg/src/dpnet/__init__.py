"""dpnet: drug co-medication networks from dispensing records.

Build treatment episodes from prescription fills, snapshot co-medication at
an index date, and analyze the resulting drug networks: topology, the four
classic centralities, Louvain communities, attribute assortativity,
network comparison and DDI intersection, plus Pajek/GEXF/JSON interchange.
"""

__version__ = "0.1.0"

from .algebra import (
    BipartiteNetwork,
    ComparisonResult,
    MatchedEdge,
    bipartite_from_edges,
    combine_intersection,
    compare,
    project,
    top_shifted,
)
from .community import CommunityPartition, louvain, modularity_q
from .errors import (
    ConvergenceError,
    DataError,
    DpnetError,
    UnknownNodeError,
    UnsupportedModeError,
)
from .formats import (
    ddi_mask,
    explorer_document,
    load_network,
    read_ddi_catalog,
    read_edge_list,
    read_names,
    read_pajek,
    write_edge_list,
    write_explorer_json,
    write_gexf,
    write_names,
    write_pajek,
    write_partition_csv,
)
from .graph import (
    EgoNetwork,
    Network,
    NodeRecord,
    atc_attributes,
    ego,
    from_edge_list,
    is_atc,
    weak_component_labels,
)
from .ingest import (
    DispensingRecord,
    EdgeListEntry,
    ExclusionList,
    ParseIssue,
    ParseResult,
    TreatmentEpisode,
    active_at,
    build_edge_list,
    build_episodes,
    fill_duration_days,
    parse_dispensing,
)
from .metrics import (
    CENTRALITY_MEASURES,
    CentralityReport,
    EdgeExtremes,
    GroupAssortativityRow,
    TopologySummary,
    attribute_assortativity,
    average_path_length,
    betweenness_centrality,
    closeness_centrality,
    compute_centralities,
    degree_assortativity,
    degree_centrality,
    density,
    density_from_counts,
    edge_extremes,
    eigenvector_centrality,
    group_assortativity_row,
    in_degree_centrality,
    out_degree_centrality,
    summarize,
)
from .report import render_table, top_nodes
