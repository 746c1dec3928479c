"""
egobw computes ego-betweenness centrality: exact scores for every vertex,
top-k queries with bound-based pruning, maintenance under edge updates and
parallel full computation, together with reference oracles for checking.

Classes:
- `Graph`, `DynamicGraph`, `OrderedGraph`: Graph storage, mutable variant and
   degree-ordered orientation.
- `ConnectorMap`: Per-vertex record of adjacent and connected neighbor pairs.
- `TopKResult`: The answer of `base_search` and `opt_search`.
- `ScoreMaintainer`, `LazyIndex`: Local and lazy maintenance under updates.
- `DataLoader`, `EdgeListLoader`, `UpdateStreamLoader`, `SettingsLoader`: These
   classes are responsible for loading data from files.
- `ReportRenderer`: Renders the text reports of the CLI.

The `egobw` command in `cli.py` exposes all of the above.
"""

from .graph import (
    Graph,
    DynamicGraph,
    OrderedGraph,
    orient,
    common_neighbors,
    serialize_edge_list,
)
from .data_loader import (
    DataLoader,
    EdgeListLoader,
    UpdateStreamLoader,
    SettingsLoader,
    load_edge_list,
)
from .egoscore import (
    ConnectorMap,
    MapState,
    static_bound,
    dynamic_bound,
    score_from_map,
    ego_bw_cal,
    triangle_pass,
    compute_all_scores,
)
from .topk import TopKResult, base_search, opt_search
from .dynamic import (
    ScoreMaintainer,
    LazyIndex,
    local_upt_smap,
    local_insert,
    local_delete,
)
from .parallel import vertex_pebw, edge_pebw
from .reference import brute_force_cb, brandes_betweenness, topk_overlap
from .report_renderer import ReportRenderer
from .cli import main
