"""Python access to the smartroute simulator."""

from ._core import (
    Mode,
    Path,
    RunReport,
    Scenario,
    Topology,
    availability,
    edge_betweenness,
    edge_disjoint_pair,
    generate_waxman,
    load_scenario,
    load_topology,
    mtbf_hours,
    parse_topology,
    run,
    shortest_path,
    u_sr,
)

__all__ = [
    "Mode",
    "Path",
    "RunReport",
    "Scenario",
    "Topology",
    "availability",
    "edge_betweenness",
    "edge_disjoint_pair",
    "generate_waxman",
    "load_scenario",
    "load_topology",
    "mtbf_hours",
    "parse_topology",
    "run",
    "shortest_path",
    "u_sr",
]
