"""What each centrality measure rewards, on graphs small enough to see.

Four toy networks, four measures. Degree counts direct partners;
betweenness counts geodesics brokered; closeness rewards short distances
to everything; eigenvector rewards connections to well-connected nodes.

Run:  python demos/02_centrality_tour.py
"""

from dpnet import (
    betweenness_centrality,
    closeness_centrality,
    degree_centrality,
    eigenvector_centrality,
    ego,
    from_edge_list,
)
from dpnet.report import render_table, top_nodes


def show(title, net):
    print(f"\n== {title} ==")
    rows = []
    deg = degree_centrality(net)
    bet = betweenness_centrality(net)
    clo = closeness_centrality(net)
    eig = eigenvector_centrality(net)
    for node in net.node_ids():
        rows.append((node, deg[node], bet[node], clo[node], eig[node]))
    print(render_table(("node", "degree", "betweenness", "closeness", "eigenvector"),
                       rows))


# A star: the hub touches everything, leaves see only the hub.
star = from_edge_list([("hub", f"leaf{i}", 1.0) for i in range(1, 5)])
show("star (4 leaves)", star)

# A path: the middle node brokers every pair.
show("path A-B-C", from_edge_list([("A", "B", 1.0), ("B", "C", 1.0)]))

# Two hubs joined by a bridge: the bridge endpoints score high betweenness
# without having the highest degree.
bridge = from_edge_list(
    sorted(
        [("L-hub", f"L{i}", 1.0) for i in range(1, 4)]
        + [("R-hub", f"R{i}", 1.0) for i in range(1, 4)]
        + [("L-hub", "R-hub", 1.0)]
    )
)
show("two hubs + bridge", bridge)

# Kite-ish graph: eigenvector picks the node embedded in the dense corner,
# not the one with most neighbors.
kite = from_edge_list(sorted([
    ("A", "B", 1.0), ("A", "C", 1.0), ("B", "C", 1.0), ("A", "D", 1.0),
    ("B", "D", 1.0), ("C", "D", 1.0), ("D", "E", 1.0), ("E", "F", 1.0),
    ("E", "G", 1.0),
]))
show("dense corner + tail", kite)

print("\nTop brokers in the kite graph:")
for node, score in top_nodes(betweenness_centrality(kite), 3):
    print(f"  {node}: {score:g}")

print("\nEgo network of D (its neighborhood, with neighbor-neighbor edges):")
sub = ego(kite, "D").subgraph
print(f"  nodes: {sub.node_ids()}")
print(f"  edges: {[(a, b) for a, b, _ in sub.to_edge_list()]}")
