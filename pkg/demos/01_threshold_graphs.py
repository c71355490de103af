"""
Threshold graphs from binary codes
==================================

A threshold graph is grown one vertex at a time: each new vertex is either
isolated (bit 0) or dominating (bit 1). This script builds a few of them,
recovers the code from a shuffled copy and shows the block structure.
"""

import random

from threshsync import (
    Graph,
    block_decomposition,
    build_threshold,
    closed_twin_classes,
    forbidden_subgraphs,
    path,
    recognize_threshold,
    weight_representation,
)

# The sparsest and densest connected threshold graphs on 19 vertices.
for code in ["000000000000000001", "111111111111111111"]:
    g = build_threshold(code)
    print(f"{code}: n={g.n} edges={g.num_edges} density={g.density:.3f}")

# A nine-vertex example with alternating bits.
g = build_threshold("01010101")
print("edges of 01010101:", sorted(g.edges))

# Relabel the vertices at random; recognition still recovers the code.
rng = random.Random(0)
perm = list(g.vertices)
rng.shuffle(perm)
shuffled = Graph(g.n, frozenset(tuple(sorted((perm[u - 1], perm[v - 1]))) for u, v in g.edges))
print("recognized code of shuffled copy:", recognize_threshold(shuffled))

# Threshold graphs are exactly the graphs with a separating weight vector.
rep = weight_representation(g)
print("weights:", rep.weights, "threshold:", rep.threshold, "realizes:", rep.realizes(g))

# A path on four vertices is the smallest non-threshold graph.
print("forbidden subgraphs of P4:", forbidden_subgraphs(path(4)))

# Runs of equal bits give the blocks used by the synchronization argument.
for kind, verts in block_decomposition("01010101").blocks:
    print(f"  {kind}-block: {verts}")
print("closed-twin classes of 0011:", closed_twin_classes(build_threshold("0011")).classes)
