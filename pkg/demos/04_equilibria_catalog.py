"""
Cataloging equilibria with multistart Newton
============================================

Solve ``grad E = 0`` from many starting points, merge duplicates modulo
rotation, and tally the classes found.
"""

from collections import Counter

from threshsync import build_threshold, cycle, multistart_search, windmill

graphs = {
    "threshold 0101101": build_threshold("0101101"),
    "windmill W(3,3)": windmill(3, 3),
    "cycle C5": cycle(5),
}

for name, g in graphs.items():
    cat = multistart_search(g, starts=200, seed=0, graph_id=name)
    tally = Counter(e.classification.value for e in cat.equilibria)
    print(f"{name:20s} {len(cat.equilibria):3d} equilibria {dict(tally)} failures={cat.failures}")

# Only the cycle has a stable equilibrium that is not synchronous.
cat = multistart_search(cycle(5), starts=200, seed=0)
for e in cat.equilibria:
    if e.classification.value == "NonSyncSOSP":
        print("twisted state:", [round(float(x), 4) for x in e.config], "hits:", e.basin_hits)
