"""Graph loading, cut metrics, and the biconnected-core decomposition.

Walks the two toy graphs used throughout the test suite: a pair of
triangles joined by a bridge, and a triangle with a two-vertex whisker.
"""

import numpy as np

from nise import (conductance, cut, decompose, from_edges, graph_stats,
                  links, ncut)

ga = from_edges([0, 0, 1, 2, 3, 3, 4], [1, 2, 2, 3, 4, 5, 5])
print("two triangles + bridge:", ga)
print("degrees:", ga.degrees.astype(int).tolist())
print("stats:", graph_stats(ga))

left = np.array([0, 1, 2])
print("\nleft triangle as a community:")
print("  links to rest :", links(ga, left, [3, 4, 5]))
print("  cut           :", cut(ga, left))
print("  ncut          :", ncut(ga, left))
print("  conductance   :", conductance(ga, left))

print("\ndecomposition of the bridge graph:")
d = decompose(ga)
print("  core vertices :", sorted(ga.external_ids[d.core_vertices].tolist()))
print("  bridges       :", d.bridges.tolist())
print("  whiskers      :", [w.tolist() for w in d.whiskers])
print("  edge classes  :", d.edge_counts)

print("\nthe core keeps its place in the parent graph:")
core = d.core
print("  core volume       :", core.volume)
print("  parent volume     :", core.total_volume)
print("  boundary weights  :", core.boundary_weight.tolist())
print("  conductance of the whole core inside the parent:",
      conductance(core, np.arange(core.n)))

gb = from_edges([0, 0, 1, 2, 3], [1, 2, 2, 3, 4])
db = decompose(gb)
print("\ntriangle + path whisker:")
print("  core:", sorted(db.core_vertices.tolist()),
      " whisker:", db.whiskers[0].tolist(),
      " bridge:", db.bridges.tolist())
