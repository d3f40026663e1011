"""The multilevel partitioner and the four seeding strategies.

Seeds are chosen on the biconnected core; each strategy trades seed
quality against cost differently.
"""

import numpy as np

from nise import (from_edges, hierarchical_partition, kernel_distance,
                  seeds_graclus_centers, seeds_locally_minimal,
                  seeds_random, seeds_spread_hubs)

ga = from_edges([0, 0, 1, 2, 3, 3, 4], [1, 2, 2, 3, 4, 5, 5])

print("kernel distances to the left triangle:")
c1 = np.array([0, 1, 2])
for v in range(3):
    print(f"  dist({v}, {{0,1,2}}) = {kernel_distance(ga, v, c1):+.4f}")

part = hierarchical_partition(ga, 2, rng_seed=0)
print("\n2-way partition:", part.assignment.tolist())

print("\nseeds by strategy:")
print("  graclus centers :",
      seeds_graclus_centers(ga, part).seeds.tolist(),
      "(every vertex tied for its cluster center is kept)")
print("  spread hubs k=2 :", seeds_spread_hubs(ga, 2).seeds.tolist())
print("  locally minimal :", seeds_locally_minimal(ga).seeds.tolist())
print("  random k=2      :",
      seeds_random(ga, 2, rng_seed=7).seeds.tolist())

# spread hubs marks each chosen hub's whole neighborhood, so one round on
# a star stops after the center no matter how large k is
star = from_edges([0, 0, 0, 0, 0], [1, 2, 3, 4, 5])
ss = seeds_spread_hubs(star, 3)
print("\nstar, k=3 -> seeds", ss.seeds.tolist(),
      f"(requested {ss.k_requested}, returned {ss.k_returned})")

rng = np.random.default_rng(3)
n = 200
iu, ju = np.triu_indices(n, k=1)
keep = rng.random(iu.shape[0]) < 0.04
g = from_edges(iu[keep], ju[keep], n=n)
part8 = hierarchical_partition(g, 8, rng_seed=1)
sizes = np.bincount(part8.assignment)
print(f"\nrandom graph n={n}: 8-way partition cluster sizes",
      sizes.tolist())
