"""Whisker propagation with its cut guarantees, and the scoring tools.

Core communities grow into the detached whiskers over their bridges; the
cut can only shrink, and the certificate checks that exactly.
"""

import numpy as np

from nise import (certify_propagation, conductance_coverage_auc, coverage,
                  cut, decompose, f_beta_report, from_edges, ncut,
                  propagate, size_distribution)
from nise.expansion import Community

gb = from_edges([0, 0, 1, 2, 3], [1, 2, 2, 3, 4])
d = decompose(gb)

before = Community(np.sort(d.core_vertices), 0.0, None, None)
print("core community:", before.members.tolist(),
      " cut =", cut(gb, before.members),
      " ncut =", ncut(gb, before.members))

after = propagate(gb, d, [before])[0]
print("after propagation:", after.members.tolist(),
      " cut =", cut(gb, after.members))

report = certify_propagation(gb, before, after, d)
print("certificate:", {k: report[k] for k in
                       ("cut_before", "cut_after", "links_removed",
                        "strict")})

ring = from_edges(list(range(10)), [(i + 1) % 10 for i in range(10)])
halves = [np.arange(5), np.arange(5, 10)]
print("\n10-cycle split into halves:")
print("  coverage:", coverage(halves, 10))
curve = conductance_coverage_auc(ring, halves)
print("  curve points:", [(round(c, 2), round(p, 2))
                          for c, p in curve.points])
print("  AUC:", round(curve.auc, 4), "(", curve.mode, ")")

gt = [np.array([0, 1, 2, 3, 4])]
found = [np.array([0, 1, 2, 3]), np.array([7, 8])]
rep = f_beta_report(gt, found)
print("\nground-truth match: avg F1 =", round(rep.avg_f1, 4),
      " avg F2 =", round(rep.avg_f2, 4))
print("per ground-truth community:", rep.per_ground_truth)

print("\nsize histogram:", size_distribution(halves))
