"""Walk through McKeithan's proofreading network from structure to dynamics.

Run with ``python3 demos/mckeithan_tour.py``.
"""

from fractions import Fraction

import numpy as np

from crnkit import (
    birch_point,
    class_from_totals,
    class_vertices,
    load,
    lyapunov_monitor,
    simulate,
    siphon_report,
    structure,
    tree_labels,
)

ONES = {"k1": 1, "k2": 1, "k3": 1, "k4": 1}

net = load("mckeithan")
rep = structure(net)
print(f"n={rep.n} complexes={rep.m} reactions={rep.r} deficiency={rep.deficiency}")
print("weakly reversible:", rep.weakly_reversible)

# the compatibility class with totals c = (1, 2) is a triangle
cc = class_from_totals(net, [1, 2])
print("class vertices:", [tuple(map(str, v)) for v in class_vertices(cc).vertices])

for i, K in enumerate(tree_labels(net).K, 1):
    print(f"K{i} = {K}")

sr = siphon_report(net)
for s in sr.relevance:
    print("siphon", [i + 1 for i in s.siphon], "->", s.status)

sol = birch_point(net, ONES, cc)
print("Birch point:", np.round(sol.x_star, 9), "after", sol.iterations, "Newton steps")

x0 = [Fraction(1, 2), Fraction(3, 2), Fraction(1, 4), Fraction(1, 4)]
trace = simulate(net, ONES, x0, t_end=50.0)
values, monotone = lyapunov_monitor(trace, sol.x_star)
print(f"simulated to t={trace.times[-1]:.3f}; distance to Birch point "
      f"{np.max(np.abs(trace.terminal - sol.x_star)):.2e}; drift {trace.max_drift:.1e}")
print("Lyapunov function non-increasing:", monotone)
