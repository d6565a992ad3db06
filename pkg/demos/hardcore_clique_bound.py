"""Hard-core partition functions against their clique lower bound.

Run with ``python3 demos/hardcore_clique_bound.py``.
"""

# %% setup
import math
import random

from afmlab import verify
from afmlab.graph import disjoint_union, from_edge_list, make_named
from afmlab.partition import z_recurrence

# %% a path on three vertices: Z = 5 at unit activity, the bound is 3 * 4^(1/3)
p3 = make_named("path_edges", 2)
rep = verify.check_thm_main(p3, [1, 1, 1])
print(f"P3: Z = {z_recurrence(p3, [1, 1, 1])}, bound = {math.exp(rep.rhs_log):.6f}, slack = {rep.slack:.6f}")

# %% cliques attain the bound
for d in range(1, 6):
    k = make_named("clique", d + 1)
    print(f"K{d + 1} at 0.5: slack = {verify.check_thm_main(k, [0.5] * (d + 1)).slack:+.2e}")

# %% the classifier explains equality component by component
g = disjoint_union(make_named("clique", 3), p3)
c = verify.classify_equality(g, [1, 1, 1, 0, 0, 0])
print("components:", c.components, "labels:", c.labels, "slack:", f"{c.slack:+.1e}")

# %% random graphs with random activities never go below the bound
rng = random.Random(2024)
worst = math.inf
for _ in range(300):
    n = rng.randint(1, 10)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4]
    acts = [rng.uniform(0, 10) for _ in range(n)]
    worst = min(worst, verify.check_thm_main(from_edge_list(n, edges), acts).slack)
print(f"smallest slack over 300 random instances: {worst:.3e}")

# %% the two-colour version on the same path: 17 against 7 * 13^(1/3)
rep = verify.check_thm_semiproper(p3, [1] * 3, [1] * 3)
print(f"P3 two colours: lhs = {math.exp(rep.lhs_log):.0f}, rhs = {math.exp(rep.rhs_log):.5f}")
