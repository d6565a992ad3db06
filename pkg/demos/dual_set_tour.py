"""The concave surface behind the two-colour bound, its dual set, and the symmetric chain.

Run with ``python3 demos/dual_set_tour.py``.
"""

# %% setup
import math

import numpy as np

from afmlab import bounds

# %% xi and Psi for delta = 2
for s in (0.1, 0.5, 0.9, 1 - 1e-7):
    xi = bounds.xi_delta(2, s)
    flag = " (low confidence)" if bounds.psi_low_confidence(s) else ""
    print(f"s = {s:.7f}: xi = {xi:.9f}, Psi = {bounds.psi_delta(2, s):.9f}{flag}")

# %% Phi for equal coefficients matches Psi(s) + 2 sqrt(s) / delta
for delta in (2, 3, 4):
    a = math.sqrt(0.4)
    print(f"delta {delta}: Phi = {bounds.phi_delta(delta, a, a):.10f}, Psi form = {bounds.psi_delta(delta, 0.4) + 2 * a / delta:.10f}")

# %% membership: the all-ones plane is in, a tiny plane is not
for point in (bounds.DualPoint(3, 1, 1, 1), bounds.DualPoint(3, 1e-3, 1e-3, 1e-3)):
    m = bounds.s_membership(point)
    print(f"{point}: member = {m.member}, slack = {m.slack:.3e}")

# %% geometric means of tangent planes stay inside
rng = np.random.default_rng(1)
slacks = []
for _ in range(50):
    l1, m1, l2, m2 = rng.uniform(0, 10, size=4)
    p = bounds.tangent_plane_point(3, l1, m1).geometric_mean(bounds.tangent_plane_point(3, l2, m2))
    slacks.append(bounds.s_membership(p).slack)
print(f"50 geometric means, min slack {min(slacks):.3e}")

# %% the symmetric chain on s in (1, 3]
for d in (1, 2, 3):
    top = 1.99 if d == 1 else 3.0
    worst = min(min(bounds.symmetric_chain(d, s).slacks().values()) for s in np.linspace(1.01, top, 40))
    print(f"d = {d}: worst chain slack {worst:.3e}")
