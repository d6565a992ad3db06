"""Spectra of weighted models and the clique bound for homomorphism counts.

Run with ``python3 demos/antiferromagnetic_models.py``.
"""

# %% setup
import math

import numpy as np

from afmlab import verify
from afmlab.graph import make_named
from afmlab.partition import hom_count
from afmlab.spectral import WeightedModel, blow_up_hardcore, eigenvalues, is_antiferromagnetic, looped_clique

# %% a triangle and a triangle with one loop both have a single positive eigenvalue
k3 = WeightedModel.from_matrix(1 - np.eye(3))
for name, h in (("K3", k3), ("K3 looped", looped_clique(2))):
    afm, spectrum = is_antiferromagnetic(h)
    print(f"{name}: eigenvalues {np.round(spectrum.eigenvalues, 6)}, antiferromagnetic = {afm}")

# %% proper colourings of a 5-cycle: 30 against 6^(5/3)
rep = verify.check_deg2_conjecture("cycle", 5, k3)
print(f"C5 -> K3: {hom_count(make_named('cycle', 5), k3)} vs {math.exp(rep.rhs_log):.4f}")

# %% cycles and paths up to length 12 for a looped blow-up
h = blow_up_hardcore(2, 3)
print("blow-up spectrum:", np.round(eigenvalues(h).eigenvalues, 6))
for kind in ("path_edges", "cycle"):
    slacks = [verify.check_deg2_conjecture(kind, ell, h).slack for ell in range(3, 13)]
    print(f"{kind}: min slack {min(slacks):.4f}")

# %% a short randomized search over small graphs and models
report = verify.explore_conjecture(500, seed=7, workers=1)
print(f"explorer: {report.trials} trials, min slack {report.min_slack:.3e}, samplers {report.samplers}")
for w in report.witnesses[:3]:
    print(f"  trial {w.trial_index}: n = {w.n}, {len(w.graph)} edges, slack {w.slack:.3e}")
