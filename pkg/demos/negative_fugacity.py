"""Where the single-vertex inequality stops holding once activities turn negative.

Run with ``python3 demos/negative_fugacity.py``.
"""

# %% setup
from itertools import combinations_with_replacement

import numpy as np

from afmlab import bounds

# %% scan every neighbour-degree pattern for delta = 2 and 3
for delta in (2, 3):
    for ds in combinations_with_replacement(range(1, delta + 1), delta):
        lam = bounds.negative_fugacity_probe(delta, ds)
        if lam is None:
            print(f"delta {delta}, ds {ds}: no violation above -0.5")
        else:
            value, noise = bounds.negative_fugacity_expression(delta, ds, lam)
            print(f"delta {delta}, ds {ds}: first violation at {lam:+.4f} (value {value:.3e}, noise {noise:.1e})")

# %% with every neighbour at full degree the expression is the zero polynomial
for lam in np.linspace(-0.3, 0.3, 7):
    value, _ = bounds.negative_fugacity_expression(2, (2, 2), float(lam))
    print(f"ds (2, 2), lam {lam:+.2f}: {value:+.1e}")
