"""Slow reference implementations written straight from the definitions.

Nothing here imports afmlab internals beyond plain data (edge lists and
matrices), so agreement with the library is real evidence.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


def independent_sets(n, edges):
    """All independent sets as frozensets, by scanning every subset."""
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    out = []
    for mask in range(1 << n):
        s = {v for v in range(n) if mask >> v & 1}
        if all(not (adj[v] & s) for v in s):
            out.append(frozenset(s))
    return out


def z_subsets(n, edges, acts):
    total = 0
    for s in independent_sets(n, edges):
        term = 1
        for v in s:
            term *= acts[v]
        total += term
    return total


def zq_tuples(n, edges, rows):
    """Sum over q-tuples of pairwise disjoint independent sets."""
    sets = independent_sets(n, edges)
    total = 0
    for combo in itertools.product(sets, repeat=len(rows)):
        union = set()
        ok = True
        for s in combo:
            if union & s:
                ok = False
                break
            union |= s
        if not ok:
            continue
        term = 1
        for row, s in zip(rows, combo):
            for v in s:
                term *= row[v]
        total += term
    return total


def hom_maps(n, edges, weights):
    """hom(G, H) by summing over every map V(G) -> V(H)."""
    q = len(weights)
    total = 0
    for phi in itertools.product(range(q), repeat=n):
        term = 1
        for u, v in edges:
            term *= weights[phi[u]][phi[v]]
            if term == 0:
                break
        total += term
    return total


def crossing_z(n, edges, lam, alpha):
    total = 0
    for s in independent_sets(n, edges):
        crossing = sum(1 for u, v in edges if (u in s) != (v in s))
        total += lam ** len(s) * alpha**crossing
    return total


def eigvals_desc(matrix):
    return sorted(np.linalg.eigvalsh(np.asarray(matrix, dtype=float)).tolist(), reverse=True)


def grid_sup(f, lo, hi, steps=2001):
    xs = np.linspace(lo, hi, steps)
    vals = f(xs)
    i = int(np.argmax(vals))
    return float(vals[i]), float(xs[i])


def clique_z(d1, lam):
    """Z_{K_{d+1}}(lam) = 1 + (d+1) lam, from the subset oracle."""
    edges = [(i, j) for i in range(d1) for j in range(i + 1, d1)]
    return z_subsets(d1, edges, [lam] * d1)


def path_edges(length):
    return length + 1, [(i, i + 1) for i in range(length)]


def cycle_edges(length):
    return length, [(i, (i + 1) % length) for i in range(length)]


def random_edges(rng, n, p):
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]


def random_fraction(rng, max_num=20, max_den=7):
    return Fraction(rng.randint(0, max_num), rng.randint(1, max_den))


def log_frac(x):
    return math.log(x.numerator) - math.log(x.denominator)
