"""Exact partition functions: multivariate independence polynomial and relatives.

Every evaluator is generic over the scalar type of its activities: pass
``int``/``Fraction`` values for bit-exact results or ``float`` for speed.
Negative activities are accepted here (polynomial semantics); the bound
comparisons in :mod:`afmlab.bounds` and :mod:`afmlab.verify` reject them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

from .errors import InvalidParameter, ResourceExhausted, TooLarge
from .graph import (
    SimpleGraph,
    bits,
    cartesian_with_clique,
    component_masks,
    connected_components,
    enumerate_independent_sets,
    induced_subgraph,
    is_path_or_cycle,
    popcount,
)
from .spectral import WeightedModel, hom_clique, walk_homomorphisms

MEMO_CAPACITY = 1 << 26
HOM_BRUTE_LIMIT = 10**9
HOM_TENSOR_LIMIT = 1 << 26
TUPLE_ENUMERATION_LIMIT = 16


def is_exact(x) -> bool:
    return isinstance(x, Rational)


def exact_div(num, den):
    """Divide, staying in ``Fraction`` when both operands are rational."""
    if is_exact(num) and is_exact(den):
        return Fraction(num) / Fraction(den)
    return num / den


def log_scalar(x) -> float:
    """Natural log of a positive scalar; rationals are split so huge values do not overflow."""
    if isinstance(x, Fraction):
        if x <= 0:
            raise InvalidParameter("log of a non-positive value")
        return math.log(x.numerator) - math.log(x.denominator)
    return math.log(x)


def _check_length(g: SimpleGraph, acts: Sequence, name: str = "activities") -> list:
    acts = list(acts)
    if len(acts) != g.vertex_count:
        raise InvalidParameter(f"{name} has length {len(acts)}, graph has {g.vertex_count} vertices")
    return acts


class IndependenceEvaluator:
    """Vertex-deletion recurrence for Z on induced subgraphs, memoised on vertex masks.

    Components are factored before branching, and the branch vertex is the one of
    maximum degree in the current subgraph (lowest index on ties).
    """

    def __init__(self, g: SimpleGraph, acts: Sequence, capacity: int = MEMO_CAPACITY):
        self.graph = g
        self.acts = _check_length(g, acts)
        self.adj = g.adjacency
        # zero-activity vertices never contribute and are dropped up front
        self.support = sum(1 << v for v, a in enumerate(self.acts) if a != 0)
        self.capacity = capacity
        self.memo: dict[int, object] = {0: 1}

    def z(self, mask: int | None = None):
        if mask is None:
            mask = self.graph.full_mask
        return self._z(mask & self.support)

    def _z(self, mask: int):
        cached = self.memo.get(mask)
        if cached is not None:
            return cached
        if mask & (mask - 1) == 0:
            value = 1 + self.acts[mask.bit_length() - 1]
        else:
            comps = component_masks(self.adj, mask)
            if len(comps) > 1:
                value = 1
                for c in comps:
                    value = value * self._z(c)
            else:
                adj = self.adj
                pivot, best = -1, -1
                for v in bits(mask):
                    d = popcount(adj[v] & mask)
                    if d > best:
                        pivot, best = v, d
                bit = 1 << pivot
                value = self._z(mask & ~bit) + self.acts[pivot] * self._z(mask & ~(bit | adj[pivot]))
        if len(self.memo) >= self.capacity:
            raise ResourceExhausted(f"recurrence memo exceeded {self.capacity} entries")
        self.memo[mask] = value
        return value


def z_recurrence(g: SimpleGraph, acts: Sequence, capacity: int = MEMO_CAPACITY):
    """Z_G(acts) by the vertex-deletion recurrence."""
    return IndependenceEvaluator(g, acts, capacity).z()


def z_bruteforce(g: SimpleGraph, acts: Sequence):
    """Z_G(acts) as the defining sum over all independent sets (n <= 24)."""
    acts = _check_length(g, acts)
    total = 0
    for ind in enumerate_independent_sets(g):
        term = 1
        for v in bits(ind):
            term = term * acts[v]
        total = total + term
    return total


def _check_nonnegative(*values) -> None:
    for x in values:
        if x < 0:
            raise InvalidParameter(f"expected a nonnegative value, got {x}")


def z_alpha(g: SimpleGraph, lam, alpha):
    """Two-spin partition function sum_I lam^|I| alpha^e(I, complement)."""
    _check_nonnegative(lam, alpha)
    return z_recurrence(g, [lam * alpha**d for d in g.degree_sequence])


def z_alpha_bruteforce(g: SimpleGraph, lam, alpha):
    """Same quantity, counting crossing edges of each independent set explicitly."""
    _check_nonnegative(lam, alpha)
    total = 0
    for ind in enumerate_independent_sets(g):
        crossing = sum(1 for u, v in g.edges() if (ind >> u & 1) != (ind >> v & 1))
        total = total + lam ** popcount(ind) * alpha**crossing
    return total


def stack_rows(g: SimpleGraph, rows: Sequence[Sequence]) -> list:
    """Flatten a q x n activity matrix into G □ K_q vertex order (colour-major)."""
    flat = []
    for i, row in enumerate(rows):
        flat.extend(_check_length(g, row, f"activity row {i}"))
    return flat


def zq(g: SimpleGraph, rows: Sequence[Sequence]):
    """Z^(q)_G over q-tuples of pairwise disjoint independent sets, one activity row per colour.

    Evaluated as the independence polynomial of G □ K_q with stacked activities.
    """
    q = len(rows)
    if q < 1:
        raise InvalidParameter("need at least one activity row")
    if g.vertex_count == 0:
        return 1
    return z_recurrence(cartesian_with_clique(g, q), stack_rows(g, rows))


def z2(g: SimpleGraph, lam: Sequence, mu: Sequence):
    """Z^(2)_G(lam, mu): ordered pairs of disjoint independent sets."""
    return zq(g, [lam, mu])


def zq_bruteforce(g: SimpleGraph, rows: Sequence[Sequence]):
    """Direct enumeration of q-tuples of disjoint independent sets (n <= 16)."""
    if g.vertex_count > TUPLE_ENUMERATION_LIMIT:
        raise TooLarge(f"tuple enumeration limited to {TUPLE_ENUMERATION_LIMIT} vertices")
    rows = [_check_length(g, r, f"activity row {i}") for i, r in enumerate(rows)]
    sets = list(enumerate_independent_sets(g))

    def rec(colour: int, used: int):
        if colour == len(rows):
            return 1
        row = rows[colour]
        total = 0
        for ind in sets:
            if ind & used:
                continue
            w = 1
            for v in bits(ind):
                w = w * row[v]
            if w != 0:
                total = total + w * rec(colour + 1, used | ind)
        return total

    return rec(0, 0)


def z2_bruteforce(g: SimpleGraph, lam: Sequence, mu: Sequence):
    return zq_bruteforce(g, [lam, mu])


def _elimination_order(adj: Sequence[int], verts: list[int]) -> list[int]:
    """Greedy order keeping the set of open (partially summed) vertices small."""
    remaining = set(verts)
    done = 0
    order: list[int] = []
    while remaining:
        best, best_key = None, None
        for v in sorted(remaining):
            after = done | 1 << v
            open_after = sum(1 for u in bits(after) if adj[u] & ~after & _mask(remaining))
            key = (open_after, -popcount(adj[v] & done), v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        order.append(best)
        remaining.discard(best)
        done |= 1 << best
    return order


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _hom_component(adj: Sequence[int], verts: list[int], weights: np.ndarray):
    m = weights.shape[0]
    order = _elimination_order(adj, verts)
    todo = _mask(verts)
    done = 0
    tensor = np.ones((), dtype=weights.dtype)
    axes: list[int] = []
    for v in order:
        if m ** (len(axes) + 1) > HOM_TENSOR_LIMIT:
            raise TooLarge("homomorphism contraction exceeds the tensor budget")
        tensor = tensor[..., None] * np.ones(m, dtype=weights.dtype)
        for i, u in enumerate(axes):
            if adj[v] >> u & 1:
                shape = [1] * (len(axes) + 1)
                shape[i] = m
                shape[-1] = m
                tensor = tensor * weights.reshape(shape)
        axes.append(v)
        done |= 1 << v
        for i in range(len(axes) - 1, -1, -1):
            if not adj[axes[i]] & todo & ~done:
                tensor = np.asarray(tensor.sum(axis=i), dtype=weights.dtype)
                del axes[i]
    return tensor.item()


def hom_count(g: SimpleGraph, h: WeightedModel):
    """Weighted homomorphism count hom(G, H).

    Factored over components: paths and cycles use walk counts, cliques the
    multiset formula, anything else an exact tensor contraction over vertex
    states.  Exact weights (int/Fraction) give exact results.
    """
    total = 1
    for comp in connected_components(g):
        sub = induced_subgraph(g, comp)
        kind = is_path_or_cycle(sub)
        if sub.vertex_count == 1:
            value = h.q
        elif kind is not None:
            value = walk_homomorphisms(kind, sub.edge_count, h)
        elif sub.is_clique():
            value = hom_clique(sub.vertex_count, h)
        else:
            if h.q ** sub.vertex_count > HOM_BRUTE_LIMIT:
                raise TooLarge(f"q^n = {h.q}^{sub.vertex_count} exceeds {HOM_BRUTE_LIMIT}")
            value = _hom_component(sub.adjacency, list(range(sub.vertex_count)), h.array())
            value = value if h.exact else float(value)
        total = total * value
    return total


@dataclass(frozen=True)
class OccupancyProfile:
    marginals: tuple
    occupancy_fraction: object
    t: object


def vertex_marginals(g: SimpleGraph, acts: Sequence, t=1) -> OccupancyProfile:
    """Occupation probabilities p_v = lam_v Z_{G - N[v]} / Z_G at activities t * acts."""
    acts = [t * a for a in _check_length(g, acts)]
    ev = IndependenceEvaluator(g, acts)
    z = ev.z()
    full = g.full_mask
    marg = tuple(
        exact_div(acts[v] * ev.z(full & ~(1 << v | g.adjacency[v])), z) if acts[v] != 0 else 0
        for v in range(g.vertex_count)
    )
    n = g.vertex_count
    frac = exact_div(sum(marg), n) if n else 0
    return OccupancyProfile(marg, frac, t)


def occupancy_fraction(g: SimpleGraph, t, acts: Sequence):
    """Expected fraction of occupied vertices at activities t * acts."""
    _check_nonnegative(t, *acts)
    return vertex_marginals(g, acts, t).occupancy_fraction
