"""Simple graphs on at most 64 vertices stored as adjacency bitsets.

A vertex subset is an ``int`` whose bit ``v`` is set when ``v`` belongs to
it; the same masks identify induced subgraphs throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateEdge,
    InvalidEdge,
    InvalidParameter,
    TooLarge,
    VertexOutOfRange,
)

MAX_VERTICES = 64
ENUMERATION_LIMIT = 24


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class SimpleGraph:
    """Immutable simple graph; ``adjacency[v]`` is the neighbour bitset of v."""

    vertex_count: int
    adjacency: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.vertex_count <= MAX_VERTICES:
            raise TooLarge(f"{self.vertex_count} vertices exceeds {MAX_VERTICES}")
        if len(self.adjacency) != self.vertex_count:
            raise InvalidParameter("adjacency length does not match vertex_count")
        full = self.full_mask
        for v, nb in enumerate(self.adjacency):
            if nb & ~full:
                raise VertexOutOfRange(f"neighbour of {v} outside the vertex set")
            if nb >> v & 1:
                raise InvalidEdge(f"self-loop at {v}")
            for u in bits(nb):
                if not self.adjacency[u] >> v & 1:
                    raise InvalidParameter(f"adjacency not symmetric at ({v}, {u})")

    @property
    def full_mask(self) -> int:
        return (1 << self.vertex_count) - 1

    @cached_property
    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(popcount(nb) for nb in self.adjacency)

    @property
    def max_degree(self) -> int:
        return max(self.degree_sequence, default=0)

    @property
    def edge_count(self) -> int:
        return sum(self.degree_sequence) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.vertex_count) for v in bits(self.adjacency[u]) if u < v]

    def neighbours(self, v: int) -> int:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def is_clique(self, mask: int | None = None) -> bool:
        """True when the vertices of ``mask`` (default: all) are pairwise adjacent."""
        if mask is None:
            mask = self.full_mask
        return all((self.adjacency[v] | 1 << v) & mask == mask for v in bits(mask))

    def is_independent(self, mask: int) -> bool:
        return all(not self.adjacency[v] & mask for v in bits(mask))

    def is_regular(self) -> bool:
        return len(set(self.degree_sequence)) <= 1

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.vertex_count}, edges={self.edges()})"


def check_edge(n: int, u: int, v: int, seen: set[tuple[int, int]]) -> tuple[int, int]:
    """Validate one edge against ``n`` and previously ``seen`` edges; return it normalised."""
    if not (0 <= u < n and 0 <= v < n):
        raise VertexOutOfRange(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
    if u == v:
        raise InvalidEdge(f"self-loop ({u}, {v}) is not allowed in a simple graph")
    key = (min(u, v), max(u, v))
    if key in seen:
        raise DuplicateEdge(f"edge {key} listed twice")
    seen.add(key)
    return key


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> SimpleGraph:
    if n > MAX_VERTICES:
        raise TooLarge(f"{n} vertices exceeds {MAX_VERTICES}")
    if n < 1:
        raise InvalidParameter("a graph needs at least one vertex")
    adj = [0] * n
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        u, v = check_edge(n, int(u), int(v), seen)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return SimpleGraph(n, tuple(adj))


def empty_graph(n: int) -> SimpleGraph:
    """Edgeless graph; ``n = 0`` gives the null graph whose partition functions are 1."""
    if n < 0:
        raise InvalidParameter("negative vertex count")
    return SimpleGraph(n, (0,) * n)


def make_named(kind: str, size: int) -> SimpleGraph:
    """Build ``clique`` K_size, ``path_edges`` P_size (size edges), ``cycle`` C_size or ``empty``."""
    if kind == "clique":
        if size < 1:
            raise InvalidParameter("clique needs size >= 1")
        return from_edge_list(size, [(i, j) for i in range(size) for j in range(i + 1, size)])
    if kind == "path_edges":
        if size < 0:
            raise InvalidParameter("path needs size >= 0")
        return from_edge_list(size + 1, [(i, i + 1) for i in range(size)])
    if kind == "cycle":
        if size < 3:
            raise InvalidParameter("cycle needs size >= 3")
        return from_edge_list(size, [(i, (i + 1) % size) for i in range(size)])
    if kind == "empty":
        if size < 1:
            raise InvalidParameter("empty graph needs size >= 1")
        return empty_graph(size)
    raise InvalidParameter(f"unknown graph kind {kind!r}")


def complete_bipartite(a: int, b: int) -> SimpleGraph:
    return from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def disjoint_union(*graphs: SimpleGraph) -> SimpleGraph:
    offset = 0
    adj: list[int] = []
    for g in graphs:
        adj.extend(nb << offset for nb in g.adjacency)
        offset += g.vertex_count
    return SimpleGraph(offset, tuple(adj))


def induced_subgraph(g: SimpleGraph, keep: int) -> SimpleGraph:
    """Restrict ``g`` to the vertices of ``keep``, relabelled in ascending order."""
    if keep & ~g.full_mask:
        raise VertexOutOfRange("mask has bits beyond the vertex count")
    order = list(bits(keep))
    new_index = {v: i for i, v in enumerate(order)}
    adj = tuple(mask_of(new_index[u] for u in bits(g.adjacency[v] & keep)) for v in order)
    return SimpleGraph(len(order), adj)


def cartesian_with_clique(g: SimpleGraph, q: int) -> SimpleGraph:
    """G □ K_q with vertex (v, i) stored at index ``i * n + v``."""
    if q < 1:
        raise InvalidParameter("q must be >= 1")
    n = g.vertex_count
    if n * q > MAX_VERTICES:
        raise TooLarge(f"product has {n * q} vertices, limit {MAX_VERTICES}")
    adj = []
    for i in range(q):
        for v in range(n):
            same_layer = g.adjacency[v] << (i * n)
            fibre = sum(1 << (j * n + v) for j in range(q) if j != i)
            adj.append(same_layer | fibre)
    return SimpleGraph(n * q, tuple(adj))


def enumerate_independent_sets(g: SimpleGraph, within: int | None = None) -> Iterator[int]:
    """Yield every independent set (as a mask) of ``g``, the empty set included.

    Branches on the lowest remaining candidate, so each set is produced once.
    """
    if g.vertex_count > ENUMERATION_LIMIT:
        raise TooLarge(f"exhaustive enumeration limited to {ENUMERATION_LIMIT} vertices")
    adj = g.adjacency
    start = g.full_mask if within is None else within

    def rec(chosen: int, candidates: int) -> Iterator[int]:
        if not candidates:
            yield chosen
            return
        low = candidates & -candidates
        v = low.bit_length() - 1
        rest = candidates ^ low
        yield from rec(chosen, rest)
        yield from rec(chosen | low, rest & ~adj[v])

    yield from rec(0, start)


def component_masks(adj: Sequence[int], mask: int) -> list[int]:
    """Connected components of the subgraph induced by ``mask``, lowest vertex first."""
    comps = []
    remaining = mask
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            grown = 0
            for v in bits(frontier):
                grown |= adj[v]
            grown &= remaining & ~comp
            comp |= grown
            frontier = grown
        comps.append(comp)
        remaining &= ~comp
    return comps


def connected_components(g: SimpleGraph) -> list[int]:
    return component_masks(g.adjacency, g.full_mask)


def is_path_or_cycle(g: SimpleGraph) -> str | None:
    """Classify a connected graph as ``"path_edges"``, ``"cycle"`` or neither (None)."""
    n = g.vertex_count
    if n == 0 or len(connected_components(g)) != 1 or g.max_degree > 2:
        return None
    m = g.edge_count
    if m == n - 1:
        return "path_edges"
    if m == n and n >= 3:
        return "cycle"
    return None
