"""Spin models as symmetric weight matrices, their spectra, and walk counts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

from .errors import InvalidParameter, NumericalFailure, TooLarge

MAX_SPINS = 32
JACOBI_MAX_SWEEPS = 100
JACOBI_RTOL = 1e-12
ZERO_BAND = 1e-10
CLIQUE_MULTISET_LIMIT = 10**7


@dataclass(frozen=True)
class WeightedModel:
    """Nonnegative symmetric q x q weight matrix; diagonal entries are loop weights."""

    q: int
    weights: tuple[tuple, ...]

    def __post_init__(self):
        if not 1 <= self.q <= MAX_SPINS:
            raise TooLarge(f"model size {self.q} outside [1, {MAX_SPINS}]")
        if len(self.weights) != self.q or any(len(row) != self.q for row in self.weights):
            raise InvalidParameter("weights must be a q x q matrix")
        for i in range(self.q):
            for j in range(self.q):
                w = self.weights[i][j]
                if w < 0:
                    raise InvalidParameter(f"negative weight at ({i}, {j})")
                if w != self.weights[j][i]:
                    raise InvalidParameter(f"weights not symmetric at ({i}, {j})")

    @classmethod
    def from_matrix(cls, matrix) -> "WeightedModel":
        rows = [list(r) for r in matrix]
        rows = [[x.item() if isinstance(x, np.generic) else x for x in r] for r in rows]
        return cls(len(rows), tuple(tuple(r) for r in rows))

    @property
    def exact(self) -> bool:
        return all(isinstance(w, Rational) for row in self.weights for w in row)

    def array(self) -> np.ndarray:
        """Weights as an ndarray: object dtype for exact models, float64 otherwise."""
        if self.exact:
            return np.array(self.weights, dtype=object)
        return np.array(self.weights, dtype=float)

    def float_array(self) -> np.ndarray:
        return np.array([[float(w) for w in row] for row in self.weights])

    @property
    def max_abs(self) -> float:
        return max(float(w) for row in self.weights for w in row)

    def has_zero_row(self) -> bool:
        return any(all(w == 0 for w in row) for row in self.weights)


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]
    zero_tolerance: float

    @property
    def positive_count(self) -> int:
        return sum(1 for mu in self.eigenvalues if mu > self.zero_tolerance)

    def near_zero(self) -> bool:
        """Some eigenvalue is close enough to zero that its sign classification is fragile."""
        return any(abs(mu) < 10 * self.zero_tolerance for mu in self.eigenvalues)


def jacobi_eigenvalues(matrix: np.ndarray, max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations (unsorted)."""
    a = np.array(matrix, dtype=float, copy=True)
    n = a.shape[0]
    fro = math.sqrt(float(np.sum(a * a)))
    for _ in range(max_sweeps + 1):
        upper = np.triu(a, 1)
        off = math.sqrt(2.0 * float(np.sum(upper * upper)))
        if off <= JACOBI_RTOL * fro:
            return np.diag(a).copy()
        for p in range(n - 1):
            for r in range(p + 1, n):
                apr = a[p, r]
                if apr == 0.0:
                    continue
                diff = float(a[r, r] - a[p, p])
                if abs(diff) > 1e150 * abs(apr):
                    t = float(apr) / diff  # theta would overflow; t ~ 1/(2 theta)
                else:
                    theta = diff / (2.0 * float(apr))
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_r = a[:, r].copy()
                a[:, p] = c * col_p - s * col_r
                a[:, r] = s * col_p + c * col_r
                row_p = a[p, :].copy()
                row_r = a[r, :].copy()
                a[p, :] = c * row_p - s * row_r
                a[r, :] = s * row_p + c * row_r
                a[p, r] = a[r, p] = 0.0
    raise NumericalFailure(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def zero_tolerance(h: WeightedModel) -> float:
    return ZERO_BAND * h.q * h.max_abs


def eigenvalues(h: WeightedModel) -> Spectrum:
    """Spectrum of the weight matrix, eigenvalues in descending order."""
    vals = sorted(jacobi_eigenvalues(h.float_array()).tolist(), reverse=True)
    return Spectrum(tuple(vals), zero_tolerance(h))


def is_antiferromagnetic(h: WeightedModel) -> tuple[bool, Spectrum]:
    """Exactly one eigenvalue above the zero band; eigenvalues inside the band count as zero."""
    spectrum = eigenvalues(h)
    return spectrum.positive_count == 1, spectrum


def blow_up_hardcore(p: int, r: int) -> WeightedModel:
    """Hard-core model at fugacity r/p as an unweighted graph.

    Spins 0..p-1 are looped and pairwise adjacent, spins p..p+r-1 are unlooped
    and pairwise non-adjacent, and every looped spin meets every unlooped one.
    """
    if p < 1 or r < 1:
        raise InvalidParameter("p and r must be positive")
    if p + r > MAX_SPINS:
        raise TooLarge(f"blow-up has {p + r} spins, limit {MAX_SPINS}")
    q = p + r
    rows = tuple(tuple(1 if (i < p or j < p) else 0 for j in range(q)) for i in range(q))
    return WeightedModel(q, rows)


def looped_clique(q: int) -> WeightedModel:
    """K_{q+1} with a single unit loop on spin 0 (semiproper colourings, q proper colours)."""
    if q < 1:
        raise InvalidParameter("q must be positive")
    if q + 1 > MAX_SPINS:
        raise TooLarge(f"looped clique has {q + 1} spins, limit {MAX_SPINS}")
    m = q + 1
    rows = tuple(tuple(1 if (i != j or i == 0) else 0 for j in range(m)) for i in range(m))
    return WeightedModel(m, rows)


def _matrix_power(a: np.ndarray, k: int) -> np.ndarray:
    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def walk_homomorphisms(kind: str, length: int, h: WeightedModel):
    """hom(P_length, H) = 1^T H^length 1 or hom(C_length, H) = trace(H^length)."""
    if kind == "path_edges":
        if length < 1:
            raise InvalidParameter("path length must be >= 1")
    elif kind == "cycle":
        if length < 3:
            raise InvalidParameter("cycle length must be >= 3")
    else:
        raise InvalidParameter(f"unknown walk kind {kind!r}")
    power = _matrix_power(h.array(), length)
    value = power.sum() if kind == "path_edges" else np.trace(power)
    return value if h.exact else float(value)


def hom_clique(k: int, h: WeightedModel):
    """hom(K_k, H) summed over multisets of spins with multinomial multiplicities."""
    m = h.q
    if k == 0:
        return 1
    if math.comb(m + k - 1, k) > CLIQUE_MULTISET_LIMIT:
        raise TooLarge("too many spin multisets for this clique")
    w = h.weights
    one = 1 if h.exact else 1.0
    fact_k = math.factorial(k)
    total = 0 if h.exact else 0.0

    def rec(s: int, left: int, counts: list[int], weight, denom: int):
        nonlocal total
        if s == m - 1:
            c = left
            factor = w[s][s] ** (c * (c - 1) // 2)
            for t in range(s):
                if counts[t]:
                    factor = factor * w[t][s] ** (counts[t] * c)
            term = weight * factor
            if term != 0:
                mult = fact_k // (denom * math.factorial(c))
                total = total + mult * term
            return
        for c in range(left + 1):
            factor = w[s][s] ** (c * (c - 1) // 2)
            for t in range(s):
                if counts[t] and c:
                    factor = factor * w[t][s] ** (counts[t] * c)
            nw = weight * factor
            if nw == 0:
                continue
            counts.append(c)
            rec(s + 1, left - c, counts, nw, denom * math.factorial(c))
            counts.pop()

    rec(0, k, [], one, 1)
    return total


def as_fraction_model(h: WeightedModel) -> WeightedModel:
    return WeightedModel(h.q, tuple(tuple(Fraction(w) for w in row) for row in h.weights))

