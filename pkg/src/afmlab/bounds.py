"""Clique lower bounds and the scalar kernels behind them.

Covers the clique products for Z, Z^(2) and hom(., H); the two-colour clique
kernels A_d, B_d; the dual set of affine majorants of A_{D+1}^{1/(D+1)} and
its boundary function; and the one-parameter chain used in the symmetric
case.  Comparisons are done in log space in double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DivergenceSuspected, InternalInconsistency, InvalidParameter
from .graph import SimpleGraph
from .spectral import WeightedModel, hom_clique

SLACK_TOL = 1e-9
PHI_AGREEMENT = 1e-6
DIVERGENCE_RADIUS = 1e6
LOW_CONFIDENCE_BAND = 1e-6


def _nonnegative(values, name="activity"):
    for x in values:
        if x < 0:
            raise InvalidParameter(f"{name} must be nonnegative, got {x}")


# ---------------------------------------------------------------- clique bounds


def clique_bound_log(g: SimpleGraph, acts: Sequence) -> float:
    """log prod_v (1 + (d_v+1) lam_v)^(1/(d_v+1))."""
    acts = [float(a) for a in acts]
    _nonnegative(acts)
    if len(acts) != g.vertex_count:
        raise InvalidParameter("activity vector length does not match the graph")
    return math.fsum(math.log1p((d + 1) * a) / (d + 1) for d, a in zip(g.degree_sequence, acts))


def a_kernel(d: int, x, y):
    """A_d(x, y) = d(d-1)xy + d(x+y) + 1, the two-colour partition function of K_d."""
    return d * (d - 1) * x * y + d * (x + y) + 1


def b_kernel(d: int, x):
    """B_d(x) = dx + 1."""
    return d * x + 1


def clique_bound_z2_log(g: SimpleGraph, lam: Sequence, mu: Sequence) -> float:
    lam = [float(a) for a in lam]
    mu = [float(a) for a in mu]
    _nonnegative(lam + mu)
    if not len(lam) == len(mu) == g.vertex_count:
        raise InvalidParameter("activity vector length does not match the graph")
    return math.fsum(
        math.log(a_kernel(d + 1, x, y)) / (d + 1) for d, x, y in zip(g.degree_sequence, lam, mu)
    )


def hom_clique_bound_log(g: SimpleGraph, h: WeightedModel) -> float:
    """sum_v log hom(K_{d_v+1}, H) / (d_v+1); ``-inf`` when some clique count vanishes."""
    per_degree = {}
    for d in set(g.degree_sequence):
        per_degree[d] = hom_clique(d + 1, h)
    if any(v == 0 for v in per_degree.values()):
        return -math.inf
    logs = {d: math.log(v) if not hasattr(v, "numerator") else _log_rational(v) for d, v in per_degree.items()}
    return math.fsum(logs[d] / (d + 1) for d in g.degree_sequence)


def _log_rational(x) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


@dataclass(frozen=True)
class CliqueKernels:
    d: int
    lam: float
    mu: float
    A: float
    B_mu: float
    B_lambda: float
    D: float

    @classmethod
    def at(cls, d: int, lam, mu) -> "CliqueKernels":
        return cls(
            d, lam, mu,
            a_kernel(d, lam, mu), b_kernel(d, mu), b_kernel(d, lam), a_kernel(d + 1, lam, mu),
        )

    def identity_residual(self):
        """d*D - ((d+1) B_lambda B_mu - 1); zero exactly for rational inputs."""
        return self.d * self.D - ((self.d + 1) * self.B_lambda * self.B_mu - 1)

    def a_from_bc_residual(self):
        """d*A - ((d-1) B C + B + C - 1)."""
        b, c = self.B_mu, self.B_lambda
        return self.d * self.A - ((self.d - 1) * b * c + b + c - 1)


def elementary_symmetric(xs: Sequence) -> list:
    """e_0..e_q of ``xs`` from the coefficients of prod (1 + x_i t)."""
    coeffs = [1]
    for x in xs:
        nxt = coeffs + [0]
        for k in range(len(coeffs), 0, -1):
            nxt[k] = nxt[k] + coeffs[k - 1] * x
        coeffs = nxt
    return coeffs


def falling_factorial_kernel(d: int, xs: Sequence):
    """F_d(x) = sum_k (d)_k e_k(x), the q-colour partition function of K_d."""
    if d < 0:
        raise InvalidParameter("d must be nonnegative")
    _nonnegative(xs)
    total = 0
    falling = 1
    for k, e in enumerate(elementary_symmetric(xs)):
        if k > 0:
            falling *= d - k + 1
        if falling == 0:
            break
        total = total + falling * e
    return total


# ------------------------------------------------------ boundary of the dual set


def surface(delta: int, x, y):
    """A_{delta+1}(x, y)^(1/(delta+1)), the concave surface the dual set majorises."""
    return a_kernel(delta + 1, x, y) ** (1.0 / (delta + 1))


def xi_polynomial(delta: int, s: float, x: float) -> float:
    return (delta + 1) * s * x ** (2 * delta) - delta * x ** (delta + 1) - 1


def xi_delta(delta: int, s: float, max_steps: int = 200) -> float:
    """The unique root on (1, inf) of (D+1) s X^(2D) - D X^(D+1) - 1, by bisection."""
    if delta < 2:
        raise InvalidParameter("delta must be >= 2")
    if not 0 < s < 1:
        raise InvalidParameter(f"s must lie in (0, 1), got {s}")
    lo, hi = 1.0, 2.0
    while xi_polynomial(delta, s, hi) <= 0:
        lo, hi = hi, 2 * hi
    for _ in range(max_steps):
        if hi - lo < 1e-15:
            break
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if xi_polynomial(delta, s, mid) > 0:
            hi = mid
        else:
            lo = mid
    return min((lo, hi), key=lambda x: abs(xi_polynomial(delta, s, x)))


def psi_low_confidence(s: float) -> bool:
    """Within LOW_CONFIDENCE_BAND of s = 1 the root xi is close to 1 and Psi loses digits."""
    return abs(1.0 - s) < LOW_CONFIDENCE_BAND


def psi_delta(delta: int, s: float) -> float:
    xi = xi_delta(delta, s)
    return xi - (2.0 / delta) * s * xi**delta


def _best_coordinate(a: float, p: float, r: float, m: int) -> float:
    """argmax over t >= 0 of (p t + r)^(1/m) - a t."""
    target = (a * m / p) ** (-m / (m - 1))
    return max(0.0, (target - r) / p)


def dual_xmax(delta: int, a1: float, a2: float) -> float:
    """Smallest power of two X with a1 X and a2 X both above 2 A_{delta+1}(X, X)^(1/(delta+1))."""
    x = 1.0
    while not (a1 * x > 2 * surface(delta, x, x) and a2 * x > 2 * surface(delta, x, x)):
        x *= 2
    return x


def _phi_numeric(delta: int, a1: float, a2: float, max_iter: int = 200_000):
    m = delta + 1

    def gap(x, y):
        return surface(delta, x, y) - a1 * x - a2 * y

    x = y = 0.0
    for _ in range(max_iter):
        nx = _best_coordinate(a1, m * (delta * y + 1), m * y + 1, m)
        ny = _best_coordinate(a2, m * (delta * nx + 1), m * nx + 1, m)
        if nx + ny > DIVERGENCE_RADIUS:
            raise DivergenceSuspected(f"coordinate ascent left the ball of radius {DIVERGENCE_RADIUS:g}")
        moved = abs(nx - x) + abs(ny - y)
        x, y = nx, ny
        if moved <= 1e-15 * (1 + x + y):
            break
    best = (gap(x, y), (x, y))

    xmax = dual_xmax(delta, a1, a2)
    for axis in (0, 1):
        f = (lambda t: -gap(t, 0.0)) if axis == 0 else (lambda t: -gap(0.0, t))
        res = minimize_scalar(f, bounds=(0.0, xmax), method="bounded", options={"xatol": 1e-12})
        cand = (-res.fun, (res.x, 0.0) if axis == 0 else (0.0, res.x))
        if cand[0] > best[0]:
            best = cand
    if gap(0.0, 0.0) > best[0]:
        best = (gap(0.0, 0.0), (0.0, 0.0))
    return best


def _phi_closed_form(delta: int, a1: float, a2: float):
    """Interior stationary point of the gap function, or None when it leaves the quadrant."""
    s = a1 * a2
    if s >= 1:
        return None
    xi = xi_delta(delta, s)
    x = (a2 * xi**delta - 1) / delta
    y = (a1 * xi**delta - 1) / delta
    if x < 0 or y < 0:
        return None
    return xi - a1 * x - a2 * y, (x, y)


def phi_delta_with_point(delta: int, a1: float, a2: float):
    """(sup over x, y >= 0 of A^(1/(D+1)) - a1 x - a2 y, a maximiser)."""
    if delta < 2:
        raise InvalidParameter("delta must be >= 2")
    if a1 <= 0 or a2 <= 0:
        raise InvalidParameter("a1 and a2 must be positive")
    numeric = _phi_numeric(delta, a1, a2)
    closed = _phi_closed_form(delta, a1, a2)
    if closed is None:
        return numeric
    if abs(closed[0] - numeric[0]) > PHI_AGREEMENT:
        raise InternalInconsistency(
            f"stationary point value {closed[0]!r} vs numeric ascent {numeric[0]!r} "
            f"(delta={delta}, a1={a1!r}, a2={a2!r})"
        )
    return closed


def phi_delta(delta: int, a1: float, a2: float) -> float:
    return phi_delta_with_point(delta, a1, a2)[0]


@dataclass(frozen=True)
class DualPoint:
    """Candidate affine majorant a0 + a1 x + a2 y of A_{delta+1}^(1/(delta+1))."""

    delta: int
    a0: float
    a1: float
    a2: float

    def __post_init__(self):
        if self.delta < 2:
            raise InvalidParameter("delta must be >= 2")
        if min(self.a0, self.a1, self.a2) <= 0:
            raise InvalidParameter("dual point coordinates must be positive")

    def geometric_mean(self, other: "DualPoint") -> "DualPoint":
        if other.delta != self.delta:
            raise InvalidParameter("points belong to different dual sets")
        return DualPoint(
            self.delta,
            math.sqrt(self.a0 * other.a0),
            math.sqrt(self.a1 * other.a1),
            math.sqrt(self.a2 * other.a2),
        )


def tangent_plane_point(d: int, lam: float, mu: float) -> DualPoint:
    """Coefficients of the tangent plane of A_{d+1}^(1/(d+1)) at (lam, mu)."""
    _nonnegative((lam, mu))
    scale = a_kernel(d + 1, lam, mu) ** (-d / (d + 1))
    return DualPoint(d, a_kernel(d, lam, mu) * scale, b_kernel(d, mu) * scale, b_kernel(d, lam) * scale)


def single_factor_point(delta: int, d: int, lam: float, mu: float) -> DualPoint:
    """(A_d^(D/d), B_d(mu)^(D/d), B_d(lam)^(D/d)) / A_{d+1}^(D/(d+1)) for one neighbour."""
    if not 1 <= d <= delta:
        raise InvalidParameter("need 1 <= d <= delta")
    _nonnegative((lam, mu))
    p = delta / d
    scale = a_kernel(d + 1, lam, mu) ** (-delta / (d + 1))
    return DualPoint(
        delta,
        a_kernel(d, lam, mu) ** p * scale,
        b_kernel(d, mu) ** p * scale,
        b_kernel(d, lam) ** p * scale,
    )


@dataclass(frozen=True)
class Membership:
    member: bool
    slack: float
    witness: tuple[float, float]
    phi: float
    low_confidence: bool = False


def s_membership(point: DualPoint, grid: int = 64) -> Membership:
    """Decide whether ``point`` majorises the surface on the nonnegative quadrant.

    Combines the boundary value a0 - phi(a1, a2) with a direct scan of
    plane - surface over a mixed linear/geometric grid on [0, X]^2.
    """
    delta, a0, a1, a2 = point.delta, point.a0, point.a1, point.a2
    xmax = dual_xmax(delta, a1, a2)
    axis = np.unique(np.concatenate([np.linspace(0.0, xmax, grid), np.geomspace(1e-6 * xmax, xmax, grid)]))
    xx, yy = np.meshgrid(axis, axis, indexing="ij")
    gaps = a0 + a1 * xx + a2 * yy - surface(delta, xx, yy)
    i, j = np.unravel_index(int(np.argmin(gaps)), gaps.shape)
    grid_slack, grid_witness = float(gaps[i, j]), (float(axis[i]), float(axis[j]))

    try:
        phi, witness = phi_delta_with_point(delta, a1, a2)
    except DivergenceSuspected:
        # a far-away maximiser is harmless once the grid already shows a violation
        if grid_slack < -SLACK_TOL:
            return Membership(False, grid_slack, grid_witness, math.nan)
        raise
    slack = a0 - phi
    if grid_slack < slack:
        slack, witness = grid_slack, grid_witness
    return Membership(
        slack >= -SLACK_TOL,
        float(slack),
        (float(witness[0]), float(witness[1])),
        phi,
        psi_low_confidence(a1 * a2),
    )


# ---------------------------------------------------------- symmetric chain


def a_sym(k: int, x):
    return a_kernel(k, x, x)


def h_ratio(k: int, x):
    """H_k(x) = A_k(x, x) / B_k(x)."""
    return a_sym(k, x) / b_kernel(k, x)


def x_of_s(k: int, s: float, max_steps: int = 400) -> float:
    """The x >= 0 with H_k(x)^(1/k) = s, by bisection on the increasing map x -> H_k(x)."""
    if k < 1:
        raise InvalidParameter("k must be >= 1")
    if s < 1:
        raise InvalidParameter(f"s must be >= 1, got {s}")
    if k == 1 and s >= 2:
        raise InvalidParameter("H_1 is bounded by 2, so s must be < 2 when k = 1")
    target = s**k
    if s == 1:
        return 0.0
    lo, hi = 0.0, 1.0
    while h_ratio(k, hi) < target:
        lo, hi = hi, 2 * hi
    for _ in range(max_steps):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if h_ratio(k, mid) < target:
            lo = mid
        else:
            hi = mid
    return min((lo, hi), key=lambda x: abs(h_ratio(k, x) ** (1.0 / k) - s))


def chain_phi(k: int, x: float) -> float:
    """B_k(x)^(1/k) / A_{k+1}(x, x)^(1/(k+1))."""
    return b_kernel(k, x) ** (1.0 / k) / a_sym(k + 1, x) ** (1.0 / (k + 1))


def chain_quadratic(d: int, s: float, x: float) -> float:
    """2ds x^2 + (2s + d - s^2 d - s^2) x - (s - 1), nonnegative for x >= s - 1."""
    return 2 * d * s * x * x + (2 * s + d - s * s * d - s * s) * x - (s - 1)


def log_phi_derivative(k: int, s: float, x: float) -> float:
    """Closed form of d/ds log Phi_k(s) at x = x_k(s)."""
    return -(s ** (k - 1)) / (s**k + 2 * x)


@dataclass(frozen=True)
class SymmetricChainState:
    d: int
    s: float
    x_d: float
    x_d1: float
    phi_d: float
    phi_d1: float

    def slacks(self) -> dict[str, float]:
        """Each entry is nonnegative when the corresponding chain inequality holds."""
        d, s, x = self.d, self.s, self.x_d
        return {
            "x_growth": s * x - self.x_d1,
            "phi_order": self.phi_d - self.phi_d1,
            "x_lower": x - (s - 1),
            "quadratic": chain_quadratic(d, s, x),
            "h_growth": h_ratio(d + 1, s * x) - s ** (d + 1),
        }


def symmetric_chain(d: int, s: float) -> SymmetricChainState:
    if d < 1:
        raise InvalidParameter("d must be >= 1")
    if s < 1:
        raise InvalidParameter(f"s must be >= 1, got {s}")
    x_d = x_of_s(d, s)
    x_d1 = x_of_s(d + 1, s)
    return SymmetricChainState(d, s, x_d, x_d1, chain_phi(d, x_d), chain_phi(d + 1, x_d1))


# -------------------------------------------------------- inequality kernels


def basic_ineq_log_slack(d: int, x: float, y: float) -> float:
    """2d log A_{d+1}(x, y) - (d+1) log((dx+1)(dy+1)); zero only at the origin."""
    return 2 * d * math.log(a_kernel(d + 1, x, y)) - (d + 1) * (math.log1p(d * x) + math.log1p(d * y))


def delta_one_branch_slack(lam_w, mu_w, lam_v, mu_v) -> float:
    """log of A_1(v) + lam_w B_1(mu_v) + mu_w B_1(lam_v) over sqrt(A_2(w) A_2(v))."""
    lhs = a_kernel(1, lam_v, mu_v) + lam_w * b_kernel(1, mu_v) + mu_w * b_kernel(1, lam_v)
    rhs = 0.5 * (math.log(a_kernel(2, lam_w, mu_w)) + math.log(a_kernel(2, lam_v, mu_v)))
    return math.log(lhs) - rhs


@dataclass(frozen=True)
class KeyLemmaTerms:
    main: float
    component: float
    amgm: float
    reduced: float


def key_lemma_terms(delta: int, ds: Sequence[int], lambdas: Sequence[float]) -> KeyLemmaTerms:
    """Log-domain slacks of the single-vertex inequality and its two sub-steps.

    ``lambdas[0]`` belongs to the deleted vertex, ``lambdas[i]`` to neighbour i.
    """
    if delta < 1:
        raise InvalidParameter("delta must be >= 1")
    if len(ds) != delta or len(lambdas) != delta + 1:
        raise InvalidParameter("need delta neighbour degrees and delta + 1 activities")
    if any(not 1 <= d <= delta for d in ds):
        raise InvalidParameter("neighbour degrees must lie in [1, delta]")
    lambdas = [float(x) for x in lambdas]
    _nonnegative(lambdas)
    lam0, rest = lambdas[0], lambdas[1:]
    log_a = [math.log1p(d * x) / d for d, x in zip(ds, rest)]
    log_b = [math.log1p((d + 1) * x) / (d + 1) for d, x in zip(ds, rest)]
    sum_a, sum_b = math.fsum(log_a), math.fsum(log_b)

    main = math.log(math.exp(sum_a) + lam0) - (math.log1p((delta + 1) * lam0) / (delta + 1) + sum_b)

    component = min(
        math.log(delta + 1) + delta * la - math.log1p(delta * math.exp((delta + 1) * lb))
        for la, lb in zip(log_a, log_b)
    )

    log_y = [math.log(delta) + (delta + 1) * lb for lb in log_b]
    amgm = math.fsum(math.log1p(math.exp(ly)) for ly in log_y) / delta - math.log1p(
        math.exp(math.fsum(log_y) / delta)
    )

    reduced = math.log(delta + 1) + sum_a - math.log1p(delta * math.exp(sum_b * (delta + 1) / delta))
    return KeyLemmaTerms(main, component, amgm, reduced)


def negative_fugacity_expression(delta: int, ds: Sequence[int], lam: float) -> tuple[float, float]:
    """((D+1)A - D B^((D+1)/D) - 1 at uniform activity lam, its rounding-noise scale)."""
    a = math.prod((1 + d * lam) ** (1.0 / d) for d in ds)
    b = math.prod((1 + (d + 1) * lam) ** (1.0 / (d + 1)) for d in ds) ** ((delta + 1) / delta)
    value = (delta + 1) * a - delta * b - 1
    noise = 64 * np.finfo(float).eps * ((delta + 1) * abs(a) + delta * abs(b) + 1)
    return value, noise


def negative_fugacity_probe(delta: int, ds: Sequence[int], step: float = 1e-4, lower: float = -0.5):
    """First lam on the descending grid -step, -2 step, ... > lower where the reduced
    single-vertex inequality fails by more than rounding noise; None if there is none.
    """
    if delta < 2:
        raise InvalidParameter("delta must be >= 2")
    if len(ds) != delta or any(not 1 <= d <= delta for d in ds):
        raise InvalidParameter("need delta neighbour degrees in [1, delta]")
    if step <= 0:
        raise InvalidParameter("step must be positive")
    k = 1
    while True:
        lam = -k * step
        if lam <= lower:
            return None
        if any(1 + (d + 1) * lam <= 0 for d in ds):
            return None
        value, noise = negative_fugacity_expression(delta, ds, lam)
        if value < -noise:
            return lam
        k += 1
