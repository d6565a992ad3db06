"""Checkers that compare exact partition functions with their clique lower bounds.

Every check returns a :class:`VerificationReport` whose ``witness`` holds the
inputs needed to re-run it.  Sweeps over the scalar lemmas and the randomized
search for clique-minimiser counterexamples live here as well.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np

from . import bounds
from .errors import InvalidParameter, NotAntiferromagnetic, TooLarge
from .graph import SimpleGraph, cartesian_with_clique, connected_components, bits, from_edge_list, make_named
from .partition import (
    log_scalar,
    occupancy_fraction,
    stack_rows,
    z2,
    z_alpha,
    z_recurrence,
    zq,
    zq_bruteforce,
    TUPLE_ENUMERATION_LIMIT,
    hom_count,
)
from .spectral import WeightedModel, is_antiferromagnetic

SLACK_TOL = 1e-9
EQUALITY_TOL = 1e-12
NEAR_TIGHT = 1e-6
WITNESS_KEEP = 10


def _plain(x):
    """JSON-friendly scalar: ints stay ints, other rationals become 'p/q' strings."""
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    if isinstance(x, np.generic):
        return x.item()
    return float(x)


def graph_witness(g: SimpleGraph) -> dict:
    return {"n": g.vertex_count, "edges": [list(e) for e in g.edges()]}


def model_witness(h: WeightedModel) -> list:
    return [[_plain(w) for w in row] for row in h.weights]


@dataclass(frozen=True)
class VerificationReport:
    check_name: str
    lhs_log: float
    rhs_log: float
    slack: float
    passed: bool
    witness: dict
    flags: tuple = ()
    details: dict = field(default_factory=dict)
    asserted: bool = True

    def to_record(self) -> dict:
        return {
            "check": self.check_name,
            "lhs_log": self.lhs_log,
            "rhs_log": self.rhs_log,
            "slack": self.slack,
            "pass": self.passed,
            "asserted": self.asserted,
            "witness": self.witness,
            "flags": list(self.flags),
            "details": self.details,
        }


def _report(name, lhs, rhs, witness, tol=SLACK_TOL, flags=(), details=None, asserted=True, slack=None):
    if slack is None:
        if rhs == -math.inf:
            slack = math.inf
        else:
            slack = lhs - rhs
    return VerificationReport(
        name, float(lhs), float(rhs), float(slack), bool(slack >= -tol), witness,
        tuple(flags), details or {}, asserted,
    )


def _nonneg(values, name="activity"):
    for x in values:
        if x < 0:
            raise InvalidParameter(f"{name} must be nonnegative, got {x}")


# --------------------------------------------------------------- hard-core


def check_thm_main(g: SimpleGraph, acts: Sequence, tol: float = SLACK_TOL) -> VerificationReport:
    acts = list(acts)
    _nonneg(acts)
    lhs = log_scalar(z_recurrence(g, acts))
    rhs = bounds.clique_bound_log(g, acts)
    return _report("thm-main", lhs, rhs, {**graph_witness(g), "lambda": [_plain(a) for a in acts]}, tol)


@dataclass(frozen=True)
class EqualityClassification:
    labels: tuple[str, ...]
    components: tuple[tuple[int, ...], ...]
    slack: float
    consistent: bool


def classify_equality(g: SimpleGraph, acts: Sequence, eq_tol: float = EQUALITY_TOL) -> EqualityClassification:
    """Label each component ``zero``, ``constant-clique`` or ``strict``.

    Equality in the hard-core clique bound should hold exactly when no
    component is ``strict``; ``consistent`` records whether the computed slack
    agrees with that.
    """
    acts = [float(a) for a in acts]
    _nonneg(acts)
    labels, comps = [], []
    for comp in connected_components(g):
        vs = list(bits(comp))
        vals = [acts[v] for v in vs]
        top = max(vals)
        if top <= 1e-12:
            label = "zero"
        elif top - min(vals) <= 1e-12 * top and g.is_clique(comp):
            label = "constant-clique"
        else:
            label = "strict"
        labels.append(label)
        comps.append(tuple(vs))
    slack = check_thm_main(g, acts).slack
    tight = abs(slack) <= eq_tol
    return EqualityClassification(tuple(labels), tuple(comps), slack, tight == ("strict" not in labels))


def check_thm_2spin(g: SimpleGraph, lam, alpha, tol: float = SLACK_TOL) -> VerificationReport:
    _nonneg((lam, alpha))
    lhs = log_scalar(z_alpha(g, lam, alpha))
    rhs = bounds.clique_bound_log(g, [lam * alpha**d for d in g.degree_sequence])
    witness = {**graph_witness(g), "lambda": _plain(lam), "alpha": _plain(alpha)}
    return _report("thm-2spin", lhs, rhs, witness, tol)


def check_thm_semiproper(g: SimpleGraph, lam: Sequence, mu: Sequence, tol: float = SLACK_TOL) -> VerificationReport:
    lam, mu = list(lam), list(mu)
    _nonneg(lam + mu)
    lhs = log_scalar(z2(g, lam, mu))
    rhs = bounds.clique_bound_z2_log(g, lam, mu)
    details = {}
    slack = lhs - rhs
    if g.max_degree == 1:
        # the single-neighbour step, checked in both orientations of every edge
        branch = min(
            bounds.delta_one_branch_slack(float(lam[w]), float(mu[w]), float(lam[v]), float(mu[v]))
            for a, b in g.edges()
            for w, v in ((a, b), (b, a))
        )
        details["delta_one_branch_slack"] = branch
        slack = min(slack, branch)
    witness = {**graph_witness(g), "lambda": [_plain(a) for a in lam], "mu": [_plain(a) for a in mu]}
    return _report("thm-semiproper", lhs, rhs, witness, tol, details=details, slack=slack)


def check_lemma_key(delta: int, ds: Sequence[int], lambdas: Sequence, tol: float = SLACK_TOL) -> VerificationReport:
    terms = bounds.key_lemma_terms(delta, ds, lambdas)
    lam0 = float(lambdas[0])
    rest = [float(x) for x in lambdas[1:]]
    lhs = math.log(math.prod((1 + d * x) ** (1.0 / d) for d, x in zip(ds, rest)) + lam0)
    rhs = lhs - terms.main
    details = {"main": terms.main, "component": terms.component, "amgm": terms.amgm, "reduced": terms.reduced}
    witness = {"delta": delta, "ds": list(ds), "lambdas": [_plain(x) for x in lambdas]}
    slack = min(terms.main, terms.component, terms.amgm)
    return _report("lemma-key", lhs, rhs, witness, tol, details=details, slack=slack)


# ------------------------------------------------------ general spin models


def check_deg2_conjecture(kind: str, length: int, h: WeightedModel, tol: float = SLACK_TOL) -> VerificationReport:
    afm, spectrum = is_antiferromagnetic(h)
    if not afm:
        raise NotAntiferromagnetic(f"model has {spectrum.positive_count} positive eigenvalues")
    g = make_named(kind, length)
    flags = ["near-zero-eigenvalue"] if spectrum.near_zero() else []
    value = hom_count(g, h)
    lhs = log_scalar(value) if value > 0 else -math.inf
    rhs = bounds.hom_clique_bound_log(g, h)
    if rhs == -math.inf:
        flags.append("zero-clique-hom")
    witness = {"kind": kind, "length": length, "model": model_witness(h)}
    return _report("deg2", lhs, rhs, witness, tol, flags=flags)


def check_weak_semiproper(g: SimpleGraph, rows: Sequence[Sequence], tol: float = SLACK_TOL) -> VerificationReport:
    rows = [list(r) for r in rows]
    q = len(rows)
    for r in rows:
        _nonneg(r)
    lhs = log_scalar(zq(g, rows))
    degs = g.degree_sequence
    rhs = math.fsum(
        math.log1p((degs[v] + q) * float(rows[i][v])) / (degs[v] + q) for i in range(q) for v in range(g.vertex_count)
    )
    conjectured = math.fsum(
        math.log(float(bounds.falling_factorial_kernel(degs[v] + 1, [rows[i][v] for i in range(q)]))) / (degs[v] + 1)
        for v in range(g.vertex_count)
    )
    details = {"conjectured_rhs_log": conjectured, "conjectured_slack": lhs - conjectured}
    witness = {**graph_witness(g), "rows": [[_plain(x) for x in r] for r in rows]}
    return _report("weak-q", lhs, rhs, witness, tol, details=details)


def check_bijection(g: SimpleGraph, q: int, rows: Sequence[Sequence]) -> VerificationReport:
    """Tuple enumeration against the independence polynomial of G □ K_q, in exact arithmetic."""
    if len(rows) != q:
        raise InvalidParameter("need one activity row per colour")
    rows = [[Fraction(x) for x in r] for r in rows]
    if g.vertex_count > TUPLE_ENUMERATION_LIMIT:
        raise TooLarge(f"tuple enumeration limited to {TUPLE_ENUMERATION_LIMIT} vertices")
    direct = zq_bruteforce(g, rows)
    product = z_recurrence(cartesian_with_clique(g, q), stack_rows(g, rows))
    equal = direct == product
    witness = {**graph_witness(g), "q": q, "rows": [[_plain(x) for x in r] for r in rows]}
    details = {"direct": _plain(Fraction(direct)), "product": _plain(Fraction(product))}
    lhs = log_scalar(Fraction(direct)) if direct > 0 else -math.inf
    rhs = log_scalar(Fraction(product)) if product > 0 else -math.inf
    return _report("bijection", lhs, rhs, witness, 0.0, details=details, slack=0.0 if equal else -1.0)


def check_davies_kang(g: SimpleGraph, lam, tol: float = SLACK_TOL) -> VerificationReport:
    """Occupancy fraction against the clique average; asserted for regular graphs only."""
    _nonneg((lam,))
    n = g.vertex_count
    lhs = float(occupancy_fraction(g, lam, [1] * n))
    rhs = math.fsum(lam / (1 + (d + 1) * lam) for d in g.degree_sequence) / n
    regular = g.is_regular()
    flags = [] if regular else ["irregular-reported-only"]
    witness = {**graph_witness(g), "lambda": _plain(lam)}
    if lam == 0:
        return _report("davies-kang", -math.inf, -math.inf, witness, tol, flags, asserted=regular, slack=0.0)
    return _report("davies-kang", math.log(lhs), math.log(rhs), witness, tol, flags, asserted=regular)


def conjecture_slack(g: SimpleGraph, h: WeightedModel) -> float:
    """log hom(G, H) minus the clique bound; ``inf`` when the bound vanishes."""
    rhs = bounds.hom_clique_bound_log(g, h)
    if rhs == -math.inf:
        return math.inf
    value = hom_count(g, h)
    if value <= 0:
        return -math.inf
    return log_scalar(value) - rhs


# ------------------------------------------------------------------ sweeps


def _sweep_report(name, slack, witness, tol, details, flags=(), asserted=True, lhs=None, rhs=None):
    if lhs is None:
        lhs, rhs = slack, 0.0
    return VerificationReport(
        name, float(lhs), float(rhs), float(slack), bool(slack >= -tol), witness, tuple(flags), details, asserted
    )


def lemma_key_terms_array(delta: int, ds: np.ndarray, lams: np.ndarray) -> dict[str, np.ndarray]:
    """Vectorised key-lemma slacks; ``ds`` is (m, delta), ``lams`` is (m, delta+1)."""
    lam0, rest = lams[:, 0], lams[:, 1:]
    log_a = np.log1p(ds * rest) / ds
    log_b = np.log1p((ds + 1) * rest) / (ds + 1)
    sum_a, sum_b = log_a.sum(axis=1), log_b.sum(axis=1)
    main = np.log(np.exp(sum_a) + lam0) - (np.log1p((delta + 1) * lam0) / (delta + 1) + sum_b)
    component = (
        math.log(delta + 1) + delta * log_a - np.log1p(delta * np.exp((delta + 1) * log_b))
    ).min(axis=1)
    log_y = math.log(delta) + (delta + 1) * log_b
    amgm = np.log1p(np.exp(log_y)).sum(axis=1) / delta - np.log1p(np.exp(log_y.sum(axis=1) / delta))
    reduced = math.log(delta + 1) + sum_a - np.log1p(delta * np.exp(sum_b * (delta + 1) / delta))
    return {"main": main, "component": component, "amgm": amgm, "reduced": reduced}


def sweep_lemma_key(points: int = 100_000, seed: int = 0xA1E7, max_delta: int = 6, tol: float = SLACK_TOL):
    """Key-lemma slacks on random and gridded points, plus the equality configurations."""
    rng = np.random.default_rng(seed)
    per = -(-points // max_delta)
    worst = {"main": (math.inf, None), "component": (math.inf, None), "amgm": (math.inf, None), "reduced": (math.inf, None)}
    equality_dev = 0.0
    total = 0
    for delta in range(1, max_delta + 1):
        ds = rng.integers(1, delta + 1, size=(per, delta))
        lams = rng.uniform(0.0, 10.0, size=(per, delta + 1))
        # a quarter of the points near the origin, some exact zeros
        k = per // 4
        lams[:k] = 10.0 ** rng.uniform(-6, 0, size=(k, delta + 1))
        lams[k : k + per // 20, 0] = 0.0
        grid = np.linspace(0.0, 10.0, 41)
        eq_lams = np.repeat(grid[:, None], delta + 1, axis=1)
        eq_ds = np.full((grid.size, delta), delta)
        ds = np.vstack([ds, eq_ds])
        lams = np.vstack([lams, eq_lams])
        terms = lemma_key_terms_array(delta, ds.astype(float), lams)
        total += lams.shape[0]
        for name, vals in terms.items():
            i = int(np.argmin(vals))
            if vals[i] < worst[name][0]:
                worst[name] = (float(vals[i]), {"delta": delta, "ds": ds[i].tolist(), "lambdas": lams[i].tolist()})
        equality_dev = max(equality_dev, float(np.abs(terms["main"][-grid.size :]).max()))
    slack = min(worst[n][0] for n in ("main", "component", "amgm"))
    name = min(("main", "component", "amgm"), key=lambda n: worst[n][0])
    details = {
        "points": total,
        "min_main": worst["main"][0],
        "min_component": worst["component"][0],
        "min_amgm": worst["amgm"][0],
        "min_reduced": worst["reduced"][0],
        "max_equality_deviation": equality_dev,
    }
    return _sweep_report("sweep-lemma-key", slack, worst[name][1], tol, details)


def sweep_chain(d_max: int = 5, s_points: int = 60, tol: float = 1e-10):
    """Symmetric-chain inequalities on s in (1, 3]; for d = 1 only s < 2 is admissible."""
    worst = (math.inf, None, None)
    total = 0
    for d in range(1, d_max + 1):
        top = 3.0 if d > 1 else 2.0 - 1e-3
        for s in np.linspace(1.0, top, s_points + 1)[1:]:
            state = bounds.symmetric_chain(d, float(s))
            total += 1
            for name, value in state.slacks().items():
                if value < worst[0]:
                    worst = (float(value), name, {"d": d, "s": float(s)})
    details = {"points": total, "worst_inequality": worst[1]}
    return _sweep_report("sweep-chain", worst[0], worst[2], tol, details)


def sweep_dual_set(points: int = 1000, seed: int = 0xA1E7, max_delta: int = 5, tol: float = SLACK_TOL):
    """Single-factor points and geometric means of tangent-plane points, all tested for membership."""
    rng = np.random.default_rng(seed)
    worst = (math.inf, None)
    single = pairs = shaky = 0
    for delta in range(2, max_delta + 1):
        for d in range(1, delta + 1):
            for lam, mu in rng.uniform(0.0, 10.0, size=(points, 2)):
                m = bounds.s_membership(bounds.single_factor_point(delta, d, float(lam), float(mu)))
                single += 1
                shaky += m.low_confidence
                if m.slack < worst[0]:
                    worst = (m.slack, {"kind": "single-factor", "delta": delta, "d": d, "lambda": float(lam), "mu": float(mu)})
    for _ in range(points):
        delta = int(rng.integers(2, max_delta + 1))
        l1, m1, l2, m2 = (float(x) for x in rng.uniform(0.0, 10.0, size=4))
        p = bounds.tangent_plane_point(delta, l1, m1).geometric_mean(bounds.tangent_plane_point(delta, l2, m2))
        m = bounds.s_membership(p)
        pairs += 1
        shaky += m.low_confidence
        if m.slack < worst[0]:
            worst = (m.slack, {"kind": "geometric-mean", "delta": delta, "points": [[l1, m1], [l2, m2]]})
    details = {"single_factor_points": single, "geometric_mean_pairs": pairs, "low_confidence_points": shaky}
    flags = ["low-confidence-psi"] if shaky else []
    return _sweep_report("sweep-dual-set", worst[0], worst[1], tol, details, flags)


def sweep_basic_ineq(d_max: int = 6, steps: int = 101, tol: float = 1e-12):
    """Basic inequality on a grid over [0, 10]^2; off the origin it must be strict."""
    axis = np.linspace(0.0, 10.0, steps)
    xx, yy = np.meshgrid(axis, axis, indexing="ij")
    origin = (xx == 0) & (yy == 0)
    worst_rel, worst_w, strict_min = math.inf, None, math.inf
    for d in range(1, d_max + 1):
        log_a = np.log(bounds.a_kernel(d + 1, xx, yy))
        lhs = (d + 1) * (np.log1p(d * xx) + np.log1p(d * yy))
        slack = 2 * d * log_a - lhs
        i, j = np.unravel_index(int(np.argmin(slack)), slack.shape)
        if slack[i, j] < worst_rel:
            worst_rel, worst_w = float(slack[i, j]), {"d": d, "x": float(axis[i]), "y": float(axis[j])}
        strict_min = min(strict_min, float(slack[~origin].min()))
    details = {"min_off_origin": strict_min, "strict_off_origin": strict_min > tol}
    flags = [] if strict_min > tol else ["equality-off-origin"]
    report = _sweep_report("sweep-basic-ineq", worst_rel, worst_w, tol, details, flags)
    if strict_min <= tol:
        report = VerificationReport(**{**report.__dict__, "passed": False})
    return report


def sweep_neg_fugacity(max_delta: int = 3, step: float = 1e-4, configs: Sequence[tuple[int, ...]] | None = None):
    """Run the negative-fugacity probe; violations are findings, so the record is not asserted."""
    if configs is None:
        configs = [
            tuple(ds)
            for delta in range(2, max_delta + 1)
            for ds in combinations_with_replacement(range(1, delta + 1), delta)
        ]
    found = {}
    for ds in configs:
        hit = bounds.negative_fugacity_probe(len(ds), ds, step)
        found[",".join(map(str, ds))] = hit
    witnesses = {k: v for k, v in found.items() if v is not None}
    values = [bounds.negative_fugacity_expression(len(k.split(",")), [int(x) for x in k.split(",")], v)[0]
              for k, v in witnesses.items()]
    slack = min(values, default=0.0)
    details = {"configs": len(found), "witnesses": witnesses, "none_found": sorted(k for k, v in found.items() if v is None)}
    return _sweep_report("sweep-neg-fugacity", slack, {"step": step, "configs": list(found)}, SLACK_TOL, details,
                         asserted=False)


# ---------------------------------------------------------------- explorer


@dataclass(frozen=True)
class ExplorerConfig:
    n_max: int = 10
    q_max: int = 3
    edge_probabilities: tuple[float, ...] = (0.2, 0.5, 0.8)
    weight_range: tuple[float, float] = (0.1, 10.0)
    zero_probability: float = 0.3
    rejection_attempts: int = 200
    allow_large: bool = False

    def __post_init__(self):
        if self.n_max < 2:
            raise InvalidParameter("n_max must be >= 2")
        if self.q_max < 2:
            raise InvalidParameter("q_max must be >= 2")
        if not self.allow_large and (self.n_max > 10 or self.q_max > 5):
            raise InvalidParameter("explorer limited to n_max <= 10 and q_max <= 5 unless allow_large is set")


@dataclass(frozen=True)
class ExplorationWitness:
    seed: int
    trial_index: int
    graph: tuple[tuple[int, int], ...]
    n: int
    model: tuple[tuple[float, ...], ...]
    slack: float

    def to_record(self) -> dict:
        return {
            "seed": self.seed,
            "trial_index": self.trial_index,
            "n": self.n,
            "edges": [list(e) for e in self.graph],
            "model": [list(r) for r in self.model],
            "slack": self.slack,
        }


@dataclass(frozen=True)
class TrialResult:
    trial_index: int
    slack: float
    n: int
    edges: tuple[tuple[int, int], ...]
    model: tuple[tuple[float, ...], ...]
    sampler: str
    rejections: int
    zero_row_exclusions: int


def trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial_index,)))


def _log_uniform(rng, lo, hi, size=None):
    return np.exp(rng.uniform(math.log(lo), math.log(hi), size=size))


def _constructive_model(rng, q: int, config: ExplorerConfig) -> np.ndarray:
    """u_i u_j C(c_i, c_j): a scaled blow-up of K_{k+1} or K_{k+1} with one loop.

    Congruence preserves inertia, so these are antiferromagnetic by construction.
    """
    k1 = int(rng.integers(2, q + 1))
    looped = bool(rng.integers(0, 2))
    base = 1.0 - np.eye(k1)
    if looped:
        base[0, 0] = 1.0
    classes = np.concatenate([np.arange(k1), rng.integers(0, k1, size=q - k1)])
    rng.shuffle(classes)
    u = np.sqrt(_log_uniform(rng, *config.weight_range, size=q))
    return np.outer(u, u) * base[np.ix_(classes, classes)]


def _rejection_model(rng, q: int, config: ExplorerConfig) -> tuple[np.ndarray | None, int, int]:
    rejected = zero_rows = 0
    for _ in range(config.rejection_attempts):
        w = _log_uniform(rng, *config.weight_range, size=(q, q))
        w = np.where(rng.random((q, q)) < config.zero_probability, 0.0, w)
        w = np.triu(w)
        w = w + np.triu(w, 1).T
        h = WeightedModel.from_matrix(w)
        if h.has_zero_row():
            zero_rows += 1
            continue
        if is_antiferromagnetic(h)[0]:
            return w, rejected, zero_rows
        rejected += 1
    return None, rejected, zero_rows


def sample_antiferromagnetic(rng, q: int, config: ExplorerConfig = ExplorerConfig()):
    """Draw a q x q antiferromagnetic weight matrix, constructive or rejection path with equal odds.

    Returns (matrix, sampler label, spectral rejections, zero-row exclusions).
    """
    rejected = zero_rows = 0
    sampler = "constructive"
    w = None
    if rng.random() < 0.5:
        w, rejected, zero_rows = _rejection_model(rng, q, config)
        sampler = "rejection" if w is not None else "rejection-fallback"
    if w is None:
        w = _constructive_model(rng, q, config)
    return w, sampler, rejected, zero_rows


def _random_graph(rng, n: int, p: float) -> SimpleGraph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return from_edge_list(n, edges)


def run_trial(seed: int, trial_index: int, config: ExplorerConfig = ExplorerConfig()) -> TrialResult:
    """One explorer trial, fully determined by (seed, trial_index, config)."""
    rng = trial_rng(seed, trial_index)
    p = config.edge_probabilities[trial_index % len(config.edge_probabilities)]
    n = int(rng.integers(2, config.n_max + 1))
    g = _random_graph(rng, n, p)
    q = int(rng.integers(2, config.q_max + 1))
    w, sampler, rejected, zero_rows = sample_antiferromagnetic(rng, q, config)
    h = WeightedModel.from_matrix(w)
    if not is_antiferromagnetic(h)[0]:
        raise NotAntiferromagnetic("sampler produced a model that fails the spectral test")
    slack = conjecture_slack(g, h)
    return TrialResult(trial_index, slack, n, tuple(g.edges()), h.weights, sampler, rejected, zero_rows)


def _run_range(args):
    seed, start, stop, config = args
    return [run_trial(seed, t, config) for t in range(start, stop)]


def worker_count() -> int:
    env = os.environ.get("AFMLAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InvalidParameter(f"AFMLAB_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


@dataclass(frozen=True)
class ExplorationReport:
    trials: int
    seed: int
    min_slack: float
    near_tight: int
    infinite_slack: int
    rejections: int
    zero_row_exclusions: int
    samplers: dict
    witnesses: tuple[ExplorationWitness, ...]

    @property
    def passed(self) -> bool:
        return self.min_slack >= -SLACK_TOL

    def to_record(self) -> dict:
        return {
            "check": "explore",
            "trials": self.trials,
            "seed": self.seed,
            "min_slack": self.min_slack,
            "near_tight": self.near_tight,
            "infinite_slack": self.infinite_slack,
            "rejections": self.rejections,
            "zero_row_exclusions": self.zero_row_exclusions,
            "samplers": self.samplers,
            "pass": self.passed,
            "witnesses": [w.to_record() for w in self.witnesses],
        }


def explore_conjecture(
    trials: int,
    seed: int = 0xA1E7,
    n_max: int = 10,
    q_max: int = 3,
    config: ExplorerConfig | None = None,
    workers: int | None = None,
) -> ExplorationReport:
    """Random search for graphs and antiferromagnetic models beating the clique bound."""
    if trials < 1:
        raise InvalidParameter("need at least one trial")
    if config is None:
        config = ExplorerConfig(n_max=n_max, q_max=q_max)
    workers = worker_count() if workers is None else workers
    if workers > 1 and trials > 1:
        chunk = -(-trials // (4 * workers))
        jobs = [(seed, s, min(s + chunk, trials), config) for s in range(0, trials, chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [r for part in pool.map(_run_range, jobs) for r in part]
    else:
        results = _run_range((seed, 0, trials, config))

    finite = [r for r in results if math.isfinite(r.slack)]
    min_slack = min((r.slack for r in results), default=math.inf)
    samplers: dict[str, int] = {}
    for r in results:
        samplers[r.sampler] = samplers.get(r.sampler, 0) + 1
    worst = sorted(finite, key=lambda r: (r.slack, r.trial_index))[:WITNESS_KEEP]
    witnesses = tuple(ExplorationWitness(seed, r.trial_index, r.edges, r.n, r.model, r.slack) for r in worst)
    return ExplorationReport(
        trials=trials,
        seed=seed,
        min_slack=min_slack,
        near_tight=sum(1 for r in finite if r.slack < NEAR_TIGHT),
        infinite_slack=len(results) - len(finite),
        rejections=sum(r.rejections for r in results),
        zero_row_exclusions=sum(r.zero_row_exclusions for r in results),
        samplers=dict(sorted(samplers.items())),
        witnesses=witnesses,
    )
