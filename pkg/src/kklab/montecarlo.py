"""Random-graph sampling and Monte Carlo estimation of containment thresholds.

Two jobs live here.  First, seeded G(n,p) sampling with exact Bernoulli
draws (p may be rational or an exact root value) feeding a bisection
estimator for the median containment probability: the p at which a random
graph contains a target pattern with probability one half.  Second, seeded
generators that emit graphs certified q-sparse, either by repairing a
random sample or by checking a structured family.

All randomness flows through counter-based streams derived from a master
seed and a task label, so results are byte-identical no matter how trials
are scheduled across threads.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from statistics import NormalDist

from .counting import contains
from .exact import Root, format_fraction, value_cmp, value_mul
from .expectation import SparseCheck, is_q_sparse
from .graphs import (
    Graph,
    complete_graph,
    disjoint_union,
    path_power_graph,
    spider_graph,
    theta_graph,
    to_graph6,
)
from .util import PreconditionError, parallel_map

DEFAULT_TRIALS = 2000
DEFAULT_TOLERANCE = Fraction(1, 100)
DEFAULT_CONFIDENCE = 0.95

GENERATOR_FAMILIES = ("gnp-repair", "clique-union", "theta", "spider", "path-power")


def derive_rng(master_seed: int, *path) -> random.Random:
    """Independent RNG stream keyed by a master seed and a task path.

    Hashing the label instead of sharing one generator keeps parallel
    consumers reproducible regardless of scheduling order.
    """
    tag = "|".join(str(part) for part in (master_seed,) + path)
    digest = hashlib.sha256(tag.encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest, "big"))


def bernoulli(rng: random.Random, p) -> bool:
    """One exact Bernoulli(p) draw.

    Rational p costs a single bounded-integer draw.  Root-valued p is
    decided by refining a random dyadic interval until it separates from p;
    comparisons against the root are exact, so no float ever enters.
    """
    if isinstance(p, Root):
        num, den = 0, 1
        while True:
            num = num * 2 + rng.getrandbits(1)
            den *= 2
            # u lies in [num/den, (num+1)/den); decide once p leaves the interval
            if p >= Fraction(num + 1, den):
                return True
            if p <= Fraction(num, den):
                return False
    p = Fraction(p)
    if p < 0 or p > 1:
        raise PreconditionError(f"p={p} is not a probability")
    if p == 0:
        return False
    if p == 1:
        return True
    return rng.randrange(p.denominator) < p.numerator


def sample_gnp(n: int, p, rng: random.Random) -> Graph:
    """Sample G(n,p): each of the C(n,2) pairs kept independently."""
    if n < 0:
        raise PreconditionError(f"vertex count {n} is negative")
    if value_cmp(p, 0) < 0 or value_cmp(p, 1) > 0:
        raise PreconditionError(f"p={p} is not a probability")
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if bernoulli(rng, p)
    ]
    return Graph(n, edges)


# -- threshold estimation ----------------------------------------------------------


@dataclass(frozen=True)
class TrialPlan:
    """Everything that determines an estimation run; equal plans give equal output."""

    n: int
    pattern: Graph
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    tolerance: Fraction = DEFAULT_TOLERANCE
    confidence: float = DEFAULT_CONFIDENCE

    def __post_init__(self):
        if self.trials < 1:
            raise PreconditionError(f"trials={self.trials} must be at least 1")
        if self.tolerance <= 0:
            raise PreconditionError(f"tolerance={self.tolerance} must be positive")
        if not 0 < self.confidence < 1:
            raise PreconditionError(f"confidence={self.confidence} must lie in (0,1)")
        if self.pattern.edge_count == 0:
            raise PreconditionError("pattern needs at least one edge")
        if self.pattern.n > self.n:
            raise PreconditionError(
                f"pattern on {self.pattern.n} vertices cannot embed in n={self.n}"
            )


@dataclass(frozen=True)
class Probe:
    p: Fraction
    successes: int
    trials: int
    wilson_low: float
    wilson_high: float


@dataclass(frozen=True)
class EstimateResult:
    """Bisection outcome: point estimate, p-interval, and the full probe trace."""

    plan: TrialPlan
    p_hat: Fraction
    interval: tuple
    probes: tuple

    def to_json(self) -> dict:
        return {
            "n": self.plan.n,
            "pattern": to_graph6(self.plan.pattern),
            "trials": self.plan.trials,
            "seed": self.plan.seed,
            "tolerance": format_fraction(self.plan.tolerance),
            "confidence": self.plan.confidence,
            "p_hat": format_fraction(self.p_hat),
            "interval": [format_fraction(self.interval[0]), format_fraction(self.interval[1])],
            "probes": [
                {
                    "p": format_fraction(pr.p),
                    "successes": pr.successes,
                    "trials": pr.trials,
                    "wilson_low": pr.wilson_low,
                    "wilson_high": pr.wilson_high,
                }
                for pr in self.probes
            ],
        }

    def trace_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["probe", "p", "successes", "trials", "wilson_low", "wilson_high"])
        for idx, pr in enumerate(self.probes):
            writer.writerow(
                [idx, format_fraction(pr.p), pr.successes, pr.trials, pr.wilson_low, pr.wilson_high]
            )
        return buf.getvalue()


def wilson_interval(successes: int, trials: int, confidence: float) -> tuple:
    """Wilson score interval for a binomial proportion."""
    if not 0 <= successes <= trials:
        raise PreconditionError(f"successes={successes} outside [0, {trials}]")
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


def _probe_successes(plan: TrialPlan, p: Fraction, probe_idx: int, threads: int) -> int:
    def one_trial(t: int) -> bool:
        rng = derive_rng(plan.seed, "pc", probe_idx, t)
        return contains(sample_gnp(plan.n, p, rng), plan.pattern)

    flags = parallel_map(one_trial, range(plan.trials), threads)
    return sum(1 for hit in flags if hit)


def estimate_pc(plan: TrialPlan, threads: int = 1) -> EstimateResult:
    """Bisect for the p where containment probability crosses one half.

    Each probe runs ``plan.trials`` independent samples on its own derived
    streams.  Bisection stops once the bracket is narrower than the plan
    tolerance.  The reported interval inverts the per-probe Wilson bounds
    through monotonicity: its low end is the largest probe shown below the
    crossing with confidence, its high end the smallest probe shown above.
    That interval always contains the point estimate.
    """
    lo, hi = Fraction(0), Fraction(1)
    probes = []
    probe_idx = 0
    while hi - lo >= plan.tolerance:
        p = (lo + hi) / 2
        successes = _probe_successes(plan, p, probe_idx, threads)
        w_lo, w_hi = wilson_interval(successes, plan.trials, plan.confidence)
        probes.append(Probe(p, successes, plan.trials, w_lo, w_hi))
        if 2 * successes >= plan.trials:
            hi = p
        else:
            lo = p
        probe_idx += 1
    p_hat = (lo + hi) / 2
    ci_lo = max((pr.p for pr in probes if pr.wilson_high < 0.5), default=Fraction(0))
    ci_hi = min((pr.p for pr in probes if pr.wilson_low > 0.5), default=Fraction(1))
    return EstimateResult(plan=plan, p_hat=p_hat, interval=(ci_lo, ci_hi), probes=tuple(probes))


# -- certified sparse instance generators ------------------------------------------


def _reject_if_dense(h: Graph, n: int, q, family: str) -> Graph:
    check = is_q_sparse(h, n, q)
    if not check.sparse:
        raise PreconditionError(
            f"{family} instance is not q-sparse at n={n}: subgraph "
            f"{check.witness_edges} has expectation below 1",
            witness=check.witness_edges,
        )
    return h


def _repair_edge(g: Graph, witness_edges: tuple) -> tuple:
    # degree measured inside the witness: violations are density driven,
    # so peel where the witness is thickest; ties go to the smallest edge
    deg = {}
    for a, b in witness_edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    return min(witness_edges, key=lambda e: (-(deg[e[0]] + deg[e[1]]), e))


def _gnp_repair(n: int, q, rng: random.Random, params: dict, repair_budget) -> Graph:
    # 7 vertices keep even a complete sample inside the exact-scan edge cap
    nv = int(params.get("vertices", min(n, 7)))
    if not 1 <= nv <= n:
        raise PreconditionError(f"gnp-repair vertex count {nv} outside [1, {n}]")
    boost = Fraction(params.get("boost", 2))
    p0 = value_mul(q, boost)
    if value_cmp(p0, 1) > 0:
        p0 = Fraction(1)
    g = sample_gnp(nv, p0, rng)
    steps = 0
    while True:
        check = is_q_sparse(g, n, q)
        if check.sparse:
            return g
        if repair_budget is not None and steps >= repair_budget:
            raise RuntimeError(
                f"sparsity repair did not converge within {repair_budget} removals"
            )
        drop = _repair_edge(g, check.witness_edges)
        g = Graph(g.n, [e for e in g.edges if e != drop])
        steps += 1


def _clique_union(n: int, rng: random.Random, params: dict) -> Graph:
    sizes = params.get("sizes")
    if sizes is None:
        sizes = [rng.randrange(3, 6) for _ in range(rng.randrange(1, 3))]
    sizes = [int(s) for s in sizes]
    if not sizes or any(s < 1 for s in sizes):
        raise PreconditionError(f"clique sizes {sizes} must all be positive")
    return disjoint_union(*(complete_graph(s) for s in sizes))


def _theta(n: int, rng: random.Random, params: dict) -> Graph:
    a = int(params.get("a", 0)) or rng.randrange(1, 4)
    b = int(params.get("b", 0)) or rng.randrange(2, 5)
    c = int(params.get("c", 0)) or rng.randrange(2, 5)
    return theta_graph(a, b, c)


def _spider(n: int, rng: random.Random, params: dict) -> Graph:
    legs = params.get("legs")
    if legs is None:
        legs = [rng.randrange(1, 4) for _ in range(rng.randrange(2, 5))]
    return spider_graph(legs)


def _path_power(n: int, rng: random.Random, params: dict) -> Graph:
    hi = max(5, min(n, 9))
    vertices = int(params.get("vertices", 0)) or rng.randrange(4, hi)
    power = int(params.get("power", 0)) or rng.randrange(1, 3)
    return path_power_graph(vertices, power)


_STRUCTURED = {
    "clique-union": _clique_union,
    "theta": _theta,
    "spider": _spider,
    "path-power": _path_power,
}


def generate_sparse(
    n: int,
    q,
    family: str,
    rng: random.Random | None = None,
    params: dict | None = None,
    repair_budget: int | None = None,
) -> Graph:
    """Emit a graph certified q-sparse against an n-vertex ambient host.

    gnp-repair samples a boosted random graph on a few vertices, then
    deletes one witness edge at a time until the sparsity check passes.
    The structured families build a parameterized instance and reject it
    outright (with the violating witness) if the check fails.
    """
    if rng is None:
        rng = derive_rng(0, "gen", family)
    params = dict(params or {})
    if family == "gnp-repair":
        return _gnp_repair(n, q, rng, params, repair_budget)
    builder = _STRUCTURED.get(family)
    if builder is None:
        raise PreconditionError(
            f"unknown family {family!r}; choose from {GENERATOR_FAMILIES}"
        )
    return _reject_if_dense(builder(n, rng, params), n, q, family)
