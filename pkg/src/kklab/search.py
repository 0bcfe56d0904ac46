"""Extremal search over q-sparse hosts for the scale constant.

The objective is required_L(H, F, n, q): how far the pattern expectation at
q must be scaled before it matches the copy count of F inside H.  Within a
run, n, q, and F are fixed, so the expectation E is one constant and the
score orders exactly like the copy count N.  Two engines live here: an
exhaustive sweep over the small-graph catalog (the oracle) and a simulated
annealer over edge toggles on a fixed vertex budget (the explorer).  Both
keep every reported host certified q-sparse.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .catalog import graphs_on
from .counting import count_cliques, count_copies, count_cycles
from .exact import (
    DEFAULT_DIGITS,
    decimal_enclosure,
    value_cmp,
    value_div,
    value_float,
    value_mul,
    value_pow,
    value_root,
    value_to_json,
)
from .expectation import (
    DEFAULT_EDGE_CAP,
    EdgeCapError,
    _aut_of_subset,
    _gray_steps,
    _power_table,
    _subset_of_mask,
    expected_copies,
    required_L,
    safe_edge_bound,
    violation_scan,
)
from .graphs import (
    Graph,
    automorphism_count,
    canonical_form,
    max_density,
    parse_graph6,
    to_graph6,
)
from .montecarlo import derive_rng
from .util import PreconditionError, parallel_map

DEFAULT_HOST_CAP = 12
DEFAULT_TOP_K = 5
DEFAULT_COOLING = 0.999
SWEEP_VERTEX_CAP = 8
WARMUP_DOWNHILL = 32


def score_pair_cmp(pair_a: tuple, pair_b: tuple, pattern_edges: int) -> int:
    """Order two (copies, expectation) score pairs without extracting roots.

    The scores are (N/E)^(1/e); comparing N_1^e * E_2 against N_2^e * E_1
    is exact.  With a shared expectation this collapses to comparing copy
    counts, which is the hot-loop case.
    """
    n1, e1 = pair_a
    n2, e2 = pair_b
    if e1 is e2 or value_cmp(e1, e2) == 0:
        return (n1 > n2) - (n1 < n2)
    lhs = value_mul(Fraction(n1**pattern_edges), e2)
    rhs = value_mul(Fraction(n2**pattern_edges), e1)
    return value_cmp(lhs, rhs)


def _require_feasible(n: int, q) -> None:
    # a single edge is the least demanding nonempty host: C(n,2) q >= 1
    if value_cmp(value_mul(Fraction(math.comb(n, 2)), q), 1) < 0:
        raise PreconditionError(
            f"no nonempty graph is q-sparse at n={n}: a single edge already has "
            f"expectation C({n},2)*q below 1",
            witness=((0, 1),),
        )


def _check_pattern(F: Graph) -> None:
    if F.edge_count == 0:
        raise PreconditionError("pattern needs at least one edge")


def _is_connected(g: Graph) -> bool:
    if g.n == 0:
        return False
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in range(g.n):
            if frontier >> v & 1:
                nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen.bit_count() == g.n


def _make_counter(F: Graph):
    """Route clique and cycle patterns to their specialized counters."""
    if F.n >= 2 and F.edge_count == math.comb(F.n, 2):
        r = F.n
        return lambda H: count_cliques(H, r)
    if (
        F.n >= 3
        and F.edge_count == F.n
        and all(d == 2 for d in F.degrees())
        and _is_connected(F)
    ):
        k = F.n
        return lambda H: count_cycles(H, k)
    return lambda H: count_copies(H, F)


def _induced_live(g: Graph, verts: tuple) -> Graph | None:
    """Induced subgraph on verts with isolated vertices dropped."""
    vs = set(verts)
    edges = [e for e in g.edges if e[0] in vs and e[1] in vs]
    if not edges:
        return None
    live = sorted({x for e in edges for x in e})
    remap = {x: i for i, x in enumerate(live)}
    return Graph(len(live), [(remap[a], remap[b]) for a, b in edges])


def _quick_violation(g: Graph, n: int, q) -> bool:
    """Cheap sound disproof: test the full edge set and the densest part."""
    seen = set()
    for verts in (tuple(range(g.n)), tuple(max_density(g).witness)):
        sub = _induced_live(g, verts)
        if sub is None:
            continue
        key = (sub.n, sub.edges)
        if key in seen:
            continue
        seen.add(key)
        expectation = value_mul(
            Fraction(math.perm(n, sub.n), automorphism_count(sub)),
            value_pow(q, sub.edge_count),
        )
        if value_cmp(expectation, 1) < 0:
            return True
    return False


def certified_sparse(g: Graph, n: int, q, edge_cap: int = DEFAULT_EDGE_CAP) -> bool:
    """Sparsity verdict that stays cheap on easy instances.

    Order of attack: crude count bound (handles q near 1 at any size),
    quick densest-part disproof for larger graphs, then the exact
    early-exit subset scan.  Graphs past the scan cap whose quick disproof
    finds nothing are refused rather than guessed at.
    """
    m = g.edge_count
    if m == 0:
        return True
    if safe_edge_bound(n, q, min(g.n, 2 * m), m) >= m:
        return True
    if m > 15 and _quick_violation(g, n, q):
        return False
    if m > edge_cap:
        raise EdgeCapError(
            f"cannot certify {m} edges: exact scan capped at {edge_cap} and the "
            "quick disproof found no violation"
        )
    verdict, _, _ = violation_scan(g, n, q, early_exit=True)
    return verdict


def _strip_isolates(g: Graph) -> Graph:
    keep = [v for v in range(g.n) if g.adj[v]]
    if not keep:
        return Graph(1, [])
    remap = {v: i for i, v in enumerate(keep)}
    return Graph(len(keep), [(remap[a], remap[b]) for a, b in g.edges])


# -- exhaustive sweep ---------------------------------------------------------------


@dataclass(frozen=True)
class SweepResult:
    """Exact argmax of required_L over the cataloged sparse graphs."""

    graph: Graph
    copies: int
    score: object
    enclosure: tuple
    expectation: object
    pattern_edges: int
    candidates: int
    sparse_candidates: int

    def to_json(self) -> dict:
        return {
            "graph6": to_graph6(self.graph),
            "score_enclosure": list(self.enclosure),
            "N": str(self.copies),
            "E_q": value_to_json(self.expectation),
            "candidates": self.candidates,
            "sparse_candidates": self.sparse_candidates,
        }


def exhaustive_sweep(
    n: int,
    q,
    F: Graph,
    v_cap: int = 6,
    threads: int = 1,
    edge_cap: int = DEFAULT_EDGE_CAP,
    digits: int = DEFAULT_DIGITS,
) -> SweepResult:
    """Scan every graph on at most v_cap vertices, keep the q-sparse ones,
    and return the exact maximizer of required_L with its score enclosure.

    Ties in the copy count go to the smallest graph6 string, so reruns and
    the annealer agree on one canonical winner.
    """
    if not 1 <= v_cap <= SWEEP_VERTEX_CAP:
        raise PreconditionError(f"v_cap={v_cap} outside [1, {SWEEP_VERTEX_CAP}]")
    if v_cap > n:
        raise PreconditionError(f"v_cap={v_cap} exceeds the ambient n={n}")
    _check_pattern(F)
    _require_feasible(n, q)
    counter = _make_counter(F)

    def examine(g: Graph):
        if not certified_sparse(g, n, q, edge_cap):
            return None
        return (counter(g), to_graph6(g), g)

    candidates = [g for v in range(1, v_cap + 1) for g in graphs_on(v)]
    results = parallel_map(examine, candidates, threads)
    best = None
    sparse_count = 0
    for row in results:
        if row is None:
            continue
        sparse_count += 1
        if (
            best is None
            or row[0] > best[0]
            or (row[0] == best[0] and row[1] < best[1])
        ):
            best = row
    # feasibility guarantees at least the single edge survives
    copies, _, graph = best
    rl = required_L(graph, F, n, q, digits=digits, skip_sparsity_check=True)
    return SweepResult(
        graph=graph,
        copies=copies,
        score=rl.value,
        enclosure=rl.enclosure,
        expectation=rl.expectation,
        pattern_edges=F.edge_count,
        candidates=len(candidates),
        sparse_candidates=sparse_count,
    )


# -- simulated annealing ------------------------------------------------------------


@dataclass
class SearchState:
    """Mutable annealer state for one chain; the current host stays q-sparse."""

    graph: Graph
    copies: int
    best_graph: Graph
    best_copies: int
    temperature: float | None
    moves: int
    rng: random.Random
    expectation: object = None
    pattern_edges: int = 0

    def score_enclosure(self, digits: int = DEFAULT_DIGITS) -> tuple:
        if self.copies == 0:
            return ("0", "0")
        ratio = value_div(Fraction(self.copies), self.expectation)
        return decimal_enclosure(value_root(ratio, self.pattern_edges), digits)


@dataclass(frozen=True)
class LeaderboardEntry:
    graph: Graph
    copies: int
    score: object
    enclosure: tuple
    expectation: object
    moves: int
    seed: int
    chain: int

    def to_json(self) -> dict:
        return {
            "graph6": to_graph6(self.graph),
            "score_enclosure": list(self.enclosure),
            "N": str(self.copies),
            "E_q": value_to_json(self.expectation),
            "moves": self.moves,
            "seed": self.seed,
            "chain": self.chain,
        }


@dataclass(frozen=True)
class SearchResult:
    entries: tuple
    metadata: dict

    def to_json(self) -> dict:
        return {
            "leaderboard": [entry.to_json() for entry in self.entries],
            "metadata": self.metadata,
        }


def _witness_drop(witness_edges: tuple) -> tuple:
    # same heuristic as the generator repair: peel where the witness is thickest
    deg: dict = {}
    for a, b in witness_edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    return min(witness_edges, key=lambda e: (-(deg[e[0]] + deg[e[1]]), e))


class _SparsityOracle:
    """Move-loop sparsity scans with verdicts memoized per (v, e, aut).

    A subset's expectation perm(n,v)/aut * q^e depends only on that triple,
    and q is fixed for the whole run, so the exact root comparisons happen
    once per triple instead of once per subset visit.
    """

    __slots__ = ("n", "powers", "buckets", "classes")

    def __init__(self, n: int, q, max_edges: int):
        self.n = n
        self.powers = _power_table(q, max_edges)
        self.buckets: dict = {}
        self.classes: dict = {}

    def bucket_ok(self, v: int, e: int) -> bool:
        key = (v, e)
        hit = self.buckets.get(key)
        if hit is None:
            hit = (
                value_cmp(
                    value_mul(Fraction(math.comb(self.n, v)), self.powers[e]), 1
                )
                >= 0
            )
            self.buckets[key] = hit
        return hit

    def class_ok(self, v: int, e: int, aut: int) -> bool:
        key = (v, e, aut)
        hit = self.classes.get(key)
        if hit is None:
            hit = (
                value_cmp(
                    value_mul(Fraction(math.perm(self.n, v), aut), self.powers[e]), 1
                )
                >= 0
            )
            self.classes[key] = hit
        return hit

    def first_violation(self, probe: Graph, required_idx: int) -> tuple | None:
        """First violating edge subset through the given edge, in scan order."""
        req_bit = 1 << required_idx
        for mask, v, e in _gray_steps(probe):
            if not mask & req_bit:
                continue
            if self.bucket_ok(v, e):
                continue
            sub, vm = _subset_of_mask(probe, mask)
            aut, _ = _aut_of_subset(sub, vm, v)
            if self.class_ok(v, e, aut):
                continue
            return tuple(sub)
        return None


def _chain_worker(args):
    (n, q, F, counter, budget, seed, chain_idx, host_cap, top_k, cooling,
     edge_cap, safe_edges, e_float, report_strippable) = args
    rng = derive_rng(seed, "search", chain_idx)
    pairs = [(i, j) for i in range(host_cap) for j in range(i + 1, host_cap)]
    pair_bit = {pair: 1 << idx for idx, pair in enumerate(pairs)}
    pattern_edges = F.edge_count

    def score_float(copies: int) -> float:
        if copies == 0:
            return 0.0
        return (copies / e_float) ** (1.0 / pattern_edges)

    count_cache = {0: 0}

    def counted(graph: Graph, mask: int) -> int:
        hit = count_cache.get(mask)
        if hit is None:
            hit = counter(graph)
            count_cache[mask] = hit
        return hit

    # addition outcomes are deterministic in the candidate, so memoize:
    # mask of H+uv -> frozenset of repaired edges, or None when rejected
    add_cache: dict = {}
    oracle = _SparsityOracle(n, q, math.comb(host_cap, 2))

    def settle_addition(edges: set, toggled: tuple):
        """(edges, None) on success, else (None, rejection reason)."""
        cand = set(edges)
        while True:
            if len(cand) <= safe_edges:
                return frozenset(cand), None
            if len(cand) > edge_cap:
                return None, "cap"
            ordered = sorted(cand)
            probe = Graph(host_cap, ordered)
            witness = oracle.first_violation(probe, ordered.index(toggled))
            if witness is None:
                return frozenset(cand), None
            drop = _witness_drop(witness)
            if drop == toggled:
                return None, "untoggle"
            cand.discard(drop)

    records: dict = {}

    def record(graph: Graph, copies: int, moves: int) -> None:
        shape = _strip_isolates(graph) if report_strippable else graph
        g6 = to_graph6(canonical_form(shape))
        prev = records.get(g6)
        if prev is None or copies > prev[0]:
            records[g6] = (copies, moves, g6)
        if len(records) > 8 * top_k:
            kept = sorted(records.values(), key=lambda r: (-r[0], r[2]))[: 4 * top_k]
            records.clear()
            records.update({r[2]: r for r in kept})

    current = Graph(host_cap, [])
    cur_mask = 0
    cur_copies = 0
    cur_edges: frozenset = frozenset()
    best_copies = 0
    best_graph = current
    record(current, 0, 0)

    temperature = None
    calibrated_t0 = None
    warmup: list = []
    accepted = 0
    audited = 0
    repaired_moves = 0
    repair_rejections = 0
    unverifiable = 0
    record_gate = 0

    for step in range(1, budget + 1):
        toggled = pairs[rng.randrange(len(pairs))]
        if toggled in cur_edges:
            cand_edges = cur_edges - {toggled}
            cand_mask = cur_mask ^ pair_bit[toggled]
        else:
            key = cur_mask | pair_bit[toggled]
            if key in add_cache:
                settled, why = add_cache[key]
            else:
                settled, why = settle_addition(set(cur_edges) | {toggled}, toggled)
                add_cache[key] = (settled, why)
            if settled is None:
                if why == "cap":
                    unverifiable += 1
                else:
                    repair_rejections += 1
                continue
            cand_edges = settled
            if len(cand_edges) != len(cur_edges) + 1:
                repaired_moves += 1
            cand_mask = 0
            for e in cand_edges:
                cand_mask |= pair_bit[e]
        cand = Graph(host_cap, sorted(cand_edges))
        cand_copies = counted(cand, cand_mask)
        delta = score_float(cand_copies) - score_float(cur_copies)
        if delta >= 0:
            accept = True
        elif temperature is None:
            warmup.append(-delta)
            accept = rng.random() < 0.5
            if len(warmup) >= WARMUP_DOWNHILL:
                mid = sorted(warmup)[len(warmup) // 2]
                calibrated_t0 = mid / math.log(2) if mid > 0 else 1.0
                temperature = calibrated_t0
        else:
            accept = rng.random() < math.exp(delta / temperature)
        if not accept:
            continue
        current, cur_mask, cur_copies, cur_edges = cand, cand_mask, cand_copies, cand_edges
        accepted += 1
        if temperature is not None:
            temperature *= cooling
        if accepted % 100 == 0:
            audited += 1
            if not certified_sparse(current, n, q, edge_cap):
                raise RuntimeError(
                    f"audit failed: accepted host is not q-sparse after move {step}"
                )
        if cur_copies > best_copies:
            best_copies = cur_copies
            best_graph = current
        if cur_copies >= record_gate:
            record(current, cur_copies, step)
            if len(records) >= top_k:
                record_gate = sorted(
                    (r[0] for r in records.values()), reverse=True
                )[top_k - 1]

    meta = {
        "chain": chain_idx,
        "budget": budget,
        "accepted": accepted,
        "audited": audited,
        "repaired_moves": repaired_moves,
        "repair_rejections": repair_rejections,
        "unverifiable_rejections": unverifiable,
        "initial_temperature": calibrated_t0,
        "final_temperature": temperature,
    }
    rows = sorted(records.values(), key=lambda r: (-r[0], r[2]))[: 2 * top_k]
    return rows, meta


def extremal_search(
    n: int,
    q,
    F: Graph,
    budget: int,
    seed: int,
    host_cap: int | None = None,
    chains: int = 1,
    top_k: int = DEFAULT_TOP_K,
    threads: int = 1,
    cooling: float = DEFAULT_COOLING,
    edge_cap: int = DEFAULT_EDGE_CAP,
    digits: int = DEFAULT_DIGITS,
) -> SearchResult:
    """Annealing search for sparse hosts with many pattern copies.

    Moves toggle one vertex pair on a host of host_cap labeled vertices.
    Deletions keep sparsity automatically (subsets only shrink); additions
    are scanned for violations through the new edge and repaired by edge
    removal, or rejected when the repair would undo the toggle.  During
    warmup, downhill moves accept at one half; the initial temperature is
    then set to the median warmup loss so that acceptance continues near
    one half, and cooling is geometric per accepted move.  Identical
    arguments and seed give an identical leaderboard at any thread count.
    """
    _check_pattern(F)
    if budget < 0:
        raise PreconditionError(f"budget={budget} must be nonnegative")
    if chains < 1:
        raise PreconditionError(f"chains={chains} must be at least 1")
    if host_cap is None:
        host_cap = min(DEFAULT_HOST_CAP, n)
    if not 2 <= host_cap <= n:
        raise PreconditionError(f"host_cap={host_cap} outside [2, n={n}]")
    if F.n > host_cap:
        raise PreconditionError(
            f"pattern on {F.n} vertices can never embed under host_cap={host_cap}"
        )
    _require_feasible(n, q)
    expectation = expected_copies(n, q, F)
    e_float = value_float(expectation)
    counter = _make_counter(F)
    safe_edges = safe_edge_bound(n, q, host_cap, math.comb(host_cap, 2))
    report_strippable = all(F.adj[v] for v in range(F.n))

    base, extra = divmod(budget, chains)
    tasks = [
        (n, q, F, counter, base + (1 if idx < extra else 0), seed, idx, host_cap,
         top_k, cooling, edge_cap, safe_edges, e_float, report_strippable)
        for idx in range(chains)
    ]
    outcomes = parallel_map(_chain_worker, tasks, threads)

    merged: dict = {}
    for chain_idx, (rows, _) in enumerate(outcomes):
        for copies, moves, g6 in rows:
            prev = merged.get(g6)
            if prev is None or copies > prev[0] or (
                copies == prev[0] and (chain_idx, moves) < prev[1:]
            ):
                merged[g6] = (copies, chain_idx, moves)
    ranked = sorted(merged.items(), key=lambda kv: (-kv[1][0], kv[0]))[:top_k]

    entries = []
    for g6, (copies, chain_idx, moves) in ranked:
        graph = parse_graph6(g6)
        rl = required_L(graph, F, n, q, digits=digits, skip_sparsity_check=True)
        entries.append(
            LeaderboardEntry(
                graph=graph,
                copies=copies,
                score=rl.value,
                enclosure=rl.enclosure,
                expectation=expectation,
                moves=moves,
                seed=seed,
                chain=chain_idx,
            )
        )
    metadata = {
        "n": n,
        "q": value_to_json(q),
        "pattern": to_graph6(F),
        "budget": budget,
        "seed": seed,
        "chains": chains,
        "host_cap": host_cap,
        "top_k": top_k,
        "cooling": cooling,
        "edge_cap": edge_cap,
        "safe_edge_bound": safe_edges,
        "expectation": value_to_json(expectation),
        "chain_stats": [meta for _, meta in outcomes],
    }
    return SearchResult(entries=tuple(entries), metadata=metadata)
