"""Exact subgraph counting.

The generic routine counts labeled embeddings (injections preserving
pattern edges) by backtracking over a BFS ordering of the pattern with
bitset candidate intersection and degree pruning; unlabeled copy counts
divide by the pattern's automorphisms.  Specialized counters for cliques,
cycles, and fixed-endpoint paths follow canonical enumeration orders so
each object is seen exactly once, and must agree with the generic oracle.

All counters take an optional node budget.  When the upfront frontier
estimate (a homomorphism-count DP for forests, a branching product
otherwise) or the running node count exceeds it, counting refuses with
``ResourceGuardError`` rather than returning a truncated value.
"""

import math
import time
from dataclasses import dataclass

from .graphs import Graph, automorphism_count, degeneracy_order
from .util import iter_bits, parallel_map

DEFAULT_NODE_BUDGET = 50_000_000
DEFAULT_COPY_CAP = 200_000


class ResourceGuardError(RuntimeError):
    """Work refused because it would exceed a configured resource budget."""


@dataclass(frozen=True)
class CountResult:
    pattern: str
    count: int
    method: str
    elapsed_s: float | None = None


class _Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit):
        self.limit = limit if limit is not None else DEFAULT_NODE_BUDGET
        self.used = 0

    def spend(self, amount: int = 1):
        self.used += amount
        if self.used > self.limit:
            raise ResourceGuardError(
                f"node budget of {self.limit} exhausted; raise the budget to proceed"
            )


def _match_plan(pattern: Graph) -> list:
    """Steps (vertex, earlier-position neighbor list) in per-component BFS order."""
    seen = set()
    order = []
    for start in range(pattern.n):
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in pattern.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    pos = {v: i for i, v in enumerate(order)}
    plan = []
    for i, v in enumerate(order):
        earlier = [pos[w] for w in pattern.neighbors(v) if pos[w] < i]
        plan.append((v, tuple(sorted(earlier))))
    return plan


def frontier_estimate(host: Graph, pattern: Graph) -> int:
    """Upper bound on backtracking nodes for embedding ``pattern`` in ``host``.

    Forests get a homomorphism-count DP (homs dominate embeddings); other
    patterns get a branching product.  Used only to refuse oversized work,
    never reported as a count.
    """
    if pattern.n == 0:
        return 1
    if pattern.edge_count == pattern.n - len(pattern.components()):
        return max(1, _forest_hom_count(host, pattern))
    est = 1
    dmax = max(1, host.max_degree())
    for _, earlier in _match_plan(pattern):
        est *= dmax if earlier else max(1, host.n)
        if est > 1 << 62:
            break
    return est


def _forest_hom_count(host: Graph, pattern: Graph) -> int:
    total = 1
    for comp in pattern.components():
        root = comp[0]
        parent = {root: None}
        order = [root]
        queue = [root]
        while queue:
            v = queue.pop(0)
            for w in pattern.neighbors(v):
                if w not in parent:
                    parent[w] = v
                    order.append(w)
                    queue.append(w)
        # h[v][w]: homs of the subtree at v sending v to host vertex w
        h = {v: [1] * host.n for v in comp}
        for v in reversed(order):
            for w in pattern.neighbors(v):
                if parent.get(w) == v:
                    for x in range(host.n):
                        h[v][x] *= sum(h[w][y] for y in iter_bits(host.adj[x]))
        total *= sum(h[root])
    return total


def _run_embedding(host: Graph, pattern: Graph, budget, on_hit, threads=1):
    """Shared backtracking core; calls on_hit(assignment) per embedding.

    on_hit returning True stops the search early.  Returns the number of
    embeddings visited.
    """
    plan = _match_plan(pattern)
    k = len(plan)
    degs_p = [pattern.degree(v) for v, _ in plan]
    adj = host.adj
    nmask = host.vertex_mask()
    assign = [0] * k

    def candidates(idx: int, used: int) -> int:
        _, earlier = plan[idx]
        if earlier:
            mask = adj[assign[earlier[0]]]
            for p in earlier[1:]:
                mask &= adj[assign[p]]
            mask &= ~used & nmask
        else:
            mask = ~used & nmask
        need = degs_p[idx]
        if need:
            out = 0
            for w in iter_bits(mask):
                if adj[w].bit_count() >= need:
                    out |= 1 << w
            return out
        return mask

    hits = 0

    def walk(idx: int, used: int) -> bool:
        nonlocal hits
        for w in iter_bits(candidates(idx, used)):
            budget.spend()
            assign[idx] = w
            if idx + 1 == k:
                hits += 1
                if on_hit(tuple(assign)):
                    return True
            elif walk(idx + 1, used | 1 << w):
                return True
        return False

    if k == 0:
        return 0
    if threads > 1 and k > 1:
        roots = list(iter_bits(candidates(0, 0)))

        def from_root(w):
            sub_budget = _Budget(budget.limit)
            local_hits = 0
            local_assign = [0] * k
            local_assign[0] = w

            def cand(idx, used):
                _, earlier = plan[idx]
                if earlier:
                    mask = adj[local_assign[earlier[0]]]
                    for p in earlier[1:]:
                        mask &= adj[local_assign[p]]
                    mask &= ~used & nmask
                else:
                    mask = ~used & nmask
                need = degs_p[idx]
                if need:
                    out = 0
                    for x in iter_bits(mask):
                        if adj[x].bit_count() >= need:
                            out |= 1 << x
                    return out
                return mask

            def go(idx, used):
                nonlocal local_hits
                for x in iter_bits(cand(idx, used)):
                    sub_budget.spend()
                    local_assign[idx] = x
                    if idx + 1 == k:
                        local_hits += 1
                        on_hit(tuple(local_assign))
                    else:
                        go(idx + 1, used | 1 << x)

            sub_budget.spend()
            go(1, 1 << w)
            return local_hits

        per_root = parallel_map(from_root, roots, threads)
        return sum(per_root)

    walk(0, 0)
    return hits


def count_labeled(
    host: Graph, pattern: Graph, node_budget=None, threads: int = 1
) -> int:
    """Number of labeled embeddings of ``pattern`` into ``host``."""
    if pattern.n == 0:
        raise ValueError("pattern needs at least one vertex")
    if pattern.n > host.n:
        return 0
    budget = _Budget(node_budget)
    if frontier_estimate(host, pattern) > budget.limit:
        raise ResourceGuardError(
            f"frontier estimate exceeds node budget {budget.limit}"
        )
    return _run_embedding(host, pattern, budget, lambda a: False, threads=threads)


def iter_labeled(host: Graph, pattern: Graph, node_budget=None):
    """Yield each labeled embedding as a tuple indexed by pattern vertex."""
    if pattern.n == 0:
        raise ValueError("pattern needs at least one vertex")
    if pattern.n > host.n:
        return
    budget = _Budget(node_budget)
    plan = _match_plan(pattern)
    out = []

    def collect(assign):
        by_vertex = [0] * pattern.n
        for idx, (v, _) in enumerate(plan):
            by_vertex[v] = assign[idx]
        out.append(tuple(by_vertex))
        return False

    _run_embedding(host, pattern, budget, collect)
    yield from out


def contains(host: Graph, pattern: Graph, node_budget=None) -> bool:
    """Does ``host`` contain a (not necessarily induced) copy of ``pattern``?"""
    if pattern.n == 0:
        raise ValueError("pattern needs at least one vertex")
    if pattern.n > host.n:
        return False
    if pattern.edge_count > host.edge_count:
        return False
    budget = _Budget(node_budget)
    return _run_embedding(host, pattern, budget, lambda a: True) > 0


def count_copies(host: Graph, pattern: Graph, node_budget=None, threads: int = 1) -> int:
    """Number of distinct subgraphs of ``host`` isomorphic to ``pattern``.

    Labeled embeddings divided by pattern automorphisms; this is the generic
    oracle the specialized counters are checked against.
    """
    labeled = count_labeled(host, pattern, node_budget=node_budget, threads=threads)
    aut = automorphism_count(pattern)
    if labeled % aut:
        raise AssertionError("labeled count not divisible by automorphisms")
    return labeled // aut


# -- specialized counters -----------------------------------------------------


def count_cliques(host: Graph, r: int, node_budget=None, threads: int = 1) -> int:
    """Number of r-cliques, by ascending-id recursion after degeneracy relabeling."""
    if r < 1:
        raise ValueError("clique order must be >= 1")
    if r == 1:
        return host.n
    if r > host.n:
        return 0
    order = degeneracy_order(host)
    perm = [0] * host.n
    for idx, v in enumerate(order):
        perm[v] = idx
    rel = host.relabel(perm)
    adj = rel.adj
    budget = _Budget(node_budget)

    def rec(mask: int, t: int) -> int:
        if t == 1:
            return mask.bit_count()
        total = 0
        m = mask
        while m:
            low = m & -m
            u = low.bit_length() - 1
            m ^= low
            budget.spend()
            if (m & adj[u]).bit_count() >= t - 1:
                total += rec(m & adj[u], t - 1)
        return total

    if threads > 1:
        full = rel.vertex_mask()
        roots = list(range(rel.n))

        def from_root(u):
            b = _Budget(budget.limit)

            def rec_local(mask, t):
                if t == 1:
                    return mask.bit_count()
                total = 0
                m = mask
                while m:
                    low = m & -m
                    w = low.bit_length() - 1
                    m ^= low
                    b.spend()
                    if (m & adj[w]).bit_count() >= t - 1:
                        total += rec_local(m & adj[w], t - 1)
                return total

            higher = full & ~((1 << (u + 1)) - 1)
            return rec_local(adj[u] & higher, r - 1)

        return sum(parallel_map(from_root, roots, threads))
    return rec(rel.vertex_mask(), r)


def count_cycles(host: Graph, k: int, node_budget=None, threads: int = 1) -> int:
    """Number of k-cycles; each cycle seen once, rooted at its minimum vertex
    and oriented toward the smaller of the root's two cycle neighbors."""
    if k < 3:
        raise ValueError("cycle length must be >= 3")
    if k > host.n:
        return 0
    adj = host.adj
    budget = _Budget(node_budget)

    def from_root(r: int) -> int:
        higher = host.vertex_mask() & ~((1 << (r + 1)) - 1)
        total = 0

        def dfs(u: int, visited: int, depth: int, first: int) -> int:
            budget.spend()
            if depth == k - 1:
                return 1 if (adj[u] >> r & 1) and first < u else 0
            got = 0
            for w in iter_bits(adj[u] & higher & ~visited):
                got += dfs(w, visited | 1 << w, depth + 1, first)
            return got

        for a in iter_bits(adj[r] & higher):
            total += dfs(a, 1 << a, 1, a)
        return total

    return sum(parallel_map(from_root, range(host.n), threads))


def count_xy_paths(host: Graph, x: int, y: int, edges: int, node_budget=None) -> int:
    """Simple paths with exactly ``edges`` edges from x to y."""
    if x == y:
        raise ValueError("path endpoints must differ")
    if edges < 1:
        raise ValueError("path length must be >= 1 edge")
    if not (0 <= x < host.n and 0 <= y < host.n):
        raise ValueError("endpoint out of range")
    adj = host.adj
    budget = _Budget(node_budget)

    def dfs(u: int, visited: int, left: int) -> int:
        budget.spend()
        if left == 0:
            return 1 if u == y else 0
        total = 0
        for w in iter_bits(adj[u] & ~visited):
            if w == y and left > 1:
                continue
            total += dfs(w, visited | 1 << w, left - 1)
        return total

    return dfs(x, 1 << x, edges)


def max_xy_paths(host: Graph, edges: int, node_budget=None) -> tuple:
    """Max over distinct vertex pairs of the x-y path count; returns (count, (x, y)).

    Ties resolve to the lexicographically first pair.
    """
    if host.n < 2:
        raise ValueError("need at least two vertices for an endpoint pair")
    best = -1
    best_pair = (0, 1)
    for x in range(host.n):
        for y in range(x + 1, host.n):
            got = count_xy_paths(host, x, y, edges, node_budget=node_budget)
            if got > best:
                best = got
                best_pair = (x, y)
    return best, best_pair


# -- edge-disjoint packing ------------------------------------------------------


def copies_as_edge_masks(
    host: Graph, pattern: Graph, copy_cap=None, node_budget=None
) -> list:
    """Distinct copies of ``pattern`` in ``host`` as bitmasks over host edge indices."""
    if pattern.edge_count == 0:
        raise ValueError("packing needs a pattern with at least one edge")
    cap = copy_cap if copy_cap is not None else DEFAULT_COPY_CAP
    edge_index = {e: i for i, e in enumerate(host.edges)}
    masks = set()
    for assign in iter_labeled(host, pattern, node_budget=node_budget):
        m = 0
        for a, b in pattern.edges:
            u, v = assign[a], assign[b]
            m |= 1 << edge_index[(min(u, v), max(u, v))]
        masks.add(m)
        if len(masks) > cap:
            raise ResourceGuardError(
                f"copy list exceeds cap {cap}; raise the cap to proceed"
            )
    return sorted(masks)


def packing_number(
    host: Graph, pattern: Graph, mode: str = "exact", copy_cap=None, node_budget=None
) -> int:
    """Maximum number of pairwise edge-disjoint copies of ``pattern`` in ``host``.

    mode="exact" runs branch and bound over the copy list with the
    free-edges/e_J bound; mode="greedy" scans copies in deterministic order
    and reports the (lower-bound) greedy packing size.
    """
    if mode not in ("exact", "greedy"):
        raise ValueError("mode must be 'exact' or 'greedy'")
    copies = copies_as_edge_masks(
        host, pattern, copy_cap=copy_cap, node_budget=node_budget
    )
    if not copies:
        return 0
    if mode == "greedy":
        used = 0
        taken = 0
        for m in copies:
            if not m & used:
                used |= m
                taken += 1
        return taken
    e_pattern = pattern.edge_count
    total_edges = host.edge_count
    best = 0

    def bnb(idx: int, used: int, chosen: int):
        nonlocal best
        if chosen > best:
            best = chosen
        free = total_edges - used.bit_count()
        if chosen + free // e_pattern <= best:
            return
        if chosen + len(copies) - idx <= best:
            return
        for i in range(idx, len(copies)):
            if not copies[i] & used:
                bnb(i + 1, used | copies[i], chosen + 1)

    bnb(0, 0, 0)
    return best
