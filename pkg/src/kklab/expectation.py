"""Expectations over G(n,p) and exact sparsity thresholds.

The expected copy count of a pattern J in G(n,p) is
(n)_{v_J}/aut(J) * p^{e_J}.  A host H is q-sparse at scale n when every
subgraph I of H with an edge has expected count at least 1; the least such
q is the maximum over I of N(K_n,I)^(-1/e_I).  The expectation threshold
p_E uses target 1/2 instead of 1 and shares the same scan.

Subgraphs are realized as edge subsets with isolated vertices dropped:
adding an isolated vertex multiplies N(K_n,I) by a factor >= 1 (more
placements), so it never attains the threshold maximum and never creates
a violation that the stripped subgraph lacks.  Thresholds depend on a
subset only through (v_I, e_I, aut_I), so the scan aggregates subsets
into classes keyed by that triple.  All verdicts are exact: rational q
uses pure rational arithmetic (N * q^e vs 1), root-shaped q cross-powers
integers, and no comparison ever goes through floating point.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .counting import count_copies
from .exact import (
    DEFAULT_DIGITS,
    ExactValue,
    cmp_with_e_power,
    decimal_enclosure,
    make_value,
    value_cmp,
    value_div,
    value_mul,
    value_pow,
    value_root,
)
from .graphs import Graph, automorphism_count, to_graph6
from .util import PreconditionError, parallel_map

DEFAULT_EDGE_CAP = 24
DEFAULT_HEURISTIC_VERTEX_CAP = 8


class EdgeCapError(RuntimeError):
    """Exact subset scan refused; use heuristic mode or raise the cap."""


# -- model parameter bundle ----------------------------------------------------


@dataclass(frozen=True)
class ModelParams:
    """Ambient model quantities: n, edge probabilities q <= p, ratio L.

    d = n*p and eps = 1/L are carried for the decomposition machinery; the
    exponent c with n*q = n^c is display-only (never used in exact checks)
    and is absent when q <= 1/n.
    """

    n: int
    q: ExactValue | None = None
    p: ExactValue | None = None
    L: Fraction | None = None
    d: ExactValue | None = None
    eps: Fraction | None = None
    c: float | None = None

    @staticmethod
    def create(n: int, q=None, p=None, L=None) -> "ModelParams":
        if n < 1:
            raise PreconditionError("n must be a positive integer")
        if L is not None:
            L = Fraction(L)
            if L <= 0:
                raise PreconditionError("L must be positive")
        if q is not None and p is not None and L is not None:
            if value_cmp(p, value_mul(L, q)) != 0:
                raise PreconditionError("inconsistent parameters: p != L*q")
        elif q is not None and L is not None:
            p = value_mul(L, q)
        elif q is not None and p is not None:
            pass
        for name, val in (("q", q), ("p", p)):
            if val is not None and not (
                value_cmp(val, 0) >= 0 and value_cmp(val, 1) <= 0
            ):
                raise PreconditionError(f"{name} must lie in [0, 1]")
        if q is not None and p is not None and value_cmp(q, p) > 0:
            raise PreconditionError("q must not exceed p")
        d = value_mul(Fraction(n), p) if p is not None else None
        eps = 1 / L if L is not None else None
        c = None
        if q is not None and n > 1 and value_cmp(q, Fraction(1, n)) > 0:
            from .exact import value_float

            c = math.log2(n * value_float(q)) / math.log2(n)
        return ModelParams(n=n, q=q, p=p, L=L, d=d, eps=eps, c=c)


# -- expectation formulas --------------------------------------------------------


def _check_probability(p):
    if not (value_cmp(p, 0) >= 0 and value_cmp(p, 1) <= 0):
        raise PreconditionError("probability must lie in [0, 1]")


def expected_copies(n: int, p, J: Graph) -> ExactValue:
    """Exact expected number of copies of J in G(n,p)."""
    _check_probability(p)
    if J.n == 0:
        raise PreconditionError("pattern needs at least one vertex")
    if J.n > n:
        return Fraction(0)
    base = Fraction(math.perm(n, J.n), automorphism_count(J))
    if J.edge_count == 0:
        return base
    return value_mul(base, value_pow(p, J.edge_count))


def expected_labeled(n: int, p, J: Graph) -> ExactValue:
    """Exact expected number of labeled embeddings of J into G(n,p)."""
    _check_probability(p)
    if J.n == 0:
        raise PreconditionError("pattern needs at least one vertex")
    if J.n > n:
        return Fraction(0)
    base = Fraction(math.perm(n, J.n))
    if J.edge_count == 0:
        return base
    return value_mul(base, value_pow(p, J.edge_count))


def expected_cliques(n: int, r: int, p) -> ExactValue:
    """Closed form C(n,r) * p^C(r,2); must agree with the generic formula."""
    _check_probability(p)
    if r < 1:
        raise PreconditionError("clique order must be >= 1")
    if r > n:
        return Fraction(0)
    base = Fraction(math.comb(n, r))
    ex = math.comb(r, 2)
    return base if ex == 0 else value_mul(base, value_pow(p, ex))


def expected_cycles(n: int, k: int, p) -> ExactValue:
    """Closed form (n)_k/(2k) * p^k; must agree with the generic formula."""
    _check_probability(p)
    if k < 3:
        raise PreconditionError("cycle length must be >= 3")
    if k > n:
        return Fraction(0)
    return value_mul(Fraction(math.perm(n, k), 2 * k), value_pow(p, k))


def expected_tree_labeled(n: int, j: int, p) -> ExactValue:
    """Closed form (n)_{j+1} * p^j for labeled embeddings of any tree with j edges."""
    _check_probability(p)
    if j < 0:
        raise PreconditionError("edge count must be >= 0")
    if j + 1 > n:
        return Fraction(0)
    base = Fraction(math.perm(n, j + 1))
    return base if j == 0 else value_mul(base, value_pow(p, j))


# -- subgraph class scan -----------------------------------------------------------

_AUT_MEMO: dict = {}
_AUT_MEMO_CAP = 500_000


def _normalize_subset(sub_edges, vmask: int):
    """Relabel spanned vertices to 0..v-1; edge order is preserved."""
    relabel = {}
    nxt = 0
    m = vmask
    while m:
        low = m & -m
        relabel[low.bit_length() - 1] = nxt
        nxt += 1
        m ^= low
    return tuple((relabel[a], relabel[b]) for a, b in sub_edges)


def _aut_of_subset(sub_edges, vmask: int, v: int) -> tuple:
    """(aut count, normalized edge tuple) with a global memo."""
    norm = _normalize_subset(sub_edges, vmask)
    key = (v, norm)
    got = _AUT_MEMO.get(key)
    if got is None:
        if len(_AUT_MEMO) > _AUT_MEMO_CAP:
            _AUT_MEMO.clear()
        got = automorphism_count(Graph(v, list(norm)))
        _AUT_MEMO[key] = got
    return got, norm


def _scan_block(H: Graph, lo: int, hi: int) -> dict:
    """Classes (v, e, aut) -> [subset count, lex-min edge tuple] over masks [lo, hi)."""
    edges = H.edges
    emasks = [(1 << a) | (1 << b) for a, b in edges]
    classes = {}
    for mask in range(lo, hi):
        mm = mask
        vm = 0
        sub = []
        while mm:
            low = mm & -mm
            i = low.bit_length() - 1
            mm ^= low
            sub.append(edges[i])
            vm |= emasks[i]
        if not sub:
            continue
        v = vm.bit_count()
        aut, _ = _aut_of_subset(sub, vm, v)
        key = (v, len(sub), aut)
        tup = tuple(sub)
        cur = classes.get(key)
        if cur is None:
            classes[key] = [1, tup]
        else:
            cur[0] += 1
            if tup < cur[1]:
                cur[1] = tup
    return classes


def _merge_classes(blocks) -> dict:
    out = {}
    for block in blocks:
        for key, (count, tup) in block.items():
            cur = out.get(key)
            if cur is None:
                out[key] = [count, tup]
            else:
                cur[0] += count
                if tup < cur[1]:
                    cur[1] = tup
    return out


def scan_subgraph_classes(H: Graph, threads: int = 1) -> dict:
    """All nonempty edge subsets of H grouped by (v, e, aut)."""
    m = H.edge_count
    total = 1 << m
    if threads > 1 and total >= 1 << 12:
        step = -(-total // threads)
        spans = [(i, min(i + step, total)) for i in range(0, total, step)]
        blocks = parallel_map(lambda span: _scan_block(H, span[0], span[1]), spans, threads)
        return _merge_classes(blocks)
    return _scan_block(H, 0, total)


FULL_TABLE_EDGE_CAP = 14


def _gray_steps(H: Graph):
    """Yield (mask, v, e) over all nonempty edge subsets in Gray-code order.

    One edge flips per step, so the spanned-vertex count updates in O(1)
    via per-vertex incidence counters; this is what makes exact scans of
    2^20+ subsets affordable.
    """
    edges = H.edges
    m = len(edges)
    cnt = [0] * H.n
    v_cur = 0
    e_cur = 0
    mask = 0
    for i in range(1, 1 << m):
        bit = (i & -i).bit_length() - 1
        a, b = edges[bit]
        if mask >> bit & 1:
            mask ^= 1 << bit
            e_cur -= 1
            cnt[a] -= 1
            cnt[b] -= 1
            if not cnt[a]:
                v_cur -= 1
            if not cnt[b]:
                v_cur -= 1
        else:
            mask ^= 1 << bit
            e_cur += 1
            if not cnt[a]:
                v_cur += 1
            if not cnt[b]:
                v_cur += 1
            cnt[a] += 1
            cnt[b] += 1
        yield mask, v_cur, e_cur


def _subset_of_mask(H: Graph, mask: int):
    sub = []
    vm = 0
    mm = mask
    while mm:
        low = mm & -mm
        i = low.bit_length() - 1
        mm ^= low
        a, b = H.edges[i]
        sub.append((a, b))
        vm |= (1 << a) | (1 << b)
    return sub, vm


def _class_of_mask(H: Graph, mask: int):
    sub, vm = _subset_of_mask(H, mask)
    v = vm.bit_count()
    aut, _ = _aut_of_subset(sub, vm, v)
    return v, len(sub), aut, tuple(sub)


def _pruned_classes(H: Graph, n: int, target_den: int) -> dict:
    """Threshold-relevant classes for hosts too large for the full table.

    A bucket of subsets sharing (v, e) has per-class threshold at most
    (v!/(t*(n)_v))^(1/e) since aut <= v!.  Buckets whose cap cannot beat a
    cheap starting lower bound (full edge set, densest subgraph, single
    edge) are skipped without any automorphism work; the maximum over the
    evaluated classes is still the exact threshold because any class above
    the starting bound lives in a surviving bucket.
    """
    from .graphs import max_density

    hist: dict = {}
    for _, v, e in _gray_steps(H):
        key = (v, e)
        hist[key] = hist.get(key, 0) + 1

    candidates = []

    def add_candidate(mask: int):
        v, e, aut, tup = _class_of_mask(H, mask)
        candidates.append(((v, e, aut), tup))
        return _class_threshold(n, target_den, v, e, aut)

    full_mask = (1 << H.edge_count) - 1
    t_start = add_candidate(full_mask)
    t_edge = add_candidate(1)
    if value_cmp(t_edge, t_start) > 0:
        t_start = t_edge
    dens = max_density(H)
    dmask = 0
    wset = set(dens.witness)
    for i, (a, b) in enumerate(H.edges):
        if a in wset and b in wset:
            dmask |= 1 << i
    if dmask:
        t_dense = add_candidate(dmask)
        if value_cmp(t_dense, t_start) > 0:
            t_start = t_dense

    survivors = set()
    for (v, e), _count in hist.items():
        cap = make_value(
            Fraction(math.factorial(v), target_den * math.perm(n, v)), e
        )
        if value_cmp(cap, t_start) > 0:
            survivors.add((v, e))
    classes: dict = {}
    if survivors:
        member_budget = sum(hist[key] for key in survivors)
        if member_budget > 400_000:
            raise EdgeCapError(
                "bucket pruning left too many candidate subsets "
                f"({member_budget}); the host is too dense for an exact scan"
            )
        for mask, v, e in _gray_steps(H):
            if (v, e) not in survivors:
                continue
            sub, vm = _subset_of_mask(H, mask)
            aut, _ = _aut_of_subset(sub, vm, v)
            key = (v, e, aut)
            tup = tuple(sub)
            cur = classes.get(key)
            if cur is None:
                classes[key] = [1, tup]
            else:
                cur[0] += 1
                if tup < cur[1]:
                    cur[1] = tup
    for key, tup in candidates:
        if (key[0], key[1]) in survivors:
            continue
        cur = classes.get(key)
        if cur is None:
            classes[key] = [1, tup]
        elif tup < cur[1]:
            cur[1] = tup
    return classes


# -- threshold reports ----------------------------------------------------------


@dataclass(frozen=True)
class ThresholdClass:
    descriptor: str
    v: int
    e: int
    aut: int
    subsets: int
    threshold: ExactValue


@dataclass(frozen=True)
class SparsityReport:
    """Threshold certificate: max over subgraph classes of (aut/(t*(n)_v))^(1/e).

    target_den = 1 certifies q-sparseness (threshold is the least sparse q);
    target_den = 2 gives the expectation threshold p_E.  base_pair = (M, e)
    encodes the threshold exactly as M^(-1/e).
    """

    n: int
    target_den: int
    threshold: ExactValue
    base_pair: tuple
    witness: Graph
    witness_edges: tuple
    classes: tuple
    enclosure: tuple
    lower_bound_only: bool = False
    table_complete: bool = True

    def verdict_for(self, q) -> bool:
        return value_cmp(q, self.threshold) >= 0


def _class_threshold(n: int, target_den: int, v: int, e: int, aut: int) -> ExactValue:
    return make_value(Fraction(aut, target_den * math.perm(n, v)), e)


def _build_report(
    H: Graph,
    n: int,
    target_den: int,
    classes: dict,
    digits: int,
    lower_bound_only: bool = False,
    table_complete: bool = True,
) -> SparsityReport:
    rows = []
    for (v, e, aut), (count, tup) in sorted(classes.items()):
        thr = _class_threshold(n, target_den, v, e, aut)
        rows.append((thr, v, e, aut, count, tup))
    best = rows[0]
    tied = [best]
    for row in rows[1:]:
        c = value_cmp(row[0], best[0])
        if c > 0:
            best = row
            tied = [row]
        elif c == 0:
            tied.append(row)
    witness_tup = min(t[5] for t in tied)
    wmask = 0
    for a, b in witness_tup:
        wmask |= (1 << a) | (1 << b)
    wv = wmask.bit_count()
    witness = Graph(wv, list(_normalize_subset(witness_tup, wmask)))
    bv, be, baut = next(
        (t[1], t[2], t[3]) for t in tied if t[5] == witness_tup
    )
    pair = (target_den * (math.perm(n, bv) // baut), be)

    def row_cmp(a, b):
        c = value_cmp(a[0], b[0])
        if c:
            return -c
        return (a[1:4] > b[1:4]) - (a[1:4] < b[1:4])

    table = []
    for thr, v, e, aut, count, tup in sorted(rows, key=cmp_to_key(row_cmp)):
        vm = 0
        for a, b in tup:
            vm |= (1 << a) | (1 << b)
        rep = Graph(v, list(_normalize_subset(tup, vm)))
        table.append(
            ThresholdClass(
                descriptor=to_graph6(rep),
                v=v,
                e=e,
                aut=aut,
                subsets=count,
                threshold=thr,
            )
        )
    return SparsityReport(
        n=n,
        target_den=target_den,
        threshold=best[0],
        base_pair=pair,
        witness=witness,
        witness_edges=witness_tup,
        classes=tuple(table),
        enclosure=decimal_enclosure(best[0], digits),
        lower_bound_only=lower_bound_only,
        table_complete=table_complete,
    )


def _check_host(H: Graph, n: int):
    if H.edge_count < 1:
        raise PreconditionError("host must have at least one edge")
    if n < H.n:
        raise PreconditionError(f"ambient n={n} is below the host's {H.n} vertices")


def _connected_classes(H: Graph, vertex_cap: int) -> dict:
    """Classes of connected subgraphs with at most vertex_cap vertices.

    Used by heuristic mode only; the resulting threshold is a lower bound
    because disconnected subgraphs can dominate the maximum.
    """
    classes = {}
    full = H.vertex_mask()

    def record(sub_edges, vmask):
        v = vmask.bit_count()
        aut, _ = _aut_of_subset(sub_edges, vmask, v)
        key = (v, len(sub_edges), aut)
        tup = tuple(sub_edges)
        cur = classes.get(key)
        if cur is None:
            classes[key] = [1, tup]
        else:
            cur[0] += 1
            if tup < cur[1]:
                cur[1] = tup

    seen_sets = set()

    def grow(vset: int, frontier: int, banned: int):
        if vset in seen_sets:
            return
        seen_sets.add(vset)
        inner = [e for e in H.edges if (1 << e[0]) & vset and (1 << e[1]) & vset]
        if inner and len(inner) <= 18:
            for mask in range(1, 1 << len(inner)):
                sub = [inner[i] for i in range(len(inner)) if mask >> i & 1]
                vm = 0
                for a, b in sub:
                    vm |= (1 << a) | (1 << b)
                if vm != vset:
                    continue
                if _spanning_connected(sub, vset):
                    record(sub, vm)
        elif inner:
            record(inner, vset)
        if vset.bit_count() >= vertex_cap:
            return
        ext = frontier & ~vset & ~banned
        done = 0
        mm = ext
        while mm:
            low = mm & -mm
            w = low.bit_length() - 1
            mm ^= low
            grow(vset | low, frontier | H.adj[w], banned | done)
            done |= low

    for v in range(H.n):
        if H.adj[v]:
            grow(1 << v, H.adj[v], (1 << v) - 1)
    _ = full
    return classes


def _spanning_connected(sub_edges, vset: int) -> bool:
    adj = {}
    for a, b in sub_edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = (vset & -vset).bit_length() - 1
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj.get(u, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == vset.bit_count()


def q_min(
    H: Graph,
    n: int,
    mode: str = "exact",
    edge_cap: int = DEFAULT_EDGE_CAP,
    heuristic_vertex_cap: int = DEFAULT_HEURISTIC_VERTEX_CAP,
    digits: int = DEFAULT_DIGITS,
    threads: int = 1,
) -> SparsityReport:
    """Least q at which H is q-sparse, with the binding subgraph class."""
    _check_host(H, n)
    if mode == "heuristic":
        classes = _connected_classes(H, heuristic_vertex_cap)
        return _build_report(H, n, 1, classes, digits, lower_bound_only=True)
    if mode != "exact":
        raise PreconditionError("mode must be 'exact' or 'heuristic'")
    if H.edge_count > edge_cap:
        raise EdgeCapError(
            f"exact scan over 2^{H.edge_count} edge subsets exceeds the cap of "
            f"{edge_cap} edges; use mode='heuristic' for a flagged lower bound"
        )
    if H.edge_count <= FULL_TABLE_EDGE_CAP:
        classes = scan_subgraph_classes(H, threads=threads)
        return _build_report(H, n, 1, classes, digits)
    classes = _pruned_classes(H, n, 1)
    return _build_report(H, n, 1, classes, digits, table_complete=False)


def expectation_threshold(
    H: Graph,
    n: int,
    edge_cap: int = DEFAULT_EDGE_CAP,
    digits: int = DEFAULT_DIGITS,
    threads: int = 1,
) -> SparsityReport:
    """Least p with every subgraph expectation at least 1/2 (threshold p_E)."""
    _check_host(H, n)
    if H.edge_count > edge_cap:
        raise EdgeCapError(
            f"exact scan over 2^{H.edge_count} edge subsets exceeds the cap of "
            f"{edge_cap} edges"
        )
    if H.edge_count <= FULL_TABLE_EDGE_CAP:
        classes = scan_subgraph_classes(H, threads=threads)
        return _build_report(H, n, 2, classes, digits)
    classes = _pruned_classes(H, n, 2)
    return _build_report(H, n, 2, classes, digits, table_complete=False)


# -- sparsity verdicts ------------------------------------------------------------


@dataclass(frozen=True)
class SparseCheck:
    sparse: bool
    n: int
    q: ExactValue
    witness: Graph | None = None
    witness_edges: tuple | None = None
    expectation: ExactValue | None = None


def _power_table(q, m: int) -> list:
    powers = [Fraction(1)] + [None] * m
    for e in range(1, m + 1):
        powers[e] = value_pow(q, e)
    return powers


def safe_edge_bound(n: int, q, v_cap: int, e_cap: int) -> int:
    """Largest m <= e_cap such that the crude count bound alone certifies
    every graph on at most v_cap vertices with at most m edges q-sparse.

    A subset with v vertices and e edges has expectation at least
    C(n,v) * q^e, and a bucket (v,e) is realizable only when v <= 2e and
    e <= C(v,2).  Scanning e upward, the first e with a failing realizable
    bucket ends the guarantee.  At q = 1 every bucket passes, so graphs of
    any size are certified without touching their subsets.
    """
    if e_cap < 1:
        return e_cap
    powers = _power_table(q, e_cap)
    for e in range(1, e_cap + 1):
        for v in range(2, min(2 * e, v_cap) + 1):
            if e > math.comb(v, 2):
                continue
            crude = value_mul(Fraction(math.comb(n, v)), powers[e])
            if value_cmp(crude, 1) < 0:
                return e - 1
    return e_cap


def violation_scan(
    H: Graph,
    n: int,
    q,
    required_edge: int | None = None,
    early_exit: bool = False,
):
    """(verdict, min expectation, argmin edge tuple) over edge subsets.

    Subsets whose crude bound C(n,v)*q^e >= 1 are skipped without an aut
    computation; any violating subset fails that bound, so the minimum over
    violators is never lost.  required_edge restricts the scan to subsets
    containing that edge index (sound after certifying the host without it).
    """
    m = H.edge_count
    if m == 0:
        return True, None, None
    if safe_edge_bound(n, q, min(H.n, 2 * m), m) >= m:
        return True, None, None
    powers = _power_table(q, m)
    crude_ok: dict = {}
    best = None
    best_tup = None
    req_bit = None if required_edge is None else 1 << required_edge
    for mask, v, e in _gray_steps(H):
        if req_bit is not None and not mask & req_bit:
            continue
        ck = (v, e)
        ok = crude_ok.get(ck)
        if ok is None:
            ok = value_cmp(value_mul(Fraction(math.comb(n, v)), powers[e]), 1) >= 0
            crude_ok[ck] = ok
        if ok:
            continue
        sub, vm = _subset_of_mask(H, mask)
        aut, _ = _aut_of_subset(sub, vm, v)
        expectation = value_mul(Fraction(math.perm(n, v), aut), powers[e])
        if value_cmp(expectation, 1) >= 0:
            continue
        tup = tuple(sub)
        if best is None:
            best, best_tup = expectation, tup
        else:
            c = value_cmp(expectation, best)
            if c < 0 or (c == 0 and tup < best_tup):
                best, best_tup = expectation, tup
        if early_exit:
            return False, best, best_tup
    return best is None, best, best_tup


def is_q_sparse(H: Graph, n: int, q, edge_cap: int = DEFAULT_EDGE_CAP) -> SparseCheck:
    """Is every subgraph expectation at least 1?  On failure the returned
    witness is the most-violating subgraph (lexicographic edge-set ties)."""
    if n < H.n:
        raise PreconditionError(f"ambient n={n} is below the host's {H.n} vertices")
    _check_probability(q)
    if H.edge_count == 0:
        return SparseCheck(sparse=True, n=n, q=q)
    # the crude count bound can certify arbitrarily large graphs cheaply
    if safe_edge_bound(n, q, min(H.n, 2 * H.edge_count), H.edge_count) >= H.edge_count:
        return SparseCheck(sparse=True, n=n, q=q)
    if H.edge_count > edge_cap:
        raise EdgeCapError(
            f"exact scan over 2^{H.edge_count} edge subsets exceeds the cap of "
            f"{edge_cap} edges"
        )
    verdict, worst, tup = violation_scan(H, n, q)
    if verdict:
        return SparseCheck(sparse=True, n=n, q=q)
    vm = 0
    for a, b in tup:
        vm |= (1 << a) | (1 << b)
    witness = Graph(vm.bit_count(), list(_normalize_subset(tup, vm)))
    return SparseCheck(
        sparse=False,
        n=n,
        q=q,
        witness=witness,
        witness_edges=tup,
        expectation=worst,
    )


# -- conjecture constant ----------------------------------------------------------


@dataclass(frozen=True)
class RequiredL:
    """Least L with N(H,F) = E_{Lq}X_F, i.e. (N(H,F)/E_qX_F)^(1/e_F)."""

    value: ExactValue
    enclosure: tuple
    copies: int
    expectation: ExactValue
    pattern_edges: int


def required_L(
    H: Graph,
    F: Graph,
    n: int,
    q,
    digits: int = DEFAULT_DIGITS,
    node_budget=None,
    threads: int = 1,
    skip_sparsity_check: bool = False,
) -> RequiredL:
    """Scale factor solving N(H,F) = L^{e_F} * E_qX_F, exactly."""
    if F.edge_count < 1:
        raise PreconditionError("pattern must have at least one edge")
    if F.n > n:
        raise PreconditionError("pattern larger than the ambient n has expectation 0")
    if not skip_sparsity_check:
        check = is_q_sparse(H, n, q)
        if not check.sparse:
            raise PreconditionError(
                "host is not q-sparse at the supplied q; violating subgraph edges: "
                f"{check.witness_edges}",
                witness=check.witness,
            )
    copies = count_copies(H, F, node_budget=node_budget, threads=threads)
    expectation = expected_copies(n, q, F)
    if copies == 0:
        zero = Fraction(0)
        return RequiredL(
            value=zero,
            enclosure=decimal_enclosure(zero, digits),
            copies=0,
            expectation=expectation,
            pattern_edges=F.edge_count,
        )
    ratio = value_div(Fraction(copies), expectation)
    value = value_root(ratio, F.edge_count)
    return RequiredL(
        value=value,
        enclosure=decimal_enclosure(value, digits),
        copies=copies,
        expectation=expectation,
        pattern_edges=F.edge_count,
    )


def peel_threshold_a(F: Graph, n: int, p) -> ExactValue:
    """Expected copy count of F per ambient vertex: E_pX_F / n."""
    if n < 1:
        raise PreconditionError("n must be positive")
    return value_mul(expected_copies(n, p, F), Fraction(1, n))


def falling_factorial_bound_check(a: int, b: int) -> bool:
    """Exact verdict of (a)_b > (a/e)^b for 1 <= b <= a."""
    if not (1 <= b <= a):
        raise PreconditionError("need 1 <= b <= a")
    # (a)_b > a^b / e^b  <=>  e^b > a^b / (a)_b
    return cmp_with_e_power(Fraction(a**b, math.perm(a, b)), b) < 0
