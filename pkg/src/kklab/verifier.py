"""Machine-checked propositions and constructive decompositions.

Every check here is exact: log-form bounds compare integer powers
(x < log2 y iff 2^x < y^..., cross-multiplied), bounds involving the
constant e use adaptive rational enclosures, and thresholds of the form
sqrt(eps)*d are compared by squaring.  Reports carry both sides and a
verdict; a failing report is an honest outcome, not an exception.

The structural bounds in log form (maximum density below log2 n, edge
count below n*log2 n) are guaranteed for sparse hosts with q <= 1/2 and
can genuinely fail near q = 1 (K_7 at q = 1, n = 7 has density 3 which
exceeds log2 7); reports note when q is outside the guaranteed regime.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .counting import (
    copies_as_edge_masks,
    count_copies,
    count_labeled,
    iter_labeled,
    packing_number,
)
from .exact import (
    ceil_root,
    cmp_with_e_power,
    decimal_enclosure,
    value_cmp,
    value_div,
    value_float,
    value_mul,
    value_pow,
    value_to_json,
)
from .expectation import expected_copies, is_q_sparse, required_L
from .graphs import Graph, max_density, to_graph6
from .util import PreconditionError, iter_bits, parallel_map


@dataclass(frozen=True)
class PropositionReport:
    prop_id: str
    inputs: dict
    lhs: str
    rhs: str
    verdict: bool
    witness: object = None
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "prop_id": self.prop_id,
            "inputs": self.inputs,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "verdict": self.verdict,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out


def _require_sparse(H: Graph, n: int, q):
    check = is_q_sparse(H, n, q)
    if not check.sparse:
        raise PreconditionError(
            "host is not q-sparse at the supplied q; violating subgraph edges: "
            f"{check.witness_edges}",
            witness=check.witness,
        )


def _base_inputs(H: Graph, n: int, q) -> dict:
    return {"graph6": to_graph6(H), "n": n, "q": value_to_json(q)}


# -- structural bounds for sparse hosts ----------------------------------------


def verify_structure(H: Graph, n: int, q) -> list:
    """Five exact bound checks for a q-sparse host at scale n."""
    _require_sparse(H, n, q)
    inputs = _base_inputs(H, n, q)
    regime_note = (
        "" if value_cmp(q, Fraction(1, 2)) <= 0 else
        "log-form bound is guaranteed only for q <= 1/2; evaluated as stated"
    )
    reports = []

    delta = H.max_degree()
    log_ok = (1 << delta) <= n
    if value_cmp(q, 0) == 0:
        lin_ok = delta == 0
    else:
        # delta <= 2*e*n*q  iff  e >= delta/(2nq)
        x = value_div(Fraction(delta), value_mul(Fraction(2 * n), q))
        lin_ok = cmp_with_e_power(x, 1) <= 0
    reports.append(
        PropositionReport(
            prop_id="max-degree-bound",
            inputs=inputs,
            lhs=str(delta),
            rhs=f"max(log2({n}), 2*e*{n}*q) ~ "
            f"{max(math.log2(n), 2 * math.e * n * value_float(q)):.6g}",
            verdict=log_ok or lin_ok,
        )
    )

    dens = max_density(H)
    num, den = dens.numerator, dens.denominator
    reports.append(
        PropositionReport(
            prop_id="density-log-bound",
            inputs=inputs,
            lhs=f"{num}/{den}",
            rhs=f"log2({n}) ~ {math.log2(n):.6g}",
            verdict=(1 << num) < n**den if num else True,
            witness={"densest_vertices": list(dens.witness)},
            note=regime_note,
        )
    )

    # density below 1/c with c solving q = n^-c:  n^den * q^num > 1
    if H.edge_count == 0 or value_cmp(q, 1) == 0:
        ratio_ok = True
    else:
        ratio_ok = (
            value_cmp(value_mul(Fraction(n) ** den, value_pow(q, num)), 1) > 0
        )
    reports.append(
        PropositionReport(
            prop_id="density-ratio-bound",
            inputs=inputs,
            lhs=f"{num}/{den}",
            rhs="1/c with q = n^-c",
            verdict=ratio_ok,
        )
    )

    e_h = H.edge_count
    if e_h == 0:
        edge_log_ok = True
    else:
        bl = n.bit_length() - 1
        if e_h < n * bl:
            edge_log_ok = True
        elif e_h >= n * (bl + 1):
            edge_log_ok = False
        else:
            edge_log_ok = (1 << e_h) < n**n
    reports.append(
        PropositionReport(
            prop_id="edge-count-log-bound",
            inputs=inputs,
            lhs=str(e_h),
            rhs=f"{n}*log2({n}) ~ {n * math.log2(n):.6g}",
            verdict=edge_log_ok,
            note=regime_note,
        )
    )

    if e_h == 0 or value_cmp(q, 1) == 0:
        edge_ratio_ok = True
    else:
        edge_ratio_ok = (
            value_cmp(value_mul(Fraction(n) ** n, value_pow(q, e_h)), 1) > 0
        )
    reports.append(
        PropositionReport(
            prop_id="edge-count-ratio-bound",
            inputs=inputs,
            lhs=str(e_h),
            rhs="n/c with q = n^-c",
            verdict=edge_ratio_ok,
        )
    )
    return reports


def verify_packing(
    H: Graph, J: Graph, n: int, q, copy_cap=None, node_budget=None
) -> PropositionReport:
    """Edge-disjoint packing count against e times the expected copy count."""
    _require_sparse(H, n, q)
    nu = packing_number(H, J, mode="exact", copy_cap=copy_cap, node_budget=node_budget)
    expectation = expected_copies(n, q, J)
    if nu == 0:
        verdict = True
    elif value_cmp(expectation, 0) == 0:
        verdict = False
    else:
        verdict = cmp_with_e_power(value_div(Fraction(nu), expectation), 1) <= 0
    inputs = _base_inputs(H, n, q)
    inputs["pattern6"] = to_graph6(J)
    return PropositionReport(
        prop_id="packing-expectation-bound",
        inputs=inputs,
        lhs=str(nu),
        rhs=f"e * E_qX_J ~ {math.e * value_float(expectation):.6g}",
        verdict=verdict,
    )


# -- peeling -------------------------------------------------------------------


@dataclass(frozen=True)
class PeelResult:
    surviving: tuple
    degrees: tuple
    total_copies: int


def peel_min_degree(
    H: Graph, F: Graph, a, rng=None, copy_cap=None, node_budget=None
) -> PeelResult:
    """Iteratively delete vertices lying in fewer than ``a`` copies of F.

    The hypergraph has one edge per distinct copy (its vertex set, with
    multiplicity across copies sharing a vertex set).  Deletion order is
    smallest id first; the surviving set is order-independent, and passing
    ``rng`` randomizes the order as a regression check.
    """
    a = Fraction(a)
    masks = copies_as_edge_masks(H, F, copy_cap=copy_cap, node_budget=node_budget)
    vsets = []
    for m in masks:
        vm = 0
        for i in iter_bits(m):
            x, y = H.edges[i]
            vm |= (1 << x) | (1 << y)
        vsets.append(vm)
    alive = list(range(len(vsets)))
    deg = [0] * H.n
    for vm in vsets:
        for v in iter_bits(vm):
            deg[v] += 1
    removed = 0
    while True:
        low = [v for v in range(H.n) if not removed >> v & 1 and deg[v] < a]
        if not low:
            break
        v = low[0] if rng is None else low[rng.randrange(len(low))]
        removed |= 1 << v
        keep = []
        for idx in alive:
            if vsets[idx] >> v & 1:
                for w in iter_bits(vsets[idx]):
                    deg[w] -= 1
            else:
                keep.append(idx)
        alive = keep
    surviving = tuple(v for v in range(H.n) if not removed >> v & 1)
    return PeelResult(
        surviving=surviving,
        degrees=tuple(deg[v] for v in surviving),
        total_copies=len(vsets),
    )


# -- tree utilities -------------------------------------------------------------


def bfs_order(F: Graph, root: int = 0) -> list:
    """BFS visit order from ``root`` with ascending-label tie-break."""
    seen = 1 << root
    order = [root]
    queue = [root]
    while queue:
        v = queue.pop(0)
        for w in iter_bits(F.adj[v] & ~seen):
            seen |= 1 << w
            order.append(w)
            queue.append(w)
    return order


def bfs_normalize(F: Graph) -> Graph:
    """Relabel a tree so vertex indices follow BFS order from vertex 0."""
    order = bfs_order(F)
    if len(order) != F.n:
        raise PreconditionError("tree must be connected")
    perm = [0] * F.n
    for new, old in enumerate(order):
        perm[old] = new
    return F.relabel(perm)


def tree_parents(F: Graph) -> list:
    """parent[i] for a BFS-ordered tree; parent[0] is None."""
    parents = [None] * F.n
    for i in range(1, F.n):
        smaller = [w for w in F.neighbors(i) if w < i]
        if len(smaller) != 1:
            raise PreconditionError("tree is not in BFS order from vertex 0")
        parents[i] = smaller[0]
    return parents


def tree_ancestors(F: Graph, v: int) -> tuple:
    """Non-root ancestors of v in a BFS-ordered tree, nearest first."""
    parents = tree_parents(F)
    out = []
    cur = parents[v]
    while cur is not None and cur != 0:
        out.append(cur)
        cur = parents[cur]
    return tuple(out)


# -- fit decomposition ------------------------------------------------------------


@dataclass(frozen=True)
class DegreeProfile:
    f: tuple
    d: tuple
    big: tuple
    D: int

    def is_legal(self, eps: Fraction, d_scale: Fraction) -> bool:
        thr = eps * d_scale * d_scale
        for i, val in enumerate(self.d):
            if self.big[i]:
                if Fraction(val * val) < thr:
                    return False
            elif val != self.f[i]:
                return False
        return True


@dataclass(frozen=True)
class FitRecord:
    copy: tuple
    residual: tuple
    profile: DegreeProfile
    b: tuple
    backedge_mask: int
    rhat_vertices: tuple
    rhat_edges: tuple

    @property
    def class_key(self) -> tuple:
        return (self.profile.d, self.backedge_mask)


def _prepare_tree(F: Graph):
    if not F.is_tree():
        raise PreconditionError("pattern must be a tree")
    order = bfs_order(F)
    if order == list(range(F.n)):
        Fn = F
        perm = None
    else:
        perm = [0] * F.n
        for new, old in enumerate(order):
            perm[old] = new
        Fn = F.relabel(perm)
    parents = tree_parents(Fn)
    f = tuple(sum(1 for w in Fn.neighbors(i) if w > i) for i in range(Fn.n))
    return Fn, perm, parents, f


def _check_fit_threshold(F: Graph, eps: Fraction, d: Fraction):
    thr = eps * d * d
    dmax = F.max_degree()
    if Fraction(dmax * dmax) >= thr:
        raise PreconditionError(
            "need sqrt(eps)*d strictly above the tree's maximum degree"
        )
    return thr


def _fit_core(H, parents, f, copy, thr) -> FitRecord:
    j1 = len(copy)
    adj = H.adj
    prev = 0
    residual = []
    big = []
    d_vec = []
    b_vec = []
    backedge_mask = 0
    extra = 0
    rhat_edges = set()
    for i in range(j1):
        w = copy[i]
        if i:
            rhat_edges.add(
                (min(w, copy[parents[i]]), max(w, copy[parents[i]]))
            )
        resid_mask = adj[w] & ~prev
        r = resid_mask.bit_count()
        residual.append(r)
        is_big = Fraction(r * r) >= thr
        big.append(is_big)
        d_vec.append(r if is_big else f[i])
        back = adj[w] & prev
        bcount = back.bit_count() - (1 if i else 0)
        b_vec.append(bcount)
        if i:
            pw = copy[parents[i]]
            base = i * (i - 1) // 2
            for k in range(i):
                wk = copy[k]
                if wk != pw and adj[w] >> wk & 1:
                    backedge_mask |= 1 << (base + k)
        if is_big:
            extra |= resid_mask
            for x in iter_bits(resid_mask):
                rhat_edges.add((min(w, x), max(w, x)))
        prev |= 1 << w
    copy_mask = prev
    profile = DegreeProfile(
        f=tuple(f), d=tuple(d_vec), big=tuple(big), D=sum(
            d_vec[i] for i in range(j1) if big[i]
        )
    )
    rhat_vertices = tuple(copy) + tuple(
        x for x in iter_bits(extra & ~copy_mask)
    )
    return FitRecord(
        copy=tuple(copy),
        residual=tuple(residual),
        profile=profile,
        b=tuple(b_vec),
        backedge_mask=backedge_mask,
        rhat_vertices=rhat_vertices,
        rhat_edges=tuple(sorted(rhat_edges)),
    )


def fit_decompose(H: Graph, F: Graph, copy, eps, d) -> FitRecord:
    """Classify one labeled tree copy and expand it to its unique fitting R.

    Index i is big when its residual degree r_i (neighbors of the image
    outside the earlier images) satisfies r_i >= sqrt(eps)*d, compared by
    squaring; big indices contribute all residual edges, small ones only
    their tree children.  A residual degree exactly at the threshold counts
    as big (knife-edge convention).
    """
    eps, d = Fraction(eps), Fraction(d)
    Fn, perm, parents, f = _prepare_tree(F)
    thr = _check_fit_threshold(Fn, eps, d)
    if len(copy) != Fn.n:
        raise PreconditionError("copy length does not match the tree")
    if perm is not None:
        remapped = [0] * Fn.n
        for old, w in enumerate(copy):
            remapped[perm[old]] = w
        copy = remapped
    copy = list(copy)
    if len(set(copy)) != len(copy) or not all(0 <= w < H.n for w in copy):
        raise PreconditionError("copy is not an embedding of the tree")
    for a, b in Fn.edges:
        if not H.has_edge(copy[a], copy[b]):
            raise PreconditionError("copy is not an embedding of the tree")
    return _fit_core(H, parents, f, copy, thr)


def verify_fit_partition(
    H: Graph, F: Graph, eps, d, node_budget=None, threads: int = 1
) -> PropositionReport:
    """Grouped fit classes over all labeled copies must total the labeled count."""
    eps, d = Fraction(eps), Fraction(d)
    Fn, _, parents, f = _prepare_tree(F)
    thr = _check_fit_threshold(Fn, eps, d)
    copies = list(iter_labeled(H, Fn, node_budget=node_budget))

    def classify_block(block) -> dict:
        out = {}
        for copy in block:
            rec = _fit_core(H, parents, f, list(copy), thr)
            key = rec.class_key
            out[key] = out.get(key, 0) + 1
        return out

    if threads > 1 and len(copies) >= 64:
        step = -(-len(copies) // threads)
        blocks = [copies[i : i + step] for i in range(0, len(copies), step)]
        partial = parallel_map(classify_block, blocks, threads)
        classes: dict = {}
        for p in partial:
            for key, cnt in p.items():
                classes[key] = classes.get(key, 0) + cnt
    else:
        classes = classify_block(copies)
    labeled = count_labeled(H, Fn, node_budget=node_budget)
    total = sum(classes.values())
    table = [
        {"d": list(key[0]), "backedges": key[1], "count": cnt}
        for key, cnt in sorted(classes.items())
    ]
    return PropositionReport(
        prop_id="fit-partition-identity",
        inputs={
            "graph6": to_graph6(H),
            "tree6": to_graph6(Fn),
            "eps": str(eps),
            "d": str(d),
        },
        lhs=str(labeled),
        rhs=str(total),
        verdict=labeled == total,
        witness={"classes": table},
    )


# -- legal degree sequences -----------------------------------------------------


@dataclass(frozen=True)
class LegalCount:
    count: int
    big_threshold: int
    bound: int
    bound_applicable: bool
    bound_holds: bool | None


def _bound_term(j: int, s: int, D: int) -> int:
    # C(j,s) * C(D-1, s-1) with the C(-1,-1) = 1 convention
    if s == 0:
        return 1 if D == 0 else 0
    if s > j or D - 1 < s - 1:
        return 0
    return math.comb(j, s) * math.comb(D - 1, s - 1)


def count_legal_sequences(f, eps, d, D: int, d_cap: int) -> LegalCount:
    """Exact number of legal degree vectors with big-part sum D.

    A vector is legal when every index is big (value in [m, d_cap] with
    m = ceil(sqrt(eps)*d)) or small (value = child count).  The reported
    binomial bound sum C(j,s)*C(D-1,s-1) is meaningful when d_cap >= D;
    it is a theorem only in part of the parameter range, so the report
    carries the comparison outcome rather than asserting it.
    """
    eps, d = Fraction(eps), Fraction(d)
    f = tuple(int(x) for x in f)
    if D < 0:
        raise PreconditionError("D must be nonnegative")
    m = ceil_root(eps * d * d, 2)
    if m < 1:
        m = 1
    if d_cap < m:
        raise PreconditionError("d_cap must be at least the big threshold")
    if any(x >= m for x in f):
        raise PreconditionError(
            "child counts must lie strictly below the big threshold"
        )
    positions = len(f)
    # comp[s] = compositions of D into s parts, each in [m, d_cap]
    comp = [0] * (positions + 1)
    comp[0] = 1 if D == 0 else 0
    ways = {0: 1}
    for s in range(1, positions + 1):
        nxt: dict = {}
        for total, cnt in ways.items():
            for part in range(m, d_cap + 1):
                t = total + part
                if t > D:
                    break
                nxt[t] = nxt.get(t, 0) + cnt
        ways = nxt
        comp[s] = ways.get(D, 0)
    count = sum(math.comb(positions, s) * comp[s] for s in range(positions + 1))
    j = positions - 1
    bound = sum(_bound_term(j, s, D) for s in range(positions + 1))
    applicable = d_cap >= D
    return LegalCount(
        count=count,
        big_threshold=m,
        bound=bound,
        bound_applicable=applicable,
        bound_holds=(count <= bound) if applicable else None,
    )


# -- path-length cutoff -----------------------------------------------------------


@dataclass(frozen=True)
class EllHatResult:
    value: int
    n: int
    delta: Fraction
    at_value_ok: bool
    above_value_fails: bool


def ell_hat(n: int, q, delta) -> EllHatResult:
    """Largest integer l with (nq)^l < n^(1 - delta*c), where nq = n^c.

    Rewriting n^(1-delta*c) as n*(nq)^(-delta) removes c: with delta = s/t
    the condition is (nq)^(t*l+s) < n^t, decided by exact integer powers.
    """
    delta = Fraction(delta)
    if not (0 < delta < 1):
        raise PreconditionError("delta must lie strictly between 0 and 1")
    if n < 2 or value_cmp(q, Fraction(1, n)) <= 0 or value_cmp(q, 1) >= 0:
        raise PreconditionError("need 1/n < q < 1 so the exponent c is defined")
    s, t = delta.numerator, delta.denominator
    nq = value_mul(Fraction(n), q)
    rhs = Fraction(n) ** t

    def holds(ell: int) -> bool:
        return value_cmp(value_pow(nq, t * ell + s), rhs) < 0

    ell = 0
    while holds(ell + 1):
        ell += 1
        if ell > 10**6:
            raise RuntimeError("cutoff iteration failed to terminate")
    return EllHatResult(
        value=ell,
        n=n,
        delta=delta,
        at_value_ok=holds(ell),
        above_value_fails=not holds(ell + 1),
    )


# -- main comparison ---------------------------------------------------------------


def verify_main_inequality(
    H: Graph, F: Graph, n: int, q, L, node_budget=None, threads: int = 1
) -> PropositionReport:
    """Strict comparison N(H,F) < L^{e_F} * E_qX_F for a sparse host."""
    L = Fraction(L)
    if L <= 0:
        raise PreconditionError("L must be positive")
    if F.edge_count < 1:
        raise PreconditionError("pattern must have at least one edge")
    _require_sparse(H, n, q)
    copies = count_copies(H, F, node_budget=node_budget, threads=threads)
    expectation = expected_copies(n, q, F)
    rhs = value_mul(L**F.edge_count, expectation)
    verdict = value_cmp(Fraction(copies), rhs) < 0
    req = required_L(
        H, F, n, q, node_budget=node_budget, threads=threads,
        skip_sparsity_check=True,
    )
    inputs = _base_inputs(H, n, q)
    inputs["pattern6"] = to_graph6(F)
    inputs["L"] = str(L)
    lo, hi = req.enclosure
    return PropositionReport(
        prop_id="main-inequality",
        inputs=inputs,
        lhs=str(copies),
        rhs=f"L^{F.edge_count} * E_qX_F ~ {value_float(rhs):.6g}",
        verdict=verdict,
        witness={"required_L": [lo, hi]},
    )
