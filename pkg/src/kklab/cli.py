"""Command line front end for the whole toolkit.

Each subcommand runs one operation and emits a single report on stdout
(or to ``--out``).  The default format is JSON with a versioned
``"schema"`` field; exact quantities always travel as strings or
{base, exp} root records, never as binary floats.  ``--format csv``
is available where the result is a table (probe traces, leaderboards),
and ``--format text`` gives a flat key = value rendering.

Exit codes: 0 success, 1 usage or input errors (unknown flag,
unreadable file, malformed graph), 2 precondition violations with the
witness printed to stderr, 3 resource-guard refusals.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import pathlib
import re
import sys
import time
from fractions import Fraction

from .counting import (
    ResourceGuardError,
    count_cliques,
    count_copies,
    count_cycles,
    count_labeled,
    count_xy_paths,
    max_xy_paths,
    packing_number,
)
from .exact import format_fraction, parse_exact, parse_rational, value_mul, value_to_json
from .expectation import (
    DEFAULT_EDGE_CAP,
    DEFAULT_HEURISTIC_VERTEX_CAP,
    EdgeCapError,
    expectation_threshold,
    expected_copies,
    is_q_sparse,
    q_min,
    required_L,
)
from .graphs import (
    Graph,
    GraphParseError,
    automorphism_count,
    bowtie_graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    max_density,
    parse_graph,
    parse_graph6,
    path_graph,
    path_power_graph,
    petersen_graph,
    spider_graph,
    star_graph,
    theta_graph,
    to_graph6,
)
from .montecarlo import (
    DEFAULT_CONFIDENCE,
    DEFAULT_TOLERANCE,
    DEFAULT_TRIALS,
    GENERATOR_FAMILIES,
    TrialPlan,
    derive_rng,
    estimate_pc,
    generate_sparse,
)
from .search import (
    DEFAULT_COOLING,
    DEFAULT_TOP_K,
    SWEEP_VERTEX_CAP,
    exhaustive_sweep,
    extremal_search,
)
from .util import PreconditionError
from .verifier import (
    count_legal_sequences,
    ell_hat,
    peel_min_degree,
    verify_fit_partition,
    verify_main_inequality,
    verify_packing,
    verify_structure,
)

SCHEMA = "kklab/1"


class _InputError(Exception):
    """Bad input outside argparse's reach; reported with exit code 1."""


class _Parser(argparse.ArgumentParser):
    # route usage errors through the normal exit-code path instead of exit 2
    def error(self, message):
        raise _InputError(message)


# -- value converters -------------------------------------------------------


def _exact_value(text: str):
    try:
        return parse_exact(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _precision(text: str) -> int:
    try:
        digits = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if digits < 4:
        raise argparse.ArgumentTypeError("precision must be at least 4 digits")
    return digits


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma list of integers: {text!r}")


# -- graph loading -----------------------------------------------------------

_TOKEN_RE = re.compile(r"^(K|C|P|star|empty)(\d+)$")


def _graph_token(spec: str) -> Graph | None:
    m = _TOKEN_RE.match(spec)
    if m:
        kind, num = m.group(1), int(m.group(2))
        if kind == "K":
            return complete_graph(num)
        if kind == "C":
            return cycle_graph(num)
        if kind == "P":
            return path_graph(num)
        if kind == "star":
            return star_graph(num)
        return empty_graph(num)
    if spec == "petersen":
        return petersen_graph()
    if spec == "bowtie":
        return bowtie_graph()
    parts = spec.split(":")
    if parts[0] == "theta" and len(parts) == 4:
        return theta_graph(*(int(p) for p in parts[1:]))
    if parts[0] == "spider" and len(parts) >= 2:
        return spider_graph([int(p) for p in parts[1:]])
    if parts[0] == "pathpower" and len(parts) == 3:
        return path_power_graph(int(parts[1]), int(parts[2]))
    return None


def load_graph(spec: str) -> Graph:
    """Resolve a --graph/--pattern argument.

    Accepts a file path (graph6 or edge-list content, sniffed), ``-`` for
    stdin, ``g6:TOKEN`` for an inline graph6 string, or a named form such
    as K4, C5, P3, star4, empty6, petersen, bowtie, theta:1:2:2,
    spider:1:2:2, pathpower:6:2.  An existing file wins over a name.
    """
    if spec == "-":
        return parse_graph(sys.stdin.read())
    if spec.startswith("g6:"):
        return parse_graph6(spec[3:])
    path = pathlib.Path(spec)
    if path.exists():
        return parse_graph(path.read_text())
    try:
        g = _graph_token(spec)
    except (ValueError, PreconditionError) as exc:
        raise _InputError(f"bad graph token {spec!r}: {exc}")
    if g is not None:
        return g
    raise _InputError(
        f"cannot read graph {spec!r}: no such file and not a recognized name"
    )


# -- config file -------------------------------------------------------------


def _inject_config(argv: list) -> list:
    """Expand ``--config FILE`` (key=value lines) into argv tokens.

    Config tokens are inserted right after the subcommand so explicit
    flags, parsed later, win on conflict.
    """
    path = None
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
    if path is None or not argv:
        return argv
    try:
        text = pathlib.Path(path).read_text()
    except OSError as exc:
        raise _InputError(f"cannot read config file: {exc}")
    extra = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise _InputError(f"malformed config line (need key=value): {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip().replace("_", "-")
        value = value.strip()
        if key == "config":
            continue
        if value.lower() in ("true", "yes"):
            extra.append(f"--{key}")
        elif value.lower() in ("false", "no"):
            continue
        else:
            extra.append(f"--{key}={value}")
    cut = 2 if argv[0] == "verify" and len(argv) >= 2 else 1
    return argv[:cut] + extra + argv[cut:]


# -- output ------------------------------------------------------------------


def _flat_lines(value, prefix: str, out: list) -> None:
    if isinstance(value, dict):
        for key, sub in value.items():
            _flat_lines(sub, f"{prefix}.{key}" if prefix else str(key), out)
    elif isinstance(value, (list, tuple)):
        for idx, sub in enumerate(value):
            _flat_lines(sub, f"{prefix}[{idx}]", out)
    else:
        out.append(f"{prefix} = {value}")


def _render_text(doc: dict) -> str:
    lines: list = []
    _flat_lines(doc, "", lines)
    return "\n".join(lines) + "\n"


def _emit(args, doc: dict, csv_text: str | None = None) -> None:
    fmt = getattr(args, "format", "json")
    if fmt == "csv":
        if csv_text is None:
            raise _InputError("csv output is not available for this subcommand")
        rendered = csv_text
    elif fmt == "text":
        text = doc.pop("_text", None)
        rendered = text if text is not None else _render_text(doc)
    else:
        doc.pop("_text", None)
        rendered = json.dumps(doc, indent=2) + "\n"
    out_path = getattr(args, "out", None)
    if out_path:
        pathlib.Path(out_path).write_text(rendered)
    else:
        sys.stdout.write(rendered)


def _leaderboard_csv(entries) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["rank", "graph6", "score_lo", "score_hi", "N", "moves", "seed", "chain"])
    for rank, entry in enumerate(entries):
        lo, hi = entry.enclosure
        writer.writerow(
            [rank, to_graph6(entry.graph), lo, hi, entry.copies, entry.moves, entry.seed, entry.chain]
        )
    return buf.getvalue()


# -- shared serializers ------------------------------------------------------


def _sparsity_doc(report, label: str, digits: int) -> dict:
    return {
        "schema": SCHEMA,
        label: value_to_json(report.threshold, digits),
        "base_pair": [str(report.base_pair[0]), report.base_pair[1]],
        "enclosure": list(report.enclosure),
        "n": report.n,
        "witness6": to_graph6(report.witness),
        "witness_edges": [list(e) for e in report.witness_edges],
        "classes": [
            {
                "descriptor": c.descriptor,
                "v": c.v,
                "e": c.e,
                "aut": c.aut,
                "subsets": str(c.subsets),
                "threshold": value_to_json(c.threshold, digits),
            }
            for c in report.classes
        ],
        "lower_bound_only": report.lower_bound_only,
        "table_complete": report.table_complete,
    }


def _reports_doc(reports: list) -> dict:
    return {
        "schema": SCHEMA,
        "all_pass": all(r.verdict for r in reports),
        "reports": [r.to_json() for r in reports],
    }


# -- subcommand handlers -----------------------------------------------------


def _cmd_count(args):
    host = load_graph(args.graph)
    if (args.pattern is None) == (args.family is None):
        raise _InputError("give exactly one of --pattern or --family")
    start = time.perf_counter()
    if args.pattern is not None:
        pattern = load_graph(args.pattern)
        if args.labeled:
            value = count_labeled(
                host, pattern, node_budget=args.node_budget, threads=args.threads
            )
        else:
            value = count_copies(
                host, pattern, node_budget=args.node_budget, threads=args.threads
            )
    else:
        if args.param is None:
            raise _InputError("--family requires --param")
        if args.family == "clique":
            value = count_cliques(
                host, args.param, node_budget=args.node_budget, threads=args.threads
            )
        elif args.family == "cycle":
            value = count_cycles(
                host, args.param, node_budget=args.node_budget, threads=args.threads
            )
        else:
            if args.x is None or args.y is None:
                raise _InputError("--family xy-path requires --x and --y")
            value = count_xy_paths(
                host, args.x, args.y, args.param, node_budget=args.node_budget
            )
    elapsed = time.perf_counter() - start
    return {"schema": SCHEMA, "count": str(value), "elapsed_s": round(elapsed, 6)}, None


def _cmd_gamma(args):
    host = load_graph(args.graph)
    value, pair = max_xy_paths(host, args.length, node_budget=args.node_budget)
    return {"schema": SCHEMA, "gamma": str(value), "pair": list(pair)}, None


def _cmd_pack(args):
    host = load_graph(args.graph)
    pattern = load_graph(args.pattern)
    value = packing_number(
        host, pattern, mode=args.mode, copy_cap=args.copy_cap, node_budget=args.node_budget
    )
    return {"schema": SCHEMA, "packing": str(value), "mode": args.mode}, None


def _cmd_density(args):
    host = load_graph(args.graph)
    best = max_density(host)
    return {
        "schema": SCHEMA,
        "density": f"{best.numerator}/{best.denominator}",
        "witness": list(best.witness),
    }, None


def _cmd_aut(args):
    host = load_graph(args.graph)
    return {"schema": SCHEMA, "aut": str(automorphism_count(host))}, None


def _cmd_qmin(args):
    host = load_graph(args.graph)
    report = q_min(
        host,
        args.n,
        mode=args.mode,
        edge_cap=args.edge_cap,
        heuristic_vertex_cap=args.heuristic_vertex_cap,
        digits=args.precision,
        threads=args.threads,
    )
    return _sparsity_doc(report, "q_min", args.precision), None


def _cmd_pe(args):
    host = load_graph(args.graph)
    report = expectation_threshold(
        host, args.n, edge_cap=args.edge_cap, digits=args.precision, threads=args.threads
    )
    return _sparsity_doc(report, "p_E", args.precision), None


def _cmd_sparse_check(args):
    host = load_graph(args.graph)
    check = is_q_sparse(host, args.n, args.q, edge_cap=args.edge_cap)
    doc = {
        "schema": SCHEMA,
        "sparse": check.sparse,
        "n": check.n,
        "q": value_to_json(check.q, args.precision),
    }
    if not check.sparse:
        doc["witness6"] = to_graph6(check.witness)
        doc["witness_edges"] = [list(e) for e in check.witness_edges]
        doc["expectation"] = value_to_json(check.expectation, args.precision)
    return doc, None


def _cmd_expect(args):
    pattern = load_graph(args.pattern)
    has_p = args.p is not None
    has_lq = args.L is not None and args.q is not None
    if has_p == has_lq or (args.L is None) != (args.q is None):
        raise _InputError("give exactly one of --p or the pair --q with --L")
    p = args.p if has_p else value_mul(args.L, args.q)
    value = expected_copies(args.n, p, pattern)
    return {
        "schema": SCHEMA,
        "expectation": value_to_json(value, args.precision),
        "p": value_to_json(p, args.precision),
        "n": args.n,
    }, None


def _cmd_required_l(args):
    host = load_graph(args.graph)
    pattern = load_graph(args.pattern)
    req = required_L(
        host,
        pattern,
        args.n,
        args.q,
        digits=args.precision,
        node_budget=args.node_budget,
        threads=args.threads,
    )
    return {
        "schema": SCHEMA,
        "required_L": value_to_json(req.value, args.precision),
        "enclosure": list(req.enclosure),
        "N": str(req.copies),
        "E_q": value_to_json(req.expectation, args.precision),
        "pattern_edges": req.pattern_edges,
    }, None


def _cmd_verify_props(args):
    host = load_graph(args.graph)
    reports = verify_structure(host, args.n, args.q)
    if args.pattern is not None:
        pattern = load_graph(args.pattern)
        reports.append(
            verify_packing(
                host, pattern, args.n, args.q,
                copy_cap=args.copy_cap, node_budget=args.node_budget,
            )
        )
    return _reports_doc(reports), None


def _cmd_verify_fit(args):
    host = load_graph(args.graph)
    pattern = load_graph(args.pattern)
    report = verify_fit_partition(
        host, pattern, args.eps, args.d,
        node_budget=args.node_budget, threads=args.threads,
    )
    return _reports_doc([report]), None


def _cmd_verify_legal(args):
    result = count_legal_sequences(args.f, args.eps, args.d, args.D, args.d_cap)
    return {
        "schema": SCHEMA,
        "count": str(result.count),
        "big_threshold": result.big_threshold,
        "bound": str(result.bound),
        "bound_applicable": result.bound_applicable,
        "bound_holds": result.bound_holds,
    }, None


def _cmd_verify_main(args):
    host = load_graph(args.graph)
    pattern = load_graph(args.pattern)
    report = verify_main_inequality(
        host, pattern, args.n, args.q, args.L,
        node_budget=args.node_budget, threads=args.threads,
    )
    return _reports_doc([report]), None


def _cmd_peel(args):
    host = load_graph(args.graph)
    pattern = load_graph(args.pattern)
    rng = derive_rng(args.seed, "peel") if args.seed is not None else None
    result = peel_min_degree(
        host, pattern, args.a, rng=rng,
        copy_cap=args.copy_cap, node_budget=args.node_budget,
    )
    return {
        "schema": SCHEMA,
        "surviving": list(result.surviving),
        "degrees": [str(d) for d in result.degrees],
        "total_copies": str(result.total_copies),
    }, None


def _cmd_ellhat(args):
    result = ell_hat(args.n, args.q, args.delta)
    return {
        "schema": SCHEMA,
        "ell_hat": str(result.value),
        "n": result.n,
        "delta": format_fraction(result.delta),
        "at_value_ok": result.at_value_ok,
        "above_value_fails": result.above_value_fails,
    }, None


def _cmd_pc(args):
    pattern = load_graph(args.pattern)
    plan = TrialPlan(
        n=args.n,
        pattern=pattern,
        trials=args.trials,
        seed=args.seed,
        tolerance=args.tol,
        confidence=args.confidence,
    )
    result = estimate_pc(plan, threads=args.threads)
    doc = {"schema": SCHEMA}
    doc.update(result.to_json())
    return doc, result.trace_csv()


def _cmd_gen(args):
    params = {}
    for key in ("vertices", "boost", "sizes", "a", "b", "c", "legs", "power"):
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    rng = derive_rng(args.seed, "gen", args.family)
    g = generate_sparse(
        args.n, args.q, args.family,
        rng=rng, params=params or None, repair_budget=args.repair_budget,
    )
    g6 = to_graph6(g)
    return {
        "schema": SCHEMA,
        "family": args.family,
        "graph6": g6,
        "vertices": g.n,
        "edges": g.edge_count,
        "n": args.n,
        "q": value_to_json(args.q, args.precision),
        "sparse": True,
        "_text": g6 + "\n",
    }, None


def _cmd_search(args):
    pattern = load_graph(args.pattern)
    result = extremal_search(
        args.n,
        args.q,
        pattern,
        budget=args.budget,
        seed=args.seed,
        host_cap=args.host_cap,
        chains=args.chains,
        top_k=args.top_k,
        threads=args.threads,
        cooling=args.cooling,
        edge_cap=args.edge_cap,
        digits=args.precision,
    )
    doc = {"schema": SCHEMA}
    doc.update(result.to_json())
    return doc, _leaderboard_csv(result.entries)


def _cmd_sweep(args):
    pattern = load_graph(args.pattern)
    result = exhaustive_sweep(
        args.n,
        args.q,
        pattern,
        v_cap=args.v_cap,
        threads=args.threads,
        edge_cap=args.edge_cap,
        digits=args.precision,
    )
    doc = {"schema": SCHEMA}
    doc.update(result.to_json())
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["graph6", "score_lo", "score_hi", "N", "candidates", "sparse_candidates"])
    lo, hi = result.enclosure
    writer.writerow(
        [to_graph6(result.graph), lo, hi, result.copies, result.candidates, result.sparse_candidates]
    )
    return doc, buf.getvalue()


# -- parser ------------------------------------------------------------------


def _default_threads() -> int:
    return os.cpu_count() or 1


def _add_common(p, graph=False, pattern=False, n=False, q=False, threads=False,
                precision=False, node_budget=False, copy_cap=False, edge_cap=False,
                seed=None):
    if graph:
        p.add_argument("--graph", required=True, help="host graph: path, -, g6:TOKEN, or a name like K4/C5/P3")
    if pattern:
        p.add_argument("--pattern", required=(pattern == "required"), default=None,
                       help="pattern graph: path, -, g6:TOKEN, or a name like K3/C4/P3")
    if n:
        p.add_argument("--n", type=int, required=True, help="ambient vertex count")
    if q:
        p.add_argument("--q", type=_exact_value, required=(q == "required"), default=None,
                       help="probability: a/b, decimal, or root:V:K for V^(-1/K)")
    if threads:
        p.add_argument("--threads", type=int, default=_default_threads(),
                       help="worker threads; results do not depend on the value")
    if precision:
        p.add_argument("--precision", type=_precision, default=12,
                       help="decimal digits in enclosures (minimum 4)")
    if node_budget:
        p.add_argument("--node-budget", type=int, default=None,
                       help="cap on backtracking nodes before a resource refusal")
    if copy_cap:
        p.add_argument("--copy-cap", type=int, default=None,
                       help="cap on materialized copy lists before a resource refusal")
    if edge_cap:
        p.add_argument("--edge-cap", type=int, default=DEFAULT_EDGE_CAP,
                       help="refuse exact subset scans beyond this many edges")
    if seed is not None:
        p.add_argument("--seed", type=int, default=seed, help="master seed for derived streams")
    p.add_argument("--config", default=None,
                   help="key=value file supplying defaults; explicit flags win")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json",
                   help="output format (csv only where a table exists)")
    p.add_argument("--out", default=None, help="write the report to this path instead of stdout")


def build_parser() -> _Parser:
    parser = _Parser(prog="kklab", description=__doc__, add_help=True)
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("count", help="exact copy and embedding counts")
    p.add_argument("--family", choices=("clique", "cycle", "xy-path"), default=None)
    p.add_argument("--param", type=int, default=None,
                   help="family size: clique order, cycle length, or path edge count")
    p.add_argument("--labeled", action="store_true", help="count labeled embeddings instead of copies")
    p.add_argument("--x", type=int, default=None)
    p.add_argument("--y", type=int, default=None)
    _add_common(p, graph=True, pattern=True, threads=True, node_budget=True)
    p.set_defaults(handler=_cmd_count)

    p = sub.add_parser("gamma", help="max x-y path count over endpoint pairs")
    p.add_argument("--length", type=int, required=True, help="path length in edges")
    _add_common(p, graph=True, node_budget=True)
    p.set_defaults(handler=_cmd_gamma)

    p = sub.add_parser("pack", help="edge-disjoint packing number")
    p.add_argument("--mode", choices=("exact", "greedy"), default="exact")
    _add_common(p, graph=True, pattern="required", node_budget=True, copy_cap=True)
    p.set_defaults(handler=_cmd_pack)

    p = sub.add_parser("density", help="max subgraph density e(U)/|U| with witness")
    _add_common(p, graph=True)
    p.set_defaults(handler=_cmd_density)

    p = sub.add_parser("aut", help="automorphism group order")
    _add_common(p, graph=True)
    p.set_defaults(handler=_cmd_aut)

    p = sub.add_parser("qmin", help="least q at which the graph is q-sparse")
    p.add_argument("--mode", choices=("exact", "heuristic"), default="exact",
                   help="heuristic scans connected classes only and flags a lower bound")
    p.add_argument("--heuristic-vertex-cap", type=int, default=DEFAULT_HEURISTIC_VERTEX_CAP,
                   help="heuristic-mode cap on scanned subgraph orders")
    _add_common(p, graph=True, n=True, threads=True, precision=True, edge_cap=True)
    p.set_defaults(handler=_cmd_qmin)

    p = sub.add_parser("pe", help="expectation threshold p_E (subgraph expectations >= 1/2)")
    _add_common(p, graph=True, n=True, threads=True, precision=True, edge_cap=True)
    p.set_defaults(handler=_cmd_pe)

    p = sub.add_parser("sparse-check", help="q-sparseness verdict with violating witness")
    _add_common(p, graph=True, n=True, q="required", precision=True, edge_cap=True)
    p.set_defaults(handler=_cmd_sparse_check)

    p = sub.add_parser("expect", help="expected copy count at p, or at L*q")
    p.add_argument("--p", type=_exact_value, default=None,
                   help="probability; exclusive with --q/--L")
    p.add_argument("--L", type=_rational, default=None,
                   help="multiplier so the comparison probability is L*q")
    _add_common(p, pattern="required", n=True, q=True, precision=True)
    p.set_defaults(handler=_cmd_expect)

    p = sub.add_parser("required-l", help="least L with N(H,F) = E_{Lq}X_F")
    _add_common(p, graph=True, pattern="required", n=True, q="required",
                threads=True, precision=True, node_budget=True)
    p.set_defaults(handler=_cmd_required_l)

    p = sub.add_parser("verify", help="machine-checked propositions")
    vsub = p.add_subparsers(dest="mode", required=True, parser_class=_Parser)

    vp = vsub.add_parser("props", help="structure bounds for a q-sparse host (plus packing with --pattern)")
    _add_common(vp, graph=True, pattern=True, n=True, q="required",
                node_budget=True, copy_cap=True)
    vp.set_defaults(handler=_cmd_verify_props)

    vp = vsub.add_parser("fit", help="fit-class partition identity for a tree pattern")
    vp.add_argument("--eps", type=_rational, required=True)
    vp.add_argument("--d", type=_rational, required=True)
    _add_common(vp, graph=True, pattern="required", threads=True, node_budget=True)
    vp.set_defaults(handler=_cmd_verify_fit)

    vp = vsub.add_parser("legal", help="legal degree-sequence count against the binomial bound")
    vp.add_argument("--f", type=_int_list, required=True,
                    help="comma list of previous-round degree values, e.g. 1,1,0")
    vp.add_argument("--eps", type=_rational, required=True)
    vp.add_argument("--d", type=_rational, required=True)
    vp.add_argument("--D", type=int, required=True, help="degree total the sequences must reach")
    vp.add_argument("--d-cap", type=int, required=True, help="per-position degree ceiling")
    _add_common(vp)
    vp.set_defaults(handler=_cmd_verify_legal)

    vp = vsub.add_parser("main", help="strict inequality N(H,F) < L^{e_F} E_qX_F")
    vp.add_argument("--L", type=_rational, required=True)
    _add_common(vp, graph=True, pattern="required", n=True, q="required",
                threads=True, node_budget=True)
    vp.set_defaults(handler=_cmd_verify_main)

    p = sub.add_parser("peel", help="iterated low-copy-degree vertex deletion")
    p.add_argument("--a", type=_rational, required=True, help="copy-degree threshold")
    p.add_argument("--seed", type=int, default=None,
                   help="randomize deletion order (survivors are order-independent)")
    _add_common(p, graph=True, pattern="required", threads=True, node_budget=True,
                copy_cap=True)
    p.set_defaults(handler=_cmd_peel)

    p = sub.add_parser("ellhat", help="largest l with (nq)^l below n^(1-delta*c)")
    p.add_argument("--delta", type=_rational, required=True)
    _add_common(p, n=True, q="required")
    p.set_defaults(handler=_cmd_ellhat)

    p = sub.add_parser("pc", help="Monte Carlo threshold estimate by bisection")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--tol", type=_rational, default=DEFAULT_TOLERANCE,
                   help="bisection stops once the bracket is this narrow")
    p.add_argument("--confidence", type=float, default=DEFAULT_CONFIDENCE)
    _add_common(p, pattern="required", n=True, threads=True, seed=0)
    p.set_defaults(handler=_cmd_pc)

    p = sub.add_parser("gen", help="certified q-sparse instance generators")
    p.add_argument("--family", choices=GENERATOR_FAMILIES, required=True)
    p.add_argument("--vertices", type=int, default=None, help="gnp-repair / path-power order")
    p.add_argument("--boost", type=_rational, default=None, help="gnp-repair initial density multiplier")
    p.add_argument("--sizes", type=_int_list, default=None, help="clique-union block orders, e.g. 3,4")
    p.add_argument("--a", type=int, default=None, help="theta arm length")
    p.add_argument("--b", type=int, default=None, help="theta arm length")
    p.add_argument("--c", type=int, default=None, help="theta arm length")
    p.add_argument("--legs", type=_int_list, default=None, help="spider leg lengths, e.g. 1,2,2")
    p.add_argument("--power", type=int, default=None, help="path-power exponent")
    p.add_argument("--repair-budget", type=int, default=None,
                   help="max repair deletions before giving up")
    _add_common(p, n=True, q="required", threads=True, precision=True, seed=0)
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("search", help="simulated-annealing hunt for copy-rich sparse hosts")
    p.add_argument("--budget", type=int, required=True, help="proposed moves per chain")
    p.add_argument("--chains", type=int, default=1)
    p.add_argument("--host-cap", type=int, default=None,
                   help="labeled vertices available to the annealer (default min(12, n))")
    p.add_argument("--top-k", type=int, default=DEFAULT_TOP_K)
    p.add_argument("--cooling", type=float, default=DEFAULT_COOLING)
    _add_common(p, pattern="required", n=True, q="required", threads=True,
                precision=True, edge_cap=True, seed=0)
    p.set_defaults(handler=_cmd_search)

    p = sub.add_parser("sweep", help="exact maximizer over all small sparse hosts")
    p.add_argument("--v-cap", type=int, default=6,
                   help=f"catalog order ceiling (at most {SWEEP_VERTEX_CAP})")
    _add_common(p, pattern="required", n=True, q="required", threads=True,
                precision=True, edge_cap=True)
    p.set_defaults(handler=_cmd_sweep)

    return parser


# -- entry points ------------------------------------------------------------


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _inject_config(argv)
        args = build_parser().parse_args(argv)
        doc, csv_text = args.handler(args)
        _emit(args, doc, csv_text)
        return 0
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GraphParseError as exc:
        print(f"error: malformed graph: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness: {exc.witness}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (EdgeCapError, ResourceGuardError) as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return 3
    except RuntimeError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
