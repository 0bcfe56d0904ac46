"""Stress the proposition suite over generated sparse instances.

Draws hosts from every generator family on a deterministic seed ladder,
keeps the ones the generators certify as q-sparse, and runs the full
structure and packing checks on each.  Any verdict failure is printed
with its inputs; the exit status reflects the audit outcome.
"""

import argparse
from fractions import Fraction

from kklab import (
    PreconditionError,
    complete_graph,
    derive_rng,
    generate_sparse,
    path_graph,
    verify_packing,
    verify_structure,
)

GRIDS = {
    "theta": [{"a": a, "b": b, "c": c} for a, b, c in ((1, 2, 2), (2, 2, 3), (2, 3, 4), (3, 4, 4))],
    "spider": [{"legs": legs} for legs in ([1, 2], [2, 2, 2], [1, 3, 3], [2, 2, 3, 3])],
    "path-power": [{"vertices": v, "power": 2} for v in (5, 6, 7, 8)],
    "clique-union": [{"sizes": s} for s in ([3], [4], [3, 3], [4, 3])],
    "gnp-repair": [{"vertices": v} for v in (4, 5, 6)],
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--draws", type=int, default=6, help="seeds per (family, params, q) cell")
    ap.add_argument("--n", type=int, default=14, help="ambient vertex count")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    probabilities = (Fraction(1, 3), Fraction(2, 5), Fraction(1, 2))
    pack = {"clique-union": complete_graph(3), "gnp-repair": complete_graph(3)}
    failures = []
    counts = {}
    for family, grid in GRIDS.items():
        kept = tried = 0
        for params in grid:
            for q in probabilities:
                for draw in range(args.draws):
                    tried += 1
                    rng = derive_rng(args.seed, family, str(params), str(q), draw)
                    try:
                        host = generate_sparse(args.n, q, family, rng=rng, params=params)
                    except (PreconditionError, RuntimeError):
                        continue
                    kept += 1
                    reports = list(verify_structure(host, args.n, q))
                    reports.append(
                        verify_packing(host, pack.get(family, path_graph(2)), args.n, q)
                    )
                    for rep in reports:
                        if not rep.verdict:
                            failures.append((family, params, str(q), rep.prop_id))
        counts[family] = (kept, tried)

    for family, (kept, tried) in counts.items():
        print(f"{family:14} kept {kept:4d} of {tried:4d} draws")
    if failures:
        print(f"\n{len(failures)} proposition failures:")
        for item in failures[:20]:
            print("  ", item)
        return 1
    print(f"\nall propositions held on {sum(k for k, _ in counts.values())} instances")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
