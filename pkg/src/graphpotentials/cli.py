"""Command line interface.

Exit codes: 0 on success, 2 on usage errors (bad arguments, malformed
input files), 3 when a verification or cross-check fails.  All output is
deterministic: keys are sorted and worker threads never affect ordering.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction


class UsageError(Exception):
    pass


class VerificationFailure(Exception):
    pass


def _load_graph(path: str):
    from .graphs import graph_from_json, validate

    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc
    try:
        g = graph_from_json(data)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    problems = validate(g)
    if problems:
        raise UsageError(f"invalid graph in {path}: " + "; ".join(problems))
    return g


def _exps_key(exps) -> str:
    return ",".join(str(x) for x in exps)


def _poly_json(p) -> dict:
    return {
        "variables": list(p.vars),
        "terms": {_exps_key(e): str(p.terms[e]) for e in sorted(p.terms)},
    }


def _frac_str(x: Fraction) -> str:
    return str(x)


def _print_json(data):
    print(json.dumps(data, indent=2, sort_keys=True))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_potential(args) -> int:
    from .potential import graph_potential

    g = _load_graph(args.graph)
    bundle = graph_potential(g)
    if args.json:
        _print_json({
            "variables": list(bundle.variables),
            "per_vertex": {v: _poly_json(w) for v, w in sorted(bundle.per_vertex.items())},
            "potential": _poly_json(bundle.potential),
        })
    else:
        for v in sorted(bundle.per_vertex):
            print(f"{v}: {bundle.per_vertex[v]}")
        print(f"total: {bundle.potential}")
    return 0


def _resolve_period_graph(args):
    from .graphs import necklace_graph

    if args.graph:
        return _load_graph(args.graph)
    if args.genus is None or args.parity is None:
        raise UsageError("need either --graph or both --genus and --parity")
    if args.genus < 2:
        raise UsageError("closed graphs need genus >= 2")
    return necklace_graph(args.genus, open_ends=False, parity=args.parity)


def cmd_period(args) -> int:
    from .periods import periods_of_graph

    g = _resolve_period_graph(args)
    methods = ["brute", "tqft"] if args.method == "both" else [args.method]
    results = {}
    with ThreadPoolExecutor(max_workers=args.threads) as pool:
        futures = {m: pool.submit(periods_of_graph, g, args.order, m, args.backend)
                   for m in methods}
        for m in methods:
            try:
                results[m] = futures[m].result()
            except (ValueError, ArithmeticError) as exc:
                raise UsageError(f"{m}: {exc}") from exc
    if len(methods) == 2 and results["brute"].pi != results["tqft"].pi:
        print("period mismatch:", file=sys.stderr)
        print(f"  brute: {list(results['brute'].pi)}", file=sys.stderr)
        print(f"  tqft:  {list(results['tqft'].pi)}", file=sys.stderr)
        raise VerificationFailure("brute and tqft periods disagree")
    seq = results[methods[0]]
    if args.json:
        _print_json({
            "fingerprint": seq.graph_fingerprint,
            "order": seq.order,
            "method": args.method,
            "pi": [int(v) for v in seq.pi],
        })
    else:
        for k, v in enumerate(seq.pi):
            print(f"{k} {v}")
    return 0


def cmd_mutate(args) -> int:
    from .graphs import graph_to_json
    from .mutation import mutate
    from .potential import graph_potential

    g = _load_graph(args.graph)
    bundle = graph_potential(g)
    try:
        bundle2, cert = mutate(bundle, args.edge)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"cannot mutate at {args.edge!r}: {exc}") from exc
    except ArithmeticError as exc:
        raise VerificationFailure(str(exc)) from exc
    doc = {
        "graph": graph_to_json(bundle2.graph),
        "certificate": {
            "edge": cert.edge,
            "colored_case": cert.colored_case,
            "slot_vars": [list(cert.slot_vars[0]), list(cert.slot_vars[1])],
            "mu": _poly_json(cert.mu),
            "nu": _poly_json(cert.nu),
            "mu_prime": _poly_json(cert.mu_prime),
            "nu_prime": _poly_json(cert.nu_prime),
            "substitution": str(cert.substitution),
            "product_identity_checked": cert.product_identity_checked,
        },
    }
    _print_json(doc)
    return 0


def cmd_verify_mutation(args) -> int:
    from .mutation import mutation_report
    from .potential import graph_potential

    g = _load_graph(args.graph)
    bundle = graph_potential(g)
    if args.edge:
        edges = [args.edge]
    else:
        edges = sorted(e.id for e in g.edges if e.ends[0] != e.ends[1])
        if not edges:
            raise UsageError("graph has no non-loop internal edges")

    def check(eid):
        try:
            return eid, mutation_report(bundle, eid)
        except (KeyError, ValueError) as exc:
            raise UsageError(f"edge {eid!r}: {exc}") from exc

    with ThreadPoolExecutor(max_workers=args.threads) as pool:
        reports = dict(pool.map(check, edges))
    failed = False
    for eid in edges:
        report = reports[eid]
        ok = all(report.values())
        failed = failed or not ok
        detail = " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in sorted(report.items()))
        print(f"{'PASS' if ok else 'FAIL'} edge {eid}: {detail}")
    if failed:
        raise VerificationFailure("mutation verification failed")
    return 0


def cmd_verify_coloring(args) -> int:
    from .graphs import coloring_boundary_move
    from .potential import graph_potential

    g = _load_graph(args.graph)
    bundle = graph_potential(g)
    failed = False
    for e in sorted(g.edges, key=lambda e: e.id):
        moved = coloring_boundary_move(g, e.id)
        moved_potential = graph_potential(moved).potential
        expected = bundle.potential.negate_var(e.id)
        ok = moved_potential == expected
        failed = failed or not ok
        print(f"{'PASS' if ok else 'FAIL'} edge {e.id}: "
              f"boundary move matches inverting {e.id}")
    if failed:
        raise VerificationFailure("coloring verification failed")
    return 0


def cmd_table(args) -> int:
    import math

    from .tqft import trace_formula_table

    if args.genus_max < 2:
        raise UsageError("--genus-max must be >= 2")
    table = trace_formula_table(args.genus_max, args.order)
    columns = [(g, p) for g in range(2, args.genus_max + 1) for p in (0, 1)]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k"] + [f"g{g}e{p}" for g, p in columns])
    for k in range(args.order + 1):
        row = [k]
        for col in columns:
            v = table[col][k] * math.factorial(k)
            if v.denominator != 1:
                raise VerificationFailure(f"non-integral period at k={k}, column {col}")
            row.append(v.numerator)
        writer.writerow(row)
    sys.stdout.write(buf.getvalue())
    return 0


def cmd_kernel(args) -> int:
    from .tqft import t1_kernel

    kernel = t1_kernel(args.order)
    D = kernel.order
    entries = {}
    for i in range(-D, D + 1):
        for j in range(-D, D + 1):
            series = kernel.entry(i, j)
            if any(series.coeffs):
                entries[f"{i},{j}"] = [_frac_str(c) for c in series.coeffs]
    _print_json({"order": D, "entries": entries})
    return 0


def cmd_grassmann(args) -> int:
    from .potential import grassmannian_limit

    g = _load_graph(args.graph)
    distinguished = {}
    for item in args.distinguished:
        if "=" not in item:
            raise UsageError(f"--distinguished takes VERTEX=SLOT, got {item!r}")
        v, s = item.split("=", 1)
        distinguished[v] = s
    try:
        p = grassmannian_limit(g, distinguished)
    except (ValueError, ArithmeticError) as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        _print_json(_poly_json(p))
    else:
        print(p)
    return 0


def cmd_wdvv(args) -> int:
    from .tqft import wdvv_check

    parities = (0, 1) if args.parity == "both" else (int(args.parity),)
    failed = False
    for parity in parities:
        ok = wdvv_check(parity, args.order)
        failed = failed or not ok
        print(f"{'PASS' if ok else 'FAIL'} parity {parity}: "
              f"four-point symmetry at order {args.order}")
    if failed:
        raise VerificationFailure("four-point symmetry failed")
    return 0


def cmd_glue(args) -> int:
    from .tqft import glue, k_state

    g = _load_graph(args.graph)
    try:
        state = k_state(g, args.order)
        glued = glue(state, args.leaf_a, args.leaf_b)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    doc = {
        "order": glued.order,
        "leaf_vars": list(glued.leaf_vars),
        "coefficients": [
            {"degree": d, "terms": {_exps_key(e): _frac_str(c)
                                    for e, c in sorted(glued.value[d].terms.items())}}
            for d in range(glued.order + 1)
        ],
    }
    if args.json:
        _print_json(doc)
    else:
        for row in doc["coefficients"]:
            terms = row["terms"]
            if terms:
                body = " ".join(f"{k or '1'}:{v}" for k, v in terms.items())
            else:
                body = "0"
            print(f"t^{row['degree']}: {body}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphpot",
        description="Graph potentials: periods, mutations, and kernel traces "
                    "in exact arithmetic.")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker pool size for batched computations "
                             "(output is identical for any value)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("potential", help="print the potential of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("period", help="period sequence of a closed graph")
    p.add_argument("--graph")
    p.add_argument("--genus", type=int)
    p.add_argument("--parity", type=int, choices=(0, 1))
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--method", choices=("brute", "tqft", "both"), default="both")
    p.add_argument("--backend", choices=("auto", "pure", "numba"), default="auto")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("mutate", help="rewire an edge and emit graph plus certificate")
    p.add_argument("--graph", required=True)
    p.add_argument("--edge", required=True)
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("verify", help="symbolic verifications")
    vsub = p.add_subparsers(dest="verify_what", required=True)
    pm = vsub.add_parser("mutation", help="mu/nu factorization and substitution checks")
    pm.add_argument("--graph", required=True)
    pm.add_argument("--edge", help="default: every non-loop edge")
    pm.set_defaults(func=cmd_verify_mutation)
    pc = vsub.add_parser("coloring", help="boundary moves match inverting edge variables")
    pc.add_argument("--graph", required=True)
    pc.set_defaults(func=cmd_verify_coloring)

    p = sub.add_parser("table", help="CSV period table over genus and parity")
    p.add_argument("--genus-max", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("kernel", help="dump the T1 kernel matrix")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("grassmann", help="degenerate a genus-0 potential")
    p.add_argument("--graph", required=True)
    p.add_argument("--distinguished", action="append", default=[],
                   metavar="VERTEX=SLOT", help="distinguished slot per vertex")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_grassmann)

    p = sub.add_parser("wdvv", help="four-point symmetry check")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--parity", choices=("0", "1", "both"), default="both")
    p.set_defaults(func=cmd_wdvv)

    p = sub.add_parser("glue", help="glue two leaves of a boundary state")
    p.add_argument("--graph", required=True)
    p.add_argument("--leaf-a", required=True)
    p.add_argument("--leaf-b", required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_glue)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
