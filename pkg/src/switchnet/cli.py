"""Batch command-line front-end.

Commands: verify-network, build-upper, build-base, certify-lower, pebble,
spectra, verify-permutation-average, formulas.  Every report records the
seed and arithmetic mode; identical configs reproduce byte-identical
reports apart from the timestamp.  Exit codes: 0 success, 1 property
violation / hypothesis failure, 2 usage error.

Environment overrides: SWITCHNET_TOL (float tolerance), SWITCHNET_WORKERS
(parallelism cap for the per-cut sweeps; sweeps are deterministic
regardless).
"""

import argparse
import json
import os
import random
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import lowerbound, parity, pebbles, spectral
from .cuts import CutFunction
from .graphs import InputGraph, all_distinct_permuted_copies
from .networks import SwitchingNetwork

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def _report(payload, seed=None, mode="exact-rational"):
    out = {"seed": seed, "arithmetic_mode": mode}
    out.update(payload)
    out["timestamp"] = datetime.now(timezone.utc).isoformat()
    return out


def _emit(report, path=None):
    text = json.dumps(report, indent=2, default=str)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _load_graph(path):
    with open(path) as fh:
        return InputGraph.from_json(json.load(fh))


def _load_network(path):
    with open(path) as fh:
        return SwitchingNetwork.from_json(json.load(fh))


def _parallel_all(fn, items, workers):
    """Deterministic conjunction of fn over items; results are order-independent
    booleans, so any worker count gives the same report."""
    if workers <= 1 or len(items) < 4:
        return [fn(x) for x in items]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // workers)))


def cmd_verify_network(args):
    net = _load_network(args.net)
    graph = _load_graph(args.graph)
    sound = net.is_sound()
    counterexample = None
    if not sound:
        cut = net.soundness_counterexample()
        counterexample = {"kind": "unsound", "cut_left_mask": cut}
    family = [graph] if args.family == "single" else all_distinct_permuted_copies(graph)
    accepted = _parallel_all(net.accepts, family, args.workers)
    complete = all(accepted)
    if sound and not complete:
        missing = family[accepted.index(False)]
        counterexample = {"kind": "incomplete", "graph": missing.to_json()}
    report = _report(
        {
            "sound": sound,
            "complete": complete,
            "size": net.size,
            "family": args.family,
            "family_size": len(family),
            "counterexample": counterexample,
        },
        seed=args.seed,
    )
    _emit(report, args.out)
    return EXIT_OK if sound and complete else EXIT_VIOLATION


def _detect_chain(graph):
    """The canonical chain 1..k when the graph is chain_with_lollipops(n, k)."""
    from .graphs import chain_with_lollipops

    for k in range(1, graph.n + 1):
        if graph == chain_with_lollipops(graph.n, k):
            return k
    raise ValueError("graph is not in canonical chain-with-lollipops form")


def cmd_build_upper(args):
    graph = _load_graph(args.graph)
    if args.mode == "chain":
        k = _detect_chain(graph)
        result = parity.build_chain_lollipop(graph.n, k, seed=args.seed)
        net = result.network
        bound = result.size_bound
        family = result.placements
    else:
        if args.g0:
            g0 = [int(v) for v in args.g0.split(",")]
        else:
            # vertices touching a middle-to-middle edge form the core; a bare
            # s->v->t path contributes its interior vertex
            g0 = sorted(
                {u for u, v in graph.edges if isinstance(u, int) and isinstance(v, int)}
                | {v for u, v in graph.edges if isinstance(u, int) and isinstance(v, int)}
            )
            if not g0:
                path = graph.shortest_st_path()
                if path is None or len(path) < 3:
                    raise ValueError("cannot infer core vertices; pass --g0")
                g0 = [path[1]]
        result = parity.build_general_network(graph, g0, args.z, seed=args.seed)
        net = result.network
        bound = result.h_bound
        family = all_distinct_permuted_copies(result.graph) if result.graph.n <= 8 else None
    payload = {"mode": args.mode, "size": net.size, "bound": bound, "within_bound": net.size <= bound}
    if args.verify:
        payload["sound"] = net.is_sound()
        if family is not None:
            payload["complete"] = net.is_complete_for(family)
            payload["family_size"] = len(family)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(net.to_json(), fh, indent=2)
        payload["network_file"] = args.out
    report = _report(payload, seed=args.seed)
    _emit(report)
    ok = payload.get("sound", True) and payload.get("complete", True) and payload["within_bound"]
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_build_base(args):
    graph = _load_graph(args.graph)
    try:
        g, table, diag = lowerbound.build_base_function(graph, args.z, seed=args.seed)
    except (ValueError, lowerbound.ConstructionError) as exc:
        _emit(_report({"error": str(exc)}, seed=args.seed))
        return EXIT_VIOLATION
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(table.to_json(), fh, indent=2)
    report = _report(
        {
            "base_function": g.to_json(),
            "diagnostics": diag.to_json(),
            "table_file": args.out,
        },
        seed=args.seed,
    )
    _emit(report)
    return EXIT_OK


def cmd_certify_lower(args):
    graph = _load_graph(args.graph)
    hypotheses = lowerbound.low_connectivity_hypotheses(graph, args.z)
    try:
        family, table, diag = lowerbound.build_invariant_family(graph, args.z, seed=args.seed)
        e0 = tuple(args.e0.split(",")) if args.e0 else None
        if e0:
            e0 = tuple(int(x) if x not in ("s", "t") else x for x in e0)
        cert = lowerbound.lower_bound_certificate(graph, family, e0=e0)
    except (ValueError, ZeroDivisionError, lowerbound.ConstructionError) as exc:
        _emit(_report({"error": str(exc), "hypothesis_flags": hypotheses}, seed=args.seed))
        return EXIT_VIOLATION
    closed_form = None
    if hypotheses["linkage_m"] >= 1 and graph.edges:
        closed_form = lowerbound.closed_form_lower_bound(
            graph.n, hypotheses["linkage_m"], args.z, len(graph.edges)
        )
    report = _report(
        {
            "certificate": cert.to_json(),
            "closed_form": closed_form,
            "hypothesis_flags": hypotheses,
            "diagnostics": diag.to_json(),
        },
        seed=args.seed,
    )
    _emit(report, args.out)
    return EXIT_OK if all(
        hypotheses[k] for k in ("acyclic", "has_st_path", "no_short_st_path")
    ) else EXIT_VIOLATION


def cmd_pebble(args):
    graph = _load_graph(args.graph)
    if args.savitch:
        if args.savitch == "auto":
            path = graph.shortest_st_path()
            if path is None:
                _emit(_report({"error": "no s->t path"}, seed=args.seed))
                return EXIT_VIOLATION
        else:
            path = [x if x in ("s", "t") else int(x) for x in args.savitch.split(",")]
        states = pebbles.savitch_sequence(graph, path)
        report = _report(
            {
                "path": path,
                "max_pebbles": pebbles.max_middle_pebbles(states),
                "sequence": [sorted(map(str, st)) for st in states],
            },
            seed=args.seed,
        )
        _emit(report, args.out)
        return EXIT_OK
    try:
        p = pebbles.min_pebble_number(graph)
    except ValueError as exc:
        _emit(_report({"error": str(exc)}, seed=args.seed))
        return EXIT_VIOLATION
    _emit(_report({"min_pebbles": p}, seed=args.seed), args.out)
    return EXIT_OK


def cmd_spectra(args):
    spectrum = spectral.johnson_spectrum(args.n, args.k)
    import numpy as np

    inc = spectral.inclusion_matrix(args.n, args.k)
    P = inc.toarray()
    eigs = np.linalg.eigvalsh(P @ P.T)
    tol = float(os.environ.get("SWITCHNET_TOL", spectral.DEFAULT_TOL))
    verified = True
    for value, mult in spectrum:
        hits = int(np.sum(np.abs(eigs - value) < max(1e-8, tol)))
        if hits != mult:
            verified = False
    report = _report(
        {"n": args.n, "k": args.k, "eigenvalues": [[v, m] for v, m in spectrum], "verified": verified},
        seed=args.seed,
        mode="floating-check",
    )
    _emit(report, args.out)
    return EXIT_OK if verified else EXIT_VIOLATION


def _random_sparse(n, rng, terms=4, max_level=None):
    coeffs = {}
    level_cap = n if max_level is None else max_level
    for _ in range(terms):
        size = rng.randint(0, level_cap)
        V = frozenset(rng.sample(range(1, n + 1), size))
        coeffs[V] = coeffs.get(V, 0) + Fraction(rng.randint(-4, 4), rng.randint(1, 4))
    return CutFunction(n, coeffs=coeffs)


def cmd_verify_permutation_average(args):
    from .sums import permutation_average_bruteforce, permutation_average_formula

    rng = random.Random(args.seed)
    rows = ["trial,formula,bruteforce,diff"]
    all_equal = True
    for trial in range(args.trials):
        f = _random_sparse(args.n, rng)
        g = _random_sparse(args.n, rng)
        lhs = permutation_average_formula(f, g)
        rhs = permutation_average_bruteforce(f, g)
        diff = lhs - rhs
        all_equal = all_equal and diff == 0
        rows.append(f"{trial},{lhs},{rhs},{diff}")
    csv_text = "\n".join(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(csv_text + "\n")
    print(csv_text)
    return EXIT_OK if all_equal else EXIT_VIOLATION


def cmd_formulas(args):
    rec = parity.upper_bound_formulas(args.k, args.z, args.n)
    _emit(_report(rec.to_json(), seed=args.seed), args.out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="switchnet",
        description="Monotone switching networks for directed connectivity: "
        "certificates, constructions, and brute-force verification.",
    )
    parser.add_argument("--workers", type=int, default=int(os.environ.get("SWITCHNET_WORKERS", 1)),
                        help="parallelism cap for sweeps (results are deterministic regardless)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-network", help="soundness + completeness sweep")
    p.add_argument("--net", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--family", choices=["single", "all-permutations"], default="all-permutations")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify_network)

    p = sub.add_parser("build-upper", help="chain-lollipop or general network builder")
    p.add_argument("--mode", choices=["chain", "general"], required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--z", type=int, default=1)
    p.add_argument("--g0", help="comma-separated core vertices (general mode)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_build_upper)

    p = sub.add_parser("build-base", help="base-function table construction")
    p.add_argument("--graph", required=True)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_build_base)

    p = sub.add_parser("certify-lower", help="lower-bound certificate pipeline")
    p.add_argument("--graph", required=True)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--e0", help="override edge, e.g. 's,1'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_certify_lower)

    p = sub.add_parser("pebble", help="pebble number or halving sequence")
    p.add_argument("--graph", required=True)
    p.add_argument("--min", action="store_true")
    p.add_argument("--savitch", help="comma-separated s..t path, or 'auto'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_pebble)

    p = sub.add_parser("spectra", help="inclusion Gram spectrum with numeric check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_spectra)

    p = sub.add_parser("verify-permutation-average", help="formula vs all-permutations brute force")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify_permutation_average)

    p = sub.add_parser("formulas", help="closed-form upper-bound record")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_formulas)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(json.dumps({"error": f"cannot read {exc.filename}"}), file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
