"""Command-line front door wiring colorings, codes, decompositions, extremal
searches, and bound evaluators into reproducible, seeded, file-driven runs.

Every run emits a single JSON report (stdout by default, or ``--report``) with
a fixed key order and no timestamps, so identical inputs and seeds produce
byte-identical output.  Exit codes separate mathematical outcomes from tool
failures:

* 0 — success (built, verified positive, decomposed, found, evaluated);
* 1 — verified negative (an even-chromatic copy exists, the kernel contains a
  pattern copy, the graph is undecomposable, a randomized run failed or a
  search found nothing);
* 2 — usage, file-format, or capacity errors, with a diagnostic on stderr.

Configuration comes exclusively from flags; environment variables are never
consulted.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bounds import (
    bound_even_decomp,
    bound_general_log,
    bound_k4_colors,
    bound_maxmin,
)
from .codes import (
    RNG_NAME,
    ComplementMapCode,
    code_from_coloring,
    code_summary,
    greedy_vector_family,
    load_pm1,
    random_code_search,
    save_pm1,
)
from .colorings import (
    K4ColoringParams,
    build_k4_coloring,
    find_even_chromatic_embedding,
    load_cl1,
    save_cl1,
)
from .decomp import (
    AlgorithmParams,
    census_json,
    decomposition_census,
    find_even_decomposition,
    run_greedy_algorithm,
    run_report_json,
)
from .errors import CapacityError, FormatError
from .extremal import (
    R_COLOR_LIMIT,
    exact_d,
    exact_dlin,
    exact_r,
    extremal_result_json,
)
from .graphs import load_gl1

__all__ = ["build_parser", "main"]


# ---------------------------------------------------------------------------
# Report plumbing.


def _emit(report: dict, path: str | None) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _edges_json(pairs) -> list[list[int]]:
    return [list(e) for e in pairs]


# ---------------------------------------------------------------------------
# Handlers.  Each returns (exit_status, report_dict).


def _cmd_coloring_build_k4(args):
    chi = build_k4_coloring(args.n)
    params = K4ColoringParams.from_n(args.n)
    path = None
    if args.out is not None:
        save_cl1(chi, args.out)
        path = str(args.out)
    report = {
        "n": args.n,
        "d": params.d,
        "m": params.m,
        "palette": chi.palette_size,
        "coloring_path": path,
    }
    return 0, report


def _cmd_coloring_verify(args):
    chi = load_cl1(args.coloring)
    h = load_gl1(args.pattern)
    emb = find_even_chromatic_embedding(chi, h)
    report = {
        "n": chi.n,
        "pattern": _edges_json(h.edge_list()),
        "admits": emb is not None,
        "witness": None if emb is None else _edges_json(emb.image_edges()),
    }
    return (1 if emb is not None else 0), report


def _cmd_code_from_coloring(args):
    chi = load_cl1(args.coloring)
    fam = greedy_vector_family(chi.palette_size, args.s)
    matrix = code_from_coloring(chi, fam)
    path = None
    if args.out is not None:
        save_pm1(matrix, args.out)
        path = str(args.out)
    report = {
        "n": matrix.n,
        "r": chi.palette_size,
        "s": args.s,
        "t": matrix.t,
        "matrix_path": path,
    }
    return 0, report


def _cmd_code_verify(args):
    matrix = load_pm1(args.matrix)
    h = load_gl1(args.pattern)
    summary = code_summary(matrix, h)
    witness = summary.witness
    report = {
        "n": summary.n,
        "t": summary.t,
        "kernel_dim": summary.kernel_dim,
        "density_log2": summary.density_log2,
        "h_free": summary.h_free,
        "witness": None if witness is None else _edges_json(witness.image_edges()),
    }
    return (0 if summary.h_free else 1), report


def _cmd_code_random_search(args):
    h = load_gl1(args.pattern)
    matrix = random_code_search(
        h, args.n, args.t, seed=args.seed, attempts=args.attempts
    )
    path = None
    if matrix is not None and args.out is not None:
        save_pm1(matrix, args.out)
        path = str(args.out)
    report = {
        "outcome": "found" if matrix is not None else "exhausted",
        "seed": args.seed,
        "rng": RNG_NAME,
        "attempts": args.attempts,
        "n": args.n,
        "t": args.t,
        "matrix_path": path,
    }
    return (0 if matrix is not None else 1), report


def _cmd_code_complement(args):
    code = ComplementMapCode(args.n)
    report = {
        "n": args.n,
        "num_slots": code.num_slots,
        "max_edges": code.max_edges,
        "cardinality": code.cardinality(),
    }
    return 0, report


def _cmd_decomp_exact(args):
    g = load_gl1(args.graph)
    dec = find_even_decomposition(g)
    report = {
        "v": g.n,
        "decomposable": dec is not None,
        "chain": None if dec is None else [list(layer) for layer in dec.chain],
    }
    return (0 if dec is not None else 1), report


def _cmd_decomp_greedy(args):
    g = load_gl1(args.graph)
    params = AlgorithmParams.from_n(g.n, x_size=args.x_size, seed=args.seed)
    run = run_greedy_algorithm(g, params)
    report = run_report_json(run)
    report["rng"] = RNG_NAME
    return (0 if run.outcome == "success" else 1), report


def _cmd_decomp_census(args):
    record = decomposition_census(args.v, samples=args.samples, seed=args.seed)
    report = census_json(record)
    if record.mode == "sampled":
        report["seed"] = args.seed
        report["rng"] = RNG_NAME
    return 0, report


_CERT_SUFFIX = {"r": "coloring", "dlin": "matrix", "d": "codeword list"}


def _write_extremal_certificate(result, path) -> None:
    if result.quantity == "r":
        save_cl1(result.certificate, path)
    elif result.quantity == "dlin":
        save_pm1(result.certificate, path)
    else:
        payload = {"n": result.n, "codewords": list(result.certificate)}
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(payload, indent=2) + "\n")


def _cmd_extremal(args):
    h = load_gl1(args.pattern)
    if args.quantity == "r":
        result = exact_r(h, args.n, max_colors=args.max_colors)
    elif args.quantity == "dlin":
        result = exact_dlin(h, args.n)
    else:
        result = exact_d(h, args.n)
    path = None
    if args.out is not None and result.certificate is not None:
        _write_extremal_certificate(result, args.out)
        path = str(args.out)
    return 0, extremal_result_json(result, certificate_path=path)


# ---------------------------------------------------------------------------
# bounds: free-form key=value arguments, one evaluator per name.


def _parse_kv(pairs) -> dict:
    out = {}
    for item in pairs:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise ValueError(f"bound argument {item!r} is not of the form key=value")
        if key in out:
            raise ValueError(f"duplicate bound argument {key!r}")
        try:
            out[key] = int(raw)
        except ValueError:
            try:
                out[key] = float(raw)
            except ValueError:
                raise ValueError(
                    f"bound argument {key}={raw!r} is not a number"
                ) from None
    return out


_REQUIRED = object()


def _take(kv: dict, key: str, *, integer: bool = False, default=_REQUIRED):
    if key not in kv:
        if default is not _REQUIRED:
            return default
        raise ValueError(f"bound argument {key!r} is required")
    value = kv.pop(key)
    if integer:
        if isinstance(value, float) and not value.is_integer():
            raise ValueError(f"bound argument {key}={value} must be an integer")
        return int(value)
    return value


def _cmd_bounds(args):
    kv = _parse_kv(args.args)
    name = args.name
    if name == "even-decomp":
        v_h = _take(kv, "v_h", integer=True)
        n = _take(kv, "n", integer=True)
        value = bound_even_decomp(v_h, n)
    elif name == "k4-colors":
        n = _take(kv, "n", integer=True)
        value = bound_k4_colors(n)
    elif name == "maxmin":
        # r1/r2 are constant color-count guarantees here; the library form
        # also accepts arbitrary functions of the subset size.
        r1 = _take(kv, "r1")
        r2 = _take(kv, "r2")
        k = _take(kv, "k", integer=True)
        n = _take(kv, "n", integer=True)
        value = bound_maxmin(lambda m: r1, lambda m: r2, k, n)
    else:  # general-log (argparse restricts the choices)
        c = _take(kv, "c")
        n = _take(kv, "n", integer=True)
        big_c = _take(kv, "big_c", default=None)
        result = bound_general_log(c, n, big_c=big_c)
        value = {
            "colors": result.colors,
            "density": result.density,
            "shrunken_host": result.shrunken_host,
        }
    if kv:
        raise ValueError(f"unused bound arguments: {', '.join(sorted(kv))}")
    report = {"n": n, "bound": name, "value": value}
    return 0, report


# ---------------------------------------------------------------------------
# Parser.


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--report",
        metavar="PATH",
        default=None,
        help="write the JSON report to PATH instead of stdout",
    )
    p.add_argument(
        "--workers",
        type=int,
        default=1,
        metavar="W",
        help="worker count; all commands currently run single-threaded",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphcodes",
        description=(
            "Edge colorings, graph-indexed linear codes, even decompositions, "
            "exact extremal quantities, and numeric bound evaluators."
        ),
    )
    groups = parser.add_subparsers(dest="group", required=True, metavar="GROUP")

    coloring = groups.add_parser("coloring", help="edge-coloring commands")
    coloring_sub = coloring.add_subparsers(dest="command", required=True)

    p = coloring_sub.add_parser(
        "build-k4", help="build the explicit coloring with no even-chromatic K4"
    )
    p.add_argument("--n", type=int, required=True, help="number of host vertices")
    p.add_argument("--out", metavar="PATH", help="write the coloring (CL1) here")
    _add_common(p)
    p.set_defaults(handler=_cmd_coloring_build_k4)

    p = coloring_sub.add_parser(
        "verify", help="search a coloring for an even-chromatic pattern copy"
    )
    p.add_argument("--coloring", required=True, metavar="FILE", help="CL1 coloring")
    p.add_argument("--pattern", required=True, metavar="FILE", help="GL1 pattern")
    _add_common(p)
    p.set_defaults(handler=_cmd_coloring_verify)

    code = groups.add_parser("code", help="parity-check-code commands")
    code_sub = code.add_subparsers(dest="command", required=True)

    p = code_sub.add_parser(
        "from-coloring", help="compose a coloring with a greedy vector family"
    )
    p.add_argument("--coloring", required=True, metavar="FILE", help="CL1 coloring")
    p.add_argument(
        "--s", type=int, required=True, help="forbidden zero-sum subset size bound"
    )
    p.add_argument("--out", metavar="PATH", help="write the matrix (PM1) here")
    _add_common(p)
    p.set_defaults(handler=_cmd_code_from_coloring)

    p = code_sub.add_parser(
        "verify", help="check that a code kernel contains no pattern copy"
    )
    p.add_argument("--matrix", required=True, metavar="FILE", help="PM1 matrix")
    p.add_argument("--pattern", required=True, metavar="FILE", help="GL1 pattern")
    _add_common(p)
    p.set_defaults(handler=_cmd_code_verify)

    p = code_sub.add_parser(
        "random-search", help="sample random matrices until the kernel avoids a pattern"
    )
    p.add_argument("--pattern", required=True, metavar="FILE", help="GL1 pattern")
    p.add_argument("--n", type=int, required=True, help="number of host vertices")
    p.add_argument("--t", type=int, required=True, help="number of matrix rows")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument(
        "--attempts", type=int, default=100, help="number of matrices to sample"
    )
    p.add_argument("--out", metavar="PATH", help="write a found matrix (PM1) here")
    _add_common(p)
    p.set_defaults(handler=_cmd_code_random_search)

    p = code_sub.add_parser(
        "complement", help="summarize the complement-map code on n vertices"
    )
    p.add_argument("--n", type=int, required=True, help="number of vertices (0/1 mod 4)")
    _add_common(p)
    p.set_defaults(handler=_cmd_code_complement)

    decomp = groups.add_parser("decomp", help="even-decomposition commands")
    decomp_sub = decomp.add_subparsers(dest="command", required=True)

    p = decomp_sub.add_parser("exact", help="decide even decomposability exactly")
    p.add_argument("--graph", required=True, metavar="FILE", help="GL1 graph")
    _add_common(p)
    p.set_defaults(handler=_cmd_decomp_exact)

    p = decomp_sub.add_parser(
        "greedy", help="run the seeded nine-step decomposition heuristic"
    )
    p.add_argument("--graph", required=True, metavar="FILE", help="GL1 graph")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument(
        "--x-size", type=int, default=None, help="target size of the scaffold set"
    )
    _add_common(p)
    p.set_defaults(handler=_cmd_decomp_greedy)

    p = decomp_sub.add_parser(
        "census", help="count undecomposable even graphs on v vertices"
    )
    p.add_argument("--v", type=int, required=True, help="number of vertices")
    p.add_argument(
        "--samples",
        type=int,
        default=None,
        help="sample size (omit for the exhaustive census)",
    )
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    _add_common(p)
    p.set_defaults(handler=_cmd_decomp_census)

    extremal = groups.add_parser("extremal", help="exact extremal quantities")
    extremal_sub = extremal.add_subparsers(dest="quantity", required=True)
    for quantity, summary in (
        ("r", "least palette size avoiding even-chromatic pattern copies"),
        ("dlin", "largest pattern-free subspace density"),
        ("d", "largest pattern-free code density"),
    ):
        p = extremal_sub.add_parser(quantity, help=summary)
        p.add_argument("--pattern", required=True, metavar="FILE", help="GL1 pattern")
        p.add_argument("--n", type=int, required=True, help="number of host vertices")
        p.add_argument(
            "--max-colors",
            type=int,
            default=R_COLOR_LIMIT,
            help="palette cap for the coloring search (used by r only)",
        )
        p.add_argument(
            "--out",
            metavar="PATH",
            help=f"write the certificate ({_CERT_SUFFIX[quantity]}) here",
        )
        _add_common(p)
        p.set_defaults(handler=_cmd_extremal)

    p = groups.add_parser("bounds", help="evaluate a named numeric bound")
    p.add_argument(
        "--name",
        required=True,
        choices=["even-decomp", "k4-colors", "maxmin", "general-log"],
        help="bound to evaluate",
    )
    p.add_argument(
        "--args",
        nargs="*",
        default=[],
        metavar="KEY=VALUE",
        help="bound parameters, e.g. v_h=4 n=100",
    )
    _add_common(p)
    p.set_defaults(handler=_cmd_bounds)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed its diagnostic
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        status, report = args.handler(args)
    except (CapacityError, FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(report, args.report)
    return status


if __name__ == "__main__":
    sys.exit(main())
