"""Command-line interface.

Subcommands:

* ``hochschild`` -- Hochschild homology of an algebra spec, with the
  Poincaré polynomial of the free part;
* ``graph`` -- graph cohomology of a graph file or a built-in polygon or
  line graph;
* ``khovanov`` -- Khovanov homology of a plane signed graph or of the
  (2,n)-torus link Tait graph;
* ``verify`` -- run a named verification suite.

Exit codes: 0 success (all claims pass), 1 verification failure, 2 input
error.  Identical inputs produce byte-identical output.
"""

import argparse
import json
import sys

from . import algebra as alg
from .algebra import AlgebraError, algebra_from_spec, module_from_spec
from .exact_linalg import CompositionError
from .graph_homology import Graph, graph_cohomology, line_graph, polygon
from .hochschild import (
    hochschild_homology,
    poincare_polynomial,
    small_complex_homology,
)
from .khovanov import SignedPlaneGraph, khovanov_homology, torus_link_tait_graph
from .verify import run_suite, suite_names


class InputError(Exception):
    pass


def _homology_rows(homology, degree_key):
    rows = []
    for (deg, q), summary in homology.items():
        rows.append({
            degree_key: deg,
            "q": q,
            "free_rank": summary.free_rank,
            "torsion": list(summary.torsion),
        })
    return rows


def _emit(payload, fmt, text_renderer):
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        text_renderer(payload)


def _render_table(rows, degree_key):
    if not rows:
        print("  (no nonzero groups in the certified range)")
        return
    print(f"  {degree_key:>4} {'q':>5} {'free':>5}  torsion")
    for row in rows:
        q = "-" if row["q"] is None else row["q"]
        tor = ",".join(str(t) for t in row["torsion"]) or "-"
        print(f"  {row[degree_key]:>4} {q:>5} {row['free_rank']:>5}  {tor}")


def cmd_hochschild(args):
    algebra = algebra_from_spec(args.algebra, q_max=args.q_max)
    module = module_from_spec(algebra, args.module)
    method = args.method
    is_power = algebra == alg.make_truncated_poly(algebra.rank)
    if method == "auto":
        method = "small" if (is_power and args.module in (None, "", "regular")) else "direct"
    if method == "small":
        if args.module not in (None, "", "regular"):
            raise InputError("the small complex computes HH(A, A); use --method direct for other modules")
        if algebra != alg.make_truncated_poly(algebra.rank):
            raise InputError("--method small requires a truncated polynomial algebra spec")
        homology = small_complex_homology([0] * algebra.rank + [1], args.n_max)
    else:
        homology = hochschild_homology(algebra, module, args.n_max)
    rows = _homology_rows(homology, "n")
    payload = {
        "algebra": args.algebra,
        "module": args.module or "regular",
        "n_max": args.n_max,
        "method": method,
        "homology": rows,
        "poincare": str(poincare_polynomial(homology)),
    }

    def render(p):
        print(f"Hochschild homology of {p['algebra']} with M = {p['module']} (method: {p['method']})")
        _render_table(p["homology"], "n")
        print(f"  Poincare polynomial: {p['poincare']}")

    _emit(payload, args.format, render)
    return 0


def _load_graph(args):
    picked = [x for x in (args.graph, args.polygon, args.line) if x is not None]
    if len(picked) != 1:
        raise InputError("give exactly one of --graph, --polygon, --line")
    if args.graph is not None:
        with open(args.graph, "r", encoding="utf-8") as fh:
            return Graph.from_json(json.load(fh))
    if args.polygon is not None:
        if args.polygon < 1:
            raise InputError("--polygon needs a positive size")
        return polygon(args.polygon)
    if args.line < 0:
        raise InputError("--line needs a nonnegative edge count")
    return line_graph(args.line)


def cmd_graph(args):
    graph = _load_graph(args)
    algebra = algebra_from_spec(args.algebra, q_max=args.q_max)
    module = module_from_spec(algebra, args.module)
    variant = {"phi": "phi", "hat": "hat"}[args.variant]
    homology = graph_cohomology(graph, algebra, module, variant=variant)
    rows = _homology_rows(homology, "i")
    payload = {
        "graph": graph.to_json(),
        "algebra": args.algebra,
        "module": args.module or "regular",
        "variant": variant,
        "homology": rows,
        "poincare": str(poincare_polynomial(homology)),
    }

    def render(p):
        print(f"Graph cohomology ({p['variant']}) over {p['algebra']}, M = {p['module']}")
        _render_table(p["homology"], "i")
        print(f"  Poincare polynomial: {p['poincare']}")

    _emit(payload, args.format, render)
    return 0


def cmd_khovanov(args):
    if (args.graph is None) == (args.torus is None):
        raise InputError("give exactly one of --graph, --torus")
    if args.torus is not None:
        strands, n = args.torus
        if strands != 2:
            raise InputError("only 2-strand torus links are supported")
        spg = torus_link_tait_graph(2, n)
    else:
        with open(args.graph, "r", encoding="utf-8") as fh:
            spg = SignedPlaneGraph.from_json(json.load(fh))
    algebra = algebra_from_spec(args.algebra)
    table = khovanov_homology(spg, algebra)
    payload = {
        "graph": spg.to_json(),
        "algebra": args.algebra,
        "bigraded": table.graded,
        "homology": table.to_json(),
    }

    def render(p):
        print(f"Khovanov homology over {p['algebra']}" + ("" if p["bigraded"] else " (a-graded only)"))
        print(f"  {'a':>4} {'b':>5} {'free':>5}  torsion")
        for row in p["homology"]:
            b = "-" if row["b"] is None else row["b"]
            tor = ",".join(str(t) for t in row["torsion"]) or "-"
            print(f"  {row['a']:>4} {b:>5} {row['free_rank']:>5}  {tor}")

    _emit(payload, args.format, render)
    return 0


def cmd_verify(args):
    try:
        reports = run_suite(args.suite)
    except KeyError:
        print(f"unknown suite {args.suite!r}; available: all, " + ", ".join(suite_names()),
              file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps([r.to_json() for r in reports], indent=2))
    else:
        for r in reports:
            line = f"[{r.status.upper():4}] {r.claim}  ({r.seconds:.2f}s)"
            print(line)
            if r.note:
                print(f"       note: {r.note}")
            if not r.ok:
                print(f"       expected: {r.expected}")
                print(f"       computed: {r.computed}")
        passed = sum(1 for r in reports if r.ok)
        print(f"{passed}/{len(reports)} claims pass")
    return 0 if all(r.ok for r in reports) else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hochgraph",
        description="Exact Hochschild / graph / Khovanov homology workbench",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hochschild", help="Hochschild homology of an algebra")
    p.add_argument("--algebra", required=True,
                   help="algebra spec: truncated:M, poly_quotient:[c0,..,1], "
                        "polynomial_ring:N, tensor_algebra:D, upper_triangular:N, or JSON")
    p.add_argument("--module", default=None,
                   help="coefficient bimodule: regular (default), ideal:K, or JSON")
    p.add_argument("--n-max", type=int, required=True, help="top homological degree to build")
    p.add_argument("--q-max", type=int, default=None,
                   help="q-degree bound, mandatory for infinite-rank algebras")
    p.add_argument("--method", choices=("auto", "direct", "small"), default="auto",
                   help="full bar-type complex or the two-periodic small complex")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_hochschild)

    p = sub.add_parser("graph", help="graph cohomology of the subset functor")
    p.add_argument("--graph", help="path to a graph JSON file")
    p.add_argument("--polygon", type=int, help="use the n-gon")
    p.add_argument("--line", type=int, help="use the line graph with n edges")
    p.add_argument("--algebra", required=True)
    p.add_argument("--module", default=None)
    p.add_argument("--variant", choices=("phi", "hat"), default="phi",
                   help="cycle-closing edges act as identity (phi) or zero (hat)")
    p.add_argument("--q-max", type=int, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("khovanov", help="Khovanov homology of a plane signed graph")
    p.add_argument("--graph", help="path to a signed graph JSON file")
    p.add_argument("--torus", nargs=2, type=int, metavar=("STRANDS", "N"),
                   help="(2,N)-torus link; negative N is the all-negative polygon")
    p.add_argument("--algebra", default='{"type":"truncated","m":2}')
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_khovanov)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", help="suite name or alias (e.g. thm3.1, cor4.4, euler, all)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, AlgebraError, CompositionError, FileNotFoundError,
            json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
