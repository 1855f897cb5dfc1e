"""Command-line front door.

Subcommands: ``gen`` (instance generators), ``color sweep``, ``exact``
(omega/chi/alpha solvers), ``bounds`` (formula evaluations), ``probe``
(embedding feasibility search), and ``verify`` (property battery).

Reports are JSON with sorted keys and no timestamps, so identical
(argv, seed) pairs produce byte-identical output. Every report carries the
tool version and a ``quantity`` string saying what the numbers mean.

Exit codes: 0 success, 1 usage or malformed input, 2 budget exhaustion,
boundary ambiguity, or verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

from . import __version__
from .bounds import (
    ANALYSIS_DOMAIN,
    analysis_function,
    analysis_grid,
    analysis_grid_max,
    clique_volume_bound,
    kl_exponent,
    ratio_exponent,
    sweep_chi_bound,
)
from .generators import (
    gen_cycle_1d,
    gen_easy_lemma_instance,
    gen_lattice,
    gen_sphere_net,
)
from .graphs import (
    AdjacencyGraph,
    AnnulusInstance,
    build_graph,
    chromatic_number,
    max_clique,
    max_independent_set,
)
from .probe import (
    DEFAULT_EMBED_BUDGET,
    EmbedProblem,
    FEASIBILITY_TOL,
    embed_search,
    embedding_round_trip,
    forbidden_config_residual,
)
from .sweep import sweep_color
from .validation import BoundaryAmbiguityError, BudgetExceededError
from .verify import run_verify

__all__ = ["main", "BUDGET_ENV"]

BUDGET_ENV = "ANNULUS_BUDGET"


class _Parser(argparse.ArgumentParser):
    """argparse that exits 1 (not 2) on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _default_budget(fallback: int) -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}")


def _emit(args, report: dict) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(command: str, quantity: str, payload: dict) -> dict:
    return {"tool": "annulus", "version": __version__, "command": command, "quantity": quantity, **payload}


def _load_instance(path: str) -> AnnulusInstance:
    with open(path) as fh:
        return AnnulusInstance.from_dict(json.load(fh))


# --------------------------------------------------------------------- gen


def _cmd_gen_lattice(args) -> int:
    inst = gen_lattice(args.dim, args.x, args.eps, args.n)
    _emit(args, _report(
        "gen lattice",
        "scaled integer points in a ball, exact arithmetic, radii (1, x)",
        inst.to_dict(),
    ))
    return 0


def _cmd_gen_cycle1d(args) -> int:
    inst = gen_cycle_1d(args.x)
    _emit(args, _report(
        "gen cycle1d",
        "points on a line whose annulus graph is an odd cycle, radii (1, x)",
        inst.to_dict(),
    ))
    return 0


def _cmd_gen_sphere(args) -> int:
    inst = gen_sphere_net(
        args.dim, args.x, method=args.method, eps=args.eps,
        intensity=args.intensity, seed=args.seed,
    )
    payload = inst.to_dict()
    payload["seed"] = args.seed
    _emit(args, _report(
        "gen sphere",
        "points on the radius-1 sphere scaled by 2, radii (2/x, 2)",
        payload,
    ))
    return 0


def _cmd_gen_easy_lemma(args) -> int:
    inst = gen_easy_lemma_instance(args.dim)
    _emit(args, _report(
        "gen easy-lemma",
        "points in the 0.99-ball pairwise farther than 1, radii (1, 2); a clique",
        inst.to_dict(),
    ))
    return 0


# ------------------------------------------------------------------- color


def _cmd_color_sweep(args) -> int:
    inst = _load_instance(args.instance)
    col = sweep_color(inst, strict_boundaries=args.strict_boundaries)
    g = build_graph(inst, strict_boundaries=args.strict_boundaries)
    proper = all(col.colors[u] != col.colors[v] for u, v in g.edges)
    payload = col.to_dict()
    payload.update(n_colors=col.n_colors, proper=proper, mode=inst.mode)
    _emit(args, _report(
        "color sweep",
        "greedy coloring along ascending last coordinate with token batches of radius r1/2",
        payload,
    ))
    return 0


# ------------------------------------------------------------------- exact


_EXACT = {
    "omega": (max_clique, 200, "exact maximum clique size by branch and bound"),
    "chi": (chromatic_number, 80, "exact chromatic number by iterative deepening on k-colorability"),
    "alpha": (max_independent_set, 200, "exact maximum independent set size via the complement clique"),
}


def _cmd_exact(args) -> int:
    solver, fallback, quantity = _EXACT[args.kind]
    budget = args.budget if args.budget is not None else _default_budget(fallback)
    inst = _load_instance(args.instance)
    g = build_graph(inst, strict_boundaries=args.strict_boundaries)
    res = solver(g, budget=budget)
    payload = {"value": res.value, "n": g.n, "budget": budget, "mode": inst.mode}
    if hasattr(res, "witness"):
        payload["witness"] = list(res.witness)
    if hasattr(res, "colors"):
        payload["colors"] = list(res.colors)
    _emit(args, _report(f"exact {args.kind}", quantity, payload))
    return 0


# ------------------------------------------------------------------ bounds


def _cmd_bounds_sweep(args) -> int:
    rep = sweep_chi_bound(args.dim, args.r1, args.r2, seed=args.seed)
    payload = rep.to_dict()
    payload["seed"] = args.seed
    _emit(args, _report(
        "bounds sweep",
        "covering-witness count times 7^d; max sweep color is at most this times the clique number",
        payload,
    ))
    return 0


def _cmd_bounds_kl(args) -> int:
    val = kl_exponent(args.phi)
    _emit(args, _report(
        "bounds kl",
        "A*ln(A) - B*ln(B) with A = (1+sin phi)/(2 sin phi) and B = (1-sin phi)/(2 sin phi)",
        {"phi": args.phi, "value": val},
    ))
    return 0


def _cmd_bounds_analysis(args) -> int:
    theta, value = analysis_grid_max(step=args.step)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["theta", "value"])
            for t in analysis_grid(args.step):
                writer.writerow([repr(t), repr(analysis_function(t))])
    _emit(args, _report(
        "bounds analysis",
        "grid maximum of sin(theta) * exp(kl(2*theta)) over [0.01, arcsin(1/1.2)]",
        {"step": args.step, "argmax": theta, "max": value,
         "domain": list(ANALYSIS_DOMAIN), "csv": args.csv},
    ))
    return 0


def _cmd_bounds_ratio(args) -> int:
    val = ratio_exponent(args.x, args.delta)
    _emit(args, _report(
        "bounds ratio",
        "-ln(sin(arcsin(1/x) + delta)) - kl(2*arcsin(1/x)); exceeding ln(1.003) "
        "certifies exponential growth of the two code-size estimates' ratio",
        {"x": args.x, "delta": args.delta, "value": val, "ln_1003": math.log(1.003)},
    ))
    return 0


def _cmd_bounds_clique_volume(args) -> int:
    val = clique_volume_bound(args.dim, args.r1, args.r2)
    _emit(args, _report(
        "bounds clique-volume",
        "floor((2*r2/r1 + 1)^d), a ball-packing bound on the clique number",
        {"dim": args.dim, "r1": args.r1, "r2": args.r2, "value": val},
    ))
    return 0


# ------------------------------------------------------------------- probe


def _cmd_probe_embed(args) -> int:
    with open(args.input) as fh:
        data = json.load(fh)
    if "points" in data:
        inst = AnnulusInstance.from_dict(data)
        g = build_graph(inst)
        dim = args.dim if args.dim is not None else inst.dim
        r1 = args.r1 if args.r1 is not None else inst.r1
        r2 = args.r2 if args.r2 is not None else inst.r2
    else:
        g = AdjacencyGraph.from_dict(data)
        if args.dim is None or args.r1 is None or args.r2 is None:
            raise ValueError("graph input needs explicit --dim, --r1 and --r2")
        dim, r1, r2 = args.dim, args.r1, args.r2
    budget = args.budget if args.budget is not None else _default_budget(DEFAULT_EMBED_BUDGET)
    problem = EmbedProblem(
        g, dim, r1, r2, restarts=args.restarts, max_iters=args.max_iters,
        seed=args.seed, budget=budget,
    )
    res = embed_search(problem)
    feasible = res.residual < FEASIBILITY_TOL
    payload = {
        "dim": dim, "r1": r1, "r2": r2, "n": g.n, "seed": args.seed,
        "restarts": args.restarts, "residual": res.residual, "feasible": feasible,
        "round_trip": bool(feasible and embedding_round_trip(g, res.coords, r1, r2)),
        "coords": [list(map(float, row)) for row in res.coords],
    }
    _emit(args, _report(
        "probe embed",
        "minimum over restarts of the largest pairwise distance violation; "
        "below 1e-06 counts as a found embedding",
        payload,
    ))
    return 0


def _cmd_probe_forbidden(args) -> int:
    res = forbidden_config_residual(
        args.kind, args.dim, count=args.count, gamma=args.gamma, margin=args.margin,
        restarts=args.restarts, max_iters=args.max_iters, seed=args.seed,
        cross_bound=args.cross_bound,
    )
    _emit(args, _report(
        "probe forbidden",
        "minimum over restarts of the largest constraint violation for the "
        f"{args.kind} point configuration; a positive floor is infeasibility evidence",
        {
            "kind": args.kind, "dim": args.dim, "margin": args.margin,
            "gamma": args.gamma, "cross_bound": args.cross_bound, "seed": args.seed,
            "restarts": args.restarts, "residual": res.residual,
            "min_residual": min(res.restart_stats), "max_residual": max(res.restart_stats),
        },
    ))
    return 0


# ------------------------------------------------------------------ verify


def _cmd_verify(args) -> int:
    return run_verify(seed=args.seed, tolerance=args.tolerance, only=args.only)


# ------------------------------------------------------------------ parser


def _add_output(p) -> None:
    p.add_argument("-o", "--output", metavar="FILE", help="write the JSON report here instead of stdout")


def build_parser() -> _Parser:
    parser = _Parser(prog="annulus", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate instances").add_subparsers(dest="generator", required=True, parser_class=_Parser)
    p = gen.add_parser("lattice", help="scaled integer lattice ball, exact arithmetic")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--x", required=True, help="upper radius (rational, e.g. 2 or 3/2)")
    p.add_argument("--eps", required=True, help="lattice spacing (rational in (0, 1])")
    p.add_argument("--n", type=int, required=True, help="ball radius in units of n/eps lattice steps")
    _add_output(p)
    p.set_defaults(func=_cmd_gen_lattice)

    p = gen.add_parser("cycle1d", help="odd cycle on a line with radii (1, x)")
    p.add_argument("--x", type=float, required=True)
    _add_output(p)
    p.set_defaults(func=_cmd_gen_cycle1d)

    p = gen.add_parser("sphere", help="net or Poisson sample on a radius-2 sphere")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--x", type=float, required=True, help="lower radius is 2/x")
    p.add_argument("--method", choices=["greedy", "poisson"], default="greedy")
    p.add_argument("--eps", type=float, default=math.pi / 16, help="net angular resolution")
    p.add_argument("--intensity", type=float, default=None, help="Poisson mean per unit area")
    p.add_argument("--seed", type=int, default=0)
    _add_output(p)
    p.set_defaults(func=_cmd_gen_sphere)

    p = gen.add_parser("easy-lemma", help="clique witness inside the 0.99-ball")
    p.add_argument("--dim", type=int, required=True)
    _add_output(p)
    p.set_defaults(func=_cmd_gen_easy_lemma)

    color = sub.add_parser("color", help="color an instance").add_subparsers(dest="algorithm", required=True, parser_class=_Parser)
    p = color.add_parser("sweep", help="sweep coloring by ascending last coordinate")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("--strict-boundaries", action="store_true",
                   help="fail on distances within tolerance of a radius")
    _add_output(p)
    p.set_defaults(func=_cmd_color_sweep)

    p = sub.add_parser("exact", help="exact solvers on an instance")
    p.add_argument("kind", choices=["omega", "chi", "alpha"])
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("--budget", type=int, default=None,
                   help=f"vertex-count limit (default from ${BUDGET_ENV} or the solver default)")
    p.add_argument("--strict-boundaries", action="store_true")
    _add_output(p)
    p.set_defaults(func=_cmd_exact)

    bounds_sub = sub.add_parser("bounds", help="bound and formula evaluations").add_subparsers(dest="formula", required=True, parser_class=_Parser)
    p = bounds_sub.add_parser("sweep", help="covering-witness color bound")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--r1", type=float, required=True)
    p.add_argument("--r2", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_output(p)
    p.set_defaults(func=_cmd_bounds_sweep)

    p = bounds_sub.add_parser("kl", help="spherical code size exponent")
    p.add_argument("--phi", type=float, required=True)
    _add_output(p)
    p.set_defaults(func=_cmd_bounds_kl)

    p = bounds_sub.add_parser("analysis", help="grid maximum of the cap analysis function")
    p.add_argument("--step", type=float, default=1e-4)
    p.add_argument("--csv", metavar="FILE", help="also write the full (theta, value) grid as CSV")
    _add_output(p)
    p.set_defaults(func=_cmd_bounds_analysis)

    p = bounds_sub.add_parser("ratio", help="measure-ratio growth exponent")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    _add_output(p)
    p.set_defaults(func=_cmd_bounds_ratio)

    p = bounds_sub.add_parser("clique-volume", help="packing bound on the clique number")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--r1", type=float, required=True)
    p.add_argument("--r2", type=float, required=True)
    _add_output(p)
    p.set_defaults(func=_cmd_bounds_clique_volume)

    probe_sub = sub.add_parser("probe", help="numeric feasibility probes").add_subparsers(dest="probe", required=True, parser_class=_Parser)
    p = probe_sub.add_parser("embed", help="search for an annulus embedding of a graph")
    p.add_argument("input", help="instance or graph JSON file")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--r1", type=float, default=None)
    p.add_argument("--r2", type=float, default=None)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--max-iters", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=None)
    _add_output(p)
    p.set_defaults(func=_cmd_probe_embed)

    p = probe_sub.add_parser("forbidden", help="probe a forbidden point configuration")
    p.add_argument("--kind", choices=["three-points", "bipartite-sphericity"], required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--margin", type=float, default=0.1, help="pairwise separation excess mu")
    p.add_argument("--count", type=int, default=None, help="three-points: number of middle points")
    p.add_argument("--gamma", type=float, default=0.99)
    p.add_argument("--cross-bound", type=float, default=1.0,
                   help="bipartite: allowed cross-part distance (raise to relax)")
    p.add_argument("--restarts", type=int, default=100)
    p.add_argument("--max-iters", type=int, default=600)
    p.add_argument("--seed", type=int, default=0)
    _add_output(p)
    p.set_defaults(func=_cmd_probe_forbidden)

    p = sub.add_parser("verify", help="run the property battery")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--only", default=None, help="restrict to one module's checks")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (BudgetExceededError, BoundaryAmbiguityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
