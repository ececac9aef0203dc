"""Command-line front end: ``drsa feasible|solve|verify|reduce|realize|gadgets|render``.

Exit codes: 0 ok, 1 error, 2 infeasible, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from concurrent.futures import ThreadPoolExecutor

from .exact import DEFAULT_BUDGET, BudgetExceeded, solve_exact
from .feasibility import Infeasible, kraft_check
from .model import format_instance, format_solution, parse_instance, parse_solution, verify_solution
from .oracle import brute_force
from .reduction.gadgetcheck import CHECKED_KINDS, format_tsv, verify_gadget
from .reduction.layout import TileGrid, compile_reduction
from .reduction.params import default_parameters, desk_parameters
from .reduction.realize import build_realization
from .reduction.sat import SatBudgetExceeded, parse_dimacs
from .render import RenderOptions, render_svg

EXIT_OK, EXIT_ERROR, EXIT_INFEASIBLE, EXIT_BUDGET = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _say(args, msg: str) -> None:
    if not args.quiet:
        print(msg, file=sys.stderr)


def cmd_feasible(args) -> int:
    inst = parse_instance(_read(args.instance))
    k = kraft_check(inst.depths)
    print(f"kraft {k}")
    print("feasible" if k.feasible else "infeasible")
    return EXIT_OK if k.feasible else EXIT_INFEASIBLE


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.instance))
    sol = solve_exact(inst, budget=args.budget)
    if args.oracle:
        ref = brute_force(inst)
        if ref is None or ref.length != sol.length:
            got = None if ref is None else ref.length
            print(f"error: oracle mismatch: solver {sol.length}, oracle {got}", file=sys.stderr)
            return EXIT_ERROR
    _write(args.output, format_solution(sol))
    _say(args, f"length {sol.length}")
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = parse_instance(_read(args.instance))
    sol = parse_solution(_read(args.solution))
    report = verify_solution(inst, sol)
    print(report)
    return EXIT_OK if report.ok else EXIT_ERROR


def cmd_reduce(args) -> int:
    sat = parse_dimacs(_read(args.cnf))
    base = desk_parameters(sat.n, sat.m) if args.desk else default_parameters(sat.n, sat.m)
    params = base.with_overrides(alpha=args.alpha, beta=args.beta,
                                 gamma_min=args.gamma_min, gamma_max=args.gamma_max)
    if args.variable_depth == "auto":
        params = replace(params, variable_depth=None)
    elif args.variable_depth is not None:
        params = replace(params, variable_depth=int(args.variable_depth))
    grid, inst = compile_reduction(sat, params)
    _write(args.output, format_instance(inst))
    if args.grid:
        _write(args.grid, grid.to_json())
    _say(args, f"grid {grid.side}x{grid.side}, {len(inst.terminals)} terminals, "
               f"{grid.double_count()} double terminals")
    return EXIT_OK


def cmd_realize(args) -> int:
    grid = TileGrid.from_json(_read(args.grid))
    bits = args.assign.strip()
    if len(bits) != grid.sat.n or set(bits) - {"0", "1"}:
        print(f"error: --assign needs {grid.sat.n} digits of 0/1", file=sys.stderr)
        return EXIT_ERROR
    inst = grid.instance()
    real = build_realization(grid, inst, [b == "1" for b in bits], check=not args.no_check)
    _write(args.output, format_solution(real.solution))
    _say(args, f"u {real.u} length {real.length}")
    return EXIT_OK


def cmd_gadgets(args) -> int:
    kinds = [args.kind] if args.kind else list(CHECKED_KINDS)
    for k in kinds:
        if k not in CHECKED_KINDS:
            print(f"error: unknown kind {k!r}; choose from {', '.join(CHECKED_KINDS)}", file=sys.stderr)
            return EXIT_ERROR
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        tables = list(pool.map(lambda k: verify_gadget(k, args.alpha, args.beta, args.gamma), kinds))
    rows = [r for t in tables for r in t]
    sys.stdout.write(format_tsv(rows))
    return EXIT_OK


def cmd_render(args) -> int:
    inst = parse_instance(_read(args.instance))
    sol = parse_solution(_read(args.solution)) if args.solution else None
    grid = TileGrid.from_json(_read(args.grid)) if args.grid else None
    layers = tuple(args.layers.split(",")) if args.layers else RenderOptions().layers
    svg = render_svg(inst, sol, grid, RenderOptions(scale=args.scale, layers=layers))
    _write(args.output, svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    def global_flags(defaults: bool) -> argparse.ArgumentParser:
        # subcommands must not reset flags given before the command name
        g = argparse.ArgumentParser(add_help=False)
        d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
        g.add_argument("--seed", type=int, default=d(0), help="reserved; every command is deterministic")
        g.add_argument("--quiet", action="store_true", default=d(False), help="no progress messages on stderr")
        g.add_argument("--jobs", type=int, default=d(1), help="worker threads where supported")
        return g

    common = global_flags(False)
    p = argparse.ArgumentParser(prog="drsa", description=__doc__.splitlines()[0], parents=[global_flags(True)])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("feasible", parents=[common], help="Kraft check of the depth multiset")
    s.add_argument("instance")
    s.set_defaults(func=cmd_feasible)

    s = sub.add_parser("solve", parents=[common], help="exact solution of a small instance")
    s.add_argument("instance")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--oracle", action="store_true", help="cross-check with the exhaustive oracle")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", parents=[common], help="check a solution against an instance")
    s.add_argument("instance")
    s.add_argument("solution")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("reduce", parents=[common], help="compile a 2-CNF into an instance")
    s.add_argument("cnf")
    s.add_argument("--alpha", type=int)
    s.add_argument("--beta", type=int)
    s.add_argument("--gamma-min", type=int)
    s.add_argument("--gamma-max", type=int)
    s.add_argument("--variable-depth", help="depth of the variable tiles, or 'auto' for the smallest that works")
    s.add_argument("--desk", action="store_true", help="desk-scale schedule instead of the default one")
    s.add_argument("-o", "--output")
    s.add_argument("--grid", help="write the grid sidecar here")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("realize", parents=[common], help="solution induced by a truth assignment")
    s.add_argument("--grid", required=True)
    s.add_argument("--assign", required=True, help="one digit per variable, 1 = true")
    s.add_argument("--no-check", action="store_true", help="skip verifying the stitched solution")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("gadgets", parents=[common], help="gadget length table as TSV")
    s.add_argument("--alpha", type=int, default=8)
    s.add_argument("--beta", type=int, default=4)
    s.add_argument("--gamma", type=int, default=5)
    s.add_argument("--kind")
    s.set_defaults(func=cmd_gadgets)

    s = sub.add_parser("render", parents=[common], help="SVG drawing")
    s.add_argument("instance")
    s.add_argument("solution", nargs="?")
    s.add_argument("--grid")
    s.add_argument("--scale", type=float)
    s.add_argument("--layers", help="comma-separated subset of terminals,steiner,edges,tile-borders,depth-labels")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Infeasible as e:
        print(str(e), file=sys.stderr)
        return EXIT_INFEASIBLE
    except (BudgetExceeded, SatBudgetExceeded) as e:
        print(str(e), file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, RuntimeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
