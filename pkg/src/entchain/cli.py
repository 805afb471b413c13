"""Command-line interface.

Every command builds a report envelope ``{command, inputs, results,
tool_version}`` and renders it as text, JSON or CSV. Floats are printed
with 15 significant digits so repeated runs are byte-identical.

Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import __version__
from .chain import (
    build_block_state,
    chain_concurrence,
    load_block_state,
    pair_density_matrix,
    singlet_block,
)
from .entanglement import ckw_budget, concurrence, entanglement_of_formation, special_form_concurrence
from .errors import NumericalError, ValidationError
from .optimize import brute_force_optimize, c_lim, optimize_alpha, sweep
from .tightbinding import (
    ReducedLattice,
    closed_form_concurrence,
    concurrence_cosine_sum,
    optimal_block_coefficients,
    single_particle_energies,
)

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3
DIGITS = 15


def fmt(x: float) -> str:
    return f"{x:.{DIGITS}g}"


def _clean(obj):
    """Round floats to 15 significant digits and make containers JSON-ready."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return {"re": _clean(obj.real.tolist()), "im": _clean(obj.imag.tolist())}
        return _clean(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _clean(obj.real), "im": _clean(obj.imag)}
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(fmt(float(obj)))
        return 0.0 if x == 0 else x
    return obj


def envelope(command: str, inputs: dict, results: dict) -> dict:
    return {
        "command": command,
        "inputs": _clean(inputs),
        "results": _clean(results),
        "tool_version": __version__,
    }


def _coeff_table(coeffs: dict) -> list[dict]:
    return [
        {"sites": list(k), "re": float(np.real(v)), "im": float(np.imag(v))}
        for k, v in sorted(coeffs.items())
    ]


# --- commands ---------------------------------------------------------------


def cmd_bicycle(args) -> dict:
    xi = singlet_block()
    report = pair_density_matrix(xi)
    res = concurrence(report.rho)
    return envelope(
        "bicycle",
        {},
        {
            "rho": report.rho,
            "lambdas": list(res.lambdas),
            "concurrence": res.concurrence,
            "entanglement_of_formation": entanglement_of_formation(res.concurrence),
            "ckw_budget": ckw_budget(res.concurrence, res.concurrence),
        },
    )


def cmd_block(args) -> dict:
    if args.coeffs and args.optimal:
        raise ValidationError("give either --optimal or --coeffs, not both")
    if args.coeffs:
        xi = load_block_state(args.coeffs)
        for name in ("n", "p"):
            given = getattr(args, name)
            if given is not None and given != getattr(xi, name):
                raise ValidationError(f"--{name}={given} disagrees with {args.coeffs} ({getattr(xi, name)})")
        source = args.coeffs
    else:
        if args.n is None or args.p is None:
            raise ValidationError("block needs --n and --p with --optimal")
        xi = build_block_state(args.n, args.p, optimal_block_coefficients(args.n, args.p))
        source = "optimal"

    report = pair_density_matrix(xi)
    c = special_form_concurrence(report.rho)
    results = {
        "rho": report.rho,
        "y": report.y,
        "concurrence": c,
        "entanglement_of_formation": entanglement_of_formation(min(c, 1.0)),
        "coefficients": _coeff_table(xi.coefficients),
    }
    if args.check:
        full = concurrence(report.rho).concurrence
        diff = abs(full - c)
        results.update(
            wootters_concurrence=full,
            y_concurrence=chain_concurrence(xi),
            check_difference=diff,
            check_passed=diff <= args.tolerance,
        )
    return envelope("block", {"n": xi.n, "p": xi.p, "source": source, "check": args.check}, results)


def _need_np(args, command):
    if args.n is None or args.p is None:
        raise ValidationError(f"{command} needs --n and --p")
    return args.n, args.p


def cmd_closed_form(args) -> dict:
    n, p = _need_np(args, "closed-form")
    c = closed_form_concurrence(n, p)
    lattice = ReducedLattice(n, p)
    spec = single_particle_energies(lattice)
    return envelope(
        "closed-form",
        {"n": n, "p": p},
        {
            "n_prime": lattice.n_prime,
            "concurrence": c,
            "cosine_sum": concurrence_cosine_sum(n, p) if p else 0.0,
            "ground_energy": spec.ground_energy,
            "entanglement_of_formation": entanglement_of_formation(c),
        },
    )


def cmd_brute(args) -> dict:
    n, p = _need_np(args, "brute")
    res = brute_force_optimize(n, p)
    closed = closed_form_concurrence(n, p)
    dev = abs(res.best_concurrence - closed)
    return envelope(
        "brute",
        {"n": n, "p": p, "tolerance": args.tolerance},
        {
            "concurrence": res.best_concurrence,
            "lagrange_eigenvalue": res.lagrange_eigenvalue,
            "iterations": res.iterations,
            "closed_form": closed,
            "deviation": dev,
            "agrees": dev <= args.tolerance,
            "entanglement_of_formation": entanglement_of_formation(min(res.best_concurrence, 1.0)),
            "coefficients": _coeff_table(res.best_coefficients),
        },
    )


def cmd_limit(args) -> dict:
    if (args.alpha is None) == (not args.optimize):
        raise ValidationError("limit needs exactly one of --alpha or --optimize")
    if args.optimize:
        res = optimize_alpha()
        return envelope(
            "limit",
            {"mode": "optimize"},
            {
                "alpha": res.alpha,
                "concurrence": res.c_lim,
                "entanglement_of_formation": entanglement_of_formation(res.c_lim),
                "stationarity_residual": res.stationarity_residual,
            },
        )
    c = c_lim(args.alpha)
    return envelope(
        "limit",
        {"mode": "alpha", "alpha": args.alpha},
        {"alpha": args.alpha, "concurrence": c, "entanglement_of_formation": entanglement_of_formation(c)},
    )


def cmd_sweep(args) -> dict:
    rows = sweep(args.n_max, all_p=args.all_p)
    table = [
        {"n": r.n, "p": r.p, "concurrence": r.concurrence, "entanglement_of_formation": r.entanglement_of_formation}
        for r in rows
    ]
    return envelope("sweep", {"n_max": args.n_max, "all_p": args.all_p}, {"rows": table})


# --- rendering ----------------------------------------------------------------


def _text_value(v) -> str:
    if isinstance(v, float):
        return fmt(v)
    if isinstance(v, dict) and set(v) == {"re", "im"} and not isinstance(v["re"], list):
        return f"{fmt(v['re'])}{'+' if v['im'] >= 0 else '-'}{fmt(abs(v['im']))}j"
    return str(v)


def render_text(env: dict) -> str:
    out = [f"# {env['command']} (entchain {env['tool_version']})"]
    for k, v in env["inputs"].items():
        out.append(f"input {k}: {_text_value(v)}")
    for k, v in env["results"].items():
        if k == "rho":
            out.append("rho:")
            for re_row, im_row in zip(v["re"], v["im"]):
                out.append("  " + "  ".join(_text_value({"re": a, "im": b}).rjust(24) for a, b in zip(re_row, im_row)))
        elif k == "rows":
            out.append(f"{'n':>5} {'p':>5} {'C':>22} {'E_f':>22}")
            for r in v:
                out.append(f"{r['n']:>5} {r['p']:>5} {fmt(r['concurrence']):>22} {fmt(r['entanglement_of_formation']):>22}")
        elif k == "coefficients":
            out.append("coefficients:")
            for e in v:
                out.append(f"  {tuple(e['sites'])}: {_text_value({'re': e['re'], 'im': e['im']})}")
        else:
            out.append(f"{k}: {_text_value(v)}")
    return "\n".join(out) + "\n"


def render_csv(env: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    results = env["results"]
    if "rows" in results:
        writer.writerow(["n", "p", "concurrence", "entanglement_of_formation"])
        for r in results["rows"]:
            writer.writerow([r["n"], r["p"], fmt(r["concurrence"]), fmt(r["entanglement_of_formation"])])
    else:
        writer.writerow(["key", "value"])
        for k, v in results.items():
            if isinstance(v, (float, int, bool)):
                writer.writerow([k, fmt(v) if isinstance(v, float) else v])
    return buf.getvalue()


def render(env: dict, form: str) -> str:
    if form == "json":
        return json.dumps(env, indent=2) + "\n"
    if form == "csv":
        return render_csv(env)
    return render_text(env)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--tolerance", type=float, default=1e-9, help="agreement threshold for checks (default 1e-9)")

    np_args = argparse.ArgumentParser(add_help=False)
    np_args.add_argument("--n", type=int, help="block size")
    np_args.add_argument("--p", type=int, help="particles (occupied sites) per block")

    parser = argparse.ArgumentParser(prog="entchain", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"entchain {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bicycle", parents=[common], help="singlet tiling mixed with its one-site shift")
    p.set_defaults(func=cmd_bicycle)

    p = sub.add_parser("block", parents=[common, np_args], help="pair density matrix of a block state")
    p.add_argument("--optimal", action="store_true", help="use the free-particle ground state")
    p.add_argument("--coeffs", metavar="PATH", help="JSON coefficient file")
    p.add_argument("--check", action="store_true", help="also run the full Wootters formula")
    p.set_defaults(func=cmd_block)

    p = sub.add_parser("closed-form", parents=[common, np_args], help="analytic optimum for given n, p")
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("brute", parents=[common, np_args], help="power-iteration optimum for given n, p")
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("limit", parents=[common], help="infinite-block limit")
    p.add_argument("--alpha", type=float, help="occupation density in [0, 1/2]")
    p.add_argument("--optimize", action="store_true", help="solve for the optimal density")
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser(
        "sweep",
        parents=[common],
        help="best p for each n (ties within 1e-12 go to the smaller p)",
    )
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--all-p", action="store_true", help="list every admissible p, not just the best")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        env = args.func(args)
    except (ValidationError, OSError) as exc:
        print(f"entchain {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"entchain {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    sys.stdout.write(render(env, args.format))
    return EXIT_OK
