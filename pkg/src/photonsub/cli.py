"""Command-line front end: figure datasets and oracle comparison.

Exit codes: 0 success, 2 invalid input, 3 detector can never click,
4 closed form and oracle disagree (or the oracle failed to converge).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from photonsub.datasets import (
    TAU_MAX,
    SweepSpec,
    depth_surface_dataset,
    fidelity_sweep_dataset,
    origin_sweep_dataset,
    oracle_compare_dataset,
    purity_surface_dataset,
    wigner_grid_dataset,
    wigner_profiles_dataset,
)
from photonsub.errors import InvalidParameterError, NoClickError, NormalizabilityError
from photonsub.quasiprob import PhaseSpaceGrid

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NO_CLICK = 3
EXIT_MISMATCH = 4


def _range(name):
    def parse(values):
        start, stop, count = values
        return SweepSpec(name, float(start), float(stop), int(count)).values()
    return parse


def _add_range(p, flag, name, default, help):
    p.add_argument(flag, nargs=3, metavar=("START", "STOP", "COUNT"), default=default,
                   help=f"{help} (default: {' '.join(map(str, default))})")
    p.set_defaults(**{f"_parse_{name}": _range(name)})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="photonsub",
        description="Inconclusive photon subtraction on squeezed vacuum: datasets and checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wigner-grid", help="Wigner surface of the conditional state")
    p.add_argument("--r", type=float, default=0.5)
    p.add_argument("--tau", type=float, default=0.9)
    p.add_argument("--eta", type=float, default=0.8)
    p.add_argument("--target-sqfock", type=float, metavar="Z", default=None,
                   help="emit the Wigner function of S(Z)|1> instead")
    p.add_argument("--x-range", nargs=2, type=float, metavar=("MIN", "MAX"))
    p.add_argument("--y-range", nargs=2, type=float, metavar=("MIN", "MAX"))
    p.add_argument("--points", type=int, default=201, help="points per axis")
    p.add_argument("--out", required=True)

    p = sub.add_parser("wigner-profiles", help="cuts W(0, y) for several tau and the target")
    p.add_argument("--r", type=float, default=0.5)
    p.add_argument("--eta", type=float, default=0.8)
    p.add_argument("--z", type=float, default=None, help="target squeezing (default: r)")
    p.add_argument("--tau-list", nargs="+", type=float, default=[0.99, 0.9, 0.75, 0.5])
    p.add_argument("--y-range", nargs=2, type=float, default=[-3.0, 3.0], metavar=("MIN", "MAX"))
    p.add_argument("--points", type=int, default=241)
    p.add_argument("--out", required=True)

    p = sub.add_parser("origin-sweep", help="W(0, 0) against tau for several eta")
    p.add_argument("--r", type=float, default=0.5)
    p.add_argument("--eta-list", nargs="+", type=float, default=[1.0, 0.75, 0.5, 0.25])
    _add_range(p, "--tau-range", "tau", [0.0, TAU_MAX, 101], "transmissivity sweep")
    p.add_argument("--out", required=True)

    p = sub.add_parser("fidelity-sweep", help="fidelity to S(r)|1> against tau")
    p.add_argument("--eta", type=float, default=0.8)
    p.add_argument("--r-list", nargs="+", type=float, default=[0.1, 0.3, 0.5, 0.7, 1.0, 2.0])
    _add_range(p, "--tau-range", "tau", [0.0, TAU_MAX, 101], "transmissivity sweep")
    p.add_argument("--out", required=True)

    p = sub.add_parser("purity-surface", help="purity over (r, tau)")
    p.add_argument("--eta", type=float, default=0.8)
    _add_range(p, "--r-range", "r", [0.05, 2.0, 40], "squeezing sweep")
    _add_range(p, "--tau-range", "tau", [0.0, TAU_MAX, 51], "transmissivity sweep")
    p.add_argument("--out", required=True)

    p = sub.add_parser("depth-surface", help="nonclassical depth over (tau, eta)")
    _add_range(p, "--tau-range", "tau", [0.0, 1.0, 51], "transmissivity sweep")
    _add_range(p, "--eta-range", "eta", [0.0, 1.0, 51], "efficiency sweep")
    p.add_argument("--out", required=True)

    p = sub.add_parser("oracle-compare", help="closed form against the truncated-Fock oracle")
    p.add_argument("--r-list", nargs="+", type=float, default=[0.3, 0.5, 1.0])
    p.add_argument("--tau-list", nargs="+", type=float, default=[0.5, 0.75, 0.9, 0.99])
    p.add_argument("--eta-list", nargs="+", type=float, default=[0.25, 0.5, 0.8, 1.0])
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--cutoff", type=int, default=None, help="starting Fock cutoff")
    p.add_argument("--max-cutoff", type=int, default=200)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", required=True)
    return parser


def _grid(args):
    if args.x_range is None and args.y_range is None:
        return None
    if args.x_range is None or args.y_range is None:
        raise InvalidParameterError("give both --x-range and --y-range, or neither")
    return PhaseSpaceGrid(*args.x_range, *args.y_range, args.points, args.points)


def _run(args):
    cmd = args.command
    if cmd == "wigner-grid":
        grid = _grid(args)
        if grid is None and args.points != 201:
            raise InvalidParameterError("--points needs explicit --x-range/--y-range")
        return wigner_grid_dataset(args.r, args.tau, args.eta, grid=grid,
                                   target_z=args.target_sqfock), True
    if cmd == "wigner-profiles":
        y = np.linspace(args.y_range[0], args.y_range[1], args.points)
        return wigner_profiles_dataset(args.r, args.eta, args.tau_list, z=args.z, y=y), True
    if cmd == "origin-sweep":
        taus = args._parse_tau(args.tau_range)
        return origin_sweep_dataset(args.r, args.eta_list, taus), True
    if cmd == "fidelity-sweep":
        taus = args._parse_tau(args.tau_range)
        return fidelity_sweep_dataset(args.eta, args.r_list, taus), True
    if cmd == "purity-surface":
        return purity_surface_dataset(args.eta, args._parse_r(args.r_range),
                                      args._parse_tau(args.tau_range)), True
    if cmd == "depth-surface":
        return depth_surface_dataset(args._parse_tau(args.tau_range),
                                     args._parse_eta(args.eta_range)), True
    if cmd == "oracle-compare":
        cfg = {"max_cutoff": args.max_cutoff}
        if args.cutoff is not None:
            cfg["cutoff"] = args.cutoff
        return oracle_compare_dataset(args.r_list, args.tau_list, args.eta_list,
                                      tol=args.tol, cfg_kwargs=cfg, jobs=args.jobs)
    raise AssertionError(cmd)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        dataset, ok = _run(args)
    except NoClickError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CLICK
    except (InvalidParameterError, NormalizabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    csv_path, meta_path = dataset.write(args.out, command=["photonsub", *argv])
    print(f"wrote {len(dataset.rows)} rows to {csv_path} (metadata: {meta_path})")
    if not ok:
        print("error: closed form and oracle disagree beyond tolerance", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
