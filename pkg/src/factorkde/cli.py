"""Command-line interface.

Subcommands: simulate, proxy, pair-density, factor-density, scree, rmsd,
mc-study.  Exit codes: 0 on success, 2 on configuration/usage errors, 3 on
partial failure (some replications failed but results were written).

All CSV files are UTF-8 with a header row; floats are written with 12
significant digits.
"""
import argparse
import csv
import sys

import numpy as np

from .exceptions import ConfigError, DomainError
from .factor import eval_factor, fit_factor
from .families import CopulaFamily, OneFactorModel, sample_one_factor
from .harness import ExperimentConfig, run_study
from .margins import UniformMatrix, pseudo_observations
from .metrics import rmsd, scree_eigenvalues
from .pairkde import eval_density_cross, fit_pair
from .proxy import compute_proxy

_FMT = "%.12g"


def _write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_FMT % x if isinstance(x, float) else x for x in row])


def _read_table(path):
    """Read a numeric CSV with a header row; returns (names, array)."""
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        data = [[float(x) for x in row] for row in reader if row]
    if not data:
        raise ValueError(f"{path} contains no data rows")
    return header, np.asarray(data, dtype=float)


def _load_uniform(path, already_uniform):
    """Ingest a data CSV as a UniformMatrix, fitting margins unless told not to."""
    names, arr = _read_table(path)
    if already_uniform:
        if np.any(arr <= 0.0) or np.any(arr >= 1.0):
            raise DomainError(f"{path}: --already-uniform data must lie in (0, 1)")
        return names, UniformMatrix(arr)
    return names, pseudo_observations(arr)


def _add_ingest_flags(p):
    p.add_argument("--in", dest="infile", required=True, metavar="CSV",
                   help="input data (header row, one observation per row)")
    p.add_argument("--already-uniform", action="store_true",
                   help="input is already on the (0,1) scale; skip margin fitting")


def _cmd_simulate(args):
    fam = CopulaFamily.from_config({"family": args.family, "theta": args.theta})
    model = OneFactorModel.homogeneous(fam, args.d)
    u, latent = sample_one_factor(model, args.n, args.seed)
    header = [f"u{j + 1}" for j in range(args.d)]
    _write_csv(args.out, header, [list(map(float, row)) for row in u])
    if args.latent_out:
        _write_csv(args.latent_out, ["v0"], [[float(x)] for x in latent])
    print(f"wrote {args.n} x {args.d} sample to {args.out}")
    return 0


def _cmd_proxy(args):
    _, um = _load_uniform(args.infile, args.already_uniform)
    res = compute_proxy(um, auto_orient=args.auto_orient)
    rows = [[float(z), float(v), float(w)]
            for z, v, w in zip(res.z_bar, res.v_hat, res.w_hat)]
    _write_csv(args.out, ["z_bar", "v_hat", "w_hat"], rows)
    print(f"wrote proxy ({um.n} rows) to {args.out}")
    return 0


def _cmd_pair_density(args):
    names, um = _load_uniform(args.infile, args.already_uniform)
    want = args.cols.split(",")
    if len(want) != 2:
        raise ConfigError("--cols expects two comma-separated column names")
    try:
        idx = [names.index(c) for c in want]
    except ValueError as exc:
        raise ConfigError(f"column not found: {exc}") from exc
    fit = fit_pair(um.column(idx[0]), um.column(idx[1]))
    lo, hi = fit.clip_region
    grid = np.linspace(lo, hi, args.grid)
    dens = eval_density_cross(fit, grid, grid)
    rows = [[float(grid[i]), float(grid[j]), float(dens[i, j])]
            for i in range(args.grid) for j in range(args.grid)]
    _write_csv(args.out, ["u", "v", "density"], rows)
    print(f"wrote {args.grid}x{args.grid} grid to {args.out}")
    return 0


def _cmd_factor_density(args):
    _, um = _load_uniform(args.infile, args.already_uniform)
    _, pts = _read_table(args.eval)
    if pts.shape[1] != args.k:
        raise ConfigError(f"evaluation points have {pts.shape[1]} columns, "
                          f"expected k={args.k}")
    fit = fit_factor(um, args.k)
    vals = eval_factor(fit, np.clip(pts, 1e-6, 1 - 1e-6))
    _write_csv(args.out, ["density"], [[float(x)] for x in vals])
    print(f"wrote {len(vals)} densities to {args.out}")
    return 0


def _cmd_scree(args):
    _, um = _load_uniform(args.infile, args.already_uniform)
    vals = scree_eigenvalues(um)
    if args.out:
        _write_csv(args.out, ["eigenvalue"], [[float(x)] for x in vals])
        print(f"wrote {len(vals)} eigenvalues to {args.out}")
    else:
        for x in vals:
            print(_FMT % x)
    return 0


def _cmd_rmsd(args):
    ha, a = _read_table(args.est)
    hb, b = _read_table(args.truth)
    ca = ha.index("density") if "density" in ha else 0
    cb = hb.index("density") if "density" in hb else 0
    print(_FMT % rmsd(a[:, ca], b[:, cb]))
    return 0


def _cmd_mc_study(args):
    cfg = ExperimentConfig.from_json(args.config)
    result = run_study(cfg)
    if not cfg.out:
        for row in result.rows:
            print(row)
    return 3 if result.failures else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="factorkde",
        description="Kernel estimation of one-factor copula densities")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="draw a sample from a one-factor model")
    p.add_argument("--family", required=True, choices=["gumbel", "clayton", "independence"])
    p.add_argument("--theta", type=float, default=float("nan"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--latent-out", default=None,
                   help="optionally also write the latent factor draws")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("proxy", help="estimate the latent factor from all columns")
    _add_ingest_flags(p)
    p.add_argument("--out", required=True)
    p.add_argument("--auto-orient", action="store_true",
                   help="flip the proxy when negatively correlated with column 1")
    p.set_defaults(func=_cmd_proxy)

    p = sub.add_parser("pair-density", help="fitted pair density on a grid")
    _add_ingest_flags(p)
    p.add_argument("--cols", required=True, help="two column names, e.g. A,B")
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_pair_density)

    p = sub.add_parser("factor-density", help="factor copula density at points")
    _add_ingest_flags(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--eval", required=True, metavar="CSV",
                   help="evaluation points, one k-vector per row")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_factor_density)

    p = sub.add_parser("scree", help="eigenvalues of the rank correlation matrix")
    _add_ingest_flags(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_scree)

    p = sub.add_parser("rmsd", help="root mean squared difference of two columns")
    p.add_argument("--est", required=True, metavar="CSV")
    p.add_argument("--truth", required=True, metavar="CSV")
    p.set_defaults(func=_cmd_rmsd)

    p = sub.add_parser("mc-study", help="run a replication study from a config")
    p.add_argument("--config", required=True, metavar="JSON")
    p.set_defaults(func=_cmd_mc_study)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
