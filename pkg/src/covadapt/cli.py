"""Command line entry point: ``covadapt <subcommand> ...``."""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

import numpy as np

from . import harness
from .linalg import max_eigenvalue
from .mc_lab import collect_imbalances, estimate_cov, mev_product
from .randomization import ProcedureConfig
from .strata import FactorSpec, enumerate_strata
from .theory import (build_cor_matrix, equal_prevalence_class_value, spectrum, subset_label,
                     verify_eigenbasis)


def _levels(s: str) -> tuple[int, ...]:
    try:
        return harness.CONFIG_KEYS["levels"][0](s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad levels {s!r}; use e.g. 2,2,3") from None


def _prevalence(s: str):
    try:
        return harness.CONFIG_KEYS["prevalence"][0](s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad prevalence {s!r}") from None


def _rows(s: str) -> list[tuple[int, ...]]:
    return [_levels(part) for part in s.split(";") if part.strip()]


def _out(path: str | None):
    """Open ``path`` for writing, or stdout."""
    if path is None:
        return sys.stdout
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", newline="")


def _stratum_label(s) -> str:
    return "(" + ",".join(map(str, s.multi_index)) + ")"


def cmd_cor_matrix(args) -> int:
    cor = build_cor_matrix(args.levels)
    labels = [_stratum_label(s) for s in enumerate_strata(FactorSpec(args.levels))]
    fh = _out(args.out)
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["stratum", *labels])
    for lab, row in zip(labels, cor.matrix):
        w.writerow([lab, *(str(x) for x in row)])
    if fh is not sys.stdout:
        fh.close()
    return 0


def cmd_eigen(args) -> int:
    cor = build_cor_matrix(args.levels)
    rep = spectrum(cor)
    m = len(args.levels)
    fh = _out(args.out)
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["J", "eigenvalue", "eigenvalue_float", "multiplicity"])
    for j, lam in rep.eigenvalues.items():
        w.writerow([subset_label(j, m), str(lam), repr(float(lam)), rep.multiplicities[j]])
    if fh is not sys.stdout:
        fh.close()
    print(f"lambda_max = {rep.lambda_max} ({float(rep.lambda_max):.5f}); "
          f"closed form agrees: {rep.lemma_agrees}", file=sys.stderr)
    if args.verify:
        ok = verify_eigenbasis(cor)
        print(f"eigenbasis exact and complete: {ok}", file=sys.stderr)
        if args.jacobi:
            top = max_eigenvalue(cor.to_numpy())
            print(f"Jacobi maximum eigenvalue: {top:.10f}", file=sys.stderr)
        return 0 if ok else 1
    return 0


def cmd_mc_cov(args) -> int:
    spec = FactorSpec(args.levels, args.prevalence)
    cfg = ProcedureConfig(args.procedure, args.bias, args.imbalance_measure)
    n = args.n if args.n is not None else args.per_stratum * spec.n_strata
    samples = collect_imbalances(spec, cfg, n, args.reps, args.seed, args.threads)
    est = estimate_cov(samples)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    np.savetxt(out / "cov_hat.csv", est.cov_hat, delimiter=",", fmt="%.17g")
    with open(out / "summary.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["quantity", "value"])
        w.writerow(["n", n])
        w.writerow(["replications", args.reps])
        w.writerow(["sigma2_hat", repr(est.sigma2_hat)])
        w.writerow(["sigma2_se", repr(est.sigma2_se)])
        w.writerow(["mev_hat", repr(est.mev_hat)])
        if spec.equal_prevalence:
            w.writerow(["sigma2_times_lambda_max", repr(mev_product(spec, est.sigma2_hat))])
    with open(out / "class_correlations.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["I", "simulated", "theoretical", "abs_diff"])
        for mask, val in sorted(est.class_correlations.items()):
            row = [subset_label(mask, spec.num_factors), repr(val)]
            if spec.equal_prevalence and spec.num_factors >= 2:
                theo = float(equal_prevalence_class_value(spec.levels, mask))
                row += [repr(theo), repr(abs(val - theo))]
            else:
                row += ["", ""]
            w.writerow(row)
    print(f"sigma2_hat = {est.sigma2_hat:.5f} (se {est.sigma2_se:.5f}), "
          f"mev_hat = {est.mev_hat:.5f}; wrote {out}")
    return 0


def cmd_simulate_tests(args) -> int:
    if args.config:
        cfg = harness.load_config(args.config)
    else:
        cfg = harness.load_preset(args.preset)
    over = {}
    if args.replications is not None:
        over["replications"] = args.replications
    if args.seed is not None:
        over["master_seed"] = args.seed
    if args.threads is not None:
        over["threads"] = args.threads
    if args.theta is not None:
        over["hazard"] = harness.replace(cfg.hazard, theta=args.theta)
    if over:
        cfg = harness.replace(cfg, **over)
    result = harness.run_simulation(cfg)
    out = args.out or cfg.output_dir
    per_rep, summary = harness.write_simulation(result, out)
    for s in result.summaries().values():
        print(f"{s.test:6s} rate={s.rate:.4f} ({s.rejections}/{s.replications - s.failures})")
    print(f"wrote {per_rep} and {summary}")
    return 0


def cmd_reproduce(args) -> int:
    opts = harness.ReproduceOptions(args.scale, args.reps, args.per_stratum, args.n,
                                    args.rows, args.sigma2, args.seed, args.threads)
    rows = harness.reproduce(args.target, opts)
    path = harness.write_comparison(rows, Path(args.out) / f"{args.target}.csv")
    print(f"{'row':24s} {'quantity':18s} {'simulated':>12s} {'published':>12s} {'abs_diff':>10s}")
    for r in rows:
        pub = "" if r.published is None else f"{r.published:12.5f}"
        diff = "" if r.abs_diff is None else f"{r.abs_diff:10.5f}"
        print(f"{r.row:24s} {r.quantity:18s} {r.simulated:12.5f} {pub:>12s} {diff:>10s}")
    print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="covadapt", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cor-matrix", help="exact equal-prevalence correlation matrix")
    c.add_argument("--levels", type=_levels, required=True)
    c.add_argument("--out", help="CSV path (default stdout)")
    c.set_defaults(fn=cmd_cor_matrix)

    c = sub.add_parser("eigen", help="eigenvalues and multiplicities by factor subset")
    c.add_argument("--levels", type=_levels, required=True)
    c.add_argument("--out", help="CSV path (default stdout)")
    c.add_argument("--verify", action="store_true", help="check the eigenbasis exactly")
    c.add_argument("--jacobi", action="store_true", help="also report the numeric top eigenvalue")
    c.set_defaults(fn=cmd_eigen)

    c = sub.add_parser("mc-cov", help="Monte Carlo covariance of normalized imbalances")
    c.add_argument("--levels", type=_levels, required=True)
    c.add_argument("--prevalence", type=_prevalence)
    c.add_argument("--procedure", default="pocock_simon")
    c.add_argument("--bias", type=float, default=0.9)
    c.add_argument("--imbalance-measure", default="squared")
    c.add_argument("--per-stratum", type=int, default=500)
    c.add_argument("--n", type=int, help="total subjects (overrides --per-stratum)")
    c.add_argument("--reps", type=int, default=1000)
    c.add_argument("--seed", type=int, default=20240601)
    c.add_argument("--threads", type=int, default=None)
    c.add_argument("--out", default="mc_cov_out")
    c.set_defaults(fn=cmd_mc_cov)

    c = sub.add_parser("simulate-tests", help="Type I error / power of the test family")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--config")
    src.add_argument("--preset", choices=harness.PRESETS)
    c.add_argument("--replications", type=int)
    c.add_argument("--seed", type=int)
    c.add_argument("--threads", type=int)
    c.add_argument("--theta", type=float)
    c.add_argument("--out")
    c.set_defaults(fn=cmd_simulate_tests)

    c = sub.add_parser("reproduce", help="re-run a published table at desk scale")
    c.add_argument("target", choices=harness.TARGETS)
    c.add_argument("--scale", type=float, default=0.1)
    c.add_argument("--reps", type=int)
    c.add_argument("--per-stratum", type=int)
    c.add_argument("--n", type=int, help="subjects per run (tableA5)")
    c.add_argument("--rows", type=_rows, help='levels to run, e.g. "2 2" or "2 2;2 3"')
    c.add_argument("--sigma2", type=float, help="fix sigma_z^2 for the robust tests")
    c.add_argument("--seed", type=int, default=20240601)
    c.add_argument("--threads", type=int, default=None)
    c.add_argument("--out", default="reproduce_out")
    c.set_defaults(fn=cmd_reproduce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "threads", "absent") is None:
        try:
            args.threads = harness.default_threads()
        except harness.ConfigError as exc:
            print(f"covadapt: error: {exc}", file=sys.stderr)
            return 1
    try:
        return args.fn(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"covadapt: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
