"""Command-line front end: batch tables as CSV or JSON.

Exit codes: 0 ok, 2 bad configuration, 3 resource cap exceeded,
4 internal invariant failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from typing import Any

import numpy as np

from . import asymptotics, exact, sampler
from .compositions import ResourceCapError, distinct_part_count, enumerate_compositions, to_bitstring

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CAP = 3
EXIT_INVARIANT = 4


class ConfigError(ValueError):
    pass


class InvariantError(RuntimeError):
    pass


def fmt(value: Any) -> str:
    """17 significant digits for floats so text round-trips double precision."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def render(rows: list[dict[str, Any]], out_format: str) -> str:
    rows = [{"schema_version": SCHEMA_VERSION, **{k: fmt(v) for k, v in r.items()}} for r in rows]
    if out_format == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue()


def parse_n_list(args) -> list[int]:
    if args.n_list:
        try:
            ns = [int(tok) for tok in args.n_list.split(",") if tok.strip()]
        except ValueError as exc:
            raise ConfigError(f"bad --n-list: {exc}") from None
    elif args.n is not None:
        ns = [args.n]
    else:
        raise ConfigError("one of --n or --n-list is required")
    if not ns:
        raise ConfigError("empty n list")
    return ns


def _require_seed(args) -> int:
    if args.seed is None:
        raise ConfigError("--seed is required for Monte Carlo runs")
    return args.seed


# -- commands --------------------------------------------------------------

def cmd_enumerate(args) -> list[dict]:
    if args.n is None:
        raise ConfigError("--n is required")
    return [
        {"index": i, "parts": str(c), "bitstring": str(to_bitstring(c)), "distinct": distinct_part_count(c)}
        for i, c in enumerate(enumerate_compositions(args.n, args.cap))
    ]


def _exact_row(rec: exact.ExactExpectationRecord) -> dict:
    return {
        "n": rec.n,
        "numerator": rec.numerator,
        "denominator_log2": rec.exact.denominator_log2 if rec.exact else None,
        "float_value": rec.float_value,
        "mode": rec.mode,
    }


def cmd_exact(args) -> list[dict]:
    ns = parse_n_list(args)
    if any(n < 1 for n in ns):
        raise ConfigError("n must be positive")
    rows = []
    for rec in exact.expectation_table(ns, cap=args.bigint_cap):
        if isinstance(rec, Exception):
            raise rec
        rows.append(_exact_row(rec))
    return rows


def cmd_simulate(args) -> list[dict]:
    ns = parse_n_list(args)
    seed = _require_seed(args)
    if args.samples < 1:
        raise ConfigError("--samples must be positive")
    if args.tail_t:
        ts = [float(t) for t in args.tail_t.split(",")]
        return [sampler.tau_tail_check(n, t, args.samples, seed) for n in ns for t in ts]
    rows = []
    for n in ns:
        rep = sampler.estimate_expectation(n, args.samples, seed, workers=args.workers)
        rows.append({"n": rep.n, "samples": rep.sample_count, "mean": rep.mean,
                     "std_error": rep.std_error, "seed": rep.seed})
    return rows


def cmd_asymptote(args) -> list[dict]:
    rows = []
    for n in parse_n_list(args):
        if n < 2:
            raise ConfigError("asymptote needs n >= 2")
        x = math.log2(n)
        g = asymptotics.eval_g(x, args.tolerance)
        rows.append({"n": n, "log2_n": x, "g_value": g,
                     "asymptote": x + asymptotics.CONSTANTS.theorem_constant + g})
    return rows


def cmd_fourier(args) -> list[dict]:
    if args.k_max < 1:
        raise ConfigError("--k-max must be positive")
    rows = []
    for k in range(1, args.k_max + 1):
        c = asymptotics.fourier_coefficient(k).value
        rows.append({"k": k, "re": c.real, "im": c.imag, "abs": abs(c), "two_abs": 2 * abs(c)})
    return rows


def cmd_gtable(args) -> list[dict]:
    if args.points < 1:
        raise ConfigError("--points must be positive")
    xs = np.arange(args.points) / args.points
    g = asymptotics.eval_g(xs, args.tolerance)
    h = asymptotics.eval_h(xs, args.tolerance)
    gf = asymptotics.eval_g_fourier(xs, args.k_max)
    return [
        {"x": float(x), "g": float(gv), "h": float(hv), "g_fourier": float(fv),
         "error_bound": asymptotics.g_error_bound(float(x), args.tolerance)}
        for x, gv, hv, fv in zip(xs, np.atleast_1d(g), np.atleast_1d(h), np.atleast_1d(gf))
    ]


def compare(n_list: list[int], samples: int = 0, seed: int | None = None,
            bigint_cap: int = exact.BIGINT_CAP) -> list[dict]:
    """Exact, Monte Carlo and asymptotic values side by side, sorted by n."""
    if not n_list:
        raise ConfigError("empty n list")
    if samples > 0 and seed is None:
        raise ConfigError("--seed is required when --samples > 0")
    ns = sorted(set(n_list))
    records = exact.expectation_table(ns, cap=bigint_cap)
    rows = []
    for n, rec in zip(ns, records):
        row: dict[str, Any] = dict.fromkeys(
            ["n", "exact_value", "exact_mode", "mc_mean", "mc_stderr", "asymptote",
             "residual_exact_vs_asymptote", "bracket_low", "bracket_high", "status"])
        row["n"] = n
        status = []
        if isinstance(rec, Exception):
            status.append(f"exact failed: {rec}")
        else:
            row["exact_value"] = rec.float_value
            row["exact_mode"] = rec.mode
        if samples > 0 and n >= 1:
            rep = sampler.estimate_expectation(n, samples, seed)
            row["mc_mean"], row["mc_stderr"] = rep.mean, rep.std_error
        if n >= 2:
            row["asymptote"] = asymptotics.asymptotic_expectation(n)
            prof = asymptotics.proposition1_profile(n)
            row["bracket_low"], row["bracket_high"] = prof["bracket_low"], prof["bracket_high"]
            if row["exact_value"] is not None:
                row["residual_exact_vs_asymptote"] = row["exact_value"] - row["asymptote"]
        else:
            status.append("n<2 unsupported")
        row["status"] = "; ".join(status) or "ok"
        rows.append(row)
    return rows


def _check_compare_rows(rows: list[dict]) -> None:
    for row in rows:
        if row["residual_exact_vs_asymptote"] is None:
            continue
        if row["residual_exact_vs_asymptote"] != row["exact_value"] - row["asymptote"]:
            raise InvariantError(f"residual mismatch at n={row['n']}")
        if row["bracket_low"] > row["bracket_high"]:
            raise InvariantError(f"bracket inverted at n={row['n']}")


def cmd_compare(args) -> list[dict]:
    rows = compare(parse_n_list(args), args.samples, args.seed, args.bigint_cap)
    _check_compare_rows(rows)
    if all(r["exact_value"] is None for r in rows):
        raise ResourceCapError("no row succeeded")
    return rows


def random_triples(trials: int, seed: int) -> list[asymptotics.BoundTriple]:
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        lam = 2.0 ** rng.uniform(-4, 40)
        a = 2.0 ** rng.uniform(-10, 10)
        b = rng.uniform(0.0, 0.5) * lam
        out.append(asymptotics.BoundTriple(a, b, lam))
    return out


def paper_grid_triples() -> list[asymptotics.BoundTriple]:
    """λ = 2**k, a = 2**x, b = 2**-m over k in 1..30, x in [0,1), m in 1..20."""
    return [asymptotics.BoundTriple(2.0 ** (j / 10), 2.0 ** -m, 2.0 ** k)
            for k in range(1, 31) for j in range(10) for m in range(1, 21)]


def cmd_bounds_check(args) -> list[dict]:
    seed = 0 if args.seed is None else args.seed
    rows = []
    for scope, triples in (("random", random_triples(args.trials, seed)), ("paper-grid", paper_grid_triples())):
        failures = {"lower_ok": 0, "upper_ok": 0, "higher_order_ok": 0}
        for t in triples:
            for key, ok in asymptotics.check_sandwich_bounds(t).items():
                failures[key] += not ok
        for key, count in failures.items():
            rows.append({"scope": scope, "inequality": key.removesuffix("_ok"),
                         "trials": len(triples), "failures": count})
    if any(r["failures"] for r in rows):
        raise InvariantError("sandwich inequality violated:\n" + render(rows, "csv"))
    return rows


COMMANDS = {
    "enumerate": cmd_enumerate,
    "exact": cmd_exact,
    "simulate": cmd_simulate,
    "asymptote": cmd_asymptote,
    "fourier": cmd_fourier,
    "gtable": cmd_gtable,
    "compare": cmd_compare,
    "bounds-check": cmd_bounds_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--n-list", help="comma-separated list of n")
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--seed", type=int)
    common.add_argument("--tolerance", type=float, default=asymptotics.DEFAULT_TOLERANCE)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--out", help="output path (default: stdout)")

    parser = argparse.ArgumentParser(prog="compdistinct", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("enumerate", parents=[common], help="list all compositions of n")
    p.add_argument("--cap", type=int, default=25)
    p = sub.add_parser("exact", parents=[common], help="exact E[D_n]")
    p.add_argument("--bigint-cap", type=int, default=exact.BIGINT_CAP)
    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo estimate of E[D_n]")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--tail-t", help="comma-separated t values; emit tau tail-check rows instead")
    p = sub.add_parser("asymptote", parents=[common], help="log2 n + γ/ln2 - 3/2 + g(log2 n)")
    p = sub.add_parser("fourier", parents=[common], help="Fourier coefficients of g")
    p.add_argument("--k-max", type=int, default=5)
    p = sub.add_parser("gtable", parents=[common], help="grid table of g, h and Fourier g")
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--k-max", type=int, default=3)
    p = sub.add_parser("compare", parents=[common], help="exact vs Monte Carlo vs asymptote")
    p.add_argument("--bigint-cap", type=int, default=exact.BIGINT_CAP)
    p = sub.add_parser("bounds-check", parents=[common], help="check the sandwich inequalities")
    p.add_argument("--trials", type=int, default=10_000)
    return parser


_SAMPLE_DEFAULTS = {"simulate": 10_000, "compare": 0}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.samples is None:
        args.samples = _SAMPLE_DEFAULTS.get(args.command, 0)
    try:
        rows = COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvariantError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    text = render(rows, args.format)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
