"""Command line entry point: ``butson {census,asympt,walk,tristochastic,vanish}``.

Exit codes: 0 success, 2 invalid configuration, 3 work budget exceeded,
4 no formula or closed form for the requested family.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import asymptotics as asy
from .census import UnsupportedFamily, closed_form_census, closed_form_method
from .cyclotomic import MultiplicityVector, admissible_length, cycle_decomposition, is_vanishing_sum
from .matrices import BudgetExceeded, CensusRecord, brute_force_census, default_budget
from .tristochastic import count_tristochastic, enumerate_tristochastic
from .walks import DEFAULT_DP_BUDGET, diagonal_return_count, mc_return_estimate

EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_UNSUPPORTED = 4

DEFAULT_SEED = 42

CENSUS_FIELDS = ["q", "m", "n", "dephased", "total", "probability", "probability_float", "method"]
ASYMPT_FIELDS = ["q", "m", "n", "formula", "estimate", "exact", "ratio"]

FORMULAS = {
    "dll": "dll",
    "prime-power-m2": "prime_power_m2",
    "three-row": "three_row",
    "multinomial-power-sum": "multinomial_power_sum",
    "p2-origin": "P2_origin",
    "p3-origin": "P3_origin",
    # short aliases
    "thm2.5": "prime_power_m2",
    "thm4.3": "three_row",
    "lemma2.4": "multinomial_power_sum",
}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    q: list[int] = field(default_factory=list)
    m: list[int] = field(default_factory=list)
    n: list[int] = field(default_factory=list)
    method: str = "auto"
    formula: str | None = None
    samples: int = 10**6
    seed: int = DEFAULT_SEED
    format: str = "json"
    budget: int = 0
    workers: int = 1
    verify: bool = False
    with_exact: bool = False


def parse_range(text: str) -> list[int]:
    """``"5"``, ``"2..5"`` (inclusive) or a comma list of either."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        try:
            if ".." in part:
                lo, hi = (int(x) for x in part.split(".."))
                if hi < lo:
                    raise ConfigError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"cannot parse {part!r} as an integer or a..b range") from None
    if not out:
        raise ConfigError("empty range")
    return out


def _fmt_float(x: float) -> float:
    return float(f"{x:.10g}")


def _fmt_log(log_value: float) -> str:
    """Render exp(log_value) to 10 significant digits without overflow."""
    if log_value == -math.inf:
        return "0"
    if abs(log_value) < 700:
        return f"{math.exp(log_value):.10g}"
    e10 = log_value / math.log(10)
    exp = math.floor(e10)
    mant = 10 ** (e10 - exp)
    if mant >= 9.9999999995:
        mant, exp = 1.0, exp + 1
    return f"{mant:.10g}e{exp:+d}"


# census


def census_record(q: int, m: int, n: int, cfg: RunConfig) -> dict:
    closed = closed_form_method(q, m)
    if cfg.method == "closed" and closed is None:
        closed_form_census(q, m, n)  # raises UnsupportedFamily with the family list
    use_closed = closed is not None and cfg.method in ("auto", "closed")
    extra = {}
    if use_closed:
        rec = closed_form_census(q, m, n)
    elif m >= 2 and not admissible_length(q, n):
        rec = CensusRecord(q, m, n, 0, "brute")
        extra["skipped"] = "inadmissible_length"
    else:
        rec = brute_force_census(q, m, n, cfg.budget, cfg.workers)
    row = rec.to_dict()
    row["probability_float"] = _fmt_float(row["probability_float"])
    row.update(extra)
    if cfg.verify:
        row["verified"] = _verify(rec, cfg)
    return row


def _verify(rec: CensusRecord, cfg: RunConfig) -> str:
    q, m, n = rec.q, rec.m, rec.n
    try:
        if rec.method == "brute":
            if closed_form_method(q, m) is None:
                return "no_closed_form"
            other = closed_form_census(q, m, n)
        else:
            other = brute_force_census(q, m, n, cfg.budget, cfg.workers)
    except BudgetExceeded:
        return "skipped_budget"
    return "ok" if other.dephased == rec.dephased else f"mismatch:{other.dephased}"


def run_census(cfg: RunConfig):
    for q in cfg.q:
        for m in cfg.m:
            for n in cfg.n:
                if q < 2 or m < 1 or n < 1:
                    raise ConfigError(f"need q >= 2, m >= 1, n >= 1; got q={q}, m={m}, n={n}")
                yield census_record(q, m, n, cfg)


# asympt


def _estimate(formula: str, args, q: int | None, m: int | None, n: int) -> tuple[asy.AsymptoticEstimate, int, int]:
    if formula == "dll":
        m = m or 2
        return asy.pm_asymptotic_dll(m, n), 2, m
    if formula == "prime_power_m2":
        _need(q, "--q")
        return asy.p2_asymptotic(q, n), q, 2
    if formula == "three_row":
        p = args.p or q
        _need(p, "--p")
        return asy.p3_asymptotic(p, n), p, 3
    if formula == "multinomial_power_sum":
        _need(args.s, "--s")
        _need(args.p, "--p")
        return asy.multinomial_power_sum_estimate(args.s, args.p, n), args.s, args.p
    p = args.p
    _need(p, "--p")
    r = 2 if formula == "P2_origin" else 3
    return asy.diagonal_return_asymptotics(p, n, formula), r * p, 2


def _need(value, flag):
    if value is None:
        raise ConfigError(f"this formula needs {flag}")


def run_asympt(cfg: RunConfig, args):
    formula = FORMULAS[cfg.formula]
    qs = cfg.q or [None]
    ms = cfg.m or [None]
    for q in qs:
        for m in ms:
            for n in cfg.n:
                est, qcol, mcol = _estimate(formula, args, q, m, n)
                row = {"q": qcol, "m": mcol, "n": n, "formula": formula, "estimate": _fmt_log(est.log_value)}
                row["exact"] = ""
                row["ratio"] = ""
                if cfg.with_exact:
                    exact = asy.exact_counterpart(est)
                    row["exact"] = _fmt_log(asy.log_fraction(exact))
                    r = est.ratio(exact)
                    row["ratio"] = "" if math.isnan(r) else f"{r:.10g}"
                yield row


# walk


def run_walk(cfg: RunConfig, args):
    for n in cfg.n:
        yield _walk_row(cfg, args, n)


def _walk_row(cfg: RunConfig, args, n: int) -> dict:
    if args.mode == "dp":
        _need(args.p, "--p")
        budget = cfg.budget if args.budget else DEFAULT_DP_BUDGET
        count = diagonal_return_count(args.p, n, budget)
        den = (2 * args.p) ** n
        frac = Fraction(count, den)
        return {
            "p": args.p,
            "n": n,
            "method": "dp",
            "count": str(count),
            "denominator": str(den),
            "probability": f"{count}/{den}",
            "reduced": f"{frac.numerator}/{frac.denominator}",
        }
    for flag, v in (("--q", cfg.q), ("--m", cfg.m)):
        _need(v or None, flag)
    q, m = cfg.q[0], cfg.m[0]
    est = mc_return_estimate(q, m, n, cfg.samples, cfg.seed, cfg.workers)
    return {
        "q": q,
        "m": m,
        "n": n,
        "method": "mc",
        "samples": cfg.samples,
        "seed": cfg.seed,
        "workers": cfg.workers,
        "hits": str(est.hits),
        "estimate": _fmt_float(est.estimate),
        "stderr": _fmt_float(est.stderr),
    }


# vanish


def run_vanish(q: int, exponents: list[int]) -> dict:
    v = MultiplicityVector.from_exponents(q, exponents)
    dec = cycle_decomposition(v)
    return {
        "q": q,
        "exponents": exponents,
        "counts": list(v.counts),
        "vanishing": is_vanishing_sum(v),
        "cycle_decomposition": None if dec is None else [list(t) for t in dec.terms],
        "admissible_length": admissible_length(q, v.total()),
    }


# output


def emit(rows, fmt: str, fields: list[str], out) -> None:
    if fmt == "json":
        for row in rows:
            out.write(json.dumps(row) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        out.write(buf.getvalue())
        for row in rows:
            buf = io.StringIO()
            csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n").writerow(row)
            out.write(buf.getvalue())
    else:
        for row in rows:
            out.write("  ".join(f"{k}={v}" for k, v in row.items()) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="butson", description="Counting partial Butson matrices.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, fmt_default="json"):
        p.add_argument("--q", type=str)
        p.add_argument("--m", type=str)
        p.add_argument("--n", type=str)
        p.add_argument("--budget", type=int, help="work budget (default $BUTSON_BUDGET or 1e8)")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--format", choices=("json", "csv", "text"), default=fmt_default)

    c = sub.add_parser("census", help="exact counts for a (q, m, n) grid")
    common(c)
    c.add_argument("--method", choices=("auto", "brute", "closed"), default="auto")
    c.add_argument("--verify", action="store_true", help="cross-check closed forms by brute force")

    a = sub.add_parser("asympt", help="asymptotic estimates, optionally with exact values")
    common(a, "csv")
    a.add_argument("--formula", choices=sorted(FORMULAS), required=True)
    a.add_argument("--s", type=int)
    a.add_argument("--p", type=int)
    a.add_argument("--with-exact", action="store_true")

    w = sub.add_parser("walk", help="diagonal-return DP or Monte Carlo origin return")
    common(w)
    w.add_argument("--mode", choices=("dp", "mc"), required=True)
    w.add_argument("--p", type=int)
    w.add_argument("--samples", type=int, default=10**6)
    w.add_argument("--seed", type=int, default=DEFAULT_SEED)

    t = sub.add_parser("tristochastic", help="list or count tristochastic matrices")
    t.add_argument("--p", type=int, required=True)
    t.add_argument("--sum", type=int, required=True, dest="line_sum")
    g = t.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true")
    g.add_argument("--count", action="store_true")

    v = sub.add_parser("vanish", help="test a multiset of q-th roots of unity")
    v.add_argument("--q", type=int, required=True)
    v.add_argument("--exponents", type=str, required=True, help="comma-separated exponents")
    return parser


def _config(args) -> RunConfig:
    cfg = RunConfig(args.subcommand)
    for name in ("q", "m", "n"):
        raw = getattr(args, name, None)
        if isinstance(raw, str):
            setattr(cfg, name, parse_range(raw))
    cfg.format = getattr(args, "format", "json")
    cfg.workers = getattr(args, "workers", 1)
    budget = getattr(args, "budget", None)
    cfg.budget = default_budget() if budget is None else budget
    cfg.method = getattr(args, "method", "auto")
    cfg.verify = getattr(args, "verify", False)
    cfg.with_exact = getattr(args, "with_exact", False)
    cfg.formula = getattr(args, "formula", None)
    cfg.samples = getattr(args, "samples", cfg.samples)
    cfg.seed = getattr(args, "seed", cfg.seed)
    if cfg.budget <= 0 or cfg.workers < 1 or cfg.samples < 1:
        raise ConfigError("budget, workers and samples must be positive")
    return cfg


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        if args.subcommand == "census":
            for flag in ("q", "m", "n"):
                _need(getattr(cfg, flag) or None, f"--{flag}")
            emit(list(run_census(cfg)), cfg.format, CENSUS_FIELDS, out)
        elif args.subcommand == "asympt":
            _need(cfg.n or None, "--n")
            emit(list(run_asympt(cfg, args)), cfg.format, ASYMPT_FIELDS, out)
        elif args.subcommand == "walk":
            _need(cfg.n or None, "--n")
            rows = list(run_walk(cfg, args))
            emit(rows, cfg.format, list(rows[0]), out)
        elif args.subcommand == "tristochastic":
            if args.list:
                for A in enumerate_tristochastic(args.p, args.line_sum):
                    out.write(str(A) + "\n")
            else:
                out.write(f"{count_tristochastic(args.p, args.line_sum)}\n")
        elif args.subcommand == "vanish":
            exps = parse_range(args.exponents)
            out.write(json.dumps(run_vanish(args.q, exps)) + "\n")
    except BudgetExceeded as exc:
        print(f"butson: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UnsupportedFamily, asy.UnsupportedFormula) as exc:
        print(f"butson: unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ValueError as exc:
        print(f"butson: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return 0


if __name__ == "__main__":
    sys.exit(main())
