from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from typing import Optional, Sequence

from pydantic import ValidationError

from .config import Settings, get_settings
from .errors import ConfigError, UmbralLabError
from .models import (
    ConvolutionRow,
    OrderKReport,
    PAdicReport,
    QEulerTableModel,
    RunConfig,
    ValuationRow,
    WeightModel,
    ZetaReport,
    ZetaRow,
    valuation_field,
)
from .numbers import QWeight
from .padic_lab import PAdicExperiment, convergence_report, is_nondecreasing, lemma1_report, summarize
from .polynomials import Polynomial
from .qeuler import build_context, order_k_convolution, order_k_table, qeuler_polynomials, qzeta_convergence
from .report import Report, render
from .utils import parse_int_list, parse_rational, parse_rational_list
from .verify import DEFAULT_WEIGHTS, SuiteParams, run_suite


logger = logging.getLogger("umbral_lab")

COMMANDS = ("numbers", "poly", "order-k", "verify", "zeta", "padic")
DEFAULT_ZETA_LEVELS = [10, 20, 30, 40]
DEFAULT_ZETA_WEIGHT = (Fraction(1, 2), Fraction(1, 2))
DEFAULT_N_MAX = 10
# 从第几层起要求 valuation 每层至少 +1
PADIC_TAIL_FROM = 3
# 取值可能以 "-" 开头的选项，如 --zeta -1/5
RATIONAL_FLAGS = frozenset({"--q", "--zeta", "--x0", "--alpha"})


def configure_logging(settings: Settings) -> None:
    fmt = logging.Formatter("[%(asctime)s] %(message)s")
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if settings.log_file is not None:
        settings.log_file.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(settings.log_file, encoding="utf-8"))
    for h in handlers:
        h.setFormatter(fmt)
    logger.handlers[:] = handlers
    logger.setLevel(settings.log_level)
    logger.propagate = False


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="umbral-lab",
        description="Exact umbral calculus, weighted q-Euler polynomials and fermionic p-adic q-integrals.",
    )
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--q", help="weight q as 'a/b' or an integer")
    ap.add_argument("--zeta", help="weight zeta as 'a/b' or an integer")
    ap.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    ap.add_argument("--precision", type=int, help="series truncation order (default from UMBRAL_LAB_PRECISION)")
    ap.add_argument("--d", default="1,3,5", help="odd multipliers for the distribution law")
    ap.add_argument("--alpha", default="2,-1,1/3", help="scaling factors")
    ap.add_argument("--k", default="1,2,3", help="orders for the order-k family")
    ap.add_argument("--p", type=int, help="odd prime for padic")
    ap.add_argument("--moment", type=int, default=0, help="degree n of the integrand / s = -n for zeta")
    ap.add_argument("--levels", help="'a..b' or a comma list; truncation points M for zeta")
    ap.add_argument("--x0", help="evaluation point (default 1 for zeta, 0 otherwise)")
    ap.add_argument("--output", choices=("json", "csv", "pretty"), default="pretty")
    ap.add_argument("--budget", type=int, help="term budget for padic (default from UMBRAL_LAB_BUDGET)")
    ap.add_argument("--workers", type=int, help="parallel workers (default from UMBRAL_LAB_WORKERS)")
    return ap


def normalize_argv(argv: Sequence[str]) -> list[str]:
    """把 `--zeta -1/5` 拼成 `--zeta=-1/5`，否则 argparse 会把负数当成选项。"""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok in RATIONAL_FLAGS and nxt is not None and nxt.startswith("-") and not nxt.startswith("--"):
            out.append(f"{tok}={nxt}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _weights(args: argparse.Namespace) -> list[WeightModel]:
    if (args.q is None) != (args.zeta is None):
        raise ConfigError("--q and --zeta must be given together")
    if args.q is not None:
        return [WeightModel(q=parse_rational(args.q), zeta=parse_rational(args.zeta))]
    if args.command == "verify":
        return [WeightModel.from_weight(w) for w in DEFAULT_WEIGHTS]
    if args.command == "zeta":
        q, zeta = DEFAULT_ZETA_WEIGHT
        return [WeightModel(q=q, zeta=zeta)]
    if args.command == "padic":
        if args.p is None:
            raise ConfigError("padic needs --p")
        return [WeightModel(q=1 + args.p, zeta=1 + 2 * args.p)]
    return [WeightModel(q=1, zeta=1)]


def to_run_config(args: argparse.Namespace, settings: Settings) -> RunConfig:
    """命令行参数覆盖环境变量配置；pydantic 校验失败统一转成 ConfigError。"""
    if args.levels is not None:
        levels = parse_int_list(args.levels)
    elif args.command == "zeta":
        levels = list(DEFAULT_ZETA_LEVELS)
    else:
        levels = []
    if args.x0 is not None:
        x0 = parse_rational(args.x0)
    else:
        x0 = Fraction(1) if args.command == "zeta" else Fraction(0)
    precision = args.precision if args.precision is not None else max(settings.precision, args.n_max)
    try:
        return RunConfig(
            command=args.command,
            weights=_weights(args),
            n_max=args.n_max,
            precision=precision,
            d_list=parse_int_list(args.d),
            alpha_list=parse_rational_list(args.alpha),
            k_list=parse_int_list(args.k),
            p=args.p,
            moment=args.moment,
            levels=levels,
            x0=x0,
            output=args.output,
            budget=args.budget if args.budget is not None else settings.budget,
            workers=args.workers if args.workers is not None else settings.workers,
        )
    except ValidationError as e:
        raise ConfigError(str(e)) from e


def _single_weight(cfg: RunConfig) -> QWeight:
    return cfg.weights[0].to_weight()


def run_tables(cfg: RunConfig) -> QEulerTableModel:
    ctx = build_context(_single_weight(cfg), cfg.precision)
    return QEulerTableModel.from_table(qeuler_polynomials(ctx, cfg.n_max))


def run_order_k(cfg: RunConfig) -> OrderKReport:
    w = _single_weight(cfg)
    ctx = build_context(w, cfg.precision)
    base = qeuler_polynomials(ctx, cfg.n_max)
    tables = []
    rows = []
    for k in cfg.k_list:
        tk = order_k_table(ctx, k, cfg.n_max)
        tables.append(QEulerTableModel.from_table(tk))
        for n in range(cfg.n_max + 1):
            conv = order_k_convolution(ctx, k, n, base)
            rows.append(
                ConvolutionRow(
                    k=k,
                    n=n,
                    table=tk.numbers[n],
                    convolution=conv,
                    status="pass" if conv == tk.numbers[n] else "fail",
                )
            )
    return OrderKReport(weight=WeightModel.from_weight(w), tables=tables, convolution=rows)


def run_zeta(cfg: RunConfig) -> ZetaReport:
    w = _single_weight(cfg)
    n = cfg.moment
    ctx = build_context(w, n)
    raw = qzeta_convergence(ctx, n, cfg.x0, cfg.levels)
    errors = [abs(e) for _, _, e in raw]
    converging = abs(w.qz) < 1 and all(b < a for a, b in zip(errors, errors[1:]))
    if abs(w.qz) >= 1:
        logger.warning("|q*zeta| = %s >= 1: partial sums are not expected to converge", abs(w.qz))
    target = qeuler_polynomials(ctx, n).polynomials[n](cfg.x0)
    return ZetaReport(
        weight=WeightModel.from_weight(w),
        s=-n,
        x0=cfg.x0,
        target=target,
        rows=[ZetaRow(M=M, partial=s, error=e) for M, s, e in raw],
        status="pass" if converging else "fail",
    )


def run_padic(cfg: RunConfig) -> PAdicReport:
    w = _single_weight(cfg)
    assert cfg.p is not None
    exp = PAdicExperiment(
        p=cfg.p,
        weight=w,
        levels=tuple(cfg.levels),
        integrand=Polynomial.monomial(cfg.moment),
        budget=cfg.budget,
    )
    rows = convergence_report(exp, cfg.moment, cfg.x0, workers=cfg.workers)
    lemma = lemma1_report(exp)
    ok = summarize(rows, tail_from=PADIC_TAIL_FROM) and is_nondecreasing([v for _, v in lemma])
    return PAdicReport(
        p=cfg.p,
        q=w.q,
        zeta=w.zeta,
        moment=cfg.moment,
        x0=cfg.x0,
        rows=[ValuationRow(level=m, valuation=valuation_field(v)) for m, v in rows],
        lemma1=[ValuationRow(level=m, valuation=valuation_field(v)) for m, v in lemma],
        status="pass" if ok else "fail",
    )


def run(cfg: RunConfig) -> tuple[Report, int]:
    """执行单个命令，返回 (报告, 退出码)；所有检查通过时退出码为 0。"""
    logger.info("run %s weights=%s n_max=%s precision=%s", cfg.command, len(cfg.weights), cfg.n_max, cfg.precision)
    if cfg.command in ("numbers", "poly"):
        return run_tables(cfg), 0
    if cfg.command == "order-k":
        report = run_order_k(cfg)
        return report, 0 if all(r.status == "pass" for r in report.convolution) else 1
    if cfg.command == "verify":
        params = SuiteParams(
            n_max=cfg.n_max,
            precision=cfg.precision,
            d_list=tuple(cfg.d_list),
            alpha_list=tuple(cfg.alpha_list),
            k_list=tuple(cfg.k_list),
        )
        report = run_suite([wm.to_weight() for wm in cfg.weights], params, workers=cfg.workers)
        return report, 0 if report.ok else 1
    if cfg.command == "zeta":
        report = run_zeta(cfg)
        return report, 0 if report.status == "pass" else 1
    report = run_padic(cfg)
    return report, 0 if report.status == "pass" else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = build_arg_parser().parse_args(normalize_argv(argv))
    try:
        settings = get_settings()
        configure_logging(settings)
        cfg = to_run_config(args, settings)
        report, code = run(cfg)
    except UmbralLabError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    text = render(report, cfg.output)
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
