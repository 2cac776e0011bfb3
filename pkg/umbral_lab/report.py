from __future__ import annotations

from typing import Union

import pandas as pd

from .models import (
    OrderKReport,
    OutputFormat,
    PAdicReport,
    QEulerTableModel,
    VerifyReport,
    ZetaReport,
)
from .utils import format_rational


Report = Union[QEulerTableModel, list[QEulerTableModel], OrderKReport, VerifyReport, ZetaReport, PAdicReport]


def _table_frame(t: QEulerTableModel) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "q": format_rational(t.weight.q),
            "zeta": format_rational(t.weight.zeta),
            "order": t.order,
            "n": list(range(len(t.numbers))),
            "number": [format_rational(e) for e in t.numbers],
            "polynomial": [" ".join(format_rational(c) for c in cs) for cs in t.polynomials],
        }
    )


def to_frame(report: Report) -> pd.DataFrame:
    """把报告展开成表格行；列顺序即 CSV 格式的一部分，不要随意调整。"""
    if isinstance(report, list):
        return pd.concat([_table_frame(t) for t in report], ignore_index=True)
    if isinstance(report, QEulerTableModel):
        return _table_frame(report)
    if isinstance(report, OrderKReport):
        return pd.concat([_table_frame(t) for t in report.tables], ignore_index=True)
    if isinstance(report, VerifyReport):
        return pd.DataFrame(
            [
                {
                    "identity": c.identity,
                    "q": format_rational(c.weight.q),
                    "zeta": format_rational(c.weight.zeta),
                    "params": c.params,
                    "status": c.status,
                    "lhs": c.lhs or "",
                    "rhs": c.rhs or "",
                }
                for c in report.checks
            ],
            columns=["identity", "q", "zeta", "params", "status", "lhs", "rhs"],
        )
    if isinstance(report, ZetaReport):
        return pd.DataFrame(
            [{"M": r.M, "partial": format_rational(r.partial), "error": format_rational(r.error)} for r in report.rows],
            columns=["M", "partial", "error"],
        )
    if isinstance(report, PAdicReport):
        return pd.DataFrame(
            [{"level": r.level, "valuation": r.valuation} for r in report.rows],
            columns=["level", "valuation"],
        )
    raise TypeError(f"unsupported report type: {type(report).__name__}")


def _dump_json(report: Report) -> str:
    if isinstance(report, list):
        return "[\n" + ",\n".join(t.model_dump_json(indent=2) for t in report) + "\n]"
    return report.model_dump_json(indent=2)


def _pretty(report: Report) -> str:
    frame = to_frame(report)
    text = frame.to_string(index=False)
    if isinstance(report, OrderKReport) and report.convolution:
        conv = pd.DataFrame(
            [
                {
                    "k": r.k,
                    "n": r.n,
                    "table": format_rational(r.table),
                    "convolution": format_rational(r.convolution),
                    "status": r.status,
                }
                for r in report.convolution
            ]
        )
        text += "\n\n" + conv.to_string(index=False)
    if isinstance(report, PAdicReport):
        head = f"p={report.p} q={format_rational(report.q)} zeta={format_rational(report.zeta)} moment={report.moment}"
        text = head + "\n" + text
        if report.lemma1:
            lemma = pd.DataFrame([{"level": r.level, "defect_valuation": r.valuation} for r in report.lemma1])
            text += "\n\n" + lemma.to_string(index=False)
        text += f"\n\nstatus: {report.status}"
    if isinstance(report, ZetaReport):
        head = f"s={report.s} x0={format_rational(report.x0)} target={format_rational(report.target)}"
        text = head + "\n" + text + f"\n\nstatus: {report.status}"
    if isinstance(report, VerifyReport):
        failed = sum(c.status == "fail" for c in report.checks)
        text += f"\n\n{len(report.checks)} checks, {failed} failed"
    return text


def render(report: Report, output: OutputFormat) -> str:
    if output == "json":
        return _dump_json(report)
    if output == "csv":
        return to_frame(report).to_csv(index=False)
    return _pretty(report)
