"""Instance files and schedule reports.

Instance file grammar (one record per line, ``#`` starts a comment)::

    format_version 1
    budget <number>
    num_drones <integer>
    delivery <id> <t_launch> <t_rendezvous> <cost> <profit>
    ...

Header keys may appear in any order but ``format_version`` must come first.
Integral numbers are written without a decimal point, everything else with
Python's shortest round-trip ``repr``, so parse -> write -> parse is exact.
"""

from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import Any, Iterable, TextIO

from .model import Instance, Schedule, validate_instance

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
REPORT_FORMAT = "dronesched-report/1"
_HEADER_KEYS = ("budget", "num_drones")


class InstanceFormatError(ValueError):
    pass


def format_number(x: float) -> str:
    x = float(x)
    if x.is_integer() and abs(x) < 2**53:
        return str(int(x))
    return repr(x)


def _number(tok: str, lineno: int) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise InstanceFormatError(f"line {lineno}: not a number: {tok!r}") from None
    if not math.isfinite(v):
        raise InstanceFormatError(f"line {lineno}: non-finite number {tok!r}")
    return v


def parse_instance(lines: Iterable[str], *, strict: bool = False) -> Instance:
    """Parse instance text and run it through :func:`validate_instance`."""
    version = None
    header: dict[str, float] = {}
    deliveries = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        if version is None:
            if key != "format_version" or len(rest) != 1:
                raise InstanceFormatError(f"line {lineno}: expected 'format_version <int>' first")
            version = int(_number(rest[0], lineno))
            if version != FORMAT_VERSION:
                raise InstanceFormatError(f"unsupported format_version {version}")
            continue
        if key == "delivery":
            if len(rest) != 5:
                raise InstanceFormatError(
                    f"line {lineno}: delivery needs id t_launch t_rendezvous cost profit")
            did, tl, tr, c, p = (_number(t, lineno) for t in rest)
            if not did.is_integer():
                raise InstanceFormatError(f"line {lineno}: delivery id must be an integer")
            deliveries.append(dict(id=int(did), t_launch=tl, t_rendezvous=tr, cost=c, profit=p))
        elif key in _HEADER_KEYS:
            if len(rest) != 1:
                raise InstanceFormatError(f"line {lineno}: {key} takes one value")
            if key in header:
                raise InstanceFormatError(f"line {lineno}: duplicate {key}")
            header[key] = _number(rest[0], lineno)
        elif strict:
            raise InstanceFormatError(f"line {lineno}: unknown field {key!r}")
        else:
            logger.warning("line %d: ignoring unknown field %r", lineno, key)
    if version is None:
        raise InstanceFormatError("empty instance file")
    missing = [k for k in _HEADER_KEYS if k not in header]
    if missing:
        raise InstanceFormatError(f"missing header field(s): {', '.join(missing)}")
    m = header["num_drones"]
    return validate_instance(dict(budget=header["budget"],
                                  num_drones=int(m) if m.is_integer() else m,
                                  deliveries=deliveries))


def read_instance(path: str | Path, *, strict: bool = False) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh, strict=strict)


def dump_instance(inst: Instance) -> str:
    out = [
        f"format_version {FORMAT_VERSION}",
        f"budget {format_number(inst.budget)}",
        f"num_drones {inst.num_drones}",
        "# delivery id t_launch t_rendezvous cost profit",
    ]
    for d in inst.deliveries:
        out.append("delivery " + " ".join(
            format_number(v) for v in (d.id, d.t_launch, d.t_rendezvous, d.cost, d.profit)))
    return "\n".join(out) + "\n"


def write_instance(inst: Instance, path: str | Path) -> None:
    Path(path).write_text(dump_instance(inst), encoding="utf-8")


def build_report(inst: Instance, schedule: Schedule, algorithm: str,
                 parameters: dict[str, Any], **extra: Any) -> dict[str, Any]:
    """Report dict with a fixed key order.  ``extra`` keys (``optimal``,
    ``ratio_bound``, ``oracle``, ``elapsed_seconds``...) are appended in the
    order given, skipping ``None``."""
    report: dict[str, Any] = {
        "format": REPORT_FORMAT,
        "algorithm": algorithm,
        "parameters": parameters,
        "num_deliveries": inst.n,
        "num_drones": inst.num_drones,
        "budget": inst.budget,
        "total_profit": schedule.total_profit,
        "assignments": [
            {"drone": i, "delivery_ids": list(a.delivery_ids),
             "cost": a.total_cost, "profit": a.total_profit}
            for i, a in enumerate(schedule.assignments, start=1)
        ],
    }
    report.update((k, v) for k, v in extra.items() if v is not None)
    return report


def write_json(obj: Any, fh: TextIO) -> None:
    json.dump(obj, fh, indent=2)
    fh.write("\n")


def format_table(report: dict[str, Any]) -> str:
    lines = [
        f"algorithm     {report['algorithm']}",
        "parameters    " + ", ".join(f"{k}={v}" for k, v in report["parameters"].items()),
        f"deliveries    {report['num_deliveries']}",
        f"drones        {report['num_drones']}",
        f"budget        {format_number(report['budget'])}",
        "",
        f"{'drone':>5}  {'cost':>10}  {'profit':>10}  deliveries",
    ]
    for a in report["assignments"]:
        ids = " ".join(map(str, a["delivery_ids"])) or "-"
        lines.append(f"{a['drone']:>5}  {a['cost']:>10.4g}  {a['profit']:>10.4g}  {ids}")
    lines.append("")
    lines.append(f"total profit  {format_number(report['total_profit'])}")
    if "ratio_bound" in report:
        lines.append(f"ratio floor   {report['ratio_bound']:.4f}")
    if "oracle" in report:
        o = report["oracle"]
        lines.append(f"oracle opt    {format_number(o['opt_profit'])}"
                     f"{' (timed out)' if o['timed_out'] else ''}, ratio {o['ratio']:.4f}")
    if "elapsed_seconds" in report:
        lines.append(f"elapsed       {report['elapsed_seconds']:.4f}s (wall clock, informational)")
    return "\n".join(lines) + "\n"
