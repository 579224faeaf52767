"""Report envelope: versioned JSON, text and CSV renderings.

A report is a plain dict so that ``load_report`` followed by ``dump_json``
reproduces the emitted bytes exactly.  Integers that can outgrow 64 bits are
already decimal strings by the time they reach this module.
"""
from __future__ import annotations

import csv
import io
import json
from typing import Any, Iterable, Optional

from . import __version__
from .analysis import CSV_HEADER, ScanReport
from .verdict import Status, Verdict

SCHEMA_VERSION = "1.0"

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_INCONCLUSIVE = 4


def result_entry(obj: Any) -> dict:
    """Wrap a library result as a report entry with a ``type`` tag."""
    if isinstance(obj, Verdict):
        return {"type": "verdict", **obj.to_dict()}
    if isinstance(obj, ScanReport):
        return {"type": "scan", **obj.to_dict()}
    if hasattr(obj, "to_dict"):
        return {"type": "probe", **obj.to_dict()}
    if isinstance(obj, dict):
        return obj
    raise TypeError(f"cannot report {type(obj).__name__}")


def values_entry(selector: str, pairs: Iterable[tuple[int, int]]) -> dict:
    return {"type": "values", "sequence": selector,
            "values": [{"n": n, "value": str(v)} for n, v in pairs]}


def overall_status(results: list[dict]) -> Optional[str]:
    """Combined status of the top-level verdicts, or None if there are none."""
    statuses = [Status(r["status"]) for r in results if r.get("type") == "verdict"]
    if not statuses:
        return None
    if Status.REFUTED in statuses:
        return Status.REFUTED.value
    if Status.INCONCLUSIVE in statuses:
        return Status.INCONCLUSIVE.value
    return Status.VERIFIED.value


def exit_code(results: list[dict]) -> int:
    s = overall_status(results)
    if s == Status.REFUTED.value:
        return EXIT_REFUTED
    if s == Status.INCONCLUSIVE.value:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def build_report(command: str, config: dict, results: list, timing: Optional[dict] = None) -> dict:
    entries = [result_entry(r) for r in results]
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "partineq", "version": __version__},
        "command": command,
        "config": config,
        "status": overall_status(entries),
        "results": entries,
    }
    if timing is not None:
        report["timing"] = timing
    return report


def dump_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def load_report(text: str) -> dict:
    report = json.loads(text)
    if not isinstance(report, dict) or "schema_version" not in report:
        raise ValueError("not a partineq report (missing schema_version)")
    major = str(report["schema_version"]).split(".")[0]
    if major != SCHEMA_VERSION.split(".")[0]:
        raise ValueError(f"unsupported schema_version {report['schema_version']}")
    return report


# ---------------------------------------------------------------------------
# text
# ---------------------------------------------------------------------------


def _verdict_lines(d: dict, depth: int = 0) -> list[str]:
    pad = "  " * depth
    span = f" on [{d['horizon'][0]}, {d['horizon'][1]}]" if d.get("horizon") else ""
    line = f"{pad}{d['name']}: {d['status']}{span}"
    th = d.get("thresholds") or {}
    if th:
        line += "  " + ", ".join(f"{k}={v}" for k, v in th.items())
    out = [line]
    w = d.get("witnesses") or []
    if w:
        shown = ", ".join(_brief(x) for x in w[:5])
        more = f" ... ({len(w)} listed)" if len(w) > 5 else ""
        out.append(f"{pad}  witnesses: {shown}{more}")
    u = d.get("inconclusive") or []
    if u:
        out.append(f"{pad}  unresolved at cap: {', '.join(_brief(x) for x in u[:5])}")
    for c in d.get("checks") or []:
        out.extend(_verdict_lines(c, depth + 1))
    return out


def _brief(w: dict) -> str:
    if "a" in w and "b" in w:
        return f"({w['a']},{w['b']})"
    if "n" in w:
        return f"n={w['n']}"
    return json.dumps(w, sort_keys=True)


def render_text(report: dict) -> str:
    lines = []
    for r in report["results"]:
        t = r.get("type")
        if t == "verdict":
            lines.extend(_verdict_lines(r))
        elif t == "scan":
            lines.append(f"{r['name']} over {r['region']}: {r['violation_count']} violation(s), "
                         f"min_clean_threshold={r['min_clean_threshold']}")
            for v in r["violations"]:
                idx = ",".join(map(str, v["indices"]))
                lines.append(f"  {v['kind']} ({idx}): lhs={v['lhs']} rhs={v['rhs']} margin={v['margin']}")
        elif t == "values":
            lines.extend(v["value"] for v in r["values"])
        elif t == "threshold":
            lines.append(f"{r['name']}: threshold={r['threshold']}")
        else:
            lines.append(f"{r.get('name', t)}: {r.get('status', '')}".rstrip())
            for k in sorted(r):
                if k not in ("name", "status", "type"):
                    lines.append(f"  {k}: {r[k]}")
    if "timing" in report and any(r.get("type") != "values" for r in report["results"]):
        lines.append(f"(wall time {report['timing']['total_seconds']:.3f} s)")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# csv
# ---------------------------------------------------------------------------


def render_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    results = report["results"]
    if results and all(r.get("type") == "values" for r in results):
        w.writerow(("sequence", "n", "value"))
        for r in results:
            for v in r["values"]:
                w.writerow((r["sequence"], v["n"], v["value"]))
    elif results and all(r.get("type") == "scan" for r in results):
        w.writerow(CSV_HEADER)
        for r in results:
            for v in r["violations"]:
                w.writerow((v["kind"], ";".join(map(str, v["indices"])), v["lhs"], v["rhs"], v["margin"]))
    else:
        w.writerow(("name", "status", "horizon_lo", "horizon_hi", "witnesses", "thresholds"))
        for r in results:
            if r.get("type") != "verdict":
                continue
            for d, _depth in _walk(r):
                hz = d.get("horizon") or [None, None]
                th = ";".join(f"{k}={v}" for k, v in (d.get("thresholds") or {}).items())
                w.writerow((d["name"], d["status"], hz[0], hz[1], len(d.get("witnesses") or []), th))
    return buf.getvalue()


def _walk(d: dict, depth: int = 0):
    yield d, depth
    for c in d.get("checks") or []:
        yield from _walk(c, depth + 1)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return dump_json(report)
    if fmt == "csv":
        return render_csv(report)
    return render_text(report)
