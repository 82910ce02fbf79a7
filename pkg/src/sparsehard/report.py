"""Writing run reports: JSON document, delimited per-record table, text summary."""

from __future__ import annotations

import csv
import io
import json
import os
from pathlib import Path
from typing import Dict, List

from .experiments import RunReport

REPORT_JSON = "report.json"
RECORDS_CSV = "records.csv"
SUMMARY_TXT = "summary.txt"
TIMINGS_JSON = "timings.json"


def report_json(r: RunReport) -> str:
    return json.dumps(r.to_dict(), indent=2, sort_keys=True) + "\n"


def _flat(rec: dict) -> Dict[str, str]:
    row = {}
    for key, val in rec.items():
        if key == "checks":
            for name, ok in val.items():
                row[f"check:{name}"] = "1" if ok else "0"
        elif isinstance(val, (list, dict)):
            row[key] = json.dumps(val, sort_keys=True, separators=(",", ":"))
        else:
            row[key] = str(val)
    return row


def records_csv(r: RunReport) -> str:
    rows = [_flat(rec) for rec in r.records]
    columns: List[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, restval="", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def summary_text(r: RunReport) -> str:
    s = r.summary()
    lines = [f"{r.command}: {s['records']} records, {'PASS' if s['passed'] else 'FAIL'}"]
    if r.command == "selftest":
        for rec in r.records:
            bad = [n for n, ok in rec["checks"].items() if not ok]
            status = "PASS" if not bad else "FAIL"
            lines.append(f"  [{status}] criterion {rec['criterion']}: {rec['name']} ({rec['cases']} cases)")
            lines.extend(f"      failed: {n}" for n in bad)
    else:
        outcomes: Dict[str, int] = {}
        for rec in r.records:
            if "outcome" in rec:
                outcomes[rec["outcome"]] = outcomes.get(rec["outcome"], 0) + 1
        for name, count in sorted(outcomes.items()):
            lines.append(f"  outcome {name}: {count}")
    for name, count in s["failures"].items():
        lines.append(f"  FAILED {name}: {count} records")
    if s["passed"]:
        lines.append(f"  all {len(s['checks'])} checks passed")
    return "\n".join(lines) + "\n"


def emit_report(r: RunReport, path, figures: bool = False) -> List[Path]:
    """Write the report files into directory ``path``; return what was written.

    The JSON, CSV and summary files are byte-identical for identical
    configurations.  Timings go to a separate file.
    """
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
        written = []
        for name, text in (
            (REPORT_JSON, report_json(r)),
            (RECORDS_CSV, records_csv(r)),
            (SUMMARY_TXT, summary_text(r)),
        ):
            target = out / name
            target.write_text(text, encoding="utf-8")
            written.append(target)
        timings = dict(r.timings, total=r.wall_time)
        target = out / TIMINGS_JSON
        target.write_text(json.dumps(timings, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        written.append(target)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write report to {out}: {exc.strerror}") from exc
    if figures:
        from .plots import render_figures

        written.extend(render_figures(r, out))
    return written


def default_out_dir() -> str:
    return os.environ.get("SPARSEHARD_OUT_DIR", "sparsehard-out")
