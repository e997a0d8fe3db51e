"""CSV and JSON forms of metric records and system summaries."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict
from typing import Any, Dict, List, Sequence, Tuple

import jsonschema

from .metrics import MetricsRecord
from .model import PairEvidence
from .report import DescriptiveStats, SystemSummary

CSV_COLUMNS = ("class", "lcom", "lcom2", "nlcom", "connectivity", "wmc", "dit", "noc", "cbo", "rfc", "npm", "ca")
REAL_COLUMNS = frozenset(["nlcom", "connectivity"])
REAL_DIGITS = 4
PCT_DIGITS = 1

_INT = {"type": "integer", "minimum": 0}
_UNIT = {"type": "number", "minimum": 0, "maximum": 1}
_PAIRS = {
    "type": "array",
    "items": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
}
_STATS = {
    "type": "object",
    "additionalProperties": False,
    "required": ["n", "min", "max", "mean", "median", "std_dev"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "min": {"type": "number"},
        "max": {"type": "number"},
        "mean": {"type": "number"},
        "median": {"type": "number"},
        "std_dev": {"type": "number", "minimum": 0},
    },
}
RECORD_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": [
        "class_name", "lcom", "lcom2", "nlcom", "connectivity", "wmc", "dit",
        "noc", "cbo", "rfc", "npm", "ca", "evidence",
    ],
    "properties": {
        "class_name": {"type": "string", "minLength": 1},
        "lcom": _INT,
        "lcom2": _INT,
        "nlcom": _UNIT,
        "connectivity": _UNIT,
        "wmc": _INT,
        "dit": {"type": "integer", "minimum": 1},
        "noc": _INT,
        "cbo": _INT,
        "rfc": _INT,
        "npm": _INT,
        "ca": _INT,
        "evidence": {
            "type": "object",
            "additionalProperties": False,
            "required": ["methods", "disjoint_pairs", "sharing_pairs", "all_empty"],
            "properties": {
                "methods": {"type": "array", "items": {"type": "string"}},
                "disjoint_pairs": _PAIRS,
                "sharing_pairs": _PAIRS,
                "all_empty": {"type": "boolean"},
            },
        },
    },
}
SUMMARY_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": [
        "system_name", "class_count", "lcom_stats", "cohesive_count", "uncohesive_count",
        "cohesive_pct", "uncohesive_pct", "threshold_used", "median_cohesive",
        "median_cohesive_lenient",
    ],
    "properties": {
        "system_name": {"type": "string"},
        "class_count": {"type": "integer", "minimum": 1},
        "lcom_stats": _STATS,
        "cohesive_count": _INT,
        "uncohesive_count": _INT,
        "cohesive_pct": {"type": "number", "minimum": 0, "maximum": 100},
        "uncohesive_pct": {"type": "number", "minimum": 0, "maximum": 100},
        "threshold_used": {"type": "integer", "minimum": 0},
        "median_cohesive": {"type": "boolean"},
        "median_cohesive_lenient": {"type": "boolean"},
    },
}
ANALYSIS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["system", "classes", "summary"],
    "properties": {
        "system": {"type": "string"},
        "classes": {"type": "array", "items": RECORD_SCHEMA},
        "summary": SUMMARY_SCHEMA,
    },
}


def _real(x: float) -> float:
    return round(float(x), REAL_DIGITS)


def evidence_to_dict(ev: PairEvidence) -> Dict[str, Any]:
    return {
        "methods": list(ev.methods),
        "disjoint_pairs": [list(p) for p in sorted(ev.disjoint_pairs)],
        "sharing_pairs": [list(p) for p in sorted(ev.sharing_pairs)],
        "all_empty": ev.all_empty,
    }


def evidence_from_dict(d: Dict[str, Any]) -> PairEvidence:
    return PairEvidence(
        tuple(d["methods"]),
        frozenset(tuple(p) for p in d["disjoint_pairs"]),
        frozenset(tuple(p) for p in d["sharing_pairs"]),
        d["all_empty"],
    )


def record_to_dict(r: MetricsRecord) -> Dict[str, Any]:
    d = {k: getattr(r, k) for k in RECORD_SCHEMA["required"] if k != "evidence"}
    d["nlcom"] = _real(r.nlcom)
    d["connectivity"] = _real(r.connectivity)
    d["evidence"] = evidence_to_dict(r.evidence)
    return d


def record_from_dict(d: Dict[str, Any]) -> MetricsRecord:
    fields = {k: v for k, v in d.items() if k != "evidence"}
    return MetricsRecord(**fields, evidence=evidence_from_dict(d["evidence"]))


def summary_to_dict(s: SystemSummary) -> Dict[str, Any]:
    d = asdict(s)
    d["lcom_stats"] = {k: (v if k == "n" else _real(v)) for k, v in d["lcom_stats"].items()}
    d["cohesive_pct"] = round(s.cohesive_pct, PCT_DIGITS)
    d["uncohesive_pct"] = round(s.uncohesive_pct, PCT_DIGITS)
    return d


def summary_from_dict(d: Dict[str, Any]) -> SystemSummary:
    fields = dict(d)
    fields["lcom_stats"] = DescriptiveStats(**d["lcom_stats"])
    return SystemSummary(**fields)


def analysis_document(system: str, records: Sequence[MetricsRecord], summary: SystemSummary) -> Dict[str, Any]:
    return {
        "system": system,
        "classes": [record_to_dict(r) for r in records],
        "summary": summary_to_dict(summary),
    }


def dumps_json(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def validate_analysis(doc: Any):
    """Raise ``jsonschema.ValidationError`` if ``doc`` is not an analysis document."""
    jsonschema.validate(doc, ANALYSIS_SCHEMA)


def format_cell(column: str, value: Any) -> str:
    if column in REAL_COLUMNS:
        return f"{value:.{REAL_DIGITS}f}"
    return str(value)


def records_to_csv(records: Sequence[MetricsRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        row = r.row()
        w.writerow([format_cell(c, row[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def csv_to_rows(text: str) -> List[Dict[str, Any]]:
    """Inverse of :func:`records_to_csv` on the scalar columns."""
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    out = []
    for raw in reader:
        row: Dict[str, Any] = {}
        for c in CSV_COLUMNS:
            v = raw[c]
            row[c] = v if c == "class" else float(v) if c in REAL_COLUMNS else int(v)
        out.append(row)
    return out


def format_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    """Plain aligned text table; first column left-aligned, the rest right-aligned."""
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]

    def line(cells: Tuple[str, ...]) -> str:
        parts = [cells[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(cells[1:], widths[1:])]
        return "  ".join(parts).rstrip()

    out = [line(tuple(header)), "  ".join("-" * w for w in widths)]
    out.extend(line(tuple(r)) for r in rows)
    return "\n".join(out) + "\n"


def records_to_table(records: Sequence[MetricsRecord]) -> str:
    rows = []
    for r in records:
        row = r.row()
        rows.append([format_cell(c, row[c]) for c in CSV_COLUMNS])
    return format_table(CSV_COLUMNS, rows)
