"""Command line: ``lcomkit analyze`` and ``lcomkit report``.

Exit status: 0 on success, 1 on a fatal input problem (missing path, no
classes, invalid analysis file), 2 when source diagnostics of severity
error occurred but the classes that did parse were still reported.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence

import jsonschema

from .errors import DuplicateClassName, InheritanceCycle
from .frontend import ERROR, load_inputs
from .metrics import MetricsRecord, analyze_corpus
from .model import MethodPolicy, build_corpus
from .report import SplitSuggestion, split_from_evidence, system_summary
from .serialize import (
    analysis_document,
    dumps_json,
    format_table,
    record_from_dict,
    records_to_csv,
    records_to_table,
    summary_to_dict,
    validate_analysis,
)

EXIT_OK = 0
EXIT_FATAL = 1
EXIT_PARTIAL = 2

FORMATS = ("table", "csv", "json")


@dataclass
class RunConfig:
    paths: List[str]
    model_file: bool = False
    threshold: int = 0
    include_constructors: bool = False
    strict_instance: bool = False
    rfc_transitive: bool = False
    cbo_external: bool = False
    format: str = "table"
    out: Optional[str] = None
    system: Optional[str] = None
    suggest_splits: bool = False
    threshold_given: bool = field(default=False, repr=False)

    def __post_init__(self):
        if not self.paths:
            raise ValueError("at least one input path is required")
        if self.threshold not in (0, 1):
            raise ValueError("threshold must be 0 or 1")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")

    @property
    def policy(self) -> MethodPolicy:
        return MethodPolicy(
            include_constructors=self.include_constructors,
            strict_instance=self.strict_instance,
            rfc_transitive=self.rfc_transitive,
            cbo_external=self.cbo_external,
        )


def _emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _fail(message: str) -> int:
    print(f"lcomkit: {message}", file=sys.stderr)
    return EXIT_FATAL


def run_analyze(config: RunConfig) -> int:
    try:
        classes, diagnostics = load_inputs(config.paths, model_file=config.model_file)
    except (FileNotFoundError, PermissionError, UnicodeDecodeError) as e:
        return _fail(f"cannot read input: {e}")
    for d in diagnostics:
        print(d, file=sys.stderr)
    if not classes:
        return _fail("no input classes")
    try:
        corpus = build_corpus(classes)
    except (DuplicateClassName, InheritanceCycle) as e:
        return _fail(str(e))

    records = analyze_corpus(corpus, config.policy)
    system = config.system or Path(config.paths[0]).resolve().name
    summary = system_summary(system, records, config.threshold)
    if config.format == "csv":
        text = records_to_csv(records)
    elif config.format == "json":
        text = dumps_json(analysis_document(system, records, summary))
    else:
        text = records_to_table(records)
    _emit(text, config.out)
    if any(d.severity == ERROR for d in diagnostics):
        return EXIT_PARTIAL
    return EXIT_OK


def _splits(records: Sequence[MetricsRecord]) -> List[SplitSuggestion]:
    out = []
    for r in records:
        s = split_from_evidence(r.class_name, r.evidence, r.lcom, r.npm)
        if len(s.groups) >= 2:
            out.append(s)
    return out


_SUMMARY_HEADER = (
    "system", "classes", "lcom_min", "lcom_max", "lcom_mean", "lcom_median", "lcom_std",
    "cohesive", "cohesive_pct", "uncohesive", "uncohesive_pct", "median_cohesive",
    "median_cohesive_lenient",
)


def _summary_cells(s) -> List[str]:
    st = s.lcom_stats
    return [
        s.system_name,
        str(s.class_count),
        f"{st.min:.4f}",
        f"{st.max:.4f}",
        f"{st.mean:.4f}",
        f"{st.median:.4f}",
        f"{st.std_dev:.4f}",
        str(s.cohesive_count),
        f"{s.cohesive_pct:.1f}",
        str(s.uncohesive_count),
        f"{s.uncohesive_pct:.1f}",
        "yes" if s.median_cohesive else "no",
        "yes" if s.median_cohesive_lenient else "no",
    ]


def run_report(config: RunConfig) -> int:
    systems = []
    for p in config.paths:
        try:
            doc = json.loads(Path(p).read_text(encoding="utf-8"))
            validate_analysis(doc)
        except (OSError, UnicodeDecodeError) as e:
            return _fail(f"cannot read {p}: {e}")
        except json.JSONDecodeError as e:
            return _fail(f"{p}: invalid JSON: {e}")
        except jsonschema.ValidationError as e:
            return _fail(f"{p}: not an analysis document: {e.message}")
        records = [record_from_dict(c) for c in doc["classes"]]
        if not records:
            print(f"lcomkit: warning: system {doc['system']!r} has no classes; excluded", file=sys.stderr)
            continue
        threshold = config.threshold if config.threshold_given else doc["summary"]["threshold_used"]
        systems.append((doc["system"], records, system_summary(doc["system"], records, threshold)))
    if not systems:
        return _fail("no systems to report")

    total = sum(s.class_count for _, _, s in systems)
    if config.format == "json":
        doc = {
            "systems": [summary_to_dict(s) for _, _, s in systems],
            "total_classes": total,
        }
        if config.suggest_splits:
            doc["splits"] = [
                {
                    "system": name,
                    "class_name": sp.class_name,
                    "groups": [list(g) for g in sp.groups],
                    "recommended": sp.recommended,
                    "lcom": sp.lcom,
                    "npm": sp.npm,
                }
                for name, records, _ in systems
                for sp in _splits(records)
            ]
        _emit(dumps_json(doc), config.out)
        return EXIT_OK

    rows = [_summary_cells(s) for _, _, s in systems]
    rows.append(["TOTAL", str(total)] + [""] * (len(_SUMMARY_HEADER) - 2))
    split_rows = []
    if config.suggest_splits:
        for name, records, _ in systems:
            for sp in _splits(records):
                groups = " | ".join(" ".join(g) for g in sp.groups)
                split_rows.append(
                    [name, sp.class_name, "yes" if sp.recommended else "no", str(sp.lcom), str(sp.npm), groups]
                )
    split_header = ("system", "class", "recommended", "lcom", "npm", "groups")

    if config.format == "csv":
        lines = [",".join(_SUMMARY_HEADER)] + [",".join(r) for r in rows]
        if config.suggest_splits:
            lines += ["", ",".join(split_header)] + [",".join(r) for r in split_rows]
        text = "\n".join(lines) + "\n"
    else:
        text = format_table(_SUMMARY_HEADER, rows)
        if config.suggest_splits:
            text += "\n" + (format_table(split_header, split_rows) if split_rows else "no split candidates\n")
    _emit(text, config.out)
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lcomkit", description="LCOM and CK metrics for class corpora.")
    sub = ap.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="compute per-class metrics")
    an.add_argument("paths", nargs="+", help="source files or directories")
    an.add_argument("--model-file", action="store_true", help="inputs are class-model JSON documents")
    an.add_argument("--threshold", type=int, choices=(0, 1), default=0)
    an.add_argument("--include-constructors", action="store_true")
    an.add_argument("--strict-instance", action="store_true", help="ignore static methods and attributes")
    an.add_argument("--rfc-transitive", action="store_true", help="follow calls transitively for RFC")
    an.add_argument("--cbo-external", action="store_true", help="count types outside the corpus in CBO")
    an.add_argument("--format", choices=FORMATS, default="table")
    an.add_argument("--out", help="write to FILE instead of standard output")
    an.add_argument("--system", help="system name used in JSON output (default: first path's name)")

    rp = sub.add_parser("report", help="compare systems from analyze --format json outputs")
    rp.add_argument("paths", nargs="+", metavar="analysis.json")
    rp.add_argument("--threshold", type=int, choices=(0, 1), default=None)
    rp.add_argument("--suggest-splits", action="store_true")
    rp.add_argument("--format", choices=FORMATS, default="table")
    rp.add_argument("--out")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    threshold_given = args.threshold is not None
    kw = vars(args).copy()
    command = kw.pop("command")
    if kw.get("threshold") is None:
        kw["threshold"] = 0
    config = RunConfig(**kw, threshold_given=threshold_given)
    if command == "analyze":
        return run_analyze(config)
    return run_report(config)


if __name__ == "__main__":
    sys.exit(main())
