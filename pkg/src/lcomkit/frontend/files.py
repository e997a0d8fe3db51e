"""Collecting inputs from files and directories."""

from __future__ import annotations

import os
from pathlib import Path
from typing import Iterable, List, Tuple

from ..errors import SchemaError
from ..model import ClassModel
from .modelfile import load_model_file
from .parser import ERROR, ParseDiagnostic, SourceUnit, parse_source

SOURCE_SUFFIXES = (".java",)
MODEL_SUFFIXES = (".json",)


def collect_files(paths: Iterable[os.PathLike], suffixes: Tuple[str, ...]) -> List[Path]:
    """Files named directly plus matching files under named directories, sorted.

    Raises FileNotFoundError for a path that does not exist.
    """
    out = set()
    for p in map(Path, paths):
        if p.is_dir():
            out.update(f for f in p.rglob("*") if f.is_file() and f.suffix in suffixes)
        elif p.is_file():
            out.add(p)
        else:
            raise FileNotFoundError(str(p))
    return sorted(out)


def load_inputs(
    paths: Iterable[os.PathLike], model_file: bool = False
) -> Tuple[List[ClassModel], List[ParseDiagnostic]]:
    """Read every input and return all classes plus all diagnostics.

    A model document that fails validation contributes no classes and one
    error diagnostic; source files are handled by :func:`parse_source`.
    """
    classes: List[ClassModel] = []
    diagnostics: List[ParseDiagnostic] = []
    for f in collect_files(paths, MODEL_SUFFIXES if model_file else SOURCE_SUFFIXES):
        text = f.read_text(encoding="utf-8")
        if model_file:
            try:
                classes.extend(load_model_file(text))
            except SchemaError as e:
                diagnostics.append(ParseDiagnostic(str(f), 1, 1, ERROR, str(e)))
        else:
            cs, ds = parse_source(SourceUnit(str(f), text))
            classes.extend(cs)
            diagnostics.extend(ds)
    return classes, diagnostics
