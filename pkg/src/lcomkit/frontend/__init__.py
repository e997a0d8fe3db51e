"""Turning source text or class-model documents into :class:`~lcomkit.model.ClassModel` lists."""

from .files import collect_files, load_inputs
from .lexer import LexError, Token, tokenize
from .modelfile import dump_model_file, load_model_file
from .parser import ERROR, WARNING, ParseDiagnostic, SourceUnit, parse_source

__all__ = [
    "ERROR",
    "WARNING",
    "LexError",
    "ParseDiagnostic",
    "SourceUnit",
    "Token",
    "collect_files",
    "dump_model_file",
    "load_inputs",
    "load_model_file",
    "parse_source",
    "tokenize",
]
