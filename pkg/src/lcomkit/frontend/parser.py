"""Recursive-descent parser for a Java-like class subset.

Recognized at the top level: ``package`` and ``import`` lines, and class
declarations with an optional ``extends``.  Inside a class: fields and
methods (constructors included).  Method bodies are not parsed into a tree;
they are scanned token by token with a stack of lexical scopes, which is
enough to tell field references from parameters and locals and to collect
call sites.

Interfaces, enums, records, nested, local and anonymous classes are skipped
with a warning.  A malformed member is reported and skipped; a malformed
class header drops that class; a lexical error or unbalanced braces drop the
whole unit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from ..model import SUPER, THIS, UNKNOWN, AttributeModel, ClassModel, Invocation, MethodModel, strip_type
from .lexer import EOF, IDENT, LexError, Token, tokenize

ERROR = "error"
WARNING = "warning"

MODIFIERS = frozenset(
    """public protected private static final abstract synchronized native
    transient volatile strictfp default sealed""".split()
)
PRIMITIVE_TYPES = frozenset("boolean byte char short int long float double void var".split())
KEYWORDS = frozenset(
    """abstract assert break case catch class const continue default do else enum
    extends final finally for goto if implements import instanceof interface native
    new package private protected public return static strictfp super switch
    synchronized this throw throws transient try volatile while true false null""".split()
)
TYPE_DECL = frozenset(["class", "interface", "enum", "record"])


def _starts_type_decl(toks: List[Token], i: int) -> bool:
    # 'record' is only a keyword in front of a record header.
    t = toks[i].text
    if t == "record":
        return toks[i + 1].kind == IDENT and toks[i + 2].text in ("(", "<")
    return t in TYPE_DECL and toks[i + 1].kind == IDENT
_OPEN = {"(": ")", "[": "]", "{": "}"}


@dataclass(frozen=True)
class SourceUnit:
    path: str
    text: str


@dataclass(frozen=True)
class ParseDiagnostic:
    path: str
    line: int
    column: int
    severity: str
    message: str

    def __str__(self):
        return f"{self.path}:{self.line}:{self.column}: {self.severity}: {self.message}"


class _Fail(Exception):
    def __init__(self, token: Token, message: str):
        super().__init__(message)
        self.token = token
        self.message = message


def _match_forward(toks: List[Token], i: int) -> int:
    """Index of the bracket closing the one at ``i``."""
    opener = toks[i].text
    closer = _OPEN[opener]
    depth = 0
    for j in range(i, len(toks)):
        if toks[j].kind != "op":
            continue
        if toks[j].text == opener:
            depth += 1
        elif toks[j].text == closer:
            depth -= 1
            if depth == 0:
                return j
    raise _Fail(toks[i], f"unbalanced {opener!r}")


def _count_args(toks: List[Token], open_idx: int, close_idx: int) -> int:
    if close_idx == open_idx + 1:
        return 0
    depth, commas = 0, 0
    for j in range(open_idx + 1, close_idx):
        t = toks[j].text
        if toks[j].kind != "op":
            continue
        if t in _OPEN:
            depth += 1
        elif t in (")", "]", "}"):
            depth -= 1
        elif t == "," and depth == 0:
            commas += 1
    return commas + 1


def _join(parts: List[str]) -> str:
    out = ""
    for p in parts:
        if out and (out[-1].isalnum() or out[-1] in "_$?") and (p[0].isalnum() or p[0] in "_$?"):
            out += " "
        out += p
    return out


def _scan_type(toks: List[Token], i: int) -> Optional[int]:
    """End index (exclusive) of a type starting at ``i``, or None."""
    if toks[i].kind != IDENT or (toks[i].text in KEYWORDS and toks[i].text not in PRIMITIVE_TYPES):
        return None
    j = i + 1
    while toks[j].text == "." and toks[j + 1].kind == IDENT and toks[j + 1].text not in KEYWORDS:
        j += 2
    if toks[j].text == "<":
        depth = 0
        k = j
        while True:
            t = toks[k]
            if t.text == "<":
                depth += 1
            elif t.text == ">":
                depth -= 1
                if depth == 0:
                    break
            elif t.kind == IDENT:
                if t.text in KEYWORDS and t.text not in ("extends", "super") and t.text not in PRIMITIVE_TYPES:
                    return None
            elif t.text not in (",", ".", "?", "[", "]", "&"):
                return None
            k += 1
        j = k + 1
        while toks[j].text == "." and toks[j + 1].kind == IDENT:
            j += 2
    while toks[j].text == "[" and toks[j + 1].text == "]":
        j += 2
    return j


@dataclass
class _Scope:
    names: Dict[str, Optional[str]] = field(default_factory=dict)
    # Scope opened by a for/catch/try header; closed by the statement it governs.
    header_depth: Optional[int] = None


class _BodyScanner:
    """Collects field references and call sites from one method body."""

    def __init__(self, parser: "Parser", fields: Dict[str, Optional[str]], params: Dict[str, Optional[str]]):
        self.p = parser
        self.toks = parser.toks
        self.fields = fields
        self.scopes = [_Scope(dict(params))]
        self.refs: Set[str] = set()
        self.calls: List[Invocation] = []
        self.decl_type: Optional[str] = None

    def _lookup(self, name: str) -> Tuple[bool, Optional[str]]:
        for s in reversed(self.scopes):
            if name in s.names:
                return True, s.names[name]
        return False, None

    def _declare(self, name: str, type_name: Optional[str] = None):
        self.scopes[-1].names[name] = type_name

    def _receiver_hint(self, name: str) -> str:
        local, type_name = self._lookup(name)
        if local:
            return type_name or UNKNOWN
        if name in self.fields:
            self.refs.add(name)
            return self.fields[name] or UNKNOWN
        if name[:1].isupper():
            return name
        return UNKNOWN

    def _call(self, receiver: str, name_idx: int):
        toks = self.toks
        close = _match_forward(toks, name_idx + 1)
        self.calls.append(Invocation(receiver, toks[name_idx].text, _count_args(toks, name_idx + 1, close)))

    def scan(self, start: int, end: int):
        toks = self.toks
        i = start
        paren = 0
        header_next = False
        decl_paren: Optional[int] = None
        skip_blocks: Set[int] = set()
        while i < end:
            t = toks[i]
            text = t.text
            prev = toks[i - 1].text if i > start else "{"
            nxt = toks[i + 1].text

            if t.kind != IDENT:
                opens_block = header_next and text == "{"
                header_next = False
                if text == "{":
                    if i in skip_blocks:
                        self.p.warn(t, "anonymous class body skipped")
                        i = _match_forward(toks, i) + 1
                        continue
                    if opens_block:
                        self.scopes[-1].header_depth = None
                    else:
                        self.scopes.append(_Scope())
                elif text == "}":
                    if len(self.scopes) > 1:
                        self.scopes.pop()
                elif text == "(":
                    close = _match_forward(toks, i)
                    if toks[close + 1].text == "->":
                        for k in range(i + 1, close):
                            if toks[k].kind == IDENT and toks[k + 1].text in (",", ")"):
                                self._declare(toks[k].text)
                        i = close + 2
                        continue
                    paren += 1
                elif text == ")":
                    paren -= 1
                    if decl_paren is not None and paren < decl_paren:
                        decl_paren = None
                    if self.scopes[-1].header_depth == paren and toks[i + 1].text == "{":
                        header_next = True
                elif text == ";":
                    if decl_paren == paren:
                        decl_paren = None
                    while len(self.scopes) > 1 and self.scopes[-1].header_depth == paren:
                        self.scopes.pop()
                elif text == "," and decl_paren == paren:
                    if toks[i + 1].kind == IDENT and toks[i + 2].text in ("=", ",", ";", "["):
                        self._declare(toks[i + 1].text, self.decl_type)
                        i += 2
                        continue
                i += 1
                continue

            header_next = False
            if prev in (".", "::", "@"):
                if nxt == "(":
                    self._call(UNKNOWN, i)
                i += 1
                continue

            if text in ("for", "catch", "try") and nxt == "(":
                self.scopes.append(_Scope(header_depth=paren))
                i += 1
                continue

            if _starts_type_decl(toks, i):
                self.p.warn(t, f"local {text} skipped")
                j = i
                while toks[j].text != "{" and j < end:
                    j += 1
                i = _match_forward(toks, j) + 1 if j < end else end
                continue

            if text == "new":
                j = _scan_type(toks, i + 1)
                if j is None:
                    i += 1
                    continue
                type_text = _join([x.text for x in toks[i + 1 : j]])
                if toks[j].text == "(":
                    close = _match_forward(toks, j)
                    simple = strip_type(type_text).rsplit(".", 1)[-1]
                    self.calls.append(Invocation(strip_type(type_text), simple, _count_args(toks, j, close)))
                    if toks[close + 1].text == "{":
                        skip_blocks.add(close + 1)
                i = j
                continue

            if text in (THIS, SUPER):
                if nxt == "." and toks[i + 2].kind == IDENT:
                    member = toks[i + 2].text
                    after = toks[i + 3].text
                    if after == "(":
                        self._call(text, i + 2)
                        i += 3
                        continue
                    self.refs.add(member)
                    if (
                        after == "."
                        and toks[i + 4].kind == IDENT
                        and toks[i + 5].text == "("
                    ):
                        self._call(self.fields.get(member) or UNKNOWN, i + 4)
                        i += 5
                        continue
                    i += 3
                    continue
                i += 1
                continue

            if text in ("case", "yield", "return", "throw", "assert", "else", "instanceof", "new"):
                i += 1
                continue

            j = _scan_type(toks, i)
            if (
                j is not None
                and toks[j].kind == IDENT
                and toks[j].text not in KEYWORDS
                and toks[j + 1].text in ("=", ";", ",", ":", ")", "[")
            ):
                type_text = _join([x.text for x in toks[i:j]])
                self._declare(toks[j].text, type_text)
                self.decl_type = type_text
                decl_paren = paren
                i = j + 1
                continue

            if text in KEYWORDS:
                i += 1
                continue

            if nxt == "->" and prev != "case":
                self._declare(text)
                i += 2
                continue

            if nxt == "(":
                self._call(THIS, i)
                i += 1
                continue

            if nxt == "." and toks[i + 2].kind == IDENT and toks[i + 3].text == "(":
                self._call(self._receiver_hint(text), i + 2)
                i += 3
                continue

            local, _ = self._lookup(text)
            if not local and text in self.fields:
                self.refs.add(text)
            i += 1


class Parser:
    def __init__(self, unit: SourceUnit):
        self.unit = unit
        self.toks: List[Token] = []
        self.pos = 0
        self.diagnostics: List[ParseDiagnostic] = []
        self.package = ""
        self.imports: List[str] = []

    # diagnostics -------------------------------------------------------

    def _diag(self, tok: Token, severity: str, message: str):
        if tok.kind == EOF:
            real = [t for t in self.toks if t.kind != EOF]
            if real:
                tok = real[-1]
            else:
                tok = Token(EOF, "", 1, 1)
        self.diagnostics.append(
            ParseDiagnostic(self.unit.path, tok.line, tok.column, severity, message)
        )

    def warn(self, tok: Token, message: str):
        self._diag(tok, WARNING, message)

    def error(self, tok: Token, message: str):
        self._diag(tok, ERROR, message)

    # token helpers -----------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind != "string"

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise _Fail(self.tok, f"expected {text!r}, found {self.tok.text or 'end of file'!r}")
        t = self.tok
        self.pos += 1
        return t

    def ident(self) -> Token:
        t = self.tok
        if t.kind != IDENT or t.text in KEYWORDS:
            raise _Fail(t, f"expected identifier, found {t.text or 'end of file'!r}")
        self.pos += 1
        return t

    def skip_block(self):
        """Skip forward to the next '{' and past its matching '}'."""
        while self.tok.kind != EOF and not self.at("{"):
            self.pos += 1
        if self.tok.kind != EOF:
            self.pos = _match_forward(self.toks, self.pos) + 1

    def skip_annotations(self):
        while self.at("@") and self.peek().text != "interface":
            self.pos += 1
            self.qualified_name()
            if self.at("("):
                self.pos = _match_forward(self.toks, self.pos) + 1

    def modifiers(self) -> Set[str]:
        mods = set()
        while True:
            self.skip_annotations()
            if self.tok.kind == IDENT and self.tok.text in MODIFIERS:
                # 'default' starts a member only in interfaces; here it is a modifier.
                mods.add(self.tok.text)
                self.pos += 1
            elif self.at("non") and self.peek().text == "-" and self.peek(2).text == "sealed":
                self.pos += 3
            else:
                return mods

    def qualified_name(self) -> str:
        parts = [self.ident().text]
        while self.at(".") and self.peek().kind == IDENT:
            self.pos += 1
            parts.append(self.ident().text)
        return ".".join(parts)

    def type_(self) -> str:
        end = _scan_type(self.toks, self.pos)
        if end is None:
            raise _Fail(self.tok, f"expected type, found {self.tok.text or 'end of file'!r}")
        text = _join([t.text for t in self.toks[self.pos : end]])
        self.pos = end
        return text

    def type_params(self):
        if self.at("<"):
            depth = 0
            while self.tok.kind != EOF:
                if self.at("<"):
                    depth += 1
                elif self.at(">"):
                    depth -= 1
                    if depth == 0:
                        self.pos += 1
                        return
                self.pos += 1
            raise _Fail(self.tok, "unterminated type parameter list")

    # grammar -----------------------------------------------------------

    def parse(self) -> List[ClassModel]:
        try:
            self.toks = tokenize(self.unit.text)
        except LexError as e:
            self.diagnostics.append(ParseDiagnostic(self.unit.path, e.line, e.column, ERROR, e.message))
            return []
        bad = self._unbalanced()
        if bad is not None:
            self.error(bad, f"unbalanced {bad.text!r}")
            return []

        # Padding so fixed lookahead never runs off the end.
        self.toks.extend([self.toks[-1]] * 8)
        classes: List[Tuple[ClassModel, Token]] = []
        while self.tok.kind != EOF:
            start = self.pos
            try:
                if self.at(";"):
                    self.pos += 1
                elif self.at("package"):
                    self.pos += 1
                    self.package = self.qualified_name()
                    self.expect(";")
                elif self.at("import"):
                    self.pos += 1
                    if self.at("static"):
                        self.pos += 1
                    name = self.qualified_name()
                    if self.at("."):
                        self.pos += 1
                        self.expect("*")
                        name += ".*"
                    self.imports.append(name)
                    self.expect(";")
                else:
                    head = self.tok
                    cls = self.type_declaration()
                    if cls is not None:
                        classes.append((cls, head))
            except _Fail as e:
                self.error(e.token, e.message)
                self.pos = max(self.pos, start + 1)
                self._recover_top()
        seen: Set[str] = set()
        out = []
        for c, head in classes:
            if c.name in seen:
                self.error(head, f"duplicate class {c.name}")
                continue
            seen.add(c.name)
            out.append(c)
        return out

    def _unbalanced(self) -> Optional[Token]:
        stack: List[Token] = []
        for t in self.toks:
            if t.kind != "op":
                continue
            if t.text in _OPEN:
                stack.append(t)
            elif t.text in (")", "]", "}"):
                if not stack or _OPEN[stack[-1].text] != t.text:
                    return t
                stack.pop()
        return stack[-1] if stack else None

    def _recover_top(self):
        while self.tok.kind != EOF:
            if self.at(";"):
                self.pos += 1
                return
            if self.at("{"):
                self.pos = _match_forward(self.toks, self.pos) + 1
                return
            if _starts_type_decl(self.toks, self.pos) or self.tok.text in MODIFIERS or self.at("@"):
                return
            self.pos += 1

    def type_declaration(self) -> Optional[ClassModel]:
        self.modifiers()
        if self.at("@") and self.peek().text == "interface":
            self.warn(self.tok, "annotation type skipped")
            self.skip_block()
            return None
        if self.tok.text in ("interface", "enum") or (
            self.at("record") and _starts_type_decl(self.toks, self.pos)
        ):
            self.warn(self.tok, f"{self.tok.text} declaration skipped")
            self.skip_block()
            return None
        head = self.expect("class")
        try:
            name = self.ident().text
            self.type_params()
            superclass = None
            if self.at("extends"):
                self.pos += 1
                superclass = strip_type(self.type_())
            if self.at("implements"):
                self.pos += 1
                self.type_()
                while self.at(","):
                    self.pos += 1
                    self.type_()
            if self.at("permits"):
                self.pos += 1
                self.type_()
                while self.at(","):
                    self.pos += 1
                    self.type_()
            if not self.at("{"):
                raise _Fail(self.tok, f"expected class body, found {self.tok.text or 'end of file'!r}")
        except _Fail as e:
            self.error(e.token, f"malformed class header: {e.message}")
            self.skip_block()
            return None
        if superclass == name:
            self.error(head, f"class {name} extends itself")
            self.skip_block()
            return None
        qualified = f"{self.package}.{name}" if self.package else name
        attributes, methods = self.class_body(name)
        return ClassModel(qualified, superclass, attributes, methods)

    def class_body(self, simple_name: str):
        self.expect("{")
        attributes: List[AttributeModel] = []
        pending: List[Tuple[dict, int, int]] = []
        while not self.at("}"):
            start = self.pos
            try:
                self.member(simple_name, attributes, pending)
            except _Fail as e:
                self.error(e.token, f"in class {simple_name}: {e.message}")
                self.pos = max(self.pos, start + 1)
                self._recover_member()
        self.expect("}")

        # Bodies are scanned after all fields are known: a method may use a
        # field declared below it.
        fields = {a.name: a.type_name for a in attributes}
        methods: List[MethodModel] = []
        keys: Set[str] = set()
        for info, body_start, body_end in pending:
            refs: frozenset = frozenset()
            calls: Tuple[Invocation, ...] = ()
            if body_start >= 0:
                scanner = _BodyScanner(self, fields, info["params"])
                scanner.scan(body_start, body_end)
                refs = frozenset(scanner.refs)
                calls = tuple(scanner.calls)
            m = MethodModel(
                name=info["name"],
                arity=len(info["params_list"]),
                is_public=info["public"],
                is_static=info["static"],
                is_constructor=info["constructor"],
                referenced_attributes=refs,
                invoked=calls,
                param_types=tuple(t for _, t in info["params_list"]),
            )
            if m.signature_key in keys:
                self.error(info["token"], f"duplicate method {m.signature_key} in class {simple_name}")
                continue
            keys.add(m.signature_key)
            methods.append(m)
        return attributes, methods

    def _recover_member(self):
        while self.tok.kind != EOF:
            if self.at(";"):
                self.pos += 1
                return
            if self.at("{"):
                self.pos = _match_forward(self.toks, self.pos) + 1
                return
            if self.at("}"):
                return
            self.pos += 1

    def member(self, simple_name: str, attributes: List[AttributeModel], pending: list):
        if self.at(";"):
            self.pos += 1
            return
        mods = self.modifiers()
        if _starts_type_decl(self.toks, self.pos) or (self.at("@") and self.peek().text == "interface"):
            self.warn(self.tok, f"nested {self.tok.text if self.tok.text != '@' else 'annotation'} skipped")
            self.skip_block()
            return
        if self.at("{"):
            # initializer block
            self.pos = _match_forward(self.toks, self.pos) + 1
            return
        self.type_params()
        if self.tok.kind == IDENT and self.tok.text == simple_name and self.peek().text == "(":
            name_tok = self.ident()
            self.method_rest(name_tok, mods, constructor=True, pending=pending)
            return
        type_text = self.type_()
        name_tok = self.ident()
        if self.at("("):
            self.method_rest(name_tok, mods, constructor=False, pending=pending)
            return
        self.field_rest(name_tok, type_text, mods, attributes)

    def field_rest(self, name_tok: Token, type_text: str, mods: Set[str], attributes: List[AttributeModel]):
        names = {a.name for a in attributes}
        while True:
            dims = ""
            while self.at("["):
                self.pos += 1
                self.expect("]")
                dims += "[]"
            if name_tok.text in names:
                raise _Fail(name_tok, f"duplicate field {name_tok.text!r}")
            names.add(name_tok.text)
            attributes.append(
                AttributeModel(name_tok.text, "static" in mods, "public" in mods, type_text + dims)
            )
            if self.at("="):
                self.pos += 1
                self._skip_initializer()
            if self.at(","):
                self.pos += 1
                name_tok = self.ident()
                continue
            self.expect(";")
            return

    def _skip_initializer(self):
        while self.tok.kind != EOF and not (self.at(",") or self.at(";")):
            if self.tok.kind == "op" and self.tok.text in _OPEN:
                self.pos = _match_forward(self.toks, self.pos) + 1
            elif self.at("}"):
                raise _Fail(self.tok, "unexpected '}' in initializer")
            else:
                self.pos += 1

    def method_rest(self, name_tok: Token, mods: Set[str], constructor: bool, pending: list):
        self.expect("(")
        params: List[Tuple[str, str]] = []
        if not self.at(")"):
            while True:
                self.modifiers()
                ptype = self.type_()
                if self.at("..."):
                    self.pos += 1
                    ptype += "..."
                if self.at("this"):
                    # receiver parameter, not a real argument
                    self.pos += 1
                else:
                    pname = self.ident().text
                    while self.at("["):
                        self.pos += 1
                        self.expect("]")
                        ptype += "[]"
                    params.append((pname, ptype))
                if self.at(","):
                    self.pos += 1
                    continue
                break
        self.expect(")")
        while self.at("["):
            self.pos += 1
            self.expect("]")
        if self.at("throws"):
            self.pos += 1
            self.type_()
            while self.at(","):
                self.pos += 1
                self.type_()
        info = {
            "name": name_tok.text,
            "token": name_tok,
            "params": {n: t for n, t in params},
            "params_list": params,
            "public": "public" in mods,
            "static": "static" in mods,
            "constructor": constructor,
        }
        if self.at(";"):
            self.pos += 1
            pending.append((info, -1, -1))
            return
        if not self.at("{"):
            raise _Fail(self.tok, f"expected method body, found {self.tok.text or 'end of file'!r}")
        close = _match_forward(self.toks, self.pos)
        pending.append((info, self.pos + 1, close))
        self.pos = close + 1


def parse_source(unit: SourceUnit) -> Tuple[List[ClassModel], List[ParseDiagnostic]]:
    """Parse one source unit into class models plus diagnostics.

    Never raises on bad input: problems are reported as diagnostics and the
    offending member, class or unit is left out.
    """
    parser = Parser(unit)
    classes = parser.parse()
    return classes, parser.diagnostics
