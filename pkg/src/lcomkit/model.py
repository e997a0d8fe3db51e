"""In-memory class model shared by the frontend, the metric engine and the reports.

A :class:`ClassModel` describes one class as far as the metrics care: its
attributes, its methods, the attributes each method touches and the calls each
method makes.  :func:`build_corpus` links a list of classes into a
:class:`CorpusModel` (inheritance tree, call resolution) which the
inheritance and coupling metrics need.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from .errors import DuplicateClassName, InheritanceCycle, UnknownClass

THIS = "this"
SUPER = "super"
UNKNOWN = "unknown"

PRIMITIVES = frozenset(
    ["boolean", "byte", "char", "short", "int", "long", "float", "double", "void", "var"]
)

_GENERIC_OR_ARRAY = re.compile(r"<.*>|\[\s*\]|\.\.\.")


@dataclass(frozen=True)
class AttributeModel:
    name: str
    is_static: bool = False
    is_public: bool = False
    type_name: Optional[str] = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("attribute name must be non-empty")


@dataclass(frozen=True)
class Invocation:
    """One call site: ``receiver`` is ``this``, ``super``, ``unknown`` or a type token."""

    receiver: str
    name: str
    arity: int


@dataclass(frozen=True)
class MethodModel:
    name: str
    arity: int = 0
    is_public: bool = False
    is_static: bool = False
    is_constructor: bool = False
    referenced_attributes: FrozenSet[str] = frozenset()
    invoked: Tuple[Invocation, ...] = ()
    # Declared parameter type tokens; empty when unknown.
    param_types: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.name:
            raise ValueError("method name must be non-empty")
        if self.arity < 0:
            raise ValueError("arity must be >= 0")
        if self.param_types and len(self.param_types) != self.arity:
            raise ValueError(
                f"method {self.name}: {len(self.param_types)} parameter types for arity {self.arity}"
            )
        object.__setattr__(self, "referenced_attributes", frozenset(self.referenced_attributes))
        object.__setattr__(self, "invoked", tuple(self.invoked))
        object.__setattr__(self, "param_types", tuple(self.param_types))

    @property
    def signature_key(self) -> str:
        return f"{self.name}/{self.arity}"


@dataclass(frozen=True)
class ClassModel:
    name: str
    superclass_name: Optional[str] = None
    attributes: Tuple[AttributeModel, ...] = ()
    methods: Tuple[MethodModel, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "methods", tuple(self.methods))
        if not self.name:
            raise ValueError("class name must be non-empty")
        if self.superclass_name == self.name:
            raise ValueError(f"class {self.name} cannot extend itself")
        seen = set()
        for a in self.attributes:
            if a.name in seen:
                raise ValueError(f"class {self.name}: duplicate attribute {a.name!r}")
            seen.add(a.name)
        seen = set()
        for m in self.methods:
            if m.signature_key in seen:
                raise ValueError(f"class {self.name}: duplicate method {m.signature_key!r}")
            seen.add(m.signature_key)

    @property
    def simple_name(self) -> str:
        return self.name.rsplit(".", 1)[-1]

    @property
    def package(self) -> str:
        return self.name.rsplit(".", 1)[0] if "." in self.name else ""

    @property
    def attribute_names(self) -> FrozenSet[str]:
        return frozenset(a.name for a in self.attributes)

    def method(self, signature_key: str) -> Optional[MethodModel]:
        for m in self.methods:
            if m.signature_key == signature_key:
                return m
        return None

    def undeclared_references(self) -> Dict[str, FrozenSet[str]]:
        """Referenced names that are not attributes of this class, per method.

        Such names are typically inherited fields.  They count for LCOM but
        are dropped by LCOM2.
        """
        declared = self.attribute_names
        out = {}
        for m in self.methods:
            extra = m.referenced_attributes - declared
            if extra:
                out[m.signature_key] = extra
        return out


@dataclass(frozen=True)
class PairEvidence:
    """Method pairs split by whether their attribute sets intersect.

    ``disjoint_pairs`` is P and ``sharing_pairs`` is Q.  Pairs are sorted
    tuples of signature keys.  When no counted method references any attribute
    both sets are empty and ``all_empty`` is set; otherwise
    ``|P| + |Q| == C(n, 2)``.
    """

    methods: Tuple[str, ...] = ()
    disjoint_pairs: FrozenSet[Tuple[str, str]] = frozenset()
    sharing_pairs: FrozenSet[Tuple[str, str]] = frozenset()
    all_empty: bool = False

    @property
    def p(self) -> int:
        return len(self.disjoint_pairs)

    @property
    def q(self) -> int:
        return len(self.sharing_pairs)


@dataclass(frozen=True)
class MethodPolicy:
    """Which methods and attributes take part in the cohesion metrics.

    ``strict_instance`` drops static methods and static attributes so only
    instance behaviour is measured.  ``rfc_transitive`` and ``cbo_external``
    only affect the coupling metrics.
    """

    include_constructors: bool = False
    strict_instance: bool = False
    rfc_transitive: bool = False
    cbo_external: bool = False


DEFAULT_POLICY = MethodPolicy()


def counted_methods(cls: ClassModel, policy: MethodPolicy = DEFAULT_POLICY) -> List[MethodModel]:
    out = []
    for m in cls.methods:
        if m.is_constructor and not policy.include_constructors:
            continue
        if m.is_static and policy.strict_instance:
            continue
        out.append(m)
    return out


def attribute_uses(
    cls: ClassModel, policy: MethodPolicy = DEFAULT_POLICY
) -> List[Tuple[str, FrozenSet[str]]]:
    """(signature_key, referenced attributes) for every counted method."""
    static_attrs = frozenset(a.name for a in cls.attributes if a.is_static)
    out = []
    for m in counted_methods(cls, policy):
        refs = m.referenced_attributes
        if policy.strict_instance:
            refs = refs - static_attrs
        out.append((m.signature_key, refs))
    return out


def strip_type(token: str) -> str:
    """Raw type name of a type token: ``Map<K, V>[]`` -> ``Map``."""
    return _GENERIC_OR_ARRAY.sub("", token).strip()


@dataclass(frozen=True)
class CorpusModel:
    classes: Mapping[str, ClassModel]
    parents: Mapping[str, Optional[str]]
    children: Mapping[str, FrozenSet[str]]
    resolved_calls: Mapping[Tuple[str, str], FrozenSet[Tuple[str, str]]]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __contains__(self, name: str) -> bool:
        return name in self.classes

    def get(self, name: str) -> ClassModel:
        try:
            return self.classes[name]
        except KeyError:
            raise UnknownClass(name) from None

    def resolve_type(self, token: Optional[str], context: str) -> Optional[str]:
        """Corpus class named by ``token`` as written inside class ``context``."""
        if not token:
            return None
        raw = strip_type(token)
        if not raw or raw in PRIMITIVES or raw in (THIS, SUPER, UNKNOWN):
            return None
        index = self._cache.get("simple_names")
        if index is None:
            index = {}
            for name in self.classes:
                index.setdefault(name.rsplit(".", 1)[-1], []).append(name)
            self._cache["simple_names"] = index
        if raw in self.classes:
            return raw
        pkg = context.rsplit(".", 1)[0] if "." in context else ""
        if pkg and f"{pkg}.{raw}" in self.classes:
            return f"{pkg}.{raw}"
        candidates = index.get(raw.rsplit(".", 1)[-1], [])
        if len(candidates) == 1:
            return candidates[0]
        return None

    def _owner_of(self, start: Optional[str], key: str) -> Optional[str]:
        cur = start
        while cur is not None:
            if self.classes[cur].method(key) is not None:
                return cur
            cur = self.parents.get(cur)
        return None

    def resolve_call(self, context: str, call: "Invocation") -> Optional[Tuple[str, str]]:
        """(class, signature key) a call made inside ``context`` lands on, if in the corpus.

        Lookup starts at the receiver's class and walks up its superclasses.
        """
        key = f"{call.name}/{call.arity}"
        if call.receiver == THIS:
            start = context
        elif call.receiver == SUPER:
            start = self.parents.get(context)
        elif call.receiver == UNKNOWN:
            return None
        else:
            start = self.resolve_type(call.receiver, context)
        owner = self._owner_of(start, key)
        return None if owner is None else (owner, key)

    def ancestors(self, name: str) -> List[str]:
        """In-corpus superclasses of ``name``, nearest first."""
        out = []
        cur = self.parents.get(name)
        while cur is not None:
            out.append(cur)
            cur = self.parents.get(cur)
        return out


def build_corpus(classes: Iterable[ClassModel]) -> CorpusModel:
    """Link classes into a corpus.

    Superclasses that do not resolve inside the corpus are treated as
    external, which makes the class a hierarchy root.

    Raises:
        DuplicateClassName: two classes share a fully qualified name.
        InheritanceCycle: the resolved superclass relation has a cycle.
    """
    by_name: Dict[str, ClassModel] = {}
    for c in classes:
        if c.name in by_name:
            raise DuplicateClassName(c.name)
        by_name[c.name] = c
    by_name = dict(sorted(by_name.items()))

    proto = CorpusModel(by_name, {}, {}, {})
    parents = {n: proto.resolve_type(c.superclass_name, n) for n, c in by_name.items()}
    for n, p in parents.items():
        if p == n:
            raise InheritanceCycle([n, n])

    for start in by_name:
        path = [start]
        seen = {start}
        cur = parents[start]
        while cur is not None:
            path.append(cur)
            if cur in seen:
                raise InheritanceCycle(path[path.index(cur):])
            seen.add(cur)
            cur = parents[cur]

    kids: Dict[str, set] = {n: set() for n in by_name}
    for n, p in parents.items():
        if p is not None:
            kids[p].add(n)
    children = {n: frozenset(k) for n, k in kids.items()}

    linked = CorpusModel(by_name, parents, children, {})
    resolved: Dict[Tuple[str, str], FrozenSet[Tuple[str, str]]] = {}
    for n, c in by_name.items():
        for m in c.methods:
            targets = (linked.resolve_call(n, call) for call in m.invoked)
            resolved[(n, m.signature_key)] = frozenset(t for t in targets if t is not None)

    return CorpusModel(by_name, parents, children, resolved)
