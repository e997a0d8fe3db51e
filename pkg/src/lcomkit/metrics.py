"""Per-class metric engine.

Cohesion: ``lcom_ck`` (Chidamber-Kemerer LCOM), ``lcom2`` (restricted to the
attributes a class declares itself), ``nlcom`` (disjoint pairs over all pairs)
and ``connectivity`` (Hitz-Montazeri).  The rest of the suite (WMC, NPM, DIT,
NOC, CBO, RFC, CA) is computed from the corpus links.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Sequence, Set, Tuple

from .model import (
    DEFAULT_POLICY,
    PRIMITIVES,
    SUPER,
    THIS,
    UNKNOWN,
    ClassModel,
    CorpusModel,
    MethodPolicy,
    PairEvidence,
    attribute_uses,
    strip_type,
)


@dataclass(frozen=True)
class MetricsRecord:
    class_name: str
    lcom: int
    lcom2: int
    nlcom: float
    connectivity: float
    wmc: int
    dit: int
    noc: int
    cbo: int
    rfc: int
    npm: int
    ca: int
    evidence: PairEvidence

    def row(self) -> Dict[str, object]:
        """Flat dict of the scalar fields (no evidence)."""
        return {
            "class": self.class_name,
            "lcom": self.lcom,
            "lcom2": self.lcom2,
            "nlcom": self.nlcom,
            "connectivity": self.connectivity,
            "wmc": self.wmc,
            "dit": self.dit,
            "noc": self.noc,
            "cbo": self.cbo,
            "rfc": self.rfc,
            "npm": self.npm,
            "ca": self.ca,
        }


def pair_evidence(uses: Sequence[Tuple[str, FrozenSet[str]]]) -> PairEvidence:
    """Split all unordered method pairs into disjoint (P) and sharing (Q).

    ``uses`` is a sequence of (method key, attribute set).  If every set is
    empty, P is empty by definition and so is Q.
    """
    keys = tuple(k for k, _ in uses)
    if not any(refs for _, refs in uses):
        return PairEvidence(keys, frozenset(), frozenset(), all_empty=True)

    bit: Dict[str, int] = {}
    masks = []
    for _, refs in uses:
        mask = 0
        for a in refs:
            mask |= 1 << bit.setdefault(a, len(bit))
        masks.append(mask)

    disjoint, sharing = [], []
    for i, j in combinations(range(len(uses)), 2):
        pair = tuple(sorted((keys[i], keys[j])))
        (sharing if masks[i] & masks[j] else disjoint).append(pair)
    return PairEvidence(keys, frozenset(disjoint), frozenset(sharing))


def _lcom_value(ev: PairEvidence) -> int:
    return max(ev.p - ev.q, 0)


def lcom_ck(cls: ClassModel, policy: MethodPolicy = DEFAULT_POLICY) -> Tuple[int, PairEvidence]:
    """LCOM over every counted method and every referenced name.

    >>> from lcomkit.model import MethodModel
    >>> c = ClassModel("C", methods=[
    ...     MethodModel("m1", referenced_attributes={"a", "b", "c", "d", "e"}),
    ...     MethodModel("m2", referenced_attributes={"a", "b", "e"}),
    ...     MethodModel("m3", referenced_attributes={"x", "y", "z"})])
    >>> lcom_ck(c)[0]
    1
    """
    ev = pair_evidence(attribute_uses(cls, policy))
    return _lcom_value(ev), ev


def lcom2(
    cls: ClassModel, corpus: CorpusModel, policy: MethodPolicy = DEFAULT_POLICY
) -> Tuple[int, PairEvidence]:
    """LCOM restricted to methods and attributes implemented in the class.

    References to names the class does not declare (inherited fields) are
    dropped before intersecting, so a pair that only shares an inherited
    attribute counts as disjoint.  P is empty only when no method references
    anything at all, inherited or not.
    """
    corpus.get(cls.name)
    uses = attribute_uses(cls, policy)
    if not any(refs for _, refs in uses):
        return 0, pair_evidence(uses)
    own = cls.attribute_names
    if policy.strict_instance:
        own = own - {a.name for a in cls.attributes if a.is_static}
    restricted = [(k, refs & own) for k, refs in uses]
    keys = tuple(k for k, _ in restricted)
    disjoint, sharing = [], []
    for (ki, ri), (kj, rj) in combinations(restricted, 2):
        pair = tuple(sorted((ki, kj)))
        (sharing if ri & rj else disjoint).append(pair)
    ev = PairEvidence(keys, frozenset(disjoint), frozenset(sharing))
    return _lcom_value(ev), ev


def nlcom_from_evidence(ev: PairEvidence) -> float:
    n = len(ev.methods)
    if n < 2:
        return 0.0
    return ev.p / comb(n, 2)


def nlcom(cls: ClassModel, policy: MethodPolicy = DEFAULT_POLICY) -> float:
    """Fraction of method pairs sharing no attribute, in [0, 1]."""
    return nlcom_from_evidence(lcom_ck(cls, policy)[1])


def connectivity_from_evidence(ev: PairEvidence) -> float:
    n = len(ev.methods)
    if n <= 2:
        return 0.0
    value = 2.0 * (ev.q - (n - 1)) / ((n - 1) * (n - 2))
    return min(max(value, 0.0), 1.0)


def connectivity(cls: ClassModel, policy: MethodPolicy = DEFAULT_POLICY) -> float:
    """Hitz-Montazeri connectivity of the attribute-sharing graph.

    ``2 (e - (n - 1)) / ((n - 1)(n - 2))`` with e the number of sharing
    pairs, clamped to [0, 1]; 0 for two methods or fewer.
    """
    return connectivity_from_evidence(lcom_ck(cls, policy)[1])


def chain_lcom(n: int) -> int:
    """LCOM of n methods linked in a chain by n - 1 shared variables."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return max(comb(n, 2) - 2 * (n - 1), 0)


def size_metrics(cls: ClassModel) -> Tuple[int, int]:
    """(WMC, NPM) with unit weight per declared method, constructors included."""
    wmc = len(cls.methods)
    npm = sum(1 for m in cls.methods if m.is_public)
    return wmc, npm


def inheritance_metrics(cls: ClassModel, corpus: CorpusModel) -> Tuple[int, int]:
    """(DIT, NOC).  A hierarchy root has DIT 1."""
    name = corpus.get(cls.name).name
    return 1 + len(corpus.ancestors(name)), len(corpus.children[name])


def _type_targets(corpus: CorpusModel, tokens: Iterable[str], context: str, external: bool) -> Set[str]:
    out = set()
    for tok in tokens:
        if not tok or tok in (THIS, SUPER, UNKNOWN):
            continue
        hit = corpus.resolve_type(tok, context)
        if hit is not None:
            out.add(hit)
        elif external:
            raw = strip_type(tok)
            if raw and raw not in PRIMITIVES:
                out.add(raw)
    return out


def efferent_classes(cls: ClassModel, corpus: CorpusModel, external: bool = False) -> FrozenSet[str]:
    """Other classes this class uses.

    Sources: resolved call targets, call receiver types, attribute types,
    parameter types and the superclass.  Unresolvable names are only
    included when ``external`` is set.
    """
    name = cls.name
    tokens: List[str] = [a.type_name for a in cls.attributes if a.type_name]
    if cls.superclass_name:
        tokens.append(cls.superclass_name)
    out: Set[str] = set()
    for m in cls.methods:
        tokens.extend(m.param_types)
        tokens.extend(c.receiver for c in m.invoked)
        for owner, _ in corpus.resolved_calls.get((name, m.signature_key), ()):
            out.add(owner)
    out |= _type_targets(corpus, tokens, name, external)
    out.discard(name)
    return frozenset(out)


def _efferent_map(corpus: CorpusModel, external: bool) -> Dict[str, FrozenSet[str]]:
    key = ("efferent", external)
    emap = corpus._cache.get(key)
    if emap is None:
        emap = {n: efferent_classes(c, corpus, external) for n, c in corpus.classes.items()}
        corpus._cache[key] = emap
    return emap


def _afferent_map(corpus: CorpusModel, external: bool) -> Dict[str, int]:
    key = ("afferent", external)
    amap = corpus._cache.get(key)
    if amap is None:
        amap = {n: 0 for n in corpus.classes}
        for src, targets in _efferent_map(corpus, external).items():
            for t in targets:
                if t in amap:
                    amap[t] += 1
        corpus._cache[key] = amap
    return amap


def response_set(cls: ClassModel, corpus: CorpusModel, transitive: bool = False) -> Set[Tuple[str, str]]:
    """Own methods plus the methods they invoke.

    Resolved calls are identified by (class, signature key).  Calls that do
    not resolve in the corpus are kept as (receiver hint, signature key), so
    library calls still count once each.  With ``transitive`` the calls of
    reached corpus methods are followed as well.
    """
    own = [(cls.name, m.signature_key) for m in cls.methods]
    result = set(own)
    frontier = list(own)
    expanded = set()
    while frontier:
        owner, key = frontier.pop()
        if (owner, key) in expanded:
            continue
        expanded.add((owner, key))
        method = corpus.classes[owner].method(key)
        for call in method.invoked:
            target = corpus.resolve_call(owner, call)
            if target is None:
                result.add(("?" + call.receiver, f"{call.name}/{call.arity}"))
                continue
            result.add(target)
            if transitive:
                frontier.append(target)
    return result


def coupling_metrics(
    cls: ClassModel, corpus: CorpusModel, policy: MethodPolicy = DEFAULT_POLICY
) -> Tuple[int, int, int]:
    """(CBO, RFC, CA) for one class of the corpus."""
    name = corpus.get(cls.name).name
    cbo = len(_efferent_map(corpus, policy.cbo_external)[name])
    rfc = len(response_set(corpus.classes[name], corpus, policy.rfc_transitive))
    ca = _afferent_map(corpus, policy.cbo_external)[name]
    return cbo, rfc, ca


def analyze_class(
    cls: ClassModel, corpus: CorpusModel, policy: MethodPolicy = DEFAULT_POLICY
) -> MetricsRecord:
    cls = corpus.get(cls.name)
    lcom, ev = lcom_ck(cls, policy)
    l2, _ = lcom2(cls, corpus, policy)
    wmc, npm = size_metrics(cls)
    dit, noc = inheritance_metrics(cls, corpus)
    cbo, rfc, ca = coupling_metrics(cls, corpus, policy)
    return MetricsRecord(
        class_name=cls.name,
        lcom=lcom,
        lcom2=l2,
        nlcom=nlcom_from_evidence(ev),
        connectivity=connectivity_from_evidence(ev),
        wmc=wmc,
        dit=dit,
        noc=noc,
        cbo=cbo,
        rfc=rfc,
        npm=npm,
        ca=ca,
        evidence=ev,
    )


def analyze_corpus(corpus: CorpusModel, policy: MethodPolicy = DEFAULT_POLICY) -> List[MetricsRecord]:
    """Records for every class, sorted by class name."""
    return [analyze_class(c, corpus, policy) for c in corpus.classes.values()]
