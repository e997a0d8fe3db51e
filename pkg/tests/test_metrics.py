import doctest
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import lcomkit.metrics
from lcomkit import (
    AttributeModel,
    ClassModel,
    Invocation,
    MethodModel,
    MethodPolicy,
    UnknownClass,
    analyze_class,
    build_corpus,
    chain_lcom,
    connectivity,
    coupling_metrics,
    inheritance_metrics,
    lcom2,
    lcom_ck,
    nlcom,
    size_metrics,
)
from lcomkit.synthetic import chain_class
from oracles import chain_sets, naive_edges, naive_lcom, naive_lcom2, naive_pairs


def make_class(sets, name="C", attributes=None, **kw):
    methods = [MethodModel(f"m{i + 1}", referenced_attributes=s) for i, s in enumerate(sets)]
    if attributes is None:
        attributes = sorted(set().union(*sets)) if sets else []
    return ClassModel(name, attributes=[AttributeModel(a) for a in attributes], methods=methods, **kw)


THREE_METHOD = make_class([{"a", "b", "c", "d", "e"}, {"a", "b", "e"}, {"x", "y", "z"}])
# f touches nothing that g or h touch; g and h share E.
CLASS_X = ClassModel(
    "x",
    attributes=[AttributeModel(n) for n in "ABCDE"],
    methods=[
        MethodModel("f", referenced_attributes={"A", "B"}),
        MethodModel("g", referenced_attributes={"C", "E"}),
        MethodModel("h", referenced_attributes={"D", "E"}),
    ],
)


def test_doctests():
    assert doctest.testmod(lcomkit.metrics).failed == 0


def test_three_method_example():
    value, ev = lcom_ck(THREE_METHOD)
    assert value == 1
    assert (ev.p, ev.q) == (2, 1)
    assert ev.sharing_pairs == {("m1/0", "m2/0")}


def test_class_x_example():
    value, ev = lcom_ck(CLASS_X)
    assert value == 1
    assert ev.disjoint_pairs == {("f/0", "g/0"), ("f/0", "h/0")}
    assert ev.sharing_pairs == {("g/0", "h/0")}


def test_all_empty_sets_give_zero():
    value, ev = lcom_ck(make_class([set(), set(), set(), set()]))
    assert value == 0
    assert ev.all_empty and ev.p == 0 and ev.q == 0


@pytest.mark.parametrize("sets", [[], [{"a"}]])
def test_fewer_than_two_methods(sets):
    assert lcom_ck(make_class(sets))[0] == 0


def test_constructor_excluded_by_default():
    c = ClassModel(
        "C",
        attributes=[AttributeModel("a"), AttributeModel("b")],
        methods=[
            MethodModel("C", is_constructor=True, referenced_attributes={"a", "b"}),
            MethodModel("f", referenced_attributes={"a"}),
            MethodModel("g", referenced_attributes={"b"}),
        ],
    )
    assert lcom_ck(c)[0] == 1
    # with the constructor both pairs through it share: P=1, Q=2
    assert lcom_ck(c, MethodPolicy(include_constructors=True))[0] == 0


def test_strict_instance_drops_static_attributes():
    c = ClassModel(
        "C",
        attributes=[AttributeModel("k", is_static=True), AttributeModel("a"), AttributeModel("b")],
        methods=[
            MethodModel("f", referenced_attributes={"k", "a"}),
            MethodModel("g", referenced_attributes={"k", "b"}),
            MethodModel("h", referenced_attributes={"k"}),
        ],
    )
    assert lcom_ck(c)[0] == 0
    value, ev = lcom_ck(c, MethodPolicy(strict_instance=True))
    assert (ev.p, ev.q, value) == (3, 0, 3)


# lcom2 -----------------------------------------------------------------


def test_lcom2_equals_lcom_without_inherited_members():
    corpus = build_corpus([THREE_METHOD])
    assert lcom2(THREE_METHOD, corpus) == lcom_ck(THREE_METHOD)


def test_lcom2_inherited_only_sharing_goes_to_p():
    base = ClassModel("Base", attributes=[AttributeModel("shared")])
    sub = ClassModel(
        "Sub",
        "Base",
        attributes=[AttributeModel("own1"), AttributeModel("own2")],
        methods=[
            MethodModel("f", referenced_attributes={"shared", "own1"}),
            MethodModel("g", referenced_attributes={"shared", "own2"}),
        ],
    )
    corpus = build_corpus([base, sub])
    _, ev_ck = lcom_ck(sub)
    value2, ev2 = lcom2(sub, corpus)
    assert ev_ck.sharing_pairs == {("f/0", "g/0")}
    assert ev2.disjoint_pairs == {("f/0", "g/0")}
    assert (lcom_ck(sub)[0], value2) == (0, 1)


def test_lcom2_all_references_empty():
    c = make_class([set(), set(), set()])
    assert lcom2(c, build_corpus([c]))[0] == 0


def test_lcom2_only_inherited_references_are_all_disjoint():
    # AR(m) non-empty, so P is the full pair set after restriction
    c = ClassModel("C", methods=[MethodModel("f", referenced_attributes={"z"}), MethodModel("g", referenced_attributes={"z"})])
    value, ev = lcom2(c, build_corpus([c]))
    assert (ev.p, ev.q, value) == (1, 0, 1)


def test_lcom2_unknown_class():
    with pytest.raises(UnknownClass):
        lcom2(THREE_METHOD, build_corpus([]))


# normalized LCOM and connectivity ---------------------------------------


def test_nlcom_all_share():
    assert nlcom(make_class([{"a"}, {"a", "b"}, {"a"}])) == 0.0


def test_nlcom_none_share():
    assert nlcom(make_class([{"a"}, {"b"}, {"c"}])) == 1.0


def test_nlcom_three_method_example():
    # oracle: naive_pairs gives P=2 over C(3,2)=3 pairs
    p, q = naive_pairs([{"a", "b", "c", "d", "e"}, {"a", "b", "e"}, {"x", "y", "z"}])
    assert (p, q) == (2, 1)
    assert nlcom(THREE_METHOD) == pytest.approx(2 / 3, abs=1e-12)


def test_nlcom_small_classes():
    assert nlcom(make_class([{"a"}])) == 0.0
    assert nlcom(make_class([])) == 0.0


def test_connectivity_complete_triangle():
    assert naive_edges([{"a"}, {"a"}, {"a"}]) == 3
    assert connectivity(make_class([{"a"}, {"a"}, {"a"}])) == pytest.approx(1.0)


def test_connectivity_chain_of_three():
    assert naive_edges(chain_sets(3)) == 2
    assert connectivity(chain_class(3)) == pytest.approx(0.0)


def test_connectivity_two_methods():
    assert connectivity(make_class([{"a"}, {"a"}])) == 0.0


def test_connectivity_clamped_for_sparse_graph():
    assert connectivity(make_class([{"a"}, {"b"}, {"c"}, {"d"}])) == 0.0


# chain closed form ------------------------------------------------------


@pytest.mark.parametrize("n,expected", [(1, 0), (2, 0), (3, 0), (4, 0), (5, 2), (6, 5), (7, 9)])
def test_chain_lcom_values(n, expected):
    assert naive_lcom(chain_sets(n)) == expected
    assert chain_lcom(n) == expected


def test_chain_lcom_rejects_zero():
    with pytest.raises(ValueError):
        chain_lcom(0)


@pytest.mark.parametrize("n", range(1, 51))
def test_chain_theorem(n):
    value = lcom_ck(chain_class(n))[0]
    assert value == chain_lcom(n) == max(comb(n, 2) - 2 * (n - 1), 0)
    if n >= 5:
        assert value > 1
    else:
        assert value == 0


# randomized agreement with the oracle -----------------------------------

POOL = list("abcdefgh")


@st.composite
def random_classes(draw):
    n = draw(st.integers(0, 12))
    sets = [draw(st.sets(st.sampled_from(POOL))) for _ in range(n)]
    own = draw(st.sets(st.sampled_from(POOL)))
    return sets, own


@settings(max_examples=300)
@given(random_classes())
def test_lcom_matches_oracle(case):
    sets, own = case
    c = make_class(sets, attributes=sorted(own))
    value, ev = lcom_ck(c)
    assert value == naive_lcom(sets)
    assert (ev.p, ev.q) == naive_pairs(sets)
    if not ev.all_empty:
        assert ev.p + ev.q == comb(len(sets), 2)
    assert value == max(ev.p - ev.q, 0)
    assert lcom2(c, build_corpus([c]))[0] == naive_lcom2(sets, own)
    assert 0.0 <= nlcom(c) <= 1.0
    assert 0.0 <= connectivity(c) <= 1.0


@given(random_classes(), st.data())
def test_sharing_an_attribute_never_increases_lcom(case, data):
    sets, _ = case
    if len(sets) < 2 or not any(sets):
        return
    pairs = [(i, j) for i in range(len(sets)) for j in range(i + 1, len(sets)) if not sets[i] & sets[j]]
    if not pairs:
        return
    i, j = data.draw(st.sampled_from(pairs))
    before = lcom_ck(make_class(sets))[0]
    bumped = [set(s) for s in sets]
    bumped[i].add("fresh")
    bumped[j].add("fresh")
    assert lcom_ck(make_class(bumped))[0] <= before


def test_sharing_can_raise_lcom_from_the_all_empty_case():
    # All-empty sets force P to be empty; the first shared attribute lifts that.
    assert lcom_ck(make_class([set(), set(), set()]))[0] == 0
    assert lcom_ck(make_class([{"s"}, {"s"}, set()]))[0] == 1


@given(random_classes())
def test_lcom2_at_least_flattened_lcom_when_sharing_is_inherited(case):
    sets, own = case
    inherited = set(POOL) - own
    # keep only methods whose shared attributes come from the superclass
    c = make_class(sets, attributes=sorted(own))
    flat = make_class(sets, attributes=sorted(own | inherited))
    assert lcom2(c, build_corpus([c]))[0] >= lcom_ck(flat)[0]


# size, inheritance, coupling -------------------------------------------


def test_size_metrics():
    c = ClassModel("C", methods=[MethodModel("a", is_public=True), MethodModel("b", is_public=True), MethodModel("c")])
    assert size_metrics(c) == (3, 2)
    assert size_metrics(ClassModel("E")) == (0, 0)
    ctor_only = ClassModel("K", methods=[MethodModel("K", is_public=True, is_constructor=True)])
    assert size_metrics(ctor_only) == (1, 1)


def test_inheritance_metrics():
    a, b = ClassModel("A", "B"), ClassModel("B")
    corpus = build_corpus([a, b])
    assert inheritance_metrics(b, corpus) == (1, 1)
    assert inheritance_metrics(a, corpus) == (2, 0)


def test_inheritance_unknown_class():
    with pytest.raises(UnknownClass):
        inheritance_metrics(ClassModel("Z"), build_corpus([ClassModel("A")]))


def test_coupling_single_call():
    a = ClassModel("A", methods=[MethodModel("x", invoked=[Invocation("B", "m", 0)]), MethodModel("y")])
    b = ClassModel("B", methods=[MethodModel("m")])
    corpus = build_corpus([a, b])
    assert coupling_metrics(a, corpus) == (1, 3, 0)
    assert coupling_metrics(b, corpus) == (0, 1, 1)


def test_coupling_isolated_class():
    c = ClassModel("C", methods=[MethodModel(f"m{i}") for i in range(4)])
    assert coupling_metrics(c, build_corpus([c])) == (0, 4, 0)


def test_inheritance_counts_as_coupling():
    a, b = ClassModel("A", "B"), ClassModel("B")
    corpus = build_corpus([a, b])
    cbo_a, _, _ = coupling_metrics(a, corpus)
    _, _, ca_b = coupling_metrics(b, corpus)
    assert cbo_a >= 1 and ca_b >= 1


def test_cbo_from_attribute_and_parameter_types():
    a = ClassModel(
        "p.A",
        attributes=[AttributeModel("b", type_name="B")],
        methods=[MethodModel("m", 1, param_types=["C"])],
    )
    corpus = build_corpus([a, ClassModel("p.B"), ClassModel("p.C")])
    assert coupling_metrics(a, corpus)[0] == 2


def test_cbo_external_types_only_on_request():
    a = ClassModel("A", attributes=[AttributeModel("xs", type_name="List<String>"), AttributeModel("n", type_name="int")])
    corpus = build_corpus([a])
    assert coupling_metrics(a, corpus)[0] == 0
    assert coupling_metrics(a, corpus, MethodPolicy(cbo_external=True))[0] == 1


def test_rfc_counts_unresolved_calls_once():
    a = ClassModel(
        "A",
        methods=[
            MethodModel("x", invoked=[Invocation("String", "trim", 0), Invocation("String", "trim", 0)]),
            MethodModel("y", invoked=[Invocation("this", "x", 0)]),
        ],
    )
    assert coupling_metrics(a, build_corpus([a]))[1] == 3


def test_rfc_transitive():
    a = ClassModel("A", methods=[MethodModel("x", invoked=[Invocation("B", "m", 0)])])
    b = ClassModel("B", methods=[MethodModel("m", invoked=[Invocation("C", "n", 0)]), MethodModel("other")])
    c = ClassModel("C", methods=[MethodModel("n")])
    corpus = build_corpus([a, b, c])
    assert coupling_metrics(a, corpus)[1] == 2
    assert coupling_metrics(a, corpus, MethodPolicy(rfc_transitive=True))[1] == 3


# records --------------------------------------------------------------


def test_analyze_three_method_example():
    r = analyze_class(THREE_METHOD, build_corpus([THREE_METHOD]))
    assert r.lcom == 1 and r.evidence.p == 2 and r.evidence.q == 1


def test_analyze_empty_class():
    c = ClassModel("E")
    r = analyze_class(c, build_corpus([c]))
    assert r.dit == 1
    assert all(v == 0 for k, v in r.row().items() if k not in ("class", "dit"))


def test_analyze_deterministic():
    corpus = build_corpus([THREE_METHOD, CLASS_X])
    assert analyze_class(CLASS_X, corpus) == analyze_class(CLASS_X, corpus)


def test_analyze_unknown_class():
    with pytest.raises(UnknownClass):
        analyze_class(CLASS_X, build_corpus([THREE_METHOD]))


@given(random_classes())
def test_rfc_at_least_method_counts(case):
    sets, own = case
    c = make_class(sets, attributes=sorted(own))
    r = analyze_class(c, build_corpus([c]))
    assert r.rfc >= r.wmc >= len(r.evidence.methods)
