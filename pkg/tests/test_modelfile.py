import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcomkit import (
    AttributeModel,
    ClassModel,
    Invocation,
    MethodModel,
    SchemaError,
    dump_model_file,
    load_model_file,
)
from lcomkit.frontend import ERROR, load_inputs


def doc(**cls):
    base = {"name": "A"}
    base.update(cls)
    return json.dumps({"classes": [base]})


def test_minimal_document():
    (c,) = load_model_file(doc(attributes=[{"name": "x"}], methods=[{"name": "m", "arity": 0, "refs": ["x"]}]))
    assert c == ClassModel("A", attributes=[AttributeModel("x")], methods=[MethodModel("m", referenced_attributes={"x"})])


def test_empty_corpus_document():
    assert load_model_file('{"classes": []}') == []
    assert dump_model_file([]) == '{\n  "classes": []\n}\n'


def test_full_method_entry():
    (c,) = load_model_file(
        doc(
            superclass="B",
            methods=[
                {
                    "name": "m",
                    "arity": 1,
                    "public": True,
                    "static": True,
                    "constructor": False,
                    "params": ["int"],
                    "refs": [],
                    "calls": [{"recv": "this", "name": "n", "arity": 0}],
                }
            ],
        )
    )
    m = c.methods[0]
    assert c.superclass_name == "B"
    assert (m.is_public, m.is_static, m.param_types) == (True, True, ("int",))
    assert m.invoked == (Invocation("this", "n", 0),)


@pytest.mark.parametrize(
    "text, where",
    [
        (doc(methods=[{"name": "m", "arity": 0}, {"name": "m", "arity": 0}]), "classes/0/methods/1"),
        (doc(colour="red"), "classes/0/colour"),
        (doc(methods=[{"name": "m"}]), "classes/0/methods/0/arity"),
        (doc(methods=[{"name": "m", "arity": -1}]), "classes/0/methods/0/arity"),
        (doc(methods=[{"name": "m", "arity": True}]), "classes/0/methods/0/arity"),
        (doc(methods=[{"name": "m", "arity": 0, "refs": ["x", "x"]}]), "classes/0/methods/0/refs"),
        (doc(methods=[{"name": "m", "arity": 2, "params": ["int"]}]), "classes/0/methods/0/params"),
        (doc(methods=[{"name": "m", "arity": 0, "calls": [{"recv": "this", "name": "n"}]}]), "classes/0/methods/0/calls/0/arity"),
        (doc(attributes=[{"name": "x"}, {"name": "x"}]), "classes/0/attributes/1/name"),
        (doc(attributes=[{"name": "x", "static": "no"}]), "classes/0/attributes/0/static"),
        (doc(superclass="A"), "classes/0/superclass"),
        (json.dumps({"classes": [{"name": "A"}, {"name": "A"}]}), "classes/1/name"),
        (json.dumps({"classes": [{}]}), "classes/0/name"),
        (json.dumps({"classes": "no"}), "/classes"),
        (json.dumps({}), "/classes"),
        ("{not json", ""),
    ],
)
def test_schema_errors_name_the_location(text, where):
    with pytest.raises(SchemaError) as exc:
        load_model_file(text)
    assert exc.value.where == where


def test_schema_error_becomes_a_diagnostic(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(doc(colour="red"))
    good = tmp_path / "good.json"
    good.write_text(doc())
    classes, diags = load_inputs([tmp_path], model_file=True)
    assert [c.name for c in classes] == ["A"]
    assert [d.severity for d in diags] == [ERROR]
    assert "colour" in diags[0].message


names = st.sampled_from(["a", "b", "count", "items", "x_1", "run", "get", "setName"])
types = st.none() | st.sampled_from(["int", "String", "List<String>", "p.Q"])


@st.composite
def methods(draw):
    arity = draw(st.integers(0, 3))
    params = draw(st.one_of(st.just(()), st.lists(st.sampled_from(["int", "T", "String[]"]), min_size=arity, max_size=arity).map(tuple)))
    calls = draw(st.lists(st.builds(Invocation, st.sampled_from(["this", "super", "unknown", "p.Q"]), names, st.integers(0, 3)), max_size=3))
    return MethodModel(
        draw(names),
        arity,
        draw(st.booleans()),
        draw(st.booleans()),
        draw(st.booleans()),
        frozenset(draw(st.sets(names, max_size=4))),
        tuple(calls),
        params,
    )


@st.composite
def class_lists(draw):
    out = []
    for name in draw(st.sets(st.sampled_from(["p.A", "p.B", "q.A", "q.Zed", "r.Cat", "Top"]), max_size=5)):
        attrs = [AttributeModel(n, draw(st.booleans()), draw(st.booleans()), draw(types)) for n in draw(st.sets(names, max_size=4))]
        ms = {}
        for m in draw(st.lists(methods(), max_size=5)):
            ms.setdefault(m.signature_key, m)
        sup = draw(st.none() | st.sampled_from(["Object", "x.Base"]))
        out.append(ClassModel(name, sup, tuple(attrs), tuple(ms.values())))
    return out


@given(class_lists())
def test_round_trip(classes):
    text = dump_model_file(classes)
    loaded = load_model_file(text)
    assert loaded == sorted(classes, key=lambda c: c.name)
    assert dump_model_file(loaded) == text


@given(class_lists())
def test_dump_is_independent_of_input_order(classes):
    assert dump_model_file(classes) == dump_model_file(list(reversed(classes)))
