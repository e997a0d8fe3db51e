"""Reading and writing the JSON class-model document.

Layout::

    {"classes": [
        {"name": "pkg.A", "superclass": "pkg.Base",
         "attributes": [{"name": "x", "static": false, "public": false, "type": "int"}],
         "methods": [{"name": "m", "arity": 1, "public": true, "static": false,
                      "constructor": false, "params": ["int"], "refs": ["x"],
                      "calls": [{"recv": "this", "name": "n", "arity": 0}]}]}
    ]}

``superclass``, ``type`` and ``params`` are optional extensions carrying the
type tokens the coupling metrics use; everything boolean or list-valued
defaults to false or empty.  Unknown keys are rejected.
"""

from __future__ import annotations

import json
from typing import Any, List

from ..errors import SchemaError
from ..model import AttributeModel, ClassModel, Invocation, MethodModel

_CLASS_KEYS = {"name": True, "superclass": False, "attributes": False, "methods": False}
_ATTR_KEYS = {"name": True, "static": False, "public": False, "type": False}
_METHOD_KEYS = {
    "name": True,
    "arity": True,
    "public": False,
    "static": False,
    "constructor": False,
    "params": False,
    "refs": False,
    "calls": False,
}
_CALL_KEYS = {"recv": True, "name": True, "arity": True}


def _check_keys(obj: Any, keys: dict, where: str):
    if not isinstance(obj, dict):
        raise SchemaError(where, "expected an object")
    for k in obj:
        if k not in keys:
            raise SchemaError(f"{where}/{k}", "unknown key")
    for k, required in keys.items():
        if required and k not in obj:
            raise SchemaError(f"{where}/{k}", "missing required key")


def _str(obj: dict, key: str, where: str, optional: bool = False):
    v = obj.get(key)
    if v is None and optional:
        return None
    if not isinstance(v, str) or not v:
        raise SchemaError(f"{where}/{key}", "expected a non-empty string")
    return v


def _bool(obj: dict, key: str, where: str) -> bool:
    v = obj.get(key, False)
    if not isinstance(v, bool):
        raise SchemaError(f"{where}/{key}", "expected a boolean")
    return v


def _int(obj: dict, key: str, where: str) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise SchemaError(f"{where}/{key}", "expected a non-negative integer")
    return v


def _list(obj: dict, key: str, where: str) -> list:
    v = obj.get(key, [])
    if not isinstance(v, list):
        raise SchemaError(f"{where}/{key}", "expected a list")
    return v


def _strings(obj: dict, key: str, where: str) -> List[str]:
    out = []
    for i, v in enumerate(_list(obj, key, where)):
        if not isinstance(v, str) or not v:
            raise SchemaError(f"{where}/{key}/{i}", "expected a non-empty string")
        out.append(v)
    return out


def _method(obj: Any, where: str) -> MethodModel:
    _check_keys(obj, _METHOD_KEYS, where)
    calls = []
    for i, c in enumerate(_list(obj, "calls", where)):
        cw = f"{where}/calls/{i}"
        _check_keys(c, _CALL_KEYS, cw)
        calls.append(Invocation(_str(c, "recv", cw), _str(c, "name", cw), _int(c, "arity", cw)))
    arity = _int(obj, "arity", where)
    params = _strings(obj, "params", where)
    if params and len(params) != arity:
        raise SchemaError(f"{where}/params", f"{len(params)} parameter types for arity {arity}")
    refs = _strings(obj, "refs", where)
    if len(set(refs)) != len(refs):
        raise SchemaError(f"{where}/refs", "duplicate attribute reference")
    return MethodModel(
        name=_str(obj, "name", where),
        arity=arity,
        is_public=_bool(obj, "public", where),
        is_static=_bool(obj, "static", where),
        is_constructor=_bool(obj, "constructor", where),
        referenced_attributes=frozenset(refs),
        invoked=tuple(calls),
        param_types=tuple(params),
    )


def _class(obj: Any, where: str) -> ClassModel:
    _check_keys(obj, _CLASS_KEYS, where)
    name = _str(obj, "name", where)
    superclass = _str(obj, "superclass", where, optional=True)
    if superclass == name:
        raise SchemaError(f"{where}/superclass", "class cannot extend itself")

    attributes = []
    seen = set()
    for i, a in enumerate(_list(obj, "attributes", where)):
        aw = f"{where}/attributes/{i}"
        _check_keys(a, _ATTR_KEYS, aw)
        attr = AttributeModel(
            _str(a, "name", aw), _bool(a, "static", aw), _bool(a, "public", aw), _str(a, "type", aw, optional=True)
        )
        if attr.name in seen:
            raise SchemaError(f"{aw}/name", f"duplicate attribute {attr.name!r}")
        seen.add(attr.name)
        attributes.append(attr)

    methods = []
    seen = set()
    for i, m in enumerate(_list(obj, "methods", where)):
        method = _method(m, f"{where}/methods/{i}")
        if method.signature_key in seen:
            raise SchemaError(f"{where}/methods/{i}", f"duplicate method {method.signature_key!r}")
        seen.add(method.signature_key)
        methods.append(method)
    return ClassModel(name, superclass, tuple(attributes), tuple(methods))


def load_model_file(document: str) -> List[ClassModel]:
    """Parse a class-model document.

    Raises:
        SchemaError: malformed JSON or any schema violation, with the
            location inside the document.
    """
    try:
        data = json.loads(document)
    except json.JSONDecodeError as e:
        raise SchemaError("", f"invalid JSON: {e}") from None
    _check_keys(data, {"classes": True}, "")
    classes = []
    names = set()
    for i, c in enumerate(_list(data, "classes", "")):
        cls = _class(c, f"classes/{i}")
        if cls.name in names:
            raise SchemaError(f"classes/{i}/name", f"duplicate class {cls.name!r}")
        names.add(cls.name)
        classes.append(cls)
    return classes


def _class_doc(c: ClassModel) -> dict:
    return {
        "name": c.name,
        "superclass": c.superclass_name,
        "attributes": [
            {"name": a.name, "static": a.is_static, "public": a.is_public, "type": a.type_name}
            for a in c.attributes
        ],
        "methods": [
            {
                "name": m.name,
                "arity": m.arity,
                "public": m.is_public,
                "static": m.is_static,
                "constructor": m.is_constructor,
                "params": list(m.param_types),
                "refs": sorted(m.referenced_attributes),
                "calls": [{"recv": k.receiver, "name": k.name, "arity": k.arity} for k in m.invoked],
            }
            for m in c.methods
        ],
    }


def dump_model_file(classes: List[ClassModel]) -> str:
    """Canonical document text: classes by name, members in declaration order."""
    doc = {"classes": [_class_doc(c) for c in sorted(classes, key=lambda c: c.name)]}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
