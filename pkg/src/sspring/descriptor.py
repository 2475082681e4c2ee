"""Strict parsing of JSON ring descriptor documents.

Example::

    {"kind": "pattern", "n": 3, "base": {"kind": "zmod", "n": 2},
     "mask": [[1, 0, 1], [0, 1, 0], [0, 0, 1]]}

Unknown fields are rejected; errors name the failing field path.
"""

from __future__ import annotations

import json

from .errors import DescriptorError
from .ring import RingDescriptor, check_descriptor

FIELDS = {
    "zmod": {"n"},
    "matrix": {"n", "base"},
    "pattern": {"n", "base", "mask"},
    "product": {"factors"},
    "corner": {"base", "element"},
    "opposite": {"base"},
    "table": {"size", "add", "mul", "zero", "one"},
}


class DescriptorSyntaxError(DescriptorError):
    def __init__(self, message: str, line: int, column: int):
        self.line, self.column = line, column
        super().__init__(f"syntax error at line {line}, column {column}: {message}")


def _int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DescriptorError(f"expected an integer, got {value!r}", path)
    return value


def _int_matrix(value, path: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(value, list):
        raise DescriptorError("expected a list of rows", path)
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list):
            raise DescriptorError("expected a list", f"{path}[{i}]")
        rows.append(tuple(_int(v, f"{path}[{i}][{j}]") for j, v in enumerate(row)))
    return tuple(rows)


def from_obj(obj, path: str = "") -> RingDescriptor:
    """Convert a decoded JSON value into a RingDescriptor (no semantic checks)."""
    def sub(name):
        return f"{path}.{name}" if path else name

    if not isinstance(obj, dict):
        raise DescriptorError("descriptor must be an object", path or "<root>")
    kind = obj.get("kind")
    if kind not in FIELDS:
        raise DescriptorError(f"unknown or missing kind {kind!r}", sub("kind"))
    allowed = FIELDS[kind] | {"kind"}
    for key in obj:
        if key not in allowed:
            raise DescriptorError(f"unknown field for kind {kind!r}", sub(key))
    for key in FIELDS[kind]:
        if key not in obj:
            raise DescriptorError("missing field", sub(key))

    if kind == "zmod":
        return RingDescriptor(kind, n=_int(obj["n"], sub("n")))
    if kind in ("matrix", "pattern"):
        n = _int(obj["n"], sub("n"))
        base = from_obj(obj["base"], sub("base"))
        mask = _int_matrix(obj["mask"], sub("mask")) if kind == "pattern" else None
        return RingDescriptor(kind, n=n, base=base, mask=mask)
    if kind == "product":
        factors = obj["factors"]
        if not isinstance(factors, list):
            raise DescriptorError("expected a list", sub("factors"))
        return RingDescriptor(kind, factors=tuple(
            from_obj(f, f"{sub('factors')}[{i}]") for i, f in enumerate(factors)))
    if kind == "corner":
        return RingDescriptor(kind, base=from_obj(obj["base"], sub("base")),
                              element=_int(obj["element"], sub("element")))
    if kind == "opposite":
        return RingDescriptor(kind, base=from_obj(obj["base"], sub("base")))
    return RingDescriptor(kind, size=_int(obj["size"], sub("size")),
                          add=_int_matrix(obj["add"], sub("add")), mul=_int_matrix(obj["mul"], sub("mul")),
                          zero=_int(obj["zero"], sub("zero")), one=_int(obj["one"], sub("one")))


def parse_descriptor(text: str) -> RingDescriptor:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    desc = from_obj(obj)
    check_descriptor(desc)
    return desc


def dump_descriptor(desc: RingDescriptor) -> str:
    return json.dumps(desc.to_dict())
