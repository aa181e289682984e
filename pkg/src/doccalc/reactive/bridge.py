"""Decoding kernel ReactNode values into runtime trees."""

from __future__ import annotations

from ..doc.bridge import attrs_from_value, field, string, unwrap
from ..doc.nodes import Node, Text
from ..errors import EncodingMismatch
from ..kernel.stdlib import list_items
from ..kernel.terms import Pack
from .runtime import Elem


def react_from_value(v):
    label, payload = unwrap(v, ("text", "node", "inst"))
    if label == "text":
        return Text(string(payload))
    if label == "node":
        return Node(
            string(field(payload, "name")),
            attrs_from_value(field(payload, "attrs")),
            tuple(react_nodes_from_value(field(payload, "children"))),
        )
    if not isinstance(payload, Pack):
        raise EncodingMismatch("instance payload is not a package")
    return Elem(string(field(payload.expr, "component")), field(payload.expr, "props"), payload.witness)


def react_nodes_from_value(v) -> list:
    return [react_from_value(item) for item in list_items(v)]
