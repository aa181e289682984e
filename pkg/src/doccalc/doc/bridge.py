"""Conversion between native trees and their fold/inject encodings."""

from __future__ import annotations

from ..errors import EncodingMismatch
from ..kernel.stdlib import (
    ATTR, FNODE, NODE_FRAG, NODE_TY, build_list, list_items, pair, variant,
)
from ..kernel.terms import Fold, Inject, RecordLit, StrLit
from .nodes import Base, Children, FragNode, Node, Text


def unwrap(v, labels) -> tuple[str, object]:
    """Split ``fold (inj payload at label)`` into (label, payload)."""
    if not isinstance(v, Fold) or not isinstance(v.expr, Inject):
        raise EncodingMismatch(f"expected a folded injection, got {type(v).__name__}")
    if v.expr.label not in labels:
        raise EncodingMismatch(f"unexpected constructor {v.expr.label!r}")
    return v.expr.label, v.expr.expr


def string(v) -> str:
    if not isinstance(v, StrLit):
        raise EncodingMismatch(f"expected a string, got {type(v).__name__}")
    return v.value


def field(record, label: str):
    if not isinstance(record, RecordLit) or record.get(label) is None:
        raise EncodingMismatch(f"expected a record with field {label!r}")
    return record.get(label)


def attrs_value(attrs):
    return build_list(ATTR, [pair(StrLit(k), StrLit(v)) for k, v in attrs])


def attrs_from_value(v) -> tuple[tuple[str, str], ...]:
    return tuple((string(field(p, "fst")), string(field(p, "snd"))) for p in list_items(v))


def struct_value(name, attrs, children):
    return RecordLit((("name", StrLit(name)), ("attrs", attrs_value(attrs)), ("children", children)))


# -- NodeTy ----------------------------------------------------------------

def node_value(n):
    if isinstance(n, Text):
        return variant(NODE_TY, "text", StrLit(n.value))
    if isinstance(n, Node):
        return variant(NODE_TY, "node", struct_value(n.name, n.attrs, nodes_value(n.children)))
    raise EncodingMismatch(f"not a document node: {n!r}")


def nodes_value(nodes):
    """A native node list as a value of type NodeTy list."""
    return build_list(NODE_TY, [node_value(n) for n in nodes])


def node_from_value(v):
    label, payload = unwrap(v, ("text", "node"))
    if label == "text":
        return Text(string(payload))
    return Node(
        string(field(payload, "name")),
        attrs_from_value(field(payload, "attrs")),
        tuple(nodes_from_value(field(payload, "children"))),
    )


def nodes_from_value(v) -> list:
    return [node_from_value(item) for item in list_items(v)]


# -- fragments -------------------------------------------------------------

def frag_value(f):
    if isinstance(f, Base):
        n = f.node
        if isinstance(n, Text):
            inner = variant(FNODE, "text", StrLit(n.value))
        else:
            inner = variant(FNODE, "node", struct_value(n.name, n.attrs, frag_value(n.children)))
        return variant(NODE_FRAG, "base", inner)
    if isinstance(f, Children):
        return variant(NODE_FRAG, "children", build_list(NODE_FRAG, [frag_value(x) for x in f.items]))
    raise EncodingMismatch(f"not a fragment: {f!r}")


def frag_from_value(v):
    label, payload = unwrap(v, ("base", "children"))
    if label == "children":
        return Children(tuple(frag_from_value(x) for x in list_items(payload)))
    inner_label, inner = unwrap(payload, ("text", "node"))
    if inner_label == "text":
        return Base(Text(string(inner)))
    return Base(FragNode(
        string(field(inner, "name")),
        attrs_from_value(field(inner, "attrs")),
        frag_from_value(field(inner, "children")),
    ))
