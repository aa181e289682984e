"""Canonical JSON and HTML forms of documents."""

from __future__ import annotations

import json

from ..doc.nodes import Node, Text
from ..errors import ParseError

HTML_TAGS = {"para": "p", "section": "section", "bold": "strong", "figure": "figure", "list": "ul", "item": "li"}


def node_to_json(n) -> dict:
    if isinstance(n, Text):
        return {"text": n.value}
    return {
        "name": n.name,
        "attrs": [[k, v] for k, v in n.attrs],
        "children": [node_to_json(c) for c in n.children],
    }


def node_from_json(obj, path="") -> Text | Node:
    if not isinstance(obj, dict):
        raise ParseError("expected a node object", path or "/")
    if set(obj) == {"text"} and isinstance(obj["text"], str):
        return Text(obj["text"])
    if set(obj) != {"name", "attrs", "children"}:
        raise ParseError("a node is {text} or {name, attrs, children}", path or "/")
    attrs = obj["attrs"]
    if not isinstance(obj["name"], str) or not isinstance(attrs, list) or not all(
        isinstance(a, list) and len(a) == 2 and all(isinstance(s, str) for s in a) for a in attrs
    ):
        raise ParseError("malformed name or attrs", path or "/")
    children = obj["children"]
    if not isinstance(children, list):
        raise ParseError("children must be a list", f"{path}/children")
    return Node(
        obj["name"],
        tuple((k, v) for k, v in attrs),
        tuple(node_from_json(c, f"{path}/children/{i}") for i, c in enumerate(children)),
    )


def doc_to_json(doc) -> list:
    return [node_to_json(n) for n in doc]


def doc_from_json(obj) -> list:
    if not isinstance(obj, list):
        raise ParseError("a document is a list of nodes", "/")
    return [node_from_json(n, f"/{i}") for i, n in enumerate(obj)]


def canonical_json(doc) -> str:
    """Deterministic compact form used for byte comparisons."""
    return json.dumps(doc_to_json(doc), ensure_ascii=False, separators=(",", ":"))


def escape_html(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def node_to_html(n) -> str:
    if isinstance(n, Text):
        return escape_html(n.value)
    if n.name == "ref":
        # refs should be resolved first; an unresolved one becomes a bare link
        return f'<a href="#{escape_html(n.attr("target") or "")}"></a>'
    tag = HTML_TAGS.get(n.name, n.name)
    attrs = "".join(f' {k}="{escape_html(v)}"' for k, v in n.attrs)
    inner = "".join(node_to_html(c) for c in n.children)
    return f"<{tag}{attrs}>{inner}</{tag}>"


def doc_to_html(doc) -> str:
    return "".join(node_to_html(n) for n in doc)
