"""The article schema, as a validator.

    article = block*
    block   = para(inline*) | section[id?](article) | figure(article) | list(item*)
    item    = item(article)
    inline  = text | bold(inline*) | ref[target]()
"""

from __future__ import annotations

from dataclasses import dataclass

from .nodes import Node, Text

KNOWN_TAGS = frozenset({"para", "section", "figure", "list", "item", "bold", "ref"})
INLINE_TAGS = frozenset({"bold", "ref"})


@dataclass(frozen=True)
class SchemaViolation:
    path: tuple[int, ...]
    message: str
    severity: str = "error"

    def __str__(self):
        where = "/".join(str(i) for i in self.path) or "(root)"
        return f"{self.severity} at {where}: {self.message}"


def validate_article(doc, permissive: bool = False) -> list[SchemaViolation]:
    """All schema violations of ``doc``; an empty list means it is an article.

    With ``permissive``, unknown tags are reported as warnings and their
    children are checked as whatever kind each child looks like."""
    out: list[SchemaViolation] = []
    _Validator(out, permissive).blocks(doc, ())
    return out


def errors_only(violations) -> list[SchemaViolation]:
    return [v for v in violations if v.severity == "error"]


def is_article(doc, permissive: bool = False) -> bool:
    return not errors_only(validate_article(doc, permissive))


class _Validator:
    def __init__(self, out, permissive):
        self.out = out
        self.permissive = permissive

    def report(self, path, message, severity="error"):
        self.out.append(SchemaViolation(tuple(path), message, severity))

    def blocks(self, nodes, path):
        for i, n in enumerate(nodes):
            self.block(n, path + (i,))

    def inlines(self, nodes, path):
        for i, n in enumerate(nodes):
            self.inline(n, path + (i,))

    def unknown(self, n: Node, path):
        if not self.permissive:
            self.report(path, f"unknown tag {n.name!r}")
            return
        self.report(path, f"unknown tag {n.name!r}", "warning")
        for i, child in enumerate(n.children):
            here = path + (i,)
            if isinstance(child, Node) and child.name not in INLINE_TAGS and child.name in KNOWN_TAGS:
                self.block(child, here)
            else:
                self.inline(child, here)

    def no_attrs(self, n: Node, path):
        if n.attrs:
            self.report(path, f"{n.name} takes no attributes")

    def block(self, n, path):
        if isinstance(n, Text):
            self.report(path, "text outside a paragraph")
            return
        if not isinstance(n, Node):
            self.report(path, f"not a node: {type(n).__name__}")
            return
        if n.name == "para":
            self.no_attrs(n, path)
            self.inlines(n.children, path)
        elif n.name == "section":
            keys = [k for k, _ in n.attrs]
            if keys.count("id") > 1:
                self.report(path, "duplicate id attribute")
            if any(k != "id" for k in keys):
                self.report(path, "section only takes an id attribute")
            self.blocks(n.children, path)
        elif n.name == "figure":
            self.no_attrs(n, path)
            self.blocks(n.children, path)
        elif n.name == "list":
            self.no_attrs(n, path)
            for i, child in enumerate(n.children):
                here = path + (i,)
                if isinstance(child, Node) and child.name == "item":
                    self.no_attrs(child, here)
                    self.blocks(child.children, here)
                else:
                    self.report(here, "list children must be item nodes")
        elif n.name in INLINE_TAGS or n.name == "item":
            self.report(path, f"{n.name} is not allowed in block position")
        else:
            self.unknown(n, path)

    def inline(self, n, path):
        if isinstance(n, Text):
            return
        if not isinstance(n, Node):
            self.report(path, f"not a node: {type(n).__name__}")
            return
        if n.name == "bold":
            self.no_attrs(n, path)
            self.inlines(n.children, path)
        elif n.name == "ref":
            if len(n.attrs) != 1 or n.attrs[0][0] != "target":
                self.report(path, "ref needs exactly one target attribute")
            if n.children:
                self.report(path, "ref must have no children")
        elif n.name in KNOWN_TAGS:
            self.report(path, f"{n.name} is not allowed in inline position")
        else:
            self.unknown(n, path)
