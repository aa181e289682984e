"""Native document trees and the nested fragment IR."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

BLOCK_TAGS = frozenset({"para", "section", "figure", "list"})


@dataclass(frozen=True)
class Text:
    value: str


@dataclass(frozen=True)
class Node:
    name: str
    attrs: tuple[tuple[str, str], ...] = ()
    children: tuple = ()

    def __post_init__(self):
        # accept lists for convenience, store tuples so trees stay hashable
        if not isinstance(self.attrs, tuple):
            object.__setattr__(self, "attrs", tuple(tuple(a) for a in self.attrs))
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))

    def attr(self, key: str) -> str | None:
        for k, v in self.attrs:
            if k == key:
                return v
        return None


NodeTy = Union[Text, Node]


def node(name: str, *children, **attrs) -> Node:
    """Shorthand: ``node("para", Text("hi"))``; attrs keep keyword order."""
    return Node(name, tuple(attrs.items()), tuple(children))


# -- fragments -------------------------------------------------------------

@dataclass(frozen=True)
class FragNode:
    """A structure node whose children are a fragment rather than a flat list."""

    name: str
    attrs: tuple[tuple[str, str], ...]
    children: NodeFrag


@dataclass(frozen=True)
class Base:
    node: Union[Text, FragNode]


@dataclass(frozen=True)
class Children:
    items: tuple

    def __post_init__(self):
        if not isinstance(self.items, tuple):
            object.__setattr__(self, "items", tuple(self.items))


NodeFrag = Union[Base, Children]


def elim_frags(f: NodeFrag) -> list[NodeTy]:
    if isinstance(f, Base):
        n = f.node
        if isinstance(n, Text):
            return [n]
        return [Node(n.name, n.attrs, tuple(elim_frags(n.children)))]
    if isinstance(f, Children):
        return [n for item in f.items for n in elim_frags(item)]
    raise TypeError(f"not a fragment: {f!r}")


def is_block(tag: str) -> bool:
    return tag in BLOCK_TAGS


def walk(doc, path=()):
    """Yield (path, node) for every node of a document, depth-first."""
    for i, n in enumerate(doc):
        here = path + (i,)
        yield here, n
        if isinstance(n, Node):
            yield from walk(n.children, here)


def text_content(doc) -> list[str]:
    """Text leaves in document order."""
    return [n.value for _, n in walk(doc) if isinstance(n, Text)]
