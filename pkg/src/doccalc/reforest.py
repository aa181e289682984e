"""Grouping runs of inline content into paragraphs."""

from __future__ import annotations

from .doc.nodes import Node, Text, is_block

PARAGRAPH_BREAK = "\n\n"


def reforest(nodes, par=(), literal: bool = False) -> list:
    """Emit a paragraph at the end of the list, at a "\\n\\n" text node and
    before each block node; block children are reforested on their own.

    ``par`` is the pending paragraph, most recent node first. Empty
    paragraphs are dropped unless ``literal`` is set."""
    out = []
    acc = list(reversed(par))

    def emit():
        if acc or literal:
            out.append(Node("para", (), tuple(acc)))
        acc.clear()

    for n in nodes:
        if isinstance(n, Text):
            if n.value == PARAGRAPH_BREAK:
                emit()
            else:
                acc.append(n)
        elif is_block(n.name):
            emit()
            out.append(Node(n.name, n.attrs, tuple(reforest(n.children, literal=literal))))
        else:
            acc.append(n)
    emit()
    return out
