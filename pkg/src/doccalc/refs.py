"""Section numbering and cross-references, resolved in two passes: collect
the identifier context, then replace each ref with its section number."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .doc.nodes import Node, Text, walk
from .errors import RefValidationError, UnknownTarget

# (identifier, number stack with the innermost counter first)
IdCtxt = list[tuple[str, list[int]]]


@dataclass(frozen=True)
class RefError:
    kind: str  # UnknownTarget | DuplicateId | MalformedRef
    name: str | None
    path: tuple[int, ...]

    def __str__(self):
        where = "/".join(str(i) for i in self.path) or "(root)"
        return f"{self.kind} {self.name!r} at {where}"


def sections_at(counters: list[int], n) -> tuple[IdCtxt, list[int]]:
    if isinstance(n, Text):
        return [], counters
    if n.name == "section":
        k, *ks = counters
        inner, _ = sections_at_list([1, k, *ks], n.children)
        ident = n.attr("id")
        entries = [(ident, [k, *ks])] if ident is not None else []
        return entries + inner, [k + 1, *ks]
    return sections_at_list(counters, n.children)


def sections_at_list(counters: list[int], nodes) -> tuple[IdCtxt, list[int]]:
    delta: IdCtxt = []
    for n in nodes:
        found, counters = sections_at(counters, n)
        delta.extend(found)
    return delta, counters


def sections(doc) -> IdCtxt:
    return sections_at_list([1], doc)[0]


def section_number_to_string(nums: list[int]) -> str:
    return ".".join(str(k) for k in reversed(nums))


def check_valid(delta: IdCtxt, doc) -> list[RefError]:
    """Every problem that stops refs from resolving; empty means valid."""
    errors = []
    counts = Counter(ident for ident, _ in delta)
    seen = Counter()
    known = set(counts)
    for path, n in walk(doc):
        if not isinstance(n, Node):
            continue
        if n.name == "section":
            ident = n.attr("id")
            if ident is not None:
                seen[ident] += 1
                if seen[ident] == 2:
                    errors.append(RefError("DuplicateId", ident, path))
        elif n.name == "ref":
            if len(n.attrs) != 1 or n.attrs[0][0] != "target" or n.children:
                errors.append(RefError("MalformedRef", n.attr("target"), path))
            elif n.attrs[0][1] not in known:
                errors.append(RefError("UnknownTarget", n.attrs[0][1], path))
    reported = {e.name for e in errors if e.kind == "DuplicateId"}
    for ident, count in counts.items():
        if count > 1 and ident not in reported:
            errors.append(RefError("DuplicateId", ident, ()))
    return errors


def replace_refs(delta: IdCtxt, doc) -> list:
    numbers: dict[str, list[int]] = {}
    for ident, nums in delta:
        numbers.setdefault(ident, nums)

    def visit(n):
        if isinstance(n, Text):
            return n
        if n.name == "ref":
            target = n.attr("target")
            if target not in numbers:
                raise UnknownTarget(target)
            return Text(section_number_to_string(numbers[target]))
        return Node(n.name, n.attrs, tuple(visit(c) for c in n.children))

    return [visit(n) for n in doc]


def render_refs(doc) -> list:
    delta = sections(doc)
    errors = check_valid(delta, doc)
    if errors:
        raise RefValidationError(errors)
    return replace_refs(delta, doc)
