"""Components, instances and the runtime that steps and views them.

Components are host functions over kernel values. A view may mention child
components as ``Elem`` placeholders; the runtime turns those into ``Inst``
nodes, reusing an existing instance when the component key and props match.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Union

from ..doc.nodes import Node, Text
from ..errors import PropTypeMismatch, UnknownComponent

Signal = str
SignalMap = dict  # InstId -> Signal


@dataclass(frozen=True)
class ComponentDef:
    """A component is identified by its registry key."""

    key: str
    init: Callable[[Any], Any] = field(compare=False)
    update: Callable[[Signal, Any], Any] = field(compare=False)
    view: Callable[[Any], Any] = field(compare=False)
    props_type: Any = field(default=None, compare=False)


@dataclass(frozen=True)
class Elem:
    """A component reference that has not been instantiated yet."""

    key: str
    props: Any
    props_type: Any = field(default=None, compare=False)


@dataclass(frozen=True)
class Inst:
    id: int
    component: ComponentDef
    props: Any
    state: Any
    node: Any


ReactNode = Union[Text, Node, Inst, Elem]


class Runtime:
    """Owns the component registry and the instance id counter.

    Not safe for concurrent use; the trees it produces are immutable."""

    def __init__(self, components=()):
        self.registry: dict[str, ComponentDef] = {}
        self.next_id = 0
        for c in components:
            self.register(c)

    def register(self, component: ComponentDef) -> ComponentDef:
        self.registry[component.key] = component
        return component

    def lookup(self, key: str) -> ComponentDef:
        try:
            return self.registry[key]
        except KeyError:
            raise UnknownComponent(f"no component registered under {key!r}") from None

    def gen_id(self) -> int:
        i = self.next_id
        self.next_id += 1
        return i

    # -- instances ---------------------------------------------------------

    def instantiate(self, component: ComponentDef, props, props_type=None) -> Inst:
        _check_props(component, props, props_type)
        inst_id = self.gen_id()
        state = component.init(props)
        node = self.materialize(component.view(state))
        return Inst(inst_id, component, props, state, node)

    def materialize(self, n):
        """Instantiate every ``Elem`` placeholder in a view."""
        if isinstance(n, list):
            return [self.materialize(c) for c in n]
        if isinstance(n, Elem):
            return self.instantiate(self.lookup(n.key), n.props, n.props_type)
        if isinstance(n, Node):
            kids = tuple(self.materialize(c) for c in n.children)
            return n if _same_items(kids, n.children) else Node(n.name, n.attrs, kids)
        return n

    # -- stepping ----------------------------------------------------------

    def doc_step(self, signals: SignalMap, n):
        if isinstance(n, list):
            return [self.doc_step(signals, c) for c in n]
        if isinstance(n, Text):
            return n
        if isinstance(n, Node):
            kids = tuple(self.doc_step(signals, c) for c in n.children)
            return n if _same_items(kids, n.children) else Node(n.name, n.attrs, kids)
        if isinstance(n, Inst):
            if n.id not in signals:
                node = self.doc_step(signals, n.node)
                return n if node is n.node else Inst(n.id, n.component, n.props, n.state, node)
            state = n.component.update(signals[n.id], n.state)
            fresh = n.component.view(state)
            return Inst(n.id, n.component, n.props, state, self.reconcile(signals, n.node, fresh))
        if isinstance(n, Elem):
            return self.materialize(n)
        raise TypeError(f"not a reactive node: {n!r}")

    def reconcile(self, signals: SignalMap, old, new):
        """Merge a freshly computed view into the previous one so that child
        instances with unchanged component and props keep their state."""
        if isinstance(new, (Elem, Inst)):
            key = new.key if isinstance(new, Elem) else new.component.key
            if isinstance(old, Inst) and old.component.key == key and old.props == new.props:
                return self.doc_step(signals, old)
            return self.materialize(new)
        if isinstance(new, Node) and isinstance(old, Node) and old.name == new.name:
            kids = [
                self.reconcile(signals, o, c) for o, c in zip(old.children, new.children)
            ]
            kids.extend(self.materialize(c) for c in new.children[len(old.children):])
            return Node(new.name, new.attrs, tuple(kids))
        return self.materialize(new)

    def copy(self) -> Runtime:
        other = Runtime()
        other.registry = dict(self.registry)
        other.next_id = self.next_id
        return other


def _same_items(a, b) -> bool:
    return len(a) == len(b) and all(x is y for x, y in zip(a, b))


def _check_props(component: ComponentDef, props, props_type) -> None:
    expected = component.props_type
    if expected is None:
        return
    from ..kernel.typecheck import typecheck
    from ..kernel.types import alpha_eq

    found = props_type
    if found is None:
        try:
            found = typecheck(None, props)
        except Exception as exc:  # host values that are not kernel terms
            raise PropTypeMismatch(f"{component.key}: props are not a typed value") from exc
    if not alpha_eq(found, expected):
        raise PropTypeMismatch(f"{component.key}: expected props of type {expected}, found {found}")


# -- views and analyses ------------------------------------------------------

def doc_view(n) -> list:
    """The plain document shown for a reactive tree; instances disappear."""
    if isinstance(n, (list, tuple)):
        return [m for c in n for m in doc_view(c)]
    if isinstance(n, Text):
        return [n]
    if isinstance(n, Node):
        return [Node(n.name, n.attrs, tuple(doc_view(n.children)))]
    if isinstance(n, Inst):
        return doc_view(n.node)
    raise TypeError(f"cannot view {type(n).__name__}; instantiate it first")


def descendents(n) -> set[str]:
    """Tag names of every node reachable from ``n``, through instances."""
    out: set[str] = set()
    stack = [n]
    while stack:
        m = stack.pop()
        if isinstance(m, (list, tuple)):
            stack.extend(m)
        elif isinstance(m, Node):
            out.add(m.name)
            stack.extend(m.children)
        elif isinstance(m, Inst):
            stack.append(m.node)
    return out


def instance_ids(n) -> set[int]:
    out: set[int] = set()
    stack = [n]
    while stack:
        m = stack.pop()
        if isinstance(m, (list, tuple)):
            stack.extend(m)
        elif isinstance(m, Node):
            stack.extend(m.children)
        elif isinstance(m, Inst):
            out.add(m.id)
            stack.append(m.node)
    return out


def _touches_section(old, new) -> bool:
    return "section" in descendents(old) or "section" in descendents(new)


def dirty(old, new) -> bool:
    """Could the step from ``old`` to ``new`` have changed section numbering?

    For a pair of instances: some changed instance mentions a section before
    or after the step. Nodes are compared positionally; anything unpaired
    or of mismatched kind counts if it mentions a section."""
    if old is new:
        return False
    if isinstance(old, (list, tuple)) and isinstance(new, (list, tuple)):
        return _dirty_children(old, new)
    if isinstance(old, Inst) and isinstance(new, Inst):
        if old == new:
            return False
        return _touches_section(old.node, new.node)
    if isinstance(old, Node) and isinstance(new, Node) and old.name == new.name and old.attrs == new.attrs:
        return _dirty_children(old.children, new.children)
    if isinstance(old, Text) and isinstance(new, Text):
        return False
    return old != new and _touches_section(old, new)


def _dirty_children(old, new) -> bool:
    if any(dirty(o, n) for o, n in zip(old, new)):
        return True
    extra = list(old[len(new):]) + list(new[len(old):])
    return "section" in descendents(extra)
