"""Ready-made components, and a way to define one with kernel terms."""

from __future__ import annotations

from ..doc.nodes import Node, Text
from ..kernel.evaluate import evaluate
from ..kernel.stdlib import pair
from ..kernel.terms import App, BoolLit, StrLit
from ..kernel.typecheck import typecheck
from ..kernel.types import STR, Arrow, alpha_eq
from .runtime import ComponentDef


def _fst(v):
    return v.get("fst")


def _snd(v):
    return v.get("snd")


def counter(key: str = "counter") -> ComponentDef:
    """Appends its props to its text on every "click"."""

    def init(p):
        return pair(p, StrLit(""))

    def update(signal, state):
        if signal == "click":
            return pair(_fst(state), StrLit(_fst(state).value + _snd(state).value))
        return state

    def view(state):
        return Text(_snd(state).value)

    return ComponentDef(key, init, update, view, STR)


def label(key: str = "label") -> ComponentDef:
    """Static text; ignores signals."""
    return ComponentDef(key, lambda p: p, lambda s, state: state, lambda state: Text(state.value), STR)


def toggle_section(key: str = "toggle-section") -> ComponentDef:
    """Shows a section whose id is the props while on, a placeholder
    paragraph while off; "toggle" flips it."""

    def init(p):
        return pair(p, BoolLit(False))

    def update(signal, state):
        if signal == "toggle":
            return pair(_fst(state), BoolLit(not _snd(state).value))
        return state

    def view(state):
        ident = _fst(state).value
        if _snd(state).value:
            return Node("section", (("id", ident),), (Node("para", (), (Text(ident),)),))
        return Node("para", (), (Text("(hidden)"),))

    return ComponentDef(key, init, update, view, STR)


BUILTINS = {c.key: c for c in (counter(), label(), toggle_section())}


def kernel_component(key: str, init, update, view, props_type, state_type, fuel: int = 100_000) -> ComponentDef:
    """A component whose functions are closed kernel terms:
    init : P -> S, update : Str -> S -> S, view : S -> ReactNode."""
    from ..kernel.stdlib import REACT_NODE
    from .bridge import react_from_value

    for term, expected in (
        (init, Arrow(props_type, state_type)),
        (update, Arrow(STR, Arrow(state_type, state_type))),
        (view, Arrow(state_type, REACT_NODE)),
    ):
        found = typecheck(None, term)
        if not alpha_eq(found, expected):
            raise TypeError(f"{key}: expected {expected}, found {found}")
    return ComponentDef(
        key,
        lambda p: evaluate(App(init, p), fuel),
        lambda s, state: evaluate(App(App(update, StrLit(s)), state), fuel),
        lambda state: react_from_value(evaluate(App(view, state), fuel)),
        props_type,
    )


__all__ = ["counter", "label", "toggle_section", "kernel_component", "BUILTINS"]
