"""Closed kernel functions that desugared templates call: elim-frags for
the fragment strategy and reforest for flow templates."""

from __future__ import annotations

from functools import lru_cache

from ..kernel.stdlib import (
    ATTR, FNODE, NODE_FRAG, NODE_LIST, NODE_TY, cons, nil, variant,
)
from ..kernel.terms import (
    App, BoolLit, Case, Fix, If, Lambda, Let, Prim, Project, RecordLit, StrLit, Unfold, Var,
)
from ..kernel.typecheck import mark_closed
from ..kernel.types import Arrow
from ..doc.nodes import BLOCK_TAGS


def _restruct(record, children):
    """{name: r.name, attrs: r.attrs, children: children}"""
    return RecordLit((
        ("name", Project(record, "name")),
        ("attrs", Project(record, "attrs")),
        ("children", children),
    ))


@lru_cache(maxsize=None)
def elim_frags_term():
    """fix elim-frags : NodeFrag -> NodeTy list."""
    fn_ty = Arrow(NODE_FRAG, NODE_LIST)
    ef, f, n = Var("elim-frags"), Var("f"), Var("n")
    on_base = Case(Unfold(FNODE, n), (
        ("text", "s", cons(NODE_TY, variant(NODE_TY, "text", Var("s")), nil(NODE_TY))),
        ("node", "r", cons(
            NODE_TY,
            variant(NODE_TY, "node", _restruct(Var("r"), App(ef, Project(Var("r"), "children")))),
            nil(NODE_TY),
        )),
    ))
    on_children = Prim("flatten", (NODE_TY,), (
        Prim("map", (NODE_FRAG, NODE_LIST), (ef, Var("l"))),
    ))
    body = Case(Unfold(NODE_FRAG, f), (("base", "n", on_base), ("children", "l", on_children)))
    return mark_closed(Fix("elim-frags", fn_ty, Lambda("f", NODE_FRAG, body)))


def _is_block(name):
    """str-eq chain over the block tags."""
    result = BoolLit(False)
    for tag in sorted(BLOCK_TAGS, reverse=True):
        result = If(Prim("str-eq", (), (name, StrLit(tag))), BoolLit(True), result)
    return result


@lru_cache(maxsize=None)
def reforest_term(literal: bool = False):
    """fix reforest : NodeTy list -> NodeTy list -> NodeTy list.

    Unless ``literal``, an empty accumulator emits no paragraph."""
    fn_ty = Arrow(NODE_LIST, Arrow(NODE_LIST, NODE_LIST))
    rf, par = Var("reforest"), Var("par")

    def emit(rest):
        para = variant(NODE_TY, "node", RecordLit((
            ("name", StrLit("para")),
            ("attrs", nil(ATTR)),
            ("children", Prim("rev", (NODE_TY,), (par,))),
        )))
        emitted = cons(NODE_TY, para, rest)
        if literal:
            return emitted
        return Case(Unfold(NODE_LIST, par), (("nil", "_", rest), ("cons", "_", emitted)))

    def recur(ns, acc):
        return App(App(rf, ns), acc)

    tl, hd = Var("tl"), Var("hd")
    on_text = If(
        Prim("str-eq", (), (Var("s"), StrLit("\n\n"))),
        emit(recur(tl, nil(NODE_TY))),
        recur(tl, cons(NODE_TY, hd, par)),
    )
    block = variant(NODE_TY, "node", _restruct(
        Var("r"), recur(Project(Var("r"), "children"), nil(NODE_TY))
    ))
    on_node = If(
        _is_block(Project(Var("r"), "name")),
        emit(cons(NODE_TY, block, recur(tl, nil(NODE_TY)))),
        recur(tl, cons(NODE_TY, hd, par)),
    )
    on_cons = Let("hd", Project(Var("c"), "hd"), Let("tl", Project(Var("c"), "tail"),
        Case(Unfold(NODE_TY, hd), (("text", "s", on_text), ("node", "r", on_node)))))
    body = Case(Unfold(NODE_LIST, Var("ns")), (("nil", "_", emit(nil(NODE_TY))), ("cons", "c", on_cons)))
    return mark_closed(Fix("reforest", fn_ty, Lambda("ns", NODE_LIST, Lambda("par", NODE_LIST, body))))
