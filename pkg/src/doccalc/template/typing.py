"""Typing rules for templates.

A template checked under ``tpl T`` has type ``T list``. Bare expressions
may have type T, or Str when T is a tree type (the text is wrapped in a
text node during desugaring)."""

from __future__ import annotations

from ..errors import (
    ComponentOutsideReact, DesugarError, TemplateOutsideContext, TypeMismatch,
)
from ..kernel.context import TyCtxt
from ..kernel.stdlib import NODE_FRAG, NODE_LIST, NODE_TY, REACT_LIST, REACT_NODE, list_type
from ..kernel.typecheck import expect, typecheck
from ..kernel.types import BOOL, STR, Type, alpha_eq, list_element
from .syntax import (
    Component, FlowTpl, Foreach, FragTpl, IfPart, Interp, Lit, NodePart, ReactTpl, Set,
    SpliceList, StrTpl, Template, TreeTpl,
)

TREE_CONTEXTS = (NODE_TY, REACT_NODE, NODE_FRAG)

# element type each template expression desugars under, and its result type
CONTEXT_OF = {StrTpl: STR, TreeTpl: NODE_TY, FragTpl: NODE_FRAG, FlowTpl: NODE_TY, ReactTpl: REACT_NODE}
RESULT_OF = {StrTpl: STR, TreeTpl: NODE_LIST, FragTpl: NODE_LIST, FlowTpl: NODE_LIST, ReactTpl: REACT_LIST}


def is_tree_context(ty: Type) -> bool:
    return any(ty is c or alpha_eq(ty, c) for c in TREE_CONTEXTS)


def typecheck_template_expr(ctx: TyCtxt, e) -> Type:
    kind = type(e)
    if kind not in CONTEXT_OF:
        raise TypeError(f"not a template expression: {kind.__name__}")
    typecheck_template(ctx.with_template(CONTEXT_OF[kind]), e.template)
    return RESULT_OF[kind]


def typecheck_template(ctx: TyCtxt, t: Template) -> Type:
    """Type of ``t`` under the current ``tpl T`` fact: always ``T list``."""
    elem = ctx.template()
    if elem is None:
        raise TemplateOutsideContext(t)
    for i, part in enumerate(t.parts):
        ctx = _check_part(ctx, elem, part, i)
    return list_type(elem)


def bare_expr_coerces(elem: Type, found: Type) -> bool | None:
    """How a bare expression of type ``found`` fits a ``tpl elem`` context:
    False if used as is, True if wrapped as text, None if it does not fit."""
    if alpha_eq(found, elem):
        return False
    if found == STR and is_tree_context(elem):
        return True
    return None


def _check_part(ctx: TyCtxt, elem: Type, part, index: int) -> TyCtxt:
    """Check one part; returns the context for the remaining parts."""
    where = f"template part {index}"
    if isinstance(part, Lit):
        return ctx
    if isinstance(part, Interp):
        found = typecheck(ctx, part.expr)
        if bare_expr_coerces(elem, found) is None:
            raise TypeMismatch(elem, found, where, part)
        return ctx
    if isinstance(part, Set):
        return ctx.bind(part.name, typecheck(ctx, part.expr))
    if isinstance(part, SpliceList):
        if alpha_eq(elem, NODE_FRAG):
            raise DesugarError("splice is not available in fragment templates", part)
        expect(list_type(elem), typecheck(ctx, part.expr), where, part)
        return ctx
    if isinstance(part, Foreach):
        source = typecheck(ctx, part.source)
        item = list_element(source)
        if item is None:
            raise TypeMismatch("a list type", source, where, part)
        typecheck_template(ctx.bind(part.binder, item), part.body)
        return ctx
    if isinstance(part, IfPart):
        expect(BOOL, typecheck(ctx, part.cond), where, part)
        typecheck_template(ctx, part.then)
        typecheck_template(ctx, part.else_)
        return ctx
    if isinstance(part, NodePart):
        if not is_tree_context(elem):
            raise TypeMismatch("a tree template context", elem, where, part)
        for key, e in part.attrs:
            expect(STR, typecheck(ctx, e), f"{where}, attribute {key}", part)
        typecheck_template(ctx, part.children)
        return ctx
    if isinstance(part, Component):
        if not alpha_eq(elem, REACT_NODE):
            raise ComponentOutsideReact(part, index)
        expect(STR, typecheck(ctx, part.component), f"{where}, component key", part)
        typecheck(ctx, part.props)
        return ctx
    raise TypeError(f"not a template part: {type(part).__name__}")
