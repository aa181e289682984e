"""Context-directed translation of templates into kernel terms.

The translation is type-directed: it threads the typing context so that a
bare Str expression under a tree context can be wrapped as a text node, and
so that foreach binders get their element type as an annotation."""

from __future__ import annotations

from ..errors import DesugarError, TypeMismatch
from ..kernel.context import EMPTY, TyCtxt
from ..kernel.stdlib import (
    ATTR, FNODE, NODE_FRAG, NODE_TY, PENDING_INST, REACT_NODE, build_list, cons, list_type,
    nil, pair, variant,
)
from ..kernel.subst import subst_type
from ..kernel.terms import (
    App, BoolLit, Case, Concat, Fix, Fold, If, Inject, Lambda, Let, Pack, Prim, Project,
    RecordLit, StrLit, TyApp, TyLambda, Unfold, Unpack, Var, children,
)
from ..kernel.typecheck import typecheck
from ..kernel.types import STR, TVar, Type, alpha_eq, list_element
from .library import elim_frags_term, reforest_term
from .syntax import (
    Component, FlowTpl, Foreach, FragTpl, IfPart, Interp, Lit, NodePart, ReactTpl, Set,
    SpliceList, StrTpl, Template, TemplateExpr, TreeTpl, subterms,
)
from .typing import bare_expr_coerces


def desugar(e, ctx: TyCtxt | None = None, literal_reforest: bool = False):
    """Translate every template expression inside ``e`` into kernel terms."""
    return _Desugarer(literal_reforest).expr(ctx if ctx is not None else EMPTY, e)


def desugar_template(t: Template, elem: Type, ctx: TyCtxt | None = None, literal_reforest: bool = False):
    """The ``elem list`` term a template stands for under ``tpl elem``."""
    ctx = (ctx if ctx is not None else EMPTY).with_template(elem)
    return _Desugarer(literal_reforest).parts(ctx, t.parts, elem)


def contains_template(e) -> bool:
    """Structural scan for any remaining template expression."""
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, TemplateExpr):
            return True
        if "_closed_type" not in node.__dict__:  # library terms are template-free
            stack.extend(children(node))
    return False


def _same(a: Type, b: Type) -> bool:
    return a is b or alpha_eq(a, b)


class _Desugarer:
    def __init__(self, literal_reforest: bool):
        self.literal_reforest = literal_reforest

    # -- kernel terms: structural, threading the context -------------------

    def expr(self, ctx: TyCtxt, e):
        if isinstance(e, (StrLit, BoolLit, Var)):
            return e
        if isinstance(e, TemplateExpr):
            return self.template_expr(ctx, e)
        x = self.expr
        if isinstance(e, Concat):
            return Concat(x(ctx, e.lhs), x(ctx, e.rhs))
        if isinstance(e, Lambda):
            return Lambda(e.param, e.annot, x(ctx.bind(e.param, e.annot), e.body))
        if isinstance(e, App):
            return App(x(ctx, e.fn), x(ctx, e.arg))
        if isinstance(e, Fix):
            return Fix(e.name, e.annot, x(ctx.bind(e.name, e.annot), e.body))
        if isinstance(e, Let):
            bound_ty = typecheck(ctx, e.bound)
            return Let(e.name, x(ctx, e.bound), x(ctx.bind(e.name, bound_ty), e.body))
        if isinstance(e, RecordLit):
            return RecordLit(tuple((l, x(ctx, v)) for l, v in e.fields))
        if isinstance(e, Project):
            return Project(x(ctx, e.expr), e.label)
        if isinstance(e, Inject):
            return Inject(x(ctx, e.expr), e.label, e.annot)
        if isinstance(e, Case):
            scrut_ty = typecheck(ctx, e.scrutinee)
            arms = tuple(
                (label, binder, x(ctx.bind(binder, scrut_ty.get(label)), body))
                for label, binder, body in e.arms
            )
            return Case(x(ctx, e.scrutinee), arms)
        if isinstance(e, Fold):
            return Fold(e.annot, x(ctx, e.expr))
        if isinstance(e, Unfold):
            return Unfold(e.annot, x(ctx, e.expr))
        if isinstance(e, TyLambda):
            return TyLambda(e.tyvar, x(ctx.bind_tyvar(e.tyvar), e.body))
        if isinstance(e, TyApp):
            return TyApp(x(ctx, e.expr), e.type_arg)
        if isinstance(e, Pack):
            return Pack(x(ctx, e.expr), e.witness, e.annot)
        if isinstance(e, Unpack):
            packed_ty = typecheck(ctx, e.packed)
            inner = ctx.bind_tyvar(e.tyvar).bind(
                e.binder, subst_type(packed_ty.body, packed_ty.var, TVar(e.tyvar))
            )
            return Unpack(e.binder, e.tyvar, x(ctx, e.packed), x(inner, e.body))
        if isinstance(e, If):
            return If(x(ctx, e.cond), x(ctx, e.then), x(ctx, e.else_))
        if isinstance(e, Prim):
            return Prim(e.name, e.type_args, tuple(x(ctx, a) for a in e.args))
        raise DesugarError(f"not an expression: {type(e).__name__}", e)

    def template_expr(self, ctx: TyCtxt, e):
        t = e.template
        if isinstance(e, StrTpl):
            return Prim("join", (), (self.parts(ctx.with_template(STR), t.parts, STR),))
        if isinstance(e, TreeTpl):
            return self.parts(ctx.with_template(NODE_TY), t.parts, NODE_TY)
        if isinstance(e, FragTpl):
            frags = self.parts(ctx.with_template(NODE_FRAG), t.parts, NODE_FRAG)
            return App(elim_frags_term(), variant(NODE_FRAG, "children", frags))
        if isinstance(e, FlowTpl):
            tree = self.parts(ctx.with_template(NODE_TY), t.parts, NODE_TY)
            return App(App(reforest_term(self.literal_reforest), tree), nil(NODE_TY))
        if isinstance(e, ReactTpl):
            return self.parts(ctx.with_template(REACT_NODE), t.parts, REACT_NODE)
        raise DesugarError(f"unknown template expression {type(e).__name__}", e)

    # -- templates ---------------------------------------------------------

    def parts(self, ctx: TyCtxt, parts: tuple, elem: Type):
        """Desugar a part list to a term of type ``elem list``."""
        if not parts:
            return nil(elem)
        p, rest = parts[0], parts[1:]
        frag = _same(elem, NODE_FRAG)
        if isinstance(p, Set):
            bound_ty = typecheck(ctx, p.expr)
            return Let(p.name, self.expr(ctx, p.expr), self.parts(ctx.bind(p.name, bound_ty), rest, elem))
        if isinstance(p, SpliceList):
            if frag:
                raise DesugarError("splice is not available in fragment templates", p)
            return Prim("append", (elem,), (self.expr(ctx, p.expr), self.parts(ctx, rest, elem)))
        if isinstance(p, Foreach):
            item = list_element(typecheck(ctx, p.source))
            if item is None:
                raise DesugarError("foreach over a non-list", p)
            body = self.parts(ctx.bind(p.binder, item), p.body.parts, elem)
            source = self.expr(ctx, p.source)
            if frag:
                fn = Lambda(p.binder, item, variant(NODE_FRAG, "children", body))
                head = variant(NODE_FRAG, "children", Prim("map", (item, NODE_FRAG), (fn, source)))
                return cons(elem, head, self.parts(ctx, rest, elem))
            mapped = Prim("map", (item, list_type(elem)), (Lambda(p.binder, item, body), source))
            spliced = Prim("flatten", (elem,), (mapped,))
            return Prim("append", (elem,), (spliced, self.parts(ctx, rest, elem)))
        if isinstance(p, IfPart):
            branch = If(
                self.expr(ctx, p.cond),
                self.parts(ctx, p.then.parts, elem),
                self.parts(ctx, p.else_.parts, elem),
            )
            if frag:
                return cons(elem, variant(NODE_FRAG, "children", branch), self.parts(ctx, rest, elem))
            return Prim("append", (elem,), (branch, self.parts(ctx, rest, elem)))
        return cons(elem, self.part(ctx, p, elem), self.parts(ctx, rest, elem))

    def part(self, ctx: TyCtxt, p, elem: Type):
        """Desugar a single part to a term of type ``elem``."""
        if isinstance(p, Lit):
            return self.text(StrLit(p.value), elem)
        if isinstance(p, Interp):
            found = typecheck(ctx, p.expr)
            coerce = bare_expr_coerces(elem, found)
            if coerce is None:
                raise TypeMismatch(elem, found, "interpolated expression", p)
            body = self.expr(ctx, p.expr)
            return self.text(body, elem) if coerce else body
        if isinstance(p, NodePart):
            attrs = build_list(ATTR, [pair(StrLit(k), self.expr(ctx, e)) for k, e in p.attrs])
            kids = self.parts(ctx, p.children.parts, elem)
            if _same(elem, NODE_FRAG):
                record = _struct(p.name, attrs, variant(NODE_FRAG, "children", kids))
                return variant(NODE_FRAG, "base", variant(FNODE, "node", record))
            if _same(elem, NODE_TY) or _same(elem, REACT_NODE):
                return variant(elem, "node", _struct(p.name, attrs, kids))
            raise DesugarError("node parts need a tree template", p)
        if isinstance(p, Component):
            if not _same(elem, REACT_NODE):
                raise DesugarError("component parts are only allowed inside reacttpl", p)
            props_ty = typecheck(ctx, p.props)
            record = RecordLit((
                ("component", self.expr(ctx, p.component)),
                ("props", self.expr(ctx, p.props)),
            ))
            return variant(REACT_NODE, "inst", Pack(record, props_ty, PENDING_INST))
        raise DesugarError(f"not a template part: {type(p).__name__}", p)

    @staticmethod
    def text(body, elem: Type):
        """Wrap a Str term as a text element of the context type."""
        if _same(elem, STR):
            return body
        if _same(elem, NODE_FRAG):
            return variant(NODE_FRAG, "base", variant(FNODE, "text", body))
        return variant(elem, "text", body)


def _struct(name: str, attrs, kids):
    return RecordLit((("name", StrLit(name)), ("attrs", attrs), ("children", kids)))


__all__ = ["desugar", "desugar_template", "contains_template", "subterms"]
