"""Type synthesis for the kernel. Template expressions are handed to the
template module's rules."""

from __future__ import annotations

from ..errors import NonExhaustiveCase, TypeCheckError, TypeMismatch, UnboundVariable, UnknownLabel
from .context import EMPTY, TyCtxt
from .stdlib import prim_arity, prim_signature
from .terms import (
    App, BoolLit, Case, Concat, Fix, Fold, If, Inject, Lambda, Let, Pack, Prim, Project,
    RecordLit, StrLit, TyApp, TyLambda, Unfold, Unpack, Var,
)
from .types import (
    BOOL, STR, Arrow, Exists, Forall, Mu, Record, Sum, TVar, Type,
    alpha_eq, free_type_vars, fresh_name, subst_type, unfold_mu,
)


def typecheck(ctx: TyCtxt | None, e) -> Type:
    """Synthesize the type of ``e`` under ``ctx`` or raise a TypeCheckError."""
    return _synth(ctx if ctx is not None else EMPTY, e)


def check_type_wf(ctx: TyCtxt, t: Type, node=None) -> None:
    free = free_type_vars(t)
    if not free:
        return
    unbound = free - ctx.tyvars()
    if unbound:
        raise UnboundVariable(sorted(unbound)[0], node, kind="type variable")


def mark_closed(e, ty: Type | None = None):
    """Remember the type of a closed, template-free term so later checks
    can skip it. Returns ``e``."""
    if ty is None:
        ty = typecheck(EMPTY, e)
    object.__setattr__(e, "_closed_type", ty)
    return e


def expect(expected: Type, found: Type, location: str, node) -> None:
    if not alpha_eq(expected, found):
        raise TypeMismatch(expected, found, location, node)


def _fresh_tyvar(ctx: TyCtxt, name: str, body, extra=frozenset()):
    """Rename a type binder that would shadow a type variable already in scope."""
    if name not in ctx.tyvars():
        return name, body
    from .subst import subst_type_in_expr

    new = fresh_name(name, ctx.tyvars() | extra)
    return new, subst_type_in_expr(body, name, TVar(new))


def _synth(ctx: TyCtxt, e) -> Type:
    closed = getattr(e, "__dict__", {}).get("_closed_type")
    if closed is not None:
        return closed
    if isinstance(e, StrLit):
        return STR
    if isinstance(e, BoolLit):
        return BOOL
    if isinstance(e, Var):
        ty = ctx.lookup(e.name)
        if ty is None:
            raise UnboundVariable(e.name, e)
        return ty
    if isinstance(e, Concat):
        expect(STR, _synth(ctx, e.lhs), "left operand of +", e)
        expect(STR, _synth(ctx, e.rhs), "right operand of +", e)
        return STR
    if isinstance(e, Lambda):
        check_type_wf(ctx, e.annot, e)
        return Arrow(e.annot, _synth(ctx.bind(e.param, e.annot), e.body))
    if isinstance(e, App):
        fn_ty = _synth(ctx, e.fn)
        if not isinstance(fn_ty, Arrow):
            raise TypeMismatch("a function type", fn_ty, "application", e)
        expect(fn_ty.param, _synth(ctx, e.arg), "application argument", e)
        return fn_ty.result
    if isinstance(e, Fix):
        check_type_wf(ctx, e.annot, e)
        expect(e.annot, _synth(ctx.bind(e.name, e.annot), e.body), "fixpoint body", e)
        return e.annot
    if isinstance(e, Let):
        bound = _synth(ctx, e.bound)
        return _synth(ctx.bind(e.name, bound), e.body)
    if isinstance(e, RecordLit):
        labels = [l for l, _ in e.fields]
        if len(set(labels)) != len(labels):
            raise TypeCheckError("duplicate label in record literal", e)
        return Record(tuple((l, _synth(ctx, v)) for l, v in e.fields))
    if isinstance(e, Project):
        rec = _synth(ctx, e.expr)
        if not isinstance(rec, Record):
            raise TypeMismatch("a record type", rec, f"projection .{e.label}", e)
        field = rec.get(e.label)
        if field is None:
            raise UnknownLabel(e.label, e)
        return field
    if isinstance(e, Inject):
        if not isinstance(e.annot, Sum):
            raise TypeMismatch("a sum type", e.annot, "injection annotation", e)
        check_type_wf(ctx, e.annot, e)
        variant = e.annot.get(e.label)
        if variant is None:
            raise UnknownLabel(e.label, e)
        expect(variant, _synth(ctx, e.expr), f"injection at {e.label}", e)
        return e.annot
    if isinstance(e, Case):
        return _synth_case(ctx, e)
    if isinstance(e, Fold):
        if not isinstance(e.annot, Mu):
            raise TypeMismatch("a recursive type", e.annot, "fold annotation", e)
        check_type_wf(ctx, e.annot, e)
        expect(unfold_mu(e.annot), _synth(ctx, e.expr), "fold", e)
        return e.annot
    if isinstance(e, Unfold):
        if not isinstance(e.annot, Mu):
            raise TypeMismatch("a recursive type", e.annot, "unfold annotation", e)
        check_type_wf(ctx, e.annot, e)
        expect(e.annot, _synth(ctx, e.expr), "unfold", e)
        return unfold_mu(e.annot)
    if isinstance(e, TyLambda):
        var, body = _fresh_tyvar(ctx, e.tyvar, e.body)
        return Forall(var, _synth(ctx.bind_tyvar(var), body))
    if isinstance(e, TyApp):
        check_type_wf(ctx, e.type_arg, e)
        poly = _synth(ctx, e.expr)
        if not isinstance(poly, Forall):
            raise TypeMismatch("a polymorphic type", poly, "type application", e)
        return subst_type(poly.body, poly.var, e.type_arg)
    if isinstance(e, Pack):
        if not isinstance(e.annot, Exists):
            raise TypeMismatch("an existential type", e.annot, "pack annotation", e)
        check_type_wf(ctx, e.annot, e)
        check_type_wf(ctx, e.witness, e)
        expected = subst_type(e.annot.body, e.annot.var, e.witness)
        expect(expected, _synth(ctx, e.expr), "pack", e)
        return e.annot
    if isinstance(e, Unpack):
        packed = _synth(ctx, e.packed)
        if not isinstance(packed, Exists):
            raise TypeMismatch("an existential type", packed, "unpack", e)
        var, body = _fresh_tyvar(ctx, e.tyvar, e.body, free_type_vars(packed))
        inner = ctx.bind_tyvar(var).bind(e.binder, subst_type(packed.body, packed.var, TVar(var)))
        result = _synth(inner, body)
        if var in free_type_vars(result):
            raise TypeCheckError(f"type variable {var} escapes its unpack scope", e)
        return result
    if isinstance(e, If):
        expect(BOOL, _synth(ctx, e.cond), "if condition", e)
        then_ty = _synth(ctx, e.then)
        expect(then_ty, _synth(ctx, e.else_), "else branch", e)
        return then_ty
    if isinstance(e, Prim):
        return _synth_prim(ctx, e)

    from ..template.syntax import TemplateExpr

    if isinstance(e, TemplateExpr):
        from ..template.typing import typecheck_template_expr

        return typecheck_template_expr(ctx, e)
    raise TypeCheckError(f"not an expression: {type(e).__name__}", e)


def _synth_case(ctx: TyCtxt, e: Case) -> Type:
    scrut = _synth(ctx, e.scrutinee)
    if not isinstance(scrut, Sum):
        raise TypeMismatch("a sum type", scrut, "case scrutinee", e)
    arm_labels = [label for label, _, _ in e.arms]
    for label in arm_labels:
        if scrut.get(label) is None:
            raise UnknownLabel(label, e)
    missing = [l for l in scrut.labels if l not in arm_labels]
    if missing or len(set(arm_labels)) != len(arm_labels):
        raise NonExhaustiveCase(missing, e)
    if not e.arms:
        raise TypeCheckError("cannot synthesize the type of a case with no arms", e)
    result = None
    for label, binder, body in e.arms:
        ty = _synth(ctx.bind(binder, scrut.get(label)), body)
        if result is None:
            result = ty
        else:
            expect(result, ty, f"case arm {label}", e)
    return result


def _synth_prim(ctx: TyCtxt, e: Prim) -> Type:
    n_types, n_args = prim_arity(e.name)
    if len(e.type_args) != n_types or len(e.args) != n_args:
        raise TypeCheckError(
            f"primitive {e.name} takes {n_types} type and {n_args} term arguments", e
        )
    for t in e.type_args:
        check_type_wf(ctx, t, e)
    params, result = prim_signature(e.name, e.type_args)
    for i, (param, arg) in enumerate(zip(params, e.args)):
        expect(param, _synth(ctx, arg), f"argument {i + 1} of {e.name}", e)
    return result
