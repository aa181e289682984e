"""Capture-avoiding substitution of terms for variables and of types for
type variables. Free-variable sets are memoised on the (immutable) nodes."""

from __future__ import annotations

from .terms import (
    App, BoolLit, Case, Concat, Fix, Fold, If, Inject, Lambda, Let, Pack, Prim, Project,
    RecordLit, StrLit, TyApp, TyLambda, Unfold, Unpack, Var,
)
from .types import TVar, Type, free_type_vars, fresh_name, subst_type

_EMPTY = frozenset()


def free_vars(e) -> frozenset[str]:
    cached = e.__dict__.get("_fv")
    if cached is not None:
        return cached
    if isinstance(e, (StrLit, BoolLit)):
        result = _EMPTY
    elif isinstance(e, Var):
        result = frozenset((e.name,))
    elif isinstance(e, Lambda):
        result = free_vars(e.body) - {e.param}
    elif isinstance(e, Fix):
        result = free_vars(e.body) - {e.name}
    elif isinstance(e, Let):
        result = free_vars(e.bound) | (free_vars(e.body) - {e.name})
    elif isinstance(e, Case):
        result = free_vars(e.scrutinee).union(
            *(free_vars(body) - {binder} for _, binder, body in e.arms)
        )
    elif isinstance(e, Unpack):
        result = free_vars(e.packed) | (free_vars(e.body) - {e.binder})
    elif isinstance(e, Concat):
        result = free_vars(e.lhs) | free_vars(e.rhs)
    elif isinstance(e, App):
        result = free_vars(e.fn) | free_vars(e.arg)
    elif isinstance(e, RecordLit):
        result = _EMPTY.union(*(free_vars(v) for _, v in e.fields))
    elif isinstance(e, (Project, Inject, Fold, Unfold, Pack, TyApp)):
        result = free_vars(e.expr)
    elif isinstance(e, TyLambda):
        result = free_vars(e.body)
    elif isinstance(e, If):
        result = free_vars(e.cond) | free_vars(e.then) | free_vars(e.else_)
    elif isinstance(e, Prim):
        result = _EMPTY.union(*(free_vars(a) for a in e.args))
    else:
        raise TypeError(f"free_vars: unsupported node {type(e).__name__}")
    object.__setattr__(e, "_fv", result)
    return result


def subst(e, name: str, value):
    """e[name := value], renaming binders that would capture free variables of value."""
    if name not in free_vars(e):
        return e
    if isinstance(e, Var):
        return value
    if isinstance(e, Concat):
        return Concat(subst(e.lhs, name, value), subst(e.rhs, name, value))
    if isinstance(e, App):
        return App(subst(e.fn, name, value), subst(e.arg, name, value))
    if isinstance(e, Lambda):
        param, body = _avoid(e.param, e.body, name, value)
        return Lambda(param, e.annot, subst(body, name, value))
    if isinstance(e, Fix):
        fname, body = _avoid(e.name, e.body, name, value)
        return Fix(fname, e.annot, subst(body, name, value))
    if isinstance(e, Let):
        bound = subst(e.bound, name, value)
        if e.name == name:
            return Let(e.name, bound, e.body)
        binder, body = _avoid(e.name, e.body, name, value)
        return Let(binder, bound, subst(body, name, value))
    if isinstance(e, RecordLit):
        return RecordLit(tuple((l, subst(v, name, value)) for l, v in e.fields))
    if isinstance(e, Project):
        return Project(subst(e.expr, name, value), e.label)
    if isinstance(e, Inject):
        return Inject(subst(e.expr, name, value), e.label, e.annot)
    if isinstance(e, Case):
        arms = []
        for label, binder, body in e.arms:
            if binder == name:
                arms.append((label, binder, body))
            else:
                binder, body = _avoid(binder, body, name, value)
                arms.append((label, binder, subst(body, name, value)))
        return Case(subst(e.scrutinee, name, value), tuple(arms))
    if isinstance(e, Fold):
        return Fold(e.annot, subst(e.expr, name, value))
    if isinstance(e, Unfold):
        return Unfold(e.annot, subst(e.expr, name, value))
    if isinstance(e, TyLambda):
        tyvar, body = e.tyvar, e.body
        if tyvar in free_type_vars_expr(value):
            new = fresh_name(tyvar, free_type_vars_expr(value) | free_type_vars_expr(body))
            body = subst_type_in_expr(body, tyvar, TVar(new))
            tyvar = new
        return TyLambda(tyvar, subst(body, name, value))
    if isinstance(e, TyApp):
        return TyApp(subst(e.expr, name, value), e.type_arg)
    if isinstance(e, Pack):
        return Pack(subst(e.expr, name, value), e.witness, e.annot)
    if isinstance(e, Unpack):
        packed = subst(e.packed, name, value)
        if e.binder == name:
            return Unpack(e.binder, e.tyvar, packed, e.body)
        binder, body = _avoid(e.binder, e.body, name, value)
        tyvar = e.tyvar
        if tyvar in free_type_vars_expr(value):
            new = fresh_name(tyvar, free_type_vars_expr(value) | free_type_vars_expr(body))
            body = subst_type_in_expr(body, tyvar, TVar(new))
            tyvar = new
        return Unpack(binder, tyvar, packed, subst(body, name, value))
    if isinstance(e, If):
        return If(subst(e.cond, name, value), subst(e.then, name, value), subst(e.else_, name, value))
    if isinstance(e, Prim):
        return Prim(e.name, e.type_args, tuple(subst(a, name, value) for a in e.args))
    raise TypeError(f"subst: unsupported node {type(e).__name__}")


def _avoid(binder: str, body, name: str, value):
    """Rename ``binder`` in ``body`` if it would capture a free variable of ``value``."""
    value_fv = free_vars(value)
    if binder not in value_fv:
        return binder, body
    new = fresh_name(binder, value_fv | free_vars(body) | {name})
    return new, subst(body, binder, Var(new))


def free_type_vars_expr(e) -> frozenset[str]:
    cached = e.__dict__.get("_ftv")
    if cached is not None:
        return cached
    if isinstance(e, (StrLit, BoolLit, Var)):
        result = _EMPTY
    elif isinstance(e, (Lambda, Fix)):
        result = free_type_vars(e.annot) | free_type_vars_expr(e.body)
    elif isinstance(e, (Inject,)):
        result = free_type_vars(e.annot) | free_type_vars_expr(e.expr)
    elif isinstance(e, (Fold, Unfold)):
        result = free_type_vars(e.annot) | free_type_vars_expr(e.expr)
    elif isinstance(e, TyApp):
        result = free_type_vars(e.type_arg) | free_type_vars_expr(e.expr)
    elif isinstance(e, Pack):
        result = free_type_vars(e.witness) | free_type_vars(e.annot) | free_type_vars_expr(e.expr)
    elif isinstance(e, TyLambda):
        result = free_type_vars_expr(e.body) - {e.tyvar}
    elif isinstance(e, Unpack):
        result = free_type_vars_expr(e.packed) | (free_type_vars_expr(e.body) - {e.tyvar})
    elif isinstance(e, Prim):
        result = _EMPTY.union(*(free_type_vars(t) for t in e.type_args)).union(
            *(free_type_vars_expr(a) for a in e.args)
        )
    elif isinstance(e, Concat):
        result = free_type_vars_expr(e.lhs) | free_type_vars_expr(e.rhs)
    elif isinstance(e, App):
        result = free_type_vars_expr(e.fn) | free_type_vars_expr(e.arg)
    elif isinstance(e, Let):
        result = free_type_vars_expr(e.bound) | free_type_vars_expr(e.body)
    elif isinstance(e, RecordLit):
        result = _EMPTY.union(*(free_type_vars_expr(v) for _, v in e.fields))
    elif isinstance(e, Project):
        result = free_type_vars_expr(e.expr)
    elif isinstance(e, Case):
        result = free_type_vars_expr(e.scrutinee).union(
            *(free_type_vars_expr(body) for _, _, body in e.arms)
        )
    elif isinstance(e, If):
        result = free_type_vars_expr(e.cond) | free_type_vars_expr(e.then) | free_type_vars_expr(e.else_)
    else:
        raise TypeError(f"free_type_vars_expr: unsupported node {type(e).__name__}")
    object.__setattr__(e, "_ftv", result)
    return result


def subst_type_in_expr(e, name: str, ty: Type):
    """Replace the type variable ``name`` by ``ty`` in every annotation of ``e``."""
    if name not in free_type_vars_expr(e):
        return e
    s = lambda t: subst_type(t, name, ty)  # noqa: E731
    r = lambda x: subst_type_in_expr(x, name, ty)  # noqa: E731
    if isinstance(e, Lambda):
        return Lambda(e.param, s(e.annot), r(e.body))
    if isinstance(e, Fix):
        return Fix(e.name, s(e.annot), r(e.body))
    if isinstance(e, Inject):
        return Inject(r(e.expr), e.label, s(e.annot))
    if isinstance(e, Fold):
        return Fold(s(e.annot), r(e.expr))
    if isinstance(e, Unfold):
        return Unfold(s(e.annot), r(e.expr))
    if isinstance(e, TyApp):
        return TyApp(r(e.expr), s(e.type_arg))
    if isinstance(e, Pack):
        return Pack(r(e.expr), s(e.witness), s(e.annot))
    if isinstance(e, TyLambda):
        tyvar, body = e.tyvar, e.body
        if tyvar in free_type_vars(ty):
            new = fresh_name(tyvar, free_type_vars(ty) | free_type_vars_expr(body) | {name})
            body = subst_type_in_expr(body, tyvar, TVar(new))
            tyvar = new
        return TyLambda(tyvar, r(body))
    if isinstance(e, Unpack):
        packed = r(e.packed)
        if e.tyvar == name:
            return Unpack(e.binder, e.tyvar, packed, e.body)
        tyvar, body = e.tyvar, e.body
        if tyvar in free_type_vars(ty):
            new = fresh_name(tyvar, free_type_vars(ty) | free_type_vars_expr(body) | {name})
            body = subst_type_in_expr(body, tyvar, TVar(new))
            tyvar = new
        return Unpack(e.binder, tyvar, packed, r(body))
    if isinstance(e, Prim):
        return Prim(e.name, tuple(s(t) for t in e.type_args), tuple(r(a) for a in e.args))
    if isinstance(e, Concat):
        return Concat(r(e.lhs), r(e.rhs))
    if isinstance(e, App):
        return App(r(e.fn), r(e.arg))
    if isinstance(e, Let):
        return Let(e.name, r(e.bound), r(e.body))
    if isinstance(e, RecordLit):
        return RecordLit(tuple((l, r(v)) for l, v in e.fields))
    if isinstance(e, Project):
        return Project(r(e.expr), e.label)
    if isinstance(e, Case):
        return Case(r(e.scrutinee), tuple((l, b, r(body)) for l, b, body in e.arms))
    if isinstance(e, If):
        return If(r(e.cond), r(e.then), r(e.else_))
    raise TypeError(f"subst_type_in_expr: unsupported node {type(e).__name__}")
