"""Small-step call-by-value reduction, left to right.

``step`` finds the leftmost-innermost redex allowed by the evaluation
contexts and contracts it; ``evaluate`` iterates it under a fuel budget.
"""

from __future__ import annotations

from ..errors import FuelExhausted, StuckTerm
from .stdlib import build_list, list_items
from .subst import subst, subst_type_in_expr
from .terms import (
    App, BoolLit, Case, Concat, Fix, Fold, If, Inject, Lambda, Let, Pack, Prim, Project,
    RecordLit, StrLit, TyApp, TyLambda, Unfold, Unpack, Var, is_value,
)

DEFAULT_FUEL = 1_000_000


def step(e):
    """One reduction step, or None when ``e`` is already a value."""
    if is_value(e):
        return None
    return _step(e)


def _step(e):
    if isinstance(e, Concat):
        if not is_value(e.lhs):
            return Concat(_step(e.lhs), e.rhs)
        if not is_value(e.rhs):
            return Concat(e.lhs, _step(e.rhs))
        if isinstance(e.lhs, StrLit) and isinstance(e.rhs, StrLit):
            return StrLit(e.lhs.value + e.rhs.value)
        raise StuckTerm(e, "concatenation of non-strings")
    if isinstance(e, App):
        if not is_value(e.fn):
            return App(_step(e.fn), e.arg)
        if not is_value(e.arg):
            return App(e.fn, _step(e.arg))
        if isinstance(e.fn, Lambda):
            return subst(e.fn.body, e.fn.param, e.arg)
        raise StuckTerm(e, "application of a non-function")
    if isinstance(e, Fix):
        return subst(e.body, e.name, e)
    if isinstance(e, Let):
        if not is_value(e.bound):
            return Let(e.name, _step(e.bound), e.body)
        return subst(e.body, e.name, e.bound)
    if isinstance(e, RecordLit):
        for i, (label, v) in enumerate(e.fields):
            if not is_value(v):
                fields = list(e.fields)
                fields[i] = (label, _step(v))
                return RecordLit(tuple(fields))
        raise StuckTerm(e, "record of values is not a redex")
    if isinstance(e, Project):
        if not is_value(e.expr):
            return Project(_step(e.expr), e.label)
        if isinstance(e.expr, RecordLit):
            field = e.expr.get(e.label)
            if field is not None:
                return field
        raise StuckTerm(e, f"projection of missing label {e.label}")
    if isinstance(e, Inject):
        return Inject(_step(e.expr), e.label, e.annot)
    if isinstance(e, Case):
        if not is_value(e.scrutinee):
            return Case(_step(e.scrutinee), e.arms)
        scrut = e.scrutinee
        if isinstance(scrut, Inject):
            for label, binder, body in e.arms:
                if label == scrut.label:
                    return subst(body, binder, scrut.expr)
        raise StuckTerm(e, "case with no matching arm")
    if isinstance(e, Fold):
        return Fold(e.annot, _step(e.expr))
    if isinstance(e, Unfold):
        if not is_value(e.expr):
            return Unfold(e.annot, _step(e.expr))
        if isinstance(e.expr, Fold):
            return e.expr.expr
        raise StuckTerm(e, "unfold of a non-fold")
    if isinstance(e, TyApp):
        if not is_value(e.expr):
            return TyApp(_step(e.expr), e.type_arg)
        if isinstance(e.expr, TyLambda):
            return subst_type_in_expr(e.expr.body, e.expr.tyvar, e.type_arg)
        raise StuckTerm(e, "type application of a non-type-abstraction")
    if isinstance(e, Pack):
        return Pack(_step(e.expr), e.witness, e.annot)
    if isinstance(e, Unpack):
        if not is_value(e.packed):
            return Unpack(e.binder, e.tyvar, _step(e.packed), e.body)
        if isinstance(e.packed, Pack):
            body = subst_type_in_expr(e.body, e.tyvar, e.packed.witness)
            return subst(body, e.binder, e.packed.expr)
        raise StuckTerm(e, "unpack of a non-package")
    if isinstance(e, If):
        if not is_value(e.cond):
            return If(_step(e.cond), e.then, e.else_)
        if isinstance(e.cond, BoolLit):
            return e.then if e.cond.value else e.else_
        raise StuckTerm(e, "if on a non-boolean")
    if isinstance(e, Prim):
        for i, arg in enumerate(e.args):
            if not is_value(arg):
                args = list(e.args)
                args[i] = _step(arg)
                return Prim(e.name, e.type_args, tuple(args))
        return _delta(e)
    if isinstance(e, Var):
        raise StuckTerm(e, f"free variable {e.name}")
    raise StuckTerm(e, f"no reduction rule for {type(e).__name__}")


def _delta(e: Prim):
    """Contract a primitive whose arguments are all values."""
    try:
        if e.name == "map":
            _, b = e.type_args
            fn, xs = e.args
            return build_list(b, [App(fn, x) for x in list_items(xs)])
        if e.name == "flatten":
            (a,) = e.type_args
            return build_list(a, [x for inner in list_items(e.args[0]) for x in list_items(inner)])
        if e.name == "append":
            (a,) = e.type_args
            return build_list(a, list_items(e.args[0]) + list_items(e.args[1]))
        if e.name == "rev":
            (a,) = e.type_args
            return build_list(a, list_items(e.args[0])[::-1])
        if e.name == "join":
            parts = list_items(e.args[0])
            if not all(isinstance(p, StrLit) for p in parts):
                raise StuckTerm(e, "join of non-strings")
            return StrLit("".join(p.value for p in parts))
        if e.name == "str-eq":
            lhs, rhs = e.args
            if isinstance(lhs, StrLit) and isinstance(rhs, StrLit):
                return BoolLit(lhs.value == rhs.value)
            raise StuckTerm(e, "str-eq of non-strings")
    except StuckTerm:
        raise
    except Exception as exc:
        raise StuckTerm(e, f"malformed arguments to {e.name}: {exc}") from exc
    raise StuckTerm(e, f"unknown primitive {e.name}")


def evaluate(e, fuel: int = DEFAULT_FUEL):
    """Reduce ``e`` to a value, taking at most ``fuel`` steps."""
    steps = 0
    while not is_value(e):
        if steps >= fuel:
            raise FuelExhausted(fuel)
        e = _step(e)
        steps += 1
    return e


def trace(e, limit: int = DEFAULT_FUEL):
    """Yield ``e`` and every term it reduces to, up to ``limit`` steps."""
    yield e
    for _ in range(limit):
        nxt = step(e)
        if nxt is None:
            return
        yield nxt
        e = nxt
