"""Kernel expressions. Every binder carries its type annotation so that
types can always be synthesized."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .types import Exists, Mu, Sum, Type

PRIM_NAMES = ("map", "flatten", "append", "join", "rev", "str-eq")


@dataclass(frozen=True)
class StrLit:
    value: str


@dataclass(frozen=True)
class BoolLit:
    value: bool


@dataclass(frozen=True)
class Concat:
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable names must be non-empty")


@dataclass(frozen=True)
class Lambda:
    param: str
    annot: Type
    body: Expr


@dataclass(frozen=True)
class App:
    fn: Expr
    arg: Expr


@dataclass(frozen=True)
class Fix:
    name: str
    annot: Type
    body: Expr


@dataclass(frozen=True)
class Let:
    name: str
    bound: Expr
    body: Expr


@dataclass(frozen=True)
class RecordLit:
    fields: tuple[tuple[str, Expr], ...]

    def get(self, label: str) -> Expr | None:
        for name, e in self.fields:
            if name == label:
                return e
        return None


@dataclass(frozen=True)
class Project:
    expr: Expr
    label: str


@dataclass(frozen=True)
class Inject:
    expr: Expr
    label: str
    annot: Sum


@dataclass(frozen=True)
class Case:
    scrutinee: Expr
    arms: tuple[tuple[str, str, Expr], ...]  # (label, binder, body)


@dataclass(frozen=True)
class Fold:
    annot: Mu
    expr: Expr


@dataclass(frozen=True)
class Unfold:
    annot: Mu
    expr: Expr


@dataclass(frozen=True)
class TyLambda:
    tyvar: str
    body: Expr


@dataclass(frozen=True)
class TyApp:
    expr: Expr
    type_arg: Type


@dataclass(frozen=True)
class Pack:
    expr: Expr
    witness: Type
    annot: Exists


@dataclass(frozen=True)
class Unpack:
    binder: str
    tyvar: str
    packed: Expr
    body: Expr


@dataclass(frozen=True)
class If:
    cond: Expr
    then: Expr
    else_: Expr


@dataclass(frozen=True)
class Prim:
    name: str
    type_args: tuple[Type, ...]
    args: tuple[Expr, ...]

    def __post_init__(self):
        if self.name not in PRIM_NAMES:
            raise ValueError(f"unknown primitive {self.name!r}")


KernelExpr = Union[
    StrLit, BoolLit, Concat, Var, Lambda, App, Fix, Let, RecordLit, Project, Inject,
    Case, Fold, Unfold, TyLambda, TyApp, Pack, Unpack, If, Prim,
]
# Template expressions (doccalc.template.syntax) are also Exprs; the alias is
# kept loose so annotations don't force an import cycle.
Expr = object


def is_value(e) -> bool:
    cached = e.__dict__.get("_isval")
    if cached is not None:
        return cached
    if isinstance(e, (StrLit, BoolLit, Lambda, TyLambda)):
        result = True
    elif isinstance(e, RecordLit):
        result = all(is_value(v) for _, v in e.fields)
    elif isinstance(e, (Inject, Pack)):
        result = is_value(e.expr)
    elif isinstance(e, Fold):
        result = is_value(e.expr)
    else:
        result = False
    object.__setattr__(e, "_isval", result)
    return result


def children(e) -> list:
    """Immediate sub-expressions of a kernel term (no binder information)."""
    if isinstance(e, (StrLit, BoolLit, Var)):
        return []
    if isinstance(e, Concat):
        return [e.lhs, e.rhs]
    if isinstance(e, (Lambda, Fix, TyLambda)):
        return [e.body]
    if isinstance(e, App):
        return [e.fn, e.arg]
    if isinstance(e, Let):
        return [e.bound, e.body]
    if isinstance(e, RecordLit):
        return [v for _, v in e.fields]
    if isinstance(e, (Project, Inject, Fold, Unfold, Pack)):
        return [e.expr]
    if isinstance(e, TyApp):
        return [e.expr]
    if isinstance(e, Case):
        return [e.scrutinee] + [body for _, _, body in e.arms]
    if isinstance(e, Unpack):
        return [e.packed, e.body]
    if isinstance(e, If):
        return [e.cond, e.then, e.else_]
    if isinstance(e, Prim):
        return list(e.args)
    raise TypeError(f"not a kernel expression: {type(e).__name__}")
