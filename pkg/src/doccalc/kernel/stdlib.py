"""The assumed standard library: encoded lists and pairs, the node types of
the article domain, and the type schemes of the built-in primitives."""

from __future__ import annotations

from functools import lru_cache

from ..errors import ElementTypeMismatch, EncodingMismatch, TypeCheckError
from .terms import Fold, Inject, RecordLit, StrLit, is_value
from .types import (
    BOOL, STR, UNIT, Arrow, Exists, Forall, Mu, Record, Sum, TVar, Type,
    fresh_name, free_type_vars, register_alias, subst_type,
)


@lru_cache(maxsize=None)
def list_type(elem: Type) -> Mu:
    var = "a" if "a" not in free_type_vars(elem) else fresh_name("a", free_type_vars(elem))
    return Mu(var, Sum((("nil", UNIT), ("cons", Record((("hd", elem), ("tail", TVar(var))))))))


@lru_cache(maxsize=None)
def unrolled(mu: Mu) -> Sum:
    """The sum obtained by unfolding one layer of a recursive variant type."""
    body = subst_type(mu.body, mu.var, mu)
    if not isinstance(body, Sum):
        raise TypeError(f"{mu} is not a recursive variant type")
    return body


def variant(mu: Mu, label: str, payload) -> Fold:
    """``label_mu payload``: fold a sum injection into the recursive type."""
    return Fold(mu, Inject(payload, label, unrolled(mu)))


def pair_type(a: Type, b: Type) -> Record:
    return Record((("fst", a), ("snd", b)))


def pair(a, b) -> RecordLit:
    return RecordLit((("fst", a), ("snd", b)))


UNIT_VALUE = RecordLit(())
ATTR = pair_type(STR, STR)
ATTRS = list_type(ATTR)


def struct_node(children: Type) -> Record:
    return Record((("name", STR), ("attrs", ATTRS), ("children", children)))


NODE_TY = Mu("n", Sum((("text", STR), ("node", struct_node(list_type(TVar("n")))))))


def fragment(elem: Type) -> Mu:
    var = "f" if "f" not in free_type_vars(elem) else fresh_name("f", free_type_vars(elem))
    return Mu(var, Sum((("base", elem), ("children", list_type(TVar(var))))))


FNODE = Mu("v", Sum((("text", STR), ("node", struct_node(fragment(TVar("v")))))))
NODE_FRAG = fragment(FNODE)

PENDING_INST = Exists("p", Record((("component", STR), ("props", TVar("p")))))
REACT_NODE = Mu(
    "r",
    Sum((("text", STR), ("node", struct_node(list_type(TVar("r")))), ("inst", PENDING_INST))),
)

NODE_LIST = list_type(NODE_TY)
REACT_LIST = list_type(REACT_NODE)
FRAG_LIST = list_type(NODE_FRAG)

for _name, _ty in (("NodeTy", NODE_TY), ("FNode", FNODE), ("NodeFrag", NODE_FRAG), ("ReactNode", REACT_NODE)):
    register_alias(_name, _ty)


# -- lists -----------------------------------------------------------------

def nil(elem: Type) -> Fold:
    return variant(list_type(elem), "nil", UNIT_VALUE)


def cons(elem: Type, head, tail) -> Fold:
    return variant(list_type(elem), "cons", RecordLit((("hd", head), ("tail", tail))))


def build_list(elem: Type, items) -> Fold:
    """Encode ``items`` (terms, not necessarily values) as an ``elem list``."""
    result = nil(elem)
    for item in reversed(list(items)):
        result = cons(elem, item, result)
    return result


def from_literal(elem: Type, values) -> Fold:
    from .typecheck import typecheck
    from .types import alpha_eq

    values = list(values)
    for i, v in enumerate(values):
        if not is_value(v):
            raise ElementTypeMismatch(f"list element {i} is not a value")
        try:
            found = typecheck(None, v)
        except TypeCheckError as exc:
            raise ElementTypeMismatch(f"list element {i} is ill-typed: {exc}") from exc
        if not alpha_eq(found, elem):
            raise ElementTypeMismatch(f"list element {i} has type {found}, expected {elem}")
    return build_list(elem, values)


def list_items(v) -> list:
    """Decode an encoded list value into a Python list of its elements."""
    items = []
    while True:
        if not isinstance(v, Fold) or not isinstance(v.expr, Inject):
            raise EncodingMismatch(f"not a list encoding: {type(v).__name__}")
        inj = v.expr
        if inj.label == "nil":
            return items
        if inj.label != "cons" or not isinstance(inj.expr, RecordLit):
            raise EncodingMismatch(f"unexpected list constructor {inj.label!r}")
        hd, tail = inj.expr.get("hd"), inj.expr.get("tail")
        if hd is None or tail is None:
            raise EncodingMismatch("cons cell without hd/tail")
        items.append(hd)
        v = tail


def str_list(strings) -> Fold:
    return build_list(STR, [StrLit(s) for s in strings])


# -- primitive type schemes ------------------------------------------------

_a, _b = TVar("a"), TVar("b")
PRIM_SCHEMES: dict[str, Type] = {
    "map": Forall("a", Forall("b", Arrow(Arrow(_a, _b), Arrow(list_type(_a), list_type(_b))))),
    "flatten": Forall("a", Arrow(list_type(list_type(_a)), list_type(_a))),
    "append": Forall("a", Arrow(list_type(_a), Arrow(list_type(_a), list_type(_a)))),
    "join": Arrow(list_type(STR), STR),
    "rev": Forall("a", Arrow(list_type(_a), list_type(_a))),
    "str-eq": Arrow(STR, Arrow(STR, BOOL)),
}


def prim_signature(name: str, type_args) -> tuple[list[Type], Type]:
    """Instantiate a primitive's scheme: returns (argument types, result type)."""
    params, result = _prim_signature(name, tuple(type_args))
    return list(params), result


@lru_cache(maxsize=4096)
def _prim_signature(name: str, type_args: tuple) -> tuple[tuple, Type]:
    scheme = PRIM_SCHEMES[name]
    type_args = list(type_args)
    while isinstance(scheme, Forall):
        if not type_args:
            raise TypeCheckError(f"primitive {name} expects more type arguments")
        scheme = subst_type(scheme.body, scheme.var, type_args.pop(0))
    if type_args:
        raise TypeCheckError(f"primitive {name} given too many type arguments")
    params = []
    while isinstance(scheme, Arrow):
        params.append(scheme.param)
        scheme = scheme.result
    return tuple(params), scheme


def prim_arity(name: str) -> tuple[int, int]:
    scheme = PRIM_SCHEMES[name]
    n_types = 0
    while isinstance(scheme, Forall):
        n_types += 1
        scheme = scheme.body
    n_args = 0
    while isinstance(scheme, Arrow):
        n_args += 1
        scheme = scheme.result
    return n_types, n_args
