"""Types of the System F core: strings, booleans, functions, labelled
records and sums, and the three binders (forall, mu, exists)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union


@dataclass(frozen=True)
class Str:
    def __str__(self) -> str:
        return format_type(self)


@dataclass(frozen=True)
class Bool:
    def __str__(self) -> str:
        return format_type(self)


@dataclass(frozen=True)
class Arrow:
    param: Type
    result: Type

    def __str__(self) -> str:
        return format_type(self)


@dataclass(frozen=True)
class Record:
    fields: tuple[tuple[str, Type], ...]

    def __post_init__(self):
        _check_distinct(self.fields, "record")

    def get(self, label: str) -> Type | None:
        for name, ty in self.fields:
            if name == label:
                return ty
        return None

    def __str__(self) -> str:
        return format_type(self)


@dataclass(frozen=True)
class Sum:
    variants: tuple[tuple[str, Type], ...]

    def __post_init__(self):
        _check_distinct(self.variants, "sum")

    def get(self, label: str) -> Type | None:
        for name, ty in self.variants:
            if name == label:
                return ty
        return None

    @property
    def labels(self) -> list[str]:
        return [name for name, _ in self.variants]

    def __str__(self) -> str:
        return format_type(self)


@dataclass(frozen=True)
class Forall:
    var: str
    body: Type

    def __str__(self) -> str:
        return format_type(self)


@dataclass(frozen=True)
class Mu:
    var: str
    body: Type

    def __str__(self) -> str:
        return format_type(self)


@dataclass(frozen=True)
class Exists:
    var: str
    body: Type

    def __str__(self) -> str:
        return format_type(self)


@dataclass(frozen=True)
class TVar:
    name: str

    def __str__(self) -> str:
        return self.name


Type = Union[Str, Bool, Arrow, Record, Sum, Forall, Mu, Exists, TVar]
Binder = (Forall, Mu, Exists)


def _memo_hash(cls):
    # types are immutable and compared constantly, so hash once per node
    base = cls.__hash__

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = base(self)
            object.__setattr__(self, "_hash", h)
        return h

    cls.__hash__ = __hash__


for _cls in (Str, Bool, Arrow, Record, Sum, Forall, Mu, Exists, TVar):
    _memo_hash(_cls)

def _check_distinct(pairs, what):
    seen = set()
    for label, _ in pairs:
        if label in seen:
            raise ValueError(f"duplicate label {label!r} in {what} type")
        seen.add(label)


STR = Str()
BOOL = Bool()
UNIT = Record(())


def free_type_vars(t: Type) -> frozenset[str]:
    cached = t.__dict__.get("_ftv")
    if cached is not None:
        return cached
    if isinstance(t, TVar):
        result = frozenset((t.name,))
    elif isinstance(t, (Str, Bool)):
        result = frozenset()
    elif isinstance(t, Arrow):
        result = free_type_vars(t.param) | free_type_vars(t.result)
    elif isinstance(t, Record):
        result = frozenset().union(*(free_type_vars(ty) for _, ty in t.fields))
    elif isinstance(t, Sum):
        result = frozenset().union(*(free_type_vars(ty) for _, ty in t.variants))
    else:
        result = free_type_vars(t.body) - {t.var}
    object.__setattr__(t, "_ftv", result)
    return result


def fresh_name(base: str, avoid: set[str] | frozenset[str]) -> str:
    stem = base.rstrip("'0123456789") or "v"
    k = 1
    while f"{stem}{k}" in avoid:
        k += 1
    return f"{stem}{k}"


def subst_type(t: Type, name: str, repl: Type) -> Type:
    """Capture-avoiding substitution t[name := repl]."""
    if name not in free_type_vars(t):
        return t
    return _subst_type(t, name, repl)


@lru_cache(maxsize=1 << 16)
def _subst_type(t: Type, name: str, repl: Type) -> Type:
    if isinstance(t, TVar):
        return repl
    if isinstance(t, Arrow):
        return Arrow(subst_type(t.param, name, repl), subst_type(t.result, name, repl))
    if isinstance(t, Record):
        return Record(tuple((l, subst_type(ty, name, repl)) for l, ty in t.fields))
    if isinstance(t, Sum):
        return Sum(tuple((l, subst_type(ty, name, repl)) for l, ty in t.variants))
    # binder; t.var != name because name is free in t
    var, body = t.var, t.body
    repl_free = free_type_vars(repl)
    if var in repl_free:
        new = fresh_name(var, repl_free | free_type_vars(body) | {name})
        body = subst_type(body, var, TVar(new))
        var = new
    return type(t)(var, subst_type(body, name, repl))


def alpha_eq(a: Type, b: Type) -> bool:
    """Structural equality up to renaming of bound variables and
    reordering of record/sum labels."""
    if a is b or a == b:
        return True
    return _alpha_cached(a, b)


@lru_cache(maxsize=1 << 16)
def _alpha_cached(a: Type, b: Type) -> bool:
    return _alpha(a, b, {}, {}, 0)


def _alpha(a, b, env_a: dict, env_b: dict, depth: int) -> bool:
    if isinstance(a, TVar) and isinstance(b, TVar):
        ia, ib = env_a.get(a.name), env_b.get(b.name)
        if ia is None and ib is None:
            return a.name == b.name
        return ia == ib
    if type(a) is not type(b):
        return False
    if isinstance(a, (Str, Bool)):
        return True
    if isinstance(a, Arrow):
        return _alpha(a.param, b.param, env_a, env_b, depth) and _alpha(
            a.result, b.result, env_a, env_b, depth
        )
    if isinstance(a, (Record, Sum)):
        pa = a.fields if isinstance(a, Record) else a.variants
        pb = dict(b.fields if isinstance(b, Record) else b.variants)
        if len(pa) != len(pb):
            return False
        for label, ty in pa:
            other = pb.get(label)
            if other is None or not _alpha(ty, other, env_a, env_b, depth):
                return False
        return True
    ea = dict(env_a)
    eb = dict(env_b)
    ea[a.var] = depth
    eb[b.var] = depth
    return _alpha(a.body, b.body, ea, eb, depth + 1)


def unfold_mu(t: Mu) -> Type:
    cached = t.__dict__.get("_unfolded")
    if cached is None:
        cached = subst_type(t.body, t.var, t)
        object.__setattr__(t, "_unfolded", cached)
    return cached


# -- pretty printing -------------------------------------------------------

_aliases: list[tuple[str, Type]] = []


def register_alias(name: str, t: Type) -> None:
    """Let ``format_type`` print ``t`` (up to alpha-equivalence) as ``name``."""
    _aliases.append((name, t))


def list_element(t: Type) -> Type | None:
    """If ``t`` is the standard list encoding ``mu a. <nil: {} | cons: {hd: T, tail: a}>``
    return T, else None."""
    if not isinstance(t, Mu) or not isinstance(t.body, Sum):
        return None
    variants = dict(t.body.variants)
    if set(variants) != {"nil", "cons"} or variants["nil"] != UNIT:
        return None
    cons = variants["cons"]
    if not isinstance(cons, Record) or {l for l, _ in cons.fields} != {"hd", "tail"}:
        return None
    if cons.get("tail") != TVar(t.var):
        return None
    hd = cons.get("hd")
    if t.var in free_type_vars(hd):
        return None
    return hd


def _needs_parens(t: Type, text: str) -> bool:
    return isinstance(t, Arrow) or text.startswith(("forall ", "mu ", "exists "))


def format_type(t: Type) -> str:
    for name, aliased in _aliases:
        if alpha_eq(t, aliased):
            return name
    if isinstance(t, Str):
        return "Str"
    if isinstance(t, Bool):
        return "Bool"
    if isinstance(t, TVar):
        return t.name
    elem = list_element(t)
    if elem is not None:
        inner = format_type(elem)
        if _needs_parens(elem, inner):
            inner = f"({inner})"
        return f"{inner} list"
    if isinstance(t, Arrow):
        left = format_type(t.param)
        if _needs_parens(t.param, left):
            left = f"({left})"
        return f"{left} -> {format_type(t.result)}"
    if isinstance(t, Record):
        return "{" + ", ".join(f"{l}: {format_type(ty)}" for l, ty in t.fields) + "}"
    if isinstance(t, Sum):
        return "<" + " | ".join(f"{l}: {format_type(ty)}" for l, ty in t.variants) + ">"
    symbol = {Forall: "forall", Mu: "mu", Exists: "exists"}[type(t)]
    return f"{symbol} {t.var}. {format_type(t.body)}"
