from __future__ import annotations

from dataclasses import dataclass

from .types import Type


@dataclass(frozen=True)
class TermBinding:
    name: str
    type: Type


@dataclass(frozen=True)
class TypeVarBinding:
    name: str


@dataclass(frozen=True)
class TplCtx:
    type: Type


class TyCtxt:
    """An immutable typing context. Later entries shadow earlier ones."""

    __slots__ = ("entries",)

    def __init__(self, entries=()):
        self.entries = tuple(entries)

    def bind(self, name: str, ty: Type) -> TyCtxt:
        return TyCtxt(self.entries + (TermBinding(name, ty),))

    def bind_tyvar(self, name: str) -> TyCtxt:
        return TyCtxt(self.entries + (TypeVarBinding(name),))

    def with_template(self, ty: Type) -> TyCtxt:
        """Enter a template context, replacing any enclosing one."""
        kept = tuple(e for e in self.entries if not isinstance(e, TplCtx))
        return TyCtxt(kept + (TplCtx(ty),))

    def lookup(self, name: str) -> Type | None:
        for entry in reversed(self.entries):
            if isinstance(entry, TermBinding) and entry.name == name:
                return entry.type
        return None

    def has_tyvar(self, name: str) -> bool:
        return any(isinstance(e, TypeVarBinding) and e.name == name for e in self.entries)

    def tyvars(self) -> set[str]:
        return {e.name for e in self.entries if isinstance(e, TypeVarBinding)}

    def template(self) -> Type | None:
        for entry in reversed(self.entries):
            if isinstance(entry, TplCtx):
                return entry.type
        return None

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        return f"TyCtxt({list(self.entries)!r})"


EMPTY = TyCtxt()
