"""Exception hierarchy shared by every layer of the calculus."""

from __future__ import annotations

from typing import Any


class DocCalcError(Exception):
    """Base class for all errors raised by doccalc."""


class ParseError(DocCalcError):
    def __init__(self, message: str, location: str | None = None):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class TypeCheckError(DocCalcError):
    """A static error. ``node`` is the offending term or template part, if known."""

    def __init__(self, message: str, node: Any = None):
        super().__init__(message)
        self.node = node


class UnboundVariable(TypeCheckError):
    def __init__(self, name: str, node: Any = None, kind: str = "variable"):
        super().__init__(f"unbound {kind} {name!r}", node)
        self.name = name


class TypeMismatch(TypeCheckError):
    def __init__(self, expected: Any, found: Any, location: str = "", node: Any = None):
        where = f" in {location}" if location else ""
        super().__init__(f"type mismatch{where}: expected {expected}, found {found}", node)
        self.expected = expected
        self.found = found
        self.location = location


class UnknownLabel(TypeCheckError):
    def __init__(self, label: str, node: Any = None):
        super().__init__(f"unknown label {label!r}", node)
        self.label = label


class NonExhaustiveCase(TypeCheckError):
    def __init__(self, missing: list[str], node: Any = None):
        super().__init__(f"case is not exhaustive; missing {', '.join(missing) or '(nothing)'}", node)
        self.missing = missing


class TemplateOutsideContext(TypeCheckError):
    def __init__(self, node: Any = None):
        super().__init__("template checked without an enclosing template context", node)


class ComponentOutsideReact(TypeCheckError):
    def __init__(self, node: Any = None, part_index: int | None = None):
        super().__init__("component parts are only allowed inside reacttpl", node)
        self.part_index = part_index


class DesugarError(DocCalcError):
    def __init__(self, message: str, node: Any = None):
        super().__init__(message)
        self.node = node


class StuckTerm(DocCalcError):
    def __init__(self, term: Any, reason: str = ""):
        super().__init__(f"stuck term{': ' + reason if reason else ''}")
        self.term = term


class FuelExhausted(DocCalcError):
    def __init__(self, fuel: int):
        super().__init__(f"evaluation did not finish within {fuel} steps")
        self.fuel = fuel


class ElementTypeMismatch(DocCalcError):
    pass


class EncodingMismatch(DocCalcError):
    pass


class UnknownTarget(DocCalcError):
    def __init__(self, target: str):
        super().__init__(f"reference to unknown section id {target!r}")
        self.target = target


class RefValidationError(DocCalcError):
    def __init__(self, errors: list):
        super().__init__("; ".join(str(e) for e in errors))
        self.errors = errors


class PropTypeMismatch(DocCalcError):
    pass


class UnknownComponent(DocCalcError):
    pass


class UnknownInstance(DocCalcError):
    def __init__(self, inst_id: int):
        super().__init__(f"signal addressed to unknown instance {inst_id}")
        self.inst_id = inst_id
