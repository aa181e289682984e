"""Template syntax: a template is a list of parts, and a template
expression says which kind of document the template builds."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Template:
    parts: tuple = ()

    def __post_init__(self):
        if not isinstance(self.parts, tuple):
            object.__setattr__(self, "parts", tuple(self.parts))

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)


def tpl(*parts) -> Template:
    return Template(tuple(parts))


# -- parts -----------------------------------------------------------------

@dataclass(frozen=True)
class Lit:
    value: str


@dataclass(frozen=True)
class Interp:
    """A bare expression interpolated into the template."""

    expr: object


@dataclass(frozen=True)
class Set:
    name: str
    expr: object


@dataclass(frozen=True)
class IfPart:
    cond: object
    then: Template
    else_: Template = Template()


@dataclass(frozen=True)
class Foreach:
    source: object
    binder: str
    body: Template


@dataclass(frozen=True)
class NodePart:
    name: str
    attrs: tuple = ()  # (key, Expr) pairs
    children: Template = Template()

    def __post_init__(self):
        if not isinstance(self.attrs, tuple):
            object.__setattr__(self, "attrs", tuple(tuple(a) for a in self.attrs))


@dataclass(frozen=True)
class SpliceList:
    expr: object


@dataclass(frozen=True)
class Component:
    component: object
    props: object


PART_TYPES = (Lit, Interp, Set, IfPart, Foreach, NodePart, SpliceList, Component)


# -- template expressions --------------------------------------------------

class TemplateExpr:
    """Base class of the template expressions embedded in kernel terms."""

    __slots__ = ()
    keyword = ""


@dataclass(frozen=True)
class StrTpl(TemplateExpr):
    template: Template
    keyword = "strtpl"


@dataclass(frozen=True)
class TreeTpl(TemplateExpr):
    template: Template
    keyword = "treetpl"


@dataclass(frozen=True)
class FragTpl(TemplateExpr):
    template: Template
    keyword = "fragtpl"


@dataclass(frozen=True)
class FlowTpl(TemplateExpr):
    template: Template
    keyword = "flowtpl"


@dataclass(frozen=True)
class ReactTpl(TemplateExpr):
    template: Template
    keyword = "reacttpl"


TEMPLATE_EXPRS = {cls.keyword: cls for cls in (StrTpl, TreeTpl, FragTpl, FlowTpl, ReactTpl)}


def subterms(part) -> list:
    """Kernel expressions directly inside a part (not nested templates)."""
    if isinstance(part, Interp):
        return [part.expr]
    if isinstance(part, (Set, SpliceList)):
        return [part.expr]
    if isinstance(part, IfPart):
        return [part.cond]
    if isinstance(part, Foreach):
        return [part.source]
    if isinstance(part, NodePart):
        return [e for _, e in part.attrs]
    if isinstance(part, Component):
        return [part.component, part.props]
    return []


def part_size(part) -> int:
    """Number of parts in ``part`` including those of nested templates."""
    if isinstance(part, IfPart):
        return 1 + template_size(part.then) + template_size(part.else_)
    if isinstance(part, Foreach):
        return 1 + template_size(part.body)
    if isinstance(part, NodePart):
        return 1 + template_size(part.children)
    return 1


def template_size(t: Template) -> int:
    return sum(part_size(p) for p in t.parts)
