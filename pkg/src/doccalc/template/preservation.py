"""Desugaring preserves types: whenever a template expression typechecks,
its desugaring typechecks to the same type.

Checked exhaustively over every small template from a bounded grammar and
on randomly generated larger well-typed templates."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from ..errors import DocCalcError, TypeCheckError
from ..kernel.context import EMPTY, TyCtxt
from ..kernel.stdlib import NODE_LIST, NODE_TY, REACT_NODE, str_list, list_type
from ..kernel.terms import BoolLit, Concat, Prim, StrLit, Var
from ..kernel.typecheck import typecheck
from ..kernel.types import BOOL, STR, Type, alpha_eq, list_element
from .desugar import contains_template, desugar
from .syntax import (
    Component, FlowTpl, Foreach, FragTpl, IfPart, Interp, Lit, NodePart, ReactTpl, Set,
    SpliceList, StrTpl, Template, TreeTpl,
)
from .typing import CONTEXT_OF

TEMPLATE_KINDS = (StrTpl, TreeTpl, FragTpl, FlowTpl, ReactTpl)

# free variables available to every generated template
ENV: dict[str, Type] = {
    "s": STR,
    "b": BOOL,
    "xs": list_type(STR),
    "n": NODE_TY,
    "ns": NODE_LIST,
}


def base_context() -> TyCtxt:
    ctx = EMPTY
    for name, ty in ENV.items():
        ctx = ctx.bind(name, ty)
    return ctx


@dataclass
class PreservationReport:
    checked: int = 0
    accepted: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def check_one(ctx: TyCtxt, e, report: PreservationReport | None = None):
    """Compare the types of ``e`` and of its desugaring. Returns a
    counterexample description, or None (also when ``e`` is rejected)."""
    if report is not None:
        report.checked += 1
    try:
        expected = typecheck(ctx, e)
    except (TypeCheckError, DocCalcError):
        return None
    if report is not None:
        report.accepted += 1
    try:
        sugar_free = desugar(e, ctx)
        if contains_template(sugar_free):
            problem = "template left after desugaring"
        else:
            found = typecheck(ctx, sugar_free)
            problem = None if alpha_eq(expected, found) else f"{expected} became {found}"
    except DocCalcError as exc:
        problem = f"{type(exc).__name__}: {exc}"
    if problem is not None:
        found = (e, problem)
        if report is not None:
            report.counterexamples.append(found)
        return found
    return None


# -- exhaustive enumeration --------------------------------------------------

def _leaf_parts() -> list:
    return [
        Lit("a"),
        Interp(Var("s")),
        Interp(Var("x")),
        Set("x", StrLit("v")),
        SpliceList(Var("xs")),
        SpliceList(Var("ns")),
        Component(StrLit("counter"), Var("s")),
    ]


class TemplateEnumerator:
    """All templates whose total part count (nested parts included) is
    exactly ``k``, memoised by size."""

    def __init__(self):
        self.templates: dict[int, list[Template]] = {0: [Template(())]}
        self.parts: dict[int, list] = {}

    def parts_of_size(self, k: int) -> list:
        if k in self.parts:
            return self.parts[k]
        out = []
        if k == 1:
            out.extend(_leaf_parts())
        inner = k - 1
        for a in range(inner + 1):
            for t1, t2 in product(self.of_size(a), self.of_size(inner - a)):
                out.append(IfPart(Var("b"), t1, t2))
        for body in self.of_size(inner):
            out.append(Foreach(Var("xs"), "x", body))
            out.append(Foreach(Var("ns"), "x", body))
            out.append(NodePart("section", (("id", Var("s")),), body))
        self.parts[k] = out
        return out

    def of_size(self, k: int) -> list[Template]:
        if k in self.templates:
            return self.templates[k]
        out = []
        for first in range(1, k + 1):
            for p in self.parts_of_size(first):
                for rest in self.of_size(k - first):
                    out.append(Template((p,) + rest.parts))
        self.templates[k] = out
        return out

    def up_to(self, k: int):
        for size in range(k + 1):
            yield from self.of_size(size)


def check_exhaustive(max_size: int = 4, kinds=TEMPLATE_KINDS, report: PreservationReport | None = None) -> PreservationReport:
    report = report if report is not None else PreservationReport()
    ctx = base_context()
    for t in TemplateEnumerator().up_to(max_size):
        for kind in kinds:
            check_one(ctx, kind(t), report)
    return report


# -- random well-typed templates ----------------------------------------------

class RandomTemplates:
    """Type-directed generator: every part is chosen to fit the current
    template context and the variables in scope, so almost everything it
    produces is accepted by the typing rules."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.fresh = 0

    def name(self) -> str:
        self.fresh += 1
        return f"v{self.fresh}"

    def template_expr(self, size: int, env: dict[str, Type] | None = None):
        kind = self.rng.choice(TEMPLATE_KINDS)
        env = dict(ENV if env is None else env)
        return kind(self.template(CONTEXT_OF[kind], env, size))

    def template(self, elem: Type, env: dict, size: int) -> Template:
        parts = []
        env = dict(env)
        while size > 0:
            part, used = self.part(elem, env, size)
            parts.append(part)
            size -= used
            if isinstance(part, Set):
                env[part.name] = typecheck(_ctx(env), part.expr)
        return Template(tuple(parts))

    def split(self, budget: int) -> int:
        return self.rng.randint(0, max(0, budget))

    def part(self, elem: Type, env: dict, size: int):
        rng = self.rng
        tree = elem != STR
        choices = ["lit", "interp", "set", "if", "foreach", "splice"]
        if tree:
            choices += ["node", "node"]
        if elem == REACT_NODE:
            choices.append("component")
        if elem not in (STR, NODE_TY, REACT_NODE):  # fragments take no splices
            choices.remove("splice")
        kind = rng.choice(choices)
        inner = size - 1
        if kind == "lit":
            return Lit(rng.choice(["a", "b c", "\n\n", ""])), 1
        if kind == "interp":
            return Interp(self.expr_of(elem, env, allow_text=tree)), 1
        if kind == "set":
            name = rng.choice([self.name(), "x"])
            return Set(name, self.any_expr(env, inner)), 1
        if kind == "if":
            left = self.split(inner)
            return IfPart(self.bool_expr(env), self.template(elem, env, left),
                          self.template(elem, env, inner - left)), size
        if kind == "foreach":
            source = self.list_expr(env)
            binder = rng.choice([self.name(), "x"])
            body_env = dict(env)
            body_env[binder] = list_element(typecheck(_ctx(env), source))
            return Foreach(source, binder, self.template(elem, body_env, inner)), size
        if kind == "splice":
            return SpliceList(self.list_of(elem, env, inner)), 1
        if kind == "node":
            attrs = tuple((f"k{i}", self.str_expr(env, 0)) for i in range(rng.randint(0, 2)))
            return NodePart(rng.choice(["para", "bold", "section"]), attrs, self.template(elem, env, inner)), size
        return Component(StrLit("counter"), self.any_expr(env, 0)), 1

    # expressions of a requested type, from variables in scope or literals

    def vars_of(self, env: dict, ty: Type) -> list[str]:
        return sorted(name for name, t in env.items() if alpha_eq(t, ty))

    def expr_of(self, elem: Type, env: dict, allow_text: bool):
        candidates = [Var(v) for v in self.vars_of(env, elem)]
        if allow_text or elem == STR:
            candidates.append(self.str_expr(env, 0))
        return self.rng.choice(candidates) if candidates else self.str_expr(env, 0)

    def str_expr(self, env: dict, budget: int):
        options = [StrLit(self.rng.choice(["p", "q"]))] + [Var(v) for v in self.vars_of(env, STR)]
        e = self.rng.choice(options)
        if budget > 0 and self.rng.random() < 0.3:
            return StrTpl(self.template(STR, env, min(budget, 3)))
        if self.rng.random() < 0.2:
            return Concat(e, self.rng.choice(options))
        return e

    def bool_expr(self, env: dict):
        options = [BoolLit(True), BoolLit(False)] + [Var(v) for v in self.vars_of(env, BOOL)]
        if self.rng.random() < 0.2:
            return Prim("str-eq", (), (self.str_expr(env, 0), self.str_expr(env, 0)))
        return self.rng.choice(options)

    def list_expr(self, env: dict):
        lists = [Var(v) for v, t in sorted(env.items()) if list_element(t) is not None]
        lists.append(str_list(["i", "j"]))
        return self.rng.choice(lists)

    def list_of(self, elem: Type, env: dict, budget: int):
        wanted = list_type(elem)
        options = [Var(v) for v in self.vars_of(env, wanted)]
        if elem == STR:
            options.append(str_list(["m"]))
        if elem == NODE_TY and budget > 0:
            options.append(TreeTpl(self.template(NODE_TY, env, min(budget, 3))))
        if not options:
            return self.empty_list(elem)
        return self.rng.choice(options)

    @staticmethod
    def empty_list(elem: Type):
        from ..kernel.stdlib import nil

        return nil(elem)

    def any_expr(self, env: dict, budget: int):
        pick = self.rng.random()
        if pick < 0.4:
            return self.str_expr(env, budget)
        if pick < 0.6:
            return self.bool_expr(env)
        if pick < 0.8 and budget > 0:
            return TreeTpl(self.template(NODE_TY, env, min(budget, 3)))
        return Var(self.rng.choice(sorted(env)))


def _ctx(env: dict) -> TyCtxt:
    ctx = EMPTY
    for name, ty in env.items():
        ctx = ctx.bind(name, ty)
    return ctx


def check_random(seed: int = 42, count: int = 1000, min_size: int = 5, max_size: int = 12,
                 report: PreservationReport | None = None) -> PreservationReport:
    report = report if report is not None else PreservationReport()
    rng = random.Random(seed)
    gen = RandomTemplates(rng)
    ctx = base_context()
    for _ in range(count):
        e = gen.template_expr(rng.randint(min_size, max_size))
        check_one(ctx, e, report)
    return report


def check_preservation(seed: int = 42, count: int = 1000, exhaustive_size: int = 4) -> PreservationReport:
    report = check_exhaustive(exhaustive_size)
    return check_random(seed, count, report=report)
