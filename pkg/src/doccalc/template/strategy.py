"""Choosing between the two tree elaborations, and checking that they agree.

A tree template without splices can also be elaborated as a fragment
template. ``retarget`` switches every template where the switch keeps the
program well typed at the same type."""

from __future__ import annotations

import dataclasses
import random
from dataclasses import dataclass, field

from ..doc.bridge import nodes_from_value
from ..errors import DocCalcError
from ..kernel.context import TyCtxt
from ..kernel.evaluate import evaluate
from ..kernel.stdlib import ATTR, NODE_TY, build_list, nil, str_list, variant
from ..kernel.terms import BoolLit, Let, RecordLit, StrLit
from ..kernel.typecheck import typecheck
from ..kernel.types import Type, alpha_eq
from .desugar import desugar
from .syntax import FragTpl, Template, TemplateExpr, TreeTpl
from .preservation import ENV, RandomTemplates, base_context

STRATEGIES = ("splice", "fragment")


def _is_node(x) -> bool:
    return dataclasses.is_dataclass(x) and not isinstance(x, type) and not isinstance(x, Type.__args__)


def template_exprs(e) -> list:
    """Template expressions in ``e``, outermost first, in source order."""
    found = []

    def walk(x):
        if isinstance(x, tuple):
            for y in x:
                walk(y)
        elif _is_node(x):
            if isinstance(x, TemplateExpr):
                found.append(x)
            for f in dataclasses.fields(x):
                walk(getattr(x, f.name))

    walk(e)
    return found


def replace_node(e, target, replacement):
    """Rebuild ``e`` with the node ``target`` (by identity) swapped out."""
    def go(x):
        if x is target:
            return replacement
        if isinstance(x, tuple):
            items = tuple(go(y) for y in x)
            return x if all(a is b for a, b in zip(items, x)) else items
        if _is_node(x):
            changes = {}
            for f in dataclasses.fields(x):
                old = getattr(x, f.name)
                new = go(old)
                if new is not old:
                    changes[f.name] = new
            return dataclasses.replace(x, **changes) if changes else x
        return x

    return go(e)


def retarget(e, strategy: str, ctx: TyCtxt | None = None):
    """Switch tree templates to fragment templates (``fragment``) or back
    (``splice``) wherever that leaves the type of ``e`` unchanged."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    source, target = (TreeTpl, FragTpl) if strategy == "fragment" else (FragTpl, TreeTpl)
    expected = typecheck(ctx, e)
    for t in template_exprs(e):
        if type(t) is not source:
            continue
        candidate = replace_node(e, t, target(t.template))
        try:
            if alpha_eq(typecheck(ctx, candidate), expected):
                e = candidate
        except DocCalcError:
            pass
    return e


# -- splice and fragment pipelines agree -------------------------------------

def closing_values() -> dict:
    """Concrete values for the free variables the random templates use."""
    para = variant(NODE_TY, "node", RecordLit((
        ("name", StrLit("para")),
        ("attrs", nil(ATTR)),
        ("children", build_list(NODE_TY, [variant(NODE_TY, "text", StrLit("t"))])),
    )))
    return {
        "s": StrLit("hi"),
        "b": BoolLit(True),
        "xs": str_list(["i", "j", "k"]),
        "n": para,
        "ns": build_list(NODE_TY, [para, variant(NODE_TY, "text", StrLit("u"))]),
    }


def close(e, values: dict):
    for name, value in reversed(list(values.items())):
        e = Let(name, value, e)
    return e


@dataclass
class EquivalenceReport:
    compared: int = 0
    attempts: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def both_strategies(t: Template, ctx: TyCtxt | None = None) -> bool:
    try:
        return alpha_eq(typecheck(ctx, TreeTpl(t)), typecheck(ctx, FragTpl(t)))
    except DocCalcError:
        return False


def run_pipeline(e, fuel: int = 1_000_000):
    return nodes_from_value(evaluate(desugar(e), fuel))


def check_strategy_equivalence(seed: int = 11, count: int = 500, min_size: int = 3, max_size: int = 10) -> EquivalenceReport:
    rng = random.Random(seed)
    gen = RandomTemplates(rng)
    ctx = base_context()
    values = closing_values()
    report = EquivalenceReport()
    while report.compared < count:
        report.attempts += 1
        t = gen.template(NODE_TY, dict(ENV), rng.randint(min_size, max_size))
        if not both_strategies(t, ctx):
            continue
        tree = run_pipeline(close(TreeTpl(t), values))
        frag = run_pipeline(close(FragTpl(t), values))
        report.compared += 1
        if tree != frag:
            report.mismatches.append((t, tree, frag))
    return report
