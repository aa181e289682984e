"""Randomized check that the incremental reference strategy renders the
same articles as the simple one, and that dirty catches every change of
section numbering."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..cli.serialize import canonical_json
from ..doc.nodes import Node, Text
from ..kernel.terms import StrLit
from ..refs import sections
from .components import counter, label, toggle_section
from .runtime import ComponentDef, Elem, Runtime, dirty, doc_view, instance_ids
from .strategies import RunStats, run_incr, run_simple, trajectory

SIGNALS = ("click", "toggle", "swap", "hide", "noop")
MAX_NESTING = 3


@dataclass
class AgreementReport:
    documents: int = 0
    steps: int = 0
    mismatches: list = field(default_factory=list)
    missed_changes: list = field(default_factory=list)
    numbering_changes: int = 0
    sections_calls_simple: int = 0
    sections_calls_incr: int = 0

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.missed_changes


def wrapper(key: str, tag: str, children: list[Elem], mode: str) -> ComponentDef:
    """A component around child components. State is a click count and a
    visibility flag; "swap" changes the children's props (so they are
    re-instantiated) and "hide" removes or restores them."""

    def init(props):
        return (0, True)

    def update(signal, state):
        clicks, shown = state
        if signal == "click":
            return (clicks + 1, shown)
        if signal == "swap" and mode == "swap":
            return (clicks + 1, shown)
        if signal == "hide" and mode == "hide":
            return (clicks, not shown)
        return state

    def view(state):
        clicks, shown = state
        kids = []
        if shown:
            for c in children:
                props = c.props
                if mode == "swap":
                    props = StrLit(f"{props.value}.{clicks % 2}")
                kids.append(Elem(c.key, props))
        return Node(tag, (), (Node("para", (), (Text(f"{key}:{clicks}"),)), *kids))

    return ComponentDef(key, init, update, view)


class _DocBuilder:
    def __init__(self, rng: random.Random, index: int):
        self.rng = rng
        self.index = index
        self.components: list[ComponentDef] = [counter(), label(), toggle_section()]
        self.fresh = 0

    def name(self, stem: str) -> str:
        self.fresh += 1
        return f"{stem}{self.index}-{self.fresh}"

    def leaf(self) -> Elem:
        kind = self.rng.choice(("counter", "label", "toggle-section", "toggle-section"))
        if kind == "counter":
            return Elem("counter", StrLit(self.rng.choice(("|", "*", "ab"))))
        if kind == "label":
            return Elem("label", StrLit(self.name("text")))
        return Elem("toggle-section", StrLit(self.name("t")))

    def elem(self, depth: int) -> Elem:
        if depth >= MAX_NESTING or self.rng.random() < 0.5:
            return self.leaf()
        kids = [self.elem(depth + 1) for _ in range(self.rng.randint(1, 3))]
        key = self.name("w")
        tag = self.rng.choice(("figure", "section", "item"))
        mode = self.rng.choice(("static", "swap", "hide"))
        self.components.append(wrapper(key, tag, kids, mode))
        return Elem(key, StrLit(key))

    def document(self) -> list:
        static_ids = [f"s{k}" for k in range(self.rng.randint(1, 3))]
        blocks = []
        for ident in static_ids:
            body = [Node("para", (), (Text(ident),))]
            if self.rng.random() < 0.5:
                body.append(self.elem(1))
            blocks.append(Node("section", (("id", ident),), tuple(body)))
        for _ in range(self.rng.randint(1, 4)):
            blocks.append(self.elem(1))
        for _ in range(self.rng.randint(1, 3)):
            target = self.rng.choice(static_ids)
            blocks.append(Node("para", (), (Text("see "), Node("ref", (("target", target),)))))
        self.rng.shuffle(blocks)
        return blocks


def random_document(rng: random.Random, index: int = 0):
    """A fresh runtime and an instantiated reactive document."""
    builder = _DocBuilder(rng, index)
    tree = builder.document()
    runtime = Runtime(builder.components)
    return runtime, runtime.materialize(tree)


def random_trace(rng: random.Random, runtime: Runtime, v0, steps: int) -> list[dict]:
    """Signals chosen against the instances alive at each step."""
    rt = runtime.copy()
    v, trace = v0, []
    for _ in range(steps):
        ids = sorted(instance_ids(v))
        chosen = rng.sample(ids, k=rng.randint(0, min(3, len(ids))))
        signals = {i: rng.choice(SIGNALS) for i in chosen}
        trace.append(signals)
        v = rt.doc_step(signals, v)
    return trace


def check_agreement(seed: int = 0, count: int = 200, steps: int = 50) -> AgreementReport:
    rng = random.Random(seed)
    report = AgreementReport()
    for index in range(count):
        runtime, v0 = random_document(rng, index)
        trace = random_trace(rng, runtime, v0, steps)
        simple_stats, incr_stats = RunStats(), RunStats()
        simple = run_simple(v0, trace, runtime.copy(), simple_stats)
        incr = run_incr(v0, trace, runtime.copy(), incr_stats)
        report.documents += 1
        report.steps += len(trace)
        report.sections_calls_simple += simple_stats.sections_calls
        report.sections_calls_incr += incr_stats.sections_calls
        for i, (a, b) in enumerate(zip(simple, incr)):
            if canonical_json(a) != canonical_json(b):
                report.mismatches.append((index, i))
                break
        states = trajectory(v0, trace, runtime.copy())
        previous = sections(doc_view(states[0]))
        for i in range(1, len(states)):
            current = sections(doc_view(states[i]))
            if current != previous:
                report.numbering_changes += 1
                if not dirty(states[i - 1], states[i]):
                    report.missed_changes.append((index, i))
            previous = current
    return report
