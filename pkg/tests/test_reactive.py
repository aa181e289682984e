import pytest
from hypothesis import given, settings, strategies as st

from doccalc.cli.serialize import canonical_json
from doccalc.doc.nodes import Node, Text, node
from doccalc.errors import PropTypeMismatch, UnknownComponent, UnknownInstance
from doccalc.kernel import STR, Concat, Lambda, StrLit, Var, evaluate, variant
from doccalc.kernel.stdlib import REACT_NODE
from doccalc.reactive.components import BUILTINS, counter, kernel_component, label, toggle_section
from doccalc.reactive.runtime import (
    ComponentDef, Elem, Inst, Runtime, descendents, dirty, doc_view, instance_ids,
)
from doccalc.reactive.strategies import RunStats, run_incr, run_simple, trajectory
from doccalc.template.desugar import desugar
from doccalc.template.syntax import Component, Lit, NodePart, ReactTpl, tpl
from doccalc.reactive.bridge import react_nodes_from_value


def runtime():
    return Runtime(BUILTINS.values())


def counter_doc(rt, props="|"):
    return rt.materialize([node("para", Elem("counter", StrLit(props)))])


# -- components --------------------------------------------------------------

@given(st.text(alphabet="ab|", min_size=1, max_size=2), st.integers(0, 8))
def test_counter_matches_repetition(props, clicks):
    rt = runtime()
    v = counter_doc(rt, props)
    [inst] = v[0].children
    for _ in range(clicks):
        v = rt.doc_step({inst.id: "click"}, v)
    assert doc_view(v) == [node("para", Text(props * clicks))]


def test_unknown_signals_leave_state_alone():
    rt = runtime()
    v = counter_doc(rt)
    assert rt.doc_step({0: "wobble"}, v) == v


def test_toggle_section_shows_and_hides():
    rt = runtime()
    v = rt.materialize([Elem("toggle-section", StrLit("extra"))])
    assert doc_view(v) == [node("para", Text("(hidden)"))]
    v = rt.doc_step({0: "toggle"}, v)
    assert doc_view(v) == [Node("section", (("id", "extra"),), (node("para", Text("extra")),))]


def test_label_is_static():
    rt = runtime()
    v = rt.materialize([Elem("label", StrLit("hi"))])
    assert doc_view(rt.doc_step({0: "click"}, v)) == [Text("hi")]


def test_unknown_component():
    with pytest.raises(UnknownComponent):
        runtime().materialize([Elem("nope", StrLit(""))])


def test_props_are_type_checked():
    from doccalc.kernel import BoolLit

    with pytest.raises(PropTypeMismatch):
        runtime().materialize([Elem("counter", BoolLit(True))])


def test_instance_ids_are_fresh():
    rt = runtime()
    v = rt.materialize([Elem("counter", StrLit("a")), Elem("label", StrLit("b"))])
    assert instance_ids(v) == {0, 1}


def test_kernel_component():
    state = Lambda("p", STR, Var("p"))
    update = Lambda("sig", STR, Lambda("s", STR, Concat(Var("s"), Var("sig"))))
    view = Lambda("s", STR, variant(REACT_NODE, "text", Var("s")))
    echo = kernel_component("echo", state, update, view, STR, STR)
    rt = Runtime([echo])
    v = rt.materialize([Elem("echo", StrLit(">"))])
    v = rt.doc_step({0: "a"}, v)
    v = rt.doc_step({0: "b"}, v)
    assert doc_view(v) == [Text(">ab")]


def test_react_template_desugars_to_pending_instances():
    e = ReactTpl(tpl(NodePart("para", (), tpl(Lit("n="), Component(StrLit("counter"), StrLit("+"))))))
    tree = react_nodes_from_value(evaluate(desugar(e)))
    assert tree == [Node("para", (), (Text("n="), Elem("counter", StrLit("+"), STR)))]
    v = runtime().materialize(tree)
    assert isinstance(v[0].children[1], Inst)


# -- reconciliation --------------------------------------------------------

def parent(child_props):
    """A component whose view holds one counter child; "swap" changes its props."""
    return ComponentDef(
        "parent",
        lambda p: 0,
        lambda s, n: n + 1 if s == "swap" else n,
        lambda n: node("figure", Elem("counter", StrLit(child_props(n)))),
    )


def test_reconcile_keeps_child_state_when_props_match():
    rt = Runtime([counter(), parent(lambda n: "|")])
    v = rt.materialize([Elem("parent", None)])
    child = v[0].node.children[0]
    v = rt.doc_step({child.id: "click"}, v)
    v = rt.doc_step({v[0].id: "swap"}, v)  # view recomputed, same child props
    assert doc_view(v) == [node("figure", Text("|"))]
    assert v[0].node.children[0].id == child.id


def test_reconcile_reinstantiates_when_props_change():
    rt = Runtime([counter(), parent(lambda n: "|" * (n + 1))])
    v = rt.materialize([Elem("parent", None)])
    child = v[0].node.children[0]
    v = rt.doc_step({child.id: "click"}, v)
    v = rt.doc_step({v[0].id: "swap"}, v)
    fresh = v[0].node.children[0]
    assert fresh.id != child.id
    assert doc_view(v) == [node("figure", Text(""))]


def test_signals_reach_a_reconciled_child_in_the_same_step():
    rt = Runtime([counter(), parent(lambda n: "|")])
    v = rt.materialize([Elem("parent", None)])
    child = v[0].node.children[0]
    v = rt.doc_step({v[0].id: "swap", child.id: "click"}, v)
    assert doc_view(v) == [node("figure", Text("|"))]


def test_stepping_is_pure():
    rt = runtime()
    v = counter_doc(rt)
    before = canonical_json(doc_view(v))
    rt.doc_step({0: "click"}, v)
    assert canonical_json(doc_view(v)) == before


# -- dirty -----------------------------------------------------------------

def test_dirty_ignores_unchanged_and_section_free_steps():
    rt = runtime()
    v = counter_doc(rt)
    assert not dirty(v, v)
    assert not dirty(v, rt.doc_step({0: "click"}, v))


def test_dirty_fires_on_a_toggle():
    rt = runtime()
    v = rt.materialize([Elem("toggle-section", StrLit("t")), Elem("counter", StrLit("|"))])
    toggled = rt.doc_step({0: "toggle"}, v)
    assert dirty(v, toggled)
    assert not dirty(toggled, rt.doc_step({1: "click"}, toggled))


def test_descendents_look_through_instances():
    rt = runtime()
    v = rt.materialize([node("figure", Elem("toggle-section", StrLit("t")))])
    assert descendents(v) == {"figure", "para"}
    assert "section" in descendents(rt.doc_step({0: "toggle"}, v))


# -- strategies ------------------------------------------------------------

def toggle_doc(rt):
    return rt.materialize([
        Node("section", (("id", "first"),), (node("para", Text("a")),)),
        Elem("toggle-section", StrLit("extra")),
        Elem("counter", StrLit("|")),
        Node("section", (("id", "last"),), (node("para", Text("see "), Node("ref", (("target", "last"),))),)),
    ])


def test_toggle_renders_renumbered_refs():
    rt = runtime()
    v0 = toggle_doc(rt)
    trace = [{}, {0: "toggle"}, {1: "click"}, {0: "toggle"}]
    stats = RunStats()
    out = run_incr(v0, trace, rt.copy(), stats)
    numbers = [a[-1].children[0].children[1].value for a in out]
    assert numbers == ["2", "2", "3", "3", "2"]
    assert stats.sections_calls == 3 and stats.dirty_steps == 2
    assert [canonical_json(a) for a in out] == [canonical_json(a) for a in run_simple(v0, trace, rt.copy())]


def test_counter_only_document_calls_sections_once():
    rt = runtime()
    v0 = counter_doc(rt)
    trace = [{0: "click"}] * 20
    simple, incr = RunStats(), RunStats()
    run_simple(v0, trace, rt.copy(), simple)
    run_incr(v0, trace, rt.copy(), incr)
    assert (simple.sections_calls, incr.sections_calls) == (21, 1)
    assert simple.steps == incr.steps == 20


def test_unknown_instance_in_trace():
    rt = runtime()
    with pytest.raises(UnknownInstance):
        run_simple(counter_doc(rt), [{7: "click"}], rt)


def test_trajectory_length():
    rt = runtime()
    assert len(trajectory(counter_doc(rt), [{0: "click"}] * 3, rt)) == 4


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([{}, {0: "toggle"}, {1: "click"}, {0: "toggle", 1: "click"}]), max_size=12))
def test_strategies_agree_on_toggle_traces(trace):
    rt = runtime()
    v0 = toggle_doc(rt)
    simple = run_simple(v0, trace, rt.copy())
    incr = run_incr(v0, trace, rt.copy())
    assert [canonical_json(a) for a in simple] == [canonical_json(a) for a in incr]
    assert len(simple) == len(trace) + 1


def test_builtins_are_registered_by_key():
    assert set(BUILTINS) == {"counter", "label", "toggle-section"}
    assert label().key == "label" and toggle_section().key == "toggle-section"
