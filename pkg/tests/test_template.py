import pytest
from hypothesis import given, settings, strategies as st

from doc_strategies import docs
from doccalc.doc.bridge import nodes_from_value, nodes_value
from doccalc.doc.nodes import Node, Text, node
from doccalc.errors import (
    ComponentOutsideReact, DesugarError, TemplateOutsideContext, TypeMismatch,
)
from doccalc.kernel import (
    EMPTY, NODE_LIST, NODE_TY, STR, App, BoolLit, Let, Prim, StrLit, Var, alpha_eq,
    evaluate, nil, str_list, typecheck,
)
from doccalc.kernel.stdlib import NODE_FRAG, REACT_LIST
from doccalc.kernel.terms import children
from doccalc.kernel.types import Arrow
from doccalc.reforest import reforest
from doccalc.template.desugar import contains_template, desugar
from doccalc.template.library import elim_frags_term, reforest_term
from doccalc.template.syntax import (
    Component, FlowTpl, Foreach, FragTpl, IfPart, Interp, Lit, NodePart, ReactTpl, Set,
    SpliceList, StrTpl, TreeTpl, template_size, tpl,
)
from doccalc.template.typing import typecheck_template


def run(e):
    out = desugar(e)
    assert not contains_template(out)
    return evaluate(out)


def shopping(items=("milk", "eggs", "bread")):
    body = tpl(
        NodePart("para", (), tpl(Lit("Shopping list:"))),
        NodePart("list", (), tpl(Foreach(Var("items"), "x", tpl(
            NodePart("item", (), tpl(NodePart("para", (), tpl(Interp(Var("x")))))),
        )))),
    )
    return lambda kind: Let("items", str_list(items), kind(body))


# -- typing ----------------------------------------------------------------

@pytest.mark.parametrize("kind, result", [
    (StrTpl, STR), (TreeTpl, NODE_LIST), (FragTpl, NODE_LIST), (FlowTpl, NODE_LIST), (ReactTpl, REACT_LIST),
])
def test_template_expression_types(kind, result):
    assert alpha_eq(typecheck(EMPTY, kind(tpl(Lit("a")))), result)


def test_bare_template_needs_a_context():
    with pytest.raises(TemplateOutsideContext):
        typecheck_template(EMPTY, tpl(Lit("a")))


def test_node_parts_need_a_tree_context():
    with pytest.raises(TypeMismatch):
        typecheck(EMPTY, StrTpl(tpl(NodePart("para"))))


def test_attribute_must_be_a_string():
    with pytest.raises(TypeMismatch, match="attribute id"):
        typecheck(EMPTY, TreeTpl(tpl(NodePart("section", (("id", BoolLit(True)),)))))


def test_interpolating_a_bool_is_rejected():
    with pytest.raises(TypeMismatch):
        typecheck(EMPTY, StrTpl(tpl(Interp(BoolLit(True)))))


def test_if_condition_must_be_bool():
    with pytest.raises(TypeMismatch):
        typecheck(EMPTY, StrTpl(tpl(IfPart(StrLit("no"), tpl(), tpl()))))


def test_foreach_needs_a_list():
    with pytest.raises(TypeMismatch):
        typecheck(EMPTY, StrTpl(tpl(Foreach(StrLit("no"), "x", tpl()))))


def test_components_only_in_react_templates():
    with pytest.raises(ComponentOutsideReact):
        typecheck(EMPTY, TreeTpl(tpl(Component(StrLit("counter"), StrLit("")))))


def test_splice_is_rejected_in_fragment_templates():
    with pytest.raises(DesugarError):
        typecheck(EMPTY, FragTpl(tpl(SpliceList(nil(NODE_TY)))))


def test_splice_must_match_the_context():
    with pytest.raises(TypeMismatch):
        typecheck(EMPTY, TreeTpl(tpl(SpliceList(str_list(["a"])))))


def test_set_scopes_over_the_rest_of_the_template():
    e = StrTpl(tpl(Set("y", StrLit("v")), Interp(Var("y"))))
    assert typecheck(EMPTY, e) == STR
    with pytest.raises(Exception):
        typecheck(EMPTY, StrTpl(tpl(IfPart(BoolLit(True), tpl(Set("y", StrLit("v"))), tpl()), Interp(Var("y")))))


def test_template_size_counts_parts():
    assert template_size(tpl(Lit("a"), IfPart(BoolLit(True), tpl(Lit("b")), tpl()))) == 3


# -- desugared shapes ------------------------------------------------------

def test_empty_string_template_is_join_of_nil():
    assert desugar(StrTpl(tpl())) == Prim("join", (), (nil(STR),))


def test_foreach_uses_append_flatten_map():
    out = desugar(shopping()(TreeTpl))
    names = set()

    def walk(e):
        if isinstance(e, Prim):
            names.add(e.name)
        for c in children(e):
            walk(c)

    walk(out)
    assert {"append", "flatten", "map"} <= names


def test_fragment_templates_call_elim_frags():
    out = desugar(FragTpl(tpl(Lit("a"))))
    assert isinstance(out, App) and out.fn is elim_frags_term()


def test_flow_templates_call_reforest():
    out = desugar(FlowTpl(tpl(Lit("a"))))
    assert isinstance(out, App) and out.fn.fn == reforest_term()


# -- evaluation ------------------------------------------------------------

def test_string_template_aba():
    e = Let("x", StrLit("a"), StrTpl(tpl(Interp(Var("x")), Lit("b"), Interp(Var("x")))))
    assert run(e) == StrLit("aba")


def test_if_and_else_branches():
    e = StrTpl(tpl(IfPart(Var("b"), tpl(Lit("yes")), tpl(Lit("no")))))
    assert run(Let("b", BoolLit(False), e)) == StrLit("no")
    assert run(Let("b", BoolLit(True), e)) == StrLit("yes")


def test_foreach_keeps_every_element():
    e = Let("xs", str_list(["A", "B", "C"]), StrTpl(tpl(Foreach(Var("xs"), "x", tpl(Interp(Var("x")), Lit(","))))))
    assert run(e) == StrLit("A,B,C,")


def test_bare_strings_become_text_nodes():
    assert nodes_from_value(run(TreeTpl(tpl(Lit("a"), Interp(StrLit("b")))))) == [Text("a"), Text("b")]


def test_splice_inserts_a_node_list():
    inner = nodes_value([Text("x"), node("bold", Text("y"))])
    out = nodes_from_value(run(TreeTpl(tpl(Lit("<"), SpliceList(inner), Lit(">")))))
    assert out == [Text("<"), Text("x"), node("bold", Text("y")), Text(">")]


@pytest.mark.parametrize("kind", [TreeTpl, FragTpl])
def test_shopping_list_under_both_strategies(kind):
    doc = nodes_from_value(run(shopping()(kind)))
    assert doc == [
        node("para", Text("Shopping list:")),
        node("list", *(node("item", node("para", Text(x))) for x in ("milk", "eggs", "bread"))),
    ]


def test_nested_template_in_an_attribute():
    attr = StrTpl(tpl(Lit("sec-"), Interp(Var("s"))))
    e = Let("s", StrLit("1"), TreeTpl(tpl(NodePart("section", (("id", attr),)))))
    assert nodes_from_value(run(e)) == [Node("section", (("id", "sec-1"),))]


# -- reforest: kernel term against the native pass -------------------------

flat_inputs = st.lists(st.one_of(
    st.sampled_from([Text("a"), Text("\n\n"), Text("b"), node("bold", Text("c")), Node("ref", (("target", "t"),))]),
    st.sampled_from([node("figure"), node("section", Text("x"), Text("\n\n"), Text("y"))]),
), max_size=8)


@settings(max_examples=60)
@pytest.mark.parametrize("literal", [False, True])
@given(doc=flat_inputs)
def test_kernel_reforest_matches_native(literal, doc):
    v = evaluate(App(App(reforest_term(literal), nodes_value(doc)), nil(NODE_TY)))
    assert nodes_from_value(v) == reforest(doc, literal=literal)


@settings(max_examples=30)
@given(docs)
def test_kernel_reforest_matches_native_on_any_tree(doc):
    v = evaluate(App(App(reforest_term(), nodes_value(doc)), nil(NODE_TY)))
    assert nodes_from_value(v) == reforest(doc)


def test_library_terms_are_closed_and_typed():
    for literal in (False, True):
        assert alpha_eq(typecheck(EMPTY, reforest_term(literal)), Arrow(NODE_LIST, Arrow(NODE_LIST, NODE_LIST)))
    assert alpha_eq(typecheck(EMPTY, elim_frags_term()), Arrow(NODE_FRAG, NODE_LIST))
