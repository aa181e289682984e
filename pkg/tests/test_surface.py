import pytest
from hypothesis import given, strategies as st

from doccalc.cli.surface import parse_surface, parse_surface_expr, print_surface, print_surface_expr
from doccalc.errors import ParseError
from doccalc.kernel import App, BoolLit, Concat, Prim, Project, StrLit, Var
from doccalc.template.syntax import (
    Component, Foreach, IfPart, Interp, Lit, NodePart, Set, SpliceList, Template, tpl,
)


def test_hello_world():
    t = parse_surface('<para>Hello <bold>{{ x }}</bold></para>')
    assert t == tpl(NodePart("para", (), tpl(Lit("Hello "), NodePart("bold", (), tpl(Interp(Var("x")))))))


def test_every_part_form():
    src = ('{% set y = "a" + x %}{% if b %}yes{% else %}no{% endif %}'
           '{% for i in xs %}<item>{{ i }}</item>{% endfor %}{% splice ns %}'
           '{% component "counter", s %}<section id="intro" k={{ y }}/>')
    assert parse_surface(src) == tpl(
        Set("y", Concat(StrLit("a"), Var("x"))),
        IfPart(Var("b"), tpl(Lit("yes")), tpl(Lit("no"))),
        Foreach(Var("xs"), "i", tpl(NodePart("item", (), tpl(Interp(Var("i")))))),
        SpliceList(Var("ns")),
        Component(StrLit("counter"), Var("s")),
        NodePart("section", (("id", StrLit("intro")), ("k", Var("y")))),
    )


def test_expression_forms():
    assert parse_surface_expr('f(r.a) == "z"') == Prim("str-eq", (), (App(Var("f"), Project(Var("r"), "a")), StrLit("z")))
    assert parse_surface_expr("true") == BoolLit(True)
    assert parse_surface_expr("a + (b + c)") == Concat(Var("a"), Concat(Var("b"), Var("c")))


def test_comments_and_escapes():
    # a comment separates literals, so the printer can keep them apart
    assert parse_surface(r"a{# note #}\{\<b") == tpl(Lit("a"), Lit("{<b"))


def test_errors_have_positions():
    with pytest.raises(ParseError, match="line 2 column"):
        parse_surface("ok\n{% if %}")
    with pytest.raises(ParseError):
        parse_surface("<para>unclosed")
    with pytest.raises(ParseError):
        parse_surface("<a></b>")


def test_non_surface_terms_are_refused_by_the_printer():
    with pytest.raises(ValueError):
        print_surface(tpl(Set("not a name", StrLit(""))))


# -- round trip ------------------------------------------------------------

names = st.sampled_from(["x", "y", "items", "b2"])
strings = st.text(alphabet='ab "\\\n{}<>%#', max_size=4)
exprs = st.recursive(
    st.one_of(names.map(Var), strings.map(StrLit), st.booleans().map(BoolLit)),
    lambda e: st.one_of(
        st.builds(Concat, e, e),
        st.builds(lambda a, l: Project(a, l), e, names),
        st.builds(App, e, e),
        st.builds(lambda a, b: Prim("str-eq", (), (a, b)), e, e),
    ),
    max_leaves=5,
)
tags = st.sampled_from(["para", "bold", "list-item", "x_1"])


def templates():
    return st.recursive(
        st.lists(st.one_of(
            st.text(alphabet="ab {}<>\\%#\n", max_size=5).map(Lit),
            exprs.map(Interp),
            st.builds(Set, names, exprs),
            exprs.map(SpliceList),
            st.builds(Component, exprs, exprs),
        ), max_size=4).map(Template),
        lambda inner: st.lists(st.one_of(
            st.builds(IfPart, exprs, inner, inner),
            st.builds(Foreach, exprs, names, inner),
            st.builds(NodePart, tags, st.lists(st.tuples(tags, exprs), max_size=2).map(tuple), inner),
            st.text(alphabet="ab", max_size=2).map(Lit),
        ), max_size=4).map(Template),
        max_leaves=10,
    )


@given(templates())
def test_parse_print_round_trip(t):
    assert parse_surface(print_surface(t)) == t


@given(exprs)
def test_expression_round_trip(e):
    assert parse_surface_expr(print_surface_expr(e)) == e
