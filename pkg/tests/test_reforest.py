from hypothesis import given, strategies as st

from doccalc.doc.nodes import Node, Text, node, text_content
from doccalc.doc.schema import validate_article
from doccalc.reforest import reforest

BREAK = Text("\n\n")
RAW = [Text("Hello"), Text("World"), BREAK, node("figure"), Text("Post-figure")]


def test_worked_example():
    out = reforest(RAW)
    assert out == [node("para", Text("Hello"), Text("World")), node("figure"), node("para", Text("Post-figure"))]
    assert validate_article(out) == []


def test_literal_mode_keeps_empty_paragraphs():
    out = reforest(RAW, literal=True)
    assert out == [
        node("para", Text("Hello"), Text("World")),
        node("para"),
        Node("figure", (), (node("para"),)),
        node("para", Text("Post-figure")),
    ]


def test_block_children_are_reforested():
    out = reforest([node("figure", Text("caption"), BREAK, Text("more"))])
    assert out == [node("figure", node("para", Text("caption")), node("para", Text("more")))]


def test_pending_paragraph_is_emitted_first():
    assert reforest([Text("b")], par=(Text("a"),)) == [node("para", Text("a"), Text("b"))]


def test_empty_input():
    assert reforest([]) == []
    assert reforest([], literal=True) == [node("para")]


def test_list_items_are_not_blocks():
    # only para/section/figure/list are blocks, so items land in a paragraph
    out = reforest([node("list", node("item", Text("x")))])
    assert out == [node("list", node("para", node("item", Text("x"))))]
    assert validate_article(out) != []


def test_inline_nodes_stay_in_the_paragraph():
    out = reforest([Text("see "), Node("ref", (("target", "x"),)), node("bold", Text("!"))])
    assert len(out) == 1 and out[0].name == "para" and len(out[0].children) == 3


# -- properties ------------------------------------------------------------

inline = st.one_of(
    st.text(alphabet="ab", min_size=1, max_size=2).map(Text),
    st.just(BREAK),
    st.just(node("bold", Text("b"))),
    st.just(Node("ref", (("target", "t"),))),
)
flow = st.recursive(
    st.lists(inline, max_size=5),
    lambda inner: st.lists(st.one_of(
        inline,
        st.builds(lambda c: Node("section", (), tuple(c)), inner),
        st.builds(lambda c: Node("figure", (), tuple(c)), inner),
    ), max_size=5),
    max_leaves=12,
)


def non_break_text(doc):
    return [t for t in text_content(doc) if t != "\n\n"]


@given(flow)
def test_output_is_an_article(doc):
    assert validate_article(reforest(doc)) == []


@given(flow)
def test_text_is_preserved_in_order(doc):
    assert text_content(reforest(doc)) == non_break_text(doc)


@given(flow)
def test_no_empty_paragraphs(doc):
    def paras(nodes):
        for n in nodes:
            if isinstance(n, Node):
                if n.name == "para":
                    yield n
                yield from paras(n.children)

    assert all(p.children for p in paras(reforest(doc)))


@given(flow)
def test_block_sequence_is_kept(doc):
    out = reforest(doc)
    assert [n.name for n in out if n.name != "para"] == [
        n.name for n in doc if isinstance(n, Node) and n.name in ("section", "figure")
    ]
