from hypothesis import given

from doc_strategies import articles, docs, fragments
from doccalc.doc.bridge import frag_from_value, frag_value, nodes_from_value, nodes_value
from doccalc.doc.nodes import Base, Children, FragNode, Node, Text, elim_frags, node, text_content
from doccalc.doc.schema import is_article, validate_article
from doccalc.kernel import EMPTY, NODE_FRAG, NODE_LIST, App, alpha_eq, evaluate, typecheck
from doccalc.template.library import elim_frags_term


def test_node_shorthand_keeps_attribute_order():
    n = node("section", Text("a"), id="x", k="y")
    assert n.attrs == (("id", "x"), ("k", "y"))
    assert n.attr("k") == "y" and n.attr("missing") is None


def test_nodes_accept_lists():
    assert Node("para", [], [Text("a")]) == Node("para", (), (Text("a"),))


# -- schema ----------------------------------------------------------------

def test_valid_article():
    doc = [node("section", node("para", Text("a"), node("bold", Text("b"))), id="s"),
           node("list", node("item", node("para", Text("i"))))]
    assert validate_article(doc) == []


def test_text_at_top_level_is_rejected():
    [v] = validate_article([Text("loose")])
    assert v.path == (0,) and "paragraph" in v.message


def test_para_inside_para_is_rejected():
    assert not is_article([node("para", node("para", Text("x")))])


def test_list_children_must_be_items():
    assert not is_article([node("list", node("para"))])


def test_ref_shape():
    assert is_article([node("para", node("ref", target="s"))])
    assert not is_article([node("para", node("ref", Text("x"), target="s"))])
    assert not is_article([node("para", Node("ref", (("to", "s"),)))])


def test_unknown_tag_is_error_or_warning():
    doc = [node("aside", node("para", Text("x")))]
    [strict] = validate_article(doc)
    assert strict.severity == "error"
    [loose] = validate_article(doc, permissive=True)
    assert loose.severity == "warning"
    assert is_article(doc, permissive=True)


@given(articles)
def test_generated_articles_validate(doc):
    assert validate_article(doc) == []


# -- bridge ----------------------------------------------------------------

@given(docs)
def test_node_encoding_round_trips(doc):
    v = nodes_value(doc)
    assert alpha_eq(typecheck(EMPTY, v), NODE_LIST)
    assert nodes_from_value(v) == doc


@given(fragments)
def test_fragment_encoding_round_trips(f):
    v = frag_value(f)
    assert alpha_eq(typecheck(EMPTY, v), NODE_FRAG)
    assert frag_from_value(v) == f


# -- fragments -------------------------------------------------------------

def test_elim_frags_flattens_children():
    f = Children((Base(Text("a")), Children((Base(Text("b")), Base(Text("c"))))))
    assert elim_frags(f) == [Text("a"), Text("b"), Text("c")]


def test_elim_frags_inside_nodes():
    f = Base(FragNode("para", (), Children((Children((Base(Text("x")),)),))))
    assert elim_frags(f) == [Node("para", (), (Text("x"),))]


@given(fragments)
def test_elim_frags_output_has_no_fragment_structure(f):
    out = elim_frags(f)
    assert all(isinstance(n, (Text, Node)) for n in out)
    # text survives in order: the fragment's text leaves are the tree's
    assert text_content(out) == list(_frag_texts(f))


def _frag_texts(f):
    if isinstance(f, Children):
        for item in f.items:
            yield from _frag_texts(item)
    elif isinstance(f.node, Text):
        yield f.node.value
    else:
        yield from _frag_texts(f.node.children)


@given(fragments)
def test_kernel_elim_frags_matches_native(f):
    v = evaluate(App(elim_frags_term(), frag_value(f)))
    assert nodes_from_value(v) == elim_frags(f)
