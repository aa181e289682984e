import pytest
from hypothesis import given, strategies as st

from doccalc.doc.nodes import Node, Text, node
from doccalc.errors import RefValidationError, UnknownTarget
from doccalc.refs import (
    check_valid, render_refs, replace_refs, section_number_to_string, sections, sections_at_list,
)


def numbering_oracle(doc) -> dict[str, str]:
    """Section numbers by explicit depth-first traversal with an
    outermost-first path of counters. Non-section nodes are transparent."""
    out = {}

    def visit(nodes, prefix, k):
        for n in nodes:
            if isinstance(n, Text):
                continue
            if n.name != "section":
                k = visit(n.children, prefix, k)
                continue
            k += 1
            here = prefix + [k]
            if n.attr("id") is not None:
                out.setdefault(n.attr("id"), ".".join(map(str, here)))
            visit(n.children, here, 0)
        return k

    visit(doc, [], 0)
    return out


def sec(ident, *children):
    return Node("section", (("id", ident),) if ident else (), tuple(children))


def ref(target):
    return Node("ref", (("target", target),))


THREE = [
    sec("intro", node("para", Text("Intro"))),
    sec("body", node("para", Text("Body")), sec("sub", node("para", Text("See "), ref("sub")))),
    sec("end"),
]


def test_three_sections_numbering():
    assert {i: section_number_to_string(n) for i, n in sections(THREE)} == {
        "intro": "1", "body": "2", "sub": "2.1", "end": "3",
    }


def test_three_sections_render():
    out = render_refs(THREE)
    assert out[1].children[1].children[0].children == (Text("See "), Text("2.1"))


def test_number_stack_is_innermost_first():
    assert dict(sections(THREE))["sub"] == [1, 2]
    assert section_number_to_string([3, 1, 2]) == "2.1.3"


def test_counters_continue_after_the_list():
    _, counters = sections_at_list([1], THREE)
    assert counters == [4]


def test_sections_inside_other_blocks_keep_counting():
    doc = [sec("a"), node("figure", sec("b")), sec("c")]
    assert {i: section_number_to_string(n) for i, n in sections(doc)} == {"a": "1", "b": "2", "c": "3"}


def test_dangling_ref():
    doc = [node("para", Text("x"), ref("nowhere"))]
    [err] = check_valid(sections(doc), doc)
    assert (err.kind, err.name, err.path) == ("UnknownTarget", "nowhere", (0, 1))
    with pytest.raises(RefValidationError) as info:
        render_refs(doc)
    assert "nowhere" in str(info.value.errors[0])


def test_duplicate_id():
    doc = [sec("a"), sec("a")]
    [err] = check_valid(sections(doc), doc)
    assert (err.kind, err.name, err.path) == ("DuplicateId", "a", (1,))


def test_malformed_ref():
    doc = [node("para", Node("ref", (("target", "a"),), (Text("x"),))), sec("a")]
    [err] = check_valid(sections(doc), doc)
    assert err.kind == "MalformedRef"


def test_replace_refs_raises_on_unknown_target():
    with pytest.raises(UnknownTarget):
        replace_refs([], [node("para", ref("x"))])


def test_doc_without_refs_is_unchanged():
    doc = [sec("a", node("para", Text("t"))), node("para", Text("u"))]
    assert render_refs(doc) == doc


# -- property: numbering agrees with the oracle ----------------------------

@st.composite
def sectioned(draw, depth=0):
    kids = []
    for _ in range(draw(st.integers(0, 3 if depth < 3 else 0))):
        kind = draw(st.sampled_from(["section", "anon", "figure", "para"]))
        if kind == "para":
            kids.append(node("para", Text("p")))
        elif kind == "figure":
            kids.append(Node("figure", (), tuple(draw(sectioned(depth + 1)))))
        else:
            ident = f"s{draw(st.integers(0, 10**6))}" if kind == "section" else None
            kids.append(sec(ident, *draw(sectioned(depth + 1))))
    return kids


@given(sectioned())
def test_numbering_matches_oracle(doc):
    delta = sections(doc)
    expected = numbering_oracle(doc)
    got = {}
    for ident, nums in delta:
        got.setdefault(ident, section_number_to_string(nums))
    assert got == expected


@given(sectioned())
def test_refs_to_every_section_resolve(doc):
    ids = list(numbering_oracle(doc))
    if len(set(i for i, _ in sections(doc))) != len(sections(doc)):
        return  # duplicate ids are a separate error
    doc = doc + [node("para", *(ref(i) for i in ids))]
    out = render_refs(doc)
    assert [t.value for t in out[-1].children] == [numbering_oracle(doc)[i] for i in ids]
