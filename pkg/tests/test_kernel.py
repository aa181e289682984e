import random

import pytest
from hypothesis import given, strategies as st

from doccalc.errors import (
    FuelExhausted, NonExhaustiveCase, StuckTerm, TypeCheckError, TypeMismatch, UnboundVariable,
    UnknownLabel,
)
from doccalc.kernel import (
    BOOL, EMPTY, STR, App, Arrow, BoolLit, Case, Concat, Exists, Fix, Forall, If, Inject,
    Lambda, Let, Pack, Prim, Project, Record, RecordLit, StrLit, Sum, TVar, TyApp,
    TyLambda, Unpack, Var, alpha_eq, evaluate, free_vars, list_items, list_type, nil,
    str_list, subst, typecheck,
)
from doccalc.kernel.generate import RandomTerms, SafetyReport, check_run, check_type_safety
from doccalc.kernel.types import format_type, free_type_vars, subst_type, unfold_mu

STR_LIST = list_type(STR)


def strings_of(v):
    return [x.value for x in list_items(v)]


# -- types -----------------------------------------------------------------

def test_alpha_equivalence_renames_binders():
    assert alpha_eq(Forall("a", Arrow(TVar("a"), TVar("a"))), Forall("b", Arrow(TVar("b"), TVar("b"))))
    assert not alpha_eq(Forall("a", Arrow(TVar("a"), STR)), Forall("b", Arrow(TVar("b"), TVar("b"))))


def test_alpha_equivalence_distinguishes_free_variables():
    assert not alpha_eq(TVar("a"), TVar("b"))


def test_record_types_ignore_field_order():
    assert alpha_eq(Record((("a", STR), ("b", BOOL))), Record((("b", BOOL), ("a", STR))))
    assert not alpha_eq(Record((("a", STR),)), Record((("a", BOOL),)))


def test_type_substitution_avoids_capture():
    t = subst_type(Forall("b", Arrow(TVar("a"), TVar("b"))), "a", TVar("b"))
    assert isinstance(t, Forall) and t.var != "b"
    assert alpha_eq(t, Forall("c", Arrow(TVar("b"), TVar("c"))))


def test_unfold_mu_substitutes_itself():
    assert alpha_eq(unfold_mu(STR_LIST).get("cons").get("tail"), STR_LIST)


def test_free_type_vars():
    assert free_type_vars(Forall("a", Arrow(TVar("a"), TVar("b")))) == {"b"}


def test_format_type_is_readable():
    assert format_type(Arrow(STR, Arrow(STR, BOOL))) == "Str -> Str -> Bool"


# -- typing ----------------------------------------------------------------

def test_identity_is_polymorphic():
    ident = TyLambda("a", Lambda("x", TVar("a"), Var("x")))
    assert alpha_eq(typecheck(EMPTY, ident), Forall("a", Arrow(TVar("a"), TVar("a"))))
    assert typecheck(EMPTY, App(TyApp(ident, STR), StrLit("q"))) == STR


def test_unbound_variable():
    with pytest.raises(UnboundVariable):
        typecheck(EMPTY, Var("nope"))


def test_concat_needs_strings():
    with pytest.raises(TypeMismatch):
        typecheck(EMPTY, Concat(StrLit("a"), BoolLit(True)))


def test_if_branches_must_agree():
    with pytest.raises(TypeMismatch):
        typecheck(EMPTY, If(BoolLit(True), StrLit("a"), BoolLit(False)))


def test_projection_of_missing_label():
    with pytest.raises(UnknownLabel):
        typecheck(EMPTY, Project(RecordLit((("a", StrLit("x")),)), "b"))


def test_case_must_cover_every_label():
    choice = Sum((("l", STR), ("r", BOOL)))
    scrut = Inject(StrLit("x"), "l", choice)
    with pytest.raises(NonExhaustiveCase):
        typecheck(EMPTY, Case(scrut, (("l", "s", Var("s")),)))
    with pytest.raises(UnknownLabel):
        typecheck(EMPTY, Case(scrut, (("l", "s", Var("s")), ("r", "b", StrLit("")), ("z", "z", StrLit("")))))


def test_existential_type_cannot_escape():
    abstract = Exists("p", Record((("v", TVar("p")),)))
    packed = Pack(RecordLit((("v", StrLit("x")),)), STR, abstract)
    assert alpha_eq(typecheck(EMPTY, packed), abstract)
    with pytest.raises(TypeCheckError, match="escapes"):
        typecheck(EMPTY, Unpack("r", "q", packed, Project(Var("r"), "v")))


def test_existential_used_abstractly():
    abstract = Exists("p", Record((("v", TVar("p")), ("show", Arrow(TVar("p"), STR)))))
    packed = Pack(RecordLit((("v", BoolLit(True)),
                             ("show", Lambda("b", BOOL, If(Var("b"), StrLit("yes"), StrLit("no")))))),
                  BOOL, abstract)
    use = Unpack("r", "q", packed, App(Project(Var("r"), "show"), Project(Var("r"), "v")))
    assert typecheck(EMPTY, use) == STR
    assert evaluate(use) == StrLit("yes")


def test_primitive_type_arguments_are_checked():
    with pytest.raises(TypeMismatch):
        typecheck(EMPTY, Prim("rev", (BOOL,), (str_list(["a"]),)))


# -- evaluation ------------------------------------------------------------

def test_aba_by_concatenation():
    e = Let("x", StrLit("a"), Concat(Concat(Var("x"), StrLit("b")), Var("x")))
    assert evaluate(e) == StrLit("aba")


def test_fix_recursion_terminates():
    loop = Fix("f", Arrow(STR, STR), Lambda("s", STR, If(
        Prim("str-eq", (), (Var("s"), StrLit(""))), StrLit("done"), App(Var("f"), StrLit("")))))
    assert evaluate(App(loop, StrLit("go"))) == StrLit("done")


def test_fuel_exhaustion():
    spin = Fix("f", Arrow(STR, STR), Lambda("s", STR, App(Var("f"), Var("s"))))
    with pytest.raises(FuelExhausted):
        evaluate(App(spin, StrLit("")), fuel=100)


def test_free_variable_is_stuck():
    with pytest.raises(StuckTerm):
        evaluate(Concat(Var("x"), StrLit("")))


def test_subst_avoids_capture():
    body = Lambda("y", STR, Concat(Var("x"), Var("y")))
    out = subst(body, "x", Var("y"))
    assert isinstance(out, Lambda) and out.param != "y"
    assert free_vars(out) == {"y"}


def test_subst_respects_shadowing():
    body = Lambda("x", STR, Var("x"))
    assert subst(body, "x", StrLit("no")) == body


# -- primitives against Python sequence oracles ----------------------------

words = st.lists(st.text(alphabet="abc ", max_size=3), max_size=5)


@given(words, words)
def test_append_matches_list_concatenation(xs, ys):
    v = evaluate(Prim("append", (STR,), (str_list(xs), str_list(ys))))
    assert strings_of(v) == xs + ys


@given(words)
def test_rev_matches_reversal(xs):
    assert strings_of(evaluate(Prim("rev", (STR,), (str_list(xs),)))) == xs[::-1]


@given(words)
def test_join_matches_str_join(xs):
    assert evaluate(Prim("join", (), (str_list(xs),))) == StrLit("".join(xs))


@given(st.lists(words, max_size=4))
def test_flatten_matches_chain(xss):
    from doccalc.kernel import build_list

    nested = build_list(STR_LIST, [str_list(xs) for xs in xss])
    v = evaluate(Prim("flatten", (STR,), (nested,)))
    assert strings_of(v) == [x for xs in xss for x in xs]


@given(words)
def test_map_matches_comprehension(xs):
    fn = Lambda("s", STR, Concat(Var("s"), StrLit("!")))
    v = evaluate(Prim("map", (STR, STR), (fn, str_list(xs))))
    assert strings_of(v) == [x + "!" for x in xs]


@given(st.text(max_size=3), st.text(max_size=3))
def test_str_eq_matches_equality(a, b):
    assert evaluate(Prim("str-eq", (), (StrLit(a), StrLit(b)))) == BoolLit(a == b)


def test_empty_list_primitives():
    assert strings_of(evaluate(Prim("rev", (STR,), (nil(STR),)))) == []
    assert evaluate(Prim("join", (), (nil(STR),))) == StrLit("")


# -- type safety -----------------------------------------------------------

def test_random_terms_are_well_typed():
    gen = RandomTerms(random.Random(3))
    for ty in (STR, BOOL, STR_LIST, Arrow(STR, STR)):
        for _ in range(20):
            assert alpha_eq(typecheck(EMPTY, gen.term(ty, 4)), ty)


def test_small_type_safety_run():
    report = check_type_safety(seed=1, count=300)
    assert report.terms == 300
    assert report.ok, report.failures[:3]
    assert report.steps > 300


def test_check_run_reports_broken_preservation():
    # a term that steps to a term of another type must be reported
    report = SafetyReport()
    check_run(App(Lambda("x", STR, Var("x")), StrLit("a")), BOOL, 10, report)
    assert report.failures
