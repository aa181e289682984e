"""Random well-typed closed kernel terms, and a checker that runs each one
step by step asserting progress and preservation."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..errors import DocCalcError
from .context import EMPTY
from .evaluate import step
from .stdlib import list_type, unrolled
from .terms import (
    App, BoolLit, Case, Concat, Fix, Fold, If, Inject, Lambda, Let, Pack, Prim, Project,
    RecordLit, StrLit, TyApp, TyLambda, Unfold, Unpack, Var, is_value,
)
from .typecheck import typecheck
from .types import BOOL, STR, Arrow, Exists, Forall, Mu, Record, Sum, TVar, Type, alpha_eq

STR_LIST = list_type(STR)
PAIR = Record((("a", STR), ("b", BOOL)))
CHOICE = Sum((("l", STR), ("r", BOOL)))
IDENTITY = Forall("t", Arrow(TVar("t"), TVar("t")))
ABSTRACT = Exists("p", Record((("v", TVar("p")), ("show", Arrow(TVar("p"), STR)))))
STREAM = Mu("s", Sum((("end", STR), ("more", Record((("hd", STR), ("tl", TVar("s"))))))))

# the types the generator draws from; every one has a closed inhabitant
TYPES: tuple[Type, ...] = (
    STR, BOOL, Arrow(STR, STR), Arrow(BOOL, STR), PAIR, CHOICE, STR_LIST,
    list_type(STR_LIST), IDENTITY, ABSTRACT, STREAM,
)


class RandomTerms:
    """Type-directed generation: ``term(ty, depth)`` returns a closed term of
    type ``ty`` built from at most ``depth`` nested generator choices."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.counter = 0

    def fresh(self, stem: str = "x") -> str:
        self.counter += 1
        return f"{stem}{self.counter}"

    def term(self, ty: Type, depth: int, env: dict | None = None):
        env = env or {}
        rng = self.rng
        in_scope = [Var(n) for n, t in env.items() if alpha_eq(t, ty)]
        if depth <= 1:
            return rng.choice(in_scope) if in_scope and rng.random() < 0.5 else self.leaf(ty)
        forms = ["intro", "intro", "let", "if", "beta", "proj", "case", "tyapp", "unpack", "fix"]
        if in_scope:
            forms.append("var")
        form = rng.choice(forms)
        d = depth - 1
        if form == "var":
            return rng.choice(in_scope)
        if form == "let":
            sigma = rng.choice(TYPES)
            name = self.fresh()
            return Let(name, self.term(sigma, d, env), self.term(ty, d, {**env, name: sigma}))
        if form == "if":
            return If(self.term(BOOL, d, env), self.term(ty, d, env), self.term(ty, d, env))
        if form == "beta":
            sigma = rng.choice(TYPES)
            name = self.fresh()
            fn = Lambda(name, sigma, self.term(ty, max(1, d - 1), {**env, name: sigma}))
            return App(fn, self.term(sigma, d - 1 if d > 1 else 1, env))
        if form == "proj":
            other = rng.choice(TYPES)
            rec = RecordLit((("want", self.term(ty, d - 1 or 1, env)), ("other", self.term(other, 1, env))))
            return Project(rec, "want")
        if form == "case":
            name = self.fresh()
            scrut = self.term(CHOICE, d, env)
            return Case(scrut, (
                ("l", name, self.term(ty, d, {**env, name: STR})),
                ("r", name, self.term(ty, d, {**env, name: BOOL})),
            ))
        if form == "tyapp":
            # (Λt. λx:t. x) [ty] applied to a term of ty
            x = self.fresh()
            ident = TyLambda("t", Lambda(x, TVar("t"), Var(x)))
            return App(TyApp(ident, ty), self.term(ty, d - 1 or 1, env))
        if form == "unpack":
            pkg = self.pack(d - 1 or 1, env)
            name = self.fresh("pk")
            return Unpack(name, "q", pkg, self.term(ty, d, env))
        if form == "fix":
            return self.safe_fix(ty, d, env)
        return self.intro(ty, d, env)

    def safe_fix(self, ty: Type, depth: int, env: dict):
        """``fix f. λs:Str. if s == "" then base else f ""`` applied to a
        string: recurses at most once, so it always terminates."""
        f, s = self.fresh("f"), self.fresh("s")
        base = self.term(ty, max(1, depth - 2), env)
        body = Lambda(s, STR, If(
            Prim("str-eq", (), (Var(s), StrLit(""))),
            base,
            App(Var(f), StrLit("")),
        ))
        arg = self.term(STR, max(1, depth - 2), env)
        return App(Fix(f, Arrow(STR, ty), body), arg)

    def pack(self, depth: int, env: dict):
        witness = self.rng.choice([STR, BOOL, STR_LIST])
        x = self.fresh()
        show = Lambda(x, witness, self.term(STR, max(1, depth - 1), {**env, x: witness}))
        return Pack(RecordLit((("v", self.term(witness, depth, env)), ("show", show))), witness, ABSTRACT)

    def intro(self, ty: Type, d: int, env: dict):
        rng = self.rng
        if ty == STR:
            pick = rng.random()
            if pick < 0.3:
                return Concat(self.term(STR, d, env), self.term(STR, d, env))
            if pick < 0.45:
                return Prim("join", (), (self.term(STR_LIST, d, env),))
            if pick < 0.6:
                pk, q = self.fresh("pk"), "q"
                use = App(Project(Var(pk), "show"), Project(Var(pk), "v"))
                return Unpack(pk, q, self.pack(d, env), use)
            return self.leaf(ty)
        if ty == BOOL:
            if rng.random() < 0.4:
                return Prim("str-eq", (), (self.term(STR, d, env), self.term(STR, d, env)))
            return self.leaf(ty)
        if isinstance(ty, Arrow):
            x = self.fresh()
            return Lambda(x, ty.param, self.term(ty.result, d, {**env, x: ty.param}))
        if isinstance(ty, Record):
            return RecordLit(tuple((l, self.term(t, d, env)) for l, t in ty.fields))
        if isinstance(ty, Sum):
            label, payload = rng.choice(ty.variants)
            return Inject(self.term(payload, d, env), label, ty)
        if ty == STR_LIST:
            pick = rng.random()
            if pick < 0.2:
                return Prim("rev", (STR,), (self.term(STR_LIST, d, env),))
            if pick < 0.4:
                return Prim("append", (STR,), (self.term(STR_LIST, d, env), self.term(STR_LIST, d, env)))
            if pick < 0.6:
                x = self.fresh()
                fn = Lambda(x, STR, self.term(STR, d - 1 or 1, {**env, x: STR}))
                return Prim("map", (STR, STR), (fn, self.term(STR_LIST, d, env)))
            if pick < 0.7:
                return Prim("flatten", (STR,), (self.term(list_type(STR_LIST), d, env),))
        if isinstance(ty, Mu):
            if rng.random() < 0.15:
                # unfold (fold v) round trip
                return Fold(ty, Unfold(ty, self.leaf(ty)))
            inner = self.intro(unrolled(ty), d, env)
            return Fold(ty, inner)
        if isinstance(ty, Forall):
            return self.leaf(ty)
        if isinstance(ty, Exists):
            return self.pack(d, env)
        return self.leaf(ty)

    def leaf(self, ty: Type):
        """A small closed value of ``ty``."""
        rng = self.rng
        if ty == STR:
            return StrLit(rng.choice(["", "a", "b", "ab"]))
        if ty == BOOL:
            return BoolLit(rng.random() < 0.5)
        if isinstance(ty, Arrow):
            x = self.fresh()
            return Lambda(x, ty.param, self.leaf(ty.result))
        if isinstance(ty, Record):
            return RecordLit(tuple((l, self.leaf(t)) for l, t in ty.fields))
        if isinstance(ty, Mu):
            # pick the non-recursive variant of a recursive sum
            body = unrolled(ty)
            for label, payload in body.variants:
                if not alpha_eq(payload, ty) and ty not in _mentions(payload, ty):
                    return Fold(ty, Inject(self.leaf(payload), label, body))
            raise ValueError(f"no base case for {ty}")
        if isinstance(ty, Sum):
            label, payload = rng.choice(ty.variants)
            return Inject(self.leaf(payload), label, ty)
        if isinstance(ty, Forall) and ty == IDENTITY:
            x = self.fresh()
            return TyLambda("t", Lambda(x, TVar("t"), Var(x)))
        if ty == ABSTRACT:
            x = self.fresh()
            return Pack(RecordLit((("v", StrLit("w")), ("show", Lambda(x, STR, Var(x))))), STR, ABSTRACT)
        raise ValueError(f"cannot build a value of {ty}")


def _mentions(payload: Type, ty: Type) -> list:
    """Sub-types of ``payload`` equal to ``ty`` (used to find base cases)."""
    found = []
    stack = [payload]
    while stack:
        t = stack.pop()
        if alpha_eq(t, ty):
            found.append(ty)
        elif isinstance(t, Record):
            stack.extend(x for _, x in t.fields)
        elif isinstance(t, Sum):
            stack.extend(x for _, x in t.variants)
        elif isinstance(t, Arrow):
            stack.extend((t.param, t.result))
    return found


def depth(e) -> int:
    from .terms import children

    kids = children(e)
    return 1 + max((depth(k) for k in kids), default=0)


@dataclass
class SafetyReport:
    terms: int = 0
    steps: int = 0
    values: int = 0
    capped: int = 0
    max_depth: int = 0  # deepest syntax tree seen
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_run(e, ty: Type, step_cap: int, report: SafetyReport) -> None:
    """Step ``e`` to a value, checking at each step that it is either a
    value or can step (progress) and keeps its type (preservation)."""
    for _ in range(step_cap):
        if is_value(e):
            report.values += 1
            return
        try:
            nxt = step(e)
        except DocCalcError as exc:
            report.failures.append((e, f"progress: {exc}"))
            return
        report.steps += 1
        try:
            found = typecheck(EMPTY, nxt)
        except DocCalcError as exc:
            report.failures.append((nxt, f"preservation: {exc}"))
            return
        if not alpha_eq(found, ty):
            report.failures.append((nxt, f"preservation: {ty} became {found}"))
            return
        e = nxt
    if is_value(e):
        report.values += 1
    else:
        report.capped += 1


def check_type_safety(seed: int = 7, count: int = 5000, max_depth: int = 6, step_cap: int = 2000) -> SafetyReport:
    rng = random.Random(seed)
    gen = RandomTerms(rng)
    report = SafetyReport()
    while report.terms < count:
        ty = rng.choice(TYPES)
        # max_depth bounds the nesting of generator choices; encodings such
        # as fold/inject add syntactic layers on top of that
        e = gen.term(ty, rng.randint(1, max_depth))
        d = depth(e)
        try:
            found = typecheck(EMPTY, e)
        except DocCalcError as exc:
            report.failures.append((e, f"generator produced an ill-typed term: {exc}"))
            report.terms += 1
            continue
        report.terms += 1
        report.max_depth = max(report.max_depth, d)
        check_run(e, found, step_cap, report)
    return report
