"""Program files: the canonical JSON form of kernel terms, types and
templates.

Expressions are objects tagged by ``"e"``, types by ``"t"`` and template parts
by ``"p"``. A few sugars (lists, node literals, library functions) are
expanded on parse and restored by the printer, so printing a parsed
program gives back the canonical file."""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..errors import EncodingMismatch, ParseError
from ..kernel.stdlib import (
    ATTR, FNODE, NODE_FRAG, NODE_TY, REACT_NODE, build_list, list_items, list_type, unrolled,
    variant,
)
from ..kernel.terms import (
    App, BoolLit, Case, Concat, Fix, Fold, If, Inject, Lambda, Let, Pack, Prim, Project,
    RecordLit, StrLit, TyApp, TyLambda, Unfold, Unpack, Var,
)
from ..kernel.types import (
    BOOL, STR, Arrow, Bool, Exists, Forall, Mu, Record, Str, Sum, TVar, Type, list_element,
)
from ..template.library import elim_frags_term, reforest_term
from ..template.syntax import (
    TEMPLATE_EXPRS, Component, Foreach, IfPart, Interp, Lit, NodePart, Set, SpliceList, Template,
    TemplateExpr,
)

VERSION = "doccalc/1"

TYPE_ALIASES = {"NodeTy": NODE_TY, "ReactNode": REACT_NODE, "NodeFrag": NODE_FRAG, "FNode": FNODE}
TEMPLATE_KINDS = {cls.__name__: cls for cls in TEMPLATE_EXPRS.values()}
LIBRARY = {
    "elim-frags": elim_frags_term,
    "reforest": lambda: reforest_term(False),
    "reforest-literal": lambda: reforest_term(True),
}


def normalize_newlines(s: str) -> str:
    return s.replace("\r\n", "\n")


@dataclass
class Program:
    body: object
    components: tuple[str, ...] = ()
    # JSON pointer of every parsed node, keyed by id(); used for diagnostics
    locations: dict | None = None

    def location_of(self, node) -> str | None:
        if node is None or not self.locations:
            return None
        return self.locations.get(id(node))


# -- parsing -------------------------------------------------------------------

class _Parser:
    def __init__(self):
        self.locations: dict[int, str] = {}

    def fail(self, message: str, path: str):
        raise ParseError(message, path or "/")

    def obj(self, x, path: str, tag: str) -> tuple[str, dict]:
        if not isinstance(x, dict) or not isinstance(x.get(tag), str):
            self.fail(f'expected an object with a "{tag}" kind', path)
        return x[tag], x

    def get(self, x: dict, key: str, path: str):
        if key not in x:
            self.fail(f'missing field "{key}"', path)
        return x[key]

    def string(self, x: dict, key: str, path: str) -> str:
        v = self.get(x, key, path)
        if not isinstance(v, str):
            self.fail(f'field "{key}" must be a string', f"{path}/{key}")
        return v

    def name(self, x: dict, key: str, path: str) -> str:
        v = self.string(x, key, path)
        if not v:
            self.fail(f'field "{key}" must be a non-empty name', f"{path}/{key}")
        return v

    def array(self, x: dict, key: str, path: str) -> list:
        v = self.get(x, key, path)
        if not isinstance(v, list):
            self.fail(f'field "{key}" must be an array', f"{path}/{key}")
        return v

    def labelled(self, x: dict, key: str, path: str, item) -> tuple:
        out = []
        for i, pair in enumerate(self.array(x, key, path)):
            where = f"{path}/{key}/{i}"
            if not (isinstance(pair, list) and len(pair) == 2 and isinstance(pair[0], str)):
                self.fail("expected a [label, value] pair", where)
            out.append((pair[0], item(pair[1], f"{where}/1")))
        return tuple(out)

    def remember(self, node, path: str):
        self.locations[id(node)] = path or "/"
        return node

    # types

    def type(self, x, path: str) -> Type:
        kind, x = self.obj(x, path, "t")
        if kind in TYPE_ALIASES:
            return TYPE_ALIASES[kind]
        try:
            if kind == "Str":
                return STR
            if kind == "Bool":
                return BOOL
            if kind == "Unit":
                return Record(())
            if kind == "Arrow":
                return Arrow(self.type(self.get(x, "param", path), f"{path}/param"),
                             self.type(self.get(x, "result", path), f"{path}/result"))
            if kind == "Record":
                return Record(self.labelled(x, "fields", path, self.type))
            if kind == "Sum":
                return Sum(self.labelled(x, "variants", path, self.type))
            if kind in ("Forall", "Mu", "Exists"):
                cls = {"Forall": Forall, "Mu": Mu, "Exists": Exists}[kind]
                return cls(self.name(x, "var", path), self.type(self.get(x, "body", path), f"{path}/body"))
            if kind == "Var":
                return TVar(self.name(x, "name", path))
            if kind == "List":
                return list_type(self.type(self.get(x, "elem", path), f"{path}/elem"))
        except ValueError as exc:
            self.fail(str(exc), path)
        self.fail(f"unknown type kind {kind!r}", f"{path}/t")

    # expressions

    def exprs(self, x: dict, key: str, path: str) -> tuple:
        return tuple(self.expr(v, f"{path}/{key}/{i}") for i, v in enumerate(self.array(x, key, path)))

    def sub(self, x: dict, key: str, path: str):
        return self.expr(self.get(x, key, path), f"{path}/{key}")

    def sub_type(self, x: dict, key: str, path: str) -> Type:
        return self.type(self.get(x, key, path), f"{path}/{key}")

    def expr(self, x, path: str):
        kind, x = self.obj(x, path, "e")
        return self.remember(self._expr(kind, x, path), path)

    def _expr(self, kind: str, x: dict, path: str):
        p = path
        if kind == "Str":
            return StrLit(normalize_newlines(self.string(x, "value", p)))
        if kind == "Bool":
            v = self.get(x, "value", p)
            if not isinstance(v, bool):
                self.fail('field "value" must be a boolean', f"{p}/value")
            return BoolLit(v)
        if kind == "Var":
            return Var(self.name(x, "name", p))
        if kind == "Concat":
            return Concat(self.sub(x, "lhs", p), self.sub(x, "rhs", p))
        if kind == "Lam":
            return Lambda(self.name(x, "param", p), self.sub_type(x, "type", p), self.sub(x, "body", p))
        if kind == "App":
            return App(self.sub(x, "fn", p), self.sub(x, "arg", p))
        if kind == "Fix":
            return Fix(self.name(x, "name", p), self.sub_type(x, "type", p), self.sub(x, "body", p))
        if kind == "Let":
            return Let(self.name(x, "name", p), self.sub(x, "bound", p), self.sub(x, "body", p))
        if kind == "Record":
            labels = [pair[0] for pair in self.array(x, "fields", p) if isinstance(pair, list) and pair]
            if len(set(labels)) != len(labels):
                self.fail("duplicate record label", f"{p}/fields")
            return RecordLit(self.labelled(x, "fields", p, self.expr))
        if kind == "Proj":
            return Project(self.sub(x, "expr", p), self.string(x, "label", p))
        if kind == "Inject":
            return Inject(self.sub(x, "expr", p), self.string(x, "label", p), self.sub_type(x, "type", p))
        if kind == "Case":
            arms = []
            for i, arm in enumerate(self.array(x, "arms", p)):
                where = f"{p}/arms/{i}"
                if not isinstance(arm, dict):
                    self.fail("expected a case arm object", where)
                arms.append((self.string(arm, "label", where), self.name(arm, "binder", where),
                             self.sub(arm, "body", where)))
            return Case(self.sub(x, "scrutinee", p), tuple(arms))
        if kind == "Fold":
            return Fold(self.sub_type(x, "type", p), self.sub(x, "expr", p))
        if kind == "Unfold":
            return Unfold(self.sub_type(x, "type", p), self.sub(x, "expr", p))
        if kind == "TyLam":
            return TyLambda(self.name(x, "tyvar", p), self.sub(x, "body", p))
        if kind == "TyApp":
            return TyApp(self.sub(x, "expr", p), self.sub_type(x, "type", p))
        if kind == "Pack":
            return Pack(self.sub(x, "expr", p), self.sub_type(x, "witness", p), self.sub_type(x, "type", p))
        if kind == "Unpack":
            return Unpack(self.name(x, "binder", p), self.name(x, "tyvar", p),
                          self.sub(x, "packed", p), self.sub(x, "body", p))
        if kind == "If":
            return If(self.sub(x, "cond", p), self.sub(x, "then", p), self.sub(x, "else", p))
        if kind == "Prim":
            name = self.string(x, "name", p)
            types = tuple(self.type(t, f"{p}/types/{i}") for i, t in enumerate(self.array(x, "types", p)))
            try:
                return Prim(name, types, self.exprs(x, "args", p))
            except ValueError as exc:
                self.fail(str(exc), f"{p}/name")
        if kind == "List":
            return build_list(self.sub_type(x, "elem", p), self.exprs(x, "items", p))
        if kind == "Text":
            return variant(NODE_TY, "text", self.sub(x, "value", p))
        if kind == "Node":
            attrs = self.labelled(x, "attrs", p, self.expr)
            return _node_literal(self.string(x, "name", p), attrs, self.exprs(x, "children", p))
        if kind == "Lib":
            name = self.string(x, "name", p)
            if name not in LIBRARY:
                self.fail(f"unknown library function {name!r}", f"{p}/name")
            return LIBRARY[name]()
        if kind in TEMPLATE_KINDS:
            return TEMPLATE_KINDS[kind](self.template_field(x, p))
        self.fail(f"unknown expression kind {kind!r}", f"{p}/e")

    # templates

    def template_field(self, x: dict, path: str) -> Template:
        if "surface" in x:
            if "template" in x:
                self.fail('give either "template" or "surface", not both', path)
            from .surface import parse_surface

            src = self.string(x, "surface", path)
            try:
                return parse_surface(normalize_newlines(src))
            except ParseError as exc:
                raise ParseError(str(exc), f"{path}/surface") from None
        return self.template(self.get(x, "template", path), f"{path}/template")

    def template(self, x, path: str) -> Template:
        if not isinstance(x, list):
            self.fail("a template is an array of parts", path)
        return Template(tuple(self.part(p, f"{path}/{i}") for i, p in enumerate(x)))

    def part(self, x, path: str):
        kind, x = self.obj(x, path, "p")
        return self.remember(self._part(kind, x, path), path)

    def _part(self, kind: str, x: dict, p: str):
        if kind == "Lit":
            return Lit(normalize_newlines(self.string(x, "value", p)))
        if kind == "Expr":
            return Interp(self.sub(x, "expr", p))
        if kind == "Set":
            return Set(self.name(x, "name", p), self.sub(x, "expr", p))
        if kind == "If":
            else_ = self.template(x["else"], f"{p}/else") if "else" in x else Template()
            return IfPart(self.sub(x, "cond", p), self.template(self.get(x, "then", p), f"{p}/then"), else_)
        if kind == "For":
            return Foreach(self.sub(x, "source", p), self.name(x, "binder", p),
                           self.template(self.get(x, "body", p), f"{p}/body"))
        if kind == "Node":
            return NodePart(self.name(x, "name", p), self.labelled(x, "attrs", p, self.expr),
                            self.template(self.get(x, "children", p), f"{p}/children"))
        if kind == "Splice":
            return SpliceList(self.sub(x, "expr", p))
        if kind == "Component":
            return Component(self.sub(x, "component", p), self.sub(x, "props", p))
        self.fail(f"unknown template part kind {kind!r}", f"{p}/p")


def _node_literal(name: str, attrs, children):
    from ..kernel.stdlib import pair

    record = RecordLit((
        ("name", StrLit(name)),
        ("attrs", build_list(ATTR, [pair(StrLit(k), v) for k, v in attrs])),
        ("children", build_list(NODE_TY, children)),
    ))
    return variant(NODE_TY, "node", record)


def parse_expr(obj, path: str = ""):
    return _Parser().expr(obj, path)


def parse_type(obj, path: str = "") -> Type:
    return _Parser().type(obj, path)


def parse_program(obj) -> Program:
    parser = _Parser()
    if not isinstance(obj, dict):
        raise ParseError("a program is a JSON object", "/")
    if obj.get("version") != VERSION:
        raise ParseError(f"unrecognized version {obj.get('version')!r}, expected {VERSION!r}", "/version")
    unknown = set(obj) - {"version", "body", "components"}
    if unknown:
        raise ParseError(f"unknown program field {sorted(unknown)[0]!r}", "/")
    components = obj.get("components", [])
    if not isinstance(components, list) or not all(isinstance(c, str) for c in components):
        raise ParseError("components must be an array of registry keys", "/components")
    if "body" not in obj:
        raise ParseError('missing field "body"', "/")
    body = parser.expr(obj["body"], "/body")
    return Program(body, tuple(components), parser.locations)


def load_program(text: str) -> Program:
    try:
        obj = json.loads(normalize_newlines(text))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    return parse_program(obj)


# -- printing ------------------------------------------------------------------

def print_type(t: Type) -> dict:
    for name, alias in TYPE_ALIASES.items():
        if t == alias:
            return {"t": name}
    elem = list_element(t)
    if elem is not None and t == list_type(elem):
        return {"t": "List", "elem": print_type(elem)}
    if isinstance(t, Str):
        return {"t": "Str"}
    if isinstance(t, Bool):
        return {"t": "Bool"}
    if isinstance(t, Arrow):
        return {"t": "Arrow", "param": print_type(t.param), "result": print_type(t.result)}
    if isinstance(t, Record):
        if not t.fields:
            return {"t": "Unit"}
        return {"t": "Record", "fields": [[l, print_type(f)] for l, f in t.fields]}
    if isinstance(t, Sum):
        return {"t": "Sum", "variants": [[l, print_type(v)] for l, v in t.variants]}
    if isinstance(t, TVar):
        return {"t": "Var", "name": t.name}
    kind = {Forall: "Forall", Mu: "Mu", Exists: "Exists"}[type(t)]
    return {"t": kind, "var": t.var, "body": print_type(t.body)}


def _as_list(e):
    """(elem type, items) if ``e`` is exactly the encoding build_list makes."""
    if not isinstance(e, Fold) or not isinstance(e.annot, Mu):
        return None
    elem = list_element(e.annot)
    if elem is None or e.annot != list_type(elem):
        return None
    try:
        items = list_items(e)
    except EncodingMismatch:
        return None
    if build_list(elem, items) != e:
        return None
    return elem, items


def _as_node(e):
    """(name, attrs, children) if ``e`` is exactly a node literal."""
    if not (isinstance(e, Fold) and e.annot == NODE_TY and isinstance(e.expr, Inject)):
        return None
    inj = e.expr
    if inj.annot != unrolled(NODE_TY) or inj.label != "node" or not isinstance(inj.expr, RecordLit):
        return None
    rec = inj.expr
    if [l for l, _ in rec.fields] != ["name", "attrs", "children"] or not isinstance(rec.get("name"), StrLit):
        return None
    attrs, kids = _as_list(rec.get("attrs")), _as_list(rec.get("children"))
    if attrs is None or kids is None or attrs[0] != ATTR or kids[0] != NODE_TY:
        return None
    pairs = []
    for a in attrs[1]:
        if not (isinstance(a, RecordLit) and [l for l, _ in a.fields] == ["fst", "snd"]
                and isinstance(a.get("fst"), StrLit)):
            return None
        pairs.append((a.get("fst").value, a.get("snd")))
    node = rec.get("name").value, pairs, kids[1]
    if _node_literal(node[0], node[1], node[2]) != e:
        return None
    return node


def _as_text(e):
    if (isinstance(e, Fold) and e.annot == NODE_TY and isinstance(e.expr, Inject)
            and e.expr.label == "text" and e.expr.annot == unrolled(NODE_TY)):
        return e.expr.expr
    return None


def print_expr(e) -> dict:
    for name, make in LIBRARY.items():
        if e is make():
            return {"e": "Lib", "name": name}
    if isinstance(e, StrLit):
        return {"e": "Str", "value": e.value}
    if isinstance(e, BoolLit):
        return {"e": "Bool", "value": e.value}
    if isinstance(e, Var):
        return {"e": "Var", "name": e.name}
    if isinstance(e, Concat):
        return {"e": "Concat", "lhs": print_expr(e.lhs), "rhs": print_expr(e.rhs)}
    if isinstance(e, Lambda):
        return {"e": "Lam", "param": e.param, "type": print_type(e.annot), "body": print_expr(e.body)}
    if isinstance(e, App):
        return {"e": "App", "fn": print_expr(e.fn), "arg": print_expr(e.arg)}
    if isinstance(e, Fix):
        return {"e": "Fix", "name": e.name, "type": print_type(e.annot), "body": print_expr(e.body)}
    if isinstance(e, Let):
        return {"e": "Let", "name": e.name, "bound": print_expr(e.bound), "body": print_expr(e.body)}
    if isinstance(e, RecordLit):
        return {"e": "Record", "fields": [[l, print_expr(v)] for l, v in e.fields]}
    if isinstance(e, Project):
        return {"e": "Proj", "expr": print_expr(e.expr), "label": e.label}
    if isinstance(e, Inject):
        return {"e": "Inject", "label": e.label, "expr": print_expr(e.expr), "type": print_type(e.annot)}
    if isinstance(e, Case):
        arms = [{"label": l, "binder": b, "body": print_expr(body)} for l, b, body in e.arms]
        return {"e": "Case", "scrutinee": print_expr(e.scrutinee), "arms": arms}
    if isinstance(e, Fold):
        listed = _as_list(e)
        if listed is not None:
            return {"e": "List", "elem": print_type(listed[0]), "items": [print_expr(i) for i in listed[1]]}
        node = _as_node(e)
        if node is not None:
            name, attrs, kids = node
            return {"e": "Node", "name": name, "attrs": [[k, print_expr(v)] for k, v in attrs],
                    "children": [print_expr(k) for k in kids]}
        text = _as_text(e)
        if text is not None:
            return {"e": "Text", "value": print_expr(text)}
        return {"e": "Fold", "type": print_type(e.annot), "expr": print_expr(e.expr)}
    if isinstance(e, Unfold):
        return {"e": "Unfold", "type": print_type(e.annot), "expr": print_expr(e.expr)}
    if isinstance(e, TyLambda):
        return {"e": "TyLam", "tyvar": e.tyvar, "body": print_expr(e.body)}
    if isinstance(e, TyApp):
        return {"e": "TyApp", "expr": print_expr(e.expr), "type": print_type(e.type_arg)}
    if isinstance(e, Pack):
        return {"e": "Pack", "expr": print_expr(e.expr), "witness": print_type(e.witness),
                "type": print_type(e.annot)}
    if isinstance(e, Unpack):
        return {"e": "Unpack", "binder": e.binder, "tyvar": e.tyvar, "packed": print_expr(e.packed),
                "body": print_expr(e.body)}
    if isinstance(e, If):
        return {"e": "If", "cond": print_expr(e.cond), "then": print_expr(e.then), "else": print_expr(e.else_)}
    if isinstance(e, Prim):
        return {"e": "Prim", "name": e.name, "types": [print_type(t) for t in e.type_args],
                "args": [print_expr(a) for a in e.args]}
    if isinstance(e, TemplateExpr):
        return {"e": type(e).__name__, "template": print_template(e.template)}
    raise TypeError(f"cannot print {type(e).__name__}")


def print_template(t: Template) -> list:
    return [print_part(p) for p in t.parts]


def print_part(p) -> dict:
    if isinstance(p, Lit):
        return {"p": "Lit", "value": p.value}
    if isinstance(p, Interp):
        return {"p": "Expr", "expr": print_expr(p.expr)}
    if isinstance(p, Set):
        return {"p": "Set", "name": p.name, "expr": print_expr(p.expr)}
    if isinstance(p, IfPart):
        out = {"p": "If", "cond": print_expr(p.cond), "then": print_template(p.then)}
        if p.else_.parts:
            out["else"] = print_template(p.else_)
        return out
    if isinstance(p, Foreach):
        return {"p": "For", "binder": p.binder, "source": print_expr(p.source), "body": print_template(p.body)}
    if isinstance(p, NodePart):
        return {"p": "Node", "name": p.name, "attrs": [[k, print_expr(v)] for k, v in p.attrs],
                "children": print_template(p.children)}
    if isinstance(p, SpliceList):
        return {"p": "Splice", "expr": print_expr(p.expr)}
    if isinstance(p, Component):
        return {"p": "Component", "component": print_expr(p.component), "props": print_expr(p.props)}
    raise TypeError(f"cannot print part {type(p).__name__}")


def print_program(program: Program) -> dict:
    out = {"version": VERSION, "body": print_expr(program.body)}
    if program.components:
        out["components"] = list(program.components)
    return out


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"
