"""A small concrete syntax for templates.

    {{ e }}                         interpolate an expression
    {% set x = e %}                 bind x for the rest of the template
    {% if e %}…{% else %}…{% endif %}
    {% for x in e %}…{% endfor %}
    {% splice e %}                  splice a list
    {% component "key", e %}        component instance (react templates)
    {% lit "…" %}                   an explicit literal part
    <tag a="…" b={{ e }}>…</tag>    node part; <tag/> when empty
    {# comment #}                   ignored; {##} separates adjacent literals
    \\c                              the character c, literally

Expressions inside the delimiters are a small language of variables,
JSON string literals, true/false, ``.label`` projection, ``f(arg)``
application, ``+`` concatenation and ``==`` string equality. Anything
bigger belongs in the JSON form."""

from __future__ import annotations

import json
import re

from ..errors import ParseError
from ..kernel.terms import App, BoolLit, Concat, Prim, Project, StrLit, Var
from ..template.syntax import (
    Component, Foreach, IfPart, Interp, Lit, NodePart, Set, SpliceList, Template,
)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_STRING = re.compile(r'"(?:[^"\\\n]|\\.)*"')
_KEYWORDS = {"true", "false", "in"}
_TAG = re.compile(r"[A-Za-z][A-Za-z0-9_-]*")


class _Source:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def where(self, pos: int | None = None) -> str:
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return f"line {line} column {col}"

    def fail(self, message: str, pos: int | None = None):
        raise ParseError(message, self.where(pos))

    def startswith(self, s: str) -> bool:
        return self.text.startswith(s, self.pos)

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def skip_ws(self):
        while not self.eof() and self.text[self.pos] in " \t\n":
            self.pos += 1

    def expect(self, s: str):
        self.skip_ws()
        if not self.startswith(s):
            self.fail(f"expected {s!r}")
        self.pos += len(s)

    def match(self, pattern: re.Pattern):
        self.skip_ws()
        m = pattern.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return m.group(0)
        return None


# -- expressions ---------------------------------------------------------------

class _ExprParser:
    def __init__(self, src: _Source):
        self.src = src

    def expr(self):
        lhs = self.sum()
        self.src.skip_ws()
        if self.src.startswith("=="):
            self.src.pos += 2
            return Prim("str-eq", (), (lhs, self.sum()))
        return lhs

    def sum(self):
        e = self.postfix()
        while True:
            self.src.skip_ws()
            if not self.src.startswith("+"):
                return e
            self.src.pos += 1
            e = Concat(e, self.postfix())

    def postfix(self):
        e = self.atom()
        while True:
            self.src.skip_ws()
            if self.src.startswith("."):
                self.src.pos += 1
                label = self.src.match(_IDENT)
                if label is None:
                    self.src.fail("expected a label after '.'")
                e = Project(e, label)
            elif self.src.startswith("("):
                self.src.pos += 1
                arg = self.expr()
                self.src.expect(")")
                e = App(e, arg)
            else:
                return e

    def atom(self):
        src = self.src
        src.skip_ws()
        start = src.pos
        if src.startswith("("):
            src.pos += 1
            e = self.expr()
            src.expect(")")
            return e
        literal = src.match(_STRING)
        if literal is not None:
            try:
                return StrLit(json.loads(literal))
            except json.JSONDecodeError:
                src.fail("malformed string literal", start)
        word = src.match(_IDENT)
        if word == "true":
            return BoolLit(True)
        if word == "false":
            return BoolLit(False)
        if word is not None and word not in _KEYWORDS:
            return Var(word)
        src.fail("expected an expression", start)


def parse_surface_expr(text: str):
    src = _Source(text)
    e = _ExprParser(src).expr()
    src.skip_ws()
    if not src.eof():
        src.fail("unexpected text after expression")
    return e


# -- templates -----------------------------------------------------------------

class _TemplateParser:
    def __init__(self, text: str):
        self.src = _Source(text)
        self.exprs = _ExprParser(self.src)

    def parse(self) -> Template:
        parts, stop = self.parts(())
        if stop is not None:
            self.src.fail(f"unexpected {stop}")
        return parts

    def parts(self, stops: tuple) -> tuple[Template, str | None]:
        """Parse parts until one of ``stops`` (directive names, or "</" for a
        closing tag) or the end of input; returns the terminator seen."""
        src = self.src
        out: list = []
        buf: list[str] = []

        def flush():
            if buf:
                out.append(Lit("".join(buf)))
                buf.clear()

        while not src.eof():
            text, i = src.text, src.pos
            c = text[i]
            if c == "\\":
                if i + 1 >= len(text):
                    src.fail("dangling escape")
                buf.append(text[i + 1])
                src.pos += 2
            elif text.startswith("{#", i):
                end = text.find("#}", i + 2)
                if end < 0:
                    src.fail("unterminated comment")
                flush()
                src.pos = end + 2
            elif text.startswith("{{", i):
                flush()
                src.pos += 2
                e = self.exprs.expr()
                src.expect("}}")
                out.append(Interp(e))
            elif text.startswith("{%", i):
                start = i
                src.pos += 2
                word = src.match(_IDENT)
                if word in stops:
                    flush()
                    src.expect("%}")
                    return Template(tuple(out)), word
                flush()
                out.append(self.directive(word, start))
            elif text.startswith("</", i):
                if "</" in stops:
                    flush()
                    return Template(tuple(out)), "</"
                src.fail("closing tag without an open tag")
            elif c == "<" and _TAG.match(text, i + 1):
                flush()
                out.append(self.node())
            else:
                buf.append(c)
                src.pos += 1
        flush()
        return Template(tuple(out)), None

    def directive(self, word: str | None, start: int):
        src = self.src
        if word == "set":
            name = src.match(_IDENT)
            if name is None or name in _KEYWORDS:
                src.fail("expected a variable name")
            src.expect("=")
            e = self.exprs.expr()
            src.expect("%}")
            return Set(name, e)
        if word == "if":
            cond = self.exprs.expr()
            src.expect("%}")
            then, stop = self.parts(("else", "endif"))
            else_ = Template()
            if stop == "else":
                else_, stop = self.parts(("endif",))
            if stop != "endif":
                src.fail("{% if %} without {% endif %}", start)
            return IfPart(cond, then, else_)
        if word == "for":
            binder = src.match(_IDENT)
            if binder is None or binder in _KEYWORDS:
                src.fail("expected a loop variable")
            if src.match(_IDENT) != "in":
                src.fail("expected 'in'")
            source = self.exprs.expr()
            src.expect("%}")
            body, stop = self.parts(("endfor",))
            if stop != "endfor":
                src.fail("{% for %} without {% endfor %}", start)
            return Foreach(source, binder, body)
        if word == "splice":
            e = self.exprs.expr()
            src.expect("%}")
            return SpliceList(e)
        if word == "component":
            key = self.exprs.expr()
            src.expect(",")
            props = self.exprs.expr()
            src.expect("%}")
            return Component(key, props)
        if word == "lit":
            literal = src.match(_STRING)
            if literal is None:
                src.fail("expected a string literal")
            src.expect("%}")
            return Lit(json.loads(literal))
        src.fail(f"unknown directive {word!r}", start)

    def node(self):
        src = self.src
        start = src.pos
        src.pos += 1
        name = _TAG.match(src.text, src.pos).group(0)
        src.pos += len(name)
        attrs = []
        while True:
            src.skip_ws()
            if src.startswith("/>"):
                src.pos += 2
                return NodePart(name, tuple(attrs), Template())
            if src.startswith(">"):
                src.pos += 1
                break
            key = src.match(_TAG)
            if key is None:
                src.fail(f"malformed attributes in <{name}>", start)
            src.expect("=")
            src.skip_ws()
            if src.startswith("{{"):
                src.pos += 2
                value = self.exprs.expr()
                src.expect("}}")
            else:
                literal = src.match(_STRING)
                if literal is None:
                    src.fail(f'attribute {key} needs a "string" or {{{{ expression }}}}')
                value = StrLit(json.loads(literal))
            attrs.append((key, value))
        children, stop = self.parts(("</",))
        if stop != "</":
            src.fail(f"<{name}> is never closed", start)
        src.pos += 2
        closing = src.match(_TAG)
        if closing != name:
            src.fail(f"</{closing}> closes <{name}>")
        src.expect(">")
        return NodePart(name, tuple(attrs), children)


def parse_surface(text: str) -> Template:
    return _TemplateParser(text).parse()


# -- pretty printing -----------------------------------------------------------

def _string(s: str) -> str:
    return json.dumps(s, ensure_ascii=False)


def print_surface_expr(e, level: int = 0) -> str:
    """Print with the fewest parentheses; ``level`` is the binding strength
    the context needs (0 anything, 1 a sum operand, 2 a postfix operand)."""
    if isinstance(e, Var) and _IDENT.fullmatch(e.name) and e.name not in _KEYWORDS:
        return e.name
    if isinstance(e, StrLit):
        return _string(e.value)
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, Project) and _IDENT.fullmatch(e.label):
        return f"{print_surface_expr(e.expr, 2)}.{e.label}"
    if isinstance(e, App):
        return f"{print_surface_expr(e.fn, 2)}({print_surface_expr(e.arg)})"
    if isinstance(e, Concat):
        text = f"{print_surface_expr(e.lhs, 1)} + {print_surface_expr(e.rhs, 2)}"
        return f"({text})" if level >= 2 else text
    if isinstance(e, Prim) and e.name == "str-eq" and not e.type_args:
        lhs, rhs = e.args
        text = f"{print_surface_expr(lhs, 1)} == {print_surface_expr(rhs, 1)}"
        return f"({text})" if level >= 1 else text
    raise ValueError(f"{type(e).__name__} has no surface syntax; use the JSON form")


_LIT_SPECIAL = re.compile(r"[\\{<]")


def _print_lit(value: str) -> str:
    if not value:
        return '{% lit "" %}'
    return _LIT_SPECIAL.sub(lambda m: "\\" + m.group(0), value)


def print_surface(t: Template) -> str:
    out = []
    prev_lit = False
    for p in t.parts:
        if isinstance(p, Lit):
            if prev_lit:
                out.append("{##}")
            out.append(_print_lit(p.value))
            prev_lit = bool(p.value)
            continue
        prev_lit = False
        out.append(_print_part(p))
    return "".join(out)


def _name(name: str, pattern: re.Pattern = _IDENT) -> str:
    if not pattern.fullmatch(name) or name in _KEYWORDS:
        raise ValueError(f"{name!r} cannot be written in surface syntax")
    return name


def _print_part(p) -> str:
    e = print_surface_expr
    if isinstance(p, Interp):
        return f"{{{{ {e(p.expr)} }}}}"
    if isinstance(p, Set):
        return f"{{% set {_name(p.name)} = {e(p.expr)} %}}"
    if isinstance(p, IfPart):
        text = f"{{% if {e(p.cond)} %}}{print_surface(p.then)}"
        if p.else_.parts:
            text += f"{{% else %}}{print_surface(p.else_)}"
        return text + "{% endif %}"
    if isinstance(p, Foreach):
        return f"{{% for {_name(p.binder)} in {e(p.source)} %}}{print_surface(p.body)}{{% endfor %}}"
    if isinstance(p, SpliceList):
        return f"{{% splice {e(p.expr)} %}}"
    if isinstance(p, Component):
        return f"{{% component {e(p.component)}, {e(p.props)} %}}"
    if isinstance(p, NodePart):
        attrs = "".join(
            f" {_name(k, _TAG)}={_string(v.value)}" if isinstance(v, StrLit) else f" {_name(k, _TAG)}={{{{ {e(v)} }}}}"
            for k, v in p.attrs
        )
        _name(p.name, _TAG)
        if not p.children.parts:
            return f"<{p.name}{attrs}/>"
        return f"<{p.name}{attrs}>{print_surface(p.children)}</{p.name}>"
    raise ValueError(f"not a template part: {type(p).__name__}")
