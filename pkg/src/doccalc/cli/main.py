"""The ``doccalc`` command line.

Exit codes: 0 success, 1 semantic error (types, references, schema,
runtime), 2 unreadable or unparsable input, 3 resource limits."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from ..doc.bridge import nodes_from_value
from ..doc.schema import errors_only, validate_article
from ..errors import (
    DocCalcError, FuelExhausted, ParseError, RefValidationError, TypeCheckError, UnknownComponent,
)
from ..kernel.evaluate import DEFAULT_FUEL, evaluate
from ..kernel.stdlib import NODE_LIST, REACT_LIST
from ..kernel.typecheck import typecheck
from ..kernel.types import STR, alpha_eq, format_type
from ..reactive.bridge import react_nodes_from_value
from ..reactive.components import BUILTINS
from ..reactive.runtime import Runtime, doc_view
from ..reactive.strategies import RunStats, run_incr, run_simple
from ..refs import render_refs
from ..template.desugar import desugar
from ..template.strategy import retarget
from .jsonast import Program, dumps, load_program, normalize_newlines, print_expr
from .serialize import canonical_json, doc_to_html, doc_to_json

EXIT_OK, EXIT_SEMANTIC, EXIT_PARSE, EXIT_RESOURCE = 0, 1, 2, 3


class CommandError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def read_text(path: str) -> str:
    try:
        return normalize_newlines(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise CommandError(f"{path}: {exc.strerror}", EXIT_PARSE) from None
    except UnicodeDecodeError:
        raise CommandError(f"{path}: not valid UTF-8", EXIT_PARSE) from None


def describe(exc: DocCalcError, program: Program | None) -> str:
    """The error message, prefixed with the JSON pointer of the offending
    node when it came from the program file."""
    node = getattr(exc, "node", None)
    where = program.location_of(node) if program is not None else None
    return f"{where}: {exc}" if where else str(exc)


class Session:
    """One command invocation: the parsed program and the global flags."""

    def __init__(self, args):
        self.args = args
        self.program: Program | None = None

    def load(self) -> Program:
        self.program = load_program(read_text(self.args.file))
        return self.program

    def check(self):
        return typecheck(None, self.program.body)

    def runtime(self) -> Runtime:
        keys = self.program.components or tuple(BUILTINS)
        missing = [k for k in keys if k not in BUILTINS]
        if missing:
            raise UnknownComponent(f"no component registered under {missing[0]!r}")
        return Runtime(BUILTINS[k] for k in keys)

    def evaluate(self, strategy: str = "splice"):
        """Type, desugar and run the program: returns (type, value)."""
        ty = self.check()
        body = retarget(self.program.body, strategy) if strategy != "splice" else self.program.body
        value = evaluate(desugar(body, literal_reforest=self.args.literal_reforest), self.args.fuel)
        return ty, value

    def document(self, ty, value) -> list:
        """Decode an evaluated node list (or react document) into an article."""
        if alpha_eq(ty, NODE_LIST):
            doc = nodes_from_value(value)
        elif alpha_eq(ty, REACT_LIST):
            doc = doc_view(self.runtime().materialize(react_nodes_from_value(value)))
        else:
            raise CommandError(f"expected a document, found a program of type {format_type(ty)}", EXIT_SEMANTIC)
        violations = validate_article(doc, permissive=self.args.permissive)
        for v in violations:
            print(f"{v.severity}: {v}", file=sys.stderr)
        if errors_only(violations):
            raise CommandError("the result is not a valid article", EXIT_SEMANTIC)
        return doc


def emit(doc, fmt: str):
    if fmt == "html":
        sys.stdout.write(doc_to_html(doc) + "\n")
    else:
        sys.stdout.write(dumps(doc_to_json(doc)))


# -- commands ------------------------------------------------------------------

def cmd_check(s: Session) -> int:
    s.load()
    print(format_type(s.check()))
    return EXIT_OK


def cmd_desugar(s: Session) -> int:
    s.load()
    s.check()
    body = retarget(s.program.body, s.args.strategy)
    out = desugar(body, literal_reforest=s.args.literal_reforest)
    program = {"version": "doccalc/1", "body": print_expr(out)}
    if s.program.components:
        program["components"] = list(s.program.components)
    sys.stdout.write(dumps(program))
    return EXIT_OK


def cmd_eval(s: Session) -> int:
    s.load()
    ty, value = s.evaluate(s.args.strategy)
    if alpha_eq(ty, STR):
        sys.stdout.write(value.value + "\n")
        return EXIT_OK
    emit(s.document(ty, value), s.args.out)
    return EXIT_OK


def cmd_render(s: Session) -> int:
    s.load()
    ty, value = s.evaluate(s.args.strategy)
    emit(render_refs(s.document(ty, value)), s.args.out)
    return EXIT_OK


def read_trace(path: str | None) -> list[dict[int, str]]:
    if path is None:
        return []
    trace = []
    for lineno, line in enumerate(read_text(path).splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", f"{path} line {lineno}") from None
        signals = obj.get("signals") if isinstance(obj, dict) else None
        if not isinstance(signals, dict) or not all(isinstance(v, str) for v in signals.values()):
            raise ParseError('expected {"signals": {"<id>": "<signal>"}}', f"{path} line {lineno}")
        try:
            trace.append({int(k): v for k, v in signals.items()})
        except ValueError:
            raise ParseError("instance ids must be integers", f"{path} line {lineno}") from None
    return trace


def cmd_react(s: Session) -> int:
    s.load()
    ty = s.check()
    if not alpha_eq(ty, REACT_LIST):
        raise CommandError(f"react needs a ReactNode list program, found {format_type(ty)}", EXIT_SEMANTIC)
    trace = read_trace(s.args.trace)
    _, value = s.evaluate()
    runtime = s.runtime()
    v0 = runtime.materialize(react_nodes_from_value(value))
    stats = RunStats()
    run = run_incr if s.args.strategy == "incr" else run_simple
    articles = run(v0, trace, runtime, stats)
    if s.args.emit:
        out = Path(s.args.emit)
        out.mkdir(parents=True, exist_ok=True)
        for i, article in enumerate(articles):
            (out / f"article_{i}.json").write_text(canonical_json(article) + "\n", encoding="utf-8")
    else:
        for article in articles:
            print(canonical_json(article))
    print(f"strategy={s.args.strategy} steps={stats.steps} sections_calls={stats.sections_calls} "
          f"dirty_steps={stats.dirty_steps}")
    return EXIT_OK


def cmd_verify(s: Session) -> int:
    """Run one of the randomized property suites; DOCCALC_SEED fixes the seed."""
    seed = int(os.environ.get("DOCCALC_SEED", "0"))
    which = s.args.property
    if which == "preservation":
        from ..template.preservation import check_preservation

        report = check_preservation(seed=seed, count=s.args.count or 1000)
        print(f"preservation seed={seed} checked={report.checked} accepted={report.accepted} "
              f"counterexamples={len(report.counterexamples)}")
    elif which == "agreement":
        from ..reactive.agreement import check_agreement

        report = check_agreement(seed=seed, count=s.args.count or 200)
        print(f"agreement seed={seed} documents={report.documents} steps={report.steps} "
              f"mismatches={len(report.mismatches)} missed_changes={len(report.missed_changes)} "
              f"numbering_changes={report.numbering_changes}")
    elif which == "safety":
        from ..kernel.generate import check_type_safety

        report = check_type_safety(seed=seed, count=s.args.count or 5000)
        print(f"safety seed={seed} terms={report.terms} steps={report.steps} failures={len(report.failures)}")
    else:
        from ..template.strategy import check_strategy_equivalence

        report = check_strategy_equivalence(seed=seed, count=s.args.count or 500)
        print(f"strategies seed={seed} compared={report.compared} mismatches={len(report.mismatches)}")
    return EXIT_OK if report.ok else EXIT_SEMANTIC


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, default=DEFAULT_FUEL, help="maximum evaluation steps")
    common.add_argument("--permissive", action="store_true", help="unknown tags are warnings, not errors")
    common.add_argument("--literal-reforest", action="store_true",
                        help="reforest exactly as the equations say, keeping empty paragraphs")

    parser = argparse.ArgumentParser(prog="doccalc", description="Typed document templates and reactive documents.")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, fn, help_text, file=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if file:
            p.add_argument("file", help="program JSON file")
        p.set_defaults(run=fn)
        return p

    command("check", cmd_check, "print the type of a program")
    p = command("desugar", cmd_desugar, "print the template-free program")
    p.add_argument("--strategy", choices=("splice", "fragment"), default="splice")
    for name, fn, help_text in (("eval", cmd_eval, "evaluate a program"),
                                ("render", cmd_render, "evaluate and resolve references")):
        p = command(name, fn, help_text)
        p.add_argument("--out", choices=("json", "html"), default="json")
        p.add_argument("--strategy", choices=("splice", "fragment"), default="splice")
    p = command("react", cmd_react, "step a reactive document through a signal trace")
    p.add_argument("--trace", help="JSON lines of {\"signals\": {id: signal}}")
    p.add_argument("--strategy", choices=("simple", "incr"), default="incr")
    p.add_argument("--emit", metavar="DIR", help="write article_<i>.json files here")
    p = command("verify", cmd_verify, "run a randomized property suite", file=False)
    p.add_argument("property", choices=("preservation", "agreement", "safety", "strategies"))
    p.add_argument("--count", type=int, default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    session = Session(args)
    try:
        return args.run(session)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (FuelExhausted, RecursionError) as exc:
        msg = str(exc) if isinstance(exc, FuelExhausted) else "recursion limit reached"
        print(f"resource error: {msg}", file=sys.stderr)
        return EXIT_RESOURCE
    except RefValidationError as exc:
        for err in exc.errors:
            print(f"error: {err}", file=sys.stderr)
        return EXIT_SEMANTIC
    except TypeCheckError as exc:
        print(f"type error: {describe(exc, session.program)}", file=sys.stderr)
        return EXIT_SEMANTIC
    except DocCalcError as exc:
        print(f"error: {describe(exc, session.program)}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
