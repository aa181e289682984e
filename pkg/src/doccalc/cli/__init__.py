"""Program files, surface syntax, serialization and the command line."""

from .jsonast import Program, load_program, parse_expr, parse_program, print_expr, print_program
from .serialize import canonical_json, doc_from_json, doc_to_html, doc_to_json
from .surface import parse_surface, print_surface
