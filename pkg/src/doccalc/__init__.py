"""A typed calculus of document templates: a System F kernel, template
desugaring, and the article/reference/reactive layers built on it."""

import sys

# Encoded lists nest one constructor per element, and both the evaluator and
# the typechecker recurse structurally over them.
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)

__version__ = "0.1.0"
