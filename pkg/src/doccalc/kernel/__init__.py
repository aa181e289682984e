"""System F core with strings, booleans, records, sums, recursive and
existential types, plus the list primitives the templates desugar to."""

from .context import EMPTY, TplCtx, TyCtxt
from .evaluate import DEFAULT_FUEL, evaluate, step
from .stdlib import (
    FNODE, NODE_FRAG, NODE_LIST, NODE_TY, REACT_NODE, build_list, cons, from_literal,
    list_items, list_type, nil, str_list, variant,
)
from .subst import free_vars, subst, subst_type_in_expr
from .terms import (
    App, BoolLit, Case, Concat, Fix, Fold, If, Inject, Lambda, Let, Pack, Prim, Project,
    RecordLit, StrLit, TyApp, TyLambda, Unfold, Unpack, Var, is_value,
)
from .typecheck import typecheck
from .types import (
    BOOL, STR, UNIT, Arrow, Bool, Exists, Forall, Mu, Record, Str, Sum, TVar, Type,
    alpha_eq, format_type,
)
