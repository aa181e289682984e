"""Templates: syntax, typing rules and desugaring into the kernel."""

from .desugar import contains_template, desugar, desugar_template
from .syntax import (
    Component, FlowTpl, Foreach, FragTpl, IfPart, Interp, Lit, NodePart, ReactTpl, Set,
    SpliceList, StrTpl, Template, TemplateExpr, TreeTpl, tpl,
)
from .typing import typecheck_template, typecheck_template_expr
