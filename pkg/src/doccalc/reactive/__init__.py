"""Reactive documents: components with state, a runtime that steps and
reconciles them, and two ways of rendering section references."""

from .bridge import react_from_value, react_nodes_from_value
from .components import BUILTINS, counter, kernel_component, label, toggle_section
from .runtime import (
    ComponentDef, Elem, Inst, Runtime, descendents, dirty, doc_view, instance_ids,
)
from .strategies import RunStats, run_incr, run_simple, trajectory
