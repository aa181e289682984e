"""Rendering references in a reactive document: recompute the identifier
context on every step, or only when the dirty check says it may have changed."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import RefValidationError, UnknownInstance
from ..refs import check_valid, replace_refs, sections
from .runtime import Runtime, dirty, doc_view, instance_ids


@dataclass
class RunStats:
    sections_calls: int = 0
    steps: int = 0
    dirty_steps: int = 0


def _sections(article, stats: RunStats):
    stats.sections_calls += 1
    return sections(article)


def _resolve(delta, article):
    errors = check_valid(delta, article)
    if errors:
        raise RefValidationError(errors)
    return replace_refs(delta, article)


def _checked_step(runtime: Runtime, signals, v):
    unknown = set(signals) - instance_ids(v)
    if unknown:
        raise UnknownInstance(min(unknown))
    return runtime.doc_step(signals, v)


def run_simple(v0, trace, runtime: Runtime, stats: RunStats | None = None) -> list[list]:
    """Articles a_0 … a_n with references rendered from scratch each time."""
    stats = stats if stats is not None else RunStats()
    outputs = []
    v = v0
    for i in range(len(trace) + 1):
        article = doc_view(v)
        outputs.append(_resolve(_sections(article, stats), article))
        if i < len(trace):
            v = _checked_step(runtime, trace[i], v)
            stats.steps += 1
    return outputs


def run_incr(v0, trace, runtime: Runtime, stats: RunStats | None = None) -> list[list]:
    """Same articles as ``run_simple``, reusing the identifier context
    until a step is dirty."""
    stats = stats if stats is not None else RunStats()
    outputs = []
    v, prev, delta = v0, None, None
    for i in range(len(trace) + 1):
        article = doc_view(v)
        if i == 0 or dirty(prev, v):
            if i > 0:
                stats.dirty_steps += 1
            delta = _sections(article, stats)
        outputs.append(_resolve(delta, article))
        if i < len(trace):
            prev, v = v, _checked_step(runtime, trace[i], v)
            stats.steps += 1
    return outputs


def trajectory(v0, trace, runtime: Runtime) -> list:
    """The reactive trees v_0 … v_n."""
    states = [v0]
    for signals in trace:
        states.append(_checked_step(runtime, signals, states[-1]))
    return states
