"""Security assessment of Cloud-Edge deployments over probabilistic and
algebraic knowledge bases.

Errors raised by the engine are ``secassess.Error`` with ``args`` set to
``(code, message)``; syntax errors are ``secassess.ParseError``.
"""

from ._secassess import (
    Error,
    KnowledgeBase,
    ParseError,
    __version__,
    answer_queries,
    explain,
    explain_trust,
    ground_graph,
    lint,
    load,
    parse,
    rank,
    trust,
)

__all__ = [
    "Error",
    "KnowledgeBase",
    "ParseError",
    "answer_queries",
    "explain",
    "explain_trust",
    "ground_graph",
    "lint",
    "load",
    "parse",
    "rank",
    "trust",
]
