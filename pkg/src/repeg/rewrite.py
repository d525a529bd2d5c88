"""Rewrite regexes into well-formed ones.

`f_out` walks the expression looking for repetitions whose body can match
the empty string; `f_in` rewrites such a body so that it no longer matches
ε while the repetition keeps its language.
"""

from __future__ import annotations

from .regex import (
    Atomic, Choice, Class, Concat, Empty, Lazy, NegLookahead, PosLookahead,
    Possessive, Regex, Star, empty_pred, null_pred,
)

__all__ = ["f_out", "f_in", "make_well_formed"]


def f_out(e: Regex) -> Regex:
    if isinstance(e, (Empty, Class)):
        return e
    if isinstance(e, Concat):
        return Concat(f_out(e.left), f_out(e.right))
    if isinstance(e, Choice):
        return Choice(f_out(e.left), f_out(e.right))
    if isinstance(e, (Star, Possessive, Lazy)):
        kind = type(e)
        if not null_pred(e.body):
            return kind(f_out(e.body))
        if empty_pred(e.body):
            return Empty()
        return kind(f_in(e.body))
    if isinstance(e, Atomic):
        return Atomic(f_out(e.body))
    if isinstance(e, NegLookahead):
        return NegLookahead(f_out(e.body))
    if isinstance(e, PosLookahead):
        return PosLookahead(f_out(e.body))
    raise TypeError(f"not a regex: {e!r}")


def f_in(e: Regex) -> Regex:
    """Rewrite the body of a repetition; requires null(e) and not empty(e)."""
    assert null_pred(e) and not empty_pred(e), "f_in precondition violated"
    if isinstance(e, Concat):
        return f_in(Choice(e.left, e.right))
    if isinstance(e, Choice):
        e1, e2 = e.left, e.right
        # rows are tried top to bottom; the first that applies wins
        if empty_pred(e1) and null_pred(e2):
            return f_in(e2)
        if empty_pred(e1) and not null_pred(e2):
            return f_out(e2)
        if null_pred(e1) and empty_pred(e2):
            return f_in(e1)
        if not null_pred(e1) and empty_pred(e2):
            return f_out(e1)
        if not null_pred(e1) and not empty_pred(e2):
            return Choice(f_out(e1), f_in(e2))
        if not empty_pred(e1) and not null_pred(e2):
            return Choice(f_in(e1), f_out(e2))
        return Choice(f_in(e1), f_in(e2))
    if isinstance(e, (Star, Possessive, Lazy)):
        return f_in(e.body) if null_pred(e.body) else f_out(e.body)
    if isinstance(e, Atomic):
        return Atomic(f_in(e.body))
    raise AssertionError(f"f_in is undefined for {type(e).__name__}")


make_well_formed = f_out
