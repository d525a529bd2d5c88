"""Unanchored search: wrap a compiled pattern in a grammar that tries every start."""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass

from .peg import Grammar, PAny, PEmpty, PNot, PStar, Var, _run, palt, pseq
from .regex import (
    Alphabet, Regex, Star, concat_factors, first_set, is_length_one,
    is_well_formed, null_pred, seq,
)
from .rewrite import f_out
from .transform import NameSupply, NotWellFormedError, _Pi

__all__ = ["SearchMode", "SearchHit", "SearchGrammar", "build_search_grammar", "search", "applicable_modes"]

UNLIMITED = sys.maxsize


class SearchMode(enum.Enum):
    NAIVE = "naive"
    FIRST_SKIP = "first"
    COMBINED = "combined"
    COMBINED_DISJOINT = "disjoint"
    AUTO = "auto"


@dataclass(frozen=True)
class SearchHit:
    start: int
    end: int


@dataclass(frozen=True)
class SearchGrammar:
    grammar: Grammar
    mode: SearchMode
    requested: SearchMode
    mark: str

    @property
    def fell_back(self) -> bool:
        return self.requested not in (self.mode, SearchMode.AUTO)


def _split(e: Regex):
    """Return (e1, plus, e2) when e is e1* e2 or e1 e1* e2 with |e1| = 1."""
    fs = concat_factors(e)
    if len(fs) >= 2 and isinstance(fs[0], Star) and is_length_one(fs[0].body):
        return fs[0].body, False, seq(*fs[1:])
    if (len(fs) >= 3 and isinstance(fs[1], Star) and fs[1].body == fs[0]
            and is_length_one(fs[0])):
        return fs[0], True, seq(*fs[2:])
    return None


def applicable_modes(e: Regex) -> list:
    """Modes usable for the (rewritten) regex `e`, weakest first."""
    modes = [SearchMode.NAIVE]
    if null_pred(e) or not first_set(e):
        return modes
    modes.append(SearchMode.FIRST_SKIP)
    parts = _split(e)
    if parts is None:
        return modes
    e1, plus, e2 = parts
    if null_pred(e2):
        return modes
    modes.append(SearchMode.COMBINED)
    if not (first_set(e1) & first_set(e2)):
        modes.append(SearchMode.COMBINED_DISJOINT)
    return modes


def build_search_grammar(e: Regex, mode: SearchMode = SearchMode.AUTO,
                         alphabet: Alphabet | None = None, names: NameSupply | None = None,
                         rewrite: bool = True, optimize: bool = True) -> SearchGrammar:
    """Grammar whose match from offset 0 finds the leftmost match of `e`.

    A requested mode whose preconditions fail degrades to the strongest
    mode that applies; `SearchGrammar.mode` tells which one was used.
    """
    alphabet = alphabet or Alphabet.bytes()
    if rewrite:
        e = f_out(e)
    elif not is_well_formed(e):
        raise NotWellFormedError("regex is not well-formed; rewrite it with f_out first")
    names = names if names is not None else NameSupply()
    modes = applicable_modes(e)
    chosen = modes[-1] if mode is SearchMode.AUTO else mode
    if chosen not in modes:
        order = list(SearchMode)
        chosen = max((m for m in modes if order.index(m) <= order.index(chosen)),
                     key=order.index)

    session = _Pi(Grammar({}, PEmpty(), alphabet), names, optimize)
    p = session.go(e, PEmpty())
    s_name, m_name = names.fresh(), names.fresh()
    s, m = Var(s_name), Var(m_name)
    prods = session.prods
    dot = PAny()

    if chosen is SearchMode.NAIVE:
        prods[m_name] = p
        prods[s_name] = palt(m, pseq(dot, s))
    else:
        first = first_set(e)
        skip = PStar(pseq(PNot(session.terminal(first)), dot))
        if chosen is SearchMode.FIRST_SKIP:
            prods[m_name] = p
            prods[s_name] = pseq(skip, palt(m, pseq(dot, s)))
        else:
            e1, plus, e2 = _split(e)
            p1 = session.go(e1, PEmpty())
            if chosen is SearchMode.COMBINED:
                # a failed start inside a run of e1 symbols fails for the whole run
                prods[m_name] = p
                prods[s_name] = pseq(skip, palt(m, pseq(p1, PStar(p1), s), pseq(dot, s)))
            else:
                p2 = session.go(e2, PEmpty())
                if plus:
                    prods[m_name] = pseq(p1, PStar(p1), palt(p2, s))
                else:
                    prods[m_name] = pseq(PStar(p1), palt(p2, pseq(dot, s)))
                prods[s_name] = pseq(skip, m)
    g = Grammar(prods, s, alphabet)
    return SearchGrammar(g, chosen, mode, m_name)


def search(sg: SearchGrammar, subject: str, fuel: int = UNLIMITED) -> SearchHit | None:
    """Leftmost hit of the search grammar in `subject`, or None."""
    program = sg.grammar._program
    end, start, _ = _run(program, subject, 0, fuel, program[2][sg.mark])
    if end < 0:
        return None
    return SearchHit(start, end)
