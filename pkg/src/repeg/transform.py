"""Compile regexes into PEGs with continuation-passing transformation.

`pi` threads a continuation expression through the regex: every
subexpression is turned into a parsing expression that matches it and then
whatever must follow.  Repetitions become fresh non-terminals.  With
``optimize=True`` repetitions whose body cannot be confused with the
continuation become PEG stars, which do not leave backtrack entries behind.
"""

from __future__ import annotations

from .peg import (
    EPSILON_FACTS, Facts, Grammar, PAny, PClass, PEmpty, PNot, PStar, PegExpr,
    Var, analyze, check_complete, empty_grammar, expr_facts, palt, pand, pseq,
)
from .regex import (
    Alphabet, Atomic, Choice, Class, Concat, Empty, Lazy, NegLookahead,
    PosLookahead, Possessive, Regex, Star, first_set, is_length_one,
    is_well_formed, null_pred,
)
from .rewrite import f_out

__all__ = [
    "NameSupply", "NotWellFormedError", "pi", "pi_opt_repetition",
    "compile_regex", "direct_peg", "commits",
]


class NotWellFormedError(ValueError):
    """Π was asked to transform a repetition whose body matches ε."""


class NameSupply:
    """Fresh non-terminal names A0, A1, ... avoiding names already in use."""

    def __init__(self, taken=(), prefix: str = "A"):
        self.counter = 0
        self.prefix = prefix
        self.taken = set(taken)

    def fresh(self) -> str:
        while True:
            name = f"{self.prefix}{self.counter}"
            self.counter += 1
            if name not in self.taken:
                self.taken.add(name)
                return name


def commits(e: Regex) -> bool:
    """True if `e` matches at most one prefix of any input.

    Only such bodies may be turned into PEG repetitions: a body with two
    ways to match would need backtracking between them.
    """
    if isinstance(e, (Empty, Class, Atomic, Possessive, NegLookahead, PosLookahead)):
        return True
    if isinstance(e, Concat):
        return commits(e.left) and commits(e.right)
    if isinstance(e, Choice):
        if is_length_one(e):
            return True
        if not (commits(e.left) and commits(e.right)):
            return False
        if null_pred(e.left) or null_pred(e.right):
            return False
        return not (first_set(e.left) & first_set(e.right))
    return False


class _Pi:
    """One transformation session: shared productions, facts and names."""

    def __init__(self, k: Grammar, names: NameSupply, optimize: bool):
        self.alphabet = k.alphabet
        self.prods: dict = dict(k.productions)
        self.names = names
        names.taken.update(self.prods)
        self.optimize = optimize
        self.facts: dict = analyze(k) if optimize else {}

    def terminal(self, chars: frozenset) -> PegExpr:
        return PAny() if chars == self.alphabet.charset else PClass(chars)

    def expr_facts(self, p: PegExpr) -> Facts:
        if isinstance(p, PEmpty):
            return EPSILON_FACTS
        return expr_facts(p, self.facts, self.alphabet)

    def new_rule(self, e1: Regex, pk: PegExpr) -> str:
        a = self.names.fresh()
        if self.optimize:
            f = self.expr_facts(pk)
            self.facts[a] = Facts(empty=f.empty, consume=True, fail=f.fail,
                                  first=first_set(e1) | f.first, gate=f.gate)
        return a

    def go(self, e: Regex, pk: PegExpr) -> PegExpr:
        if isinstance(e, Empty):
            return pk
        if isinstance(e, Class):
            return pseq(self.terminal(e.chars), pk)
        if isinstance(e, Concat):
            return self.go(e.left, self.go(e.right, pk))
        if isinstance(e, Choice):
            p1 = self.go(e.left, pk)
            p2 = self.go(e.right, pk)
            return palt(p1, p2)
        if isinstance(e, Star):
            if null_pred(e.body):
                raise NotWellFormedError("repetition over an expression that matches ε")
            if self.optimize:
                p = self.star_opt(e.body, pk)
                if p is not None:
                    return p
            a = self.new_rule(e.body, pk)
            p1 = self.go(e.body, Var(a))
            self.prods[a] = palt(p1, pk)
            return Var(a)
        if isinstance(e, Lazy):
            if null_pred(e.body):
                raise NotWellFormedError("lazy repetition over an expression that matches ε")
            a = self.new_rule(e.body, pk)
            p1 = self.go(e.body, Var(a))
            self.prods[a] = palt(pk, p1)
            return Var(a)
        if isinstance(e, Atomic):
            return pseq(self.go(e.body, PEmpty()), pk)
        if isinstance(e, Possessive):
            return self.go(Atomic(Star(e.body)), pk)
        if isinstance(e, NegLookahead):
            return pseq(PNot(self.go(e.body, PEmpty())), pk)
        if isinstance(e, PosLookahead):
            return pseq(pand(self.go(e.body, PEmpty())), pk)
        raise TypeError(f"not a regex: {e!r}")

    def star_opt(self, e1: Regex, pk: PegExpr) -> PegExpr | None:
        """Possessive or predicated form of e1* followed by pk, if safe."""
        if not commits(e1):
            return None
        f = self.expr_facts(pk)
        if f.fail:
            trig = f.trigger
            if trig is None:
                return None
            if not (first_set(e1) & trig):
                return pseq(PStar(self.go(e1, PEmpty())), pk)
            # iterations that start outside trig cannot hand over to pk
            a = self.new_rule(e1, pk)
            p1 = self.go(e1, PEmpty())
            guard = PStar(pseq(PNot(self.terminal(trig)), p1))
            self.prods[a] = pseq(guard, palt(pseq(p1, Var(a)), pk))
            return Var(a)
        return pseq(PStar(self.go(e1, PEmpty())), pk)


def pi(e: Regex, k: Grammar | None = None, names: NameSupply | None = None,
       optimize: bool = False) -> Grammar:
    """Π(e, G_k): a PEG that matches `e` and then the start of `k`."""
    k = k if k is not None else empty_grammar()
    names = names if names is not None else NameSupply()
    if not is_well_formed(e):
        raise NotWellFormedError("regex is not well-formed; rewrite it with f_out first")
    session = _Pi(k, names, optimize)
    start = session.go(e, k.start)
    return Grammar(session.prods, start, k.alphabet)


def pi_opt_repetition(e1: Regex, e2: Regex, k: Grammar | None = None,
                      names: NameSupply | None = None) -> Grammar:
    """Transform e1* e2 using a PEG star where that keeps the matches intact.

    Falls back to the plain rule when the body is ambiguous or the
    continuation may succeed without looking at the input.
    """
    k = k if k is not None else empty_grammar()
    names = names if names is not None else NameSupply()
    session = _Pi(k, names, optimize=True)
    if not is_well_formed(Concat(Star(e1), e2)):
        raise NotWellFormedError("regex is not well-formed; rewrite it with f_out first")
    pk = session.go(e2, k.start)
    start = session.go(Star(e1), pk)
    return Grammar(session.prods, start, k.alphabet)


def compile_regex(e: Regex, alphabet: Alphabet | None = None, rewrite: bool = True,
                  optimize: bool = True, names: NameSupply | None = None) -> Grammar:
    """f_out, then Π against the empty continuation."""
    alphabet = alphabet or Alphabet.bytes()
    if rewrite:
        e = f_out(e)
    g = pi(e, empty_grammar(alphabet), names, optimize)
    if rewrite:
        assert check_complete(g), "transformation produced an incomplete grammar"
    return g


def direct_peg(e: Regex, alphabet: Alphabet | None = None) -> Grammar:
    """Read a regex as a PEG without transformation: | becomes /, * becomes PEG *."""
    alphabet = alphabet or Alphabet.bytes()

    def go(x):
        if isinstance(x, Empty):
            return PEmpty()
        if isinstance(x, Class):
            return PAny() if x.chars == alphabet.charset else PClass(x.chars)
        if isinstance(x, Concat):
            return pseq(go(x.left), go(x.right))
        if isinstance(x, Choice):
            return palt(go(x.left), go(x.right))
        if isinstance(x, (Star, Possessive)):
            return PStar(go(x.body))
        if isinstance(x, Atomic):
            return go(x.body)
        if isinstance(x, NegLookahead):
            return PNot(go(x.body))
        if isinstance(x, PosLookahead):
            return pand(go(x.body))
        raise ValueError("lazy repetition has no direct PEG reading")

    return Grammar({}, go(e), alphabet)
