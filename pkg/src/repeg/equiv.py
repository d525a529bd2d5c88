"""Brute-force equivalence checking between compiled PEGs and the oracles."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .oracle import DEFAULT_FUEL, FuelExhausted, all_strings, re_prefix_set, regex_backtrack_match
from .peg import Grammar, peg_match
from .regex import (
    Alphabet, Atomic, Choice, Class, Concat, Empty, Lazy, NegLookahead,
    PosLookahead, Possessive, Regex, Star, has_extensions, parse_regex, to_source,
)
from .transform import compile_regex, direct_peg

__all__ = ["Violation", "EquivReport", "cmd_equiv", "check_regex", "gen_regex", "MAX_ALPHABET", "MAX_LEN"]

MAX_ALPHABET = 4
MAX_LEN = 10

EQ12 = "Eq12"
EQ13 = "Eq13"
ORDERING = "Ordering"


@dataclass(frozen=True)
class Violation:
    input: str
    kind: str
    peg: int | None
    evidence: object

    def as_dict(self) -> dict:
        ev = sorted(self.evidence) if isinstance(self.evidence, frozenset) else self.evidence
        return {"input": self.input, "kind": self.kind, "peg": self.peg, "oracle": ev}


@dataclass
class EquivReport:
    regex: str
    violations: list = field(default_factory=list)
    tested_inputs: int = 0
    oracle_fuel_outs: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "pattern": self.regex,
            "tested_inputs": self.tested_inputs,
            "oracle_fuel_outs": self.oracle_fuel_outs,
            "violations": [v.as_dict() for v in self.violations],
        }


def check_regex(e: Regex, alphabet: Alphabet, maxlen: int, grammar: Grammar | None = None,
                fuel: int = DEFAULT_FUEL, source: str | None = None) -> EquivReport:
    """Compare `grammar` (by default compile(e)) against both oracles on every short input."""
    g = grammar if grammar is not None else compile_regex(e, alphabet)
    report = EquivReport(source if source is not None else to_source(e, alphabet))
    pure = not has_extensions(e)
    for s in all_strings(alphabet, maxlen):
        report.tested_inputs += 1
        n = peg_match(g, s, fuel)
        if pure:
            prefixes = re_prefix_set(e, s)
            if n is not None and n not in prefixes:
                report.violations.append(Violation(s, EQ12, n, prefixes))
            if n is None and prefixes:
                report.violations.append(Violation(s, EQ13, n, prefixes))
        try:
            expected = regex_backtrack_match(e, s, fuel)
        except FuelExhausted:
            report.oracle_fuel_outs += 1
            continue
        if n != expected:
            report.violations.append(Violation(s, ORDERING, n, expected))
    return report


def cmd_equiv(regex: str, alphabet: str = "ab", maxlen: int = 6, direct: bool = False,
              fuel: int = DEFAULT_FUEL) -> EquivReport:
    """Check one regex (concrete syntax) on all strings over `alphabet` up to `maxlen`."""
    if len(set(alphabet)) > MAX_ALPHABET or maxlen > MAX_LEN:
        raise ValueError(f"equivalence checking is limited to {MAX_ALPHABET} symbols "
                         f"and inputs of length {MAX_LEN}")
    alpha = Alphabet.from_chars(alphabet)
    e = parse_regex(regex, alpha)
    g = direct_peg(e, alpha) if direct else compile_regex(e, alpha)
    return check_regex(e, alpha, maxlen, g, fuel, source=regex)


_EXTENSIONS = (Atomic, Possessive, Lazy, NegLookahead, PosLookahead)


def gen_regex(seed: int, depth: int, alphabet: Alphabet | str = "ab",
              extensions: bool = False) -> Regex:
    """Deterministic random regex; leaves are ε or a single symbol."""
    if depth > 8:
        raise ValueError("depth must be at most 8")
    if isinstance(alphabet, str):
        alphabet = Alphabet.from_chars(alphabet)
    rng = random.Random(seed)
    leaves = [None, *alphabet.symbols]
    kinds = ["leaf", "concat", "choice", "star"]
    weights = [40, 20, 20, 10]
    if extensions:
        kinds.append("ext")
        weights.append(10)

    def leaf():
        c = rng.choice(leaves)
        return Empty() if c is None else Class(frozenset(c))

    def go(d):
        if d == 0:
            return leaf()
        kind = rng.choices(kinds, weights)[0]
        if kind == "leaf":
            return leaf()
        if kind == "concat":
            return Concat(go(d - 1), go(d - 1))
        if kind == "choice":
            return Choice(go(d - 1), go(d - 1))
        if kind == "star":
            return Star(go(d - 1))
        return rng.choice(_EXTENSIONS)(go(d - 1))

    return go(depth)
