"""Parsing expression grammars: data model, matcher, analysis and text format."""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Mapping, Union

from .oracle import DEFAULT_FUEL, FuelExhausted
from .regex import Alphabet, _escape_control, format_class, parse_class_body, read_escape

__all__ = [
    "PEmpty", "PClass", "PAny", "Var", "PSeq", "PChoice", "PStar", "PNot",
    "PegExpr", "Grammar", "GrammarSyntaxError", "Facts",
    "pseq", "palt", "pand", "empty_grammar",
    "peg_match", "peg_steps", "grammar_size", "check_complete", "analyze", "expr_facts",
    "serialize_grammar", "parse_grammar", "format_expr",
]


@dataclass(frozen=True)
class PEmpty:
    pass


@dataclass(frozen=True)
class PClass:
    chars: frozenset

    def __post_init__(self):
        if not self.chars:
            raise ValueError("character class must be non-empty")
        if not isinstance(self.chars, frozenset):
            object.__setattr__(self, "chars", frozenset(self.chars))


@dataclass(frozen=True)
class PAny:
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class PSeq:
    left: "PegExpr"
    right: "PegExpr"


@dataclass(frozen=True)
class PChoice:
    left: "PegExpr"
    right: "PegExpr"


@dataclass(frozen=True)
class PStar:
    body: "PegExpr"


@dataclass(frozen=True)
class PNot:
    body: "PegExpr"


PegExpr = Union[PEmpty, PClass, PAny, Var, PSeq, PChoice, PStar, PNot]


def pseq(*parts: PegExpr) -> PegExpr:
    """Concatenation that drops ε operands and nests to the right."""
    parts = [p for p in parts if not isinstance(p, PEmpty)]
    if not parts:
        return PEmpty()
    out = parts[-1]
    for p in reversed(parts[:-1]):
        while isinstance(p, PSeq):
            out = PSeq(p.right, out) if not isinstance(p.right, PEmpty) else out
            p = p.left
        out = PSeq(p, out)
    return out


def palt(*parts: PegExpr) -> PegExpr:
    """Ordered choice nested to the left."""
    out = parts[0]
    for p in parts[1:]:
        stack = []
        while isinstance(p, PChoice):
            stack.append(p.right)
            p = p.left
        out = PChoice(out, p)
        while stack:
            out = PChoice(out, stack.pop())
    return out


def pand(p: PegExpr) -> PegExpr:
    """And-predicate, the derived form !!p."""
    return PNot(PNot(p))


class GrammarSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Grammar:
    """A PEG (V, T, P, p_S); V is the key order of `productions`."""

    productions: Mapping[str, PegExpr]
    start: PegExpr
    alphabet: Alphabet = field(default_factory=Alphabet.bytes)

    def __post_init__(self):
        prods = MappingProxyType(dict(self.productions))
        object.__setattr__(self, "productions", prods)
        missing = set()
        for body in [self.start, *prods.values()]:
            missing |= _referenced(body) - prods.keys()
        if missing:
            raise ValueError(f"undefined non-terminal(s): {', '.join(sorted(missing))}")

    def __eq__(self, other):
        if not isinstance(other, Grammar):
            return NotImplemented
        return (dict(self.productions) == dict(other.productions)
                and self.start == other.start and self.alphabet == other.alphabet)

    __hash__ = None

    @property
    def nonterminals(self) -> tuple:
        return tuple(self.productions)

    def with_start(self, p: PegExpr) -> "Grammar":
        """G[p]: same productions, new starting expression."""
        return Grammar(self.productions, p, self.alphabet)

    @cached_property
    def _program(self):
        return _compile_program(self)

    def __str__(self):
        return serialize_grammar(self)


def empty_grammar(alphabet: Alphabet | None = None) -> Grammar:
    return Grammar({}, PEmpty(), alphabet or Alphabet.bytes())


def _referenced(p: PegExpr, acc=None) -> set:
    acc = set() if acc is None else acc
    stack = [p]
    seen = set()
    while stack:
        x = stack.pop()
        if id(x) in seen:
            continue
        seen.add(id(x))
        if isinstance(x, Var):
            acc.add(x.name)
        elif isinstance(x, (PSeq, PChoice)):
            stack.append(x.left)
            stack.append(x.right)
        elif isinstance(x, (PStar, PNot)):
            stack.append(x.body)
    return acc


# --- matcher ---------------------------------------------------------------
#
# Expressions are lowered to tuples whose first slot is an opcode.  The
# matcher keeps a linked continuation (what to do after the current
# expression succeeds) and a stack of backtrack entries, so recursion depth
# in Python never grows with the input.

(OP_EMPTY, OP_CHAR, OP_SET, OP_ANY, OP_VAR, OP_SEQ, OP_CHOICE, OP_STAR,
 OP_NOT, OP_SPAN, OP_SKIPTO, OP_NOTSET) = range(12)
K_SEQ, K_COMMIT, K_STAR, K_NOT = range(4)


def _lower(p, index, memo):
    key = id(p)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(p, PEmpty):
        out = (OP_EMPTY,)
    elif isinstance(p, PClass):
        if len(p.chars) == 1:
            out = (OP_CHAR, next(iter(p.chars)))
        else:
            out = (OP_SET, p.chars)
    elif isinstance(p, PAny):
        out = (OP_ANY,)
    elif isinstance(p, Var):
        out = (OP_VAR, index[p.name])
    elif isinstance(p, PSeq):
        out = (OP_SEQ, _lower(p.left, index, memo), _lower(p.right, index, memo))
    elif isinstance(p, PChoice):
        out = (OP_CHOICE, _lower(p.left, index, memo), _lower(p.right, index, memo))
    elif isinstance(p, PStar):
        b = p.body
        if isinstance(b, PClass):
            out = (OP_SPAN, b.chars)
        elif (isinstance(b, PSeq) and isinstance(b.right, PAny) and isinstance(b.left, PNot)
              and isinstance(b.left.body, PClass)):
            out = (OP_SKIPTO, b.left.body.chars)
        else:
            out = (OP_STAR, _lower(b, index, memo))
    elif isinstance(p, PNot):
        if isinstance(p.body, PClass):
            out = (OP_NOTSET, p.body.chars)
        else:
            out = (OP_NOT, _lower(p.body, index, memo))
    else:
        raise TypeError(f"not a parsing expression: {p!r}")
    memo[key] = out
    return out


def _compile_program(g: Grammar):
    names = list(g.productions)
    index = {n: i for i, n in enumerate(names)}
    memo: dict = {}
    rules = [_lower(g.productions[n], index, memo) for n in names]
    start = _lower(g.start, index, memo)
    return start, rules, index


def _run(program, s: str, pos: int, fuel: int, mark: int = -1):
    """Return (end, mark_pos, steps); end is -1 on failure."""
    node, rules, _ = program
    n = len(s)
    bt = []
    k = None
    steps = 0
    mark_pos = -1
    while True:
        steps += 1
        if steps > fuel:
            raise FuelExhausted(f"PEG matcher exceeded {fuel} steps")
        op = node[0]
        if op == OP_SEQ:
            k = ((K_SEQ, node[2]), k)
            node = node[1]
            continue
        if op == OP_CHAR:
            ok = pos < n and s[pos] == node[1]
            if ok:
                pos += 1
        elif op == OP_VAR:
            if node[1] == mark:
                mark_pos = pos
            node = rules[node[1]]
            continue
        elif op == OP_CHOICE:
            bt.append((node[2], pos, k))
            k = ((K_COMMIT, len(bt) - 1), k)
            node = node[1]
            continue
        elif op == OP_SET:
            ok = pos < n and s[pos] in node[1]
            if ok:
                pos += 1
        elif op == OP_EMPTY:
            ok = True
        elif op == OP_ANY:
            ok = pos < n
            if ok:
                pos += 1
        elif op == OP_SPAN:
            cs = node[1]
            while pos < n and s[pos] in cs:
                pos += 1
            ok = True
        elif op == OP_SKIPTO:
            cs = node[1]
            while pos < n and s[pos] not in cs:
                pos += 1
            ok = True
        elif op == OP_NOTSET:
            ok = pos >= n or s[pos] not in node[1]
        elif op == OP_STAR:
            bt.append((None, pos, k))
            k = ((K_STAR, node, len(bt) - 1), None)
            node = node[1]
            continue
        elif op == OP_NOT:
            bt.append((None, pos, k))
            k = ((K_NOT, len(bt) - 1), None)
            node = node[1]
            continue
        else:
            raise AssertionError(f"bad opcode {op}")

        while True:
            if ok:
                if k is None:
                    return pos, mark_pos, steps
                frame, k = k
                kind = frame[0]
                if kind == K_SEQ:
                    node = frame[1]
                    break
                if kind == K_COMMIT:
                    del bt[frame[1]:]
                    continue
                if kind == K_STAR:
                    # one more iteration succeeded: commit it and go again
                    d = frame[2]
                    k = bt[d][2]
                    del bt[d:]
                    node = frame[1]
                    break
                # K_NOT: the predicate's body matched, so the predicate fails
                del bt[frame[1]:]
                ok = False
            else:
                if not bt:
                    return -1, mark_pos, steps
                node, pos, k = bt.pop()
                if node is None:
                    ok = True
                    continue
                break


def peg_match(g: Grammar, s: str, fuel: int = DEFAULT_FUEL) -> int | None:
    """Number of symbols of `s` consumed by `g`, or None if the grammar fails."""
    end, _, _ = _run(g._program, s, 0, fuel)
    return None if end < 0 else end


def peg_steps(g: Grammar, s: str, fuel: int = DEFAULT_FUEL) -> int:
    """How many matcher steps `peg_match(g, s)` takes."""
    return _run(g._program, s, 0, fuel)[2]


def grammar_size(g: Grammar) -> int:
    """Number of expression nodes in the start expression and all productions."""
    total = 0
    for body in [g.start, *g.productions.values()]:
        stack = [body]
        while stack:
            x = stack.pop()
            total += 1
            if isinstance(x, (PSeq, PChoice)):
                stack.append(x.left)
                stack.append(x.right)
            elif isinstance(x, (PStar, PNot)):
                stack.append(x.body)
    return total


# --- static analysis -------------------------------------------------------

@dataclass(frozen=True)
class Facts:
    """What an expression may do at some input position.

    ``gate`` describes when it may succeed without consuming: None means at
    any position, otherwise only when the next symbol is in the set.
    """

    empty: bool = False
    consume: bool = False
    fail: bool = False
    first: frozenset = frozenset()
    gate: frozenset | None = frozenset()

    def join(self, other: "Facts") -> "Facts":
        return Facts(
            self.empty or other.empty,
            self.consume or other.consume,
            self.fail or other.fail,
            self.first | other.first,
            None if self.gate is None or other.gate is None else self.gate | other.gate,
        )

    @property
    def trigger(self) -> frozenset | None:
        """Symbols that may start a success, or None if success needs no symbol."""
        return None if self.gate is None else self.first | self.gate


_BOTTOM = Facts()
EPSILON_FACTS = Facts(empty=True, gate=None)


def _gate_and(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a & b


def expr_facts(p: PegExpr, table: Mapping[str, Facts], alphabet: Alphabet,
               memo: dict | None = None) -> Facts:
    """Facts of `p` given facts for the non-terminals it mentions."""
    memo = {} if memo is None else memo
    key = id(p)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(p, PEmpty):
        out = EPSILON_FACTS
    elif isinstance(p, (PClass, PAny)):
        chars = p.chars if isinstance(p, PClass) else alphabet.charset
        out = Facts(consume=True, fail=True, first=chars)
    elif isinstance(p, Var):
        out = table.get(p.name, _BOTTOM)
    elif isinstance(p, PSeq):
        a = expr_facts(p.left, table, alphabet, memo)
        b = expr_facts(p.right, table, alphabet, memo)
        both_empty = a.empty and b.empty
        out = Facts(
            empty=both_empty,
            consume=(a.consume and (b.empty or b.consume)) or (a.empty and b.consume),
            fail=a.fail or ((a.empty or a.consume) and b.fail),
            first=a.first | b.first if a.empty else a.first,
            gate=_gate_and(a.gate, b.gate) if both_empty else frozenset(),
        )
    elif isinstance(p, PChoice):
        a = expr_facts(p.left, table, alphabet, memo)
        b = expr_facts(p.right, table, alphabet, memo)
        if a.fail:
            out = Facts(a.empty or b.empty, a.consume or b.consume, b.fail,
                        a.first | b.first,
                        None if a.gate is None or b.gate is None else a.gate | b.gate)
        else:
            out = a
    elif isinstance(p, PStar):
        a = expr_facts(p.body, table, alphabet, memo)
        out = Facts(empty=a.fail, consume=a.consume, fail=False, first=a.first,
                    gate=None if a.fail else frozenset())
    elif isinstance(p, PNot):
        a = expr_facts(p.body, table, alphabet, memo)
        if isinstance(p.body, PNot):
            inner = expr_facts(p.body.body, table, alphabet, memo)
            gate = inner.trigger if (inner.empty or inner.consume) else frozenset()
        else:
            gate = None if a.fail else frozenset()
        out = Facts(empty=a.fail, consume=False, fail=a.empty or a.consume, gate=gate)
    else:
        raise TypeError(f"not a parsing expression: {p!r}")
    memo[key] = out
    return out


def analyze(g: Grammar) -> dict:
    """Least fixed point of `Facts` for every non-terminal of `g`."""
    table = {name: _BOTTOM for name in g.productions}
    changed = True
    while changed:
        changed = False
        memo: dict = {}
        for name, body in g.productions.items():
            new = table[name].join(expr_facts(body, table, g.alphabet, memo))
            if new != table[name]:
                table[name] = new
                changed = True
                memo = {}
    return table


def check_complete(g: Grammar) -> bool:
    """Syntactic well-formedness: no left recursion, no star over a nullable body."""
    table = analyze(g)
    memo: dict = {}

    def facts(p):
        return expr_facts(p, table, g.alphabet, memo)

    wf = {name: False for name in g.productions}

    def ok(p):
        if isinstance(p, (PEmpty, PClass, PAny)):
            return True
        if isinstance(p, Var):
            return wf[p.name]
        if isinstance(p, PSeq):
            return ok(p.left) and (not facts(p.left).empty or ok(p.right))
        if isinstance(p, PChoice):
            return ok(p.left) and ok(p.right)
        if isinstance(p, PStar):
            return ok(p.body) and not facts(p.body).empty
        if isinstance(p, PNot):
            return ok(p.body)
        raise TypeError(f"not a parsing expression: {p!r}")

    changed = True
    while changed:
        changed = False
        for name, body in g.productions.items():
            if not wf[name] and ok(body):
                wf[name] = True
                changed = True
    return all(wf.values()) and ok(g.start)


# --- text format -------------------------------------------------------------

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
START_NAME = "START"


def _literal(c: str) -> str:
    if c == "'":
        return "'\\''"
    if c == "\\":
        return "'\\\\'"
    return "'" + (_escape_control(c) or c) + "'"


def format_expr(p: PegExpr, alphabet: Alphabet | None = None) -> str:
    """Render one parsing expression with minimal parentheses."""
    # precedence: choice 0, sequence 1, prefix 2, postfix 3, primary 4
    def prec(x):
        if isinstance(x, PChoice):
            return 0
        if isinstance(x, PSeq):
            return 1
        if isinstance(x, PNot):
            return 2
        if isinstance(x, PStar):
            return 3
        return 4

    def wrap(x, need):
        s = go(x)
        return f"({s})" if prec(x) < need else s

    def go(x):
        if isinstance(x, PEmpty):
            return "()"
        if isinstance(x, PAny):
            return "."
        if isinstance(x, Var):
            return x.name
        if isinstance(x, PClass):
            if len(x.chars) == 1:
                return _literal(next(iter(x.chars)))
            return format_class(x.chars, alphabet)
        if isinstance(x, PChoice):
            return wrap(x.left, 0) + " / " + wrap(x.right, 1)
        if isinstance(x, PSeq):
            return wrap(x.left, 2) + " " + wrap(x.right, 1)
        if isinstance(x, PNot):
            return "!" + wrap(x.body, 2)
        if isinstance(x, PStar):
            return wrap(x.body, 4) + "*"
        raise TypeError(f"not a parsing expression: {x!r}")

    return go(p)


def serialize_grammar(g: Grammar) -> str:
    """One ``Name <- expr`` line per production, start production first."""
    lines = []
    if isinstance(g.start, Var):
        order = [g.start.name] + [n for n in g.productions if n != g.start.name]
    else:
        lines.append(f"{START_NAME} <- {format_expr(g.start, g.alphabet)}")
        order = list(g.productions)
    for name in order:
        lines.append(f"{name} <- {format_expr(g.productions[name], g.alphabet)}")
    return "".join(line + "\n" for line in lines)


class _ExprParser:
    def __init__(self, src: str, alphabet: Alphabet, base: int):
        self.src = src
        self.i = 0
        self.alphabet = alphabet
        self.base = base

    def error(self, msg, i=None):
        i = self.i if i is None else i
        return GrammarSyntaxError(msg, self.base + len(self.src[:i].encode("utf-8")))

    def ws(self):
        while self.i < len(self.src) and self.src[self.i] in " \t":
            self.i += 1

    def peek(self):
        self.ws()
        return self.src[self.i] if self.i < len(self.src) else None

    def parse(self):
        p = self.choice()
        if self.peek() is not None:
            raise self.error(f"unexpected {self.src[self.i]!r}")
        return p

    def choice(self):
        p = self.sequence()
        while self.peek() == "/":
            self.i += 1
            p = PChoice(p, self.sequence())
        return p

    def sequence(self):
        items = []
        while self.peek() not in (None, "/", ")"):
            items.append(self.prefix())
        if not items:
            raise self.error("empty sequence (write () for the empty string)")
        out = items[-1]
        for x in reversed(items[:-1]):
            out = PSeq(x, out)
        return out

    def prefix(self):
        if self.peek() == "!":
            self.i += 1
            return PNot(self.prefix())
        p = self.primary()
        while self.i < len(self.src) and self.src[self.i] == "*":
            self.i += 1
            p = PStar(p)
        return p

    def primary(self):
        c = self.peek()
        start = self.i
        if c == "(":
            self.i += 1
            if self.peek() == ")":
                self.i += 1
                return PEmpty()
            p = self.choice()
            if self.peek() != ")":
                raise self.error("missing ')'", start)
            self.i += 1
            return p
        if c == ".":
            self.i += 1
            return PAny()
        if c == "'":
            self.i += 1
            chars = []
            while True:
                if self.i >= len(self.src):
                    raise self.error("unterminated literal", start)
                ch = self.src[self.i]
                if ch == "'":
                    self.i += 1
                    break
                if ch == "\\":
                    ch, self.i = read_escape(self.src, self.i)
                else:
                    self.i += 1
                chars.append(ch)
            if not chars:
                raise self.error("empty literal", start)
            for ch in chars:
                if ch not in self.alphabet:
                    raise self.error(f"symbol {ch!r} outside the alphabet", start)
            return pseq(*(PClass(frozenset(ch)) for ch in chars))
        if c == "[":
            try:
                chars, self.i = parse_class_body(self.src, self.i + 1, self.alphabet)
            except ValueError as exc:
                raise self.error(str(exc), start) from None
            return PClass(chars)
        m = _NAME.match(self.src, self.i)
        if m:
            self.i = m.end()
            return Var(m.group())
        if c is None:
            raise self.error("unexpected end of line")
        raise self.error(f"unexpected {c!r}")


def parse_grammar(text: str, alphabet: Alphabet | None = None) -> Grammar:
    """Inverse of `serialize_grammar`."""
    alphabet = alphabet or Alphabet.bytes()
    productions: dict = {}
    start = None
    offset = 0
    for lineno, line in enumerate(text.split("\n")):
        base = offset
        offset += len(line.encode("utf-8")) + 1
        if not line.strip():
            continue
        m = re.match(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*<-", line)
        if not m:
            raise GrammarSyntaxError("expected 'Name <- expr'", base)
        name = m.group(1)
        expr = _ExprParser(line[m.end():], alphabet,
                           base + len(line[:m.end()].encode("utf-8"))).parse()
        if start is None:
            if name == START_NAME:
                start = expr
                continue
            start = Var(name)
        if name in productions:
            raise GrammarSyntaxError(f"duplicate production for {name}", base)
        productions[name] = expr
    if start is None:
        raise GrammarSyntaxError("grammar has no productions", 0)
    try:
        return Grammar(productions, start, alphabet)
    except ValueError as exc:
        raise GrammarSyntaxError(str(exc), 0) from None
