"""Regex abstract syntax, concrete syntax, and syntactic predicates.

The core AST keeps only ε, character classes, concatenation, choice and
star, plus five extension nodes (atomic grouping, possessive and lazy
repetition, negative and positive lookahead).  Sugar such as ``e+``,
``e?`` and ``$`` is expanded by the parser.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

__all__ = [
    "Alphabet", "RegexSyntaxError",
    "Empty", "Class", "Concat", "Choice", "Star",
    "Atomic", "Possessive", "Lazy", "NegLookahead", "PosLookahead",
    "Regex", "EXTENSION_TYPES", "REPETITION_TYPES",
    "lit", "seq", "alt", "parse_regex", "to_source",
    "empty_pred", "null_pred", "first_set", "is_length_one",
    "is_well_formed", "has_extensions", "concat_factors", "size",
]

CharSet = frozenset


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of symbols; each symbol is a one-character str."""

    symbols: tuple

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be distinct")
        object.__setattr__(self, "_set", frozenset(self.symbols))

    @classmethod
    def from_chars(cls, chars: Iterable[str]) -> "Alphabet":
        return cls(tuple(dict.fromkeys(chars)))

    @classmethod
    def bytes(cls) -> "Alphabet":
        """The 256 byte values, as latin-1 characters."""
        return _byte_alphabet()

    @property
    def charset(self) -> frozenset:
        return self._set

    def __contains__(self, c) -> bool:
        return c in self._set

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def complement(self, chars: frozenset) -> frozenset:
        return self._set - chars


@lru_cache(maxsize=None)
def _byte_alphabet() -> Alphabet:
    return Alphabet(tuple(chr(i) for i in range(256)))


class RegexSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


# --- AST ---------------------------------------------------------------

@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Class:
    chars: frozenset

    def __post_init__(self):
        if not self.chars:
            raise ValueError("character class must be non-empty")
        if not isinstance(self.chars, frozenset):
            object.__setattr__(self, "chars", frozenset(self.chars))


@dataclass(frozen=True)
class Concat:
    left: "Regex"
    right: "Regex"


@dataclass(frozen=True)
class Choice:
    left: "Regex"
    right: "Regex"


@dataclass(frozen=True)
class Star:
    body: "Regex"


@dataclass(frozen=True)
class Atomic:
    body: "Regex"


@dataclass(frozen=True)
class Possessive:
    """``body*+``"""
    body: "Regex"


@dataclass(frozen=True)
class Lazy:
    """``body*?``"""
    body: "Regex"


@dataclass(frozen=True)
class NegLookahead:
    body: "Regex"


@dataclass(frozen=True)
class PosLookahead:
    body: "Regex"


Regex = Union[Empty, Class, Concat, Choice, Star, Atomic, Possessive, Lazy,
              NegLookahead, PosLookahead]

EXTENSION_TYPES = (Atomic, Possessive, Lazy, NegLookahead, PosLookahead)
REPETITION_TYPES = (Star, Possessive, Lazy)
_UNARY = (Star, Atomic, Possessive, Lazy, NegLookahead, PosLookahead)


def lit(text: str) -> Regex:
    """Concatenation of single-symbol classes spelling `text` (ε if empty)."""
    return seq(*(Class(frozenset(c)) for c in text))


def seq(*parts: Regex) -> Regex:
    """Right-associated concatenation, matching the parser's associativity."""
    if not parts:
        return Empty()
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Concat(p, out)
    return out


def alt(*parts: Regex) -> Regex:
    out = parts[0]
    for p in parts[1:]:
        out = Choice(out, p)
    return out


def concat_factors(e: Regex) -> list:
    """Flatten nested concatenations into a left-to-right factor list."""
    if isinstance(e, Concat):
        return concat_factors(e.left) + concat_factors(e.right)
    return [e]


def has_extensions(e: Regex) -> bool:
    if isinstance(e, EXTENSION_TYPES):
        return True
    if isinstance(e, (Concat, Choice)):
        return has_extensions(e.left) or has_extensions(e.right)
    if isinstance(e, Star):
        return has_extensions(e.body)
    return False


def size(e: Regex) -> int:
    if isinstance(e, (Concat, Choice)):
        return 1 + size(e.left) + size(e.right)
    if isinstance(e, _UNARY):
        return 1 + size(e.body)
    return 1


# --- predicates ----------------------------------------------------------

def empty_pred(e: Regex) -> bool:
    """True iff the language of `e` is exactly {ε} (conservative for extensions)."""
    if isinstance(e, Empty):
        return True
    if isinstance(e, Class):
        return False
    if isinstance(e, (Concat, Choice)):
        return empty_pred(e.left) and empty_pred(e.right)
    if isinstance(e, (NegLookahead, PosLookahead)):
        return True
    return empty_pred(e.body)


def null_pred(e: Regex) -> bool:
    """True iff ε may be matched by `e`."""
    if isinstance(e, Empty):
        return True
    if isinstance(e, Class):
        return False
    if isinstance(e, Concat):
        return null_pred(e.left) and null_pred(e.right)
    if isinstance(e, Choice):
        return null_pred(e.left) or null_pred(e.right)
    if isinstance(e, Atomic):
        return null_pred(e.body)
    return True


def first_set(e: Regex) -> frozenset:
    """Symbols that can begin a non-empty match of `e`."""
    if isinstance(e, Empty):
        return frozenset()
    if isinstance(e, Class):
        return e.chars
    if isinstance(e, Concat):
        if null_pred(e.left):
            return first_set(e.left) | first_set(e.right)
        return first_set(e.left)
    if isinstance(e, Choice):
        return first_set(e.left) | first_set(e.right)
    if isinstance(e, (NegLookahead, PosLookahead)):
        return frozenset()
    return first_set(e.body)


def is_length_one(e: Regex) -> bool:
    if isinstance(e, Class):
        return True
    if isinstance(e, Choice):
        return is_length_one(e.left) and is_length_one(e.right)
    return False


def is_well_formed(e: Regex) -> bool:
    """No repetition node has a body that may match ε."""
    if isinstance(e, REPETITION_TYPES):
        return not null_pred(e.body) and is_well_formed(e.body)
    if isinstance(e, (Concat, Choice)):
        return is_well_formed(e.left) and is_well_formed(e.right)
    if isinstance(e, _UNARY):
        return is_well_formed(e.body)
    return True


# --- concrete syntax -------------------------------------------------------

METACHARS = frozenset("()|*+?.[]$\\")
_CLASS_SPECIAL = frozenset("]\\^-[")
_CONTROL_ESCAPES = {"\n": "n", "\r": "r", "\t": "t"}
_CONTROL_UNESCAPES = {v: k for k, v in _CONTROL_ESCAPES.items()}


def _escape_control(c: str) -> str | None:
    if c in _CONTROL_ESCAPES:
        return "\\" + _CONTROL_ESCAPES[c]
    if ord(c) < 0x20 or ord(c) == 0x7F:
        return f"\\x{ord(c):02x}"
    return None


def read_escape(src: str, i: int) -> tuple[str, int]:
    """Decode the escape whose backslash is at ``src[i]``; return (char, next index)."""
    if i + 1 >= len(src):
        raise RegexSyntaxError("dangling backslash", _byte_offset(src, i))
    c = src[i + 1]
    if c in _CONTROL_UNESCAPES:
        return _CONTROL_UNESCAPES[c], i + 2
    if c == "x" and _is_hex(src[i + 2:i + 4]):
        return chr(int(src[i + 2:i + 4], 16)), i + 4
    return c, i + 2


def _is_hex(s: str) -> bool:
    return len(s) == 2 and all(ch in "0123456789abcdefABCDEF" for ch in s)


def _byte_offset(src: str, i: int) -> int:
    return len(src[:i].encode("utf-8"))


def format_class(chars: frozenset, alphabet: Alphabet | None = None) -> str:
    """Render a set of symbols as ``[...]``, using ``[^...]`` when shorter."""
    def body(cs):
        ordered = sorted(cs)
        out, i = [], 0
        while i < len(ordered):
            j = i
            while j + 1 < len(ordered) and ord(ordered[j + 1]) == ord(ordered[j]) + 1:
                j += 1
            if j - i >= 2:
                out.append(_class_char(ordered[i]) + "-" + _class_char(ordered[j]))
            else:
                out.extend(_class_char(c) for c in ordered[i:j + 1])
            i = j + 1
        return "".join(out)

    plain = "[" + body(chars) + "]"
    if alphabet is not None:
        rest = alphabet.complement(chars)
        if rest:
            negated = "[^" + body(rest) + "]"
            if len(negated) < len(plain):
                return negated
    return plain


def _class_char(c: str) -> str:
    esc = _escape_control(c)
    if esc:
        return esc
    return "\\" + c if c in _CLASS_SPECIAL else c


def parse_class_body(src: str, i: int, alphabet: Alphabet,
                     err=RegexSyntaxError) -> tuple[frozenset, int]:
    """Parse a class starting just after ``[``; return (chars, index after ``]``)."""
    start = i
    negate = i < len(src) and src[i] == "^"
    if negate:
        i += 1
    chars = set()
    first = True
    while True:
        if i >= len(src):
            raise err("unterminated character class", _byte_offset(src, start - 1))
        c = src[i]
        if c == "]" and not first:
            i += 1
            break
        first = False
        if c == "\\":
            lo, i = read_escape(src, i)
        else:
            lo, i = c, i + 1
        if i + 1 < len(src) and src[i] == "-" and src[i + 1] != "]":
            if src[i + 1] == "\\":
                hi, i = read_escape(src, i + 1)
            else:
                hi, i = src[i + 1], i + 2
            if ord(hi) < ord(lo):
                raise err(f"bad range {lo!r}-{hi!r}", _byte_offset(src, i))
            chars.update(chr(o) for o in range(ord(lo), ord(hi) + 1))
        else:
            chars.add(lo)
    outside = [c for c in chars if c not in alphabet]
    if outside:
        raise err(f"class symbol {min(outside)!r} outside the alphabet",
                  _byte_offset(src, start))
    result = alphabet.complement(frozenset(chars)) if negate else frozenset(chars)
    if not result:
        raise err("empty character class", _byte_offset(src, start))
    return result, i


class _Parser:
    def __init__(self, src: str, alphabet: Alphabet):
        self.src = src
        self.i = 0
        self.alphabet = alphabet

    def error(self, msg, i=None):
        return RegexSyntaxError(msg, _byte_offset(self.src, self.i if i is None else i))

    def peek(self, k=0):
        j = self.i + k
        return self.src[j] if j < len(self.src) else None

    def parse(self) -> Regex:
        e = self.choice()
        if self.i != len(self.src):
            raise self.error(f"unexpected {self.src[self.i]!r}")
        return e

    def choice(self) -> Regex:
        e = self.concat()
        while self.peek() == "|":
            self.i += 1
            e = Choice(e, self.concat())
        return e

    def concat(self) -> Regex:
        parts = []
        while self.peek() is not None and self.peek() not in "|)":
            parts.append(self.postfix())
        return seq(*parts)

    def postfix(self) -> Regex:
        e = self.atom()
        while True:
            c = self.peek()
            if c == "*":
                nxt = self.peek(1)
                if nxt == "+":
                    self.i += 2
                    e = Possessive(e)
                elif nxt == "?":
                    self.i += 2
                    e = Lazy(e)
                else:
                    self.i += 1
                    e = Star(e)
            elif c == "+":
                nxt = self.peek(1)
                if nxt == "+":
                    self.i += 2
                    e = Atomic(Concat(e, Star(e)))
                elif nxt == "?":
                    self.i += 2
                    e = Concat(e, Lazy(e))
                else:
                    self.i += 1
                    e = Concat(e, Star(e))
            elif c == "?":
                self.i += 1
                e = Choice(e, Empty())
            else:
                return e

    def atom(self) -> Regex:
        c = self.peek()
        start = self.i
        if c == "(":
            self.i += 1
            kind = None
            if self.peek() == "?":
                kind = self.peek(1)
                if kind not in (">", "!", "="):
                    raise self.error("unknown group kind")
                self.i += 2
            if self.peek() == ")" and kind is None:
                self.i += 1
                return Empty()
            body = self.choice()
            if self.peek() != ")":
                raise self.error("missing ')'", start)
            self.i += 1
            if kind == ">":
                return Atomic(body)
            if kind == "!":
                return NegLookahead(body)
            if kind == "=":
                return PosLookahead(body)
            return body
        if c == "[":
            chars, self.i = parse_class_body(self.src, self.i + 1, self.alphabet)
            return Class(chars)
        if c == ".":
            self.i += 1
            return Class(self.alphabet.charset)
        if c == "$":
            self.i += 1
            return NegLookahead(Class(self.alphabet.charset))
        if c == "\\":
            ch, self.i = read_escape(self.src, self.i)
            return self._symbol(ch, start)
        if c in METACHARS:
            raise self.error(f"unexpected {c!r}")
        self.i += 1
        return self._symbol(c, start)

    def _symbol(self, ch, at) -> Regex:
        if ch not in self.alphabet:
            raise self.error(f"symbol {ch!r} outside the alphabet", at)
        return Class(frozenset(ch))


def parse_regex(source: str, alphabet: Alphabet | None = None) -> Regex:
    """Parse the concrete regex syntax into the core AST."""
    return _Parser(source, alphabet or Alphabet.bytes()).parse()


_PREC_CHOICE, _PREC_CONCAT, _PREC_POSTFIX = 0, 1, 2


def to_source(e: Regex, alphabet: Alphabet | None = None) -> str:
    """Pretty-print `e` in the concrete syntax with minimal parentheses."""
    alphabet = alphabet or Alphabet.bytes()

    def prec(x):
        if isinstance(x, Choice):
            return _PREC_CHOICE
        if isinstance(x, Concat):
            return _PREC_CONCAT
        if isinstance(x, REPETITION_TYPES):
            return _PREC_POSTFIX
        return 3

    def wrap(x, need):
        s = go(x)
        return f"({s})" if prec(x) < need else s

    def go(x):
        if isinstance(x, Empty):
            return "()"
        if isinstance(x, Class):
            if x.chars == alphabet.charset:
                return "."
            if len(x.chars) == 1:
                (c,) = x.chars
                esc = _escape_control(c)
                if esc:
                    return esc
                return "\\" + c if c in METACHARS else c
            return format_class(x.chars, alphabet)
        if isinstance(x, Concat):
            return wrap(x.left, _PREC_POSTFIX) + wrap(x.right, _PREC_CONCAT)
        if isinstance(x, Choice):
            return wrap(x.left, _PREC_CHOICE) + "|" + wrap(x.right, _PREC_CONCAT)
        if isinstance(x, Star):
            return wrap(x.body, _PREC_POSTFIX) + "*"
        if isinstance(x, Possessive):
            return wrap(x.body, _PREC_POSTFIX) + "*+"
        if isinstance(x, Lazy):
            return wrap(x.body, _PREC_POSTFIX) + "*?"
        if isinstance(x, Atomic):
            return "(?>" + go(x.body) + ")"
        if isinstance(x, NegLookahead):
            if isinstance(x.body, Class) and x.body.chars == alphabet.charset:
                return "$"
            return "(?!" + go(x.body) + ")"
        if isinstance(x, PosLookahead):
            return "(?=" + go(x.body) + ")"
        raise TypeError(f"not a regex: {x!r}")

    return go(e)
