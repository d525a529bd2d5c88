"""Reference semantics used as ground truth in differential tests.

`re_prefix_set` enumerates every prefix a pure regular expression can match
(the non-deterministic matching relation).  `regex_backtrack_match` is a
Perl-style leftmost-first backtracking matcher that also understands the
extension nodes.  Neither is fast; both are meant to be obviously right.
"""

from __future__ import annotations

from itertools import product

from .regex import (
    Atomic, Choice, Class, Concat, Empty, Lazy, NegLookahead, PosLookahead,
    Possessive, Regex, Star, has_extensions,
)

__all__ = [
    "FuelExhausted", "DEFAULT_FUEL",
    "re_prefix_set", "regex_backtrack_match", "language", "all_strings",
]

DEFAULT_FUEL = 10_000_000


class FuelExhausted(RuntimeError):
    """The step budget ran out (or the pattern provably loops forever)."""


def re_prefix_set(e: Regex, s: str) -> frozenset:
    """Lengths of all prefixes of `s` that `e` matches."""
    if has_extensions(e):
        raise ValueError("prefix-set semantics is defined only for pure regular expressions")
    memo: dict = {}
    n = len(s)

    def ends(x, i):
        key = (id(x), i)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(x, Empty):
            out = frozenset((i,))
        elif isinstance(x, Class):
            out = frozenset((i + 1,)) if i < n and s[i] in x.chars else frozenset()
        elif isinstance(x, Concat):
            out = frozenset().union(*(ends(x.right, j) for j in ends(x.left, i)))
        elif isinstance(x, Choice):
            out = ends(x.left, i) | ends(x.right, i)
        else:  # Star: rep.1, and rep.2 with its non-empty side condition
            acc = {i}
            for j in ends(x.body, i):
                if j > i:
                    acc |= ends(x, j)
            out = frozenset(acc)
        memo[key] = out
        return out

    return ends(e, 0)


class _Budget:
    __slots__ = ("left",)

    def __init__(self, fuel):
        self.left = fuel

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise FuelExhausted("backtracking oracle ran out of fuel")


def _bt(e, s, i, budget):
    """Yield the end positions of `e` at `i` in leftmost-first priority order."""
    budget.tick()
    if isinstance(e, Empty):
        yield i
    elif isinstance(e, Class):
        if i < len(s) and s[i] in e.chars:
            yield i + 1
    elif isinstance(e, Concat):
        for j in _bt(e.left, s, i, budget):
            yield from _bt(e.right, s, j, budget)
    elif isinstance(e, Choice):
        yield from _bt(e.left, s, i, budget)
        yield from _bt(e.right, s, i, budget)
    elif isinstance(e, Star):
        for j in _bt(e.body, s, i, budget):
            if j == i:
                # the same state recurs below this point: plain backtracking never returns
                raise FuelExhausted("empty iteration inside a repetition")
            yield from _bt(e, s, j, budget)
        yield i
    elif isinstance(e, Lazy):
        yield i
        for j in _bt(e.body, s, i, budget):
            if j == i:
                raise FuelExhausted("empty iteration inside a lazy repetition")
            yield from _bt(e, s, j, budget)
    elif isinstance(e, Atomic):
        for j in _bt(e.body, s, i, budget):
            yield j
            return
    elif isinstance(e, Possessive):
        yield from _bt(Atomic(Star(e.body)), s, i, budget)
    elif isinstance(e, NegLookahead):
        if next(_bt(e.body, s, i, budget), None) is None:
            yield i
    elif isinstance(e, PosLookahead):
        if next(_bt(e.body, s, i, budget), None) is not None:
            yield i
    else:
        raise TypeError(f"not a regex: {e!r}")


def regex_backtrack_match(e: Regex, s: str, fuel: int = DEFAULT_FUEL) -> int | None:
    """Length of the prefix a Perl-compatible engine matches, or None on failure."""
    try:
        return next(_bt(e, s, 0, _Budget(fuel)), None)
    except RecursionError:
        raise FuelExhausted("recursion limit reached in backtracking oracle") from None


def language(e: Regex, maxlen: int) -> frozenset:
    """The set-theoretic language of `e`, truncated to strings of length <= maxlen."""
    if isinstance(e, Empty):
        return frozenset({""})
    if isinstance(e, Class):
        return frozenset(e.chars) if maxlen >= 1 else frozenset()
    if isinstance(e, Concat):
        left = language(e.left, maxlen)
        right = language(e.right, maxlen)
        return frozenset(x + y for x in left for y in right if len(x) + len(y) <= maxlen)
    if isinstance(e, Choice):
        return language(e.left, maxlen) | language(e.right, maxlen)
    if isinstance(e, Star):
        body = language(e.body, maxlen)
        acc = {""}
        frontier = {""}
        while frontier:
            frontier = {x + y for x in frontier for y in body
                        if len(x) + len(y) <= maxlen} - acc
            acc |= frontier
        return frozenset(acc)
    raise ValueError("language is defined only for pure regular expressions")


def all_strings(alphabet, maxlen: int):
    """Every string over `alphabet` of length 0..maxlen, shortest first."""
    symbols = list(alphabet)
    for n in range(maxlen + 1):
        for t in product(symbols, repeat=n):
            yield "".join(t)
