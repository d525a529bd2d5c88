"""Search benchmark harness and a deterministic synthetic corpus."""

from __future__ import annotations

import random
import statistics
import time
from dataclasses import dataclass
from pathlib import Path

from .regex import Alphabet, parse_regex
from .search import SearchHit, SearchMode, build_search_grammar, search

__all__ = ["BenchRow", "cmd_bench", "make_corpus", "load_corpus", "CORPUS_TARGETS"]

# words planted into the synthetic corpus; none can come out of the word generator
CORPUS_TARGETS = ("Geshurites", "Jehoshaphat")


@dataclass(frozen=True)
class BenchRow:
    pattern: str
    mode: SearchMode
    subject: str
    elapsed: float
    hit: SearchHit | None

    def as_dict(self) -> dict:
        return {
            "pattern": self.pattern,
            "mode": self.mode.value,
            "subject": self.subject,
            "elapsed_ns": int(self.elapsed * 1e9),
            "start": self.hit.start if self.hit else None,
            "end": self.hit.end if self.hit else None,
        }


def _word(rng: random.Random) -> str:
    n = rng.choice((2, 3, 3, 4, 4, 5, 5, 6, 7, 8))
    return "".join(rng.choice("etaoinshrdlucmfwypvbgk") for _ in range(n))


def make_corpus(size: int = 4 * 1024 * 1024, seed: int = 0, plant_at: float = 0.25) -> str:
    """Seeded word salad of `size` bytes with the target words planted once.

    Lines are about 70 characters; a few words per line are capitalized so
    that capital letters are rare but present.
    """
    rng = random.Random(seed)
    vocab = [_word(rng) for _ in range(5000)]
    lines = []
    total = 0
    planted = False
    while total < size:
        words = []
        width = 0
        while width < 70:
            w = rng.choice(vocab)
            if rng.random() < 0.03:
                w = w.capitalize()
            words.append(w)
            width += len(w) + 1
        if not planted and total >= plant_at * size:
            words.insert(len(words) // 2, CORPUS_TARGETS[0])
            words.insert(len(words) - 1, CORPUS_TARGETS[1])
            planted = True
        line = " ".join(words) + ".\n"
        lines.append(line)
        total += len(line)
    return "".join(lines)[:size]


def load_corpus(path: str | Path) -> str:
    """Read a corpus file; bytes map one-to-one onto symbols."""
    return Path(path).read_bytes().decode("latin-1")


def cmd_bench(patterns: list, corpus: str, modes: list, repetitions: int = 5,
              subject: str = "corpus", alphabet: Alphabet | None = None) -> list:
    """Median wall-clock time of each pattern under each mode.

    Raises AssertionError if two modes disagree on the hit.
    """
    if repetitions < 3:
        raise ValueError("at least 3 repetitions are needed for a median")
    alphabet = alphabet or Alphabet.bytes()
    rows = []
    for pattern in patterns:
        e = parse_regex(pattern, alphabet)
        hits = set()
        for mode in modes:
            sg = build_search_grammar(e, mode, alphabet)
            times = []
            hit = None
            for _ in range(repetitions):
                t0 = time.perf_counter()
                hit = search(sg, corpus)
                times.append(time.perf_counter() - t0)
            hits.add(hit)
            rows.append(BenchRow(pattern, sg.mode, subject, statistics.median(times), hit))
        assert len(hits) <= 1, f"modes disagree on the hit for {pattern!r}"
    return rows
