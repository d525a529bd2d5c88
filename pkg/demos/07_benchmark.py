"""Timing the search wrappers on a synthetic 1 MiB text.

A mode that does not fit the pattern falls back to a weaker one, so the
fixed word shows the first-skip row twice.
"""
from repeg import SearchMode
from repeg.bench import cmd_bench, make_corpus

corpus = make_corpus(1024 * 1024, seed=0)
modes = [SearchMode.NAIVE, SearchMode.FIRST_SKIP, SearchMode.COMBINED]
for row in cmd_bench(["Geshurites", "[a-zA-Z]+ Jehoshaphat"], corpus, modes, 3):
    print(f"{row.pattern:24} {row.mode.value:9} {row.elapsed * 1e3:8.1f} ms  hit {row.hit}")
