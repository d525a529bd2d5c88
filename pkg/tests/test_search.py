import random

import pytest

from repeg.equiv import gen_regex
from repeg.peg import peg_match
from repeg.regex import Alphabet, first_set, parse_regex
from repeg.rewrite import f_out
from repeg.search import (
    SearchHit, SearchMode, applicable_modes, build_search_grammar, search,
)
from repeg.transform import compile_regex

ABC = Alphabet.from_chars("abc")


def rx(src, alpha=ABC):
    return parse_regex(src, alpha)


def brute(e, subject, alpha=ABC):
    g = compile_regex(e, alpha)
    for i in range(len(subject) + 1):
        n = peg_match(g, subject[i:])
        if n is not None:
            return SearchHit(i, i + n)
    return None


def test_literal_hit():
    sg = build_search_grammar(rx("aa"), SearchMode.AUTO, ABC)
    assert search(sg, "baab") == SearchHit(1, 3)


def test_no_hit():
    xy = Alphabet.from_chars("xy")
    sg = build_search_grammar(rx("xy", xy), SearchMode.AUTO, xy)
    assert search(sg, "xxxx") is None


def test_same_hit_in_every_mode():
    e = rx("[bc]*a")
    subject = "bcbcacbba"
    hits = {search(build_search_grammar(e, m, ABC), subject) for m in SearchMode}
    assert hits == {SearchHit(0, 5)}


def test_naive_shape():
    sg = build_search_grammar(rx("a"), SearchMode.NAIVE, ABC)
    text = str(sg.grammar)
    assert text.splitlines()[0] == "A0 <- A1 / . A0"


def test_first_skip_shape():
    letters = Alphabet.from_chars("Gabcdehirstu")
    sg = build_search_grammar(rx("Geshurites", letters), SearchMode.FIRST_SKIP, letters)
    assert sg.mode is SearchMode.FIRST_SKIP
    assert str(sg.grammar).splitlines()[0] == "A0 <- (!'G' .)* (A1 / . A0)"


def test_combined_disjoint_plus_shape():
    alpha = Alphabet.from_chars("abw ")
    sg = build_search_grammar(rx("[ab]+ w", alpha), SearchMode.AUTO, alpha)
    assert sg.mode is SearchMode.COMBINED_DISJOINT
    lines = str(sg.grammar).splitlines()
    assert lines[0] == "A0 <- (![ab] .)* A1"
    assert lines[1] == "A1 <- [ab] [ab]* (' ' 'w' / A0)"


def test_fallbacks():
    sg = build_search_grammar(rx("a*"), SearchMode.COMBINED, ABC)
    assert sg.mode is SearchMode.NAIVE and sg.fell_back
    sg = build_search_grammar(rx("ab"), SearchMode.COMBINED_DISJOINT, ABC)
    assert sg.mode is SearchMode.FIRST_SKIP
    sg = build_search_grammar(rx("a*ab"), SearchMode.COMBINED_DISJOINT, ABC)
    assert sg.mode is SearchMode.COMBINED
    assert applicable_modes(f_out(rx("a*b")))[-1] is SearchMode.COMBINED_DISJOINT


def test_empty_match_at_start():
    sg = build_search_grammar(rx("a*"), SearchMode.AUTO, ABC)
    assert search(sg, "bbb") == SearchHit(0, 0)


def _cases():
    rng = random.Random(12)
    pats = [gen_regex(seed, 5, ABC, seed % 3 == 0) for seed in range(150)]
    pats += [rx(p) for p in ["[bc]*a", "[ab]*c", "a+b", "[ab]+c", "(a|b)*ab", "a*(?!b)c",
                             "(a|b)(a|b)*c(?=a)", "c+(a|b)a", "[abc]*cc", "b*(a|())c"]]
    for e in pats:
        for _ in range(3):
            yield e, "".join(rng.choice("abc") for _ in range(rng.randint(0, 200)))


@pytest.mark.parametrize("e,subject", list(_cases()))
def test_modes_agree_with_brute_force(e, subject):
    expected = brute(e, subject)
    for mode in applicable_modes(f_out(e)):
        assert search(build_search_grammar(e, mode, ABC), subject) == expected


def test_first_skip_never_skips_viable_start():
    rng = random.Random(3)
    for seed in range(100):
        e = f_out(gen_regex(seed, 5, ABC))
        if SearchMode.FIRST_SKIP not in applicable_modes(e):
            continue
        subject = "".join(rng.choice("abc") for _ in range(60))
        hit = search(build_search_grammar(e, SearchMode.FIRST_SKIP, ABC), subject)
        g = compile_regex(e, ABC)
        stop = hit.start if hit else len(subject)
        for i in range(stop):
            if subject[i] not in first_set(e):
                assert peg_match(g, subject[i:]) is None
