import pytest
from hypothesis import given, settings, strategies as st

from repeg.equiv import gen_regex
from repeg.oracle import FuelExhausted, all_strings, re_prefix_set
from repeg.peg import (
    Grammar, GrammarSyntaxError, PAny, PChoice, PClass, PEmpty, PNot, PSeq, PStar, Var,
    check_complete, grammar_size, parse_grammar, peg_match, peg_steps, serialize_grammar,
)
from repeg.regex import Alphabet
from repeg.rewrite import f_out
from repeg.transform import compile_regex, direct_peg

AB = Alphabet.from_chars("ab")
MARK = Alphabet.from_chars("ab$#")


def T(c):
    return PClass(frozenset(c))


class TestMatch:
    def test_marker_grammar(self):
        g = Grammar({"A": PChoice(PSeq(T("b"), Var("A")), PSeq(T("b"), T("$")))}, Var("A"), MARK)
        assert peg_match(g, "bb$") == 3
        assert peg_match(g, "bb") is None

    def test_ordered_choice_commits(self):
        g = Grammar({}, PChoice(T("a"), PSeq(T("a"), T("b"))))
        assert peg_match(g, "ab") == 1

    def test_no_backtracking_into_choice(self):
        g = Grammar({}, PSeq(PChoice(T("a"), PSeq(T("a"), T("a"))), T("b")))
        assert peg_match(g, "aab") is None

    def test_empty(self):
        g = Grammar({}, PEmpty())
        assert peg_match(g, "") == 0
        assert peg_match(g, "xyz") == 0

    def test_star_is_greedy_and_possessive(self):
        g = Grammar({}, PSeq(PStar(T("a")), T("a")))
        assert peg_match(g, "aaa") is None
        g = Grammar({}, PSeq(PStar(PSeq(T("a"), T("b"))), T("a")))
        assert peg_match(g, "ababa") == 5

    def test_not_consumes_nothing(self):
        g = Grammar({}, PNot(T("a")))
        assert peg_match(g, "b") == 0
        assert peg_match(g, "a") is None
        assert peg_match(g, "") == 0

    def test_any(self):
        assert peg_match(Grammar({}, PAny()), "") is None
        assert peg_match(Grammar({}, PAny()), "x") == 1

    def test_left_recursion_runs_out_of_fuel(self):
        g = Grammar({"A": PChoice(PSeq(T("a"), Var("A")), PChoice(Var("A"), T("b")))}, Var("A"))
        with pytest.raises(FuelExhausted):
            peg_match(g, "c", fuel=10_000)

    def test_long_input_needs_no_recursion(self):
        g = Grammar({"A": PChoice(PSeq(T("a"), Var("A")), PEmpty())}, Var("A"))
        assert peg_match(g, "a" * 200_000) == 200_000

    def test_deterministic(self):
        g = compile_regex(gen_regex(7, 6, AB), AB)
        assert len({peg_match(g, "abba") for _ in range(5)}) == 1


class TestComplete:
    def test_left_recursive(self):
        g = parse_grammar("A <- 'a' A / A / 'b'\n")
        assert not check_complete(g)

    def test_marker_grammar(self):
        assert check_complete(parse_grammar("A <- 'b' A / 'b' '$'\n"))

    def test_epsilon(self):
        assert check_complete(Grammar({}, PEmpty()))

    def test_nullable_star(self):
        assert not check_complete(parse_grammar("START <- ('a' / ())*\n"))
        assert not check_complete(parse_grammar("START <- (!'a')*\n"))
        assert check_complete(parse_grammar("START <- ('a' / 'b')*\n"))

    def test_indirect_left_recursion(self):
        g = parse_grammar("A <- B 'a'\nB <- !'x' A / 'b'\n")
        assert not check_complete(g)
        assert check_complete(parse_grammar("A <- B 'a'\nB <- 'x' A / 'b'\n"))


class TestFormat:
    def test_serialize(self):
        g = Grammar({"A": PChoice(PSeq(T("b"), Var("A")), PSeq(T("b"), T("$")))}, Var("A"))
        assert serialize_grammar(g) == "A <- 'b' A / 'b' '$'\n"

    def test_two_production_round_trip(self):
        text = ("B <- 'a' B / 'b' B / 'c' B / 'a' A\n"
                "A <- 'a' A / 'b' A / 'c' A / ()\n")
        g = parse_grammar(text)
        assert g.nonterminals == ("B", "A")
        assert serialize_grammar(g) == text

    def test_start_pseudo_production(self):
        text = "START <- ('a' / 'a' 'b') !. [x-z]*\n"
        g = parse_grammar(text)
        assert isinstance(g.start, PSeq)
        assert serialize_grammar(g) == text

    def test_escapes(self):
        text = "START <- '\\'' '\\\\' '\\n'\n"
        g = parse_grammar(text)
        assert peg_match(g, "'\\\n") == 3
        assert serialize_grammar(g) == text

    def test_undefined_nonterminal(self):
        with pytest.raises(GrammarSyntaxError):
            parse_grammar("S <- X")

    def test_syntax_error_offset(self):
        with pytest.raises(GrammarSyntaxError) as info:
            parse_grammar("A <- 'a'\nB <- 'b' )\n")
        assert info.value.offset == 18

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 10**6), st.booleans())
    def test_round_trip_compiled(self, seed, ext):
        alpha = Alphabet.from_chars("abc")
        g = compile_regex(gen_regex(seed, 6, alpha, ext), alpha)
        assert parse_grammar(serialize_grammar(g), alpha) == g


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_direct_reading_is_conservative(seed):
    e = f_out(gen_regex(seed, 5, AB))
    g = direct_peg(e, AB)
    for s in all_strings(AB, 6):
        n = peg_match(g, s)
        assert n is None or n in re_prefix_set(e, s)


# steps per input symbol per grammar node; measured worst case on this corpus is about 277,
# driven by the exponential backtracking that ambiguous patterns inherit
FUEL_FACTOR = 1000


def test_fuel_bound_on_compiled_grammars():
    for seed in range(1500):
        for ext in (False, True):
            e = gen_regex(seed, 6, AB, ext)
            g = compile_regex(e, AB)
            assert check_complete(g)
            budget = FUEL_FACTOR * grammar_size(g)
            for s in all_strings(AB, 6):
                assert peg_steps(g, s) <= budget * max(1, len(s))
