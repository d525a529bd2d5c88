"""Regex to PEG compiler with reference oracles and search optimizations."""

from .oracle import DEFAULT_FUEL, FuelExhausted, re_prefix_set, regex_backtrack_match
from .peg import Grammar, check_complete, parse_grammar, peg_match, serialize_grammar
from .regex import (
    Alphabet, empty_pred, first_set, is_length_one, is_well_formed, null_pred,
    parse_regex, to_source,
)
from .rewrite import f_in, f_out
from .search import SearchHit, SearchMode, build_search_grammar, search
from .transform import NameSupply, compile_regex, pi, pi_opt_repetition

__all__ = [
    "Alphabet", "parse_regex", "to_source",
    "empty_pred", "null_pred", "first_set", "is_length_one", "is_well_formed",
    "re_prefix_set", "regex_backtrack_match", "FuelExhausted", "DEFAULT_FUEL",
    "f_out", "f_in",
    "Grammar", "peg_match", "check_complete", "serialize_grammar", "parse_grammar",
    "NameSupply", "pi", "pi_opt_repetition", "compile_regex",
    "SearchMode", "SearchHit", "build_search_grammar", "search",
]
