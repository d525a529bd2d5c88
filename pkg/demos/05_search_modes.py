"""Leftmost search through a grammar, with each of the search wrappers."""
from repeg import Alphabet, SearchMode, build_search_grammar, parse_regex, search

letters = Alphabet.from_chars("abcdefghijklmnopqrstuvwxyz ")
e = parse_regex("[a-z]+ word", letters)
subject = "some text before the word we want"

for mode in SearchMode:
    sg = build_search_grammar(e, mode, letters)
    note = f" (fell back to {sg.mode.value})" if sg.fell_back else ""
    print(f"{mode.value:9} -> {search(sg, subject)}{note}")

sg = build_search_grammar(e, SearchMode.AUTO, letters)
print("\ngrammar picked by auto:")
print(sg.grammar)
