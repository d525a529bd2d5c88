"""Regexes as data, and the two reference semantics everything else is checked against.

re_prefix_set gives every prefix a regex can match. regex_backtrack_match gives
the single prefix a backtracking engine would pick.
"""
from repeg.regex import has_extensions
from repeg import Alphabet, parse_regex, re_prefix_set, regex_backtrack_match, to_source

abc = Alphabet.from_chars("abc")

for src, subject in [("(a|ab)c?", "abc"), ("a*?b", "aab"), ("(?>a|ab)c", "abc")]:
    e = parse_regex(src, abc)
    print(f"{to_source(e, abc):12} on {subject!r}")
    if has_extensions(e):
        print("   prefix set: undefined once extensions appear")
    else:
        print("   prefix set:", sorted(re_prefix_set(e, subject)))
    print("   backtracking picks:", regex_backtrack_match(e, subject))
