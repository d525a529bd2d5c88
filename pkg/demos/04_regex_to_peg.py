"""Compiling a regex into a PEG that picks the same match a backtracking engine does."""
from repeg import Alphabet, compile_regex, parse_regex, peg_match, regex_backtrack_match, serialize_grammar
from repeg.transform import direct_peg

abc = Alphabet.from_chars("abc")

e = parse_regex("(a|b|c)*a(a|b|c)*", abc)
print("continuation-passing translation, loops left as written:")
print(serialize_grammar(compile_regex(e, abc, optimize=False)))

print("with the guarded-star optimization the tail becomes a possessive loop:")
print(serialize_grammar(compile_regex(e, abc)))

# reading the regex operators directly as PEG operators gets this one wrong
e = parse_regex("(a|ab)c", abc)
print("(a|ab)c on 'abc':")
print("   backtracking engine:", regex_backtrack_match(e, "abc"))
print("   compiled grammar:   ", peg_match(compile_regex(e, abc), "abc"))
print("   direct PEG reading: ", peg_match(direct_peg(e, abc), "abc"))
