"""Grammars in text form, run by the stack-based PEG interpreter."""
from repeg import Alphabet, check_complete, parse_grammar, peg_match, serialize_grammar

abc = Alphabet.from_chars("abc")
g = parse_grammar("S <- 'a' S 'b' / 'c'\n", abc)
print(serialize_grammar(g), end="")
print("complete (always terminates):", check_complete(g))
for s in ["c", "acb", "aacbb", "aacb"]:
    print(f"  {s:6} -> {peg_match(g, s)}")

# ordered choice commits: the first alternative that succeeds wins
g = parse_grammar("S <- 'a' / 'a' 'b'\n", abc)
print("'a' / 'a' 'b' on 'ab' consumes", peg_match(g, "ab"))
