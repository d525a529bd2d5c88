"""Stars over nullable bodies are not well formed. f_out rewrites them away."""
from repeg import Alphabet, f_out, is_well_formed, parse_regex, to_source

abcd = Alphabet.from_chars("abcd")

for src in ["(bc|a*(d|()))*", "(?>(()|a))*", "((?=a)(d|()))*", "(a|())*b"]:
    e = parse_regex(src, abcd)
    out = f_out(e)
    print(f"{src:18} well formed: {is_well_formed(e)!s:5}  ->  {to_source(out, abcd):14} "
          f"well formed: {is_well_formed(out)}")
