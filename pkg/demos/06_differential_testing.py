"""Random regexes, checked against both oracles on every short input."""
from repeg import Alphabet, f_out, to_source
from repeg.equiv import check_regex, gen_regex

ab = Alphabet.from_chars("ab")
bad = 0
for seed in range(300):
    e = f_out(gen_regex(seed, 5, ab, extensions=seed % 2 == 1))
    report = check_regex(e, ab, 5)
    if not report.ok:
        bad += 1
        print(to_source(e, ab), report.violations[:2])
print(f"300 regexes, {bad} with violations")
print("a few of them:")
for seed in (11, 23, 42):
    print("  ", to_source(f_out(gen_regex(seed, 5, ab)), ab))
