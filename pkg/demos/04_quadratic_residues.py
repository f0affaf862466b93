"""Quadratic residue words look random.

Every short word appears about q / 2^n times, up to a square-root error,
so the local entropy of the residue word creeps toward one bit per symbol.
"""
from seqentropy import count_words, quadratic_residue_word
from seqentropy.estimators import estimate_h_loc, series_scheme_profile
from seqentropy.theory_checks import check_residue_equidistribution

print("q = 19:", quadratic_residue_word(19).to_string())

q = 10007
t = count_words(quadratic_residue_word(q), 3)
for word, c in sorted(t.to_dict().items()):
    print("  ", "".join(map(str, word)), c, f"(expected {q / 8:.1f})")

rep = check_residue_equidistribution(q, 8, n_min=2)
print("equidistribution check passed:", rep.passed)
print("worst deviation / bound by n:", {k: round(v, 3) for k, v in rep.observed["max_deviation_over_bound"].items()})

primes = [1009, 10007, 100003]
for q, (length, prof) in zip(primes, series_scheme_profile([quadratic_residue_word(q) for q in primes], 20)):
    e = estimate_h_loc(prof)
    print(f"q={q}: h_loc in [{e.lower:.6f}, {e.upper:.6f}] over n={e.n_window}")
