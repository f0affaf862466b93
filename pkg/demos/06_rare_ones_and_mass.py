"""Small total mass forces small entropy, but not on infinite alphabets."""

from seqentropy import MassDistribution, entropy_max_bound, shannon_entropy
from seqentropy.generators import prime_indicator
from seqentropy.theory_checks import check_discontinuity, check_perturbation_lemma, check_rare_ones

p = MassDistribution([0.01] * 10, 64)
print(f"H = {shannon_entropy(p):.4f} <= {entropy_max_bound(p):.4f}")

for case in ("a", "b"):
    rep = check_perturbation_lemma(1.0, 0.5, [2**10, 2**20, 2**30], case=case)
    print(f"case {case}:", {k: round(v, 5) for k, v in rep.observed["H"].items()})

rep = check_discontinuity()
print("l1 distance -> 0:", rep.observed["l1_distance"], "entropy gap >= 1:", rep.passed)

b = prime_indicator(10**6)
rep = check_rare_ones(b, [2, 4, 8, 16], label="primes")
print(f"zero words dominate: passed={rep.passed}, M ln N / N = {rep.observed['C_ln']:.4f}")
