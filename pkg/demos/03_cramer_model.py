"""Random 'primes': a Bernoulli process with success probability 1/ln k.

The expected per-symbol entropy A(n) decays like 1/ln n, which is slow:
at n = 10^7 it is still above a third of a bit.
"""
from seqentropy import RandomSource, bernoulli_realization, cramer_spec
from seqentropy.theory_checks import cramer_entropy_curve, check_cramer_empirical

rep = cramer_entropy_curve([10**3, 10**4, 10**5, 10**6])
for n, a in rep.observed["A"].items():
    print(f"A({n}) = {a:.6f}")

# One realization; the seed fully determines it on every platform.
x = bernoulli_realization(cramer_spec(), 60, RandomSource(2024))
print("sample:", x.to_string())

# Thirty seeds, one window length; the median should sit near the ensemble value.
emp = check_cramer_empirical(10**5, 6, range(30))
median = emp.instances[0]["params"]["median"]
print(f"median empirical rate {median:.4f}, ensemble value {emp.observed['reference']:.4f},"
      f" passed={emp.passed}")
