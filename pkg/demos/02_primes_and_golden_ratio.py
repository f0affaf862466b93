"""The prime indicator has no '11' after position 2.

So its length-n words live among the Fibonacci-many 11-avoiding words, and
its information entropy stays below log2 of the golden ratio once n is
large enough to wash out the single '111' at the start.
"""
import math

from seqentropy import avoid_count, growth_rate, prime_indicator
from seqentropy.generators import prime_count
from seqentropy.estimators import entropy_profile, estimate_h_info, estimate_h_loc
from seqentropy.theory_checks import check_prime_entropy_bound

N = 10**6
b = prime_indicator(N)
print("first 20 symbols:", b.prefix(20).to_string())
print("primes below N:", prime_count(N))

rate = math.log2(growth_rate("11"))
print(f"log2 golden ratio = {rate:.10f}")

prof = entropy_profile(b, 16)
print(f"{'n':>3} {'L':>7} {'Q(n,11)':>8} {'info':>8} {'local':>8}")
for row in prof.rows:
    print(f"{row.n:3d} {row.distinct:7d} {avoid_count('11', row.n):8d} "
          f"{row.info_value:8.4f} {row.local_value:8.4f}")

print("h_info estimate:", estimate_h_info(prof))
print("h_loc estimate:", estimate_h_loc(prof))

rep = check_prime_entropy_bound(N, 16, profile=prof)
print("check passed:", rep.passed, "| coverage:", rep.observed["coverage_of_11_avoiding_words"]["12"])
