"""Counting words that avoid a pattern, and counting prime tuples."""
import warnings

from seqentropy import AvoidanceCounter, growth_rate, tuple_count

for f in ("11", "111", "101", "0110"):
    c = AvoidanceCounter(f)
    print(f"{f:>5}: Q(1..10) = {c.counts(10)[1:]}, growth {growth_rate(f):.8f}")

N = 10**7
for offsets in [(2,), (4,), (6,), (2, 6), (4, 6)]:
    t = tuple_count(offsets, N)
    print(f"offsets {offsets}: {t.count} tuples below {N}, constant {t.empirical_constant:.4f}")

with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    t = tuple_count((2, 4), 1000)
print("(2, 4):", t.count, "tuple;", caught[0].message)
