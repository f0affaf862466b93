"""Counting subwords and turning counts into entropies.

Run with ``python demos/01_word_census.py``.
"""
import math

from seqentropy import (
    SymbolSequence,
    count_words,
    distinct_count,
    entropy_profile,
    shannon_entropy,
    word_distribution,
)

# A short binary word. Windows overlap, so "0110100111" has 10 - 3 + 1 = 8
# windows of length 3.
x = SymbolSequence.from_string("0110100111")
table = count_words(x, 3)
print("windows:", table.window_total)
for word, count in sorted(table.to_dict().items()):
    print("  ", "".join(map(str, word)), count)

# Relative frequencies form a mass distribution; its entropy is in bits.
p = word_distribution(table)
H = shannon_entropy(p)
print(f"H = {H:.4f} bits, log2 L = {math.log2(distinct_count(table)):.4f} bits")

# The profile repeats this for every n. Local values never exceed info values.
prof = entropy_profile(SymbolSequence.from_string("0110100111" * 50), 6)
print(prof.to_csv())
