# ---
# jupyter:
#   jupytext:
#     formats: py:light
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Correction terms of lens spaces
#
# `d_lens` runs the two-term recursion; for `q = 1` there is a closed form
# to compare against.

from collections import Counter
from fractions import Fraction

import numpy as np

from surgery_lattices import LensSpace, d_lens, linear_lattice, neg_continued_fraction
from surgery_lattices.lens_spaces import conjugate_index, d_lens_n1

# A small table first.

for i in range(11):
    print(i, d_lens(11, 4, i))

# The recursion and the closed form agree on L(n, 1):

agree = all(d_lens(n, 1, i) == d_lens_n1(n, i) for n in range(1, 60) for i in range(n))
print("closed form agrees:", agree)

# Reversing orientation negates the multiset of values.

p, q = 13, 5
plus = Counter(d_lens(p, q, i) for i in range(p))
minus = Counter(-v for v in LensSpace(p, p - q).d_values())
print(plus == minus)

# Conjugation `i -> p + q - 1 - i (mod p)` fixes the table.

vals = [d_lens(p, q, i) for i in range(p)]
print(all(vals[conjugate_index(p, q, i)] == v for i, v in enumerate(vals)))

# Linear plumbings come from the negative continued fraction of p/q.

print(neg_continued_fraction(11, 4), linear_lattice(11, 4).gram)

# Spread of d over p (floats only for the summary, never for verdicts):

spread = np.array([[float(max(d_lens(p, q, i) for i in range(p)) - min(d_lens(p, q, i) for i in range(p)))
                    for q in (1, 2)] for p in range(3, 40, 2)])
print(spread[:5])
