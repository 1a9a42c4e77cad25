# ---
# jupyter:
#   jupytext:
#     formats: py:light
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Sharp fillings
#
# A negative definite form is sharp for `Y` when the coset minima reproduce
# every correction term.  Linear plumbings are sharp for lens spaces.

from collections import Counter
from math import gcd

from surgery_lattices import (char_coset_minima, d_lens, d_table, lattice_obstruction, lens_table,
                              linear_lattice, sharpness_check, standard_lattice, torus_knot,
                              v_sequence)
from surgery_lattices.surgery_obstructions import d_sum_defect, max_sum

bad = [(p, q) for p in range(2, 25) for q in range(1, p)
       if gcd(p, q) == 1 and not sharpness_check(linear_lattice(p, q), lens_table(p, q).reversed()).passed]
print("non-sharp plumbings:", bad)

# 2n+1 surgery on T(2, n) has the same multiset of d as L(2n+1, 4); the
# affine mode finds the relabelling.

for n in (3, 5, 7):
    p = 2 * n + 1
    t = d_table(v_sequence(torus_knot(2, n)), p)
    same = Counter(t.values) == Counter(d_lens(p, 4, i) for i in range(p))
    rep = lattice_obstruction(linear_lattice(p, 4), t, "affine")
    print(n, same, rep.verdict, rep.witness["step"])

# Summing the table shifts by twice the V-sum, which rules out a standard
# sharp filling for any non-trivial knot.

V = v_sequence(torus_knot(2, 3))
for n in range(5, 9):
    print(n, d_sum_defect(V, n), -2 * max_sum(V, n),
          sharpness_check(standard_lattice(n), d_table(V, n).reversed()).verdict)

cm = char_coset_minima(linear_lattice(11, 4))
print(sorted((2 - m) / 4 for m in cm.minima))
