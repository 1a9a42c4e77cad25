# ---
# jupyter:
#   jupytext:
#     formats: py:light
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Which lattices can bound n-surgery on the trefoil?
#
# The trefoil has `V = (1)` and slice genus 1, so beyond `n = 7` the beta bound
# holds and a non-standard lattice must fail the global obstruction.

from surgery_lattices import (d_table, lattice_obstruction, make_lattice, min_char_norm,
                              split_standard, standard_lattice, standardness_verdict, torus_knot,
                              v_sequence)
from surgery_lattices.surgery_obstructions import beta, beta_bound_check, l_upper_bound

V = v_sequence(torus_knot(2, 3))
print(V, "l <=", l_upper_bound(V))

for n in range(5, 11):
    print(n, beta(n), beta_bound_check(V, n))

# Lambda(9, 2) has no vector of norm one.

lam = make_lattice([[5, -1], [-1, 2]])
print(split_standard(lam), min_char_norm(lam))
rep = lattice_obstruction(lam, d_table(V, 9), "global")
print(rep.verdict, rep.witness, rep.data["required"])

# The standard lattice of the same determinant survives.

print(standardness_verdict(V, 9, standard_lattice(9, 2)).branch)
print(standardness_verdict(V, 9, lam).branch)

# Per-coset modes are stricter than the global comparison.

for mode in ("global", "matching", "affine"):
    print(mode, lattice_obstruction(standard_lattice(9, 2), d_table(V, 9), mode).verdict)
