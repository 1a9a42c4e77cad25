"""Correction terms of lens spaces and knot surgeries, and the lattice
obstructions they impose on negative-definite fillings."""

from .knot_data import (UNKNOT, AlexanderPolynomial, KnotModel, VSequence, delta_second_derivative,
                        load_knot, parse_knot, torsion_coefficients, torus_alexander, torus_knot,
                        v_sequence)
from .lattice_core import (AssertionViolated, GramLattice, LatticeError, char_coset_minima,
                           determinant, diagonal_lattice, direct_sum, discriminant_group,
                           is_characteristic, make_lattice, min_char_norm, owens_strle_check,
                           shifted_min, split_standard, standard_lattice)
from .lens_spaces import LensSpace, d_lens, linear_lattice, neg_continued_fraction
from .surgery_obstructions import (DInvariantTable, beta_bound_check, d_surgery, d_table,
                                   l_upper_bound, lattice_obstruction, lens_table, sharpness_check,
                                   slope_bound_check, standardness_verdict, surgery_table,
                                   unknot_check)

__version__ = "0.1.0"
