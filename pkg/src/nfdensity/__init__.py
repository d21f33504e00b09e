"""Coprime tuples of algebraic integers: exact counts, splitting, zeta values and box densities."""

from .density import (BoxSpec, BudgetExceeded, DensityReport, Mode, PrimeSet, density_convergence_table,
                      empirical_density_E, empirical_density_ES, exact_count_ES, exact_density_ES,
                      lattice_count_check, quadrant_count)
from .ideals import (ZERO_IDEAL, HNFIdeal, ZeroIdeal, ideal_add, ideal_from_generators, ideal_membership,
                     ideal_norm, is_coprime_tuple)
from .number_field import (AlgebraicInt, IntegralBasis, NumberFieldOrder, box_contains, elem_add, elem_mul,
                           elem_norm, elem_sub)
from .polynomials import (IntPolynomial, ModPPolynomial, discriminant, factor_mod_p, irreducibility_evidence,
                          parse_polynomial, poly_mul_int)
from .splitting import NonMaximalAtP, PrimeSplit, dedekind_p_maximal, prime_ideal, split_prime
from .zeta import ZetaEstimate, reciprocal_density, zeta_K

__version__ = "0.1.0"
