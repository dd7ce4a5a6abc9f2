"""Exact-arithmetic toolkit for the affine-Virasoro algebra of type A1:
the algebra itself, its rank-one polynomial module families, truncated
highest-weight modules, their tensor products, and machine checks of the
structural facts about them (module axioms, irreducibility dynamics,
submodule witnesses, isomorphism invariants) at desk scale."""

from .exact import Matrix, RowReducer, Scalar, as_scalar
from .errors import (AlgebraError, DimensionError, DomainError,
                     PreconditionError, ScalarParseError, TruncationError,
                     WindowError)
from .liealg import (AlgebraElement, C, Generator, anti_involution, bracket,
                     bracket_gen, d, e, f, h, parse_generator,
                     triangular_part)
from .polymod import (DELTA, FAMILIES, FamilyParams, OMEGA, Poly2, THETA,
                      act_rankone, parse_poly2, shift_sub,
                      theta_ideal_generator)
from .hwmod import (HWParams, QuotientModule, TrivialModule, TruncatedVerma,
                    act_verma, format_word, gram_matrix,
                    irreducible_quotient_basis, parse_word, weight_space)
from .tensor import (TensorModule, TensorParams, act_tensor,
                     annihilation_bound, degree, format_tensor_element,
                     parse_tensor_element)
from .analysis import (ClosureBasis, ExtractionResult, Window, WLReport,
                       cyclic_closure, extract_coefficients,
                       finite_difference_sum, local_finiteness_probe,
                       omega_operator, omega_s1s2_closed_form, r_invariant,
                       reduce_degree, reduce_to_zero_degree, superfactorial,
                       vandermonde_closed_form, vandermonde_matrix,
                       wl_submodule_check)
from .classify import (IsoVerdict, is_irreducible_rankone,
                       is_irreducible_tensor, iso_rankone, iso_tensor)
from .sampling import ParamSampler

__version__ = "0.1.0"
