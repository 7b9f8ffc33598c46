"""Finite-field Kakeya sets: construction, verification, bounds and proof certificates."""

from .bounds import alon_tao_bound, corollary_bound, count_zeros, thm2_bound
from .certify import Certificate, certify_cascade, certify_refutation_thm2, verify_certificate
from .core import (PointSet, check_delta_gamma, cone_closure, construct, direction_profile,
                   is_kakeya, parse_set_text, product_set, to_set_text)
from .errors import (FieldMismatchError, KakeyaError, NotKakeyaError, ResourceLimitError,
                     SetFileError, UsageError)
from .field import FieldElement, FieldSpec, enumerate_elements, parse_field
from .linalg import MatrixGF, nullspace_vector, rref, vanishing_polynomial
from .poly import Polynomial, UnivariatePolynomial, monomials_of_degree, parse_polynomial
from .search import SearchResult, minimal_kakeya_exact, minimal_kakeya_greedy

__version__ = "0.1.0"
