"""Exact computations with locally nilpotent derivations over Q and over
polynomial base rings."""

from .automorphism import (Consistent, CoordinateCertificate, Endomorphism, GammaCertificate,
                           NonRigidityCertificate, NotCoordinateSystem, apply_endo,
                           check_coordinate_system, check_rigidity_pair, compose, exp, in_gamma_D,
                           jacobian_determinant, rank_upper_bound)
from .config import Budgets
from .derivation import (Derivation, IrreducibilityCertificate, LNDCertificate, NilpotencyWitness,
                         Unknown, apply, certify_lnd, is_irreducible,
                         is_irreducible_over_fraction_field, is_triangular_in, nilpotency_witness,
                         triangularity_failure)
from .errors import (GammaMembershipFailed, InvalidSliceError, LNDError, NotACoordinateSystemError,
                     NotDivisibleError, NotInKernelError, NotLNDError, ParseError, ResourceError,
                     RingMismatchError, ZeroDerivationError)
from .groebner import (GroebnerBasis, MembershipCertificate, Subalgebra, buchberger, gcd,
                       ideal_membership, lcm, reduce, s_polynomial, subalgebra_equal,
                       subalgebra_membership, verify_groebner)
from .kernel import (DixmierImage, KernelBasis, KernelRounds, LocalSlice, NotFound, dixmier_image,
                     find_local_slice, kernel_basis_up_to_degree, kernel_generator_rounds,
                     squarefree_part)
from .orders import DEGREVLEX, LEX, MonomialOrder, block
from .poly import Polynomial, RingSpec, exact_divide, parse
from .rigidity import (rigidity_transfer_harness, run_corpus, triangulability_descent_harness)
from .specfile import SpecFile, load, loads

__version__ = "0.1.0"
