"""Exact finite A-infinity categories over the rationals.

Relations in both presentations, A-infinity functors, homotopy transfer
across strong deformation retracts, additive enlargements under the two
shift conventions, one-sided twisted complexes and the DG category of
complexes as a worked example.
"""

from .category import (
    SUSPENDED, UNSUSPENDED, AInftyCategory, RelationError, RelationReport, Violation,
    check_relations, check_units, cohomology, compare_categories, convert_presentation,
    h0, is_dg, suspended, truncate, unsuspended,
)
from .corpus import Instance, generate, make_instance, random_complex
from .dg import (
    Complex, DGHom, build_dg_category, check_dg_equals_tilde2, demo_complexes,
    shift_complex, shift_identifications,
)
from .functors import (
    AInftyFunctor, FunctorError, check_functor, classify, compare_functors, compose,
    identity_functor,
)
from .graded import GradedMap, GradedVectorSpace, MultilinearMap
from .hpt import (
    SDRData, check_sdr, conjugate_sdr, hodge_sdr, minimal_model, random_gauge,
    side_conditions, transfer,
)
from .shifts import (
    SumObject, enlarge, hpt_square_check, induce_functor, induce_sdr, single_objects,
    to_base,
)
from .twisted import Tw, TwistedComplex, TwistedError, TwMorphism

__version__ = "0.1.0"
