"""Finite BZ-lattices, PBZ*-lattices and modal De Morgan algebras."""

from .algebra import (
    BROUWER,
    DIAMOND,
    INV,
    FiniteAlgebra,
    Signature,
    bounds,
    dense_elements,
    sharp_elements,
    trivial_brouwer_extension,
    trivial_brouwer_table,
)
from .analysis import (
    ElementMap,
    Partition,
    all_congruences,
    find_embedding,
    find_isomorphism,
    is_congruence,
    is_simple,
    is_subdirectly_irreducible,
    monolith,
    principal_congruence,
    quotient,
    subuniverse_closure,
)
from .classify import ClassificationReport, Witness, classify
from .constructors import (
    catalog,
    catalog_names,
    chain,
    direct_product,
    dual,
    horizontal_sum_mo,
    ordinal_sum,
    symmetric_extension,
)
from .equivalences import (
    boolean_kernel,
    bz_of_modal,
    classify_modal,
    classify_stone,
    is_quasi_stone,
    modal_of_bz,
    truncated_sum_table,
    verify_discriminator,
)
from .errors import (
    AlgebraError,
    MalformedAlgebra,
    SignatureMismatch,
    SignatureError,
    PreconditionFailed,
    NotQuasiStone,
    NotWeakLukasiewicz,
    NotDistributivePBZ,
    NotDeMorgan,
    NotACongruence,
    CapExceeded,
    UnknownName,
    ParseError,
    UnboundVariable,
    VariableSplitError,
    FormatError,
)
from .formats import format_algebra, load_algebra, parse_algebra, save_algebra
from .terms import (
    Counterexample,
    Equation,
    Quasiequation,
    build_m_term,
    check_identity,
    check_law,
    check_quasiidentity,
    format_law,
    format_term,
    named_equation,
    parse,
    parse_law,
    satisfies,
)

__version__ = "0.1.0"
