"""pargal: exact computations with unital partial Galois actions of finite
groups on finite-rank commutative algebras, including quotient actions and
the Harrison product."""

from .scalars import QQ, BaseRing, Matrix, Modular, parse_ring
from .algebra import (
    Algebra,
    AlgebraError,
    AlgebraMorphism,
    Element,
    SplitPresentation,
    find_split_presentation,
    make_algebra,
    product_over_ideals,
    subalgebra_from_constraints,
    tensor,
    unital_ideal,
)
from .groups import (
    FiniteGroup,
    GroupError,
    Subgroup,
    all_subgroups,
    delta_subgroup,
    delta_transversal,
    is_normal,
    make_cyclic,
    make_product,
    quotient,
    subgroup_closure,
)
from .paction import (
    GaloisCoordinates,
    IsoResult,
    PartialAction,
    galois_coordinates,
    global_action,
    invariants,
    inverse_action,
    iso_check,
    phi_map,
    restrict,
    trace,
    transport,
    verify_partial_action,
)
from .envelope import (
    GlobalizationData,
    certify_globalization,
    fixed_ring,
    global_iso_check,
    globalize,
    psi_h,
    psi_report,
    subgroup_idempotents,
)
from .quotient import (
    QuotientAction,
    quotient_action,
    quotient_galois_check,
    quotient_idempotent,
    quotient_via_globalization,
)
from .harrison import (
    CertificationError,
    ExtensionClass,
    cyclic_compose,
    cyclic_decompose,
    delta_fixed_ring,
    harrison_product,
    hat_action,
    hat_iso,
    idempotent_class,
    star_product_suite,
    tensor_action,
    trivial_extension,
)
from .actionfile import ActionFileError, load_action, save_action

__version__ = "0.1.0"
