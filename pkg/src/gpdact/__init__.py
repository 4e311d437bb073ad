"""gpdact: exact groupoid-boundary computation and its quantum image.

Finite groupoids model systems whose objects are the robust logical states
and whose morphisms are the fragile microstates.  Profunctors between them
model local system types, and natural-number spans model processes.  This
package builds the calculus, the secure-communication cells living in it,
and the exact linear-algebra checks of their quantum counterparts.
"""

__version__ = "0.1.0"

from .catalog import named_group
from .errors import GpdActError
from .groupoids import (
    Groupoid,
    discrete_groupoid,
    disjoint_union,
    group_as_groupoid,
    groupoid_from_dict,
    load_groupoid,
    product,
    skeletalize,
    validate_groupoid,
)
from .profunctors import (
    boundary_left,
    boundary_right,
    compose_profunctors,
    free_system,
    hom_profunctor,
    path,
    tensor_profunctors,
)
from .spans import (
    Span2,
    dagger,
    equals,
    horizontal_compose,
    identity_span,
    is_unitary,
    make_span,
    vertical_compose,
)
from .structures import (
    build_delta,
    build_lambda,
    canonical_cells,
    check_dense_coding,
    check_topological_axioms,
    classify_controlled,
    curry_controlled,
    evaluate_term,
    parse_term,
    partial_transpose,
    uncurry_controlled,
)
from .thermal import decrypt, encrypt, landauer_report
from .quantize import (
    character_table,
    check_mub,
    dense_coding_simulation,
    q_span,
    sigma_pi_check,
    teleportation_simulation,
)
