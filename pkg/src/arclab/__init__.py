"""arclab: exact computation with arcs of V_k(F_q).

Builds the certification matrix of an arc, certifies upper bounds on the
largest arc containing it, detects the weight-two property, recovers the
co-secant hyperplanes any extension must have, and constructs the dual
hypersurface - all over exact finite-field arithmetic, with brute-force
oracles at desk scale.
"""

from .gf import FieldCtx, field_new, conway_polynomial
from .arcgeom import (
    ArcConfig,
    complete_search,
    cosecants_through,
    det_full,
    extensions_of,
    pencil_through,
    validate_arc,
)
from .exactmat import GFMatrix, left_null_basis, rank, rref, solve
from .tangentfns import alpha_table, arc_degree, interpolate_fA, tangent_fn
from .certifier import (
    bound_scan,
    build_Mn,
    conjecture_scan,
    corollary2_route,
    even_nullity_check,
    property_w,
    recover_cosecants,
    theorem1_test,
    vG_check,
    vg_vector,
)
from .hypersurf import build_surface, eval_dual, eval_surface, theorem9_check

__version__ = "0.1.0"
