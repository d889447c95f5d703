"""planarlab: planar functions over odd-characteristic finite fields.

Construction, exhaustive verification, screening and equivalence
comparison of planar functions, at desk scale (q <= 3^6 class fields).
"""

from .gf import FieldCtx, field_new, field_from_descriptor
from .fpoly import (
    DOPoly,
    FuncTable,
    compose,
    add_tables,
    sub_tables,
    scale_table,
    do_monomial,
    is_permutation,
    lagrange_interpolate,
    linearized_from_coeffs,
    monomial,
    reduce_poly,
    to_table,
)
from .planar import (
    PlanarVerdict,
    build_general,
    delta_map,
    is_planar,
    is_planar_delta,
    is_planar_do,
    lemma4_condition,
    thm2_condition_holds,
)
from .families import FamilySpec, expand, expand_poly, find_params, restrict_to_subfield, validate
from .equiv import (
    EquivResult,
    Fingerprint,
    fingerprint,
    linear_equivalent_bruteforce,
    separate_family_f1,
)
from .screen import (
    ScreenVerdict,
    do_divides,
    factorization_identity_holds,
    parity_screen,
    thm15_filter,
    verify_factorization_identity,
)

__all__ = [name for name in dir() if not name.startswith("_")]
