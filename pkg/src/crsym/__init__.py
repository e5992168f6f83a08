"""Exact symmetry algebras of real hypersurfaces in complex space.

Everything is computed over the Gaussian rationals: polynomials in
z, conj(z), w, conj(w); holomorphic vector fields and their real parts;
structure constants and isomorphism fingerprints; pseudo-unitary matrix
algebras; blow-up substitutions; and a catalog of worked models with a
verification driver.
"""

from .blowup import (
    BlowupMap,
    ChartAtlas,
    blowup_along,
    compose,
    normalize,
    parse_map_spec,
    point_blowup_atlas,
    pullback,
    ramified_cover,
    singular_locus,
    weighted_blowup,
)
from .catalog import (
    AlgebraRef,
    ModelRecord,
    VerificationReport,
    builtin_models,
    eq_one_model,
    eq_two_model,
    get_model,
    vanishing_on_locus,
    verify_model,
    vfrepres_model,
)
from .fields import (
    HoloField,
    bracket,
    is_tangent,
    max_vanishing_order,
    solve_polynomial_symmetries,
    span_contains,
    vanishing_order,
)
from .gaussian import GaussRational, I
from .hypersurface import (
    DefiningFunction,
    SignatureVector,
    classify_degeneracy,
    degeneracy_certificate,
    levi_matrix,
    levi_signature_at,
    quadric,
)
from .io import load_model, parse_defining, parse_field, record_from_json, record_to_json
from .lie import (
    Fingerprint,
    StructureConstants,
    fingerprint,
    fingerprints_match,
    from_relations,
    killing_form,
    structure_constants,
)
from .parse import format_field, format_poly, parse_poly
from .poly import Poly, VarSet, conjugate, normal_form, pseudo_divide, substitute
from .unitary import (
    HermitianForm,
    MatrixAlgebra,
    ParabolicSpec,
    audit_subalgebra_bound,
    chart_action,
    chart_algebra,
    gap_thresholds,
    max_parabolic,
    parabolic_dimension,
    parabolic_subalgebra,
    stabilizer_of_subspace,
    su_basis,
    u_plus_sol2,
)

__version__ = "0.1.0"

import types as _types

__all__ = sorted(
    name
    for name, obj in globals().items()
    if not name.startswith("_") and not isinstance(obj, _types.ModuleType)
)
