"""Exact classification of valence-two Killing tensors in the flat plane.

The package classifies the six-parameter families of Killing tensors of
the Euclidean and Minkowski planes into the orbits of the group that
preserves the type of the associated separable web, entirely in exact
rational arithmetic, and renders the webs of characteristic tensors.
"""

from .classify import (
    ClassificationReport,
    ORBIT_CLASSES,
    OrbitClass,
    SingularSetDescription,
    SingularVariant,
    atlas,
    classify,
    classify_label,
    representative,
    same_orbit,
    singular_set,
)
from .core import (
    EigenKind,
    EigenReport,
    KTParams,
    MetricSignature,
    QuadraticTensorField,
    SignatureError,
    components_at,
    discriminant_poly,
    eigenstructure_at,
    field_from_params,
    first_integral_along_geodesic,
    ktparams,
    metric_tensor,
    poisson_bracket_with_H,
)
from .groups import (
    DiscreteId,
    GeneratorId,
    apply_discrete,
    apply_finite,
    apply_half_turn,
    generator_matrix,
    generator_rank,
    generator_vector,
    lie_bracket_decompose,
)
from .invariants import (
    EuclideanInvariants,
    MinkowskiInvariants,
    euclid_invariants,
    mink_invariants,
    surface_flags,
)
from .linalg import RatMatrix, as_rational, rat_det, rat_rank
from .webs import (
    NonCharacteristicError,
    WebDocument,
    WebRenderConfig,
    eigen_directions,
    render_svg,
    trace_web,
)

__version__ = "0.1.0"

__all__ = [
    "ClassificationReport",
    "DiscreteId",
    "EigenKind",
    "EigenReport",
    "EuclideanInvariants",
    "GeneratorId",
    "KTParams",
    "MetricSignature",
    "MinkowskiInvariants",
    "NonCharacteristicError",
    "ORBIT_CLASSES",
    "OrbitClass",
    "QuadraticTensorField",
    "RatMatrix",
    "SignatureError",
    "SingularSetDescription",
    "SingularVariant",
    "WebDocument",
    "WebRenderConfig",
    "apply_discrete",
    "apply_finite",
    "apply_half_turn",
    "as_rational",
    "atlas",
    "classify",
    "classify_label",
    "components_at",
    "discriminant_poly",
    "eigen_directions",
    "eigenstructure_at",
    "euclid_invariants",
    "field_from_params",
    "first_integral_along_geodesic",
    "generator_matrix",
    "generator_rank",
    "generator_vector",
    "ktparams",
    "lie_bracket_decompose",
    "metric_tensor",
    "mink_invariants",
    "poisson_bracket_with_H",
    "rat_det",
    "rat_rank",
    "render_svg",
    "representative",
    "same_orbit",
    "singular_set",
    "surface_flags",
    "trace_web",
]
