"""
Numerical toolkit for the Gelfand-Zeitlin integrable system on gl(n, C):
GZ functions and flows, the Kostant-Wallach map and its Hessenberg inverse,
decomposition-class strata, the cover in (x, z) coordinates and the free
Z_D action on it.
"""

from .cover import (
    CoverPoint,
    ZDElement,
    deck,
    kappa,
    level_generators,
    lift,
    lift_span_check,
    mu,
    p_flow,
    p_function,
    q_flow,
    q_function,
    transporter,
    zd_act,
)
from .decomp import (
    RegularDecompositionData,
    atlas,
    canonical_rep,
    class_of,
    generic_counts,
    in_tower,
    sigma_order,
    stratum_of,
    zd_dimension,
)
from .errors import (
    GZError,
    DimensionMismatch,
    InvalidInput,
    IndexOutOfRange,
    ClusterAmbiguity,
    NotRegular,
    NotStronglyRegular,
    NotInTower,
    RepeatedEigenvalue,
    DuplicateWithinLevel,
    IllegalPermutation,
    SingularSemisimplePart,
    FiberMismatch,
    NotGeneric,
    NoSolution,
    SamplingFailure,
)
from .gz_core import (
    GZValue,
    a_tangent_span,
    cutoff,
    gz_field,
    gz_flow,
    gz_function,
    is_strongly_regular,
    kks_isotropy_check,
    kw_map,
    lie_poisson_bracket,
    phi_jacobian_rank,
)
from .hessenberg import hessenberg_section, is_hessenberg, phi_inverse, trivialize
from .linalg_core import (
    centralizer_basis,
    charpoly,
    clustered_spectrum,
    jordan_chevalley,
    numerical_rank,
    spectral_projector,
)
from .sampling import sample_cover_point, sample_strongly_regular

__version__ = "0.1.0"
