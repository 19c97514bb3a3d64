"""Exact desk-scale Gaussian boson sampling."""
from ._kernels import BACKEND_NAME
from .ensembles import coe_matrix, haar_unitary
from .hafnian import (
    hafnian,
    hafnian_pmp,
    hafnian_recursive,
    hafnian_via_permanent_embedding,
    permanent_ryser,
)
from .linalg import determinant, inverse, is_hermitian_positive_definite, submatrix_by_multiset
from .probability import (
    PpeDistributionSpec,
    enumerate_bounded_patterns,
    enumerate_collision_free_patterns,
    generation_ratio,
    mean_and_modal,
    pattern_probability_general,
    pattern_probability_squeezed,
    pfbs_probability,
    ppe_distribution,
    sampling_space_sizes,
)
from .sampler import DistributionTable, SampleRecord, build_distribution, draw, total_photon_histogram
from .state import (
    GaussianState,
    InterferometerUnitary,
    SqueezeParams,
    b_matrix,
    output_state,
    reduce_modes,
    sampling_matrix_a,
    sigma_q,
    squeeze_matrix,
    vacuum,
)

__version__ = "0.1.0"
