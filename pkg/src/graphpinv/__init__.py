"""Moore-Penrose inverses of graph adjacency matrices via Tikhonov regularisation."""
from .engine import (
    NonConvergence,
    PathConfig,
    PinvResult,
    path_iterate,
    pinv,
    stationarity_residual,
    tikhonov_objective,
    trace_path,
)
from .generators import (
    gen_complete,
    gen_cycle,
    gen_empty,
    gen_erdos_renyi,
    gen_path,
    gen_petersen,
    gen_star,
)
from .graph import (
    Graph,
    GraphError,
    NeighborVector,
    adjacency_matrix,
    apply_adjacency,
    common_neighbors,
    degree,
    neighbor_vector,
)
from .io import format_edge_list, format_matrix, parse_edge_list, parse_matrix
from .oracle import SpectralDecomposition, jacobi_eigh, rational_pinv, spectral_pinv
from .resolvent import Resolvent, build_resolvent, resolvent_identity_check, solve
from .verification import MpReport, mp_check, nonsingularity_test, variational_check

__version__ = "0.1.0"
