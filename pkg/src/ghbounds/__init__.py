"""Metric-geometry toolkit: Hausdorff and exact Gromov-Hausdorff distances on
finite spaces, r-disjoint uniformly bounded cover certificates, and certified
GH lower bounds against model spaces, plus generators for the bundled
lattice/comb experiments."""

from .correspondence import (
    Correspondence,
    GhResult,
    Relation,
    ball_correspondence,
    count_correspondences,
    distortion,
    enumerate_correspondences,
    exact_gh,
    gh_upper_bound_from_correspondence,
    is_correspondence,
    min_distortion_bruteforce,
    nearest_point_correspondence,
    pushforward,
)
from .covers import (
    BoundResult,
    CoverCertificate,
    DisjointnessReport,
    ModelSpaceDescriptor,
    SubsetFamily,
    check_cover,
    check_r_disjoint,
    check_uniform_bound,
    gh_lower_bound,
    make_certificate,
    model_space,
    multiplicity,
    pushforward_family,
    scale_family,
)
from .constructions import (
    WindowSpec,
    gen_brick_cover,
    gen_chess_families,
    gen_comb_cover,
    gen_comb_set,
    gen_epsilon_net,
    gen_interval_cover,
    gen_lattice_window,
    merge_point_sets,
)
from .metric import (
    DEFAULT_TOL,
    EuclideanPointSet,
    FiniteMetricSpace,
    SubsetRef,
    as_subset,
    build_space,
    diam,
    directed_hausdorff,
    find_isometry,
    hausdorff,
    induce_space,
    is_isometric,
    neighborhood,
    scale,
    scale_points,
    set_distance,
)
from . import errors

__version__ = "0.1.0"

__all__ = [
    "BoundResult",
    "Correspondence",
    "CoverCertificate",
    "DEFAULT_TOL",
    "DisjointnessReport",
    "EuclideanPointSet",
    "FiniteMetricSpace",
    "GhResult",
    "ModelSpaceDescriptor",
    "Relation",
    "SubsetFamily",
    "SubsetRef",
    "WindowSpec",
    "as_subset",
    "ball_correspondence",
    "build_space",
    "check_cover",
    "check_r_disjoint",
    "check_uniform_bound",
    "count_correspondences",
    "diam",
    "directed_hausdorff",
    "distortion",
    "enumerate_correspondences",
    "errors",
    "exact_gh",
    "find_isometry",
    "gen_brick_cover",
    "gen_chess_families",
    "gen_comb_cover",
    "gen_comb_set",
    "gen_epsilon_net",
    "gen_interval_cover",
    "gen_lattice_window",
    "gh_lower_bound",
    "gh_upper_bound_from_correspondence",
    "hausdorff",
    "induce_space",
    "is_correspondence",
    "is_isometric",
    "make_certificate",
    "merge_point_sets",
    "min_distortion_bruteforce",
    "model_space",
    "multiplicity",
    "neighborhood",
    "nearest_point_correspondence",
    "pushforward",
    "pushforward_family",
    "scale",
    "scale_family",
    "scale_points",
    "set_distance",
]
