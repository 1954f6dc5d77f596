"""Exact-arithmetic geometry of numbers: lattice invariants, Minkowski-type
bound checks and the classical number-theoretic applications."""
from .core import (
    LatticeBasis,
    MeshPoint,
    UnimodularWitness,
    blichfeldt_collision,
    determinant_squared,
    lattice_determinant,
    make_lattice,
    point_count_ratio,
    reduce_mod_mesh,
    same_lattice,
)
from .errors import GeonumError
from .gso import GramSchmidtData, gram_schmidt, gso_min_norm_sq, gso_triangular
from .minima import (
    BoundReport,
    MinimaReport,
    bounds_report,
    enumerate_below,
    shortest_vector,
    successive_minima,
)
from .numtheory import (
    dirichlet_approx,
    euler_four_square_product,
    four_squares,
    sqrt_minus_one_mod_p,
    two_squares,
    yz_witness,
)
from .packing import (
    ball_volume,
    hermite_bounds,
    hermite_exact,
    hermite_invariant,
    minkowski_hlawka_bound,
    packing_density,
)
from .voronoi import (
    RadiusReport,
    RelevantVectorSet,
    covering_radius_estimate,
    in_voronoi_cell,
    radius_report,
    relevant_vectors,
)

__version__ = "0.1.0"
