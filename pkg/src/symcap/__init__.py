"""symcap: exact-arithmetic symplectic embedding obstructions and
machine-checkable embedding certificates."""

from . import capacities, certify, exact, packing, toric, weights
from .capacities import (
    CapacityList,
    Ellipsoid,
    VolumeVerdict,
    ball_lower_bound,
    ek_capacities,
    ek_obstruction,
    volume_obstruction,
)
from .certify import (
    EmbeddingCertificate,
    PackCertificate,
    build_fullfill2,
    build_lambdatrick,
    build_olga2,
    build_olga3,
    build_olga4,
    build_pack,
    f_bounds,
    f_known,
    fullfill_hypothesis_bound,
    stability_bounds,
    verify_certificate,
    verify_pack_certificate,
)
from .exact import (
    IntervalApprox,
    Ordering,
    PrecisionBudget,
    RealExpr,
    compare,
    eval_interval,
    floor_expr,
    power,
    rational,
    root,
    sqrt,
)
from .packing import (
    ClassVector,
    Feasibility,
    FeasibilityResult,
    enumerate_exceptional,
    feasible,
    is_exceptional,
    packing_number,
)
from .toric import (
    Decomposition,
    LatticePolytope,
    UnimodularAffineMap,
    fig2_decomposition,
    moment_polytope,
    subdivide,
    unit_subdivide,
    verify_tiling,
)
from .weights import (
    BallPackingProblem,
    ContinuedFraction,
    WeightExpansion,
    continued_fraction,
    ellipsoid_to_ball_problem,
    weight_expansion,
)

__version__ = "0.1.0"
