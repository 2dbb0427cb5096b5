"""Online inverse linear optimization over M-convex action sets."""

from .geometry import (CyclicArcs, ExactModeUnavailable, OrderPolytope,
                       count_linear_extensions)
from .learner import (CentroidLearner, ProtocolViolation, RobustLearner,
                      RoundOutcome, RoundRecord, TopoLearner, make_learner)
from .linopt import (Objective, argmax, argmax_bruteforce, argmax_exchange,
                     is_exchange_optimal)
from .mconvex import (DimensionMismatch, EnumerationLimit, ExplicitSet,
                      GraphicMatroid, LatticeSimplex, MConvexSet, NotInSet,
                      PartitionMatroid, SegmentEmbed, UniformMatroid,
                      set_from_descriptor)
from .orderstate import ArcSet, CyclicState

__version__ = "0.1.0"

__all__ = [
    "ArcSet", "CyclicState",
    "CentroidLearner", "RobustLearner", "TopoLearner", "make_learner",
    "ProtocolViolation", "RoundOutcome", "RoundRecord",
    "CyclicArcs", "ExactModeUnavailable", "OrderPolytope",
    "count_linear_extensions",
    "Objective", "argmax", "argmax_bruteforce", "argmax_exchange",
    "is_exchange_optimal",
    "DimensionMismatch", "EnumerationLimit", "ExplicitSet", "GraphicMatroid",
    "LatticeSimplex", "MConvexSet", "NotInSet", "PartitionMatroid",
    "SegmentEmbed", "UniformMatroid", "set_from_descriptor",
    "__version__",
]
