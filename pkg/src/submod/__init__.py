"""Exact toolkit for submodular setfunctions on finite ground sets."""
__version__ = "0.1.0"

from .core import *  # noqa: F401,F403
from .core import __all__ as _core_all
from .errors import *  # noqa: F401,F403
from .kernels import HAVE_COMPILED, backend, use_backend
from . import calculus, choquet, geometry, lp, polyhedra, serialize, sfm  # noqa: F401
from .calculus import (complement, decompose_submodular, join_meet, monotonize, project, restrict,
                       splice, variation, weighting)
from .choquet import ChainRepresentation, StepFunction, certify_convexity, choquet as choquet_integral, layer_cake, uncross
from .geometry import (bjorner_distance, certify_strong_submodular, induce_representation, lindstrom_wilf,
                       mobius_kit, negative_type_check, quotient_pushforward, roofs, window_check)
from .polyhedra import (Chain, Charge, basic_minorizer, coupling_exists, exchange_augment, greedy_chain_charge,
                        intersection_value, matroid_intersection_check, max_minorizer_at, pinning_charge,
                        separate, weighted_intersection)
from .sfm import dilworth_truncation_rank, majorizer, minimize, positive_part, positive_part_function
