"""Ground sets, the setfunction oracle, generators, relations, presentable sets."""
from .certificate import Certificate
from .generators import (forest_rank, gen_concave_of_measure, gen_coverage, gen_cut, gen_entropy,
                         gen_hitting, gen_hom_count, gen_ideal_indicator, gen_logdet,
                         gen_matroid_rank, gen_modular, make_table_function)
from .ground import GroundSet, check_size, max_n, popcount, submasks, supermasks
from .presentable import (PresentableQuotient, PresentableSet, presentable_measure,
                          presentable_quotient, presentable_sup)
from .properties import (check_decreasing, check_increasing, check_matroid_rank, check_modular,
                         check_normalized, check_property, check_subadditive, check_submodular,
                         check_supermodular)
from .relation import Relation, graph_incidence, relation_coimage, relation_image
from .setfunction import SetFunction, same_ground, zero

__all__ = [
    "Certificate", "GroundSet", "PresentableQuotient", "PresentableSet", "Relation", "SetFunction",
    "check_decreasing", "check_increasing", "check_matroid_rank", "check_modular",
    "check_normalized", "check_property", "check_size", "check_subadditive", "check_submodular",
    "check_supermodular", "forest_rank", "gen_concave_of_measure", "gen_coverage", "gen_cut",
    "gen_entropy", "gen_hitting", "gen_hom_count", "gen_ideal_indicator", "gen_logdet",
    "gen_matroid_rank", "gen_modular", "graph_incidence", "make_table_function", "max_n",
    "popcount", "presentable_measure", "presentable_quotient", "presentable_sup",
    "relation_coimage", "relation_image", "same_ground", "submasks", "supermasks", "zero",
]
