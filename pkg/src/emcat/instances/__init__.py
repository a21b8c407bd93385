"""Concrete ambient instances: posets (two systems), reflexive graphs,
finite sets."""
from .finsets import SET_ONE, FinSetInstance, FinSetMap, FinSetObj, finset_instance
from .graphs import (
    DOT,
    E1,
    E2,
    GphInstance,
    GraphMap,
    ReflexiveGraph,
    free_category,
    free_functor,
    gph_instance,
    graph_from_edges,
)
from .posets import (
    POS_ONE,
    POS_TWO,
    VEE,
    HomMapData,
    Poset,
    PosetMap,
    PowerObjectData,
    antichain,
    chain,
    is_cofinal,
    is_final_pos,
    lower_sets,
    opposite_poset,
    pos_comprehensive_instance,
    pos_hom_map,
    pos_lowerset_instance,
    pos_map_to_functor,
    pos_power_object,
    pos_to_cat,
    poset_from_pairs,
    subposet,
    sup_of_mask,
)

__all__ = [
    "DOT",
    "E1",
    "E2",
    "FinSetInstance",
    "FinSetMap",
    "FinSetObj",
    "GphInstance",
    "GraphMap",
    "ReflexiveGraph",
    "SET_ONE",
    "finset_instance",
    "free_category",
    "free_functor",
    "gph_instance",
    "graph_from_edges",
    "POS_ONE",
    "POS_TWO",
    "VEE",
    "HomMapData",
    "Poset",
    "PosetMap",
    "PowerObjectData",
    "antichain",
    "chain",
    "is_cofinal",
    "is_final_pos",
    "lower_sets",
    "opposite_poset",
    "pos_comprehensive_instance",
    "pos_hom_map",
    "pos_lowerset_instance",
    "pos_map_to_functor",
    "pos_power_object",
    "pos_to_cat",
    "poset_from_pairs",
    "subposet",
    "sup_of_mask",
]
