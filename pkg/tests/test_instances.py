"""Poset, graph, and set instances: representations, factorizations, counts."""
from itertools import product as iproduct

import pytest

from emcat.emcore import check_orthogonal, in_E, reflection_universality_check
from emcat.errors import (
    AntisymmetryError,
    CyclicGraphUnsupported,
    TargetMismatch,
    ValidationError,
)
from emcat.fincat import ONE, THREE, TWO, find_isomorphism, validate_functor
from emcat.instances import (
    DOT,
    E1,
    E2,
    POS_ONE,
    POS_TWO,
    VEE,
    FinSetMap,
    FinSetObj,
    GraphMap,
    Poset,
    PosetMap,
    antichain,
    chain,
    finset_instance,
    free_category,
    free_functor,
    gph_instance,
    graph_from_edges,
    is_cofinal,
    lower_sets,
    opposite_poset,
    pos_comprehensive_instance,
    pos_hom_map,
    pos_lowerset_instance,
    pos_power_object,
    poset_from_pairs,
    subposet,
    sup_of_mask,
)
from emcat.instances.posets import pos_from_cat, pos_map_to_functor, pos_to_cat


# posets: representation

def test_poset_from_pairs_closes_transitively():
    P = poset_from_pairs(("x", "y", "z"), [("x", "y"), ("y", "z")])
    assert P.leq(0, 2) and not P.leq(2, 0)


def test_poset_antisymmetry_rejected():
    with pytest.raises(AntisymmetryError):
        poset_from_pairs(("x", "y"), [("x", "y"), ("y", "x")])


def test_poset_requires_transitive_input():
    with pytest.raises(ValidationError):
        Poset((0b011, 0b110, 0b100))


def test_poset_map_requires_monotone():
    with pytest.raises(ValidationError):
        PosetMap(POS_TWO, POS_TWO, (1, 0))


def test_sup_oracle():
    assert sup_of_mask(VEE, 0b011) == 2
    assert sup_of_mask(VEE, 0b001) == 0
    assert sup_of_mask(antichain(2), 0b11) is None
    # empty mask: the bottom element if there is one
    assert sup_of_mask(POS_TWO, 0) == 0
    assert sup_of_mask(antichain(2), 0) is None


def test_lower_sets_counts():
    assert len(lower_sets(POS_TWO)) == 3
    assert len(lower_sets(POS_ONE)) == 2
    assert len(lower_sets(VEE)) == 5
    assert len(lower_sets(antichain(2))) == 4


def test_opposite_poset_involution():
    assert opposite_poset(opposite_poset(VEE)) == VEE
    assert opposite_poset(POS_TWO).leq(1, 0)


# posets: the two systems

def test_lowerset_membership():
    low = pos_lowerset_instance()
    assert low.in_M(subposet(VEE, 0b011)[1])
    assert low.in_M(low.identity(VEE))
    # image not down-closed
    assert not low.in_M(PosetMap(POS_ONE, POS_TWO, (1,)))
    # not injective
    assert not low.in_M(PosetMap(antichain(2), POS_ONE, (0, 0)))


def test_comprehensive_membership_allows_non_injective():
    comp = pos_comprehensive_instance()
    low = pos_lowerset_instance()
    f = PosetMap(antichain(2), POS_ONE, (0, 0))
    assert comp.in_M(f) and not low.in_M(f)
    # the chain collapsed is not a fibration: two lifts below the top
    assert not comp.in_M(PosetMap(POS_TWO, POS_ONE, (0, 0)))


def test_lowerset_factorize_examples():
    low = pos_lowerset_instance()
    fac = low.factorize(PosetMap(POS_ONE, POS_TWO, (0,)))
    assert fac.m.src.n == 1 and fac.m.values == (0,)
    fac = low.factorize(PosetMap(antichain(2), VEE, (0, 1)))
    assert fac.m.values == (0, 1)
    ident = low.identity(VEE)
    fac = low.factorize(ident)
    assert fac.e == ident and fac.m == ident


def test_factorize_agrees_on_cofinality():
    # derived left-class membership matches the direct cofinality test
    low = pos_lowerset_instance()
    posets = [POS_ONE, POS_TWO, VEE, antichain(2)]
    for A in posets:
        for B in posets:
            for f in low.maps(A, B):
                assert in_E(low, f) == is_cofinal(f)


def test_final_point_of_chain_in_both_systems():
    t = PosetMap(POS_ONE, POS_TWO, (1,))
    assert in_E(pos_lowerset_instance(), t)
    assert in_E(pos_comprehensive_instance(), t)


def test_neighborhoods_are_principal_lower_sets_in_both_systems():
    low, comp = pos_lowerset_instance(), pos_comprehensive_instance()
    for x in VEE.elements():
        want = bin(VEE.down_mask(x)).count("1")
        for inst in (low, comp):
            nu = inst.factorize(PosetMap(POS_ONE, VEE, (x,))).m
            assert nu.src.n == want
            assert sorted(nu.values) == [i for i in VEE.elements() if VEE.leq(i, x)]


def test_comprehensive_factorize_matches_components():
    comp = pos_comprehensive_instance()
    fac = comp.factorize(PosetMap(VEE, POS_ONE, (0, 0, 0)))
    assert fac.m.src.n == 1
    fac = comp.factorize(PosetMap(antichain(2), POS_ONE, (0, 0)))
    assert fac.e == comp.identity(antichain(2))


def test_monotone_map_counts():
    low = pos_lowerset_instance()
    # functions between chains counted by a stars-and-bars oracle
    assert len(low.maps(chain(2), chain(2))) == 3
    assert len(low.maps(chain(2), chain(3))) == 6
    assert len(low.maps(antichain(2), VEE)) == 9
    brute = [vs for vs in iproduct(range(3), repeat=3)
             if all(VEE.leq(vs[i], vs[j]) for i in range(3) for j in range(3)
                    if VEE.leq(i, j))]
    assert len(low.maps(VEE, VEE)) == len(brute)


def test_poset_pullback_and_product():
    low = pos_lowerset_instance()
    pr = low.product(POS_TWO, POS_TWO)
    assert pr.space.n == 4
    assert sum(bin(r).count("1") for r in pr.space.le) == 9
    incl = subposet(VEE, 0b011)[1]
    pb = low.pullback(PosetMap(POS_ONE, VEE, (0,)), incl)
    assert pb.space.n == 1
    u = pb.mediate(low.identity(POS_ONE), PosetMap(POS_ONE, incl.src, (0,)))
    assert u.values == (0,)


def test_poset_discrete_spaces():
    low = pos_lowerset_instance()
    assert len(low.discrete_spaces_over(VEE)) == 5
    comp = pos_comprehensive_instance()
    ds = comp.discrete_spaces_over(POS_TWO, 2)
    assert len(ds) == sum(s0 ** s1 for s0 in range(3) for s1 in range(3))
    for m in ds:
        assert comp.in_M(m)


def test_lowerset_reflection_is_universal():
    low = pos_lowerset_instance()
    p = PosetMap(antichain(2), VEE, (0, 1))
    fac = low.factorize(p)
    assert reflection_universality_check(low, p, fac.e, fac.m).holds


def test_fold_not_orthogonal_to_antichain_over_point():
    low = pos_lowerset_instance()
    fold = PosetMap(antichain(2), POS_ONE, (0, 0))
    assert not check_orthogonal(low, fold, fold).holds


def test_power_object_shapes():
    P = pos_power_object(POS_TWO)
    assert P.space.n == 3
    assert P.yoneda.values == (1, 2)
    omega = pos_power_object(POS_ONE).space
    assert omega.le == POS_TWO.le
    assert pos_power_object(Poset(())).space.n == 1


def test_hom_map_truth_table():
    hm = pos_hom_map(POS_TWO)
    # pairs (x', x) in lexicographic order; value is [x' <= x]
    assert hm.relation.values == (1, 1, 0, 1)
    assert hm.transpose_left == pos_power_object(POS_TWO).yoneda
    assert hm.transpose_right == pos_power_object(opposite_poset(POS_TWO)).yoneda
    assert pos_hom_map(POS_ONE).relation.values == (1,)


def test_poset_category_conversions():
    C, _ = pos_to_cat(VEE)
    assert C.n_obj == 3 and C.n_arr == 5
    assert pos_from_cat(C) == VEE
    F = pos_map_to_functor(PosetMap(POS_TWO, VEE, (0, 2)))
    validate_functor(F)


# graphs

def test_free_category_fixtures():
    C, _ = free_category(DOT)
    assert (C.n_obj, C.n_arr) == (1, 1) and find_isomorphism(C, ONE)
    C, _ = free_category(E1)
    assert (C.n_obj, C.n_arr) == (2, 3) and find_isomorphism(C, TWO)
    C, _ = free_category(E2)
    assert (C.n_obj, C.n_arr) == (3, 6) and find_isomorphism(C, THREE)


def test_free_category_refuses_cycles():
    with pytest.raises(CyclicGraphUnsupported):
        free_category(graph_from_edges(1, [(0, 0)]))
    with pytest.raises(CyclicGraphUnsupported):
        free_category(graph_from_edges(2, [(0, 1), (1, 0)]))


def test_free_functor_is_a_functor():
    inst = gph_instance()
    for f in inst.maps(E1, E2):
        validate_functor(free_functor(f))
    collapse = GraphMap(E1, DOT, (0, 0), (0, 0, 0))
    validate_functor(free_functor(collapse))


def test_graph_map_validation():
    with pytest.raises(ValidationError):
        GraphMap(E1, E1, (0, 1), (0, 1, 0))  # edge endpoints broken
    with pytest.raises(ValidationError):
        GraphMap(DOT, E1, (0,), (2,))  # identity loop not preserved


def test_graph_neighborhood_of_edge_target():
    inst = gph_instance()
    fac = inst.factorize(GraphMap(DOT, E1, (1,), (1,)))
    T = fac.m.src
    assert T.n_node == 2 and T.n_edge == 3
    assert sorted(fac.m.node_map) == [0, 1]
    assert inst.in_M(fac.m)


def test_graph_edge_lifting_membership():
    inst = gph_instance()
    assert inst.in_M(inst.identity(E2))
    assert not inst.in_M(inst.bang(E1))
    assert inst.in_M(GraphMap(DOT, E1, (0,), (0,)))
    assert not inst.in_M(GraphMap(DOT, E1, (1,), (1,)))


def test_graph_factorize_connected_base():
    inst = gph_instance()
    fac = inst.factorize(inst.bang(E2))
    assert fac.m.src.n_node == 1
    two_dots = graph_from_edges(2, [])
    fac = inst.factorize(GraphMap(two_dots, DOT, (0, 0), (0, 0)))
    assert fac.m.src.n_node == 2


def test_graph_factorize_cyclic_input_refused():
    inst = gph_instance()
    loop = graph_from_edges(1, [(0, 0)])
    with pytest.raises(CyclicGraphUnsupported):
        inst.factorize(inst.bang(loop))


def test_graph_fibration_enumeration_counts():
    inst = gph_instance()
    count = len(inst.discrete_spaces_over(E2, 2))
    expected = sum(s0 ** s1 * s1 ** s2
                   for s0 in range(3) for s1 in range(3) for s2 in range(3))
    assert count == expected
    for m in inst.discrete_spaces_over(E1, 2):
        assert inst.in_M(m)


def test_graph_product_and_pullback():
    inst = gph_instance()
    pr = inst.product(E1, E1)
    assert pr.space.n_node == 4 and pr.space.n_edge == 9
    u = pr.pair(inst.identity(E1), inst.identity(E1))
    assert inst.compose(u, pr.proj_left) == inst.identity(E1)
    nu1 = inst.factorize(GraphMap(DOT, E1, (1,), (1,))).m
    pb = inst.pullback(GraphMap(DOT, E1, (0,), (0,)), nu1)
    assert pb.space.n_node == 1


def test_graph_reflection_universality():
    inst = gph_instance()
    p = GraphMap(DOT, E1, (1,), (1,))
    fac = inst.factorize(p)
    assert reflection_universality_check(inst, p, fac.e, fac.m, size_bound=2).holds


# finite sets

def test_finset_factorize_is_image():
    inst = finset_instance()
    p = FinSetMap(FinSetObj(3), FinSetObj(3), (2, 2, 0))
    fac = inst.factorize(p)
    assert fac.m.values == (0, 2) and fac.e.values == (1, 1, 0)
    assert inst.in_M(fac.m) and in_E(inst, fac.e)


def test_finset_classes():
    inst = finset_instance()
    surj = FinSetMap(FinSetObj(2), FinSetObj(1), (0, 0))
    inj = FinSetMap(FinSetObj(1), FinSetObj(2), (1,))
    assert in_E(inst, surj) and not inst.in_M(surj)
    assert inst.in_M(inj) and not in_E(inst, inj)
    assert check_orthogonal(inst, surj, inj).holds


def test_finset_counts():
    inst = finset_instance()
    assert len(inst.maps(FinSetObj(2), FinSetObj(3))) == 9
    assert len(inst.points(FinSetObj(4))) == 4
    assert len(inst.discrete_spaces_over(FinSetObj(3))) == 8
    pr = inst.product(FinSetObj(2), FinSetObj(3))
    assert pr.space.size == 6
    f = FinSetMap(FinSetObj(2), FinSetObj(2), (0, 0))
    pb = inst.pullback(f, f)
    assert pb.space.size == 4


def test_finset_neighborhood_is_singleton():
    inst = finset_instance()
    X = FinSetObj(3)
    for x in X.elements():
        nu = inst.factorize(FinSetMap(FinSetObj(1), X, (x,))).m
        assert nu.src.size == 1 and nu.values == (x,)


def test_finset_reflection_universality():
    inst = finset_instance()
    p = FinSetMap(FinSetObj(3), FinSetObj(3), (2, 2, 0))
    fac = inst.factorize(p)
    assert reflection_universality_check(inst, p, fac.e, fac.m).holds


def test_finset_compose_guard():
    inst = finset_instance()
    with pytest.raises(TargetMismatch):
        inst.compose(inst.bang(FinSetObj(2)), FinSetMap(FinSetObj(2), SET := FinSetObj(2), (0, 1)))
