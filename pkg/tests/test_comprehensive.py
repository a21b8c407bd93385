"""Category instance: discrete fibrations, finality, the reflection formula."""
import pytest

from emcat.comprehensive import (
    cat_instance,
    comma_over_point,
    discrete_reflection_cat,
    functors_over,
    is_discrete_fibration,
    is_final_cat,
    total_of_presheaf,
)
from emcat.errors import TargetMismatch
from emcat.fincat import (
    D2,
    ONE,
    PARALLEL,
    THREE,
    TWO,
    FinFunctor,
    bang_functor,
    comma,
    compose_functors,
    enumerate_functors,
    find_isomorphism,
    identity_functor,
    point_functor,
)


def test_discrete_fibration_identity_and_points():
    assert is_discrete_fibration(identity_functor(TWO)) is not None
    # no non-identity arrow ends at 0, so the point at 0 lifts trivially
    assert is_discrete_fibration(point_functor(TWO, 0)) is not None
    # the arrow into 1 has no lift ending at the single upstairs object
    assert is_discrete_fibration(point_functor(TWO, 1)) is None


def test_discrete_fibration_rejects_bang_of_two():
    # two arrows of TWO end at 1 and both sit over the only arrow downstairs
    assert is_discrete_fibration(bang_functor(TWO)) is None


def test_fibration_witness_laws():
    inst = cat_instance()
    m = inst.factorize(point_functor(TWO, 1)).m
    w = is_discrete_fibration(m)
    assert w is not None
    X, M = m.tgt, m.src
    for (h, b), beta in w.lifts:
        assert m.arr_map[beta] == h and M.cod[beta] == b
        if X.is_identity(h):
            assert M.is_identity(beta)


def test_finality_examples():
    assert is_final_cat(identity_functor(THREE))
    assert is_final_cat(bang_functor(PARALLEL))
    assert is_final_cat(point_functor(TWO, 1))
    assert not is_final_cat(point_functor(TWO, 0))
    assert not is_final_cat(bang_functor(D2))


def test_comma_over_point_matches_hom():
    objs, class_of, reps = comma_over_point(TWO, 0, point_functor(TWO, 1))
    # single pair (dot, u) and a single class
    assert len(objs) == 1 and class_of == [0] and len(reps) == 1


def test_reflection_of_two_named_objects():
    # collapse both objects of the discrete pair onto 0 in TWO
    p = FinFunctor(D2, TWO, (0, 0), (0, 0))
    fac, reps = discrete_reflection_cat(p)
    M = fac.m.src
    fibers = [sum(1 for x in fac.m.obj_map if x == t) for t in TWO.objects()]
    assert M.n_obj == 2 and fibers == [2, 0]

    # send them to distinct objects: fiber over 0 picks up the arrow class
    q = FinFunctor(D2, TWO, (0, 1), (0, 1))
    fac, reps = discrete_reflection_cat(q)
    fibers = [sum(1 for x in fac.m.obj_map if x == t) for t in TWO.objects()]
    assert fibers == [2, 1]
    assert is_discrete_fibration(fac.m) is not None and is_final_cat(fac.e)


def test_reflection_collapses_connected_input():
    fac, _ = discrete_reflection_cat(bang_functor(PARALLEL))
    assert fac.m.src.n_obj == 1
    fac, _ = discrete_reflection_cat(bang_functor(D2))
    assert fac.m.src.n_obj == 2


def test_reflection_reps_name_slice_arrows():
    inst = cat_instance()
    p = point_functor(TWO, 1)
    m = inst.factorize(p).m
    reps = inst.reflection_reps(p)
    # every class representative is a pair (dot, h) with h an arrow into 1
    for j, (b, h) in reps.items():
        assert b == 0
        assert TWO.dom[h] == m.obj_map[j] and TWO.cod[h] == 1
    assert sorted(h for _, h in reps.values()) == sorted(TWO.hom(0, 1) + TWO.hom(1, 1))


def test_presheaf_enumeration_count_over_two():
    inst = cat_instance()
    discs = inst.discrete_spaces_over(TWO, 3)
    # independent count: a choice of fiber sizes (s0, s1) and a function
    # from the fiber over 1 to the fiber over 0
    expected = sum(s0 ** s1 for s0 in range(4) for s1 in range(4))
    assert len(discs) == expected == 60
    assert len(set(discs)) == len(discs)
    for m in discs:
        assert is_discrete_fibration(m) is not None


def test_presheaf_enumeration_over_parallel():
    inst = cat_instance()
    discs = inst.discrete_spaces_over(PARALLEL, 2)
    # two independent functions from the fiber over 1 to the fiber over 0
    expected = sum((s0 ** s1) ** 2 for s0 in range(3) for s1 in range(3))
    assert len(discs) == expected
    for m in discs:
        assert is_discrete_fibration(m) is not None


def test_total_of_presheaf_shape():
    m, obj_index = total_of_presheaf(TWO, (2, 1), {2: (1,)})
    M = m.src
    assert M.n_obj == 3 and M.n_arr == 4
    lift = [a for a in M.nonidentity_arrows()]
    assert len(lift) == 1
    a = lift[0]
    assert M.dom[a] == obj_index[(0, 1)] and M.cod[a] == obj_index[(1, 0)]


def test_neighborhood_total_matches_comma():
    inst = cat_instance()
    for y in THREE.objects():
        nb = inst.factorize(point_functor(THREE, y)).m
        cm, _, _ = comma(identity_functor(THREE), point_functor(THREE, y))
        assert find_isomorphism(nb.src, cm) is not None


def test_pullback_of_neighborhood_is_comma_fiber():
    inst = cat_instance()
    nb = inst.factorize(point_functor(TWO, 1)).m
    pb = inst.pullback(point_functor(TWO, 0), nb)
    assert pb.space.n_obj == 1 and pb.space.n_arr == 1
    assert compose_functors(pb.to_left, point_functor(TWO, 0)) == \
        compose_functors(pb.to_right, nb)


def test_pullback_mediate_universal():
    inst = cat_instance()
    nb = inst.factorize(point_functor(TWO, 1)).m
    pb = inst.pullback(identity_functor(TWO), nb)
    # the square (m ; id, id_N) factors through the pullback
    u = pb.mediate(nb, identity_functor(nb.src))
    assert compose_functors(u, pb.to_left) == nb
    assert compose_functors(u, pb.to_right) == identity_functor(nb.src)


def test_pullback_mediate_rejects_noncommuting():
    inst = cat_instance()
    nb = inst.factorize(point_functor(TWO, 1)).m
    pb = inst.pullback(point_functor(TWO, 0), nb)
    with pytest.raises(TargetMismatch):
        pb.mediate(identity_functor(ONE), point_functor(nb.src, 1))


def test_product_projections_and_pairing():
    inst = cat_instance()
    pr = inst.product(TWO, THREE)
    assert pr.space.n_obj == 6 and pr.space.n_arr == 18
    u = pr.pair(point_functor(TWO, 1), point_functor(THREE, 2))
    assert compose_functors(u, pr.proj_left) == point_functor(TWO, 1)
    assert compose_functors(u, pr.proj_right) == point_functor(THREE, 2)


def test_functors_over_matches_brute_filter():
    inst = cat_instance()
    q = inst.factorize(point_functor(TWO, 1)).m
    for p in (identity_functor(TWO), point_functor(TWO, 0), bang_functor(D2)):
        if p.tgt != TWO:
            p = compose_functors(p, point_functor(TWO, 0))
        brute = [u for u in enumerate_functors(p.src, q.src)
                 if compose_functors(u, q) == p]
        assert functors_over(p, q) == brute


def test_functors_over_requires_common_target():
    with pytest.raises(TargetMismatch):
        functors_over(bang_functor(TWO), identity_functor(TWO))


def test_factorize_fixes_discrete_inputs():
    inst = cat_instance()
    fac = inst.factorize(point_functor(TWO, 0))
    assert fac.e == identity_functor(ONE) and fac.m == point_functor(TWO, 0)
    fac = inst.factorize(identity_functor(THREE))
    assert fac.e == fac.m == identity_functor(THREE)
