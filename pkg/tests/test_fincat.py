"""Composition-table categories: laws, comma categories, functor enumeration."""
from __future__ import annotations

from itertools import product as iproduct

import pytest

from emcat.errors import (
    DanglingIndex,
    LawViolation,
    MissingComposite,
    SizeBudgetExceeded,
    TargetMismatch,
)
from emcat.fincat import (
    D2,
    EMPTY,
    FOUR,
    ONE,
    PARALLEL,
    THREE,
    TWO,
    FinFunctor,
    check_fincat,
    comma,
    components,
    compose_functors,
    enumerate_functors,
    find_isomorphism,
    identity_functor,
    opposite,
    point_functor,
    raw_category,
    validate,
    validate_functor,
)


def brute_force_functor_count(A, B) -> int:
    """Independent oracle: filter every raw assignment pair through the laws."""
    count = 0
    for obj_map in iproduct(range(B.n_obj), repeat=A.n_obj):
        for arr_map in iproduct(range(B.n_arr), repeat=A.n_arr):
            ok = True
            for a in A.arrows():
                if B.dom[arr_map[a]] != obj_map[A.dom[a]] or B.cod[arr_map[a]] != obj_map[A.cod[a]]:
                    ok = False
                    break
            if ok:
                for x in A.objects():
                    if arr_map[A.ident[x]] != B.ident[obj_map[x]]:
                        ok = False
                        break
            if ok:
                for f, g in A.composable_pairs():
                    if B.comp[arr_map[f]][arr_map[g]] != arr_map[A.comp[f][g]]:
                        ok = False
                        break
            if ok:
                count += 1
    return count


def test_fixtures_satisfy_laws():
    for C in (EMPTY, ONE, TWO, THREE, FOUR, D2, PARALLEL):
        check_fincat(C)


def test_two_shape():
    assert TWO.n_obj == 2 and TWO.n_arr == 3
    assert TWO.dom[2] == 0 and TWO.cod[2] == 1
    assert TWO.comp[0][2] == 2 and TWO.comp[2][1] == 2


def test_three_composition():
    # arrows: 0,1,2 identities; 3: 0->1, 4: 0->2, 5: 1->2 (lexicographic)
    assert THREE.comp[3][5] == 4


def test_validate_accepts_two():
    raw = raw_category(["a", "b"], [("u", "a", "b")], {})
    C = validate(raw)
    assert C.n_obj == 2 and C.n_arr == 3
    assert C.arr_names == ("id_a", "id_b", "u")


def test_validate_missing_composite():
    raw = raw_category(["a", "b"], [("u", "a", "b")], {})
    del raw.compose[("id_a", "u")]
    with pytest.raises(MissingComposite):
        validate(raw)


def test_validate_law_violation_triple():
    # one object, endoarrows a and b with an associativity failure at (a, a, a)
    raw = raw_category(
        ["x"],
        [("a", "x", "x"), ("b", "x", "x")],
        {
            ("a", "a"): "b",
            ("a", "b"): "a",
            ("b", "a"): "b",
            ("b", "b"): "b",
        },
    )
    with pytest.raises(LawViolation) as exc:
        validate(raw)
    assert exc.value.law == "associativity"
    assert exc.value.witness == ("a", "a", "a")


def test_validate_dangling_name():
    raw = raw_category(["a"], [("u", "a", "zzz")], {})
    with pytest.raises(DanglingIndex):
        validate(raw)


def test_functor_counts_match_oracle_and_frozen_values():
    cases = [(ONE, TWO, 2), (TWO, TWO, 3), (THREE, TWO, 4)]
    for A, B, frozen in cases:
        fs = enumerate_functors(A, B)
        assert len(fs) == frozen
        assert len(set(fs)) == len(fs)
        assert brute_force_functor_count(A, B) == frozen
        for F in fs:
            validate_functor(F)


def test_enumerate_functors_empty_source():
    assert len(enumerate_functors(EMPTY, TWO)) == 1
    assert len(enumerate_functors(TWO, EMPTY)) == 0


def test_enumerate_functors_budget():
    with pytest.raises(SizeBudgetExceeded):
        enumerate_functors(FOUR, FOUR, budget=3)


def test_functor_composition_closure():
    for F in enumerate_functors(TWO, THREE):
        for G in enumerate_functors(THREE, TWO):
            H = compose_functors(F, G)
            validate_functor(H)
            assert H in enumerate_functors(TWO, TWO)


def test_comma_identity_slice_counts():
    # comma(id_TWO, point 1) is the slice TWO/1: objects id_1 and u, one
    # non-identity arrow between them
    C, pa, pb = comma(identity_functor(TWO), point_functor(TWO, 1))
    assert C.n_obj == 2
    assert C.n_arr - C.n_obj == 1
    check_fincat(C)
    validate_functor(pa)
    validate_functor(pb)


def test_comma_fiber_sizes_match_homs():
    # over each object x of the left factor, comma(id, y) has hom(x, y) objects
    for X in (TWO, THREE, PARALLEL):
        for y in X.objects():
            C, pa, _ = comma(identity_functor(X), point_functor(X, y))
            for x in X.objects():
                fiber = [o for o in C.objects() if pa.obj_map[o] == x]
                assert len(fiber) == len(X.hom(x, y))


def test_comma_target_mismatch():
    with pytest.raises(TargetMismatch):
        comma(identity_functor(TWO), identity_functor(THREE))


def test_components_counts():
    assert components(TWO)[0].size == 1
    assert components(D2)[0].size == 2
    assert components(EMPTY)[0].size == 0
    q, class_of = components(PARALLEL)
    assert q.size == 1 and class_of == (0, 0)


def test_components_respected_by_functors():
    # a functor cannot split a connected component
    for F in enumerate_functors(THREE, PARALLEL):
        qa, ca = components(THREE)
        qb, cb = components(PARALLEL)
        for a in THREE.nonidentity_arrows():
            x, y = THREE.dom[a], THREE.cod[a]
            assert cb[F.obj_map[x]] == cb[F.obj_map[y]]


def test_opposite_involutive_bit_exact():
    for C in (EMPTY, ONE, TWO, THREE, FOUR, D2, PARALLEL):
        assert opposite(opposite(C)) == C
        check_fincat(opposite(C))


def test_opposite_reverses_hom():
    assert opposite(TWO).hom(1, 0) == (2,)
    assert opposite(TWO).hom(0, 1) == ()


def test_find_isomorphism():
    assert find_isomorphism(TWO, TWO) is not None
    assert find_isomorphism(TWO, D2) is None
    # relabelled TWO: swap the roles of the two objects
    from emcat.fincat import fincat_from_parts

    swapped = fincat_from_parts(2, [(1, 0)], {})
    F = find_isomorphism(TWO, swapped)
    assert F is not None
    validate_functor(F)
    assert F.obj_map == (1, 0)


def test_validate_functor_rejects_bad_assignment():
    bad = FinFunctor(TWO, TWO, (0, 1), (0, 1, 0))
    with pytest.raises(LawViolation):
        validate_functor(bad)
