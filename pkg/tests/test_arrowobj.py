"""Generator claims, star categories, gluing couniversality, and the
comparison with adherence."""
import pytest

from emcat import arrowobj as AO
from emcat.comprehensive import cat_instance
from emcat.errors import PushoutUnavailable, ValidationError
from emcat.fincat import (
    D2,
    FOUR,
    ONE,
    PARALLEL,
    THREE,
    TWO,
    FinFunctor,
    bang_functor,
    find_isomorphism,
    point_functor,
)
from emcat.instances import (
    E1,
    POS_TWO,
    VEE,
    FinSetMap,
    FinSetObj,
    PosetMap,
    antichain,
    chain,
    finset_instance,
    gph_instance,
    pos_comprehensive_instance,
    pos_lowerset_instance,
)

CI = cat_instance()
PL = pos_lowerset_instance()
PC = pos_comprehensive_instance()
FS = finset_instance()

T_CAT = point_functor(TWO, 1)
T_POS = PosetMap(PL.terminal(), chain(2), (1,))
SET2 = FinSetObj(2, ("s", "t"))
T_FIN = FinSetMap(FS.terminal(), SET2, (1,))

CAT_SPACES = [ONE, TWO, D2, THREE, PARALLEL]
POS_SPACES = [PL.terminal(), chain(2), antichain(2), VEE]


# star categories

def test_x_star_round_trips_on_categories():
    for X in (ONE, TWO, D2, THREE, PARALLEL):
        st = AO.x_star(CI, X)
        assert st.cat.n_obj == X.n_obj and st.cat.n_arr == X.n_arr
        assert find_isomorphism(st.cat, X) is not None


def test_x_star_identities_are_constant_arrows():
    st = AO.x_star(CI, TWO)
    for i, x in enumerate(st.points):
        const = CI.compose(CI.bang(AO.arrow_object_data(CI).arrow), x)
        assert CI.map_eq(st.arrows[i], const)


def test_x_star_on_posets_is_the_order():
    from emcat.instances import pos_to_cat

    st = AO.x_star(PL, VEE)
    vee_cat, _ = pos_to_cat(VEE)
    assert find_isomorphism(st.cat, vee_cat) is not None


def test_x_star_on_sets_is_chaotic():
    st = AO.x_star(FS, SET2)
    assert st.cat.n_obj == 2 and st.cat.n_arr == 4


def test_x_star_refused_on_graphs():
    with pytest.raises(PushoutUnavailable):
        AO.x_star(gph_instance(), E1)


# generator claims

def test_cat_system_is_generated_by_the_walking_point():
    claim = AO.check_generator(CI, TWO, T_CAT, 3, CAT_SPACES)
    assert claim.holds and claim.maps_checked > 50


def test_pos_lowerset_system_is_not_generated():
    claim = AO.check_generator(PL, chain(2), T_POS, 3, POS_SPACES)
    assert not claim.holds
    ce = claim.counterexample
    assert ce is not None and ce["orthogonal"] and not ce["in_m"]


def test_pos_comprehensive_system_is_generated():
    claim = AO.check_generator(PC, chain(2), T_POS, 3, POS_SPACES)
    assert claim.holds


def test_finset_system_is_not_generated():
    claim = AO.check_generator(
        FS, SET2, T_FIN, 3,
        [FS.terminal(), SET2, FinSetObj(3, ("p", "q", "r"))])
    assert not claim.holds
    ce = claim.counterexample
    assert ce["in_m"] != ce["orthogonal"]


def test_generator_claim_serializes():
    claim = AO.check_generator(PL, chain(2), T_POS, 2, POS_SPACES)
    js = claim.to_json()
    assert js["holds"] is False and "map" in js["counterexample"]


def test_generator_counterexample_invariant():
    with pytest.raises(ValidationError):
        AO.GeneratorClaim("cat", T_CAT, 2, False, 1,
                          {"map": None, "in_m": True, "orthogonal": True})


# set characterization

def test_set_characterization_examples():
    assert AO.check_set_characterization(CI, TWO, T_CAT, D2)
    assert AO.check_set_characterization(CI, TWO, T_CAT, TWO)
    assert AO.check_set_characterization(CI, TWO, T_CAT, ONE)
    assert AO.check_set_characterization(CI, TWO, T_CAT, THREE)


def test_set_characterization_pos_comprehensive():
    for S in (PC.terminal(), antichain(2), chain(2), VEE):
        assert AO.check_set_characterization(PC, chain(2), T_POS, S)


def test_set_characterization_fails_where_point_does_not_generate():
    # the antichain is discrete in neither direction for the lower-set
    # system: its bang is not injective, yet every chain lands constantly
    assert not AO.check_set_characterization(PL, chain(2), T_POS, antichain(2))


# gluing couniversality

def test_gluing_counts():
    for X, pairs in ((ONE, 1), (TWO, 4), (THREE, 10)):
        rep = AO.lawvere_pushout_check(X)
        assert rep.holds
        assert rep.pair_counts == (pairs, pairs)
        assert rep.pair_counts[0] == rep.pair_counts[1]
        assert rep.triple_counts[0] == rep.triple_counts[1]


def test_gluing_triples_match_four():
    rep = AO.lawvere_pushout_check(TWO)
    assert rep.triple_counts == (5, 5)
    assert rep.gluing_cases == 4


def test_gluing_leg_facts():
    assert AO.gluing_leg_facts(CI) == {"leg_second_final": True,
                                       "glued_target_final": True}
    assert AO.gluing_leg_facts(PL) == {"leg_second_final": True,
                                       "glued_target_final": True}


# star discreteness

def test_star_discreteness_examples():
    m1 = CI.factorize(point_functor(TWO, 1)).m
    assert AO.star_discreteness_check(CI, m1)
    assert AO.star_discreteness_check(CI, T_CAT)
    assert AO.star_discreteness_check(CI, CI.identity(TWO))


def test_star_discreteness_pos_comprehensive():
    incl = PosetMap(antichain(2), VEE, (0, 1))
    assert AO.star_discreteness_check(PC, incl)
    assert AO.star_discreteness_check(PC, PC.points(VEE)[2])


# canonical functor and naturality

def test_canonical_functor_is_iso_on_categories():
    for X in (ONE, TWO, THREE, D2, PARALLEL):
        F = AO.canonical_functor(CI, X)
        assert sorted(F.obj_map) == list(range(F.tgt.n_obj))
        assert sorted(F.arr_map) == list(range(F.tgt.n_arr))


def test_canonical_functor_on_posets():
    F = AO.canonical_functor(PL, VEE)
    assert sorted(F.obj_map) == list(range(F.tgt.n_obj))
    assert sorted(F.arr_map) == list(range(F.tgt.n_arr))


def test_naturality_examples():
    assert AO.naturality_check(CI, T_CAT)
    assert AO.naturality_check(CI, bang_functor(TWO))
    assert AO.naturality_check(CI, FinFunctor(TWO, THREE, (0, 2), (0, 2, 4)))
    assert AO.naturality_check(PL, PosetMap(POS_TWO, VEE, (0, 2)))


# lifting lemma and arrow convergence

def test_composite_lifting_examples():
    m1 = CI.factorize(point_functor(TWO, 1)).m
    assert AO.composite_lifting_check(CI, TWO, m1)
    m3 = CI.factorize(point_functor(THREE, 2)).m
    assert AO.composite_lifting_check(CI, THREE, m3)


def test_every_arrow_converges_to_its_target():
    st = AO.x_star(CI, THREE)
    assert all(AO.arrow_colimit_check(CI, l) for l in st.arrows)
    stp = AO.x_star(PL, VEE)
    assert all(AO.arrow_colimit_check(PL, l) for l in stp.arrows)
