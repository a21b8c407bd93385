"""Generators of the right class by a pointed object, the category of
points and arrows of a space, and its comparison with the adherence
category.

The ambient instances that possess an arrow object (a space whose maps
into X are the "arrows" of X) also possess the object gluing two arrows
end to end; composition in the resulting category is induced by that
gluing.  Reflexive graphs have the gluing but lack its long edge, so the
construction is refused there.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from .budget import Budget, as_budget
from .comprehensive import cat_instance, is_discrete_fibration
from .emcore import EmInstance, check_orthogonal, in_E
from .errors import LawViolation, PushoutUnavailable, ValidationError
from .fincat import (
    FOUR,
    THREE,
    TWO,
    FinCat,
    FinFunctor,
    check_fincat,
    fincat_from_parts,
    point_functor,
    validate_functor,
)
from .theory import AdherenceCat, _maps_over, adherence, neighborhood, point_image_iso


@dataclass(frozen=True)
class ArrowObjectData:
    """The walking arrow of an instance with the object gluing two arrows.

    ``leg_first``/``leg_second`` embed the two arrows into the gluing;
    ``leg_long`` picks out the composite side.  ``src_pt``/``tgt_pt`` are
    the endpoints of the walking arrow.
    """

    arrow: Any
    glue: Any
    src_pt: Any
    tgt_pt: Any
    leg_first: Any
    leg_second: Any
    leg_long: Any


def arrow_object_data(inst: EmInstance) -> ArrowObjectData:
    if inst.name == "cat":
        return ArrowObjectData(
            TWO, THREE,
            point_functor(TWO, 0), point_functor(TWO, 1),
            FinFunctor(TWO, THREE, (0, 1), (0, 1, 3)),
            FinFunctor(TWO, THREE, (1, 2), (1, 2, 5)),
            FinFunctor(TWO, THREE, (0, 2), (0, 2, 4)))
    if inst.name in ("pos", "pos-comp"):
        from .instances.posets import PosetMap, chain

        A, P = chain(2), chain(3)
        one = inst.terminal()
        return ArrowObjectData(
            A, P,
            PosetMap(one, A, (0,)), PosetMap(one, A, (1,)),
            PosetMap(A, P, (0, 1)), PosetMap(A, P, (1, 2)),
            PosetMap(A, P, (0, 2)))
    if inst.name == "finset":
        from .instances.finsets import FinSetMap, FinSetObj

        A = FinSetObj(2, ("s", "t"))
        P = FinSetObj(3, ("s", "mid", "t"))
        one = inst.terminal()
        return ArrowObjectData(
            A, P,
            FinSetMap(one, A, (0,)), FinSetMap(one, A, (1,)),
            FinSetMap(A, P, (0, 1)), FinSetMap(A, P, (1, 2)),
            FinSetMap(A, P, (0, 2)))
    raise PushoutUnavailable(
        f"instance {inst.name!r}: gluing two arrows yields no composite arrow")


# generators

@dataclass(frozen=True)
class GeneratorClaim:
    """Outcome of testing whether M is the orthogonal complement of a point."""

    instance: str
    t: Any
    bound: int
    holds: bool
    maps_checked: int
    counterexample: Optional[dict] = None

    def __post_init__(self):
        if self.counterexample is not None:
            if self.counterexample["in_m"] == self.counterexample["orthogonal"]:
                raise ValidationError(
                    "generator counterexample must separate the two classes")

    def to_json(self) -> dict:
        out = {"instance": self.instance, "bound": self.bound,
               "holds": self.holds, "maps_checked": self.maps_checked}
        if self.counterexample is not None:
            out["counterexample"] = {k: v for k, v in self.counterexample.items()
                                     if k != "map"}
            out["counterexample"]["map"] = repr(self.counterexample["map"])
        return out


def check_generator(inst: EmInstance, T: Any, t: Any, bound: int,
                    spaces: Any = None,
                    budget: "int | Budget | None" = None) -> GeneratorClaim:
    """Test in_M(m) == t-orthogonality of m for every map between the given
    spaces with at most `bound` points each.

    The spaces swept must be supplied; instances do not enumerate their own
    objects.
    """
    bud = as_budget(budget, "generator sweep")
    if not inst.space_eq(inst.cod(t), T):
        raise ValidationError("the generating point must land in the given object")
    if spaces is None:
        raise ValidationError("check_generator needs a list of spaces to sweep")
    pool = [X for X in spaces if len(inst.points(X)) <= bound]
    checked = 0
    for A in pool:
        for B in pool:
            for m in inst.maps(A, B, bud):
                checked += 1
                bud.tick()
                lhs = inst.in_M(m)
                rhs = check_orthogonal(inst, t, m, bud).holds
                if lhs != rhs:
                    return GeneratorClaim(
                        inst.name, t, bound, False, checked,
                        {"map": m, "in_m": lhs, "orthogonal": rhs})
    return GeneratorClaim(inst.name, t, bound, True, checked)


def check_set_characterization(inst: EmInstance, T: Any, t: Any, S: Any,
                               budget: "int | Budget | None" = None) -> bool:
    """The object S is discrete over the terminal exactly when every map
    out of the walking arrow's carrier T into S is constant."""
    bud = as_budget(budget, "set characterization")
    lhs = inst.in_M(inst.bang(S))
    pts = inst.points(S)
    bang_t = inst.bang(T)
    rhs = all(
        any(inst.map_eq(f, inst.compose(bang_t, s)) for s in pts)
        for f in inst.maps(T, S, bud))
    return lhs == rhs


# the category of points and arrows

@dataclass(frozen=True)
class StarCategory:
    """Points of a space as objects, maps out of the walking arrow as
    arrows.  ``arrows[k]`` is the instance map behind arrow k; identities
    are the constant arrows."""

    cat: FinCat
    points: tuple
    arrows: tuple
    space: Any

    def arrow_map(self, k: int) -> Any:
        return self.arrows[k]


def x_star(inst: EmInstance, X: Any,
           budget: "int | Budget | None" = None) -> StarCategory:
    """Assemble the category of points and arrows of X, composing through
    the arrow gluing.

    The gluing's couniversal property is exercised on every composable
    pair: exactly one map out of the gluing restricts to the two arrows.
    """
    data = arrow_object_data(inst)
    bud = as_budget(budget, "star category")
    pts = inst.points(X)
    n = len(pts)
    all_arrows = inst.maps(data.arrow, X, bud)
    const = [inst.compose(inst.bang(data.arrow), x) for x in pts]
    rest = [l for l in all_arrows
            if not any(inst.map_eq(l, c) for c in const)]
    arrs = const + rest

    def point_index(p: Any) -> int:
        for i, q in enumerate(pts):
            if inst.map_eq(p, q):
                return i
        raise LawViolation("star", repr(p), "endpoint is not a point of the space")

    ends = [(point_index(inst.compose(data.src_pt, l)),
             point_index(inst.compose(data.tgt_pt, l))) for l in arrs]
    glue_maps = inst.maps(data.glue, X, bud)

    def composite(a: int, b: int) -> int:
        hits = [u for u in glue_maps
                if inst.map_eq(inst.compose(data.leg_first, u), arrs[a])
                and inst.map_eq(inst.compose(data.leg_second, u), arrs[b])]
        if len(hits) != 1:
            raise LawViolation("arrow-gluing", (a, b),
                               f"expected one glued map, found {len(hits)}")
        comp = inst.compose(data.leg_long, hits[0])
        for k, l in enumerate(arrs):
            if inst.map_eq(l, comp):
                return k
        raise LawViolation("arrow-gluing", (a, b),
                           "composite arrow escaped the enumeration")

    comp_entries = {}
    for a in range(n, len(arrs)):
        for b in range(n, len(arrs)):
            if ends[a][1] != ends[b][0]:
                continue
            bud.tick()
            comp_entries[(a, b)] = composite(a, b)
    cat = fincat_from_parts(n, ends[n:], comp_entries)
    check_fincat(cat)
    return StarCategory(cat, tuple(pts), tuple(arrs), X)


def star_map(inst: EmInstance, f: Any, star_src: StarCategory,
             star_tgt: StarCategory) -> FinFunctor:
    """Post-composition with f as a functor between star categories."""

    def obj_of(p: Any) -> int:
        for i, q in enumerate(star_tgt.points):
            if inst.map_eq(p, q):
                return i
        raise LawViolation("star", repr(p), "image point missing")

    def arr_of(l: Any) -> int:
        for k, m in enumerate(star_tgt.arrows):
            if inst.map_eq(l, m):
                return k
        raise LawViolation("star", repr(l), "image arrow missing")

    F = FinFunctor(
        star_src.cat, star_tgt.cat,
        tuple(obj_of(inst.compose(x, f)) for x in star_src.points),
        tuple(arr_of(inst.compose(l, f)) for l in star_src.arrows))
    validate_functor(F)
    return F


def star_discreteness_check(inst: EmInstance, m: Any,
                            budget: "int | Budget | None" = None) -> bool:
    """Right-class membership matches unique lifting of star arrows: m is
    in M exactly when the star of m is a discrete fibration."""
    sa = x_star(inst, inst.dom(m), budget)
    sb = x_star(inst, inst.cod(m), budget)
    sm = star_map(inst, m, sa, sb)
    return inst.in_M(m) == (is_discrete_fibration(sm) is not None)


# comparison with the adherence category

def arrow_lift(inst: EmInstance, m: Any, l: Any, b: Any, tgt_pt: Any,
               budget: "int | Budget | None" = None) -> Any:
    """The unique lift of the arrow l into the discrete space m ending at
    the point b over its target (orthogonality of the final endpoint
    against M)."""
    bud = as_budget(budget, "arrow lift")
    hits = [w for w in _maps_over(inst, l, m, bud)
            if inst.map_eq(inst.compose(tgt_pt, w), b)]
    if len(hits) != 1:
        raise LawViolation("arrow-lift", repr(b),
                           f"expected one lift, found {len(hits)}")
    return hits[0]


def canonical_functor(inst: EmInstance, X: Any,
                      star: Optional[StarCategory] = None,
                      ad: Optional[AdherenceCat] = None,
                      budget: "int | Budget | None" = None) -> FinFunctor:
    """The comparison functor from the star category to the adherence
    category: an arrow goes to the displacement whose defining point is the
    source of the arrow's lift into the target's neighborhood."""
    bud = as_budget(budget, "canonical functor")
    data = arrow_object_data(inst)
    if star is None:
        star = x_star(inst, X, bud)
    if ad is None:
        ad = adherence(inst, X, bud)

    def ad_obj(p: Any) -> int:
        for i, q in enumerate(ad.points):
            if inst.map_eq(p, q):
                return i
        raise LawViolation("canonical", repr(p), "point missing from adherence")

    obj_map = tuple(ad_obj(p) for p in star.points)
    nbs = [neighborhood(inst, X, p) for p in ad.points]
    arr_map = []
    for k, l in enumerate(star.arrows):
        i = obj_map[star.cat.dom[k]]
        j = obj_map[star.cat.cod[k]]
        lam = arrow_lift(inst, nbs[j].m, l, nbs[j].final_point, data.tgt_pt, bud)
        spt = inst.compose(data.src_pt, lam)
        found = None
        for a in ad.cat.hom(i, j):
            if inst.map_eq(inst.compose(nbs[i].final_point, ad.displacement(a)),
                           spt):
                found = a
                break
        if found is None:
            raise LawViolation("canonical", k, "no displacement extends the lift")
        arr_map.append(found)
    F = FinFunctor(star.cat, ad.cat, obj_map, tuple(arr_map))
    validate_functor(F)
    return F


def adherence_functor(inst: EmInstance, f: Any,
                      ad_src: AdherenceCat, ad_tgt: AdherenceCat,
                      budget: "int | Budget | None" = None) -> FinFunctor:
    """Transport of points and displacements along f, using the canonical
    comparison of each neighborhood with its image."""
    bud = as_budget(budget, "adherence transport")
    X, Y = inst.dom(f), inst.cod(f)

    def tgt_obj(p: Any) -> int:
        for i, q in enumerate(ad_tgt.points):
            if inst.map_eq(p, q):
                return i
        raise LawViolation("adherence transport", repr(p), "image point missing")

    obj_map = tuple(tgt_obj(inst.compose(x, f)) for x in ad_src.points)
    nbs_src = [neighborhood(inst, X, p) for p in ad_src.points]
    nbs_tgt = [neighborhood(inst, Y, p) for p in ad_tgt.points]
    transports = [point_image_iso(inst, f, p, bud)[0] for p in ad_src.points]
    arr_map = []
    for a in range(ad_src.cat.n_arr):
        i, j = ad_src.cat.dom[a], ad_src.cat.cod[a]
        spt = inst.compose(inst.compose(nbs_src[i].final_point,
                                        ad_src.displacement(a)),
                           transports[j])
        found = None
        for b in ad_tgt.cat.hom(obj_map[i], obj_map[j]):
            if inst.map_eq(
                    inst.compose(nbs_tgt[obj_map[i]].final_point,
                                 ad_tgt.displacement(b)), spt):
                found = b
                break
        if found is None:
            raise LawViolation("adherence transport", a,
                               "no displacement matches the transported point")
        arr_map.append(found)
    F = FinFunctor(ad_src.cat, ad_tgt.cat, obj_map, tuple(arr_map))
    validate_functor(F)
    return F


def naturality_check(inst: EmInstance, f: Any,
                     budget: "int | Budget | None" = None) -> bool:
    """The canonical functors commute with transport along f on both the
    star and the adherence side."""
    from .fincat import compose_functors

    bud = as_budget(budget, "naturality square")
    X, Y = inst.dom(f), inst.cod(f)
    star_x, star_y = x_star(inst, X, bud), x_star(inst, Y, bud)
    ad_x, ad_y = adherence(inst, X, bud), adherence(inst, Y, bud)
    phi_x = canonical_functor(inst, X, star_x, ad_x, bud)
    phi_y = canonical_functor(inst, Y, star_y, ad_y, bud)
    f_star = star_map(inst, f, star_x, star_y)
    f_bar = adherence_functor(inst, f, ad_x, ad_y, bud)
    return compose_functors(f_star, phi_y) == compose_functors(phi_x, f_bar)


def composite_lifting_check(inst: EmInstance, X: Any, m: Any,
                            budget: "int | Budget | None" = None) -> bool:
    """Lifting a composed arrow agrees with composing the lifts: the source
    of the lift of a composite equals the source obtained by lifting in two
    steps."""
    bud = as_budget(budget, "composite lifting")
    data = arrow_object_data(inst)
    star = x_star(inst, X, bud)
    cat = star.cat
    for a in cat.arrows():
        for b in cat.arrows():
            if cat.cod[a] != cat.dom[b]:
                continue
            ab = cat.comp[a][b]
            for q in _maps_over(inst, star.points[cat.cod[b]], m, bud):
                bud.tick()
                lift_b = arrow_lift(inst, m, star.arrows[b], q, data.tgt_pt, bud)
                mid = inst.compose(data.src_pt, lift_b)
                lift_a = arrow_lift(inst, m, star.arrows[a], mid, data.tgt_pt, bud)
                lift_ab = arrow_lift(inst, m, star.arrows[ab], q, data.tgt_pt, bud)
                if not inst.map_eq(inst.compose(data.src_pt, lift_a),
                                   inst.compose(data.src_pt, lift_ab)):
                    return False
    return True


def arrow_colimit_check(inst: EmInstance, l: Any,
                        budget: "int | Budget | None" = None) -> bool:
    """Every arrow converges to its target: the target point is an absolute
    colimit of the arrow, with the lift into its neighborhood as the cone."""
    from .theory import Cone, is_absolute_colimit, is_colimiting_cone

    bud = as_budget(budget, "arrow convergence")
    data = arrow_object_data(inst)
    y = inst.compose(data.tgt_pt, l)
    nb = neighborhood(inst, inst.cod(l), y)
    if not is_absolute_colimit(inst, l, y, bud):
        return False
    lam = arrow_lift(inst, nb.m, l, nb.final_point, data.tgt_pt, bud)
    return is_colimiting_cone(inst, Cone(l, y, lam), bud)


# the couniversal property of the gluing, category instance

@dataclass(frozen=True)
class GluingReport:
    """Counts witnessing that maps out of the gluings match composable
    pairs and triples of the star category."""

    holds: bool
    pair_counts: tuple[int, int]
    triple_counts: tuple[int, int]
    gluing_cases: int
    counterexample: Optional[dict] = None

    def to_json(self) -> dict:
        return {"holds": self.holds,
                "pair_counts": list(self.pair_counts),
                "triple_counts": list(self.triple_counts),
                "gluing_cases": self.gluing_cases,
                "counterexample": self.counterexample}


def lawvere_pushout_check(X: FinCat,
                          budget: "int | Budget | None" = None) -> GluingReport:
    """For a category X: maps out of the two-arrow gluing match composable
    pairs, maps out of the three-arrow gluing match composable triples, and
    each agreeing pair of arrows extends to exactly one map of the gluing."""
    inst = cat_instance()
    bud = as_budget(budget, "gluing couniversality")
    data = arrow_object_data(inst)
    star = x_star(inst, X, bud)
    cat = star.cat
    pairs = [(a, b) for a in cat.arrows() for b in cat.arrows()
             if cat.cod[a] == cat.dom[b]]
    triples = [(a, b, c) for (a, b) in pairs for c in cat.arrows()
               if cat.cod[b] == cat.dom[c]]
    maps3 = inst.maps(THREE, X, bud)
    maps4 = inst.maps(FOUR, X, bud)
    counts2 = (len(maps3), len(pairs))
    counts3 = (len(maps4), len(triples))
    if counts2[0] != counts2[1] or counts3[0] != counts3[1]:
        return GluingReport(False, counts2, counts3, 0,
                            {"reason": "count mismatch"})
    cases = 0
    for a, b in pairs:
        cases += 1
        bud.tick()
        hits = [u for u in maps3
                if inst.map_eq(inst.compose(data.leg_first, u), star.arrows[a])
                and inst.map_eq(inst.compose(data.leg_second, u), star.arrows[b])]
        if len(hits) != 1:
            return GluingReport(False, counts2, counts3, cases,
                                {"reason": "agreeing pair without a unique gluing",
                                 "pair": (a, b), "found": len(hits)})
    return GluingReport(True, counts2, counts3, cases)


def gluing_leg_facts(inst: EmInstance) -> dict:
    """The second leg of the gluing is final, and its target endpoint is a
    final point of the gluing."""
    data = arrow_object_data(inst)
    return {
        "leg_second_final": in_E(inst, data.leg_second),
        "glued_target_final": in_E(inst, inst.compose(data.tgt_pt,
                                                      data.leg_second)),
    }
