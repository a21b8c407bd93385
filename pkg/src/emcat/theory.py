"""Neighborhoods, adherence, cones, colimits, adjunctions, density,
power objects, and the duality formulas, generically over any instance.

Everything here speaks only the EmInstance vocabulary (factorize, maps
over a base, pullback, points), so each operation applies uniformly to
categories, posets, graphs, and sets.  Colimits are reflections in the
adherence category, certified by enumerating every competing cone.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .budget import Budget, as_budget
from .emcore import (
    EmInstance,
    Factorization,
    UniversalityReport,
    direct_image,
    in_E,
    iso_over_base,
    reflect_map,
)
from .errors import LawViolation, UnsupportedOperation, ValidationError
from .fincat import FinCat, fincat_from_parts


# small memo for maps-over-base enumerations; instances are singletons
_MO: dict = {}


def _maps_over(inst: EmInstance, p: Any, q: Any, bud: Budget) -> list:
    key = (inst.name, p, q)
    if key not in _MO:
        _MO[key] = inst.maps_over(p, q, bud)
    return _MO[key]


@dataclass(frozen=True)
class DiscreteSpace:
    """An M-map into its base, the instance's notion of a discrete family."""

    base: Any
    m: Any


def discrete_space(inst: EmInstance, m: Any) -> DiscreteSpace:
    if not inst.in_M(m):
        raise ValidationError("discrete space: the given map is not in M")
    return DiscreteSpace(inst.cod(m), m)


@dataclass(frozen=True)
class Neighborhood:
    """The discrete reflection of a point, with its final point.

    ``final_point ; space.m == base_point`` and the final point lies in
    the left class.
    """

    space: DiscreteSpace
    final_point: Any
    base_point: Any

    @property
    def m(self) -> Any:
        return self.space.m


def neighborhood(inst: EmInstance, X: Any, x: Any) -> Neighborhood:
    """The reflection of the point x packaged with its final point."""
    if not inst.space_eq(inst.cod(x), X):
        raise ValidationError("neighborhood: point does not live in the given space")
    fac = inst.factorize(x)
    return Neighborhood(DiscreteSpace(X, fac.m), fac.e, x)


@dataclass(frozen=True)
class Cone:
    """A cone on base p with a point as vertex: a map from the domain of p
    to the neighborhood total of the vertex, over the common base space."""

    base_map: Any
    vertex: Any
    leg: Any


def cones(inst: EmInstance, p: Any, y: Any,
          budget: "int | Budget | None" = None) -> list[Cone]:
    """All cones on base p with vertex y."""
    bud = as_budget(budget, "cone enumeration")
    nb = neighborhood(inst, inst.cod(p), y)
    return [Cone(p, y, leg) for leg in _maps_over(inst, p, nb.m, bud)]


def kernel_cone(inst: EmInstance, c: Cone,
                budget: "int | Budget | None" = None) -> Cone:
    """The unique cone on the discrete reflection of the base through which
    c factors."""
    bud = as_budget(budget, "kernel cone")
    fac = inst.factorize(c.base_map)
    nb = neighborhood(inst, inst.cod(c.base_map), c.vertex)
    hits = [w for w in _maps_over(inst, fac.m, nb.m, bud)
            if inst.map_eq(inst.compose(fac.e, w), c.leg)]
    if len(hits) != 1:
        raise LawViolation("reflection", repr(c.vertex),
                           f"expected a unique kernel leg, found {len(hits)}")
    return Cone(fac.m, c.vertex, hits[0])


def is_colimiting_cone(inst: EmInstance, c: Cone,
                       budget: "int | Budget | None" = None) -> bool:
    """Universality among all cones on the same base: every competing cone
    factors through exactly one displacement out of the vertex."""
    bud = as_budget(budget, "cone universality")
    X = inst.cod(c.base_map)
    nb_v = neighborhood(inst, X, c.vertex)
    for y in inst.points(X):
        nb_y = neighborhood(inst, X, y)
        disps = _maps_over(inst, nb_v.m, nb_y.m, bud)
        for d in _maps_over(inst, c.base_map, nb_y.m, bud):
            bud.tick()
            hits = sum(1 for w in disps
                       if inst.map_eq(inst.compose(c.leg, w), d))
            if hits != 1:
                return False
    return True


def map_json(m: Any) -> dict:
    """Duck-typed JSON payload for any instance's map: the index arrays."""
    out = {}
    for attr in ("obj_map", "arr_map", "node_map", "edge_map", "values"):
        if hasattr(m, attr):
            out[attr] = list(getattr(m, attr))
    return out


@dataclass(frozen=True)
class ColimitResult:
    """A universal cone, the lowest-indexed vertex when several points tie.

    ``iso_class_size`` counts the points admitting a universal cone; they
    are pairwise isomorphic by uniqueness of reflections.
    """

    vertex: Any
    vertex_index: int
    cone: Cone
    kernel: Cone
    iso_class_size: int

    def to_json(self) -> dict:
        return {"vertex_index": self.vertex_index,
                "iso_class_size": self.iso_class_size,
                "cone_leg": map_json(self.cone.leg),
                "kernel_leg": map_json(self.kernel.leg)}


def colimit(inst: EmInstance, p: Any,
            budget: "int | Budget | None" = None) -> Optional[ColimitResult]:
    """The reflection of p among the points of its target, if it exists.

    Works on the discrete reflection of p (cones on p and on its
    reflection correspond bijectively) and certifies universality against
    every enumerated competing cone at every point.
    """
    bud = as_budget(budget, "colimit search")
    X = inst.cod(p)
    fac = inst.factorize(p)
    pts = inst.points(X)
    nbs = [neighborhood(inst, X, x) for x in pts]
    legs = [_maps_over(inst, fac.m, nb.m, bud) for nb in nbs]
    universal: list[tuple[int, Any]] = []
    for i, cand in enumerate(legs):
        for leg in cand:
            ok = True
            for j, competing in enumerate(legs):
                disps = _maps_over(inst, nbs[i].m, nbs[j].m, bud)
                for d in competing:
                    bud.tick()
                    hits = sum(1 for w in disps
                               if inst.map_eq(inst.compose(leg, w), d))
                    if hits != 1:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                universal.append((i, leg))
                break
    if not universal:
        return None
    i, kleg = universal[0]
    kernel = Cone(fac.m, pts[i], kleg)
    cone = Cone(p, pts[i], inst.compose(fac.e, kleg))
    return ColimitResult(pts[i], i, cone, kernel, len(universal))


def is_absolute_colimit(inst: EmInstance, p: Any, x: Any,
                        budget: "int | Budget | None" = None) -> bool:
    """Absolute case: the reflection of p is the neighborhood of x itself."""
    bud = as_budget(budget, "absolute colimit")
    nb = neighborhood(inst, inst.cod(p), x)
    return iso_over_base(inst, inst.factorize(p).m, nb.m, bud) is not None


# transport along a map of bases

def point_image_iso(inst: EmInstance, f: Any, x: Any,
                    budget: "int | Budget | None" = None) -> tuple[Any, Any]:
    """The canonical comparison for the image of a neighborhood.

    Returns (t, w) where w: total(nu(fx)) -> total(image of nu(x) under f)
    is the unique map over the target matching final points (invertible,
    since images of neighborhoods are neighborhoods), and t: total(nu(x))
    -> total(nu(fx)) is the induced displacement over f.
    """
    bud = as_budget(budget, "neighborhood image")
    fx = inst.compose(x, f)
    nu_x = inst.factorize(x)
    nu_fx = inst.factorize(fx)
    img = inst.factorize(inst.compose(nu_x.m, f))
    q = inst.compose(nu_x.e, img.e)
    hits = [u for u in _maps_over(inst, nu_fx.m, img.m, bud)
            if inst.map_eq(inst.compose(nu_fx.e, u), q)]
    if len(hits) != 1:
        raise LawViolation("neighborhood-image", repr(x),
                           f"expected a unique comparison, found {len(hits)}")
    w = hits[0]
    if not inst.is_invertible(w):
        raise LawViolation("neighborhood-image", repr(x),
                           "comparison with the image is not invertible")
    t = inst.compose(img.e, inst.inverse(w))
    return t, w


def image_cone(inst: EmInstance, f: Any, c: Cone,
               budget: "int | Budget | None" = None) -> Cone:
    """Push a cone with discrete base forward along f: the base becomes the
    direct image, the vertex its f-image, and the leg the unique factoring
    through the image of the vertex neighborhood."""
    bud = as_budget(budget, "image cone")
    if not inst.in_M(c.base_map):
        raise ValidationError("image cone: base must be discrete")
    nb_y = neighborhood(inst, inst.cod(c.base_map), c.vertex)
    data = inst.factorize(inst.compose(c.base_map, f))
    w2 = reflect_map(inst, f, c.leg, c.base_map, nb_y.m)
    _t, w1 = point_image_iso(inst, f, c.vertex, bud)
    leg = inst.compose(w2, inst.inverse(w1))
    return Cone(data.m, inst.compose(c.vertex, f), leg)


def preserves_colimit(inst: EmInstance, f: Any, c: Cone,
                      budget: "int | Budget | None" = None) -> bool:
    """Whether the image of a colimiting cone with discrete base is again
    colimiting."""
    return is_colimiting_cone(inst, image_cone(inst, f, c, budget), budget)


def is_colimit_preserving(inst: EmInstance, f: Any, size_bound: int = 2,
                          budget: "int | Budget | None" = None) -> UniversalityReport:
    """Check colimit preservation on every discrete base over the source
    whose colimit exists."""
    bud = as_budget(budget, "colimit preservation sweep")
    X = inst.dom(f)
    cases = 0
    for m in inst.discrete_spaces_over(X, size_bound, bud):
        col = colimit(inst, m, bud)
        if col is None:
            continue
        cases += 1
        if not preserves_colimit(inst, f, col.kernel, bud):
            return UniversalityReport(False, cases, {"base": repr(m)})
    return UniversalityReport(True, cases)


# the adherence category

@dataclass(frozen=True)
class AdherenceCat:
    """Points as objects, displacements (maps between neighborhood totals
    over the base) as arrows, packaged as an explicit finite category."""

    cat: FinCat
    points: tuple
    displacements: tuple
    space: Any = field(compare=False)

    def displacement(self, arrow: int) -> Any:
        return self.displacements[arrow]


def adherence(inst: EmInstance, X: Any,
              budget: "int | Budget | None" = None) -> AdherenceCat:
    """Assemble the adherence category of X.

    The extension property behind the construction is verified on the way:
    displacements out of x correspond one-to-one to points of the target
    neighborhood over x, via composition with the final point.
    """
    bud = as_budget(budget, "adherence assembly")
    pts = inst.points(X)
    nbs = [neighborhood(inst, X, x) for x in pts]
    n = len(pts)
    homs: dict[tuple[int, int], list] = {}
    for i in range(n):
        for j in range(n):
            us = _maps_over(inst, nbs[i].m, nbs[j].m, bud)
            over_pts = _maps_over(inst, pts[i], nbs[j].m, bud)
            extended = [inst.compose(nbs[i].final_point, u) for u in us]
            if len(us) != len(over_pts) or len({repr(e) for e in extended}) != len(us):
                raise LawViolation(
                    "displacement-extension", (i, j),
                    "displacements do not correspond to points over the source")
            homs[(i, j)] = us
    displacements = [inst.identity(inst.dom(nbs[i].m)) for i in range(n)]
    arrows = []
    for i in range(n):
        for j in range(n):
            for u in homs[(i, j)]:
                if i == j and inst.map_eq(u, displacements[i]):
                    continue
                displacements.append(u)
                arrows.append((i, j))
    def find(i: int, j: int, u: Any) -> int:
        for k, v in enumerate(displacements):
            src_tgt = (k, k) if k < n else arrows[k - n]
            if src_tgt == (i, j) and inst.map_eq(v, u):
                return k
        raise LawViolation("displacement-composition", (i, j),
                           "composite displacement not among the enumerated ones")

    comp_entries = {}
    for a in range(n, n + len(arrows)):
        ia, ja = arrows[a - n]
        for b in range(n, n + len(arrows)):
            ib, jb = arrows[b - n]
            if ja != ib:
                continue
            comp_entries[(a, b)] = find(ia, jb, inst.compose(displacements[a],
                                                             displacements[b]))
    cat = fincat_from_parts(n, arrows, comp_entries)
    return AdherenceCat(cat, tuple(pts), tuple(displacements), X)


# adjunctions, density, full-faithfulness

def universal_displacement(inst: EmInstance, f: Any, y: Any,
                           budget: "int | Budget | None" = None) -> Optional[tuple[Any, Any]]:
    """A final point of the pulled-back neighborhood of y, if any, with the
    induced displacement from its neighborhood to nu(y) over f."""
    bud = as_budget(budget, "universal displacement")
    nb_y = neighborhood(inst, inst.cod(f), y)
    pb = inst.pullback(f, nb_y.m)
    for t in inst.points(pb.space):
        if not in_E(inst, t):
            continue
        x = inst.compose(t, pb.to_left)
        nu_x = inst.factorize(x)
        hits = [u for u in _maps_over(inst, nu_x.m, pb.to_left, bud)
                if inst.map_eq(inst.compose(nu_x.e, u), t)]
        if len(hits) != 1:
            raise LawViolation("universal-displacement", repr(y),
                               f"expected a unique extension, found {len(hits)}")
        return x, inst.compose(hits[0], pb.to_right)
    return None


def is_adjunctible(inst: EmInstance, f: Any,
                   budget: "int | Budget | None" = None) -> Optional[dict]:
    """Universal displacements at every point of the target, or None."""
    out = {}
    for k, y in enumerate(inst.points(inst.cod(f))):
        found = universal_displacement(inst, f, y, budget)
        if found is None:
            return None
        out[k] = found
    return out


def delta_adjunction_check(inst: EmInstance, f: Any, g: Any,
                           size_bound: int = 2,
                           budget: "int | Budget | None" = None) -> bool:
    """Base change along f left adjoint to base change along g: hom-set
    sizes match on all bounded discrete spaces over both ends."""
    bud = as_budget(budget, "base-change adjunction")
    X, Y = inst.dom(f), inst.cod(f)
    if not (inst.space_eq(inst.dom(g), Y) and inst.space_eq(inst.cod(g), X)):
        return False
    over_y = inst.discrete_spaces_over(Y, size_bound, bud)
    over_x = inst.discrete_spaces_over(X, size_bound, bud)
    for m in over_y:
        delta_f_m = inst.pullback(f, m).to_left
        for n in over_x:
            delta_g_n = inst.pullback(g, n).to_left
            bud.tick()
            lhs = len(_maps_over(inst, delta_f_m, n, bud))
            rhs = len(_maps_over(inst, m, delta_g_n, bud))
            if lhs != rhs:
                return False
    return True


def find_right_adjoint(inst: EmInstance, f: Any, size_bound: int = 2,
                       budget: "int | Budget | None" = None) -> Optional[Any]:
    """Search the maps backward for one whose base change is right adjoint
    to that of f; a hit also certifies adjunctibility."""
    for g in inst.maps(inst.cod(f), inst.dom(f), budget):
        if delta_adjunction_check(inst, f, g, size_bound, budget):
            if is_adjunctible(inst, f, budget) is None:
                raise LawViolation("right-adjoint", repr(g),
                                   "right adjoint found but f is not adjunctible")
            return g
    return None


def counit_cone(inst: EmInstance, f: Any, y: Any,
                budget: "int | Budget | None" = None) -> Cone:
    """The canonical cone from the image of the pulled-back neighborhood
    of y back to y."""
    bud = as_budget(budget, "counit cone")
    nb_y = neighborhood(inst, inst.cod(f), y)
    pb = inst.pullback(f, nb_y.m)
    fac = inst.factorize(inst.compose(pb.to_left, f))
    hits = [w for w in _maps_over(inst, fac.m, nb_y.m, bud)
            if inst.map_eq(inst.compose(fac.e, w), pb.to_right)]
    if len(hits) != 1:
        raise LawViolation("counit", repr(y),
                           f"expected a unique counit leg, found {len(hits)}")
    return Cone(fac.m, y, hits[0])


def is_dense_at(inst: EmInstance, f: Any, y: Any,
                budget: "int | Budget | None" = None) -> bool:
    """Density at y: the counit cone is colimiting."""
    return is_colimiting_cone(inst, counit_cone(inst, f, y, budget), budget)


def is_dense(inst: EmInstance, f: Any,
             budget: "int | Budget | None" = None) -> bool:
    return all(is_dense_at(inst, f, y, budget) for y in inst.points(inst.cod(f)))


def is_fully_faithful_at(inst: EmInstance, f: Any, x: Any,
                         budget: "int | Budget | None" = None) -> bool:
    """Full-faithfulness at x: the unit from nu(x) into the pulled-back
    neighborhood of fx is invertible."""
    bud = as_budget(budget, "full-faithfulness")
    t, _w = point_image_iso(inst, f, x, bud)
    fx = inst.compose(x, f)
    pb = inst.pullback(f, inst.factorize(fx).m)
    unit = pb.mediate(inst.factorize(x).m, t)
    return inst.is_invertible(unit)


def is_fully_faithful(inst: EmInstance, f: Any,
                      budget: "int | Budget | None" = None) -> bool:
    return all(is_fully_faithful_at(inst, f, x, budget)
               for x in inst.points(inst.dom(f)))


def product_of_points(inst: EmInstance, x: Any, y: Any,
                      budget: "int | Budget | None" = None) -> Optional[tuple[Any, Any]]:
    """The universal displacement from the diagonal to the pair (x, y)."""
    X = inst.cod(x)
    if not inst.space_eq(inst.cod(y), X):
        raise ValidationError("product of points: points of different spaces")
    pr = inst.product(X, X)
    ident = inst.identity(X)
    diag = pr.pair(ident, ident)
    return universal_displacement(inst, diag, pr.pair(x, y), budget)


# the category instance admits a second, classical image construction;
# reflection commutes with it

def classical_image_cone_cat(f: Any, p: Any, c: Cone,
                             budget: "int | Budget | None" = None) -> Cone:
    """Push a cone forward along a functor by whiskering: the base becomes
    p;f and the leg picks up the displacement of the vertex (categories
    only, where arbitrary bases make sense on both sides)."""
    from .comprehensive import cat_instance

    inst = cat_instance()
    if c.base_map != p:
        raise ValidationError("classical image: the cone is not on the given base")
    bud = as_budget(budget, "classical image cone")
    t, _w = point_image_iso(inst, f, c.vertex, bud)
    return Cone(inst.compose(p, f), inst.compose(c.vertex, f),
                inst.compose(c.leg, t))


def kernel_image_commutes(f: Any, p: Any, c: Cone,
                          budget: "int | Budget | None" = None) -> bool:
    """Reflection after pushing forward agrees with pushing the reflection:
    the kernel of the whiskered cone equals the image of the kernel, across
    the canonical (invertible) comparison of the two reflected bases."""
    from .comprehensive import cat_instance

    inst = cat_instance()
    bud = as_budget(budget, "kernel image comparison")
    k1 = kernel_cone(inst, classical_image_cone_cat(f, p, c, bud), bud)
    k2 = image_cone(inst, f, kernel_cone(inst, c, bud), bud)
    fac_p = inst.factorize(p)
    fac1 = inst.factorize(inst.compose(p, f))
    fac2 = inst.factorize(inst.compose(fac_p.m, f))
    target = inst.compose(fac_p.e, fac2.e)
    hits = [w for w in _maps_over(inst, fac1.m, fac2.m, bud)
            if inst.map_eq(inst.compose(fac1.e, w), target)]
    if len(hits) != 1 or not inst.is_invertible(hits[0]):
        return False
    return inst.map_eq(k1.leg, inst.compose(hits[0], k2.leg))


# the two universal characterizations of neighborhoods

def nb_initial_universality(inst: EmInstance, x: Any, n: Any,
                            budget: "int | Budget | None" = None) -> bool:
    """Among pointed discrete spaces: every point of n over x extends to
    exactly one map out of nu(x) over the base."""
    bud = as_budget(budget, "neighborhood initial property")
    nu = inst.factorize(x)
    for q in _maps_over(inst, x, n, bud):
        hits = sum(1 for u in _maps_over(inst, nu.m, n, bud)
                   if inst.map_eq(inst.compose(nu.e, u), q))
        if hits != 1:
            return False
    return True


def nb_final_universality(inst: EmInstance, t: Any, g: Any,
                          budget: "int | Budget | None" = None) -> bool:
    """Among spaces with a final point over x: exactly one comparison into
    nu(x) sends the final point t of the domain of g to the final point."""
    bud = as_budget(budget, "neighborhood final property")
    if not in_E(inst, t):
        raise ValidationError("the given point is not final")
    x = inst.compose(t, g)
    nu = inst.factorize(x)
    hits = sum(1 for v in _maps_over(inst, g, nu.m, bud)
               if inst.map_eq(inst.compose(t, v), nu.e))
    return hits == 1


# power objects

def check_yoneda_map(inst: EmInstance, y: Any, size_bound: int = 3,
                     budget: "int | Budget | None" = None) -> UniversalityReport:
    """Decide whether y: X -> PX exhibits PX as a power object.

    Forward: take the image along y, then the colimit in PX.  Backward:
    take the neighborhood of a point of PX, then pull back along y.  The
    two must be mutually inverse up to isomorphism over the respective
    bases, and hom-sets must match in size.
    """
    bud = as_budget(budget, "power object check")
    X, PX = inst.dom(y), inst.cod(y)
    discs = inst.discrete_spaces_over(X, size_bound, bud)
    pts = inst.points(PX)
    cases = 0

    def forward(m: Any) -> Optional[int]:
        col = colimit(inst, direct_image(inst, y, m), bud)
        return None if col is None else col.vertex_index

    def backward(s: int) -> Any:
        nb = neighborhood(inst, PX, pts[s])
        return inst.pullback(y, nb.m).to_left

    images: dict[int, int] = {}
    for k, m in enumerate(discs):
        cases += 1
        s = forward(m)
        if s is None:
            return UniversalityReport(False, cases,
                                      {"reason": "image has no colimit", "space": repr(m)})
        images[k] = s
        back = backward(s)
        if iso_over_base(inst, back, m, bud) is None:
            return UniversalityReport(False, cases,
                                      {"reason": "round trip misses the space",
                                       "space": repr(m)})
    for s in range(len(pts)):
        cases += 1
        v = forward(backward(s))
        if v is None:
            return UniversalityReport(False, cases,
                                      {"reason": "round trip loses the point", "point": s})
        nb_v = neighborhood(inst, PX, pts[v])
        nb_s = neighborhood(inst, PX, pts[s])
        if v != s and iso_over_base(inst, nb_v.m, nb_s.m, bud) is None:
            return UniversalityReport(False, cases,
                                      {"reason": "round trip moves the point",
                                       "point": s, "landed": v})
    for k, m in enumerate(discs):
        nb_k = neighborhood(inst, PX, pts[images[k]])
        for k2, m2 in enumerate(discs):
            cases += 1
            nb_k2 = neighborhood(inst, PX, pts[images[k2]])
            lhs = len(_maps_over(inst, m, m2, bud))
            rhs = len(_maps_over(inst, nb_k.m, nb_k2.m, bud))
            if lhs != rhs:
                return UniversalityReport(False, cases,
                                          {"reason": "hom sets differ",
                                           "spaces": (k, k2),
                                           "sizes": (lhs, rhs)})
    return UniversalityReport(True, cases)


def yoneda_reflection_check(inst: EmInstance, y: Any, p: Any,
                            budget: "int | Budget | None" = None) -> bool:
    """The reflection of p agrees with the pulled-back neighborhood of the
    colimit of the composite into the power object."""
    bud = as_budget(budget, "power object reflection formula")
    col = colimit(inst, inst.compose(p, y), bud)
    if col is None:
        return False
    nb = neighborhood(inst, inst.cod(y), col.vertex)
    rhs = inst.pullback(y, nb.m).to_left
    return iso_over_base(inst, inst.factorize(p).m, rhs, bud) is not None


# duality

def gamma_components(inst: EmInstance, W: Any,
                     budget: "int | Budget | None" = None) -> int:
    """The instance's set of components of W: the number of points of the
    reflected total of the map to the terminal."""
    fac = inst.factorize(inst.bang(W))
    return len(inst.points(inst.dom(fac.m)))


def up_reflection(inst: EmInstance, p: Any) -> Any:
    """The opposite-side reflection: reflect the opposite of p and carry
    the result back."""
    if not inst.has_opposite():
        raise UnsupportedOperation("this instance has no opposites")
    return inst.opposite_map(inst.factorize(inst.opposite_map(p)).m)


def check_dual1(inst: EmInstance, p: Any, q: Any,
                budget: "int | Budget | None" = None) -> bool:
    """Components of the pullback of the down-reflection of q along p agree
    with components of the pullback of the up-reflection of p along q."""
    down_q = inst.factorize(q).m
    up_p = up_reflection(inst, p)
    lhs = gamma_components(inst, inst.pullback(p, down_q).space, budget)
    rhs = gamma_components(inst, inst.pullback(q, up_p).space, budget)
    return lhs == rhs


def reflection_formula_check(inst: EmInstance, p: Any, x: Any,
                             budget: "int | Budget | None" = None) -> bool:
    """The fiber of the reflection of p at x has exactly as many points as
    there are components in the pullback of the up-neighborhood of x."""
    bud = as_budget(budget, "reflection formula")
    fac = inst.factorize(p)
    fiber = len(_maps_over(inst, x, fac.m, bud))
    up_x = up_reflection(inst, x)
    return fiber == gamma_components(inst, inst.pullback(p, up_x).space, budget)
