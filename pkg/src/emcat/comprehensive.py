"""The category instance: finite categories with final functors on the left
and discrete fibrations on the right.

The discrete reflection of p: P -> X is computed by a closed formula: the
fiber over x is the set of connected components of the comma of x over p,
and an arrow h: x -> x' acts on components by precomposition.  The result
is verified on the spot: the factorization must commute, the right part
must lift uniquely, and the unit must be final.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Optional

from .budget import Budget, as_budget
from .emcore import EmInstance, Factorization, Product, Pullback
from .errors import TargetMismatch
from .fincat import (
    ONE,
    FinCat,
    FinFunctor,
    bang_functor,
    compose_functors,
    enumerate_functors,
    fincat_from_parts,
    identity_functor,
    point_functor,
)


@dataclass(frozen=True)
class DiscreteFibrationWitness:
    """Unique-lifting data for a functor m: M -> X.

    ``lift[(h, b)]`` is the single arrow of M over h whose codomain is the
    object b sitting over the codomain of h.  The identity and composite
    lifting laws are checked at construction time.
    """

    lifts: tuple[tuple[tuple[int, int], int], ...]

    def lift(self, h: int, b: int) -> int:
        return dict(self.lifts)[(h, b)]


def is_discrete_fibration(m: FinFunctor) -> Optional[DiscreteFibrationWitness]:
    """Return the lifting witness if m lifts every arrow uniquely, else None."""
    M, X = m.src, m.tgt
    lifts: dict[tuple[int, int], int] = {}
    for h in X.arrows():
        y = X.cod[h]
        for b in M.objects():
            if m.obj_map[b] != y:
                continue
            cands = [beta for beta in M.arrows()
                     if m.arr_map[beta] == h and M.cod[beta] == b]
            if len(cands) != 1:
                return None
            lifts[(h, b)] = cands[0]
    table = dict(lifts)
    # lifting laws: identities lift to identities, composites to composites
    for (h, b), beta in table.items():
        if X.is_identity(h) and beta != M.ident[b]:
            return None
    for h in X.arrows():
        for k in X.arrows():
            if X.cod[h] != X.dom[k]:
                continue
            hk = X.comp[h][k]
            for b in M.objects():
                if m.obj_map[b] != X.cod[k]:
                    continue
                beta_k = table[(k, b)]
                beta_h = table[(h, M.dom[beta_k])]
                if M.comp[beta_h][beta_k] != table[(hk, b)]:
                    return None
    return DiscreteFibrationWitness(tuple(sorted(lifts.items())))


def comma_over_point(X: FinCat, x: int, p: FinFunctor) -> tuple[list, list, list]:
    """The comma of the object x over p: P -> X, flattened.

    Returns (objects, class_of, reps): objects are pairs (b, h: x -> p b),
    class_of maps each position to its connected-component index, and reps
    holds the first pair of each class.
    """
    P = p.src
    objs = [(b, h) for b in P.objects() for h in X.hom(x, p.obj_map[b])]
    index = {o: i for i, o in enumerate(objs)}
    parent = list(range(len(objs)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, (b, h) in enumerate(objs):
        for beta in P.arrows_from(b):
            j = index[(P.cod[beta], X.comp[h][p.arr_map[beta]])]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    class_of, numbering, reps = [], {}, []
    for i, o in enumerate(objs):
        r = find(i)
        if r not in numbering:
            numbering[r] = len(numbering)
            reps.append(o)
        class_of.append(numbering[r])
    return objs, class_of, reps


def is_final_cat(p: FinFunctor) -> bool:
    """Finality: over every object of the target, the comma of that object
    over p is nonempty and connected."""
    X = p.tgt
    for x in X.objects():
        objs, class_of, _ = comma_over_point(X, x, p)
        if not objs or max(class_of) != 0:
            return False
    return True


def total_of_presheaf(
    X: FinCat, sizes: tuple[int, ...], act: dict[int, tuple[int, ...]]
) -> tuple[FinFunctor, dict]:
    """Assemble the discrete fibration whose fiber over x has sizes[x]
    elements and whose non-identity arrows act by ``act``.

    ``act[h][i]`` is the fiber element over dom(h) reached by lifting h to
    the element i over cod(h).  Returns the projection functor and the
    object index (x, i) -> object of the total category.
    """
    objs = [(x, i) for x in X.objects() for i in range(sizes[x])]
    obj_index = {o: k for k, o in enumerate(objs)}
    n_obj = len(objs)
    arrows = []
    arr_key: dict[tuple[int, int], int] = {}
    for h in X.nonidentity_arrows():
        for i in range(sizes[X.cod[h]]):
            arr_key[(h, i)] = n_obj + len(arrows)
            arrows.append((obj_index[(X.dom[h], act[h][i])], obj_index[(X.cod[h], i)]))

    def arrow_over(h: int, i: int) -> int:
        """The lift of any arrow h ending at fiber element i (identity-aware)."""
        if X.is_identity(h):
            return obj_index[(X.cod[h], i)]
        return arr_key[(h, i)]

    comp_entries = {}
    for (h, i), k1 in arr_key.items():
        for (h2, i2), k2 in arr_key.items():
            if X.cod[h] != X.dom[h2] or i != act[h2][i2]:
                continue
            comp_entries[(k1, k2)] = arrow_over(X.comp[h][h2], i2)
    M = fincat_from_parts(n_obj, arrows, comp_entries)
    m = FinFunctor(
        M, X,
        tuple(x for x, _ in objs),
        tuple([X.ident[x] for x, _ in objs] + [h for h in X.nonidentity_arrows()
                                               for _ in range(sizes[X.cod[h]])]),
    )
    return m, obj_index


def discrete_reflection_cat(p: FinFunctor) -> tuple[Factorization, dict]:
    """Factor p: P -> X as a final functor followed by a discrete fibration.

    Fibers of the fibration are component classes of commas over points of
    X; arrows act by precomposition.  Returns the factorization and, for
    each object of the total, the representative (b, h) of its class.
    All three postconditions (commutation, unique lifting, finality of the
    unit) are verified before returning.
    """
    P, X = p.src, p.tgt
    per_x = [comma_over_point(X, x, p) for x in X.objects()]
    sizes = tuple(len(set(class_of)) if class_of else 0 for _, class_of, _ in per_x)
    class_at = []
    for x in X.objects():
        objs, class_of, _ = per_x[x]
        class_at.append({o: c for o, c in zip(objs, class_of)})
    act: dict[int, tuple[int, ...]] = {}
    for h in X.nonidentity_arrows():
        x, x2 = X.dom[h], X.cod[h]
        reps2 = per_x[x2][2]
        act[h] = tuple(class_at[x][(b, X.comp[h][k])] for (b, k) in reps2)
    m, obj_index = total_of_presheaf(X, sizes, act)
    M = m.src

    e_obj = tuple(obj_index[(p.obj_map[b], class_at[p.obj_map[b]][(b, X.ident[p.obj_map[b]])])]
                  for b in P.objects())
    arr_key: dict[tuple[int, int], int] = {}
    pos = M.n_obj
    for h in X.nonidentity_arrows():
        for i in range(sizes[X.cod[h]]):
            arr_key[(h, i)] = pos
            pos += 1
    e_arr = []
    for beta in P.arrows():
        h = p.arr_map[beta]
        b2 = P.cod[beta]
        cls = class_at[p.obj_map[b2]][(b2, X.ident[p.obj_map[b2]])]
        if X.is_identity(h):
            e_arr.append(M.ident[e_obj[b2]])
        else:
            e_arr.append(arr_key[(h, cls)])
    e = FinFunctor(P, M, e_obj, tuple(e_arr))

    if compose_functors(e, m) != p:
        raise AssertionError("reflection does not factor the input")
    if is_discrete_fibration(m) is None:
        raise AssertionError("reflection right part is not a discrete fibration")
    if not is_final_cat(e):
        raise AssertionError("reflection unit is not final")
    reps = {}
    for x in X.objects():
        for i, rep in enumerate(per_x[x][2]):
            reps[obj_index[(x, i)]] = rep
    return Factorization(e, m), reps


def functors_over(p: FinFunctor, q: FinFunctor,
                  budget: "int | Budget | None" = None) -> list[FinFunctor]:
    """All functors u with u ; q == p, by fiberwise constrained search.

    Object images are confined to the q-fiber over the p-image; arrow
    images likewise, with functor equations pruned as soon as determined.
    When q is a discrete fibration the arrow choices collapse to the
    unique lifts, so this is the fiberwise enumeration.
    """
    if p.tgt != q.tgt:
        raise TargetMismatch("functors_over: maps must share a target")
    bud = as_budget(budget, "maps over base (cat)")
    P, Q, X = p.src, q.src, p.tgt
    obj_fiber: dict[int, list[int]] = {x: [] for x in X.objects()}
    for b in Q.objects():
        obj_fiber[q.obj_map[b]].append(b)
    arr_fiber: dict[int, list[int]] = {h: [] for h in X.arrows()}
    for k in Q.arrows():
        arr_fiber[q.arr_map[k]].append(k)

    nonid = list(P.nonidentity_arrows())
    pairs = [(f, g, P.comp[f][g]) for f in nonid for g in nonid if P.cod[f] == P.dom[g]]
    out: list[FinFunctor] = []
    obj_map = [-1] * P.n_obj
    arr_map_template: list[int] = []

    def assign_arrows(pos: int, arr_map: list[int]) -> None:
        bud.tick()
        if pos == len(nonid):
            out.append(FinFunctor(P, Q, tuple(obj_map), tuple(arr_map)))
            return
        a = nonid[pos]
        want_dom, want_cod = obj_map[P.dom[a]], obj_map[P.cod[a]]
        for k in arr_fiber[p.arr_map[a]]:
            if Q.dom[k] != want_dom or Q.cod[k] != want_cod:
                continue
            arr_map[a] = k
            ok = True
            for f, g, fg in pairs:
                mf, mg, mfg = arr_map[f], arr_map[g], arr_map[fg]
                if mf >= 0 and mg >= 0 and mfg >= 0 and Q.comp[mf][mg] != mfg:
                    ok = False
                    break
            if ok:
                assign_arrows(pos + 1, arr_map)
            arr_map[a] = -1

    def assign_objects(pos: int) -> None:
        bud.tick()
        if pos == P.n_obj:
            arr_map = [Q.ident[obj_map[x]] for x in P.objects()] + [-1] * len(nonid)
            assign_arrows(0, arr_map)
            return
        for b in obj_fiber[p.obj_map[pos]]:
            obj_map[pos] = b
            assign_objects(pos + 1)
        obj_map[pos] = -1

    assign_objects(0)
    return out


def _pair_category(A: FinCat, B: FinCat, keep_obj, keep_arr) -> tuple[FinCat, FinFunctor, FinFunctor, dict, dict]:
    """The subcategory of A x B on the pairs the two filters admit.

    With both filters constant True this is the product; with equality of
    images under a cospan it is the strict pullback.  Filters must be
    closed under composition and identities of kept objects.
    """
    objs = [(a, b) for a in A.objects() for b in B.objects() if keep_obj(a, b)]
    obj_index = {o: i for i, o in enumerate(objs)}
    n_obj = len(objs)
    arrows = []
    arr_index: dict[tuple[int, int], int] = {}
    for alpha in A.arrows():
        for beta in B.arrows():
            sa, sb = (A.dom[alpha], B.dom[beta]), (A.cod[alpha], B.cod[beta])
            if sa not in obj_index or sb not in obj_index:
                continue
            if not keep_arr(alpha, beta):
                continue
            if A.is_identity(alpha) and B.is_identity(beta):
                arr_index[(alpha, beta)] = obj_index[sa]
                continue
            arr_index[(alpha, beta)] = n_obj + len(arrows)
            arrows.append((obj_index[sa], obj_index[sb], alpha, beta))
    comp_entries = {}
    for (i1, j1, a1, b1) in arrows:
        k1 = arr_index[(a1, b1)]
        for (i2, j2, a2, b2) in arrows:
            if j1 != i2:
                continue
            k2 = arr_index[(a2, b2)]
            comp_entries[(k1, k2)] = arr_index[(A.comp[a1][a2], B.comp[b1][b2])]
    C = fincat_from_parts(n_obj, [(i, j) for i, j, _, _ in arrows], comp_entries)
    pa = FinFunctor(
        C, A,
        tuple(a for a, _ in objs),
        tuple([A.ident[a] for a, _ in objs] + [alpha for _, _, alpha, _ in arrows]),
    )
    pb = FinFunctor(
        C, B,
        tuple(b for _, b in objs),
        tuple([B.ident[b] for _, b in objs] + [beta for _, _, _, beta in arrows]),
    )
    return C, pa, pb, obj_index, arr_index


class CatInstance(EmInstance):
    """Finite categories with (final functors, discrete fibrations)."""

    name = "cat"

    def __init__(self):
        self._fact: dict[FinFunctor, Factorization] = {}
        self._reps: dict[FinFunctor, dict] = {}
        self._df: dict[FinFunctor, Optional[DiscreteFibrationWitness]] = {}
        self._maps: dict[tuple[FinCat, FinCat], list[FinFunctor]] = {}
        self._discs: dict[tuple[FinCat, int], list[FinFunctor]] = {}

    # plumbing
    def dom(self, f: FinFunctor) -> FinCat:
        return f.src

    def cod(self, f: FinFunctor) -> FinCat:
        return f.tgt

    def identity(self, X: FinCat) -> FinFunctor:
        return identity_functor(X)

    def compose(self, f: FinFunctor, g: FinFunctor) -> FinFunctor:
        return compose_functors(f, g)

    def terminal(self) -> FinCat:
        return ONE

    def bang(self, X: FinCat) -> FinFunctor:
        return bang_functor(X)

    def points(self, X: FinCat) -> list[FinFunctor]:
        return [point_functor(X, x) for x in X.objects()]

    def maps(self, A: FinCat, B: FinCat, budget: "int | Budget | None" = None) -> list[FinFunctor]:
        key = (A, B)
        if key in self._maps:
            return self._maps[key]
        result = enumerate_functors(A, B, budget)
        self._maps[key] = result
        return result

    def maps_over(self, p: FinFunctor, q: FinFunctor,
                  budget: "int | Budget | None" = None) -> list[FinFunctor]:
        return functors_over(p, q, budget)

    def is_invertible(self, f: FinFunctor) -> bool:
        return (sorted(f.obj_map) == list(f.tgt.objects())
                and sorted(f.arr_map) == list(f.tgt.arrows()))

    def inverse(self, f: FinFunctor) -> FinFunctor:
        obj_inv = [0] * f.tgt.n_obj
        for x, y in enumerate(f.obj_map):
            obj_inv[y] = x
        arr_inv = [0] * f.tgt.n_arr
        for a, b in enumerate(f.arr_map):
            arr_inv[b] = a
        return FinFunctor(f.tgt, f.src, tuple(obj_inv), tuple(arr_inv))

    def pullback(self, f: FinFunctor, m: FinFunctor) -> Pullback:
        if f.tgt != m.tgt:
            raise TargetMismatch("pullback: maps must share a target")
        A, B = f.src, m.src
        C, pa, pb, obj_index, arr_index = _pair_category(
            A, B,
            lambda a, b: f.obj_map[a] == m.obj_map[b],
            lambda alpha, beta: f.arr_map[alpha] == m.arr_map[beta],
        )

        def mediate(u: FinFunctor, v: FinFunctor) -> FinFunctor:
            Z = u.src
            if not (compose_functors(u, f) == compose_functors(v, m)):
                raise TargetMismatch("pullback mediate: square does not commute")
            return FinFunctor(
                Z, C,
                tuple(obj_index[(u.obj_map[z], v.obj_map[z])] for z in Z.objects()),
                tuple(arr_index[(u.arr_map[z], v.arr_map[z])] for z in Z.arrows()),
            )

        return Pullback(C, pa, pb, mediate)

    def product(self, A: FinCat, B: FinCat) -> Product:
        C, pa, pb, obj_index, arr_index = _pair_category(
            A, B, lambda a, b: True, lambda alpha, beta: True)

        def pair(u: FinFunctor, v: FinFunctor) -> FinFunctor:
            Z = u.src
            return FinFunctor(
                Z, C,
                tuple(obj_index[(u.obj_map[z], v.obj_map[z])] for z in Z.objects()),
                tuple(arr_index[(u.arr_map[z], v.arr_map[z])] for z in Z.arrows()),
            )

        return Product(C, pa, pb, pair)

    # the factorization system
    def in_M(self, f: FinFunctor) -> bool:
        return self.df_witness(f) is not None

    def df_witness(self, f: FinFunctor) -> Optional[DiscreteFibrationWitness]:
        if f not in self._df:
            self._df[f] = is_discrete_fibration(f)
        return self._df[f]

    def factorize(self, p: FinFunctor) -> Factorization:
        if p in self._fact:
            return self._fact[p]
        if self.in_M(p):
            fac = Factorization(identity_functor(p.src), p)
            reps = {}
        else:
            fac, reps = discrete_reflection_cat(p)
        self._fact[p] = fac
        self._reps[p] = reps
        return fac

    def reflection_reps(self, p: FinFunctor) -> dict:
        """Class representatives (b, h) per object of the reflection total."""
        self.factorize(p)
        return self._reps[p]

    # opposites
    def has_opposite(self) -> bool:
        return True

    def opposite_space(self, X: FinCat) -> FinCat:
        from .fincat import opposite
        return opposite(X)

    def opposite_map(self, f: FinFunctor) -> FinFunctor:
        from .fincat import opposite_functor
        return opposite_functor(f)

    def discrete_spaces_over(self, X: FinCat, size_bound: int = 3,
                             budget: "int | Budget | None" = None) -> list[FinFunctor]:
        key = (X, size_bound)
        if key in self._discs:
            return self._discs[key]
        bud = as_budget(budget, "discrete fibration enumeration")
        nonid = list(X.nonidentity_arrows())
        pairs = []
        for f in nonid:
            for g in nonid:
                if X.cod[f] == X.dom[g]:
                    pairs.append((f, g, X.comp[f][g]))
        out: list[FinFunctor] = []
        for sizes in iproduct(range(size_bound + 1), repeat=X.n_obj):
            bud.tick()
            act: dict[int, tuple[int, ...]] = {}

            def consistent(assigned: dict) -> bool:
                for f, g, fg in pairs:
                    af, ag = assigned.get(f), assigned.get(g)
                    if af is None or ag is None:
                        continue
                    composite = tuple(af[j] for j in ag)
                    if X.is_identity(fg):
                        if composite != tuple(range(len(ag))):
                            return False
                    else:
                        afg = assigned.get(fg)
                        if afg is not None and afg != composite:
                            return False
                return True

            def rec(pos: int) -> None:
                bud.tick()
                if pos == len(nonid):
                    m, _ = total_of_presheaf(X, sizes, dict(act))
                    out.append(m)
                    return
                h = nonid[pos]
                n_in, n_out = sizes[X.dom[h]], sizes[X.cod[h]]
                if n_out == 0:
                    act[h] = ()
                    if consistent(act):
                        rec(pos + 1)
                    del act[h]
                    return
                if n_in == 0:
                    return
                for fn in iproduct(range(n_in), repeat=n_out):
                    act[h] = fn
                    if consistent(act):
                        rec(pos + 1)
                del act[h]

            rec(0)
        self._discs[key] = out
        return out


_CAT = None


def cat_instance() -> CatInstance:
    """The shared category instance (caches factorizations and hom-sets)."""
    global _CAT
    if _CAT is None:
        _CAT = CatInstance()
    return _CAT
