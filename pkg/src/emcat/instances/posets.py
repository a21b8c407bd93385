"""Finite posets with two factorization systems.

The lower-set system has cofinal maps on the left and lower-set
inclusions on the right; factorization closes the image downward.  The
comprehensive system restricts the category-level system to posets: the
right class is the unique-lifting condition (such maps need not be
injective), and factorization routes through the category instance and
converts the reflected total back to a poset.

Posets are bit-matrix based: ``le[i]`` is the mask of elements above i,
so order tests, lower sets, and sups are word operations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..budget import Budget, as_budget
from ..comprehensive import cat_instance, discrete_reflection_cat
from ..emcore import EmInstance, Factorization, Product, Pullback
from ..errors import AntisymmetryError, TargetMismatch, ValidationError
from ..fincat import FinCat, FinFunctor, fincat_from_parts


@dataclass(frozen=True)
class Poset:
    """A finite poset: ``le[i]`` has bit j set exactly when i <= j."""

    le: tuple[int, ...]
    names: tuple[str, ...] = ()
    _h: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", tuple(f"p{i}" for i in range(len(self.le))))
        if len(self.names) != len(self.le):
            raise ValidationError("poset: one name per element required")
        n = len(self.le)
        for i, row in enumerate(self.le):
            if row >> n:
                raise ValidationError(f"poset: relation row {i} out of range")
            if not (row >> i) & 1:
                raise ValidationError(f"poset: missing {self.names[i]} <= itself")
        for i in range(n):
            for j in range(n):
                if (self.le[i] >> j) & 1:
                    if i != j and (self.le[j] >> i) & 1:
                        raise AntisymmetryError(self.names[i], self.names[j])
                    if self.le[j] & ~self.le[i]:
                        raise ValidationError(
                            f"poset: relation not transitive at "
                            f"{self.names[i]} <= {self.names[j]}")
        object.__setattr__(self, "_h", hash((self.le, self.names)))

    def __hash__(self):
        return self._h

    @property
    def n(self) -> int:
        return len(self.le)

    def leq(self, i: int, j: int) -> bool:
        return bool((self.le[i] >> j) & 1)

    def up_mask(self, i: int) -> int:
        return self.le[i]

    def down_mask(self, i: int) -> int:
        return sum(1 << j for j in range(self.n) if (self.le[j] >> i) & 1)

    def elements(self) -> range:
        return range(self.n)

    def is_lower_mask(self, mask: int) -> bool:
        return all(self.down_mask(i) & ~mask == 0
                   for i in range(self.n) if (mask >> i) & 1)


@dataclass(frozen=True)
class PosetMap:
    """A monotone map, stored as the value of each element in order."""

    src: Poset
    tgt: Poset
    values: tuple[int, ...]
    _h: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        if len(self.values) != self.src.n:
            raise ValidationError("poset map: one value per element required")
        for i in range(self.src.n):
            if not 0 <= self.values[i] < self.tgt.n:
                raise ValidationError(f"poset map: value of {self.src.names[i]} out of range")
            for j in range(self.src.n):
                if self.src.leq(i, j) and not self.tgt.leq(self.values[i], self.values[j]):
                    raise ValidationError(
                        f"poset map: not monotone at "
                        f"{self.src.names[i]} <= {self.src.names[j]}")
        object.__setattr__(self, "_h", hash((self.src, self.tgt, self.values)))

    def __hash__(self):
        return self._h

    def __call__(self, i: int) -> int:
        return self.values[i]


def poset_from_pairs(names: tuple[str, ...], pairs) -> Poset:
    """Build a poset from generating comparabilities.

    The relation is closed reflexively and transitively; a cycle through
    distinct elements raises AntisymmetryError.
    """
    index = {nm: i for i, nm in enumerate(names)}
    if len(index) != len(names):
        raise ValidationError("poset: duplicate element names")
    n = len(names)
    le = [1 << i for i in range(n)]
    for a, b in pairs:
        le[index[a]] |= 1 << index[b]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = le[i]
            for j in range(n):
                if (le[i] >> j) & 1:
                    acc |= le[j]
            if acc != le[i]:
                le[i] = acc
                changed = True
    return Poset(tuple(le), tuple(names))


def chain(n: int) -> Poset:
    return Poset(tuple(((1 << n) - 1) & ~((1 << i) - 1) for i in range(n)))


def antichain(n: int) -> Poset:
    return Poset(tuple(1 << i for i in range(n)))


POS_ONE = chain(1)
POS_TWO = chain(2)
VEE = poset_from_pairs(("a", "b", "c"), [("a", "c"), ("b", "c")])


def lower_sets(X: Poset) -> list[int]:
    """All down-closed masks, in increasing numeric order."""
    return [m for m in range(1 << X.n) if X.is_lower_mask(m)]


def sup_of_mask(X: Poset, mask: int) -> Optional[int]:
    """The least upper bound of the selected elements, if it exists."""
    ubs = [u for u in X.elements()
           if all(X.leq(i, u) for i in X.elements() if (mask >> i) & 1)]
    least = [u for u in ubs if all(X.leq(u, v) for v in ubs)]
    return least[0] if least else None


def subposet(X: Poset, mask: int) -> tuple[Poset, PosetMap]:
    """The full subposet on the masked elements with its inclusion."""
    elems = [i for i in X.elements() if (mask >> i) & 1]
    pos = {e: k for k, e in enumerate(elems)}
    le = tuple(sum(1 << pos[j] for j in elems if X.leq(i, j)) for i in elems)
    P = Poset(le, tuple(X.names[i] for i in elems))
    return P, PosetMap(P, X, tuple(elems))


def opposite_poset(X: Poset) -> Poset:
    le = tuple(sum(1 << j for j in X.elements() if X.leq(j, i)) for i in X.elements())
    return Poset(le, X.names)


def is_cofinal(f: PosetMap) -> bool:
    """Every target element lies below some image element."""
    hit = 0
    for v in f.values:
        hit |= f.tgt.down_mask(v)
    return hit == (1 << f.tgt.n) - 1


def is_final_pos(f: PosetMap) -> bool:
    """Over every target element the set of sources above it is nonempty
    and zigzag-connected under comparability."""
    for x in f.tgt.elements():
        above = [b for b in f.src.elements() if f.tgt.leq(x, f.values[b])]
        if not above:
            return False
        parent = {b: b for b in above}

        def find(b):
            while parent[b] != b:
                parent[b] = parent[parent[b]]
                b = parent[b]
            return b

        for b in above:
            for b2 in above:
                if f.src.leq(b, b2):
                    rb, rb2 = find(b), find(b2)
                    if rb != rb2:
                        parent[max(rb, rb2)] = min(rb, rb2)
        if len({find(b) for b in above}) != 1:
            return False
    return True


# conversions to and from thin categories

_TO_CAT: dict[Poset, tuple[FinCat, dict]] = {}


def pos_to_cat(X: Poset) -> tuple[FinCat, dict]:
    """The thin category of X: one arrow per strict comparability.

    Returns the category and the arrow index (i, j) -> arrow for i < j.
    """
    if X in _TO_CAT:
        return _TO_CAT[X]
    strict = [(i, j) for i in X.elements() for j in X.elements()
              if i != j and X.leq(i, j)]
    arr_index = {p: X.n + k for k, p in enumerate(strict)}
    comp_entries = {}
    for (i, j) in strict:
        for (j2, k) in strict:
            if j != j2:
                continue
            comp_entries[(arr_index[(i, j)], arr_index[(j, k)])] = arr_index[(i, k)]
    names = tuple(f"id_{nm}" for nm in X.names) + tuple(
        f"{X.names[i]}<{X.names[j]}" for i, j in strict)
    C = fincat_from_parts(X.n, strict, comp_entries,
                          obj_names=X.names, arr_names=names)
    _TO_CAT[X] = (C, arr_index)
    return C, arr_index


def pos_map_to_functor(f: PosetMap) -> FinFunctor:
    A, a_idx = pos_to_cat(f.src)
    B, b_idx = pos_to_cat(f.tgt)
    arr_map = list(B.ident[f.values[i]] for i in f.src.elements())
    for (i, j), k in sorted(a_idx.items(), key=lambda kv: kv[1]):
        fi, fj = f.values[i], f.values[j]
        arr_map.append(B.ident[fi] if fi == fj else b_idx[(fi, fj)])
    return FinFunctor(A, B, f.values, tuple(arr_map))


def pos_from_cat(C: FinCat) -> Poset:
    """Recover a poset from a thin skeletal category; raises if C is not one."""
    le = []
    for i in C.objects():
        row = 0
        for j in C.objects():
            k = len(C.hom(i, j))
            if k > 1:
                raise ValidationError("category is not thin")
            if k:
                row |= 1 << j
        le.append(row)
    return Poset(tuple(le), C.obj_names)


class PosInstanceBase(EmInstance):
    """Shared poset plumbing; subclasses fix the right class and factorization."""

    def dom(self, f: PosetMap) -> Poset:
        return f.src

    def cod(self, f: PosetMap) -> Poset:
        return f.tgt

    def identity(self, X: Poset) -> PosetMap:
        return PosetMap(X, X, tuple(X.elements()))

    def compose(self, f: PosetMap, g: PosetMap) -> PosetMap:
        if f.tgt != g.src:
            raise TargetMismatch("poset compose: middle objects differ")
        return PosetMap(f.src, g.tgt, tuple(g.values[v] for v in f.values))

    def terminal(self) -> Poset:
        return POS_ONE

    def bang(self, X: Poset) -> PosetMap:
        return PosetMap(X, POS_ONE, (0,) * X.n)

    def points(self, X: Poset) -> list[PosetMap]:
        return [PosetMap(POS_ONE, X, (x,)) for x in X.elements()]

    def maps(self, A: Poset, B: Poset, budget: "int | Budget | None" = None) -> list[PosetMap]:
        bud = as_budget(budget, "monotone map enumeration")
        out: list[PosetMap] = []
        values = [-1] * A.n

        def rec(i: int) -> None:
            bud.tick()
            if i == A.n:
                out.append(PosetMap(A, B, tuple(values)))
                return
            for v in B.elements():
                ok = True
                for j in range(i):
                    if A.leq(j, i) and not B.leq(values[j], v):
                        ok = False
                        break
                    if A.leq(i, j) and not B.leq(v, values[j]):
                        ok = False
                        break
                if ok:
                    values[i] = v
                    rec(i + 1)
            values[i] = -1

        rec(0)
        return out

    def maps_over(self, p: PosetMap, q: PosetMap,
                  budget: "int | Budget | None" = None) -> list[PosetMap]:
        if p.tgt != q.tgt:
            raise TargetMismatch("maps over base: maps must share a target")
        bud = as_budget(budget, "monotone maps over base")
        A, B = p.src, q.src
        fibers = [[b for b in B.elements() if q.values[b] == p.values[a]]
                  for a in A.elements()]
        out: list[PosetMap] = []
        values = [-1] * A.n

        def rec(i: int) -> None:
            bud.tick()
            if i == A.n:
                out.append(PosetMap(A, B, tuple(values)))
                return
            for v in fibers[i]:
                ok = True
                for j in range(i):
                    if A.leq(j, i) and not B.leq(values[j], v):
                        ok = False
                        break
                    if A.leq(i, j) and not B.leq(v, values[j]):
                        ok = False
                        break
                if ok:
                    values[i] = v
                    rec(i + 1)
            values[i] = -1

        rec(0)
        return out

    def is_invertible(self, f: PosetMap) -> bool:
        if sorted(f.values) != list(range(f.tgt.n)):
            return False
        return all(f.src.leq(i, j) == f.tgt.leq(f.values[i], f.values[j])
                   for i in f.src.elements() for j in f.src.elements())

    def inverse(self, f: PosetMap) -> PosetMap:
        inv = [0] * f.tgt.n
        for i, v in enumerate(f.values):
            inv[v] = i
        return PosetMap(f.tgt, f.src, tuple(inv))

    def _pairs(self, A: Poset, B: Poset, keep) -> tuple[Poset, list]:
        elems = [(a, b) for a in A.elements() for b in B.elements() if keep(a, b)]
        index = {e: k for k, e in enumerate(elems)}
        le = tuple(sum(1 << index[(a2, b2)] for (a2, b2) in elems
                       if A.leq(a, a2) and B.leq(b, b2))
                   for (a, b) in elems)
        names = tuple(f"({A.names[a]},{B.names[b]})" for a, b in elems)
        return Poset(le, names), elems

    def pullback(self, f: PosetMap, m: PosetMap) -> Pullback:
        if f.tgt != m.tgt:
            raise TargetMismatch("pullback: maps must share a target")
        A, B = f.src, m.src
        P, elems = self._pairs(A, B, lambda a, b: f.values[a] == m.values[b])
        index = {e: k for k, e in enumerate(elems)}
        to_left = PosetMap(P, A, tuple(a for a, _ in elems))
        to_right = PosetMap(P, B, tuple(b for _, b in elems))

        def mediate(u: PosetMap, v: PosetMap) -> PosetMap:
            if tuple(f.values[x] for x in u.values) != tuple(m.values[x] for x in v.values):
                raise TargetMismatch("pullback mediate: square does not commute")
            return PosetMap(u.src, P, tuple(index[(u.values[z], v.values[z])]
                                            for z in u.src.elements()))

        return Pullback(P, to_left, to_right, mediate)

    def product(self, A: Poset, B: Poset) -> Product:
        P, elems = self._pairs(A, B, lambda a, b: True)
        index = {e: k for k, e in enumerate(elems)}
        proj_left = PosetMap(P, A, tuple(a for a, _ in elems))
        proj_right = PosetMap(P, B, tuple(b for _, b in elems))

        def pair(u: PosetMap, v: PosetMap) -> PosetMap:
            return PosetMap(u.src, P, tuple(index[(u.values[z], v.values[z])]
                                            for z in u.src.elements()))

        return Product(P, proj_left, proj_right, pair)

    def has_opposite(self) -> bool:
        return True

    def opposite_space(self, X: Poset) -> Poset:
        return opposite_poset(X)

    def opposite_map(self, f: PosetMap) -> PosetMap:
        return PosetMap(opposite_poset(f.src), opposite_poset(f.tgt), f.values)


class PosLowersetInstance(PosInstanceBase):
    """E = cofinal maps, M = lower-set inclusions up to isomorphism."""

    name = "pos"

    def in_M(self, f: PosetMap) -> bool:
        if len(set(f.values)) != f.src.n:
            return False
        image = 0
        for v in f.values:
            image |= 1 << v
        if not f.tgt.is_lower_mask(image):
            return False
        return all(f.src.leq(i, j) == f.tgt.leq(f.values[i], f.values[j])
                   for i in f.src.elements() for j in f.src.elements())

    def factorize(self, p: PosetMap) -> Factorization:
        if self.in_M(p):
            return Factorization(self.identity(p.src), p)
        closure = 0
        for v in p.values:
            closure |= p.tgt.down_mask(v)
        D, incl = subposet(p.tgt, closure)
        pos = {e: k for k, e in enumerate(incl.values)}
        e = PosetMap(p.src, D, tuple(pos[v] for v in p.values))
        return Factorization(e, incl)

    def discrete_spaces_over(self, X: Poset, size_bound: int = 3,
                             budget: "int | Budget | None" = None) -> list[PosetMap]:
        # fibers of lower-set inclusions are subsingletons; the bound is moot
        return [subposet(X, mask)[1] for mask in lower_sets(X)]


class PosComprehensiveInstance(PosInstanceBase):
    """The category-level system restricted to posets.

    M-maps satisfy unique lifting (for b and y <= f(b) there is exactly
    one b' <= b over y) and need not be injective.  Factorization reflects
    the poset-as-category and converts the total back, checking it is a
    poset.
    """

    name = "pos-comp"

    def __init__(self):
        self._fact: dict[PosetMap, Factorization] = {}

    def in_M(self, f: PosetMap) -> bool:
        for b in f.src.elements():
            for y in f.tgt.elements():
                if not f.tgt.leq(y, f.values[b]):
                    continue
                n = sum(1 for b2 in f.src.elements()
                        if f.src.leq(b2, b) and f.values[b2] == y)
                if n != 1:
                    return False
        return True

    def factorize(self, p: PosetMap) -> Factorization:
        if p in self._fact:
            return self._fact[p]
        if self.in_M(p):
            fac = Factorization(self.identity(p.src), p)
        else:
            cfac, _ = discrete_reflection_cat(pos_map_to_functor(p))
            total = pos_from_cat(cfac.m.src)
            m = PosetMap(total, p.tgt, cfac.m.obj_map)
            e = PosetMap(p.src, total, cfac.e.obj_map)
            if not self.in_M(m):
                raise ValidationError("reflected total lost the lifting property")
            fac = Factorization(e, m)
        self._fact[p] = fac
        return fac

    def discrete_spaces_over(self, X: Poset, size_bound: int = 3,
                             budget: "int | Budget | None" = None) -> list[PosetMap]:
        C, _ = pos_to_cat(X)
        out = []
        for m in cat_instance().discrete_spaces_over(C, size_bound, budget):
            total = pos_from_cat(m.src)
            out.append(PosetMap(total, X, m.obj_map))
        return out


_POS_LOW = None
_POS_COMP = None


def pos_lowerset_instance() -> PosLowersetInstance:
    global _POS_LOW
    if _POS_LOW is None:
        _POS_LOW = PosLowersetInstance()
    return _POS_LOW


def pos_comprehensive_instance() -> PosComprehensiveInstance:
    global _POS_COMP
    if _POS_COMP is None:
        _POS_COMP = PosComprehensiveInstance()
    return _POS_COMP


# power objects and hom maps

@dataclass(frozen=True)
class PowerObjectData:
    """The poset of lower-sets, the Yoneda map, and the mask of each element."""

    space: Poset
    yoneda: PosetMap
    masks: tuple[int, ...]


def pos_power_object(X: Poset) -> PowerObjectData:
    """Lower-sets of X ordered by inclusion, with x |-> down(x)."""
    masks = tuple(lower_sets(X))
    index = {m: k for k, m in enumerate(masks)}
    le = tuple(sum(1 << index[m2] for m2 in masks if m & ~m2 == 0) for m in masks)
    names = tuple("{" + ",".join(X.names[i] for i in X.elements() if (m >> i) & 1) + "}"
                  for m in masks)
    P = Poset(le, names)
    yoneda = PosetMap(X, P, tuple(index[X.down_mask(x)] for x in X.elements()))
    return PowerObjectData(P, yoneda, masks)


@dataclass(frozen=True)
class HomMapData:
    """The order-relation map (x', x) |-> [x' <= x] out of opp(X) x X,
    with its two transposes, each a Yoneda map."""

    domain: Poset
    relation: PosetMap
    transpose_left: PosetMap
    transpose_right: PosetMap


def pos_hom_map(X: Poset) -> HomMapData:
    inst = pos_lowerset_instance()
    pr = inst.product(opposite_poset(X), X)
    elems = [(a, b) for a in X.elements() for b in X.elements()]
    relation = PosetMap(pr.space, POS_TWO,
                        tuple(1 if X.leq(a, b) else 0 for a, b in elems))
    left = pos_power_object(X).yoneda
    right = pos_power_object(opposite_poset(X)).yoneda
    return HomMapData(pr.space, relation, left, right)
