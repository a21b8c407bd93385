"""Finite sets with surjections on the left and injections on the right.

The degenerate control instance: neighborhoods are singletons, adherence
is discrete, and the interesting operators collapse to elementary
set-theoretic conditions, which makes independent oracles trivial.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Optional

from ..budget import Budget, as_budget
from ..emcore import EmInstance, Factorization, Product, Pullback
from ..errors import TargetMismatch, ValidationError


@dataclass(frozen=True)
class FinSetObj:
    size: int
    names: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.size < 0:
            raise ValidationError("set size must be nonnegative")
        if self.names is not None and len(self.names) != self.size:
            raise ValidationError("set: one name per element required")

    def elements(self) -> range:
        return range(self.size)

    def name(self, i: int) -> str:
        return self.names[i] if self.names else f"x{i}"


@dataclass(frozen=True)
class FinSetMap:
    src: FinSetObj
    tgt: FinSetObj
    values: tuple[int, ...]
    _h: int = field(init=False, compare=False, repr=False, default=0)

    def __post_init__(self):
        if len(self.values) != self.src.size:
            raise ValidationError("set map: one value per element required")
        for v in self.values:
            if not 0 <= v < self.tgt.size:
                raise ValidationError("set map: value out of range")
        object.__setattr__(self, "_h", hash((self.src, self.tgt, self.values)))

    def __hash__(self):
        return self._h

    def __call__(self, i: int) -> int:
        return self.values[i]


SET_ONE = FinSetObj(1)


class FinSetInstance(EmInstance):
    """Sets and functions; E = surjections, M = injections."""

    name = "finset"

    def dom(self, f: FinSetMap) -> FinSetObj:
        return f.src

    def cod(self, f: FinSetMap) -> FinSetObj:
        return f.tgt

    def identity(self, X: FinSetObj) -> FinSetMap:
        return FinSetMap(X, X, tuple(X.elements()))

    def compose(self, f: FinSetMap, g: FinSetMap) -> FinSetMap:
        if f.tgt != g.src:
            raise TargetMismatch("set compose: middle objects differ")
        return FinSetMap(f.src, g.tgt, tuple(g.values[v] for v in f.values))

    def terminal(self) -> FinSetObj:
        return SET_ONE

    def bang(self, X: FinSetObj) -> FinSetMap:
        return FinSetMap(X, SET_ONE, (0,) * X.size)

    def points(self, X: FinSetObj) -> list[FinSetMap]:
        return [FinSetMap(SET_ONE, X, (x,)) for x in X.elements()]

    def maps(self, A: FinSetObj, B: FinSetObj,
             budget: "int | Budget | None" = None) -> list[FinSetMap]:
        bud = as_budget(budget, "function enumeration")
        out = []
        for values in iproduct(B.elements(), repeat=A.size):
            bud.tick()
            out.append(FinSetMap(A, B, values))
        return out

    def maps_over(self, p: FinSetMap, q: FinSetMap,
                  budget: "int | Budget | None" = None) -> list[FinSetMap]:
        if p.tgt != q.tgt:
            raise TargetMismatch("maps over base: maps must share a target")
        bud = as_budget(budget, "functions over base")
        fibers = [[b for b in q.src.elements() if q.values[b] == p.values[a]]
                  for a in p.src.elements()]
        out = []
        for values in iproduct(*fibers):
            bud.tick()
            out.append(FinSetMap(p.src, q.src, values))
        return out

    def is_invertible(self, f: FinSetMap) -> bool:
        return len(set(f.values)) == f.src.size == f.tgt.size

    def inverse(self, f: FinSetMap) -> FinSetMap:
        inv = [0] * f.tgt.size
        for i, v in enumerate(f.values):
            inv[v] = i
        return FinSetMap(f.tgt, f.src, tuple(inv))

    def in_M(self, f: FinSetMap) -> bool:
        return len(set(f.values)) == f.src.size

    def factorize(self, p: FinSetMap) -> Factorization:
        if self.in_M(p):
            return Factorization(self.identity(p.src), p)
        image = sorted(set(p.values))
        pos = {v: k for k, v in enumerate(image)}
        I = FinSetObj(len(image))
        return Factorization(
            FinSetMap(p.src, I, tuple(pos[v] for v in p.values)),
            FinSetMap(I, p.tgt, tuple(image)),
        )

    def pullback(self, f: FinSetMap, m: FinSetMap) -> Pullback:
        if f.tgt != m.tgt:
            raise TargetMismatch("pullback: maps must share a target")
        elems = [(a, b) for a in f.src.elements() for b in m.src.elements()
                 if f.values[a] == m.values[b]]
        index = {e: k for k, e in enumerate(elems)}
        P = FinSetObj(len(elems))
        to_left = FinSetMap(P, f.src, tuple(a for a, _ in elems))
        to_right = FinSetMap(P, m.src, tuple(b for _, b in elems))

        def mediate(u: FinSetMap, v: FinSetMap) -> FinSetMap:
            if tuple(f.values[x] for x in u.values) != tuple(m.values[x] for x in v.values):
                raise TargetMismatch("pullback mediate: square does not commute")
            return FinSetMap(u.src, P, tuple(index[(u.values[z], v.values[z])]
                                             for z in u.src.elements()))

        return Pullback(P, to_left, to_right, mediate)

    def product(self, A: FinSetObj, B: FinSetObj) -> Product:
        elems = [(a, b) for a in A.elements() for b in B.elements()]
        index = {e: k for k, e in enumerate(elems)}
        P = FinSetObj(len(elems))
        proj_left = FinSetMap(P, A, tuple(a for a, _ in elems))
        proj_right = FinSetMap(P, B, tuple(b for _, b in elems))

        def pair(u: FinSetMap, v: FinSetMap) -> FinSetMap:
            return FinSetMap(u.src, P, tuple(index[(u.values[z], v.values[z])]
                                             for z in u.src.elements()))

        return Product(P, proj_left, proj_right, pair)

    def has_opposite(self) -> bool:
        return True

    def opposite_space(self, X: FinSetObj) -> FinSetObj:
        return X

    def opposite_map(self, f: FinSetMap) -> FinSetMap:
        return f

    def discrete_spaces_over(self, X: FinSetObj, size_bound: int = 3,
                             budget: "int | Budget | None" = None) -> list[FinSetMap]:
        # injections into X up to iso are subset inclusions; fibers are
        # subsingletons, so the bound plays no role
        out = []
        for mask in range(1 << X.size):
            elems = [i for i in X.elements() if (mask >> i) & 1]
            out.append(FinSetMap(FinSetObj(len(elems)), X, tuple(elems)))
        return out


_FINSET = None


def finset_instance() -> FinSetInstance:
    global _FINSET
    if _FINSET is None:
        _FINSET = FinSetInstance()
    return _FINSET
