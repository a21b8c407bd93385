"""Finite categories as explicit composition tables.

Conventions, used everywhere in this package:

  - Objects and arrows are indexed by consecutive integers.
  - Identities come first: arrow ``i`` for ``i < n_obj`` is the identity of
    object ``i``.
  - Composition is stored diagrammatically: ``comp[f][g]`` is "f then g",
    defined exactly when ``cod(f) == dom(g)``; undefined entries hold -1.

Names are optional decoration for parsing and printing; they never affect
the mathematics, but they do take part in structural equality so that
round-trips through the text format are exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .budget import Budget, as_budget
from .errors import (
    DanglingIndex,
    LawViolation,
    MissingComposite,
    TargetMismatch,
)


@dataclass(frozen=True)
class FinCat:
    """A finite category given by a total composition table.

    ``dom``/``cod`` give arrow endpoints, ``ident[x]`` the identity arrow of
    object ``x`` (always ``x`` itself under the identities-first convention),
    and ``comp[f][g]`` the diagrammatic composite.
    """

    dom: tuple[int, ...]
    cod: tuple[int, ...]
    ident: tuple[int, ...]
    comp: tuple[tuple[int, ...], ...]
    obj_names: Optional[tuple[str, ...]] = None
    arr_names: Optional[tuple[str, ...]] = None
    _h: int = field(init=False, compare=False, repr=False, default=0)

    def __post_init__(self):
        object.__setattr__(
            self,
            "_h",
            hash((self.dom, self.cod, self.ident, self.comp, self.obj_names, self.arr_names)),
        )

    def __hash__(self) -> int:
        return self._h

    @property
    def n_obj(self) -> int:
        return len(self.ident)

    @property
    def n_arr(self) -> int:
        return len(self.dom)

    def is_identity(self, a: int) -> bool:
        return a < self.n_obj

    def objects(self) -> range:
        return range(self.n_obj)

    def arrows(self) -> range:
        return range(self.n_arr)

    def nonidentity_arrows(self) -> range:
        return range(self.n_obj, self.n_arr)

    def compose(self, f: int, g: int) -> int:
        """Diagrammatic composite: f then g."""
        h = self.comp[f][g]
        if h < 0:
            raise TargetMismatch(f"arrows {f} and {g} are not composable")
        return h

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        return tuple(a for a in self.arrows() if self.dom[a] == x and self.cod[a] == y)

    def arrows_from(self, x: int) -> tuple[int, ...]:
        return tuple(a for a in self.arrows() if self.dom[a] == x)

    def arrows_to(self, y: int) -> tuple[int, ...]:
        return tuple(a for a in self.arrows() if self.cod[a] == y)

    def composable_pairs(self) -> Iterator[tuple[int, int]]:
        for f in self.arrows():
            for g in self.arrows():
                if self.cod[f] == self.dom[g]:
                    yield f, g

    def obj_name(self, x: int) -> str:
        if self.obj_names is not None:
            return self.obj_names[x]
        return f"o{x}"

    def arr_name(self, a: int) -> str:
        if self.arr_names is not None:
            return self.arr_names[a]
        if self.is_identity(a):
            return f"id_{self.obj_name(a)}"
        return f"a{a}"

    def without_names(self) -> "FinCat":
        if self.obj_names is None and self.arr_names is None:
            return self
        return FinCat(self.dom, self.cod, self.ident, self.comp)


@dataclass(frozen=True)
class FinFunctor:
    """A functor between finite categories, as index assignments."""

    src: FinCat
    tgt: FinCat
    obj_map: tuple[int, ...]
    arr_map: tuple[int, ...]
    _h: int = field(init=False, compare=False, repr=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "_h", hash((self.src, self.tgt, self.obj_map, self.arr_map)))

    def __hash__(self) -> int:
        return self._h

    def on_obj(self, x: int) -> int:
        return self.obj_map[x]

    def on_arr(self, a: int) -> int:
        return self.arr_map[a]


@dataclass(frozen=True)
class FinSetQ:
    """A finite quotient set: its size and, when produced as a quotient,
    the class of each original element."""

    size: int
    class_of: tuple[int, ...]


# ---------------------------------------------------------------------------
# construction helpers

def fincat_from_parts(
    n_obj: int,
    arrows: Sequence[tuple[int, int]],
    comp_entries: dict[tuple[int, int], int],
    obj_names: Optional[Sequence[str]] = None,
    arr_names: Optional[Sequence[str]] = None,
) -> FinCat:
    """Assemble a FinCat from non-identity arrow endpoints and the composites
    of non-identity composable pairs.

    Identity arrows and the table entries they force are filled in here.
    Indices in ``arrows`` and ``comp_entries`` are global: identities occupy
    0..n_obj-1 and the k-th entry of ``arrows`` is arrow n_obj+k.
    """
    n_arr = n_obj + len(arrows)
    dom = list(range(n_obj)) + [d for d, _ in arrows]
    cod = list(range(n_obj)) + [c for _, c in arrows]
    table = [[-1] * n_arr for _ in range(n_arr)]
    for f in range(n_arr):
        table[dom[f]][f] = f
        table[f][cod[f]] = f
    for (f, g), h in comp_entries.items():
        if f < n_obj or g < n_obj:
            forced = table[f][g]
            if forced != h:
                raise LawViolation("identity", (f, g), "identity composite given incorrectly")
            continue
        if cod[f] != dom[g]:
            raise LawViolation("typing", (f, g), "composite given for a non-composable pair")
        table[f][g] = h
    for f in range(n_obj, n_arr):
        for g in range(n_obj, n_arr):
            if cod[f] == dom[g] and table[f][g] < 0:
                raise MissingComposite(str(f), str(g))
    return FinCat(
        tuple(dom),
        tuple(cod),
        tuple(range(n_obj)),
        tuple(tuple(row) for row in table),
        tuple(obj_names) if obj_names is not None else None,
        tuple(arr_names) if arr_names is not None else None,
    )


def check_fincat(C: FinCat) -> None:
    """Verify all category laws on the table; raise on the first failure.

    Checks index sanity, totality of composition on composable pairs,
    typing of every entry, identity laws, and associativity.
    """
    n_obj, n_arr = C.n_obj, C.n_arr
    if C.ident != tuple(range(n_obj)):
        raise DanglingIndex("identity layout", C.ident)
    for a in C.arrows():
        if not (0 <= C.dom[a] < n_obj and 0 <= C.cod[a] < n_obj):
            raise DanglingIndex("object", (C.dom[a], C.cod[a]))
    for x in C.objects():
        if C.dom[x] != x or C.cod[x] != x:
            raise LawViolation("identity", (x,), f"identity arrow {x} is not an endoarrow of {x}")
    for f in C.arrows():
        for g in C.arrows():
            h = C.comp[f][g]
            if C.cod[f] != C.dom[g]:
                if h != -1:
                    raise LawViolation("typing", (f, g), "entry present for non-composable pair")
                continue
            if h < 0:
                raise MissingComposite(C.arr_name(f), C.arr_name(g))
            if not (0 <= h < n_arr) or C.dom[h] != C.dom[f] or C.cod[h] != C.cod[g]:
                raise LawViolation("typing", (f, g, h), "composite has wrong endpoints")
    for f in C.arrows():
        if C.comp[C.ident[C.dom[f]]][f] != f or C.comp[f][C.ident[C.cod[f]]] != f:
            raise LawViolation("identity", (f,), f"identity law fails at {C.arr_name(f)}")
    for f in C.arrows():
        for g in C.arrows():
            if C.cod[f] != C.dom[g]:
                continue
            fg = C.comp[f][g]
            for h in C.arrows():
                if C.cod[g] != C.dom[h]:
                    continue
                gh = C.comp[g][h]
                if C.comp[fg][h] != C.comp[f][gh]:
                    raise LawViolation(
                        "associativity",
                        (C.arr_name(f), C.arr_name(g), C.arr_name(h)),
                        f"associativity fails at ({C.arr_name(f)}, {C.arr_name(g)}, {C.arr_name(h)})",
                    )


@dataclass
class RawCategory:
    """Parsed but unchecked category data.

    ``arrows`` lists non-identity arrows as (name, dom name, cod name);
    ``compose`` maps pairs of arrow names (diagrammatic order, identity
    names included) to the name of their composite.  Identity arrows are
    named ``id_<object>``.
    """

    objects: list[str]
    arrows: list[tuple[str, str, str]]
    compose: dict[tuple[str, str], str]


def identity_name(obj: str) -> str:
    return f"id_{obj}"


def raw_category(
    objects: Sequence[str],
    arrows: Sequence[tuple[str, str, str]],
    compose: dict[tuple[str, str], str],
) -> RawCategory:
    """Build a RawCategory, filling in the composition entries forced by
    identities so that the table is total on paper."""
    raw = RawCategory(list(objects), list(arrows), dict(compose))
    doms = {name: d for name, d, _ in arrows}
    cods = {name: c for name, _, c in arrows}
    for o in objects:
        doms[identity_name(o)] = o
        cods[identity_name(o)] = o
    names = list(doms)
    for f in names:
        for g in names:
            if cods.get(f) == doms.get(g):
                if f.startswith("id_") or g.startswith("id_"):
                    raw.compose.setdefault((f, g), g if f.startswith("id_") else f)
    return raw


def validate(raw: RawCategory) -> FinCat:
    """Check a raw table against the category laws and index it.

    Raises MissingComposite, LawViolation or DanglingIndex; on success
    returns the FinCat with identities indexed first.
    """
    obj_index = {o: i for i, o in enumerate(raw.objects)}
    if len(obj_index) != len(raw.objects):
        raise DanglingIndex("object (duplicate name)", raw.objects)
    n_obj = len(raw.objects)
    arr_names = [identity_name(o) for o in raw.objects]
    dom = list(range(n_obj))
    cod = list(range(n_obj))
    for name, d, c in raw.arrows:
        if d not in obj_index:
            raise DanglingIndex("object", d)
        if c not in obj_index:
            raise DanglingIndex("object", c)
        if name in arr_names:
            raise DanglingIndex("arrow (duplicate name)", name)
        arr_names.append(name)
        dom.append(obj_index[d])
        cod.append(obj_index[c])
    arr_index = {a: i for i, a in enumerate(arr_names)}
    n_arr = len(arr_names)
    table = [[-1] * n_arr for _ in range(n_arr)]
    for (fn, gn), hn in raw.compose.items():
        for nm in (fn, gn, hn):
            if nm not in arr_index:
                raise DanglingIndex("arrow", nm)
        f, g, h = arr_index[fn], arr_index[gn], arr_index[hn]
        if cod[f] != dom[g]:
            raise LawViolation("typing", (fn, gn), f"{fn!r} then {gn!r} is not composable")
        table[f][g] = h
    C = FinCat(
        tuple(dom), tuple(cod), tuple(range(n_obj)),
        tuple(tuple(row) for row in table),
        tuple(raw.objects), tuple(arr_names),
    )
    check_fincat(C)
    return C


def validate_functor(F: FinFunctor) -> None:
    """Check functor laws; raise LawViolation naming the offending pair."""
    A, B = F.src, F.tgt
    if len(F.obj_map) != A.n_obj or len(F.arr_map) != A.n_arr:
        raise DanglingIndex("assignment length", (len(F.obj_map), len(F.arr_map)))
    for x in A.objects():
        if not 0 <= F.obj_map[x] < B.n_obj:
            raise DanglingIndex("object", F.obj_map[x])
    for a in A.arrows():
        fa = F.arr_map[a]
        if not 0 <= fa < B.n_arr:
            raise DanglingIndex("arrow", fa)
        if B.dom[fa] != F.obj_map[A.dom[a]] or B.cod[fa] != F.obj_map[A.cod[a]]:
            raise LawViolation("typing", (a,), f"image of arrow {A.arr_name(a)} has wrong endpoints")
    for x in A.objects():
        if F.arr_map[A.ident[x]] != B.ident[F.obj_map[x]]:
            raise LawViolation("identity", (x,), f"identity of {A.obj_name(x)} not sent to an identity")
    for f, g in A.composable_pairs():
        if B.comp[F.arr_map[f]][F.arr_map[g]] != F.arr_map[A.comp[f][g]]:
            raise LawViolation(
                "composition",
                (A.arr_name(f), A.arr_name(g)),
                f"composite of ({A.arr_name(f)}, {A.arr_name(g)}) not preserved",
            )


def compose_functors(F: FinFunctor, G: FinFunctor) -> FinFunctor:
    """Diagrammatic composite: F then G."""
    if F.tgt != G.src:
        raise TargetMismatch("functor composition: target/source mismatch")
    return FinFunctor(
        F.src,
        G.tgt,
        tuple(G.obj_map[x] for x in F.obj_map),
        tuple(G.arr_map[a] for a in F.arr_map),
    )


def identity_functor(C: FinCat) -> FinFunctor:
    return FinFunctor(C, C, tuple(C.objects()), tuple(C.arrows()))


# ---------------------------------------------------------------------------
# fixtures

def _ordinal(n: int) -> FinCat:
    arrows = [(i, j) for i in range(n) for j in range(i + 1, n)]
    index = {e: n + k for k, e in enumerate(arrows)}
    comp = {}
    for (i, j) in arrows:
        for (j2, k) in arrows:
            if j == j2:
                comp[(index[(i, j)], index[(j, k)])] = index[(i, k)]
    return fincat_from_parts(n, arrows, comp)


EMPTY = fincat_from_parts(0, [], {})
ONE = fincat_from_parts(1, [], {})
TWO = _ordinal(2)
THREE = _ordinal(3)
FOUR = _ordinal(4)
D2 = fincat_from_parts(2, [], {})
PARALLEL = fincat_from_parts(2, [(0, 1), (0, 1)], {})


def point_functor(X: FinCat, x: int) -> FinFunctor:
    """The functor ONE -> X picking the object x."""
    return FinFunctor(ONE, X, (x,), (X.ident[x],))


def bang_functor(X: FinCat) -> FinFunctor:
    """The unique functor X -> ONE."""
    return FinFunctor(X, ONE, tuple(0 for _ in X.objects()), tuple(0 for _ in X.arrows()))


def arrow_functor(X: FinCat, a: int) -> FinFunctor:
    """The functor TWO -> X picking the arrow a."""
    return FinFunctor(TWO, X, (X.dom[a], X.cod[a]), (X.ident[X.dom[a]], X.ident[X.cod[a]], a))


# ---------------------------------------------------------------------------
# comma categories and components

def comma(f: FinFunctor, g: FinFunctor) -> tuple[FinCat, FinFunctor, FinFunctor]:
    """The comma category of two functors with a common target.

    Objects are triples (a, b, h: f a -> g b); an arrow
    (a, b, h) -> (a', b', h') is a pair (alpha: a -> a', beta: b -> b')
    whose square commutes: f(alpha) then h' equals h then g(beta).
    Returns the category with its two projection functors.
    """
    if f.tgt != g.tgt:
        raise TargetMismatch("comma: the two functors must share a target")
    A, B, X = f.src, g.src, f.tgt
    objs: list[tuple[int, int, int]] = []
    for a in A.objects():
        for b in B.objects():
            for h in X.hom(f.obj_map[a], g.obj_map[b]):
                objs.append((a, b, h))
    obj_index = {t: i for i, t in enumerate(objs)}
    n_obj = len(objs)

    arrows: list[tuple[int, int, int, int]] = []  # (src obj, tgt obj, alpha, beta)
    for i, (a, b, h) in enumerate(objs):
        for j, (a2, b2, h2) in enumerate(objs):
            for alpha in A.hom(a, a2):
                fa = f.arr_map[alpha]
                left = X.comp[fa][h2]
                for beta in B.hom(b, b2):
                    if left == X.comp[h][g.arr_map[beta]]:
                        if i == j and A.is_identity(alpha) and B.is_identity(beta):
                            continue
                        arrows.append((i, j, alpha, beta))
    arr_of = {}
    for k, (i, j, alpha, beta) in enumerate(arrows):
        arr_of[(i, j, alpha, beta)] = n_obj + k
    comp_entries: dict[tuple[int, int], int] = {}
    for k1, (i1, j1, a1, b1) in enumerate(arrows):
        for k2, (i2, j2, a2, b2) in enumerate(arrows):
            if j1 != i2:
                continue
            ca, cb = A.comp[a1][a2], B.comp[b1][b2]
            if i1 == j2 and A.is_identity(ca) and B.is_identity(cb):
                tgt_arr = i1  # composes to an identity
            else:
                tgt_arr = arr_of[(i1, j2, ca, cb)]
            comp_entries[(n_obj + k1, n_obj + k2)] = tgt_arr
    C = fincat_from_parts(n_obj, [(i, j) for i, j, _, _ in arrows], comp_entries)
    proj_a = _comma_projection(C, objs, arrows, A, 0)
    proj_b = _comma_projection(C, objs, arrows, B, 1)
    return C, proj_a, proj_b


def _comma_projection(C: FinCat, objs, arrows, T: FinCat, side: int) -> FinFunctor:
    n_obj = len(objs)
    obj_map = tuple(o[side] for o in objs)
    arr_map = []
    for k in C.arrows():
        if C.is_identity(k):
            arr_map.append(T.ident[obj_map[k]])
        else:
            i, j, alpha, beta = arrows[k - n_obj]
            arr_map.append(alpha if side == 0 else beta)
    return FinFunctor(C, T, obj_map, tuple(arr_map))


def components(C: FinCat) -> tuple[FinSetQ, tuple[int, ...]]:
    """Connected components of a category: objects joined by any arrow.

    Returns the quotient set and the object -> class map; classes are
    numbered in order of their first object.
    """
    parent = list(C.objects())

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a in C.nonidentity_arrows():
        ra, rb = find(C.dom[a]), find(C.cod[a])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    class_of = []
    numbering: dict[int, int] = {}
    for x in C.objects():
        r = find(x)
        if r not in numbering:
            numbering[r] = len(numbering)
        class_of.append(numbering[r])
    q = FinSetQ(len(numbering), tuple(class_of))
    return q, q.class_of


# ---------------------------------------------------------------------------
# functor enumeration, opposites, isomorphism

def enumerate_functors(A: FinCat, B: FinCat, budget: "int | Budget | None" = None) -> list[FinFunctor]:
    """All functors A -> B, duplicate-free, in lexicographic assignment order.

    Depth-first search over object and arrow assignments, pruning with the
    composition table as soon as a violated equation is determined.
    """
    bud = as_budget(budget, f"functors into category with {B.n_arr} arrows")
    out: list[FinFunctor] = []
    if A.n_obj == 0:
        return [FinFunctor(A, B, (), ())]
    nonid = list(A.nonidentity_arrows())
    # composition constraints among non-identity arrows, keyed by the last
    # arrow position that makes the triple (f, g, fg) fully assigned
    pairs = [(f, g, A.comp[f][g]) for f in nonid for g in nonid if A.cod[f] == A.dom[g]]

    for obj_map in iproduct(range(B.n_obj), repeat=A.n_obj):
        bud.tick()
        cands = []
        ok = True
        for a in nonid:
            c = B.hom(obj_map[A.dom[a]], obj_map[A.cod[a]])
            if not c:
                ok = False
                break
            cands.append(c)
        if not ok:
            continue
        arr_map = [B.ident[obj_map[x]] for x in A.objects()] + [-1] * len(nonid)

        def assign(pos: int) -> None:
            bud.tick()
            if pos == len(nonid):
                out.append(FinFunctor(A, B, obj_map, tuple(arr_map)))
                return
            a = nonid[pos]
            for img in cands[pos]:
                arr_map[a] = img
                good = True
                for f, g, fg in pairs:
                    mf, mg, mfg = arr_map[f], arr_map[g], arr_map[fg]
                    if mf >= 0 and mg >= 0 and mfg >= 0:
                        if B.comp[mf][mg] != mfg:
                            good = False
                            break
                if good:
                    assign(pos + 1)
                arr_map[a] = -1

        assign(0)
    return out


def opposite(C: FinCat) -> FinCat:
    """The opposite category; applying it twice returns the input exactly."""
    n = C.n_arr
    table = tuple(tuple(C.comp[g][f] for g in range(n)) for f in range(n))
    return FinCat(C.cod, C.dom, C.ident, table, C.obj_names, C.arr_names)


def opposite_functor(F: FinFunctor) -> FinFunctor:
    return FinFunctor(opposite(F.src), opposite(F.tgt), F.obj_map, F.arr_map)


def find_isomorphism(A: FinCat, B: FinCat, budget: "int | Budget | None" = None) -> Optional[FinFunctor]:
    """Search for an isomorphism of categories A -> B.

    A bijective-on-objects-and-arrows functor; its inverse is then
    automatically a functor.  Returns one witness or None.
    """
    if A.n_obj != B.n_obj or A.n_arr != B.n_arr:
        return None
    bud = as_budget(budget, "isomorphism search")

    def profile_obj(C: FinCat, x: int):
        return (
            sum(1 for a in C.arrows() if C.dom[a] == x and C.cod[a] == x),
            len(C.arrows_from(x)),
            len(C.arrows_to(x)),
        )

    prof_a = [profile_obj(A, x) for x in A.objects()]
    prof_b = [profile_obj(B, x) for x in B.objects()]

    from itertools import permutations

    for perm in permutations(range(B.n_obj)):
        bud.tick()
        if any(prof_a[x] != prof_b[perm[x]] for x in A.objects()):
            continue
        nonid = list(A.nonidentity_arrows())
        arr_map = [B.ident[perm[x]] for x in A.objects()] + [-1] * len(nonid)
        used = [False] * B.n_arr
        for x in B.objects():
            used[B.ident[x]] = True
        pairs = [(f, g, A.comp[f][g]) for f in nonid for g in nonid if A.cod[f] == A.dom[g]]

        def assign(pos: int) -> Optional[FinFunctor]:
            bud.tick()
            if pos == len(nonid):
                F = FinFunctor(A, B, tuple(perm), tuple(arr_map))
                return F
            a = nonid[pos]
            for img in B.hom(perm[A.dom[a]], perm[A.cod[a]]):
                if used[img] or B.is_identity(img):
                    continue
                arr_map[a] = img
                used[img] = True
                good = True
                for f, g, fg in pairs:
                    mf, mg, mfg = arr_map[f], arr_map[g], arr_map[fg]
                    if mf >= 0 and mg >= 0 and mfg >= 0 and B.comp[mf][mg] != mfg:
                        good = False
                        break
                if good:
                    r = assign(pos + 1)
                    if r is not None:
                        return r
                arr_map[a] = -1
                used[img] = False
            return None

        found = assign(0)
        if found is not None:
            return found
    return None
