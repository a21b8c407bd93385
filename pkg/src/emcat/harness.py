"""Corpus enumeration and the keyed property suite.

Every law the package implements is registered here as a numbered property
(FS-*, CF-*, NB-*, THM-*, COL-*, POW-*, DUAL-*, AO-*, INS-*) and executed
over corpora of enumerated small spaces and maps.  Corpora are deterministic
given bounds and seed; whenever a quantifier is sampled instead of exhausted
the result says so, and a failing property always carries a serialized
witness.  A budget overrun inside one property becomes a skipped entry with
its reason; it never passes silently.
"""
from __future__ import annotations

import json
import random
from collections import defaultdict
from dataclasses import dataclass, field
from fnmatch import fnmatch
from itertools import combinations, combinations_with_replacement, permutations
from typing import Any, Callable, Mapping, Optional

from . import arrowobj as ao
from . import theory as th
from .budget import Budget, as_budget
from .comprehensive import cat_instance, is_discrete_fibration, is_final_cat
from .emcore import (EmInstance, check_orthogonal, direct_image,
                     factorization_unique_up_to_iso, in_E, iso_over_base,
                     reflection_universality_check)
from .errors import (LawViolation, PushoutUnavailable, SizeBudgetExceeded,
                     ValidationError)
from .fincat import (EMPTY, PARALLEL, THREE, TWO, FinCat, FinFunctor, comma,
                     components, find_isomorphism, fincat_from_parts,
                     point_functor)
from .instances import (DOT, E1, FinSetMap, FinSetObj, GraphMap, Poset,
                        PosetMap, ReflexiveGraph, antichain, chain,
                        finset_instance, free_category, free_functor,
                        gph_instance, graph_from_edges, is_cofinal,
                        opposite_poset, pos_comprehensive_instance,
                        pos_hom_map, pos_lowerset_instance, pos_power_object,
                        pos_to_cat, sup_of_mask)
from .instances.posets import lower_sets, pos_map_to_functor

__all__ = [
    "Corpus", "CorpusMap", "PropertyResult", "SuiteReport",
    "enumerate_categories", "enumerate_posets", "enumerate_graphs",
    "enumerate_maps", "poset_iso_classes", "graph_iso_classes",
    "cat_corpus", "pos_corpus", "gph_corpus", "finset_corpus",
    "standard_corpora", "instance_registry", "corrupt_instance",
    "run_theorem_suite", "PROPERTIES",
]


# ---------------------------------------------------------------------------
# corpora

@dataclass(frozen=True)
class CorpusMap:
    """One enumerated map, remembered with its source and target space
    indices so a witness can be replayed against the same corpus."""

    src: int
    tgt: int
    map: Any


@dataclass(frozen=True)
class Corpus:
    instance: str
    spaces: tuple
    maps: tuple
    bounds: str
    seed: int
    sampled: bool


def enumerate_categories(max_obj: int, max_arr: int,
                         budget: "int | Budget | None" = None) -> list[FinCat]:
    """All composition tables within the bounds, one representative per
    isomorphism class, in a deterministic order.

    The empty category is returned only for max_obj = 0; corpus builders
    append it explicitly so that nonempty bounds enumerate nonempty shapes.
    """
    if max_obj < 0 or max_arr < 0:
        raise ValidationError("enumerate_categories: bounds must be >= 0")
    bud = as_budget(budget, "category enumeration")
    if max_obj == 0:
        return [EMPTY]
    found: list[FinCat] = []
    for n in range(1, max_obj + 1):
        pool = [(i, j) for i in range(n) for j in range(n)]
        for k in range(0, max_arr - n + 1):
            for ends in combinations_with_replacement(pool, k):
                for cat in _tables(n, ends, bud):
                    if not any(c.n_arr == cat.n_arr and c.n_obj == cat.n_obj
                               and find_isomorphism(c, cat) is not None
                               for c in found):
                        found.append(cat)
    return found


def _tables(n_obj: int, ends, bud: Budget):
    """All associative composition tables over fixed non-identity arrow
    endpoints."""
    n_arr = n_obj + len(ends)
    dom = tuple(range(n_obj)) + tuple(d for d, _ in ends)
    cod = tuple(range(n_obj)) + tuple(c for _, c in ends)
    pairs = [(a, b) for a in range(n_obj, n_arr) for b in range(n_obj, n_arr)
             if cod[a] == dom[b]]
    cand = {}
    for a, b in pairs:
        opts = [k for k in range(n_obj, n_arr)
                if dom[k] == dom[a] and cod[k] == cod[b]]
        if dom[a] == cod[b]:
            opts = [dom[a]] + opts
        cand[(a, b)] = opts

    comp: dict[tuple[int, int], int] = {}

    def value(a, b):
        if a < n_obj:
            return b
        if b < n_obj:
            return a
        return comp[(a, b)]

    out = []

    def rec(i):
        bud.tick()
        if i == len(pairs):
            ok = all(value(value(a, b), c) == value(a, value(b, c))
                     for (a, b) in pairs
                     for c in range(n_obj, n_arr) if cod[b] == dom[c])
            if ok:
                out.append(fincat_from_parts(n_obj, list(ends), dict(comp)))
            return
        a, b = pairs[i]
        for k in cand[(a, b)]:
            comp[(a, b)] = k
            rec(i + 1)
        del comp[(a, b)]

    rec(0)
    return out


def enumerate_posets(n: int, budget: "int | Budget | None" = None) -> list[Poset]:
    """All labeled posets on exactly n elements (1, 1, 3, 19, 219, ... as n
    grows), built by extending each smaller poset with a new top-indexed
    element given a lower cone and an upper cone."""
    if n < 0:
        raise ValidationError("enumerate_posets: n must be >= 0")
    bud = as_budget(budget, "poset enumeration")
    layer = [Poset((), ())]
    for k in range(n):
        nxt = []
        for P in layer:
            downs = lower_sets(P)
            ups = lower_sets(opposite_poset(P))
            for d_mask in downs:
                for u_mask in ups:
                    bud.tick()
                    if d_mask & u_mask:
                        continue
                    if not all((P.le[i] & u_mask) == u_mask
                               for i in range(k) if (d_mask >> i) & 1):
                        continue
                    le = tuple((P.le[i] | (1 << k)) if (d_mask >> i) & 1
                               else P.le[i] for i in range(k))
                    le += ((1 << k) | u_mask,)
                    nxt.append(Poset(le, tuple(f"p{j}" for j in range(k + 1))))
        layer = nxt
    return layer


def _poset_iso(A: Poset, B: Poset) -> bool:
    if A.n != B.n:
        return False
    if sorted(bin(m).count("1") for m in A.le) != \
            sorted(bin(m).count("1") for m in B.le):
        return False
    rng_n = range(A.n)
    for perm in permutations(rng_n):
        if all(((A.le[i] >> j) & 1) == ((B.le[perm[i]] >> perm[j]) & 1)
               for i in rng_n for j in rng_n):
            return True
    return False


def poset_iso_classes(posets) -> list[Poset]:
    reps: list[Poset] = []
    for P in posets:
        if not any(_poset_iso(P, Q) for Q in reps):
            reps.append(P)
    return reps


def _has_cycle(n: int, edges) -> bool:
    succ = defaultdict(list)
    for d, c in edges:
        succ[d].append(c)
    state = [0] * n
    def visit(u):
        state[u] = 1
        for v in succ[u]:
            if state[v] == 1 or (state[v] == 0 and visit(v)):
                return True
        state[u] = 2
        return False
    return any(state[u] == 0 and visit(u) for u in range(n))


def enumerate_graphs(nodes: int, edges: Optional[int] = None,
                     acyclic: bool = True,
                     budget: "int | Budget | None" = None) -> list[ReflexiveGraph]:
    """All labeled simple reflexive graphs on exactly `nodes` nodes with at
    most `edges` non-identity edges; acyclic by default (reflections of
    cyclic graphs are refused elsewhere)."""
    if nodes < 0:
        raise ValidationError("enumerate_graphs: nodes must be >= 0")
    bud = as_budget(budget, "graph enumeration")
    pool = [(i, j) for i in range(nodes) for j in range(nodes) if i != j]
    if edges is None:
        edges = len(pool)
    out = []
    for r in range(0, min(edges, len(pool)) + 1):
        for combo in combinations(pool, r):
            bud.tick()
            if acyclic and _has_cycle(nodes, combo):
                continue
            out.append(graph_from_edges(nodes, list(combo)))
    return out


def _graph_iso(A: ReflexiveGraph, B: ReflexiveGraph) -> bool:
    if A.n_node != B.n_node or len(A.dom) != len(B.dom):
        return False
    pa = sorted(zip(A.dom[A.n_node:], A.cod[A.n_node:]))
    pb = sorted(zip(B.dom[B.n_node:], B.cod[B.n_node:]))
    for perm in permutations(range(A.n_node)):
        if sorted((perm[d], perm[c]) for d, c in pa) == pb:
            return True
    return False


def graph_iso_classes(graphs) -> list[ReflexiveGraph]:
    reps: list[ReflexiveGraph] = []
    for G in graphs:
        if not any(_graph_iso(G, H) for H in reps):
            reps.append(G)
    return reps


def enumerate_maps(inst: EmInstance, spaces,
                   budget: "int | Budget | None" = None) -> list[CorpusMap]:
    """Every map between every ordered pair of corpus spaces, tagged with
    the space indices."""
    bud = as_budget(budget, "map enumeration")
    out = []
    for i, A in enumerate(spaces):
        for j, B in enumerate(spaces):
            for f in inst.maps(A, B):
                bud.tick()
                out.append(CorpusMap(i, j, f))
    return out


def _stratified_sample(maps: list[CorpusMap], cap: int,
                       rng: random.Random) -> list[CorpusMap]:
    """Seed-deterministic sample stratified by (source, target) pair:
    proportional quotas, every nonempty pair keeps at least one map."""
    if len(maps) <= cap:
        return maps
    groups: dict[tuple[int, int], list[CorpusMap]] = defaultdict(list)
    for cm in maps:
        groups[(cm.src, cm.tgt)].append(cm)
    keys = sorted(groups)
    quotas = {k: 1 for k in keys}
    left = cap - len(keys)
    if left < 0:
        # more pairs than the cap: keep the first map of a sampled pair set
        keep_keys = sorted(rng.sample(range(len(keys)), cap))
        return [groups[keys[i]][0] for i in keep_keys]
    weights = {k: len(groups[k]) - 1 for k in keys}
    total = sum(weights.values())
    if total:
        alloc = {k: (left * weights[k]) // total for k in keys}
        spare = left - sum(alloc.values())
        for k in sorted(keys, key=lambda k: -(weights[k] % max(total, 1))):
            if spare <= 0:
                break
            if alloc[k] < weights[k]:
                alloc[k] += 1
                spare -= 1
        for k in keys:
            quotas[k] += alloc[k]
    out = []
    for k in keys:
        g = groups[k]
        q = min(quotas[k], len(g))
        idx = sorted(rng.sample(range(len(g)), q))
        out.extend(g[i] for i in idx)
    return out


def _walking_iso() -> FinCat:
    return fincat_from_parts(2, [(0, 1), (1, 0)], {(2, 3): 0, (3, 2): 1})


def cat_corpus(max_obj: int = 3, max_arr: int = 8, seed: int = 0,
               max_maps: int = 2000,
               budget: "int | Budget | None" = None) -> Corpus:
    """Exhaustive shapes up to (2, 3) plus fixed larger fixtures within the
    bounds; full category enumeration beyond a couple of arrows per object
    is out of reach (the order-8 monoid count alone is in the millions), so
    the larger shapes are a structured family, not a census."""
    bud = as_budget(budget, "cat corpus")
    inst = cat_instance()
    spaces: list[FinCat] = [EMPTY]
    spaces += enumerate_categories(min(max_obj, 2), min(max_arr, 3), bud)
    extras = [
        PARALLEL, _walking_iso(), THREE,
        fincat_from_parts(3, [], {}),            # three isolated objects
        fincat_from_parts(3, [(0, 1)], {}),      # an arrow plus a point
        fincat_from_parts(3, [(0, 2), (1, 2)], {}),   # two arrows in
        fincat_from_parts(3, [(2, 0), (2, 1)], {}),   # two arrows out
    ]
    for X in extras:
        if X.n_obj <= max_obj and X.n_arr <= max_arr:
            if not any(find_isomorphism(X, Y) is not None for Y in spaces
                       if Y.n_obj == X.n_obj and Y.n_arr == X.n_arr):
                spaces.append(X)
    maps = enumerate_maps(inst, spaces, bud)
    rng = random.Random(f"{seed}:cat:maps")
    kept = _stratified_sample(maps, max_maps, rng)
    return Corpus("cat", tuple(spaces), tuple(kept),
                  f"obj<={max_obj},arr<={max_arr}", seed, len(kept) < len(maps))


def pos_corpus(max_n: int = 4, seed: int = 0, max_maps: int = 4000,
               instance: str = "pos", with_maps: bool = True,
               budget: "int | Budget | None" = None) -> Corpus:
    bud = as_budget(budget, "pos corpus")
    inst = pos_lowerset_instance() if instance == "pos" \
        else pos_comprehensive_instance()
    spaces: list[Poset] = []
    for n in range(max_n + 1):
        spaces.extend(poset_iso_classes(enumerate_posets(n, bud)))
    kept: list[CorpusMap] = []
    sampled = False
    if with_maps:
        maps = enumerate_maps(inst, spaces, bud)
        rng = random.Random(f"{seed}:{instance}:maps")
        kept = _stratified_sample(maps, max_maps, rng)
        sampled = len(kept) < len(maps)
    return Corpus(instance, tuple(spaces), tuple(kept),
                  f"elements<={max_n}", seed, sampled)


def gph_corpus(max_nodes: int = 4, seed: int = 0, max_maps: int = 2500,
               budget: "int | Budget | None" = None) -> Corpus:
    bud = as_budget(budget, "gph corpus")
    inst = gph_instance()
    spaces: list[ReflexiveGraph] = []
    for n in range(max_nodes + 1):
        spaces.extend(graph_iso_classes(enumerate_graphs(n, budget=bud)))
    maps = enumerate_maps(inst, spaces, bud)
    rng = random.Random(f"{seed}:gph:maps")
    kept = _stratified_sample(maps, max_maps, rng)
    return Corpus("gph", tuple(spaces), tuple(kept),
                  f"nodes<={max_nodes}", seed, len(kept) < len(maps))


def finset_corpus(max_size: int = 4, seed: int = 0,
                  budget: "int | Budget | None" = None) -> Corpus:
    bud = as_budget(budget, "finset corpus")
    inst = finset_instance()
    spaces = [FinSetObj(k) for k in range(max_size + 1)]
    maps = enumerate_maps(inst, spaces, bud)
    return Corpus("finset", tuple(spaces), tuple(maps),
                  f"size<={max_size}", seed, False)


def standard_corpora(seed: int = 0, budget: "int | Budget | None" = None,
                     max_cat_obj: int = 3, max_cat_arr: int = 8,
                     max_pos: int = 4, max_nodes: int = 4, max_size: int = 4,
                     cat_max_maps: int = 2000, pos_max_maps: int = 4000,
                     gph_max_maps: int = 2500) -> dict[str, Corpus]:
    pos = pos_corpus(max_pos, seed=seed, max_maps=pos_max_maps, budget=budget)
    return {
        "cat": cat_corpus(max_cat_obj, max_cat_arr, seed=seed,
                          max_maps=cat_max_maps, budget=budget),
        "pos": pos,
        "pos-comp": Corpus("pos-comp", pos.spaces, pos.maps, pos.bounds,
                           seed, pos.sampled),
        "gph": gph_corpus(max_nodes, seed=seed, max_maps=gph_max_maps,
                          budget=budget),
        "finset": finset_corpus(max_size, seed=seed, budget=budget),
    }


_REGISTRY: Optional[dict[str, EmInstance]] = None


def instance_registry() -> dict[str, EmInstance]:
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = {
            "cat": cat_instance(),
            "pos": pos_lowerset_instance(),
            "pos-comp": pos_comprehensive_instance(),
            "gph": gph_instance(),
            "finset": finset_instance(),
        }
    return dict(_REGISTRY)


class _CorruptedInstance:
    """Everything delegates to the wrapped instance except in_M, which lies.
    The instance id is kept so shared enumeration caches stay valid (they do
    not consult in_M)."""

    def __init__(self, base: EmInstance):
        self._base = base

    def in_M(self, m) -> bool:
        return True

    def __getattr__(self, attr):
        return getattr(self._base, attr)


def corrupt_instance(base: EmInstance) -> EmInstance:
    return _CorruptedInstance(base)


# ---------------------------------------------------------------------------
# suite plumbing

@dataclass(frozen=True)
class PropertyResult:
    id: str
    title: str
    instances: tuple
    status: str                      # pass | fail | skip
    cases: int
    sampled: bool
    reason: str = ""
    counterexample: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "id": self.id, "title": self.title,
            "instances": list(self.instances), "status": self.status,
            "cases": self.cases, "sampled": self.sampled,
            "reason": self.reason, "counterexample": self.counterexample,
        }


@dataclass(frozen=True)
class SuiteReport:
    results: tuple
    corpora: tuple

    def passed(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def failures(self) -> list[PropertyResult]:
        return [r for r in self.results if r.status == "fail"]

    def to_json(self) -> dict:
        return {
            "corpora": [dict(c) for c in self.corpora],
            "properties": [r.to_json() for r in self.results],
            "passed": self.passed(),
        }

    def render(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def summary_rows(self) -> list[tuple]:
        return [(r.id, r.status, ",".join(r.instances), r.cases,
                 "yes" if r.sampled else "no", r.reason)
                for r in self.results]


@dataclass
class PropCtx:
    inst: EmInstance
    corpus: Corpus
    bud: Budget
    rng: random.Random
    cap: int


def _render_value(v):
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    if isinstance(v, (list, tuple)):
        return [_render_value(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _render_value(x) for k, x in v.items()}
    try:
        return th.map_json(v)
    except Exception:
        return repr(v)


def _cx(ctx: PropCtx, **kw) -> dict:
    out = {"instance": ctx.corpus.instance}
    for k, v in kw.items():
        out[k] = _render_value(v)
    return out


def _sample(ctx: PropCtx, items, cap: Optional[int] = None):
    items = list(items)
    lim = ctx.cap if cap is None else min(cap, ctx.cap)
    if len(items) <= lim:
        return items, False
    keep = sorted(ctx.rng.sample(range(len(items)), lim))
    return [items[i] for i in keep], True


def _maps(ctx: PropCtx) -> list:
    return [cm.map for cm in ctx.corpus.maps]


def _comp_pairs(ctx: PropCtx) -> list:
    by_src = defaultdict(list)
    for cm in ctx.corpus.maps:
        by_src[cm.src].append(cm.map)
    out = []
    for cm in ctx.corpus.maps:
        for g in by_src.get(cm.tgt, ()):
            out.append((cm.map, g))
    return out


def _same_target_pairs(ctx: PropCtx) -> list:
    by_tgt = defaultdict(list)
    for cm in ctx.corpus.maps:
        by_tgt[cm.tgt].append(cm.map)
    out = []
    for j in sorted(by_tgt):
        ms = by_tgt[j]
        for p in ms:
            for q in ms:
                out.append((p, q, j))
    return out


def _maps_into(ctx: PropCtx, j: int) -> list:
    return [cm.map for cm in ctx.corpus.maps if cm.tgt == j]


def _maps_out_of(ctx: PropCtx, j: int) -> list:
    return [cm.map for cm in ctx.corpus.maps if cm.src == j]


# ---------------------------------------------------------------------------
# factorization-system properties

def _fs01(ctx):
    ms, s = _sample(ctx, _maps(ctx))
    for f in ms:
        both = in_E(ctx.inst, f) and ctx.inst.in_M(f)
        inv = ctx.inst.is_invertible(f)
        if both != inv:
            return len(ms), s, _cx(ctx, map=f, e_and_m=both, invertible=inv)
    return len(ms), s, None


def _fs02(ctx):
    m_table = {id(cm.map): ctx.inst.in_M(cm.map) for cm in ctx.corpus.maps}
    prs = [(a, b) for a, b in _comp_pairs(ctx) if m_table[id(b)]]
    prs, s = _sample(ctx, prs)
    for m, m2 in prs:
        if m_table[id(m)] != ctx.inst.in_M(ctx.inst.compose(m, m2)):
            return len(prs), s, _cx(ctx, first=m, second=m2)
    return len(prs), s, None


def _fs03(ctx):
    by_tgt = defaultdict(list)
    for cm in ctx.corpus.maps:
        by_tgt[cm.tgt].append(cm.map)
    prs = []
    for cm in ctx.corpus.maps:
        if ctx.inst.in_M(cm.map):
            for f in by_tgt.get(cm.tgt, ()):
                prs.append((f, cm.map))
    prs, s = _sample(ctx, prs, 600)
    for f, m in prs:
        pb = ctx.inst.pullback(f, m)
        if not ctx.inst.in_M(pb.to_left):
            return len(prs), s, _cx(ctx, along=f, discrete=m)
    return len(prs), s, None


def _fs04(ctx):
    ms = _maps(ctx)
    es = [f for f in ms if in_E(ctx.inst, f)]
    mms = [f for f in ms if ctx.inst.in_M(f)]
    prs = [(e, m) for e in es for m in mms]
    prs, s = _sample(ctx, prs, 250)
    for e, m in prs:
        rep = check_orthogonal(ctx.inst, e, m, ctx.bud)
        if not rep.holds:
            return len(prs), s, _cx(ctx, e=e, m=m, detail=rep.failure)
    return len(prs), s, None


def _fs05(ctx):
    ms, s = _sample(ctx, _maps(ctx))
    # universality quantifies over every competing discrete space, which
    # explodes on dense four-point codomains; outside cat (whose corpus the
    # acceptance contract pins to an exhaustive run) it gets a sub-cap
    uni_cap = ctx.cap if ctx.corpus.instance == "cat" else min(ctx.cap, 120)
    uni = [p for p in ms if len(ctx.inst.points(ctx.inst.cod(p))) <= 3]
    if len(uni) > uni_cap:
        keep = sorted(ctx.rng.sample(range(len(uni)), uni_cap))
        uni = [uni[i] for i in keep]
        s = True
    uni_ids = {id(p) for p in uni}
    for p in ms:
        fac = ctx.inst.factorize(p)
        if not ctx.inst.map_eq(ctx.inst.compose(fac.e, fac.m), p):
            return len(ms), s, _cx(ctx, map=p, reason="does not recompose")
        if not in_E(ctx.inst, fac.e) or not ctx.inst.in_M(fac.m):
            return len(ms), s, _cx(ctx, map=p, reason="parts not in E/M")
        if id(p) in uni_ids:
            rep = reflection_universality_check(ctx.inst, p, fac.e, fac.m,
                                                size_bound=2, budget=ctx.bud)
            if not rep.holds:
                return len(ms), s, _cx(ctx, map=p, detail=rep.failure)
    return len(ms), s, None


def _fs06(ctx):
    pool = _maps(ctx)
    cap = 400
    if ctx.corpus.instance == "gph":
        # map spaces over dense four-node bases are too large to search
        pool = [p for p in pool
                if len(ctx.inst.points(ctx.inst.cod(p))) <= 3]
        cap = 120
    ms, s = _sample(ctx, pool, cap)
    n = 0
    for p in ms:
        fac = ctx.inst.factorize(p)
        if _total_points(ctx, fac.m) > 6:
            s = True
            continue
        n += 1
        if not factorization_unique_up_to_iso(ctx.inst, p, fac.e, fac.m,
                                              ctx.bud):
            return n, s, _cx(ctx, map=p)
    return n, s, None


def _total_points(ctx, m) -> int:
    return len(ctx.inst.points(ctx.inst.dom(m)))


def _fs07(ctx):
    prs, s = _sample(ctx, _comp_pairs(ctx), 400)
    n = 0
    for p, f in prs:
        lhs = ctx.inst.factorize(ctx.inst.compose(p, f)).m
        rhs = direct_image(ctx.inst, f, ctx.inst.factorize(p).m)
        # iso search between reflections with large totals explodes
        if _total_points(ctx, lhs) > 6 or _total_points(ctx, rhs) > 6:
            s = True
            continue
        n += 1
        if iso_over_base(ctx.inst, lhs, rhs, ctx.bud) is None:
            return n, s, _cx(ctx, first=p, second=f)
    return n, s, None


def _fs08(ctx):
    e_table = {id(cm.map): in_E(ctx.inst, cm.map) for cm in ctx.corpus.maps}
    prs = [(e, f) for e, f in _comp_pairs(ctx) if e_table[id(e)]]
    prs, s = _sample(ctx, prs, 400)
    n = 0
    for e, f in prs:
        lhs = ctx.inst.factorize(ctx.inst.compose(e, f)).m
        rhs = ctx.inst.factorize(f).m
        if _total_points(ctx, lhs) > 6 or _total_points(ctx, rhs) > 6:
            s = True
            continue
        n += 1
        if iso_over_base(ctx.inst, lhs, rhs, ctx.bud) is None:
            return n, s, _cx(ctx, final=e, map=f)
    return n, s, None


# ---------------------------------------------------------------------------
# comprehensive-factorization properties

def _cf01(ctx):
    # pos keeps the order-theoretic notion; pos-comp is the thin-category
    # instance, where finality additionally needs connected slices
    if ctx.corpus.instance == "cat":
        oracle = is_final_cat
    elif ctx.corpus.instance == "pos-comp":
        oracle = lambda f: is_final_cat(pos_map_to_functor(f))
    else:
        oracle = is_cofinal
    ms, s = _sample(ctx, _maps(ctx))
    for f in ms:
        if in_E(ctx.inst, f) != oracle(f):
            return len(ms), s, _cx(ctx, map=f, in_E=in_E(ctx.inst, f))
    return len(ms), s, None


def _cf02(ctx):
    ms, s = _sample(ctx, _maps(ctx), 300)
    n = 0
    for p in ms:
        fac = ctx.inst.factorize(p)
        X = ctx.inst.cod(p)
        for x in range(X.n_obj):
            n += 1
            fiber = sum(1 for w in range(fac.m.src.n_obj)
                        if fac.m.obj_map[w] == x)
            cm, _, _ = comma(point_functor(X, x), p)
            if fiber != components(cm)[0].size:
                return n, s, _cx(ctx, map=p, object=x, fiber=fiber)
    return n, s, None


def _cf03(ctx):
    by_tgt = defaultdict(list)
    for cm in ctx.corpus.maps:
        by_tgt[cm.tgt].append(cm.map)
    prs = []
    for cm in ctx.corpus.maps:
        if ctx.inst.in_M(cm.map):
            for f in by_tgt.get(cm.tgt, ()):
                prs.append((f, cm.map))
    prs, s = _sample(ctx, prs, 400)
    for f, m in prs:
        pb = ctx.inst.pullback(f, m)
        if is_discrete_fibration(pb.to_left) is None:
            return len(prs), s, _cx(ctx, along=f, discrete=m)
    return len(prs), s, None


def _cf04(ctx):
    ms, s = _sample(ctx, _maps(ctx), 200)
    n = 0
    for f in ms:
        Y = ctx.inst.cod(f)
        for y in ctx.inst.points(Y):
            n += 1
            nb = th.neighborhood(ctx.inst, Y, y)
            delta = ctx.inst.pullback(f, nb.m).to_left
            cm, pa, _ = comma(f, y)
            if iso_over_base(ctx.inst, delta, pa, ctx.bud) is None:
                return n, s, _cx(ctx, map=f, point=y)
    return n, s, None


# ---------------------------------------------------------------------------
# neighborhood properties

def _nb01(ctx):
    triples = []
    for X in ctx.corpus.spaces:
        discs = ctx.inst.discrete_spaces_over(X, 2, ctx.bud)
        for x in ctx.inst.points(X):
            for m in discs:
                triples.append((x, m))
    triples, s = _sample(ctx, triples, 800)
    for x, m in triples:
        if not th.nb_initial_universality(ctx.inst, x, m, ctx.bud):
            return len(triples), s, _cx(ctx, point=x, discrete=m)
    return len(triples), s, None


def _nb02(ctx):
    cases = []
    for g in _maps(ctx):
        T = ctx.inst.dom(g)
        for t in ctx.inst.points(T):
            if in_E(ctx.inst, t):
                cases.append((t, g))
    cases, s = _sample(ctx, cases, 500)
    for t, g in cases:
        if not th.nb_final_universality(ctx.inst, t, g, ctx.bud):
            return len(cases), s, _cx(ctx, final_point=t, map=g)
    return len(cases), s, None


# ---------------------------------------------------------------------------
# colimit theorems

def _thm00(ctx):
    cases = []
    for j, X in enumerate(ctx.corpus.spaces):
        finals = [x for x in ctx.inst.points(X) if in_E(ctx.inst, x)]
        if not finals:
            continue
        for p in _maps_into(ctx, j):
            cases.append((p, finals[0]))
    cases, s = _sample(ctx, cases, 400)
    for p, x in cases:
        if in_E(ctx.inst, p) != th.is_absolute_colimit(ctx.inst, p, x, ctx.bud):
            return len(cases), s, _cx(ctx, map=p, final_point=x)
    return len(cases), s, None


def _thm01(ctx):
    ms, s = _sample(ctx, ctx.corpus.maps, 150)
    n = 0
    for cm in ms:
        col = th.colimit(ctx.inst, cm.map, ctx.bud)
        if col is None or not th.is_absolute_colimit(ctx.inst, cm.map,
                                                     col.vertex, ctx.bud):
            continue
        outs, s2 = _sample(ctx, _maps_out_of(ctx, cm.tgt), 8)
        s = s or s2
        for f in outs:
            n += 1
            if not th.is_absolute_colimit(
                    ctx.inst, ctx.inst.compose(cm.map, f),
                    ctx.inst.compose(col.vertex, f), ctx.bud):
                return n, s, _cx(ctx, map=cm.map, along=f)
    return n, s, None


def _iso_reflected_pairs(ctx, cap):
    pool = _same_target_pairs(ctx)
    if ctx.corpus.instance == "gph":
        # iso search between reflections over dense four-node bases blows up
        pool = [(p, q, j) for p, q, j in pool
                if len(ctx.inst.points(ctx.corpus.spaces[j])) <= 3]
    prs, s = _sample(ctx, pool, cap)
    out = []
    for p, q, j in prs:
        mp = ctx.inst.factorize(p).m
        mq = ctx.inst.factorize(q).m
        if _total_points(ctx, mp) > 6 or _total_points(ctx, mq) > 6:
            s = True
            continue
        if iso_over_base(ctx.inst, mp, mq, ctx.bud) is not None:
            out.append((p, q, j))
    return out, s


def _colim_agree(ctx, p, q):
    c1 = th.colimit(ctx.inst, p, ctx.bud)
    c2 = th.colimit(ctx.inst, q, ctx.bud)
    if (c1 is None) != (c2 is None):
        return False
    if c1 is None:
        return True
    X = ctx.inst.cod(p)
    n1 = th.neighborhood(ctx.inst, X, c1.vertex)
    n2 = th.neighborhood(ctx.inst, X, c2.vertex)
    return iso_over_base(ctx.inst, n1.m, n2.m, ctx.bud) is not None


def _thm02(ctx):
    pairs, s = _iso_reflected_pairs(ctx, 150)
    by_src = defaultdict(list)
    for cm in ctx.corpus.maps:
        by_src[cm.src].append(cm.map)
    n = 0
    for p, q, j in pairs:
        outs, s2 = _sample(ctx, by_src.get(j, []), 5)
        s = s or s2
        for f in outs:
            n += 1
            if not _colim_agree(ctx, ctx.inst.compose(p, f),
                                ctx.inst.compose(q, f)):
                return n, s, _cx(ctx, first=p, second=q, along=f)
    return n, s, None


def _thm03(ctx):
    pairs, s = _iso_reflected_pairs(ctx, 350)
    for p, q, j in pairs:
        if not _colim_agree(ctx, p, q):
            return len(pairs), s, _cx(ctx, first=p, second=q)
    return len(pairs), s, None


def _thm04(ctx):
    final_of: dict[int, Any] = {}
    for j, W in enumerate(ctx.corpus.spaces):
        for t in ctx.inst.points(W):
            if in_E(ctx.inst, t):
                final_of[j] = t
                break
    pool = [(cm.map, final_of[cm.src]) for cm in ctx.corpus.maps
            if cm.src in final_of]
    cases, s = _sample(ctx, pool, 300)
    n = 0
    for p, t in cases:
        n += 1
        vertex = ctx.inst.compose(t, p)
        col = th.colimit(ctx.inst, p, ctx.bud)
        if col is None or not th.is_absolute_colimit(ctx.inst, p, vertex,
                                                     ctx.bud):
            return n, s, _cx(ctx, map=p, expected_vertex=vertex)
    return n, s, None


def _thm05(ctx):
    pool = _maps(ctx)
    if ctx.corpus.instance == "gph":
        pool = [p for p in pool
                if len(ctx.inst.points(ctx.inst.cod(p))) <= 3]
    ms, s = _sample(ctx, pool, 250)
    n = 0
    for p in ms:
        fac = ctx.inst.factorize(p)
        W = ctx.inst.dom(p)
        T = ctx.inst.dom(fac.m)
        id_w = ctx.inst.identity(W)
        id_t = ctx.inst.identity(T)
        # retractions of the reflection unit found in the slice over the
        # codomain must already be two-sided
        for r in ctx.inst.maps_over(fac.m, p, ctx.bud):
            if ctx.inst.map_eq(ctx.inst.compose(fac.e, r), id_w):
                n += 1
                if not ctx.inst.map_eq(ctx.inst.compose(r, fac.e), id_t):
                    return n, s, _cx(ctx, map=p, retraction=r)
    return n, s, None


def _thm06(ctx):
    es = [f for f in _maps(ctx) if in_E(ctx.inst, f)]
    es, s = _sample(ctx, es, 300)
    n = 0
    for e in es:
        col = th.colimit(ctx.inst, e, ctx.bud)
        if col is None:
            continue
        n += 1
        if not in_E(ctx.inst, col.vertex) or \
                not th.is_absolute_colimit(ctx.inst, e, col.vertex, ctx.bud):
            return n, s, _cx(ctx, final=e, vertex=col.vertex)
    return n, s, None


def _thm07(ctx):
    n = 0
    for j, X in enumerate(ctx.corpus.spaces):
        pts = ctx.inst.points(X)
        lhs = any(in_E(ctx.inst, x) for x in pts)
        finals = [x for x in pts if in_E(ctx.inst, x)]
        finals += [f for f in _maps_into(ctx, j) if in_E(ctx.inst, f)]
        finals, _ = _sample(ctx, finals, 12)
        rhs = any(th.colimit(ctx.inst, e, ctx.bud) is not None
                  for e in finals)
        n += 1
        if lhs != rhs:
            return n, False, _cx(ctx, space=repr(X), has_final_point=lhs)
    return n, False, None


def _thm08(ctx):
    ms, s = _sample(ctx, _maps(ctx), 120)
    n = 0
    for f in ms:
        Y = ctx.inst.cod(f)
        for y in ctx.inst.points(Y):
            n += 1
            lhs = th.universal_displacement(ctx.inst, f, y, ctx.bud) is not None
            nb = th.neighborhood(ctx.inst, Y, y)
            delta = ctx.inst.pullback(f, nb.m).to_left
            col = th.colimit(ctx.inst, delta, ctx.bud)
            rhs = col is not None and th.preserves_colimit(ctx.inst, f,
                                                           col.kernel, ctx.bud)
            if lhs != rhs:
                return n, s, _cx(ctx, map=f, point=y, universal=lhs)
    return n, s, None


def _thm09(ctx):
    ms, s = _sample(ctx, _maps(ctx), 60)
    n = 0
    for f in ms:
        if th.is_adjunctible(ctx.inst, f, ctx.bud) is None:
            continue
        n += 1
        rep = th.is_colimit_preserving(ctx.inst, f, 2, ctx.bud)
        if not rep.holds:
            return n, s, _cx(ctx, map=f, detail=rep.failure)
    return n, s, None


# ---------------------------------------------------------------------------
# kernel/image and degenerate colimits

def _col01(ctx):
    prs, s = _sample(ctx, _comp_pairs(ctx), 80)
    n = 0
    for p, f in prs:
        if _total_points(ctx, ctx.inst.factorize(
                ctx.inst.compose(p, f)).m) > 6:
            s = True
            continue
        X = ctx.inst.cod(p)
        for y in ctx.inst.points(X):
            for cone in th.cones(ctx.inst, p, y, ctx.bud):
                n += 1
                if not th.kernel_image_commutes(f, p, cone, ctx.bud):
                    return n, s, _cx(ctx, map=p, along=f, vertex=y)
    return n, s, None


def _path_counts(G: ReflexiveGraph):
    n = G.n_node
    succ = defaultdict(list)
    for e in range(n, len(G.dom)):
        succ[G.dom[e]].append(G.cod[e])
    memo: dict[tuple[int, int], int] = {}

    def paths(u, z):
        if (u, z) in memo:
            return memo[(u, z)]
        total = 1 if u == z else 0
        for v in succ[u]:
            total += paths(v, z)
        memo[(u, z)] = total
        return total

    return paths


def _initial_point_oracle(inst: EmInstance, X) -> Optional[int]:
    """Instance-independent statement, instance-specific computation: the
    point with exactly one displacement to every point."""
    name = inst.name
    if name == "cat":
        for y in range(X.n_obj):
            if all(sum(1 for a in range(X.n_arr)
                       if X.dom[a] == y and X.cod[a] == z) == 1
                   for z in range(X.n_obj)):
                return y
        return None
    if name in ("pos", "pos-comp"):
        full = (1 << X.n) - 1
        for y in range(X.n):
            if X.le[y] == full:
                return y
        return None
    if name == "gph":
        paths = _path_counts(X)
        for y in range(X.n_node):
            if all(paths(y, z) == 1 for z in range(X.n_node)):
                return y
        return None
    if name == "finset":
        return 0 if X.size == 1 else None
    return None


def _empty_map(inst: EmInstance, X):
    name = inst.name
    if name == "cat":
        return FinFunctor(EMPTY, X, (), ())
    if name in ("pos", "pos-comp"):
        return PosetMap(Poset((), ()), X, ())
    if name == "gph":
        return GraphMap(graph_from_edges(0, []), X, (), ())
    return FinSetMap(FinSetObj(0), X, ())


def _col02(ctx):
    n = 0
    for X in ctx.corpus.spaces:
        for x in ctx.inst.points(X):
            n += 1
            if not th.is_absolute_colimit(ctx.inst, x, x, ctx.bud):
                return n, False, _cx(ctx, point=x)
        p0 = _empty_map(ctx.inst, X)
        col = th.colimit(ctx.inst, p0, ctx.bud)
        want = _initial_point_oracle(ctx.inst, X)
        n += 1
        if (col is None) != (want is None):
            return n, False, _cx(ctx, space=repr(X), oracle=want)
        if col is not None and col.vertex_index != want:
            return n, False, _cx(ctx, space=repr(X), oracle=want,
                                 vertex=col.vertex_index)
    return n, False, None


# ---------------------------------------------------------------------------
# power objects (lower-set instance)

def _pow01(ctx):
    n = 0
    for X in ctx.corpus.spaces:
        n += 1
        pw = pos_power_object(X)
        rep = th.check_yoneda_map(ctx.inst, pw.yoneda, size_bound=3,
                                  budget=ctx.bud)
        if not rep.holds:
            return n, False, _cx(ctx, space=repr(X), detail=rep.failure)
    return n, False, None


def _pow02(ctx):
    ms, s = _sample(ctx, _maps(ctx), 250)
    for p in ms:
        y = pos_power_object(ctx.inst.cod(p)).yoneda
        if not th.yoneda_reflection_check(ctx.inst, y, p, ctx.bud):
            return len(ms), s, _cx(ctx, map=p)
    return len(ms), s, None


def _pow03(ctx):
    prs, s = _sample(ctx, _same_target_pairs(ctx), 250)
    n = 0
    for p, q, j in prs:
        n += 1
        X = ctx.inst.cod(p)
        y = pos_power_object(X).yoneda
        mp = ctx.inst.factorize(p).m
        mq = ctx.inst.factorize(q).m
        lhs = iso_over_base(ctx.inst, mp, mq, ctx.bud) is not None
        c1 = th.colimit(ctx.inst, ctx.inst.compose(p, y), ctx.bud)
        c2 = th.colimit(ctx.inst, ctx.inst.compose(q, y), ctx.bud)
        rhs = c1 is not None and c2 is not None and \
            c1.vertex_index == c2.vertex_index
        if lhs != rhs:
            return n, s, _cx(ctx, first=p, second=q, reflections_iso=lhs)
    es, s2 = _sample(ctx, _maps(ctx), 150)
    for e in es:
        n += 1
        X = ctx.inst.cod(e)
        y = pos_power_object(X).yoneda
        ce = th.colimit(ctx.inst, ctx.inst.compose(e, y), ctx.bud)
        cy = th.colimit(ctx.inst, y, ctx.bud)
        rhs = ce is not None and cy is not None and \
            ce.vertex_index == cy.vertex_index
        if in_E(ctx.inst, e) != rhs:
            return n, s or s2, _cx(ctx, map=e, final=in_E(ctx.inst, e))
    return n, s or s2, None


def _pow04(ctx):
    n = 0
    for X in ctx.corpus.spaces:
        if X.n > 3:
            continue
        hm = pos_hom_map(X)
        for t in (hm.transpose_left, hm.transpose_right):
            n += 1
            rep = th.check_yoneda_map(ctx.inst, t, size_bound=3, budget=ctx.bud)
            if not rep.holds:
                return n, False, _cx(ctx, space=repr(X), transpose=t,
                                     detail=rep.failure)
    return n, False, None


# ---------------------------------------------------------------------------
# duality

def _dual01(ctx):
    prs, s = _sample(ctx, _same_target_pairs(ctx), 200)
    for p, q, j in prs:
        if not th.check_dual1(ctx.inst, p, q, ctx.bud):
            return len(prs), s, _cx(ctx, first=p, second=q)
        if ctx.corpus.instance == "cat":
            # the same count recomputed through the comma category, an
            # independent construction
            count = th.gamma_components(
                ctx.inst,
                ctx.inst.pullback(p, ctx.inst.factorize(q).m).space,
                ctx.bud)
            cm, _, _ = comma(p, q)
            if count != components(cm)[0].size:
                return len(prs), s, _cx(ctx, first=p, second=q,
                                        pullback_count=count,
                                        comma_count=components(cm)[0].size)
    return len(prs), s, None


def _dual02(ctx):
    ms, s = _sample(ctx, _maps(ctx), 200)
    n = 0
    for p in ms:
        X = ctx.inst.cod(p)
        for x in ctx.inst.points(X):
            n += 1
            if not th.reflection_formula_check(ctx.inst, p, x, ctx.bud):
                return n, s, _cx(ctx, map=p, point=x)
    return n, s, None


# ---------------------------------------------------------------------------
# convergence and the arrow object

def _generator_fixture(name: str):
    if name == "cat":
        return TWO, point_functor(TWO, 1), True
    if name in ("pos", "pos-comp"):
        t = PosetMap(chain(1), chain(2), (1,))
        return chain(2), t, name == "pos-comp"
    if name == "gph":
        return E1, GraphMap(DOT, E1, (1,), (1,)), True
    if name == "finset":
        return FinSetObj(2), FinSetMap(FinSetObj(1), FinSetObj(2), (1,)), False
    raise ValidationError(f"no generator fixture for instance {name!r}")


def _generator_pool(ctx) -> list:
    name = ctx.corpus.instance
    if name == "cat":
        return [X for X in ctx.corpus.spaces
                if X.n_obj <= 2 and X.n_arr <= 4]
    if name in ("pos", "pos-comp"):
        return [X for X in ctx.corpus.spaces if X.n <= 3]
    if name == "gph":
        return [X for X in ctx.corpus.spaces if X.n_node <= 3]
    return list(ctx.corpus.spaces)


def _ao01(ctx):
    T, t, expected = _generator_fixture(ctx.corpus.instance)
    claim = ao.check_generator(ctx.inst, T, t, 4, _generator_pool(ctx),
                               ctx.bud)
    if claim.holds != expected:
        return claim.maps_checked, False, _cx(
            ctx, expected=expected, got=claim.holds,
            witness=claim.counterexample)
    if not expected and claim.counterexample is None:
        return claim.maps_checked, False, _cx(ctx, reason="missing witness")
    return claim.maps_checked, False, None


def _ao02(ctx):
    T, t, _ = _generator_fixture(ctx.corpus.instance)
    n = 0
    for S in ctx.corpus.spaces:
        if len(ctx.inst.points(S)) > 4:
            continue
        n += 1
        if not ao.check_set_characterization(ctx.inst, T, t, S, ctx.bud):
            return n, False, _cx(ctx, space=repr(S))
    return n, False, None


def _ao03(ctx):
    n = 0
    for X in ctx.corpus.spaces:
        if X.n_arr > 8:
            continue
        n += 1
        rep = ao.lawvere_pushout_check(X, ctx.bud)
        if not rep.holds:
            return n, False, _cx(ctx, space=repr(X),
                                 detail=rep.counterexample)
    return n, False, None


def _bijective_functor(F: FinFunctor) -> bool:
    return sorted(F.obj_map) == list(range(F.tgt.n_obj)) and \
        sorted(F.arr_map) == list(range(F.tgt.n_arr))


def _ao04(ctx):
    n = 0
    for X in ctx.corpus.spaces:
        if not ctx.inst.points(X) and ctx.corpus.instance != "cat":
            continue
        n += 1
        star = ao.x_star(ctx.inst, X, ctx.bud)
        ad = th.adherence(ctx.inst, X, ctx.bud)
        phi = ao.canonical_functor(ctx.inst, X, star, ad, ctx.bud)
        if not _bijective_functor(phi):
            return n, False, _cx(ctx, space=repr(X))
        if ctx.corpus.instance == "cat" and \
                find_isomorphism(star.cat, X) is None:
            return n, False, _cx(ctx, space=repr(X),
                                 reason="x-star not isomorphic to the space")
    return n, False, None


def _ao05(ctx):
    cases = []
    for X in ctx.corpus.spaces:
        for m in ctx.inst.discrete_spaces_over(X, 2, ctx.bud):
            cases.append((X, m))
    cases, s = _sample(ctx, cases, 60)
    for X, m in cases:
        if not ao.composite_lifting_check(ctx.inst, X, m, ctx.bud):
            return len(cases), s, _cx(ctx, space=repr(X), discrete=m)
    return len(cases), s, None


def _ao06(ctx):
    data = ao.arrow_object_data(ctx.inst)
    cases = []
    for X in ctx.corpus.spaces:
        for l in ctx.inst.maps(data.arrow, X):
            cases.append(l)
    cases, s = _sample(ctx, cases, 120)
    for l in cases:
        if not ao.arrow_colimit_check(ctx.inst, l, ctx.bud):
            return len(cases), s, _cx(ctx, arrow=l)
    return len(cases), s, None


def _ao07(ctx):
    facts = ao.gluing_leg_facts(ctx.inst)
    if not facts["leg_second_final"] or not facts["glued_target_final"]:
        return 2, False, _cx(ctx, **facts)
    return 2, False, None


def _ao08(ctx):
    ms, s = _sample(ctx, _maps(ctx), 120)
    for m in ms:
        if not ao.star_discreteness_check(ctx.inst, m, ctx.bud):
            return len(ms), s, _cx(ctx, map=m)
    return len(ms), s, None


def _ao09(ctx):
    if ctx.corpus.instance == "gph":
        try:
            ao.arrow_object_data(ctx.inst)
        except PushoutUnavailable:
            return 1, False, None
        return 1, False, _cx(ctx, reason="gluing unexpectedly available")
    n = 0
    for X in ctx.corpus.spaces:
        n += 1
        star = ao.x_star(ctx.inst, X, ctx.bud)
        if star.cat.n_obj != len(ctx.inst.points(X)):
            return n, False, _cx(ctx, space=repr(X))
    return n, False, None


def _ao10(ctx):
    ms, s = _sample(ctx, _maps(ctx), 150)
    for f in ms:
        if not ao.naturality_check(ctx.inst, f, ctx.bud):
            return len(ms), s, _cx(ctx, map=f)
    return len(ms), s, None


# ---------------------------------------------------------------------------
# instance-level facts

def _ins01(ctx):
    ms, s = _sample(ctx, _maps(ctx), 500)
    for p in ms:
        X = ctx.inst.cod(p)
        mask = 0
        for v in p.values:
            mask |= 1 << v
        sup = sup_of_mask(X, mask)
        col = th.colimit(ctx.inst, p, ctx.bud)
        if (col is None) != (sup is None):
            return len(ms), s, _cx(ctx, map=p, sup=sup)
        if col is None:
            continue
        if col.vertex_index != sup:
            return len(ms), s, _cx(ctx, map=p, sup=sup,
                                   vertex=col.vertex_index)
        if ctx.corpus.instance == "pos":
            # in the thin-category instance attainment is not enough: the
            # slice over each lower point must also be connected
            attained = bool((mask >> sup) & 1) if mask else False
            if th.is_absolute_colimit(ctx.inst, p, col.vertex,
                                      ctx.bud) != attained:
                return len(ms), s, _cx(ctx, map=p, maximum_attained=attained)
    return len(ms), s, None


def _ins02(ctx):
    ms, s = _sample(ctx, _maps(ctx), 150)
    for f in ms:
        X = ctx.inst.cod(f)
        rhs = True
        for y in range(X.n):
            mask = 0
            for x in range(ctx.inst.dom(f).n):
                fx = f.values[x]
                if (X.le[fx] >> y) & 1:
                    mask |= 1 << fx
            if sup_of_mask(X, mask) != y:
                rhs = False
                break
        if th.is_dense(ctx.inst, f, ctx.bud) != rhs:
            return len(ms), s, _cx(ctx, map=f, oracle=rhs)
    return len(ms), s, None


def _ins03(ctx):
    t = PosetMap(chain(1), chain(2), (1,))
    w = PosetMap(antichain(2), chain(1), (0, 0))
    ortho = check_orthogonal(ctx.inst, t, w, ctx.bud).holds
    if not ortho or ctx.inst.in_M(w) or not in_E(ctx.inst, w):
        return 3, False, _cx(ctx, orthogonal=ortho,
                             in_M=ctx.inst.in_M(w), in_E=in_E(ctx.inst, w))
    return 3, False, None


def _ins04(ctx):
    c2, c3 = chain(2), chain(3)
    n = 0
    for X in ctx.corpus.spaces:
        if X.n > 4:
            continue
        fs = ctx.inst.maps(c2, X)
        pairs = [(f, g) for f in fs for g in fs
                 if f.values[1] == g.values[0]]
        hs = ctx.inst.maps(c3, X)
        n += 1
        if len(hs) != len(pairs):
            return n, False, _cx(ctx, space=repr(X), triples=len(hs),
                                 pairs=len(pairs))
        for f, g in pairs:
            n += 1
            want = (f.values[0], f.values[1], g.values[1])
            if sum(1 for h in hs if h.values == want) != 1:
                return n, False, _cx(ctx, space=repr(X), first=f, second=g)
    return n, False, None


def _ins05(ctx):
    n = 0
    for G in ctx.corpus.spaces:
        n += 1
        ad = th.adherence(ctx.inst, G, ctx.bud)
        fc, _ = free_category(G, ctx.bud)
        if find_isomorphism(ad.cat, fc) is None:
            return n, False, _cx(ctx, space=repr(G))
    return n, False, None


def _ins06(ctx):
    ci = instance_registry()["cat"]
    ms, s = _sample(ctx, _maps(ctx), 250)
    n = 0
    for p in ms:
        n += 1
        col_g = th.colimit(ctx.inst, p, ctx.bud)
        F = free_functor(p)
        col_c = th.colimit(ci, F, ctx.bud)
        if (col_g is None) != (col_c is None):
            return n, s, _cx(ctx, map=p)
        if col_g is None:
            continue
        if col_g.vertex_index != col_c.vertex_index:
            return n, s, _cx(ctx, map=p, graph_vertex=col_g.vertex_index,
                             cat_vertex=col_c.vertex_index)
        if n % 4 == 0:
            a_g = th.is_absolute_colimit(ctx.inst, p, col_g.vertex, ctx.bud)
            a_c = th.is_absolute_colimit(ci, F, col_c.vertex, ctx.bud)
            if a_g != a_c:
                return n, s, _cx(ctx, map=p, graph_absolute=a_g,
                                 cat_absolute=a_c)
    return n, s, None


def _ins07(ctx):
    pool = list(ctx.corpus.spaces)
    for nn in (5, 6):
        fresh: list[ReflexiveGraph] = []
        pairs = [(i, j) for i in range(nn) for j in range(nn) if i != j]
        trials = 0
        while len(fresh) < 20 and trials < 300:
            trials += 1
            k = ctx.rng.randint(nn - 1, nn + 2)
            combo = sorted(ctx.rng.sample(pairs, k))
            if _has_cycle(nn, combo):
                continue
            G = graph_from_edges(nn, combo)
            if any(_graph_iso(G, H) for H in fresh):
                continue
            fresh.append(G)
        pool.extend(fresh)
    n = 0
    for P in pool:
        for y in ctx.inst.maps(DOT, P):
            n += 1
            rep = th.check_yoneda_map(ctx.inst, y, size_bound=2,
                                      budget=ctx.bud)
            if rep.holds:
                return n, True, _cx(ctx, candidate=repr(P), point=y,
                                    reason="a power-object candidate passed")
    return n, True, None


def _ins08(ctx):
    ms, s = _sample(ctx, _maps(ctx))
    for p in ms:
        n_dom = ctx.inst.dom(p).size
        oracle = (n_dom > 0 and len(set(p.values)) == 1) or \
            (n_dom == 0 and ctx.inst.cod(p).size == 1)
        col = th.colimit(ctx.inst, p, ctx.bud)
        if (col is not None) != oracle:
            return len(ms), s, _cx(ctx, map=p, strongly_constant=oracle)
        if col is not None and n_dom and col.vertex_index != p.values[0]:
            return len(ms), s, _cx(ctx, map=p, vertex=col.vertex_index)
    return len(ms), s, None


def _ins09(ctx):
    ms, s = _sample(ctx, _maps(ctx), 350)
    for f in ms:
        bij = len(set(f.values)) == ctx.inst.dom(f).size == ctx.inst.cod(f).size
        if (th.is_adjunctible(ctx.inst, f, ctx.bud) is not None) != bij:
            return len(ms), s, _cx(ctx, map=f, bijective=bij)
    return len(ms), s, None


def _ins10(ctx):
    ms, s = _sample(ctx, _maps(ctx), 350)
    for f in ms:
        surj = len(set(f.values)) == ctx.inst.cod(f).size
        if th.is_dense(ctx.inst, f, ctx.bud) != surj:
            return len(ms), s, _cx(ctx, map=f, surjective=surj)
    return len(ms), s, None


def _ins11(ctx):
    ms, s = _sample(ctx, _maps(ctx), 350)
    for f in ms:
        inj = len(set(f.values)) == ctx.inst.dom(f).size
        if th.is_fully_faithful(ctx.inst, f, ctx.bud) != inj:
            return len(ms), s, _cx(ctx, map=f, injective=inj)
    return len(ms), s, None


# ---------------------------------------------------------------------------
# registry

@dataclass(frozen=True)
class PropertySpec:
    id: str
    title: str
    instances: tuple
    run: Callable = field(compare=False)


_ALL = ("cat", "pos", "pos-comp", "gph", "finset")
_CATPOS = ("cat", "pos", "pos-comp")
_POSES = ("pos", "pos-comp")
_DUAL = ("cat", "pos", "pos-comp", "finset")

PROPERTIES: tuple[PropertySpec, ...] = (
    PropertySpec("FS-01", "E intersect M is exactly the invertible maps",
                 _ALL, _fs01),
    PropertySpec("FS-02", "with the outer map in M, the inner map is in M"
                 " iff the composite is", _ALL, _fs02),
    PropertySpec("FS-03", "M is stable under pullback", _ALL, _fs03),
    PropertySpec("FS-04", "every E map is orthogonal to every M map",
                 _ALL, _fs04),
    PropertySpec("FS-05", "factorize splits into E;M and is universal",
                 _ALL, _fs05),
    PropertySpec("FS-06", "factorizations are unique up to unique iso",
                 _ALL, _fs06),
    PropertySpec("FS-07", "direct image commutes with composition",
                 _ALL, _fs07),
    PropertySpec("FS-08", "composing with a final map keeps the reflection",
                 _ALL, _fs08),
    PropertySpec("CF-01", "in_E agrees with the classical finality oracle",
                 _CATPOS, _cf01),
    PropertySpec("CF-02", "reflection fibers count comma components",
                 ("cat",), _cf02),
    PropertySpec("CF-03", "pullbacks of discrete fibrations keep a witness",
                 ("cat",), _cf03),
    PropertySpec("CF-04", "pulled-back neighborhoods are comma categories",
                 ("cat",), _cf04),
    PropertySpec("NB-01", "neighborhoods are initial among pointed discretes",
                 _ALL, _nb01),
    PropertySpec("NB-02", "neighborhoods are final among pointed spaces",
                 _ALL, _nb02),
    PropertySpec("THM-00", "over a final point, final maps are the absolute"
                 " colimits", _ALL, _thm00),
    PropertySpec("THM-01", "absolute colimits push forward along any map",
                 _ALL, _thm01),
    PropertySpec("THM-02", "iso reflections give the same colimits after"
                 " any map", _ALL, _thm02),
    PropertySpec("THM-03", "iso reflections give the same colimits",
                 _ALL, _thm03),
    PropertySpec("THM-04", "a final domain point makes its image the"
                 " absolute colimit", _ALL, _thm04),
    PropertySpec("THM-05", "retractions of reflection maps are two-sided",
                 _ALL, _thm05),
    PropertySpec("THM-06", "colimits of final maps land on final points,"
                 " absolutely", _ALL, _thm06),
    PropertySpec("THM-07", "final points exist iff some final map has a"
                 " colimit", _ALL, _thm07),
    PropertySpec("THM-08", "universal displacements match preserved"
                 " neighborhood colimits", _ALL, _thm08),
    PropertySpec("THM-09", "adjunctible maps preserve colimits",
                 _ALL, _thm09),
    PropertySpec("COL-01", "kernel of the image equals image of the kernel",
                 ("cat",), _col01),
    PropertySpec("COL-02", "points are their own colimits; empty bases need"
                 " an initial point", _ALL, _col02),
    PropertySpec("POW-01", "lower-set inclusions pass the Yoneda-map check",
                 ("pos",), _pow01),
    PropertySpec("POW-02", "reflections are recovered through the power"
                 " object", ("pos",), _pow02),
    PropertySpec("POW-03", "reflection iso matches colimit agreement in the"
                 " power object", ("pos",), _pow03),
    PropertySpec("POW-04", "both transposes of the hom map are Yoneda maps",
                 ("pos",), _pow04),
    PropertySpec("DUAL-01", "both duality counts agree on all map pairs",
                 _DUAL, _dual01),
    PropertySpec("DUAL-02", "the reflection formula computes fibers",
                 _DUAL, _dual02),
    PropertySpec("AO-01", "the walking arrow generates exactly where"
                 " expected", _ALL, _ao01),
    PropertySpec("AO-02", "discreteness over the point means all arrows are"
                 " constant", ("cat", "pos-comp", "gph"), _ao02),
    PropertySpec("AO-03", "gluing bijections for composable pairs and"
                 " triples", ("cat",), _ao03),
    PropertySpec("AO-04", "the star category is the adherence category",
                 _CATPOS, _ao04),
    PropertySpec("AO-05", "lifting a composite equals composing the lifts",
                 _CATPOS, _ao05),
    PropertySpec("AO-06", "every arrow converges to its target",
                 _CATPOS, _ao06),
    PropertySpec("AO-07", "the long gluing leg and glued target are final",
                 _CATPOS, _ao07),
    PropertySpec("AO-08", "discreteness transfers to the star construction",
                 ("cat", "pos-comp"), _ao08),
    PropertySpec("AO-09", "star categories exist exactly where gluing does",
                 ("pos", "pos-comp", "finset", "gph"), _ao09),
    PropertySpec("AO-10", "transport along a map commutes with the"
                 " canonical functors", _CATPOS, _ao10),
    PropertySpec("INS-01", "poset colimits are sups; absolute iff attained",
                 _POSES, _ins01),
    PropertySpec("INS-02", "poset density means every point is a sup from"
                 " the image", _POSES, _ins02),
    PropertySpec("INS-03", "the antichain collapse is orthogonal yet not"
                 " discrete", ("pos",), _ins03),
    PropertySpec("INS-04", "poset gluing bijections hold although"
                 " generation fails", ("pos",), _ins04),
    PropertySpec("INS-05", "graph adherence is the free category",
                 ("gph",), _ins05),
    PropertySpec("INS-06", "graph colimits agree with free-category"
                 " colimits", ("gph",), _ins06),
    PropertySpec("INS-07", "no Yoneda map out of the dot graph up to the"
                 " stated bound", ("gph",), _ins07),
    PropertySpec("INS-08", "set colimits exist exactly for strongly"
                 " constant maps", ("finset",), _ins08),
    PropertySpec("INS-09", "set maps are adjunctible exactly when bijective",
                 ("finset",), _ins09),
    PropertySpec("INS-10", "set maps are dense exactly when surjective",
                 ("finset",), _ins10),
    PropertySpec("INS-11", "set maps are fully faithful exactly when"
                 " injective", ("finset",), _ins11),
)


def run_theorem_suite(corpora: Mapping[str, Corpus],
                      property_filter: Optional[str] = None,
                      budget: Optional[int] = None,
                      max_cases: int = 500,
                      instances: Optional[Mapping[str, EmInstance]] = None
                      ) -> SuiteReport:
    """Run every registered property over the corpora it applies to.

    Each (property, instance) pair gets its own budget and its own seeded
    generator, so reports are identical byte-for-byte across runs and
    property order cannot leak randomness between properties.
    """
    reg = instance_registry()
    if instances:
        reg.update(instances)
    rows = tuple(
        (("instance", name), ("spaces", len(c.spaces)),
         ("maps", len(c.maps)), ("bounds", c.bounds), ("seed", c.seed),
         ("sampled", c.sampled))
        for name, c in sorted(corpora.items()))
    results = []
    for spec in PROPERTIES:
        if property_filter and not fnmatch(spec.id, property_filter):
            continue
        names = tuple(n for n in spec.instances if n in corpora)
        if not names:
            results.append(PropertyResult(spec.id, spec.title, (), "pass",
                                          0, False, "0 instances", None))
            continue
        total, sampled, cx, reason = 0, False, None, ""
        skip_reason = ""
        for name in names:
            corpus = corpora[name]
            ctx = PropCtx(reg[name], corpus,
                          Budget(budget if budget is not None else 10 ** 9,
                                 f"{spec.id}/{name}"),
                          random.Random(f"{corpus.seed}:{spec.id}:{name}"),
                          max_cases)
            try:
                cases, samp, bad = spec.run(ctx)
            except SizeBudgetExceeded as exc:
                if not skip_reason:
                    skip_reason = f"{name}: {exc}"
                continue
            except LawViolation as exc:
                cases, samp, bad = 0, False, _cx(ctx, law_violation=str(exc))
            total += cases
            sampled = sampled or samp
            if bad is not None and cx is None:
                cx = bad
        if cx is not None:
            status, reason = "fail", ""
        elif skip_reason:
            status, reason = "skip", skip_reason
        else:
            status, reason = "pass", ""
            if all(not corpora[n].spaces for n in names):
                reason = "0 instances"
        results.append(PropertyResult(spec.id, spec.title, names, status,
                                      total, sampled, reason, cx))
    results.sort(key=lambda r: r.id)
    return SuiteReport(tuple(results), rows)
