"""Finite reflexive graphs.

The right class is the edge-lifting condition: every edge of the target
lifts uniquely to each node over its codomain.  Factorization passes to
free categories, reflects there, and restricts the resulting fibration
back to a graph; this requires the free categories to be finite, so
cyclic inputs are refused.

Identity loops follow the identities-first convention of FinCat: edge i
for i < n_node is the distinguished loop at node i.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..budget import Budget, as_budget
from ..comprehensive import discrete_reflection_cat
from ..emcore import EmInstance, Factorization, Product, Pullback
from ..errors import CyclicGraphUnsupported, TargetMismatch, ValidationError
from ..fincat import FinCat, FinFunctor, fincat_from_parts


@dataclass(frozen=True)
class ReflexiveGraph:
    """Edge endpoints with identity loops first: edge i < n_node is the
    loop at node i."""

    dom: tuple[int, ...]
    cod: tuple[int, ...]
    n_node: int
    node_names: Optional[tuple[str, ...]] = None
    edge_names: Optional[tuple[str, ...]] = None
    _h: int = field(init=False, compare=False, repr=False, default=0)

    def __post_init__(self):
        if len(self.dom) != len(self.cod):
            raise ValidationError("graph: dom/cod length mismatch")
        for i in range(self.n_node):
            if self.dom[i] != i or self.cod[i] != i:
                raise ValidationError(f"graph: edge {i} is not the loop at node {i}")
        for e in range(len(self.dom)):
            if not (0 <= self.dom[e] < self.n_node and 0 <= self.cod[e] < self.n_node):
                raise ValidationError(f"graph: edge {e} endpoint out of range")
        object.__setattr__(self, "_h", hash(
            (self.dom, self.cod, self.n_node, self.node_names, self.edge_names)))

    def __hash__(self):
        return self._h

    @property
    def n_edge(self) -> int:
        return len(self.dom)

    def is_identity(self, e: int) -> bool:
        return e < self.n_node

    def nodes(self) -> range:
        return range(self.n_node)

    def edges(self) -> range:
        return range(self.n_edge)

    def nonidentity_edges(self) -> range:
        return range(self.n_node, self.n_edge)

    def node_name(self, x: int) -> str:
        return self.node_names[x] if self.node_names else f"n{x}"

    def edge_name(self, e: int) -> str:
        if self.edge_names:
            return self.edge_names[e]
        return f"id_{self.node_name(e)}" if self.is_identity(e) else f"e{e}"


@dataclass(frozen=True)
class GraphMap:
    """Node and edge assignments preserving endpoints and identity loops."""

    src: ReflexiveGraph
    tgt: ReflexiveGraph
    node_map: tuple[int, ...]
    edge_map: tuple[int, ...]
    _h: int = field(init=False, compare=False, repr=False, default=0)

    def __post_init__(self):
        if len(self.node_map) != self.src.n_node or len(self.edge_map) != self.src.n_edge:
            raise ValidationError("graph map: assignment length mismatch")
        for x in self.src.nodes():
            if self.edge_map[x] != self.node_map[x]:
                raise ValidationError("graph map: identity loop not preserved")
        for e in self.src.edges():
            k = self.edge_map[e]
            if (self.tgt.dom[k] != self.node_map[self.src.dom[e]]
                    or self.tgt.cod[k] != self.node_map[self.src.cod[e]]):
                raise ValidationError(f"graph map: edge {e} endpoints not preserved")
        object.__setattr__(self, "_h", hash(
            (self.src, self.tgt, self.node_map, self.edge_map)))

    def __hash__(self):
        return self._h


def graph_from_edges(n_node: int, edges, node_names=None, edge_names=None) -> ReflexiveGraph:
    """Build a reflexive graph from non-loop edge endpoints; identity loops
    are supplied here."""
    dom = tuple(range(n_node)) + tuple(d for d, _ in edges)
    cod = tuple(range(n_node)) + tuple(c for _, c in edges)
    full_edge_names = None
    if node_names is not None:
        node_names = tuple(node_names)
        if edge_names is None:
            edge_names = tuple(f"e{k}" for k in range(len(dom) - n_node))
        full_edge_names = tuple(f"id_{nm}" for nm in node_names) + tuple(edge_names)
    return ReflexiveGraph(dom, cod, n_node, node_names, full_edge_names)


DOT = graph_from_edges(1, [])
E1 = graph_from_edges(2, [(0, 1)], ("n0", "n1"), ("a",))
E2 = graph_from_edges(3, [(0, 1), (1, 2)], ("n0", "n1", "n2"), ("a", "b"))


_FREE: dict[ReflexiveGraph, tuple[FinCat, dict]] = {}


def free_category(G: ReflexiveGraph, budget: "int | Budget | None" = None) -> tuple[FinCat, dict]:
    """The path category of G: arrows are paths of non-identity edges.

    Returns the category and the index mapping each nonempty path (a tuple
    of edges) to its arrow.  Paths are ordered by length, then
    lexicographically.  Cyclic graphs have infinite path categories and
    are refused.
    """
    if G in _FREE:
        return _FREE[G]
    bud = as_budget(budget, "free category paths")
    for e in G.nonidentity_edges():
        if G.dom[e] == G.cod[e]:
            raise CyclicGraphUnsupported(f"loop edge {G.edge_name(e)}")
    # cycle detection on the non-identity edge relation
    color = [0] * G.n_node

    def visit(x: int) -> None:
        color[x] = 1
        for e in G.nonidentity_edges():
            if G.dom[e] == x:
                y = G.cod[e]
                if color[y] == 1:
                    raise CyclicGraphUnsupported(f"cycle through {G.node_name(y)}")
                if color[y] == 0:
                    visit(y)
        color[x] = 2

    for x in G.nodes():
        if color[x] == 0:
            visit(x)

    paths: list[tuple[int, ...]] = [(e,) for e in G.nonidentity_edges()]
    frontier = list(paths)
    while frontier:
        new = []
        for p in frontier:
            for e in G.nonidentity_edges():
                bud.tick()
                if G.cod[p[-1]] == G.dom[e]:
                    new.append(p + (e,))
        paths.extend(new)
        frontier = new
    path_index = {p: G.n_node + k for k, p in enumerate(paths)}
    arrows = [(G.dom[p[0]], G.cod[p[-1]]) for p in paths]
    comp_entries = {}
    for p, i in path_index.items():
        for q, j in path_index.items():
            if G.cod[p[-1]] == G.dom[q[0]]:
                comp_entries[(i, j)] = path_index[p + q]
    names = tuple(f"id_{G.node_name(x)}" for x in G.nodes()) + tuple(
        ";".join(G.edge_name(e) for e in p) for p in paths)
    C = fincat_from_parts(G.n_node, arrows, comp_entries,
                          obj_names=tuple(G.node_name(x) for x in G.nodes()),
                          arr_names=names)
    _FREE[G] = (C, path_index)
    return C, path_index


def free_functor(f: GraphMap) -> FinFunctor:
    """The induced functor between path categories; image paths drop the
    edges that land on identity loops."""
    A, _ = free_category(f.src)
    B, b_paths = free_category(f.tgt)
    arr_map = list(B.ident[f.node_map[x]] for x in f.src.nodes())
    a_paths = sorted(free_category(f.src)[1].items(), key=lambda kv: kv[1])
    for p, _i in a_paths:
        img = tuple(f.edge_map[e] for e in p if not f.tgt.is_identity(f.edge_map[e]))
        if img:
            arr_map.append(b_paths[img])
        else:
            arr_map.append(B.ident[f.node_map[f.src.cod[p[-1]]]])
    return FinFunctor(A, B, f.node_map, tuple(arr_map))


class GphInstance(EmInstance):
    """Reflexive graphs with the edge-lifting right class."""

    name = "gph"

    def __init__(self):
        self._fact: dict[GraphMap, Factorization] = {}

    def dom(self, f: GraphMap) -> ReflexiveGraph:
        return f.src

    def cod(self, f: GraphMap) -> ReflexiveGraph:
        return f.tgt

    def identity(self, X: ReflexiveGraph) -> GraphMap:
        return GraphMap(X, X, tuple(X.nodes()), tuple(X.edges()))

    def compose(self, f: GraphMap, g: GraphMap) -> GraphMap:
        if f.tgt != g.src:
            raise TargetMismatch("graph compose: middle objects differ")
        return GraphMap(f.src, g.tgt,
                        tuple(g.node_map[v] for v in f.node_map),
                        tuple(g.edge_map[v] for v in f.edge_map))

    def terminal(self) -> ReflexiveGraph:
        return DOT

    def bang(self, X: ReflexiveGraph) -> GraphMap:
        return GraphMap(X, DOT, (0,) * X.n_node, (0,) * X.n_edge)

    def points(self, X: ReflexiveGraph) -> list[GraphMap]:
        return [GraphMap(DOT, X, (x,), (x,)) for x in X.nodes()]

    def maps(self, A: ReflexiveGraph, B: ReflexiveGraph,
             budget: "int | Budget | None" = None) -> list[GraphMap]:
        return self._maps_filtered(A, B, lambda x: list(B.nodes()),
                                   lambda e: list(B.edges()), budget)

    def maps_over(self, p: GraphMap, q: GraphMap,
                  budget: "int | Budget | None" = None) -> list[GraphMap]:
        if p.tgt != q.tgt:
            raise TargetMismatch("maps over base: maps must share a target")
        A, B = p.src, q.src
        node_fib = [[b for b in B.nodes() if q.node_map[b] == p.node_map[a]]
                    for a in A.nodes()]
        edge_fib = [[k for k in B.edges() if q.edge_map[k] == p.edge_map[e]]
                    for e in A.edges()]
        return self._maps_filtered(A, B, lambda x: node_fib[x],
                                   lambda e: edge_fib[e], budget)

    def _maps_filtered(self, A, B, node_cands, edge_cands, budget) -> list[GraphMap]:
        bud = as_budget(budget, "graph map enumeration")
        out: list[GraphMap] = []
        node_map = [-1] * A.n_node

        def edges_rec(e: int, edge_map: list[int]) -> None:
            bud.tick()
            if e == A.n_edge:
                out.append(GraphMap(A, B, tuple(node_map), tuple(edge_map)))
                return
            for k in edge_cands(e):
                if (B.dom[k] == node_map[A.dom[e]] and B.cod[k] == node_map[A.cod[e]]):
                    edge_map[e] = k
                    edges_rec(e + 1, edge_map)
            edge_map[e] = -1

        def nodes_rec(x: int) -> None:
            bud.tick()
            if x == A.n_node:
                edge_map = [node_map[y] for y in A.nodes()] + [-1] * (A.n_edge - A.n_node)
                edges_rec(A.n_node, edge_map)
                return
            for b in node_cands(x):
                node_map[x] = b
                nodes_rec(x + 1)
            node_map[x] = -1

        nodes_rec(0)
        return out

    def is_invertible(self, f: GraphMap) -> bool:
        return (sorted(f.node_map) == list(f.tgt.nodes())
                and sorted(f.edge_map) == list(f.tgt.edges()))

    def inverse(self, f: GraphMap) -> GraphMap:
        ninv = [0] * f.tgt.n_node
        for x, y in enumerate(f.node_map):
            ninv[y] = x
        einv = [0] * f.tgt.n_edge
        for e, k in enumerate(f.edge_map):
            einv[k] = e
        return GraphMap(f.tgt, f.src, tuple(ninv), tuple(einv))

    def _pairs(self, A, B, keep_node, keep_edge):
        nodes = [(a, b) for a in A.nodes() for b in B.nodes() if keep_node(a, b)]
        node_index = {p: i for i, p in enumerate(nodes)}
        edges = []
        edge_index = {}
        for e in A.edges():
            for k in B.edges():
                sa = (A.dom[e], B.dom[k])
                sb = (A.cod[e], B.cod[k])
                if sa not in node_index or sb not in node_index:
                    continue
                if not keep_edge(e, k):
                    continue
                if A.is_identity(e) and B.is_identity(k):
                    edge_index[(e, k)] = node_index[sa]
                    continue
                edge_index[(e, k)] = len(nodes) + len(edges)
                edges.append((node_index[sa], node_index[sb], e, k))
        G = graph_from_edges(len(nodes), [(i, j) for i, j, _, _ in edges])
        pa = GraphMap(G, A, tuple(a for a, _ in nodes),
                      tuple([a for a, _ in nodes] + [e for _, _, e, _ in edges]))
        pb = GraphMap(G, B, tuple(b for _, b in nodes),
                      tuple([b for _, b in nodes] + [k for _, _, _, k in edges]))
        return G, pa, pb, node_index, edge_index

    def pullback(self, f: GraphMap, m: GraphMap) -> Pullback:
        if f.tgt != m.tgt:
            raise TargetMismatch("pullback: maps must share a target")
        G, pa, pb, node_index, edge_index = self._pairs(
            f.src, m.src,
            lambda a, b: f.node_map[a] == m.node_map[b],
            lambda e, k: f.edge_map[e] == m.edge_map[k])

        def mediate(u: GraphMap, v: GraphMap) -> GraphMap:
            if (tuple(f.node_map[x] for x in u.node_map) != tuple(m.node_map[x] for x in v.node_map)
                    or tuple(f.edge_map[x] for x in u.edge_map) != tuple(m.edge_map[x] for x in v.edge_map)):
                raise TargetMismatch("pullback mediate: square does not commute")
            return GraphMap(u.src, G,
                            tuple(node_index[(u.node_map[z], v.node_map[z])]
                                  for z in u.src.nodes()),
                            tuple(edge_index[(u.edge_map[z], v.edge_map[z])]
                                  for z in u.src.edges()))

        return Pullback(G, pa, pb, mediate)

    def product(self, A: ReflexiveGraph, B: ReflexiveGraph) -> Product:
        G, pa, pb, node_index, edge_index = self._pairs(
            A, B, lambda a, b: True, lambda e, k: True)

        def pair(u: GraphMap, v: GraphMap) -> GraphMap:
            return GraphMap(u.src, G,
                            tuple(node_index[(u.node_map[z], v.node_map[z])]
                                  for z in u.src.nodes()),
                            tuple(edge_index[(u.edge_map[z], v.edge_map[z])]
                                  for z in u.src.edges()))

        return Product(G, pa, pb, pair)

    def has_opposite(self) -> bool:
        return True

    def opposite_space(self, X: ReflexiveGraph) -> ReflexiveGraph:
        return ReflexiveGraph(X.cod, X.dom, X.n_node, X.node_names, X.edge_names)

    def opposite_map(self, f: GraphMap) -> GraphMap:
        return GraphMap(self.opposite_space(f.src), self.opposite_space(f.tgt),
                        f.node_map, f.edge_map)

    def in_M(self, f: GraphMap) -> bool:
        """Unique edge lifting: each target edge has exactly one preimage
        edge ending at each node over its codomain."""
        for k in f.tgt.edges():
            y = f.tgt.cod[k]
            for b in f.src.nodes():
                if f.node_map[b] != y:
                    continue
                n = sum(1 for e in f.src.edges()
                        if f.edge_map[e] == k and f.src.cod[e] == b)
                if n != 1:
                    return False
        return True

    def factorize(self, p: GraphMap) -> Factorization:
        if p in self._fact:
            return self._fact[p]
        if self.in_M(p):
            fac = Factorization(self.identity(p.src), p)
            self._fact[p] = fac
            return fac
        X = p.tgt
        cfac, _ = discrete_reflection_cat(free_functor(p))
        M = cfac.m.src
        _FX, path_index = free_category(X)
        gen_arrow = {path_index[(h,)]: h for h in X.nonidentity_edges()}
        edges = []
        edge_of_arrow = {}
        for beta in M.nonidentity_arrows():
            a = cfac.m.arr_map[beta]
            if a in gen_arrow:
                edge_of_arrow[beta] = M.n_obj + len(edges)
                edges.append((M.dom[beta], M.cod[beta], gen_arrow[a]))
        T = graph_from_edges(M.n_obj, [(i, j) for i, j, _ in edges])
        m = GraphMap(T, X, cfac.m.obj_map,
                     tuple([cfac.m.obj_map[x] for x in range(M.n_obj)]
                           + [h for _, _, h in edges]))
        A, a_paths = free_category(p.src)
        e_edges = []
        for a in p.src.nonidentity_edges():
            beta = cfac.e.arr_map[a_paths[(a,)]]
            if M.is_identity(beta):
                e_edges.append(beta)
            else:
                e_edges.append(edge_of_arrow[beta])
        e = GraphMap(p.src, T, cfac.e.obj_map,
                     tuple([cfac.e.obj_map[x] for x in p.src.nodes()] + e_edges))
        if self.compose(e, m) != p:
            raise AssertionError("graph reflection does not factor the input")
        if not self.in_M(m):
            raise AssertionError("graph reflection right part lacks edge lifting")
        fac = Factorization(e, m)
        self._fact[p] = fac
        return fac

    def discrete_spaces_over(self, X: ReflexiveGraph, size_bound: int = 3,
                             budget: "int | Budget | None" = None) -> list[GraphMap]:
        from itertools import product as iproduct
        bud = as_budget(budget, "graph fibration enumeration")
        out = []
        nonid = list(X.nonidentity_edges())
        for sizes in iproduct(range(size_bound + 1), repeat=X.n_node):
            acts = []
            for h in nonid:
                n_in, n_out = sizes[X.dom[h]], sizes[X.cod[h]]
                if n_out == 0:
                    acts.append([()])
                elif n_in == 0:
                    acts.append([])
                else:
                    acts.append(list(iproduct(range(n_in), repeat=n_out)))
            total = 1
            for cands in acts:
                total *= len(cands)
            if total == 0:
                continue
            for combo in iproduct(*acts):
                bud.tick()
                nodes = [(x, i) for x in X.nodes() for i in range(sizes[x])]
                node_index = {p: i for i, p in enumerate(nodes)}
                edges = []
                for h, act in zip(nonid, combo):
                    for i in range(sizes[X.cod[h]]):
                        edges.append((node_index[(X.dom[h], act[i])],
                                      node_index[(X.cod[h], i)], h))
                T = graph_from_edges(len(nodes), [(i, j) for i, j, _ in edges])
                out.append(GraphMap(
                    T, X,
                    tuple(x for x, _ in nodes),
                    tuple([x for x, _ in nodes] + [h for _, _, h in edges])))
        return out


_GPH = None


def gph_instance() -> GphInstance:
    global _GPH
    if _GPH is None:
        _GPH = GphInstance()
    return _GPH
