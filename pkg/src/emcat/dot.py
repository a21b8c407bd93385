"""DOT drawings of spaces and discrete families.

Categories and graphs are drawn with their identity loops suppressed;
posets are drawn as their covering relation; a discrete family is drawn
two-level, the fiber points clustered over the base point they sit above.
Node ordering follows the internal indexing, so output is deterministic.
"""
from __future__ import annotations

from .fincat import FinCat, FinFunctor
from .formats import _cat_names, _cover_pairs, _graph_names, _space_names
from .instances import (
    FinSetMap,
    FinSetObj,
    GraphMap,
    Poset,
    PosetMap,
    ReflexiveGraph,
)
from .theory import DiscreteSpace, Neighborhood


def _q(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _cat_lines(C: FinCat) -> tuple[list[str], list[str]]:
    objs, arrs = _cat_names(C)
    nodes = [f"  {_q(o)};" for o in objs]
    edges = [
        f"  {_q(objs[C.dom[i]])} -> {_q(objs[C.cod[i]])} [label={_q(arrs[i])}];"
        for i in range(C.n_obj, C.n_arr)
    ]
    return nodes, edges


def _poset_lines(P: Poset) -> tuple[list[str], list[str]]:
    nodes = [f"  {_q(nm)};" for nm in P.names]
    edges = [f"  {_q(P.names[i])} -> {_q(P.names[j])};"
             for i, j in _cover_pairs(P)]
    return nodes, edges


def _graph_lines(G: ReflexiveGraph) -> tuple[list[str], list[str]]:
    node_names, edge_names = _graph_names(G)
    nodes = [f"  {_q(nm)};" for nm in node_names]
    edges = [
        f"  {_q(node_names[G.dom[k]])} -> {_q(node_names[G.cod[k]])}"
        f" [label={_q(edge_names[k])}];"
        for k in range(G.n_node, len(G.dom))
    ]
    return nodes, edges


def _set_lines(S: FinSetObj) -> tuple[list[str], list[str]]:
    names = S.names or tuple(f"u{i}" for i in range(S.size))
    return [f"  {_q(nm)};" for nm in names], []


def _family_parts(m):
    """Point names, fiber assignment, edge lines and base names of an M-map,
    uniform across the map types."""
    if isinstance(m, FinFunctor):
        t_objs, t_arrs = _cat_names(m.src)
        b_objs, _ = _cat_names(m.tgt)
        edges = [(m.src.dom[i], m.src.cod[i], t_arrs[i])
                 for i in range(m.src.n_obj, m.src.n_arr)]
        return t_objs, m.obj_map, edges, b_objs
    if isinstance(m, PosetMap):
        edges = [(i, j, "") for i, j in _cover_pairs(m.src)]
        return m.src.names, m.values, edges, m.tgt.names
    if isinstance(m, GraphMap):
        t_nodes, t_edges = _graph_names(m.src)
        b_nodes, _ = _graph_names(m.tgt)
        edges = [(m.src.dom[k], m.src.cod[k], t_edges[k])
                 for k in range(m.src.n_node, len(m.src.dom))]
        return t_nodes, m.node_map, edges, b_nodes
    if isinstance(m, FinSetMap):
        return _space_names(m.src), m.values, [], _space_names(m.tgt)
    raise TypeError(f"cannot draw a family over {type(m).__name__}")


def _family_lines(D: DiscreteSpace) -> list[str]:
    points, fiber, edges, base_names = _family_parts(D.m)
    out = []
    for b, base_nm in enumerate(base_names):
        out.append(f"  subgraph cluster_{b} {{")
        out.append(f"    label={_q(base_nm)};")
        for i, nm in enumerate(points):
            if fiber[i] == b:
                out.append(f"    {_q(nm)};")
        out.append("  }")
    for i, j, nm in edges:
        label = f" [label={_q(nm)}]" if nm else ""
        out.append(f"  {_q(points[i])} -> {_q(points[j])}{label};")
    return out


def emit_dot(obj) -> str:
    """Render a space, a discrete family, or a neighborhood as DOT text."""
    if isinstance(obj, Neighborhood):
        obj = obj.space
    if isinstance(obj, DiscreteSpace):
        body = _family_lines(obj)
    elif isinstance(obj, FinCat):
        nodes, edges = _cat_lines(obj)
        body = nodes + edges
    elif isinstance(obj, Poset):
        nodes, edges = _poset_lines(obj)
        body = nodes + edges
    elif isinstance(obj, ReflexiveGraph):
        nodes, edges = _graph_lines(obj)
        body = nodes + edges
    elif isinstance(obj, FinSetObj):
        nodes, edges = _set_lines(obj)
        body = nodes + edges
    else:
        raise TypeError(f"cannot draw {type(obj).__name__}")
    return "digraph {\n" + "\n".join(body) + ("\n" if body else "") + "}\n"
