"""Text formats for spaces and maps, with parsers and emitters.

One structure per file, one declaration per line, tokens separated by
whitespace, ``#`` starts a comment.  The grammars:

  .fincat   objects a b c
            arrow f : a -> b
            compose f g = h        # f then g (diagrammatic); h may be id_a
  .poset    elements a b c
            a <= b                 # generating pairs; closure is automatic
  .graph    nodes a b c
            edge e : a -> b        # identity loops are implicit
  .set      elements u v w
  .fn       source ONE.fincat      # paths resolve relative to this file
            target TWO.fincat
            object a |-> u
            arrow f |-> k          # every non-identity arrow; k may be id_u
  .map      source A.poset         # either header may be omitted when the
            target X.poset         # caller supplies that endpoint
            a |-> u                # element assignment (.poset/.set)
            node a |-> u           # node and edge assignment (.graph)
            edge e |-> k

Composites forced by identities are never written.  Identity arrows are
always named ``id_<object>`` and may appear wherever an arrow image or a
composite is expected.  Parsers raise ParseError with file, line and
column; structural laws are checked by the usual validators, whose errors
pass through unchanged.
"""
from __future__ import annotations

import os
from typing import Callable, Optional

from .errors import ParseError
from .fincat import FinCat, FinFunctor, identity_name, raw_category, validate, validate_functor
from .instances import (
    FinSetMap,
    FinSetObj,
    GraphMap,
    Poset,
    PosetMap,
    ReflexiveGraph,
    graph_from_edges,
    poset_from_pairs,
)

SPACE_SUFFIXES = (".fincat", ".poset", ".graph", ".set")


class _Tok:
    __slots__ = ("text", "line", "col")

    def __init__(self, text: str, line: int, col: int):
        self.text = text
        self.line = line
        self.col = col


def _tokenize(text: str) -> list[list[_Tok]]:
    rows = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks, i = [], 0
        while i < len(line):
            if line[i].isspace():
                i += 1
                continue
            j = i
            while j < len(line) and not line[j].isspace():
                j += 1
            toks.append(_Tok(line[i:j], ln, i + 1))
            i = j
        if toks:
            rows.append(toks)
    return rows


def _fail(path: str, tok: _Tok, msg: str) -> ParseError:
    return ParseError(msg, path, tok.line, tok.col)


def _expect(path: str, row: list[_Tok], idx: int, literal: str) -> None:
    if idx >= len(row):
        last = row[-1]
        raise ParseError(f"expected {literal!r}", path, last.line,
                         last.col + len(last.text))
    if row[idx].text != literal:
        raise _fail(path, row[idx], f"expected {literal!r}, got {row[idx].text!r}")


def _name(path: str, row: list[_Tok], idx: int, what: str) -> _Tok:
    if idx >= len(row):
        last = row[-1]
        raise ParseError(f"expected {what}", path, last.line,
                         last.col + len(last.text))
    tok = row[idx]
    if tok.text in (":", "->", "=", "|->", "<="):
        raise _fail(path, tok, f"expected {what}, got {tok.text!r}")
    return tok


def _exact_len(path: str, row: list[_Tok], n: int) -> None:
    if len(row) > n:
        raise _fail(path, row[n], "trailing tokens")


# ---------------------------------------------------------------------------
# spaces

def parse_fincat(text: str, path: str = "<input>") -> FinCat:
    objects: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    compose: dict[tuple[str, str], str] = {}
    seen_obj: set[str] = set()
    arr_ends: dict[str, tuple[str, str]] = {}
    for row in _tokenize(text):
        head = row[0]
        if head.text == "objects":
            for tok in row[1:]:
                t = _name(path, [tok], 0, "object name")
                if t.text in seen_obj:
                    raise _fail(path, t, f"duplicate object {t.text!r}")
                seen_obj.add(t.text)
                objects.append(t.text)
        elif head.text == "arrow":
            nm = _name(path, row, 1, "arrow name")
            _expect(path, row, 2, ":")
            d = _name(path, row, 3, "object name")
            _expect(path, row, 4, "->")
            c = _name(path, row, 5, "object name")
            _exact_len(path, row, 6)
            for tok in (d, c):
                if tok.text not in seen_obj:
                    raise _fail(path, tok, f"unknown object {tok.text!r}")
            if nm.text in arr_ends or nm.text.startswith("id_"):
                raise _fail(path, nm, f"duplicate arrow {nm.text!r}")
            arr_ends[nm.text] = (d.text, c.text)
            arrows.append((nm.text, d.text, c.text))
        elif head.text == "compose":
            f = _name(path, row, 1, "arrow name")
            g = _name(path, row, 2, "arrow name")
            _expect(path, row, 3, "=")
            h = _name(path, row, 4, "arrow name")
            _exact_len(path, row, 5)
            for tok in (f, g):
                if tok.text not in arr_ends:
                    raise _fail(path, tok, f"unknown arrow {tok.text!r}")
            if h.text not in arr_ends and not (
                    h.text.startswith("id_") and h.text[3:] in seen_obj):
                raise _fail(path, h, f"unknown arrow {h.text!r}")
            if (f.text, g.text) in compose:
                raise _fail(path, f, f"duplicate composite {f.text!r} {g.text!r}")
            compose[(f.text, g.text)] = h.text
        else:
            raise _fail(path, head, f"unknown declaration {head.text!r}")
    return validate(raw_category(objects, arrows, compose))


def parse_poset(text: str, path: str = "<input>") -> Poset:
    elements: list[str] = []
    seen: set[str] = set()
    pairs: list[tuple[str, str]] = []
    for row in _tokenize(text):
        head = row[0]
        if head.text == "elements":
            for tok in row[1:]:
                t = _name(path, [tok], 0, "element name")
                if t.text in seen:
                    raise _fail(path, t, f"duplicate element {t.text!r}")
                seen.add(t.text)
                elements.append(t.text)
        else:
            a = _name(path, row, 0, "element name")
            _expect(path, row, 1, "<=")
            b = _name(path, row, 2, "element name")
            _exact_len(path, row, 3)
            for tok in (a, b):
                if tok.text not in seen:
                    raise _fail(path, tok, f"unknown element {tok.text!r}")
            pairs.append((a.text, b.text))
    return poset_from_pairs(tuple(elements), pairs)


def parse_graph(text: str, path: str = "<input>") -> ReflexiveGraph:
    nodes: list[str] = []
    seen: set[str] = set()
    edge_names: list[str] = []
    edge_seen: set[str] = set()
    ends: list[tuple[int, int]] = []
    for row in _tokenize(text):
        head = row[0]
        if head.text == "nodes":
            for tok in row[1:]:
                t = _name(path, [tok], 0, "node name")
                if t.text in seen:
                    raise _fail(path, t, f"duplicate node {t.text!r}")
                seen.add(t.text)
                nodes.append(t.text)
        elif head.text == "edge":
            nm = _name(path, row, 1, "edge name")
            _expect(path, row, 2, ":")
            d = _name(path, row, 3, "node name")
            _expect(path, row, 4, "->")
            c = _name(path, row, 5, "node name")
            _exact_len(path, row, 6)
            for tok in (d, c):
                if tok.text not in seen:
                    raise _fail(path, tok, f"unknown node {tok.text!r}")
            if nm.text in edge_seen or nm.text.startswith("id_"):
                raise _fail(path, nm, f"duplicate edge {nm.text!r}")
            edge_seen.add(nm.text)
            edge_names.append(nm.text)
            ends.append((nodes.index(d.text), nodes.index(c.text)))
        else:
            raise _fail(path, head, f"unknown declaration {head.text!r}")
    return graph_from_edges(len(nodes), ends, tuple(nodes), tuple(edge_names))


def parse_set(text: str, path: str = "<input>") -> FinSetObj:
    elements: list[str] = []
    seen: set[str] = set()
    for row in _tokenize(text):
        head = row[0]
        if head.text != "elements":
            raise _fail(path, head, f"unknown declaration {head.text!r}")
        for tok in row[1:]:
            t = _name(path, [tok], 0, "element name")
            if t.text in seen:
                raise _fail(path, t, f"duplicate element {t.text!r}")
            seen.add(t.text)
            elements.append(t.text)
    return FinSetObj(len(elements), tuple(elements))


_SPACE_PARSERS = {
    ".fincat": parse_fincat,
    ".poset": parse_poset,
    ".graph": parse_graph,
    ".set": parse_set,
}


def read_space(path: str):
    """Parse a space file, dispatching on its extension."""
    ext = os.path.splitext(path)[1]
    if ext not in _SPACE_PARSERS:
        raise ParseError(f"unknown space extension {ext!r}", path, 0, 0)
    with open(path, encoding="utf-8") as fh:
        return _SPACE_PARSERS[ext](fh.read(), path)


def _default_loader(path: str) -> Callable[[_Tok, str], object]:
    base = os.path.dirname(os.path.abspath(path))

    def load(tok: _Tok, ref: str):
        full = os.path.join(base, ref)
        if not os.path.exists(full):
            raise _fail(path, tok, f"referenced file not found: {ref!r}")
        return read_space(full)

    return load


# ---------------------------------------------------------------------------
# maps

def _cat_names(C: FinCat) -> tuple[tuple[str, ...], tuple[str, ...]]:
    objs = C.obj_names or tuple(f"x{i}" for i in range(C.n_obj))
    if C.arr_names is not None:
        return objs, C.arr_names
    arrs = tuple(identity_name(o) for o in objs) + tuple(
        f"a{k}" for k in range(C.n_arr - C.n_obj))
    return objs, arrs


def parse_functor(text: str, path: str = "<input>", loader=None) -> FinFunctor:
    """Parse a ``.fn`` file; the source and target categories come from the
    referenced files.  The functor laws are checked before returning."""
    load = loader if loader is not None else _default_loader(path)
    src: Optional[FinCat] = None
    tgt: Optional[FinCat] = None
    obj_rows: list[tuple[_Tok, _Tok]] = []
    arr_rows: list[tuple[_Tok, _Tok]] = []
    last = _Tok("", 1, 1)
    for row in _tokenize(text):
        head = row[0]
        last = head
        if head.text in ("source", "target"):
            ref = _name(path, row, 1, "file path")
            _exact_len(path, row, 2)
            space = load(ref, ref.text)
            if not isinstance(space, FinCat):
                raise _fail(path, ref, "functor endpoints must be .fincat files")
            if head.text == "source":
                src = space
            else:
                tgt = space
        elif head.text in ("object", "arrow"):
            a = _name(path, row, 1, "name")
            _expect(path, row, 2, "|->")
            b = _name(path, row, 3, "name")
            _exact_len(path, row, 4)
            (obj_rows if head.text == "object" else arr_rows).append((a, b))
        else:
            raise _fail(path, head, f"unknown declaration {head.text!r}")
    if src is None or tgt is None:
        raise _fail(path, last, "functor needs both source and target")
    s_objs, s_arrs = _cat_names(src)
    t_objs, t_arrs = _cat_names(tgt)
    obj_map = [-1] * src.n_obj
    for a, b in obj_rows:
        if a.text not in s_objs:
            raise _fail(path, a, f"unknown source object {a.text!r}")
        if b.text not in t_objs:
            raise _fail(path, b, f"unknown target object {b.text!r}")
        obj_map[s_objs.index(a.text)] = t_objs.index(b.text)
    for i, v in enumerate(obj_map):
        if v < 0:
            raise _fail(path, last, f"no image for object {s_objs[i]!r}")
    arr_map = [-1] * src.n_arr
    for i in range(src.n_obj):
        arr_map[i] = tgt.ident[obj_map[i]]
    for a, b in arr_rows:
        if a.text not in s_arrs:
            raise _fail(path, a, f"unknown source arrow {a.text!r}")
        if b.text not in t_arrs:
            raise _fail(path, b, f"unknown target arrow {b.text!r}")
        arr_map[s_arrs.index(a.text)] = t_arrs.index(b.text)
    for i in range(src.n_obj, src.n_arr):
        if arr_map[i] < 0:
            raise _fail(path, last, f"no image for arrow {s_arrs[i]!r}")
    F = FinFunctor(src, tgt, tuple(obj_map), tuple(arr_map))
    validate_functor(F)
    return F


def _space_names(space) -> tuple[str, ...]:
    if isinstance(space, Poset):
        return space.names
    if isinstance(space, FinSetObj):
        return space.names or tuple(f"u{i}" for i in range(space.size))
    raise TypeError(f"no element names for {type(space).__name__}")


def _graph_names(G: ReflexiveGraph) -> tuple[tuple[str, ...], tuple[str, ...]]:
    nodes = G.node_names or tuple(f"n{i}" for i in range(G.n_node))
    if G.edge_names is not None:
        return nodes, G.edge_names
    edges = tuple(identity_name(nm) for nm in nodes) + tuple(
        f"e{k}" for k in range(len(G.dom) - G.n_node))
    return nodes, edges


def parse_map(text: str, path: str = "<input>", kind: str = "pos",
              source=None, target=None, loader=None):
    """Parse a ``.map`` file into the map type selected by ``kind`` (one of
    pos, pos-comp, gph, finset).  Endpoints given by the caller win over the
    file's own source/target headers."""
    load = loader if loader is not None else _default_loader(path)
    rows_plain: list[tuple[_Tok, _Tok]] = []
    rows_node: list[tuple[_Tok, _Tok]] = []
    rows_edge: list[tuple[_Tok, _Tok]] = []
    last = _Tok("", 1, 1)
    for row in _tokenize(text):
        head = row[0]
        last = head
        if head.text in ("source", "target"):
            ref = _name(path, row, 1, "file path")
            _exact_len(path, row, 2)
            if head.text == "source" and source is None:
                source = load(ref, ref.text)
            elif head.text == "target" and target is None:
                target = load(ref, ref.text)
        elif head.text in ("node", "edge"):
            a = _name(path, row, 1, "name")
            _expect(path, row, 2, "|->")
            b = _name(path, row, 3, "name")
            _exact_len(path, row, 4)
            (rows_node if head.text == "node" else rows_edge).append((a, b))
        else:
            a = _name(path, row, 0, "element name")
            _expect(path, row, 1, "|->")
            b = _name(path, row, 2, "element name")
            _exact_len(path, row, 3)
            rows_plain.append((a, b))
    if source is None:
        raise _fail(path, last, "map needs a source (header or argument)")
    if target is None:
        raise _fail(path, last, "map needs a target (header or argument)")
    want = {"pos": Poset, "pos-comp": Poset, "finset": FinSetObj,
            "gph": ReflexiveGraph}.get(kind)
    if want is None:
        raise ParseError(f"unknown map kind {kind!r}", path, 0, 0)
    for end, label in ((source, "source"), (target, "target")):
        if not isinstance(end, want):
            raise ParseError(
                f"{label} is {type(end).__name__}, not a {kind} space",
                path, 0, 0)
    if kind in ("pos", "pos-comp", "finset"):
        if rows_node or rows_edge:
            bad = (rows_node + rows_edge)[0][0]
            raise _fail(path, bad, f"node/edge lines do not apply to {kind}")
        s_names = _space_names(source)
        t_names = _space_names(target)
        values = [-1] * len(s_names)
        for a, b in rows_plain:
            if a.text not in s_names:
                raise _fail(path, a, f"unknown source element {a.text!r}")
            if b.text not in t_names:
                raise _fail(path, b, f"unknown target element {b.text!r}")
            values[s_names.index(a.text)] = t_names.index(b.text)
        for i, v in enumerate(values):
            if v < 0:
                raise _fail(path, last, f"no image for element {s_names[i]!r}")
        if kind == "finset":
            return FinSetMap(source, target, tuple(values))
        return PosetMap(source, target, tuple(values))
    if rows_plain:
        raise _fail(path, rows_plain[0][0], "graph maps need node/edge lines")
    s_nodes, s_edges = _graph_names(source)
    t_nodes, t_edges = _graph_names(target)
    node_map = [-1] * source.n_node
    for a, b in rows_node:
        if a.text not in s_nodes:
            raise _fail(path, a, f"unknown source node {a.text!r}")
        if b.text not in t_nodes:
            raise _fail(path, b, f"unknown target node {b.text!r}")
        node_map[s_nodes.index(a.text)] = t_nodes.index(b.text)
    for i, v in enumerate(node_map):
        if v < 0:
            raise _fail(path, last, f"no image for node {s_nodes[i]!r}")
    edge_map = [-1] * len(source.dom)
    for i in range(source.n_node):
        edge_map[i] = node_map[i]
    for a, b in rows_edge:
        if a.text not in s_edges:
            raise _fail(path, a, f"unknown source edge {a.text!r}")
        if b.text not in t_edges:
            raise _fail(path, b, f"unknown target edge {b.text!r}")
        edge_map[s_edges.index(a.text)] = t_edges.index(b.text)
    for i in range(source.n_node, len(source.dom)):
        if edge_map[i] < 0:
            raise _fail(path, last, f"no image for edge {s_edges[i]!r}")
    return GraphMap(source, target, tuple(node_map), tuple(edge_map))


def read_functor(path: str) -> FinFunctor:
    with open(path, encoding="utf-8") as fh:
        return parse_functor(fh.read(), path)


def read_map(path: str, kind: str, source=None, target=None):
    with open(path, encoding="utf-8") as fh:
        return parse_map(fh.read(), path, kind, source, target)


# ---------------------------------------------------------------------------
# emitters

def emit_fincat(C: FinCat) -> str:
    objs, arrs = _cat_names(C)
    lines = ["objects" + "".join(f" {o}" for o in objs)]
    for i in range(C.n_obj, C.n_arr):
        lines.append(f"arrow {arrs[i]} : {objs[C.dom[i]]} -> {objs[C.cod[i]]}")
    for f in range(C.n_obj, C.n_arr):
        for g in range(C.n_obj, C.n_arr):
            h = C.comp[f][g]
            if h >= 0:
                lines.append(f"compose {arrs[f]} {arrs[g]} = {arrs[h]}")
    return "\n".join(lines) + "\n"


def _cover_pairs(P: Poset) -> list[tuple[int, int]]:
    n = len(P.names)
    le = P.le
    out = []
    for i in range(n):
        for j in range(n):
            if i != j and (le[i] >> j) & 1:
                if not any((le[i] >> k) & 1 and (le[k] >> j) & 1
                           for k in range(n) if k not in (i, j)):
                    out.append((i, j))
    return out


def emit_poset(P: Poset) -> str:
    lines = ["elements" + "".join(f" {nm}" for nm in P.names)]
    for i, j in _cover_pairs(P):
        lines.append(f"{P.names[i]} <= {P.names[j]}")
    return "\n".join(lines) + "\n"


def emit_graph(G: ReflexiveGraph) -> str:
    nodes, edges = _graph_names(G)
    lines = ["nodes" + "".join(f" {nm}" for nm in nodes)]
    for k in range(G.n_node, len(G.dom)):
        lines.append(f"edge {edges[k]} : {nodes[G.dom[k]]} -> {nodes[G.cod[k]]}")
    return "\n".join(lines) + "\n"


def emit_set(S: FinSetObj) -> str:
    names = S.names or tuple(f"u{i}" for i in range(S.size))
    return "elements" + "".join(f" {nm}" for nm in names) + "\n"


def emit_space(space) -> str:
    if isinstance(space, FinCat):
        return emit_fincat(space)
    if isinstance(space, Poset):
        return emit_poset(space)
    if isinstance(space, ReflexiveGraph):
        return emit_graph(space)
    if isinstance(space, FinSetObj):
        return emit_set(space)
    raise TypeError(f"cannot emit {type(space).__name__}")


def emit_functor(F: FinFunctor, source_ref: str = "", target_ref: str = "") -> str:
    s_objs, s_arrs = _cat_names(F.src)
    t_objs, t_arrs = _cat_names(F.tgt)
    lines = []
    if source_ref:
        lines.append(f"source {source_ref}")
    if target_ref:
        lines.append(f"target {target_ref}")
    for i, o in enumerate(s_objs):
        lines.append(f"object {o} |-> {t_objs[F.obj_map[i]]}")
    for i in range(F.src.n_obj, F.src.n_arr):
        lines.append(f"arrow {s_arrs[i]} |-> {t_arrs[F.arr_map[i]]}")
    return "\n".join(lines) + "\n"


def emit_map(m, source_ref: str = "", target_ref: str = "") -> str:
    lines = []
    if source_ref:
        lines.append(f"source {source_ref}")
    if target_ref:
        lines.append(f"target {target_ref}")
    if isinstance(m, GraphMap):
        s_nodes, s_edges = _graph_names(m.src)
        t_nodes, t_edges = _graph_names(m.tgt)
        for i, nm in enumerate(s_nodes):
            lines.append(f"node {nm} |-> {t_nodes[m.node_map[i]]}")
        for k in range(m.src.n_node, len(m.src.dom)):
            lines.append(f"edge {s_edges[k]} |-> {t_edges[m.edge_map[k]]}")
    elif isinstance(m, (PosetMap, FinSetMap)):
        s_names = _space_names(m.src)
        t_names = _space_names(m.tgt)
        for i, nm in enumerate(s_names):
            lines.append(f"{nm} |-> {t_names[m.values[i]]}")
    else:
        raise TypeError(f"cannot emit {type(m).__name__}")
    return "\n".join(lines) + "\n"
