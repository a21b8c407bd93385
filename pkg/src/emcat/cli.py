"""Command-line front end.

One verb per invocation; inputs are text files in the formats module's
grammars.  Verbs that consume a map take the map file last; space files
listed before it fill the map's missing source/target headers in that
order.  Exit codes: 0 the operation succeeded or the property holds, 1 the
property fails (a counterexample is emitted), 2 malformed input, 3 an
enumeration exceeded its budget.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import arrowobj as ao
from . import theory as th
from .budget import Budget
from .dot import emit_dot
from .emcore import in_E, reflection_universality_check
from .errors import (
    ParseError,
    SizeBudgetExceeded,
    TargetMismatch,
    UnsupportedOperation,
    ValidationError,
)
from .fincat import FinCat, FinFunctor
from .formats import (
    _cat_names,
    _graph_names,
    _space_names,
    _tokenize,
    emit_functor,
    emit_map,
    emit_space,
    read_functor,
    read_space,
)
from .formats import parse_map as _parse_map
from .harness import (
    cat_corpus,
    finset_corpus,
    gph_corpus,
    instance_registry,
    pos_corpus,
    run_theorem_suite,
    standard_corpora,
)
from .instances import (
    FinSetMap,
    FinSetObj,
    GraphMap,
    Poset,
    PosetMap,
    ReflexiveGraph,
    pos_power_object,
)
from .theory import DiscreteSpace

INSTANCES = ("cat", "pos", "pos-comp", "gph", "finset")

_MAP_VERBS = {
    "factorize", "reflect", "final", "discrete", "neighborhood", "colimit",
    "absolute", "universal", "adjoint", "dense", "ff",
}
_SPACE_VERBS = {"components", "adherence", "xstar", "yoneda"}


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="emcat",
        description="workbench for finite categories with a factorization system")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", choices=INSTANCES,
                        help="which instance interprets the inputs "
                             "(inferred from file extensions when omitted)")
    common.add_argument("--out", choices=("text", "json", "dot"),
                        default="text", help="output format")
    common.add_argument("--budget", type=int, default=None,
                        help="enumeration budget in ticks")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for sampled corpora")
    sub = top.add_subparsers(dest="verb", required=True)
    for verb, doc in (
        ("check", "parse and validate input files"),
        ("factorize", "split a map into its E-part and M-part"),
        ("reflect", "the discrete reflection of a map"),
        ("final", "is the map in the left class (final)?"),
        ("discrete", "is the map in the right class (a discrete family)?"),
        ("components", "count the connected components of a space"),
        ("neighborhood", "the discrete reflection of a point"),
        ("adherence", "the category of points and displacements of a space"),
        ("colimit", "the universal point under a map, if any"),
        ("absolute", "does the map have an absolute colimit?"),
        ("universal", "check the couniversal property of the reflection"),
        ("adjoint", "is the map adjunctible?"),
        ("dense", "is the map dense?"),
        ("ff", "is the map fully faithful?"),
        ("dual1", "compare component counts of the two comma pullbacks"),
        ("yoneda", "check the power-object map of a poset"),
        ("xstar", "the category of points and arrows of a space"),
        ("dot", "draw a space or a discrete family"),
        ("suite", "run the property suite over enumerated corpora"),
    ):
        p = sub.add_parser(verb, parents=[common], help=doc, description=doc)
        if verb == "suite":
            p.add_argument("--max-obj", type=int, default=3,
                           help="category corpus: object bound")
            p.add_argument("--max-arr", type=int, default=8,
                           help="category corpus: arrow bound")
            p.add_argument("--filter", default=None,
                           help="glob over property ids, e.g. 'FS-*'")
            p.add_argument("--max-cases", type=int, default=500,
                           help="per-property sample cap")
            p.add_argument("--report-dir", default=None,
                           help="write report.json, summary.tsv and figures here")
        else:
            p.add_argument("files", nargs="+", metavar="FILE")
    return top


# ---------------------------------------------------------------------------
# input plumbing

_EXT_KIND = {".poset": "pos", ".graph": "gph", ".set": "finset",
             ".fincat": "cat"}


def _space_kind(space) -> str:
    if isinstance(space, FinCat):
        return "cat"
    if isinstance(space, Poset):
        return "pos"
    if isinstance(space, ReflexiveGraph):
        return "gph"
    return "finset"


def _load_map_group(files: list[str], inst_name: Optional[str]):
    """Load ``[space files...] mapfile`` into a map and the instance name."""
    *space_paths, map_path = files
    ext = os.path.splitext(map_path)[1]
    if ext == ".fn":
        if space_paths:
            raise ParseError("functor files carry their own endpoints; "
                             "extra space files are not allowed",
                             map_path, 0, 0)
        if inst_name not in (None, "cat"):
            raise ParseError(f"functor files belong to the cat instance, "
                             f"not {inst_name!r}", map_path, 0, 0)
        return read_functor(map_path), "cat"
    if ext != ".map":
        raise ParseError(f"expected a .map or .fn file, got {ext!r}",
                         map_path, 0, 0)
    spaces = [read_space(p) for p in space_paths]
    with open(map_path, encoding="utf-8") as fh:
        text = fh.read()
    heads = {row[0].text for row in _tokenize(text)}
    refs = [row[1].text for row in _tokenize(text)
            if row[0].text in ("source", "target") and len(row) > 1]
    source = target = None
    queue = list(spaces)
    if "source" not in heads and queue:
        source = queue.pop(0)
    if "target" not in heads and queue:
        target = queue.pop(0)
    if queue:
        raise ParseError("more space files than open endpoints",
                         map_path, 0, 0)
    kind = inst_name
    if kind is None:
        for end in (source, target):
            if end is not None:
                kind = _space_kind(end)
        for ref in refs:
            kind = kind or _EXT_KIND.get(os.path.splitext(ref)[1])
        if kind is None:
            raise ParseError("cannot infer the instance; pass --instance",
                             map_path, 0, 0)
        if kind == "cat":
            raise ParseError("category maps are .fn files", map_path, 0, 0)
    return _parse_map(text, map_path, kind, source, target), kind


def _load_space(path: str, inst_name: Optional[str]):
    space = read_space(path)
    return space, inst_name or _space_kind(space)


def _instance(name: str):
    return instance_registry()[name]


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.out == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _total(m):
    """The total space of a family, uniform across the map types."""
    return m.src


def _map_text(m) -> str:
    if isinstance(m, FinFunctor):
        return emit_functor(m).rstrip("\n")
    return emit_map(m).rstrip("\n")


def _indent(text: str) -> str:
    return "\n".join("  " + ln for ln in text.splitlines())


def _point_name(x) -> str:
    if isinstance(x, FinFunctor):
        objs, _ = _cat_names(x.tgt)
        return objs[x.obj_map[0]]
    if isinstance(x, PosetMap):
        return x.tgt.names[x.values[0]]
    if isinstance(x, FinSetMap):
        return _space_names(x.tgt)[x.values[0]]
    if isinstance(x, GraphMap):
        nodes, _ = _graph_names(x.tgt)
        return nodes[x.node_map[0]]
    return repr(x)


def _budget(args) -> Budget:
    return Budget(args.budget if args.budget is not None else 10 ** 9,
                  args.verb)


def _need_not_dot(args) -> None:
    if args.out == "dot":
        raise ParseError(f"dot output does not apply to {args.verb!r}",
                         "<args>", 0, 0)


# ---------------------------------------------------------------------------
# verbs

def _run_check(args) -> int:
    files = list(args.files)
    if os.path.splitext(files[-1])[1] in (".map", ".fn"):
        m, kind = _load_map_group(files, args.instance)
        inst = _instance(kind)
        _emit(args, {"ok": True, "kind": kind, "map": th.map_json(m)},
              [f"ok: a {kind} map", _indent(_map_text(m))])
        return 0
    lines, payload = [], []
    for path in files:
        space, kind = _load_space(path, args.instance)
        payload.append({"path": path, "kind": kind})
        lines.append(f"ok: {path} ({kind})")
    _emit(args, {"ok": True, "files": payload}, lines)
    return 0


def _run_factorize(args) -> int:
    m, kind = _load_map_group(args.files, args.instance)
    inst = _instance(kind)
    fac = inst.factorize(m)
    if args.out == "dot":
        print(emit_dot(DiscreteSpace(inst.cod(m), fac.m)), end="")
        return 0
    _emit(args, {"e": th.map_json(fac.e), "m": th.map_json(fac.m)},
          ["e:", _indent(_map_text(fac.e)),
           "m:", _indent(_map_text(fac.m))])
    return 0


def _run_reflect(args) -> int:
    m, kind = _load_map_group(args.files, args.instance)
    inst = _instance(kind)
    fac = inst.factorize(m)
    total = _total(fac.m)
    if args.out == "dot":
        print(emit_dot(DiscreteSpace(inst.cod(m), fac.m)), end="")
        return 0
    _emit(args, {"total": th.map_json(fac.m), "m": th.map_json(fac.m)},
          [emit_space(total).rstrip("\n"),
           "m:", _indent(_map_text(fac.m))])
    return 0


def _run_final(args) -> int:
    _need_not_dot(args)
    m, kind = _load_map_group(args.files, args.instance)
    inst = _instance(kind)
    if in_E(inst, m):
        _emit(args, {"final": True}, ["final"])
        return 0
    fac = inst.factorize(m)
    total = _total(fac.m)
    witness = None
    for x in inst.points(inst.cod(m)):
        fiber = [t for t in inst.points(total)
                 if inst.map_eq(inst.compose(t, fac.m), x)]
        if len(fiber) != 1:
            witness = (x, len(fiber))
            break
    x, count = witness
    _emit(args, {"final": False,
                 "witness": {"point": _point_name(x), "fiber": count}},
          [f"not final: the fiber over {_point_name(x)!r} has {count} "
           f"components (wanted 1)"])
    return 1


def _run_discrete(args) -> int:
    _need_not_dot(args)
    m, kind = _load_map_group(args.files, args.instance)
    inst = _instance(kind)
    ok = inst.in_M(m)
    _emit(args, {"discrete": ok},
          ["a discrete family" if ok else "not a discrete family"])
    return 0 if ok else 1


def _run_components(args) -> int:
    _need_not_dot(args)
    (path,) = args.files
    space, kind = _load_space(path, args.instance)
    n = th.gamma_components(_instance(kind), space, _budget(args))
    _emit(args, {"components": n}, [f"components: {n}"])
    return 0


def _run_neighborhood(args) -> int:
    m, kind = _load_map_group(args.files, args.instance)
    inst = _instance(kind)
    nb = th.neighborhood(inst, inst.cod(m), m)
    if args.out == "dot":
        print(emit_dot(nb), end="")
        return 0
    _emit(args, {"m": th.map_json(nb.m),
                 "final_point": th.map_json(nb.final_point)},
          [emit_space(_total(nb.m)).rstrip("\n"),
           "m:", _indent(_map_text(nb.m)),
           "final point:", _indent(_map_text(nb.final_point))])
    return 0


def _run_adherence(args) -> int:
    (path,) = args.files
    space, kind = _load_space(path, args.instance)
    A = th.adherence(_instance(kind), space, _budget(args))
    if args.out == "dot":
        print(emit_dot(A.cat), end="")
        return 0
    _emit(args, {"points": len(A.points),
                 "displacements": len(A.displacements)},
          [emit_space(A.cat).rstrip("\n")])
    return 0


def _run_colimit(args) -> int:
    _need_not_dot(args)
    m, kind = _load_map_group(args.files, args.instance)
    inst = _instance(kind)
    res = th.colimit(inst, m, _budget(args))
    if res is None:
        _emit(args, {"colimit": None}, ["no colimit"])
        return 1
    _emit(args, {"colimit": res.to_json(),
                 "vertex": _point_name(res.vertex)},
          [f"vertex: {_point_name(res.vertex)}"])
    return 0


def _run_absolute(args) -> int:
    _need_not_dot(args)
    m, kind = _load_map_group(args.files, args.instance)
    inst = _instance(kind)
    bud = _budget(args)
    res = th.colimit(inst, m, bud)
    if res is None:
        _emit(args, {"colimit": None}, ["no colimit"])
        return 1
    ok = th.is_absolute_colimit(inst, m, res.vertex, bud)
    _emit(args, {"vertex": _point_name(res.vertex), "absolute": ok},
          [f"vertex: {_point_name(res.vertex)}",
           "absolute" if ok else "not absolute"])
    return 0 if ok else 1


def _run_universal(args) -> int:
    _need_not_dot(args)
    m, kind = _load_map_group(args.files, args.instance)
    inst = _instance(kind)
    fac = inst.factorize(m)
    rep = reflection_universality_check(inst, m, fac.e, fac.m,
                                        budget=_budget(args))
    _emit(args, rep.to_json(),
          [("holds" if rep.holds else "fails")
           + f" ({rep.cases_checked} cases)"])
    return 0 if rep.holds else 1


def _bool_verb(args, fn, yes: str, no: str) -> int:
    _need_not_dot(args)
    m, kind = _load_map_group(args.files, args.instance)
    inst = _instance(kind)
    ok = fn(inst, m, _budget(args))
    _emit(args, {"holds": ok}, [yes if ok else no])
    return 0 if ok else 1


def _run_dual1(args) -> int:
    _need_not_dot(args)
    files = list(args.files)
    if len(files) < 2:
        raise ParseError("dual1 needs two map files", "<args>", 0, 0)
    p, kind = _load_map_group(files[:-1], args.instance)
    q, _ = _load_map_group([files[-1]], kind)
    inst = _instance(kind)
    ok = th.check_dual1(inst, p, q, _budget(args))
    _emit(args, {"holds": ok}, ["holds" if ok else "fails"])
    return 0 if ok else 1


def _run_yoneda(args) -> int:
    _need_not_dot(args)
    (path,) = args.files
    space, kind = _load_space(path, args.instance)
    if kind not in ("pos", "pos-comp"):
        raise UnsupportedOperation(
            f"power objects are available for posets, not {kind!r}")
    data = pos_power_object(space)
    rep = th.check_yoneda_map(_instance(kind), data.yoneda,
                              budget=_budget(args))
    _emit(args, rep.to_json(),
          [("holds" if rep.holds else "fails")
           + f" ({rep.cases_checked} cases, power object of size "
           + f"{len(data.masks)})"])
    return 0 if rep.holds else 1


def _run_xstar(args) -> int:
    (path,) = args.files
    space, kind = _load_space(path, args.instance)
    star = ao.x_star(_instance(kind), space, _budget(args))
    if args.out == "dot":
        print(emit_dot(star.cat), end="")
        return 0
    _emit(args, {"points": len(star.points), "arrows": len(star.arrows)},
          [emit_space(star.cat).rstrip("\n")])
    return 0


def _run_dot(args) -> int:
    files = list(args.files)
    if os.path.splitext(files[-1])[1] in (".map", ".fn"):
        m, kind = _load_map_group(files, args.instance)
        inst = _instance(kind)
        if not inst.in_M(m):
            raise ValidationError(
                "dot draws discrete families; this map is not in M "
                "(factorize it first)")
        print(emit_dot(DiscreteSpace(inst.cod(m), m)), end="")
        return 0
    (path,) = files
    space, _ = _load_space(path, args.instance)
    print(emit_dot(space), end="")
    return 0


def _run_suite(args) -> int:
    if args.instance:
        if args.instance == "cat":
            corpora = {"cat": cat_corpus(args.max_obj, args.max_arr,
                                         seed=args.seed, budget=args.budget)}
        elif args.instance in ("pos", "pos-comp"):
            corpora = {args.instance: pos_corpus(
                seed=args.seed, instance=args.instance, budget=args.budget)}
        else:
            builder = gph_corpus if args.instance == "gph" else finset_corpus
            corpora = {args.instance: builder(seed=args.seed,
                                              budget=args.budget)}
    else:
        corpora = standard_corpora(seed=args.seed, budget=args.budget,
                                   max_cat_obj=args.max_obj,
                                   max_cat_arr=args.max_arr)
    rep = run_theorem_suite(corpora, property_filter=args.filter,
                            budget=args.budget, max_cases=args.max_cases)
    if args.report_dir:
        _write_report(rep, args.report_dir)
    if args.out == "json":
        print(rep.render(), end="")
    else:
        for rid, status, insts, cases, sampled, reason in rep.summary_rows():
            note = f"  ({reason})" if reason else ""
            print(f"{rid:8s} {status:4s} cases={cases:<6d} "
                  f"sampled={sampled:3s} [{insts}]{note}")
        n_fail = len(rep.failures())
        print(f"suite: {len(rep.results)} properties, {n_fail} failed")
    return 0 if rep.passed() else 1


def _write_report(rep, out_dir: str) -> None:
    from .figures import render_figures

    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "report.json"), "w",
              encoding="utf-8") as fh:
        fh.write(rep.render())
    with open(os.path.join(out_dir, "summary.tsv"), "w",
              encoding="utf-8") as fh:
        fh.write("id\tstatus\tinstances\tcases\tsampled\treason\n")
        for row in rep.summary_rows():
            fh.write("\t".join(str(v) for v in row) + "\n")
    render_figures(rep, out_dir)


_HANDLERS = {
    "check": _run_check,
    "factorize": _run_factorize,
    "reflect": _run_reflect,
    "final": _run_final,
    "discrete": _run_discrete,
    "components": _run_components,
    "neighborhood": _run_neighborhood,
    "adherence": _run_adherence,
    "colimit": _run_colimit,
    "absolute": _run_absolute,
    "universal": _run_universal,
    "adjoint": lambda a: _bool_verb(a, th.is_adjunctible,
                                    "adjunctible", "not adjunctible"),
    "dense": lambda a: _bool_verb(a, th.is_dense, "dense", "not dense"),
    "ff": lambda a: _bool_verb(a, th.is_fully_faithful,
                               "fully faithful", "not fully faithful"),
    "dual1": _run_dual1,
    "yoneda": _run_yoneda,
    "xstar": _run_xstar,
    "dot": _run_dot,
    "suite": _run_suite,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _HANDLERS[args.verb](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValidationError, TargetMismatch, UnsupportedOperation,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SizeBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
