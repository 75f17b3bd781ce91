"""File formats.

Graphs, digraphs, and trees use a line-oriented text format:

    graph <n> <m> <q>      (or: digraph / tree)
    u v w                  (one line per edge; w omitted means 1)
    ...
    leaves l1 l2 ...       (trees only)
    root r                 (trees only, optional)

Minor models, witnesses, and selections are JSON with explicit arrays,
written with sorted keys so identical runs produce identical bytes.
Blank lines and '#' comments are allowed in the text formats.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InputError
from .model import (
    CompleteWeightedDigraph,
    CycleWitness,
    LabeledTree,
    MinorModel,
    PatternGraph,
    Residue,
    SubdivisionWitness,
    WeightedGraph,
)
from .treeselect import HIGH_DEGREE, LONG_PATH, LeafSelection

__all__ = [
    "read_graph",
    "write_graph",
    "read_digraph",
    "write_digraph",
    "read_tree",
    "write_tree",
    "read_model",
    "write_model",
    "read_witness",
    "write_witness",
    "witness_to_dict",
    "selection_to_dict",
    "write_selection",
    "read_selection",
    "parse_pattern",
]


def _lines(path) -> list[tuple[int, list[str]]]:
    out = []
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line.split()))
    return out


def _int(tok: str, path, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"{path}:{no}: expected an integer, got {tok!r}") from None


def _parse_edge_lines(lines, path, n, m, q, start=1):
    edges = []
    idx = start
    for _ in range(m):
        if idx >= len(lines):
            raise InputError(f"{path}: expected {m} edge lines, found {len(lines) - start}")
        no, toks = lines[idx]
        if len(toks) not in (2, 3):
            raise InputError(f"{path}:{no}: edge line must be 'u v' or 'u v w'")
        u = _int(toks[0], path, no)
        v = _int(toks[1], path, no)
        w = _int(toks[2], path, no) if len(toks) == 3 else 1
        edges.append((u, v, w))
        idx += 1
    return edges, idx


def read_graph(path) -> WeightedGraph:
    lines = _lines(path)
    if not lines or lines[0][1][0] != "graph":
        raise InputError(f"{path}: expected header 'graph <n> <m> <q>'")
    no, toks = lines[0]
    if len(toks) != 4:
        raise InputError(f"{path}:{no}: header must be 'graph <n> <m> <q>'")
    n, m, q = (_int(t, path, no) for t in toks[1:])
    edges, idx = _parse_edge_lines(lines, path, n, m, q)
    if idx != len(lines):
        raise InputError(f"{path}: trailing content after {m} edges")
    try:
        return WeightedGraph(n, edges, q)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def write_graph(path, g: WeightedGraph) -> None:
    out = [f"graph {g.n} {g.m} {g.q}"]
    for u, v, w in g.edges():
        out.append(f"{u} {v} {w}")
    Path(path).write_text("\n".join(out) + "\n")


def read_digraph(path) -> CompleteWeightedDigraph:
    lines = _lines(path)
    if not lines or lines[0][1][0] != "digraph":
        raise InputError(f"{path}: expected header 'digraph <n> <m> <q>'")
    no, toks = lines[0]
    if len(toks) != 4:
        raise InputError(f"{path}:{no}: header must be 'digraph <n> <m> <q>'")
    n, m, q = (_int(t, path, no) for t in toks[1:])
    if m != n * (n - 1):
        raise InputError(f"{path}:{no}: complete digraph needs m = n(n-1)")
    arcs, idx = _parse_edge_lines(lines, path, n, m, q)
    if idx != len(lines):
        raise InputError(f"{path}: trailing content after {m} arcs")
    w = [[0] * n for _ in range(n)]
    seen = set()
    for u, v, x in arcs:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise InputError(f"{path}: invalid arc ({u},{v})")
        if (u, v) in seen:
            raise InputError(f"{path}: duplicate arc ({u},{v})")
        seen.add((u, v))
        w[u][v] = x
    try:
        return CompleteWeightedDigraph(w, q)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def write_digraph(path, d: CompleteWeightedDigraph) -> None:
    out = [f"digraph {d.n} {d.n * (d.n - 1)} {d.q}"]
    for u in range(d.n):
        for v in range(d.n):
            if u != v:
                out.append(f"{u} {v} {d.w[u][v]}")
    Path(path).write_text("\n".join(out) + "\n")


def read_tree(path) -> LabeledTree:
    lines = _lines(path)
    if not lines or lines[0][1][0] != "tree":
        raise InputError(f"{path}: expected header 'tree <n> <m> <q>'")
    no, toks = lines[0]
    if len(toks) != 4:
        raise InputError(f"{path}:{no}: header must be 'tree <n> <m> <q>'")
    n, m, q = (_int(t, path, no) for t in toks[1:])
    edges, idx = _parse_edge_lines(lines, path, n, m, q)
    leaves: list[int] = []
    root = None
    for no, toks in lines[idx:]:
        if toks[0] == "leaves":
            leaves = [_int(t, path, no) for t in toks[1:]]
        elif toks[0] == "root":
            if len(toks) != 2:
                raise InputError(f"{path}:{no}: root line must be 'root r'")
            root = _int(toks[1], path, no)
        else:
            raise InputError(f"{path}:{no}: unexpected line {' '.join(toks)!r}")
    try:
        return LabeledTree(graph=WeightedGraph(n, edges, q), leaves=tuple(leaves), root=root)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def write_tree(path, t: LabeledTree) -> None:
    g = t.graph
    out = [f"tree {g.n} {g.m} {g.q}"]
    for u, v, w in g.edges():
        out.append(f"{u} {v} {w}")
    out.append("leaves " + " ".join(str(v) for v in t.leaves))
    if t.root is not None:
        out.append(f"root {t.root}")
    Path(path).write_text("\n".join(out) + "\n")


def _dump_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _load_json(path) -> dict:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise InputError(f"{path}: expected a JSON object")
    return obj


def write_model(path, model: MinorModel, x_sets=None, y_sets=None) -> None:
    obj = {
        "branch_sets": [list(s) for s in model.branch_sets],
        "spanning_trees": [[list(e) for e in t] for t in model.spanning_trees],
        "cross_edges": [
            [i, j, u, v] for (i, j), (u, v) in sorted(model.cross_edges.items())
        ],
    }
    if x_sets is not None and y_sets is not None:
        obj["partition"] = {"x": sorted(x_sets), "y": sorted(y_sets)}
    _dump_json(path, obj)


def read_model(path, host: WeightedGraph):
    """Returns (model, partition) where partition is (x_sets, y_sets) or None."""
    obj = _load_json(path)
    try:
        model = MinorModel(
            host=host,
            branch_sets=tuple(tuple(s) for s in obj["branch_sets"]),
            spanning_trees=tuple(
                tuple(tuple(e) for e in t) for t in obj["spanning_trees"]
            ),
            cross_edges={(i, j): (u, v) for i, j, u, v in obj["cross_edges"]},
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed model ({exc})") from exc
    partition = None
    if "partition" in obj:
        try:
            partition = (
                tuple(int(i) for i in obj["partition"]["x"]),
                tuple(int(i) for i in obj["partition"]["y"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"{path}: malformed partition ({exc})") from exc
    return model, partition


def witness_to_dict(w) -> dict:
    if isinstance(w, CycleWitness):
        kind = "digraph" if isinstance(w.host, CompleteWeightedDigraph) else "graph"
        return {
            "kind": "cycle",
            "host_kind": kind,
            "q": w.q,
            "vertices": list(w.vertices),
        }
    if isinstance(w, SubdivisionWitness):
        return {
            "kind": "subdivision",
            "q": w.q,
            "pattern": {"n": w.pattern.n, "edges": [list(e) for e in w.pattern.edges]},
            "branch_vertices": list(w.branch_vertices),
            "paths": [list(p) for p in w.paths],
        }
    raise InputError(f"unknown witness type {type(w).__name__}")


def write_witness(path, w) -> None:
    _dump_json(path, witness_to_dict(w))


def read_witness(path, host):
    """Load a witness file and attach it to its host graph or digraph."""
    obj = _load_json(path)
    kind = obj.get("kind")
    try:
        if kind == "cycle":
            return CycleWitness(host=host, vertices=tuple(obj["vertices"]), q=obj["q"])
        if kind == "subdivision":
            if not isinstance(host, WeightedGraph):
                raise InputError("subdivision witnesses verify against a graph host")
            pattern = PatternGraph(
                obj["pattern"]["n"], tuple(tuple(e) for e in obj["pattern"]["edges"])
            )
            return SubdivisionWitness(
                host=host,
                pattern=pattern,
                branch_vertices=tuple(obj["branch_vertices"]),
                paths=tuple(tuple(p) for p in obj["paths"]),
                q=obj["q"],
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed witness ({exc})") from exc
    raise InputError(f"{path}: unknown witness kind {kind!r}")


def selection_to_dict(sel: LeafSelection) -> dict:
    obj = {
        "kind": "selection",
        "case": sel.case,
        "k": sel.k,
        "q": sel.residue.q,
        "residue": sel.residue.value,
        "leaves": list(sel.leaves),
        "down_paths": [list(p) for p in sel.down_paths],
    }
    if sel.case == HIGH_DEGREE:
        obj["hub"] = sel.hub
    else:
        obj["backbone"] = list(sel.backbone)
        obj["branch_vertices"] = list(sel.branch_vertices)
        obj["branch_positions"] = list(sel.branch_positions)
    return obj


def write_selection(path, sel: LeafSelection) -> None:
    _dump_json(path, selection_to_dict(sel))


def read_selection(path) -> LeafSelection:
    obj = _load_json(path)
    if obj.get("kind") != "selection":
        raise InputError(f"{path}: not a selection witness")
    try:
        case = obj["case"]
        common = dict(
            leaves=tuple(obj["leaves"]),
            residue=Residue(obj["residue"], obj["q"]),
            case=case,
            down_paths=tuple(tuple(p) for p in obj["down_paths"]),
        )
        if case == HIGH_DEGREE:
            return LeafSelection(hub=obj["hub"], **common)
        if case == LONG_PATH:
            return LeafSelection(
                backbone=tuple(obj["backbone"]),
                branch_vertices=tuple(obj["branch_vertices"]),
                branch_positions=tuple(obj["branch_positions"]),
                **common,
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed selection ({exc})") from exc
    raise InputError(f"{path}: unknown selection case {obj.get('case')!r}")


def parse_pattern(spec: str) -> PatternGraph:
    """Parse a pattern description: 'cycle:K', 'path:K', 'complete:K', 'edge',
    or 'edges:0-1,1-2,...'."""
    spec = spec.strip().lower()
    if spec == "edge":
        return PatternGraph(2, ((0, 1),))
    if ":" in spec:
        kind, arg = spec.split(":", 1)
        if kind == "cycle":
            return PatternGraph.cycle(int(arg))
        if kind == "path":
            return PatternGraph.path(int(arg))
        if kind == "complete":
            return PatternGraph.complete(int(arg))
        if kind == "edges":
            edges = []
            for part in arg.split(","):
                a, _, b = part.partition("-")
                edges.append((int(a), int(b)))
            n = max(max(e) for e in edges) + 1
            return PatternGraph(n, tuple(edges))
    raise InputError(f"cannot parse pattern {spec!r}")
