"""Leaf selection in Z_q-labeled trees.

Given a tree with a designated leaf set L, select k leaves and a residue a
such that every triple of selected leaves meets at a common vertex through
three disjoint paths of weight a each.  Success is guaranteed once
|L| >= f1_bound(k, q); below that threshold the selection runs best-effort
and failure is an ordinary outcome, not an exception.

Two cases mirror the underlying pigeonhole argument: a HIGH_DEGREE hub whose
child subtrees supply same-residue leaves, or a LONG_PATH backbone whose
same-prefix branch vertices supply same-residue off-path leaves.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order

from .errors import InputError
from .model import LabeledTree, Residue, WeightedGraph, path_weight

__all__ = [
    "f1_bound",
    "steiner_trim",
    "LeafSelection",
    "SelectionFailure",
    "select_leaves",
    "certificate_for_triple",
    "SelectionCheck",
    "verify_selection_report",
    "verify_selection",
    "HIGH_DEGREE",
    "LONG_PATH",
]

HIGH_DEGREE = "high_degree"
LONG_PATH = "long_path"

_NO_LEAF = 1 << 62


def f1_bound(k: int, q: int) -> int:
    """Leaf count above which selection is guaranteed: ((k-1)q+1)^((k-1)q^2+1).

    Exact arbitrary-precision integer; the values overflow fixed widths for
    all but the smallest parameters.
    """
    if k < 2 or q < 2:
        raise InputError("k and q must both be at least 2")
    return ((k - 1) * q + 1) ** ((k - 1) * q * q + 1)


def _trim(tree: LabeledTree) -> tuple[np.ndarray, list[int]]:
    """Peel non-designated degree-1 vertices; returns (keep mask, new degrees)."""
    g = tree.graph
    n = g.n
    keep = np.ones(n, dtype=bool)
    deg = g.degrees().astype(np.int64).tolist()
    in_l = np.zeros(n, dtype=bool)
    if tree.leaves:
        in_l[np.asarray(tree.leaves, dtype=np.int64)] = True
    indptr = g._indptr
    nbr = g._nbr
    stack = [v for v in range(n) if deg[v] == 1 and not in_l[v]]
    while stack:
        u = stack.pop()
        if not keep[u] or deg[u] != 1:
            continue
        keep[u] = False
        deg[u] = 0
        for w in nbr[indptr[u] : indptr[u + 1]].tolist():
            if keep[w]:
                deg[w] -= 1
                if deg[w] == 1 and not in_l[w]:
                    stack.append(w)
                break
    return keep, deg


def steiner_trim(t: LabeledTree) -> LabeledTree:
    """Minimal subtree spanning the designated leaves.

    Idempotent; every leaf of the result is designated.  The result carries
    ``origin`` mapping its vertices back to ``t`` (None when nothing was
    removed and ``t`` itself is returned).
    """
    if not t.leaves:
        raise InputError("cannot trim with an empty designated leaf set")
    keep, _ = _trim(t)
    if keep.all():
        return t
    g = t.graph
    kept = np.nonzero(keep)[0]
    newid = np.full(g.n, -1, dtype=np.int64)
    newid[kept] = np.arange(len(kept))
    lo, hi, ew = g.edge_arrays()
    emask = keep[lo] & keep[hi]
    sub = WeightedGraph.from_arrays(
        len(kept), newid[lo[emask]], newid[hi[emask]], ew[emask], g.q
    )
    leaves = tuple(int(newid[v]) for v in t.leaves)
    root = None
    if t.root is not None and keep[t.root]:
        root = int(newid[t.root])
    return LabeledTree(graph=sub, leaves=leaves, root=root, origin=tuple(int(v) for v in kept))


@dataclass(frozen=True)
class SelectionFailure:
    """Best-effort miss: the pigeonholes found no size-k residue class."""

    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class LeafSelection:
    """k selected leaves, their shared residue, and the case certificate data.

    HIGH_DEGREE: all leaves descend into distinct child subtrees of ``hub``;
    ``down_paths[i]`` runs hub -> leaves[i] with weight a.

    LONG_PATH: ``backbone`` is a root-to-leaf path; ``branch_vertices[i]`` is
    leaves[i]'s branch vertex on it (``branch_positions`` gives its index in
    the backbone); consecutive backbone segments between branch vertices have
    weight 0 and ``down_paths[i]`` runs branch vertex -> leaf with weight a.
    """

    leaves: tuple[int, ...]
    residue: Residue
    case: str
    down_paths: tuple[tuple[int, ...], ...]
    hub: int | None = None
    backbone: tuple[int, ...] | None = None
    branch_vertices: tuple[int, ...] | None = None
    branch_positions: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return True

    @property
    def k(self) -> int:
        return len(self.leaves)


def _rooted(g: WeightedGraph, keep: np.ndarray, root: int):
    """BFS arrays of the kept subgraph: (order, pred, weight-to-parent)."""
    lo, hi, ew = g.edge_arrays()
    emask = keep[lo] & keep[hi]
    l2 = lo[emask]
    h2 = hi[emask]
    n = g.n
    sub = csr_matrix(
        (np.ones(2 * len(l2), dtype=np.int8), (np.concatenate([l2, h2]), np.concatenate([h2, l2]))),
        shape=(n, n),
    )
    order, pred = breadth_first_order(sub, root, directed=False, return_predecessors=True)
    wpar = np.zeros(n, dtype=np.int64)
    if len(order) > 1:
        nodes = order[1:]
        wpar[nodes] = g.edge_weights(pred[nodes], nodes)
    return sub, order, pred, wpar


def _walk_up(pred: list[int], leaf: int, top: int) -> list[int]:
    """Vertices from ``top`` down to ``leaf`` along parent pointers."""
    path = [leaf]
    v = leaf
    while v != top:
        v = pred[v]
        path.append(v)
    path.reverse()
    return path


def select_leaves(t: LabeledTree, k: int, q: int):
    """Select k leaves and a residue with the shared-triple-vertex property.

    Mirrors the guarantee argument: trim to the minimal subtree spanning L,
    root at the smallest-index vertex of degree >= 3, try every vertex of
    degree >= (k-1)q+2 as a hub (case HIGH_DEGREE), then fall back to the
    path with the most degree->=3 vertices (case LONG_PATH).  Returns a
    LeafSelection or a SelectionFailure; the guarantee only applies when
    |L| >= f1_bound(k, q).
    """
    if k < 2 or q < 2:
        raise InputError("k and q must both be at least 2")
    if q != t.q:
        raise InputError(f"tree labels live in Z_{t.q}, selection asked for q={q}")
    if not t.leaves:
        return SelectionFailure("empty designated leaf set")

    g = t.graph
    keep, deg = _trim(t)
    deg_arr = np.asarray(deg, dtype=np.int64)

    candidates_root = np.nonzero(deg_arr >= 3)[0]
    if len(candidates_root) == 0:
        return SelectionFailure("trimmed tree is a path; needs |L| >= 3")
    root = int(candidates_root[0])

    sub, order, pred, wpar = _rooted(g, keep, root)
    n = g.n
    order_l = order.tolist()
    pred_l = pred.tolist()
    wpar_l = wpar.tolist()

    wdepth = [0] * n
    for v in order_l[1:]:
        wdepth[v] = wdepth[pred_l[v]] + wpar_l[v]
    wdepth_arr = np.asarray(wdepth, dtype=np.int64)

    min_leaf = [_NO_LEAF] * n
    for v in t.leaves:
        if keep[v]:
            min_leaf[v] = v
    for v in reversed(order_l):
        p = pred_l[v]
        if p >= 0 and min_leaf[v] < min_leaf[p]:
            min_leaf[p] = min_leaf[v]
    min_leaf_arr = np.asarray(min_leaf, dtype=np.int64)

    indptr = sub.indptr
    indices = sub.indices
    pred_arr = pred

    # Case 1: a hub of degree >= (k-1)q+2 whose child subtrees give k leaves
    # reached by same-residue paths from the hub.
    threshold = (k - 1) * q + 2
    for v in np.nonzero(deg_arr >= threshold)[0].tolist():
        row = indices[indptr[v] : indptr[v + 1]]
        children = row[pred_arr[row] == v]
        reps = min_leaf_arr[children]
        reps = reps[reps < _NO_LEAF]
        if len(reps) == 0:
            continue
        residues = (wdepth_arr[reps] - wdepth[v]) % q
        sizes = np.bincount(residues, minlength=q)
        best = int(np.argmax(sizes))
        if sizes[best] < k:
            continue
        chosen = np.sort(reps[residues == best])[:k]
        down = tuple(tuple(_walk_up(pred_l, int(leaf), v)) for leaf in chosen)
        return LeafSelection(
            leaves=tuple(int(x) for x in chosen),
            residue=Residue(best, q),
            case=HIGH_DEGREE,
            down_paths=down,
            hub=int(v),
        )

    # Case 2: the root-to-leaf path with the most degree->=3 vertices.
    leaves_arr = np.asarray([v for v in t.leaves if keep[v]], dtype=np.int64)
    bc = [0] * n
    deg3 = (deg_arr >= 3).tolist()
    bc[root] = 1 if deg3[root] else 0
    for v in order_l[1:]:
        bc[v] = bc[pred_l[v]] + (1 if deg3[v] else 0)
    bc_arr = np.asarray(bc, dtype=np.int64)
    counts = bc_arr[leaves_arr]
    best_leaf = int(leaves_arr[counts == counts.max()].min())

    backbone = _walk_up(pred_l, best_leaf, root)
    u1: list[int] = []
    u1_next: list[int] = []
    u1_pos: list[int] = []
    for i, v in enumerate(backbone[:-1]):
        if deg3[v]:
            u1.append(v)
            u1_next.append(backbone[i + 1])
            u1_pos.append(i)
    if not u1:
        return SelectionFailure("no branch vertices along the maximal path")

    u1_arr = np.asarray(u1, dtype=np.int64)
    prefix_res = wdepth_arr[u1_arr] % q
    sizes = np.bincount(prefix_res, minlength=q)
    best_prefix = int(np.argmax(sizes))
    sel_mask = (prefix_res == best_prefix).tolist()

    u2: list[int] = []
    reps2: list[int] = []
    u2_pos: list[int] = []
    for i, take in enumerate(sel_mask):
        if not take:
            continue
        u = u1[i]
        succ = u1_next[i]
        best_rep = _NO_LEAF
        for c in indices[indptr[u] : indptr[u + 1]].tolist():
            if c == succ or pred_l[c] != u:
                continue
            if min_leaf[c] < best_rep:
                best_rep = min_leaf[c]
        if best_rep < _NO_LEAF:
            u2.append(u)
            reps2.append(best_rep)
            u2_pos.append(u1_pos[i])
    if not u2:
        return SelectionFailure("no off-path leaves available on the backbone")

    u2_arr = np.asarray(u2, dtype=np.int64)
    reps2_arr = np.asarray(reps2, dtype=np.int64)
    down_res = (wdepth_arr[reps2_arr] - wdepth_arr[u2_arr]) % q
    sizes2 = np.bincount(down_res, minlength=q)
    best_down = int(np.argmax(sizes2))
    if sizes2[best_down] < k:
        return SelectionFailure(
            f"largest residue class has {int(sizes2[best_down])} leaves, needs {k}"
        )
    picked = np.nonzero(down_res == best_down)[0][:k]
    branch = [int(u2_arr[i]) for i in picked]
    chosen = [int(reps2_arr[i]) for i in picked]
    positions = [u2_pos[int(i)] for i in picked]
    down = tuple(tuple(_walk_up(pred_l, leaf, u)) for leaf, u in zip(chosen, branch))
    return LeafSelection(
        leaves=tuple(chosen),
        residue=Residue(best_down, q),
        case=LONG_PATH,
        down_paths=down,
        backbone=tuple(backbone),
        branch_vertices=tuple(branch),
        branch_positions=tuple(positions),
    )


def certificate_for_triple(
    sel: LeafSelection, x1: int, x2: int, x3: int
) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Common vertex v plus three paths v -> x_i, disjoint outside v.

    HIGH_DEGREE: v is the hub and the stored down-paths descend into three
    distinct child subtrees.  LONG_PATH: v is the middle branch vertex; the
    outer paths follow the backbone (weight 0) before branching off.
    """
    triple = (x1, x2, x3)
    if len(set(triple)) != 3:
        raise InputError("certificate needs three distinct leaves")
    idx = {}
    for x in triple:
        if x not in sel.leaves:
            raise InputError(f"leaf {x} is not in the selection")
        idx[x] = sel.leaves.index(x)

    if sel.case == HIGH_DEGREE:
        assert sel.hub is not None
        return sel.hub, tuple(sel.down_paths[idx[x]] for x in triple)

    assert sel.backbone is not None
    assert sel.branch_positions is not None
    ordered = sorted(triple, key=lambda x: sel.branch_positions[idx[x]])
    pos = [sel.branch_positions[idx[x]] for x in ordered]
    v = sel.branch_vertices[idx[ordered[1]]]

    first_seg = tuple(reversed(sel.backbone[pos[0] : pos[1] + 1]))
    third_seg = sel.backbone[pos[1] : pos[2] + 1]
    paths_by_leaf = {
        ordered[0]: first_seg + sel.down_paths[idx[ordered[0]]][1:],
        ordered[1]: sel.down_paths[idx[ordered[1]]],
        ordered[2]: third_seg + sel.down_paths[idx[ordered[2]]][1:],
    }
    return v, tuple(paths_by_leaf[x] for x in triple)


@dataclass(frozen=True)
class SelectionCheck:
    ok: bool
    vacuous: bool
    issues: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def verify_selection_report(t: LabeledTree, sel: LeafSelection) -> SelectionCheck:
    """Independently re-check the selection contract against the tree.

    For every triple of selected leaves the certificate paths are re-walked
    in ``t``: valid edges, distinct vertices, pairwise disjoint outside the
    common vertex, and each of weight a mod q.  Fewer than three leaves make
    the triple property vacuous; that is reported as such.
    """
    issues: list[str] = []
    g = t.graph
    designated = set(t.leaves)
    for x in sel.leaves:
        if x not in designated:
            issues.append(f"selected leaf {x} is not designated")
    if len(set(sel.leaves)) != len(sel.leaves):
        issues.append("selected leaves are not distinct")
    if sel.residue.q != t.q:
        issues.append(f"residue modulus {sel.residue.q} differs from tree modulus {t.q}")
    if issues:
        return SelectionCheck(ok=False, vacuous=False, issues=tuple(issues))
    if len(sel.leaves) < 3:
        return SelectionCheck(ok=True, vacuous=True, issues=())

    a = sel.residue.value
    for triple in itertools.combinations(sel.leaves, 3):
        try:
            v, paths = certificate_for_triple(sel, *triple)
        except InputError as exc:
            issues.append(f"triple {triple}: no certificate ({exc})")
            continue
        seen: list[set[int]] = []
        for leaf, path in zip(triple, paths):
            tag = f"triple {triple}, leaf {leaf}"
            if path[0] != v or path[-1] != leaf:
                issues.append(f"{tag}: path endpoints are not v..leaf")
                continue
            if len(set(path)) != len(path):
                issues.append(f"{tag}: path repeats a vertex")
                continue
            try:
                w = path_weight(g, path)
            except InputError as exc:
                issues.append(f"{tag}: {exc}")
                continue
            if w.value != a:
                issues.append(f"{tag}: path weight {w.value} != a={a}")
            seen.append(set(path))
        for i in range(len(seen)):
            for j in range(i + 1, len(seen)):
                if seen[i] & seen[j] != {v}:
                    issues.append(f"triple {triple}: paths {i} and {j} meet outside v")
    return SelectionCheck(ok=not issues, vacuous=False, issues=tuple(issues))


def verify_selection(t: LabeledTree, sel: LeafSelection) -> bool:
    """True iff every triple of the selection re-verifies in the tree."""
    return verify_selection_report(t, sel).ok
