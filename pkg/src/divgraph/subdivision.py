"""Best-effort assembly of pattern subdivisions with divisible path lengths.

Pipeline over a complete-minor certificate whose branch sets are partitioned
into X- and Y-supernodes:

1. split every X-Y cross edge by a fresh vertex z (weights 0 into X, 1 into
   Y) and weight all remaining edges 1;
2. run leaf selection inside every X-supernode over its z-leaves;
3. keep N supernodes sharing one residue a;
4. route one vertex-disjoint path per edge of a complete template graph
   through two dedicated Y-supernodes each, recording the path weight as the
   edge's color;
5. search the colored template exhaustively for a monochromatic copy of the
   (q-1)-subdivision of the pattern;
6. stitch the copy into a host subdivision whose per-edge weight is
   2a + (q-1)*2a + q*b = (2a+b)q = 0 mod q, and report it in the original
   (pre-split) host's coordinates.

Guarantee-scale inputs are astronomically large, so every stage fails
honestly (StageFailure) when its pigeonhole misses; the generators module
builds favorable instances where all stages succeed at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded, InputError, InternalInvariantError, StageFailure
from .model import (
    LabeledTree,
    MinorModel,
    PatternGraph,
    Residue,
    SubdivisionWitness,
    WeightedGraph,
    subdivide_pattern,
    validate_minor_model,
    verify_subdivision_witness,
)
from .treeselect import LeafSelection, SelectionFailure, certificate_for_triple, select_leaves

__all__ = [
    "SplitInstance",
    "split_and_weight",
    "XSelection",
    "select_all",
    "common_residue_filter",
    "RoutedEdge",
    "route_edges",
    "find_monochromatic_subdivision",
    "edge_path_residue",
    "assemble_subdivision",
    "build_divisible_subdivision",
    "DEFAULT_RAMSEY_BUDGET",
]

DEFAULT_RAMSEY_BUDGET = 10_000_000


@dataclass(frozen=True, eq=False)
class SplitInstance:
    """The transformed host plus provenance back to the original.

    Every split vertex z has exactly two neighbors: its X-side attachment
    (weight 0) and its Y-side original endpoint (weight 1), so contracting
    all z vertices recovers the original host exactly.
    """

    original: WeightedGraph
    host: WeightedGraph
    model: MinorModel
    x_sets: tuple[int, ...]
    y_sets: tuple[int, ...]
    split_origin: dict  # z -> (x_end, y_end) original edge
    owner: tuple[int, ...]  # host vertex -> branch set index (split model)

    def y_set_of(self, y_vertex: int) -> int:
        return self.owner[y_vertex]


def split_and_weight(model: MinorModel, x_sets, y_sets) -> SplitInstance:
    """Split every X-Y cross edge by a fresh vertex and install 0/1 weights.

    The original host must be unit-weighted (the divisibility claim is about
    path lengths).  Split vertices join their X-supernode, extending its
    spanning tree by the weight-0 half-edge.
    """
    report = validate_minor_model(model)
    if not report:
        raise InputError("invalid minor model: " + "; ".join(report.violations[:5]))
    x_sets = tuple(sorted(int(i) for i in x_sets))
    y_sets = tuple(sorted(int(i) for i in y_sets))
    if sorted(x_sets + y_sets) != list(range(model.size)):
        raise InputError("X/Y partition must cover every branch set exactly once")
    host = model.host
    lo, hi, ew = host.edge_arrays()
    if host.m and (ew != 1).any():
        raise InputError("subdivision pipeline requires a unit-weighted host")

    owner = [-1] * host.n
    for i, s in enumerate(model.branch_sets):
        for v in s:
            owner[v] = i
    is_x = [False] * model.size
    for i in x_sets:
        is_x[i] = True

    new_n = host.n
    eu2: list[int] = []
    ev2: list[int] = []
    ew2: list[int] = []
    split_origin: dict[int, tuple[int, int]] = {}
    z_of_edge: dict[tuple[int, int], int] = {}
    for a, b in zip(lo.tolist(), hi.tolist()):
        ia, ib = owner[a], owner[b]
        cross_xy = (
            ia >= 0
            and ib >= 0
            and ia != ib
            and (is_x[ia] != is_x[ib])
        )
        if cross_xy:
            x_end, y_end = (a, b) if is_x[ia] else (b, a)
            z = new_n
            new_n += 1
            eu2.extend([x_end, z])
            ev2.extend([z, y_end])
            ew2.extend([0, 1])
            split_origin[z] = (x_end, y_end)
            z_of_edge[(a, b)] = z
        else:
            eu2.append(a)
            ev2.append(b)
            ew2.append(1)
    new_host = WeightedGraph(new_n, zip(eu2, ev2, ew2), host.q)

    new_sets = []
    new_trees = []
    z_by_set: dict[int, list[int]] = {i: [] for i in range(model.size)}
    for z, (x_end, _) in split_origin.items():
        z_by_set[owner[x_end]].append(z)
    for i, s in enumerate(model.branch_sets):
        extra = sorted(z_by_set[i])
        new_sets.append(tuple(s) + tuple(extra))
        tree = list(model.spanning_trees[i])
        for z in extra:
            tree.append((split_origin[z][0], z))
        new_trees.append(tuple(tree))

    new_cross = {}
    for (i, j), (u, v) in model.cross_edges.items():
        key = (u, v) if u < v else (v, u)
        if key in z_of_edge:
            z = z_of_edge[key]
            if is_x[i]:
                new_cross[(i, j)] = (z, v)
            else:
                new_cross[(i, j)] = (u, z)
        else:
            new_cross[(i, j)] = (u, v)

    new_model = MinorModel(
        host=new_host,
        branch_sets=tuple(new_sets),
        spanning_trees=tuple(new_trees),
        cross_edges=new_cross,
    )
    owner_full = owner + [owner[split_origin[z][0]] for z in range(host.n, new_n)]
    return SplitInstance(
        original=host,
        host=new_host,
        model=new_model,
        x_sets=x_sets,
        y_sets=y_sets,
        split_origin=split_origin,
        owner=tuple(owner_full),
    )


@dataclass(frozen=True, eq=False)
class XSelection:
    """Leaf selection of one X-supernode, with local/host coordinate maps."""

    x_index: int
    tree: LabeledTree
    to_host: tuple[int, ...]
    selection: LeafSelection
    leaves_host: tuple[int, ...]

    @property
    def residue(self) -> Residue:
        return self.selection.residue

    def to_local(self, host_vertex: int) -> int:
        return self.to_host.index(host_vertex)


def _supernode_tree(inst: SplitInstance, idx: int) -> tuple[LabeledTree, tuple[int, ...]]:
    members = inst.model.branch_sets[idx]
    local = {v: t for t, v in enumerate(members)}
    edges = [
        (local[u], local[v], inst.host.weight(u, v))
        for u, v in inst.model.spanning_trees[idx]
    ]
    leaves = sorted(local[z] for z in members if z in inst.split_origin)
    graph = WeightedGraph(len(members), edges, inst.host.q)
    return LabeledTree(graph=graph, leaves=tuple(leaves)), members


def select_all(inst: SplitInstance, k: int, q: int) -> dict[int, XSelection]:
    """Run leaf selection in every X-supernode over its split-vertex leaves.

    Raises StageFailure naming the first supernode whose selection misses;
    that is the ordinary best-effort outcome below guarantee scale.
    """
    out: dict[int, XSelection] = {}
    for idx in inst.x_sets:
        tree, members = _supernode_tree(inst, idx)
        sel = select_leaves(tree, k, q)
        if isinstance(sel, SelectionFailure):
            raise StageFailure("leaf-selection", f"supernode {idx}: {sel.reason}")
        out[idx] = XSelection(
            x_index=idx,
            tree=tree,
            to_host=members,
            selection=sel,
            leaves_host=tuple(members[t] for t in sel.leaves),
        )
    return out


def common_residue_filter(values, n_needed: int, q: int):
    """Indices of n_needed values sharing the most frequent residue.

    Returns the n_needed smallest such indices (ties between residues go to
    the smaller residue), or None when no residue reaches that multiplicity.
    """
    counts = [0] * q
    for v in values:
        counts[int(v) % q] += 1
    best = max(range(q), key=lambda r: (counts[r], -r))
    if counts[best] < n_needed:
        return None
    picked = [i for i, v in enumerate(values) if int(v) % q == best]
    return tuple(picked[:n_needed])


@dataclass(frozen=True)
class RoutedEdge:
    """One template edge realized as a host path through two Y-supernodes."""

    gamma_edge: tuple[int, int]
    path: tuple[int, ...]
    color: int
    y_sets: tuple[int, int]
    leaves: tuple[int, int]


def _y_neighbor(inst: SplitInstance, leaf: int) -> tuple[int, int]:
    """(Y-set index, Y-side vertex) adjacent to a split leaf; smallest Y wins."""
    best: tuple[int, int] | None = None
    for w in inst.host.neighbors(leaf).tolist():
        idx = inst.owner[w]
        if idx >= 0 and idx in inst.y_sets:
            if best is None or idx < best[0]:
                best = (idx, w)
    if best is None:
        raise InternalInvariantError(f"split leaf {leaf} has no Y-side neighbor")
    return best


def route_edges(
    inst: SplitInstance,
    gamma: PatternGraph,
    selections: dict[int, XSelection],
    chosen: tuple[int, ...],
) -> dict[tuple[int, int], RoutedEdge]:
    """Route one vertex-disjoint host path per template edge.

    ``chosen[v]`` is the X-supernode of template vertex v.  Each edge picks,
    per endpoint, the smallest-index previously unused Y-supernode adjacent
    to a still-unused selected leaf, then walks leaf -> Y tree -> Y-Y cross
    edge -> Y tree -> leaf.  The recorded color is the path weight mod q.
    """
    q = inst.host.q
    used_y: set[int] = set()
    used_leaves: set[int] = set()
    used_vertices: set[int] = set()
    leaf_y: dict[int, tuple[int, int]] = {}
    for v in range(gamma.n):
        xsel = selections[chosen[v]]
        for leaf in xsel.leaves_host:
            leaf_y[leaf] = _y_neighbor(inst, leaf)

    def pick(gv: int) -> tuple[int, int, int]:
        xsel = selections[chosen[gv]]
        candidates = []
        for leaf in xsel.leaves_host:
            if leaf in used_leaves:
                continue
            y_idx, y_vertex = leaf_y[leaf]
            if y_idx in used_y:
                continue
            candidates.append((y_idx, leaf, y_vertex))
        if not candidates:
            raise StageFailure(
                "routing",
                f"no unused Y-supernode reachable from the selected leaves of "
                f"supernode {chosen[gv]} (template vertex {gv})",
            )
        return min(candidates)

    routed: dict[tuple[int, int], RoutedEdge] = {}
    model = inst.model
    for a, b in gamma.edges:
        ya, leaf_a, va = pick(a)
        used_y.add(ya)
        used_leaves.add(leaf_a)
        yb, leaf_b, vb = pick(b)
        used_y.add(yb)
        used_leaves.add(leaf_b)
        lo_set, hi_set = (ya, yb) if ya < yb else (yb, ya)
        cu, cv = model.cross_edges[(lo_set, hi_set)]
        pa, pb = (cu, cv) if ya < yb else (cv, cu)
        path = (
            [leaf_a]
            + model.tree_path(ya, va, pa)
            + model.tree_path(yb, pb, vb)
            + [leaf_b]
        )
        total = sum(inst.host.weight(x, y) for x, y in zip(path[:-1], path[1:]))
        if used_vertices & set(path):
            raise InternalInvariantError("routed paths intersect")
        used_vertices.update(path)
        routed[(a, b)] = RoutedEdge(
            gamma_edge=(a, b),
            path=tuple(path),
            color=total % q,
            y_sets=(ya, yb),
            leaves=(leaf_a, leaf_b),
        )
    return routed


def find_monochromatic_subdivision(
    m: int,
    coloring: dict[tuple[int, int], int],
    q: int,
    target: PatternGraph,
    budget: int = DEFAULT_RAMSEY_BUDGET,
):
    """Exhaustive search for a one-color copy of ``target`` in a colored K_m.

    Backtracks over injective vertex images in breadth-first target order,
    trying colors in ascending order; the returned embedding is the
    lexicographically least for the winning color.  Returns (images, color)
    or None; raises BudgetExceeded when the node budget runs out (a distinct
    outcome from a completed unsuccessful search).
    """
    if target.n > m:
        return None
    for u in range(m):
        for v in range(u + 1, m):
            if (u, v) not in coloring:
                raise InputError(f"coloring misses template edge ({u},{v})")

    adj: list[list[int]] = [[] for _ in range(target.n)]
    for u, v in target.edges:
        adj[u].append(v)
        adj[v].append(u)

    order: list[int] = []
    seen = [False] * target.n
    for start in range(target.n):
        if seen[start]:
            continue
        seen[start] = True
        queue = [start]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            order.append(x)
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)

    nodes = 0
    for color in range(q):
        images = [-1] * target.n
        used = [False] * m

        def place(depth: int) -> bool:
            nonlocal nodes
            if depth == len(order):
                return True
            d = order[depth]
            placed = [e for e in adj[d] if images[e] >= 0]
            for g in range(m):
                if used[g]:
                    continue
                nodes += 1
                if nodes > budget:
                    raise BudgetExceeded(
                        f"monochromatic search exceeded {budget} nodes"
                    )
                ok = True
                for e in placed:
                    ge = images[e]
                    key = (g, ge) if g < ge else (ge, g)
                    if coloring[key] != color:
                        ok = False
                        break
                if not ok:
                    continue
                images[d] = g
                used[g] = True
                if place(depth + 1):
                    return True
                images[d] = -1
                used[g] = False
            return False

        if place(0):
            return tuple(images), color
    return None


def edge_path_residue(a: int, b: int, q: int) -> int:
    """Residue of one assembled pattern-edge path: 2a + (q-1)*2a + q*b mod q."""
    return (2 * a + (q - 1) * 2 * a + q * b) % q


def _oriented_routed(r: RoutedEdge, from_gv: int) -> tuple[tuple[int, ...], int, int]:
    """Routed path oriented to start at template vertex ``from_gv``'s side."""
    if r.gamma_edge[0] == from_gv:
        return r.path, r.leaves[0], r.leaves[1]
    return tuple(reversed(r.path)), r.leaves[1], r.leaves[0]


def assemble_subdivision(
    inst: SplitInstance,
    selections: dict[int, XSelection],
    chosen: tuple[int, ...],
    routed: dict[tuple[int, int], RoutedEdge],
    embedding: tuple[int, ...],
    pattern: PatternGraph,
    chains: dict[tuple[int, int], tuple[int, ...]],
    q: int,
) -> SubdivisionWitness:
    """Stitch routed segments and in-supernode connectors into a witness.

    Each pattern-edge path alternates routed segments (weight b) with
    connectors of weight 2a inside intermediate supernodes, plus one weight-a
    connector at each endpoint; the total telescopes to (2a+b)q = 0 mod q.
    The witness is reported in the original host's coordinates (split
    vertices contracted away).
    """
    # Departure/entry leaves per pattern vertex and per chain position.
    branch_leaves: dict[int, list[int]] = {h: [] for h in range(pattern.n)}
    chain_legs: dict[tuple[int, int], list[tuple[tuple[int, ...], int, int]]] = {}
    for edge in pattern.edges:
        chain = chains[edge]
        gvs = [embedding[d] for d in chain]
        legs = []
        for ga, gb in zip(gvs[:-1], gvs[1:]):
            key = (ga, gb) if ga < gb else (gb, ga)
            path, leaf_from, leaf_to = _oriented_routed(routed[key], ga)
            legs.append((path, leaf_from, leaf_to))
        chain_legs[edge] = legs
        branch_leaves[edge[0]].append(legs[0][1])
        branch_leaves[edge[1]].append(legs[-1][2])

    def pad_triple(xsel: XSelection, needed: list[int]) -> list[int]:
        triple = list(needed)
        for leaf in xsel.leaves_host:
            if len(triple) == 3:
                break
            if leaf not in triple:
                triple.append(leaf)
        if len(triple) < 3:
            raise InputError(
                f"supernode {xsel.x_index} has only {len(xsel.leaves_host)} selected "
                "leaves; connectors need k >= 3"
            )
        return triple

    def cert_paths(xsel: XSelection, leaves_host: list[int]):
        local = [xsel.to_local(leaf) for leaf in pad_triple(xsel, leaves_host)]
        v_local, paths = certificate_for_triple(xsel.selection, *local)
        host_paths = [tuple(xsel.to_host[t] for t in p) for p in paths]
        v_host = xsel.to_host[v_local]
        return v_host, {p[-1]: p for p in host_paths}

    branch_vertex: dict[int, int] = {}
    branch_path: dict[int, dict[int, tuple[int, ...]]] = {}
    for h in range(pattern.n):
        leaves = branch_leaves[h]
        if len(leaves) != len(set(leaves)):
            raise InternalInvariantError(
                f"pattern vertex {h} reuses a departure leaf"
            )
        if len(leaves) > 3:
            raise InputError("pattern vertex of degree > 3")
        xsel = selections[chosen[embedding[h]]]
        v_host, paths = cert_paths(xsel, leaves)
        branch_vertex[h] = v_host
        branch_path[h] = paths

    host_paths: list[tuple[int, ...]] = []
    orig_n = inst.original.n
    for edge in pattern.edges:
        legs = chain_legs[edge]
        chain = chains[edge]
        full: list[int] = list(branch_path[edge[0]][legs[0][1]])
        for t, (path, leaf_from, leaf_to) in enumerate(legs):
            if full[-1] != path[0]:
                raise InternalInvariantError("assembly junction mismatch")
            full.extend(path[1:])
            if t < len(legs) - 1:
                mid_gv = embedding[chain[t + 1]]
                xsel = selections[chosen[mid_gv]]
                next_leaf = legs[t + 1][1]
                v_host, paths = cert_paths(xsel, [leaf_to, next_leaf])
                connector = tuple(reversed(paths[leaf_to])) + paths[next_leaf][1:]
                if full[-1] != connector[0]:
                    raise InternalInvariantError("connector junction mismatch")
                full.extend(connector[1:])
        closing = branch_path[edge[1]][legs[-1][2]]
        if full[-1] != closing[-1]:
            raise InternalInvariantError("closing junction mismatch")
        full.extend(reversed(closing[:-1]))
        contracted = tuple(v for v in full if v < orig_n)
        host_paths.append(contracted)

    witness = SubdivisionWitness(
        host=inst.original,
        pattern=pattern,
        branch_vertices=tuple(branch_vertex[h] for h in range(pattern.n)),
        paths=tuple(host_paths),
        q=q,
    )
    if not verify_subdivision_witness(witness):
        raise InternalInvariantError("assembled subdivision failed verification")
    return witness


def build_divisible_subdivision(
    model: MinorModel,
    x_sets,
    y_sets,
    pattern: PatternGraph,
    q: int,
    gamma_size: int,
    k_mode: str = "degree",
    ramsey_budget: int = DEFAULT_RAMSEY_BUDGET,
) -> SubdivisionWitness:
    """Full best-effort pipeline from a partitioned minor model to a witness.

    ``k_mode`` picks the leaf-selection size: "degree" uses the template's
    maximum degree (default), "edges" the original twice-the-edge-count
    parameterization.  Honest stage misses raise StageFailure; an invalid
    input raises InputError.
    """
    if q < 2:
        raise InputError("q must be at least 2")
    if model.host.q != q:
        raise InputError(f"host weights live in Z_{model.host.q}, pipeline asked for q={q}")
    if pattern.max_degree > 3:
        raise InputError("pattern must have maximum degree at most 3")
    if gamma_size < 2:
        raise InputError("template size must be at least 2")
    if k_mode == "degree":
        k = gamma_size - 1
    elif k_mode == "edges":
        k = gamma_size * (gamma_size - 1)
    else:
        raise InputError(f"unknown k_mode {k_mode!r}")
    if k < 3:
        raise InputError("template too small: leaf selections need k >= 3")

    inst = split_and_weight(model, x_sets, y_sets)
    selections = select_all(inst, k, q)
    residues = [selections[i].residue.value for i in inst.x_sets]
    picked = common_residue_filter(residues, gamma_size, q)
    if picked is None:
        raise StageFailure(
            "residue-filter",
            f"no residue shared by {gamma_size} of {len(residues)} supernodes",
        )
    chosen = tuple(inst.x_sets[t] for t in picked)

    gamma = PatternGraph.complete(gamma_size)
    routed = route_edges(inst, gamma, selections, chosen)
    coloring = {e: routed[e].color for e in gamma.edges}

    target, chains = subdivide_pattern(pattern, q - 1)
    found = find_monochromatic_subdivision(
        gamma_size, coloring, q, target, budget=ramsey_budget
    )
    if found is None:
        raise StageFailure(
            "ramsey",
            f"no monochromatic copy of the subdivided pattern in K_{gamma_size}; "
            "raise the template size",
        )
    embedding, _color = found
    return assemble_subdivision(
        inst, selections, chosen, routed, embedding, pattern, chains, q
    )
