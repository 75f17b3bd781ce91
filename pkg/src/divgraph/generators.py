"""Seeded instance generators.

Everything here is deterministic per (spec, seed): child seeds are derived
by name with :mod:`divgraph.rngutil`, so regenerating any part in any order
reproduces identical bytes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import InputError
from .model import (
    CompleteWeightedDigraph,
    LabeledTree,
    MinorModel,
    PatternGraph,
    WeightedGraph,
    identity_minor_model,
    model_from_branch_sets,
)
from .rngutil import rng

__all__ = [
    "GenSpec",
    "generate",
    "complete_graph",
    "gen_minor_model",
    "gen_digraph",
    "enumerate_digraphs",
    "gen_tree",
    "gen_favorable_subdivision_instance",
]


def complete_graph(n: int, q: int) -> WeightedGraph:
    """Unit-weighted complete graph K_n."""
    if n < 1:
        raise InputError("complete graph needs at least one vertex")
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return WeightedGraph(n, pairs, q)


def gen_minor_model(
    supernodes: int,
    q: int,
    seed: int,
    size_lo: int = 1,
    size_hi: int = 1,
    weights: str = "unit",
    noise: int = 0,
    cross_noise: int = 0,
) -> tuple[WeightedGraph, MinorModel]:
    """Tree-blowup minor model: each branch set is a random tree, one random
    cross edge per pair.

    ``noise`` adds up to that many extra edges inside every supernode;
    ``cross_noise`` adds extra edges between supernodes, in which case the
    recorded cross edge per pair is re-resolved lexicographically.
    Unit weights encode unweighted length; "uniform" draws weights from Z_q.
    """
    if supernodes < 2:
        raise InputError("need at least 2 supernodes")
    if not (1 <= size_lo <= size_hi):
        raise InputError("invalid blow-up size range")
    if weights not in ("unit", "uniform"):
        raise InputError(f"unknown weight mode {weights!r}")

    size_stream = rng(seed, "sizes")
    sizes = [int(size_stream.integers(size_lo, size_hi + 1)) for _ in range(supernodes)]
    starts = [0]
    for s in sizes:
        starts.append(starts[-1] + s)
    n = starts[-1]

    eu: list[int] = []
    ev: list[int] = []
    sets = []
    trees = []
    for i in range(supernodes):
        base = starts[i]
        members = list(range(base, base + sizes[i]))
        sets.append(members)
        tree = []
        g = rng(seed, "tree", i)
        for t in range(1, sizes[i]):
            parent = int(g.integers(0, t))
            tree.append((base + parent, base + t))
            eu.append(base + parent)
            ev.append(base + t)
        trees.append(tuple(tree))
        if noise:
            existing = set(tree)
            gn = rng(seed, "noise", i)
            for _ in range(noise):
                if sizes[i] < 2:
                    break
                a, b = sorted(int(x) for x in gn.choice(sizes[i], size=2, replace=False))
                e = (base + a, base + b)
                if e not in existing and (e[1], e[0]) not in existing:
                    existing.add(e)
                    eu.append(e[0])
                    ev.append(e[1])

    # One stream for cross endpoints; pairs are consumed in (i, j) order.
    cross_stream = rng(seed, "cross")
    cross: dict[tuple[int, int], tuple[int, int]] = {}
    for i in range(supernodes):
        for j in range(i + 1, supernodes):
            u = starts[i] + int(cross_stream.integers(0, sizes[i]))
            v = starts[j] + int(cross_stream.integers(0, sizes[j]))
            cross[(i, j)] = (u, v)
            eu.append(u)
            ev.append(v)
    if cross_noise:
        existing = set(zip(eu, ev)) | set(zip(ev, eu))
        gc = rng(seed, "cross-noise")
        for _ in range(cross_noise):
            i, j = sorted(int(x) for x in gc.choice(supernodes, size=2, replace=False))
            u = starts[i] + int(gc.integers(0, sizes[i]))
            v = starts[j] + int(gc.integers(0, sizes[j]))
            if (u, v) not in existing:
                existing.add((u, v))
                existing.add((v, u))
                eu.append(u)
                ev.append(v)

    m = len(eu)
    if weights == "unit":
        ew = np.ones(m, dtype=np.int64)
    else:
        ew = rng(seed, "weights").integers(0, q, size=m)
    host = WeightedGraph.from_arrays(n, np.asarray(eu), np.asarray(ev), ew, q)
    if cross_noise:
        model = model_from_branch_sets(host, sets)
    else:
        model = MinorModel(
            host=host,
            branch_sets=tuple(tuple(s) for s in sets),
            spanning_trees=tuple(trees),
            cross_edges=cross,
        )
    return host, model


def gen_digraph(n: int, q: int, seed: int) -> CompleteWeightedDigraph:
    """Complete digraph with independent uniform Z_q weights."""
    if n < 2:
        raise InputError("need at least 2 vertices")
    w = rng(seed, "digraph").integers(0, q, size=(n, n)).tolist()
    return CompleteWeightedDigraph(w, q)


def enumerate_digraphs(n: int, q: int) -> Iterator[CompleteWeightedDigraph]:
    """All q^(n(n-1)) weight matrices, in row-major lexicographic order."""
    if n < 2:
        raise InputError("need at least 2 vertices")
    slots = [(u, v) for u in range(n) for v in range(n) if u != v]
    for assignment in itertools.product(range(q), repeat=len(slots)):
        w = [[0] * n for _ in range(n)]
        for (u, v), x in zip(slots, assignment):
            w[u][v] = x
        yield CompleteWeightedDigraph(w, q)


def _labels(seed: int, m: int, q: int, labels) -> np.ndarray:
    if labels == "random":
        return rng(seed, "labels").integers(0, q, size=m)
    return np.full(m, int(labels) % q, dtype=np.int64)


def gen_tree(
    shape: str,
    q: int,
    seed: int,
    leaves: int | None = None,
    branch: int | None = None,
    handle: int | None = None,
    internal: int | None = None,
    labels="random",
) -> LabeledTree:
    """Synthetic labeled trees of prescribed shapes.

    star: one hub of degree ``leaves``, all leaves designated.
    caterpillar: ``branch`` spine vertices of degree 3, one pendant each,
        plus both spine-end leaves; all designated.
    broom: a ``handle`` path ending in a hub with ``leaves`` designated
        leaves (the handle end is undesignated, so trimming has work to do).
    random: a random-attachment skeleton on ``internal`` vertices with
        ``leaves`` designated leaves attached uniformly.
    """
    if shape == "star":
        if not leaves or leaves < 2:
            raise InputError("star needs at least 2 leaves")
        d = leaves
        eu = np.zeros(d, dtype=np.int64)
        ev = np.arange(1, d + 1, dtype=np.int64)
        ew = _labels(seed, d, q, labels)
        g = WeightedGraph.from_arrays(d + 1, eu, ev, ew, q)
        return LabeledTree(graph=g, leaves=tuple(range(1, d + 1)))

    if shape == "caterpillar":
        if not branch or branch < 1:
            raise InputError("caterpillar needs at least 1 spine vertex")
        t = branch
        spine_u = np.arange(0, t + 1, dtype=np.int64)
        spine_v = np.arange(1, t + 2, dtype=np.int64)
        pend_u = np.arange(1, t + 1, dtype=np.int64)
        pend_v = np.arange(t + 2, 2 * t + 2, dtype=np.int64)
        eu = np.concatenate([spine_u, pend_u])
        ev = np.concatenate([spine_v, pend_v])
        ew = _labels(seed, len(eu), q, labels)
        g = WeightedGraph.from_arrays(2 * t + 2, eu, ev, ew, q)
        designated = (0, t + 1) + tuple(range(t + 2, 2 * t + 2))
        return LabeledTree(graph=g, leaves=designated)

    if shape == "broom":
        if not leaves or leaves < 2:
            raise InputError("broom needs at least 2 head leaves")
        h = handle if handle else 3
        if h < 2:
            raise InputError("broom needs a handle of length at least 2")
        hub = h - 1
        path_u = np.arange(0, h - 1, dtype=np.int64)
        path_v = np.arange(1, h, dtype=np.int64)
        head_u = np.full(leaves, hub, dtype=np.int64)
        head_v = np.arange(h, h + leaves, dtype=np.int64)
        eu = np.concatenate([path_u, head_u])
        ev = np.concatenate([path_v, head_v])
        ew = _labels(seed, len(eu), q, labels)
        g = WeightedGraph.from_arrays(h + leaves, eu, ev, ew, q)
        return LabeledTree(graph=g, leaves=tuple(range(h, h + leaves)))

    if shape == "random":
        if not leaves or leaves < 2:
            raise InputError("random tree needs at least 2 designated leaves")
        s = internal if internal else max(2, leaves // 8)
        if s < 2:
            raise InputError("random tree needs at least 2 skeleton vertices")
        g1 = rng(seed, "skeleton")
        idx = np.arange(1, s, dtype=np.int64)
        parents = (g1.random(s - 1) * idx).astype(np.int64)
        g2 = rng(seed, "attach")
        anchors = g2.integers(0, s, size=leaves)
        eu = np.concatenate([parents, anchors])
        ev = np.concatenate([idx, np.arange(s, s + leaves, dtype=np.int64)])
        ew = _labels(seed, len(eu), q, labels)
        g = WeightedGraph.from_arrays(s + leaves, eu, ev, ew, q)
        return LabeledTree(graph=g, leaves=tuple(range(s, s + leaves)))

    raise InputError(f"unknown tree shape {shape!r}")


def gen_favorable_subdivision_instance(
    pattern: PatternGraph,
    q: int,
    gamma_size: int,
    seed: int,
    y_size_lo: int = 1,
    y_size_hi: int = 3,
    y_extra: int = 0,
    k_mode: str = "degree",
) -> tuple[WeightedGraph, MinorModel, tuple[int, ...], tuple[int, ...]]:
    """Instance engineered so every subdivision-pipeline pigeonhole succeeds.

    X-supernodes are hubs with spoke chains sized so the hub degree lands
    exactly on the selection threshold (k-1)q+2 after splitting.  In the
    default "degree" parameterization each of the first ``gamma_size``
    X-supernodes wires its k hub-attached leaves to a private block of
    Y-supernodes, which makes every selection residue 0, the residue filter
    trivial, and edge routing contention-free.  In "edges" mode the larger
    hub block is shared (routing then never needs private blocks).
    Y-supernode internals are random trees, so routed-path colors vary with
    the seed.
    """
    if pattern.max_degree > 3:
        raise InputError("pattern must have maximum degree at most 3")
    if q < 2:
        raise InputError("q must be at least 2")
    m = gamma_size
    if m < 4:
        raise InputError("template size must be at least 4 (selections need k >= 3)")
    n_big = m
    x_count = (n_big - 1) * q + 1
    if k_mode == "degree":
        k = m - 1
        y_count = m * (m - 1) + int(y_extra)
        shared_block = False
    elif k_mode == "edges":
        k = m * (m - 1)
        spokes_needed = (k - 1) * q + 2 - k
        y_count = k + spokes_needed + int(y_extra)
        shared_block = True
    else:
        raise InputError(f"unknown k_mode {k_mode!r}")
    spokes = (k - 1) * q + 2 - k
    if y_count < k + spokes:
        raise InputError("Y pool too small for the engineered hub structure")

    # X-supernode layout: hub, then spoke chains of depths 1..q-1 cycling.
    spoke_depth = [1 + (t % (q - 1)) if q > 2 else 1 for t in range(spokes)]
    x_size = 1 + sum(spoke_depth)
    eu: list[int] = []
    ev: list[int] = []
    x_sets_members: list[list[int]] = []
    x_trees: list[list[tuple[int, int]]] = []
    hub_of: list[int] = []
    spoke_tip: list[list[int]] = []
    nxt = 0
    for i in range(x_count):
        hub = nxt
        nxt += 1
        members = [hub]
        tree: list[tuple[int, int]] = []
        tips = []
        for depth in spoke_depth:
            prev = hub
            for _ in range(depth):
                v = nxt
                nxt += 1
                members.append(v)
                tree.append((prev, v))
                eu.append(prev)
                ev.append(v)
                prev = v
            tips.append(prev)
        hub_of.append(hub)
        spoke_tip.append(tips)
        x_sets_members.append(members)
        x_trees.append(tree)

    y_stream = rng(seed, "y-internal")
    y_sets_members: list[list[int]] = []
    y_trees: list[list[tuple[int, int]]] = []
    for j in range(y_count):
        size = int(y_stream.integers(y_size_lo, y_size_hi + 1))
        base = nxt
        nxt += size
        members = list(range(base, base + size))
        tree = []
        for t in range(1, size):
            parent = int(y_stream.integers(0, t))
            tree.append((base + parent, base + t))
            eu.append(base + parent)
            ev.append(base + t)
        y_sets_members.append(members)
        y_trees.append(tree)

    # One stream for Y-side endpoint picks, consumed in a fixed order.
    y_pick = rng(seed, "y-pick")

    def y_member(j: int) -> int:
        return y_sets_members[j][int(y_pick.integers(0, len(y_sets_members[j])))]

    # Cross edges.  X_i to Y_j: hub attachment for i's private block, the
    # spoke tips for the markers, spoke-1 tip for everything else.
    cross: dict[tuple[int, int], tuple[int, int]] = {}
    for i in range(x_count):
        if shared_block:
            block = set(range(k))
        else:
            gi = i if i < n_big else 0
            block = set(range(gi * k, (gi + 1) * k))
        non_block = [j for j in range(y_count) if j not in block]
        markers = {j: t for t, j in enumerate(non_block[:spokes])}
        for j in range(y_count):
            if j in block:
                x_end = hub_of[i]
            elif j in markers:
                x_end = spoke_tip[i][markers[j]]
            else:
                x_end = spoke_tip[i][0]
            y_end = y_member(j)
            cross[(i, x_count + j)] = (x_end, y_end)
            eu.append(x_end)
            ev.append(y_end)
    for i in range(x_count):
        for i2 in range(i + 1, x_count):
            cross[(i, i2)] = (hub_of[i], hub_of[i2])
            eu.append(hub_of[i])
            ev.append(hub_of[i2])
    for j in range(y_count):
        for j2 in range(j + 1, y_count):
            u = y_member(j)
            v = y_member(j2)
            cross[(x_count + j, x_count + j2)] = (u, v)
            eu.append(u)
            ev.append(v)

    host = WeightedGraph.from_arrays(
        nxt, np.asarray(eu), np.asarray(ev), np.ones(len(eu), dtype=np.int64), q
    )
    model = MinorModel(
        host=host,
        branch_sets=tuple(tuple(s) for s in x_sets_members + y_sets_members),
        spanning_trees=tuple(tuple(t) for t in x_trees + y_trees),
        cross_edges=cross,
    )
    x_sets = tuple(range(x_count))
    y_sets = tuple(range(x_count, x_count + y_count))
    return host, model, x_sets, y_sets


@dataclass(frozen=True)
class GenSpec:
    """Declarative generator request; same spec and seed, same output."""

    kind: str  # identity | tree-blowup | favorable-subdivision | digraph | tree-shape
    seed: int
    params: dict = field(default_factory=dict)


def generate(spec: GenSpec):
    """Dispatch a GenSpec to the matching generator."""
    p = dict(spec.params)
    if spec.kind == "identity":
        host = complete_graph(p["n"], p["q"])
        return host, identity_minor_model(host)
    if spec.kind == "tree-blowup":
        return gen_minor_model(seed=spec.seed, **p)
    if spec.kind == "favorable-subdivision":
        return gen_favorable_subdivision_instance(seed=spec.seed, **p)
    if spec.kind == "digraph":
        return gen_digraph(seed=spec.seed, **p)
    if spec.kind == "tree-shape":
        return gen_tree(seed=spec.seed, **p)
    raise InputError(f"unknown generator kind {spec.kind!r}")
