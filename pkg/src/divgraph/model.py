"""Core data types: residues, weighted graphs, trees, digraphs, minor models,
pattern graphs, and the witness records every pipeline emits.

All types are immutable after construction and safe to share between tasks.
Vertices are dense integer indices 0..n-1 throughout; symbolic names live in
the I/O layer only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import InputError

__all__ = [
    "Residue",
    "residue_add",
    "residue_neg",
    "path_weight",
    "WeightedGraph",
    "LabeledTree",
    "CompleteWeightedDigraph",
    "MinorModel",
    "PatternGraph",
    "subdivide_pattern",
    "CycleWitness",
    "SubdivisionWitness",
    "ValidationReport",
    "validate_minor_model",
    "model_from_branch_sets",
    "identity_minor_model",
    "verify_cycle_witness",
    "cycle_witness_report",
    "verify_subdivision_witness",
    "subdivision_witness_report",
]


def _check_modulus(q: int) -> int:
    if not isinstance(q, (int, np.integer)) or isinstance(q, bool) or q < 2:
        raise InputError(f"modulus must be an integer >= 2, got {q!r}")
    return int(q)


@dataclass(frozen=True)
class Residue:
    """An element of Z_q, kept reduced into [0, q)."""

    value: int
    q: int

    def __post_init__(self):
        q = _check_modulus(self.q)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "value", int(self.value) % q)

    def __add__(self, other: "Residue") -> "Residue":
        return residue_add(self, other)

    def __sub__(self, other: "Residue") -> "Residue":
        return residue_add(self, residue_neg(other))

    def __neg__(self) -> "Residue":
        return residue_neg(self)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.q})"


def residue_add(x: Residue, y: Residue) -> Residue:
    if x.q != y.q:
        raise InputError(f"modulus mismatch: {x.q} vs {y.q}")
    return Residue((x.value + y.value) % x.q, x.q)


def residue_neg(x: Residue) -> Residue:
    return Residue(-x.value % x.q, x.q)


EdgeLike = Union[tuple, list]


class WeightedGraph:
    """Undirected simple graph with Z_q edge weights.

    An unweighted graph is represented with every weight equal to 1 mod q,
    so weighted path "weight" coincides with path length.  Internally the
    graph is stored as sorted edge arrays plus a CSR adjacency, which keeps
    million-vertex trees affordable.
    """

    __slots__ = ("n", "q", "m", "_lo", "_hi", "_ew", "_key", "_indptr", "_nbr", "_wt")

    def __init__(self, n: int, edges: Iterable[EdgeLike], q: int):
        eu, ev, ew = [], [], []
        for e in edges:
            if len(e) == 2:
                u, v = e
                w = 1
            elif len(e) == 3:
                u, v, w = e
            else:
                raise InputError(f"edge must be (u, v) or (u, v, w), got {e!r}")
            eu.append(u)
            ev.append(v)
            ew.append(w)
        self._build(
            n,
            np.asarray(eu, dtype=np.int64),
            np.asarray(ev, dtype=np.int64),
            np.asarray(ew, dtype=np.int64),
            q,
        )

    @classmethod
    def from_arrays(cls, n: int, eu, ev, ew, q: int) -> "WeightedGraph":
        """Fast construction from parallel numpy arrays (bulk generators)."""
        g = cls.__new__(cls)
        g._build(
            n,
            np.asarray(eu, dtype=np.int64),
            np.asarray(ev, dtype=np.int64),
            np.asarray(ew, dtype=np.int64),
            q,
        )
        return g

    def _build(self, n, eu, ev, ew, q):
        q = _check_modulus(q)
        if not isinstance(n, (int, np.integer)) or n < 0:
            raise InputError(f"vertex count must be a nonnegative integer, got {n!r}")
        n = int(n)
        m = len(eu)
        if len(ev) != m or len(ew) != m:
            raise InputError("edge arrays must have equal length")
        if m:
            if eu.min() < 0 or ev.min() < 0 or max(eu.max(), ev.max()) >= n:
                raise InputError("edge endpoint out of range")
            if (eu == ev).any():
                raise InputError("loops are not allowed")
        lo = np.minimum(eu, ev)
        hi = np.maximum(eu, ev)
        key = lo * np.int64(n) + hi
        order = np.argsort(key, kind="stable")
        key = key[order]
        if m and (key[1:] == key[:-1]).any():
            raise InputError("parallel edges are not allowed")
        self.n = n
        self.q = q
        self.m = m
        self._lo = lo[order].astype(np.int32)
        self._hi = hi[order].astype(np.int32)
        self._ew = (ew[order] % q).astype(np.int32)
        self._key = key
        # CSR over both directions, rows sorted by neighbor index.
        src = np.concatenate([self._lo, self._hi])
        dst = np.concatenate([self._hi, self._lo])
        wts = np.concatenate([self._ew, self._ew])
        adj_order = np.lexsort((dst, src))
        counts = np.bincount(src, minlength=n)
        self._indptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
        self._nbr = dst[adj_order].astype(np.int32)
        self._wt = wts[adj_order].astype(np.int32)

    # -- queries ----------------------------------------------------------

    def degree(self, u: int) -> int:
        return int(self._indptr[u + 1] - self._indptr[u])

    def degrees(self) -> np.ndarray:
        return np.diff(self._indptr)

    def neighbors(self, u: int) -> np.ndarray:
        return self._nbr[self._indptr[u] : self._indptr[u + 1]]

    def neighbor_weights(self, u: int) -> np.ndarray:
        return self._wt[self._indptr[u] : self._indptr[u + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
            return False
        a, b = (u, v) if u < v else (v, u)
        i = np.searchsorted(self._key, np.int64(a) * self.n + b)
        return bool(i < self.m and self._key[i] == a * self.n + b)

    def weight(self, u: int, v: int) -> int:
        a, b = (u, v) if u < v else (v, u)
        i = np.searchsorted(self._key, np.int64(a) * self.n + b)
        if i >= self.m or self._key[i] != a * self.n + b:
            raise InputError(f"no edge between {u} and {v}")
        return int(self._ew[i])

    def edge_weights(self, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
        """Vectorized weight lookup; raises if any pair is not an edge."""
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        if self.m == 0 and len(us):
            raise InputError("no edge: graph has no edges")
        lo = np.minimum(us, vs)
        hi = np.maximum(us, vs)
        bad = (lo < 0) | (hi >= self.n) | (lo == hi)
        if bad.any():
            raise InputError("non-edge in path: endpoint out of range or repeated")
        keys = lo * np.int64(self.n) + hi
        idx = np.searchsorted(self._key, keys)
        ok = (idx < self.m) & (self._key[np.minimum(idx, self.m - 1)] == keys)
        if not ok.all():
            j = int(np.nonzero(~ok)[0][0])
            raise InputError(f"no edge between {int(us[j])} and {int(vs[j])}")
        return self._ew[idx]

    def edges(self) -> Iterator[tuple[int, int, int]]:
        for i in range(self.m):
            yield int(self._lo[i]), int(self._hi[i]), int(self._ew[i])

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self._lo, self._hi, self._ew

    def csr(self) -> csr_matrix:
        """Structure-only CSR matrix (data shifted +1 so zero weights survive)."""
        return csr_matrix(
            (self._wt.astype(np.int64) + 1, self._nbr, self._indptr),
            shape=(self.n, self.n),
        )

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        ncomp, _ = connected_components(self.csr(), directed=False)
        return ncomp == 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeightedGraph)
            and self.n == other.n
            and self.q == other.q
            and self.m == other.m
            and np.array_equal(self._key, other._key)
            and np.array_equal(self._ew, other._ew)
        )

    def __hash__(self):
        return hash((self.n, self.q, self.m))

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m}, q={self.q})"


def path_weight(g: WeightedGraph, path: Sequence[int]) -> Residue:
    """Sum of edge weights along a vertex sequence, mod q.

    Consecutive vertices must be adjacent in ``g``; a single-vertex path has
    weight 0.
    """
    if len(path) == 0:
        raise InputError("empty path")
    if len(path) == 1:
        return Residue(0, g.q)
    arr = np.asarray(path, dtype=np.int64)
    w = g.edge_weights(arr[:-1], arr[1:])
    return Residue(int(w.sum() % g.q), g.q)


@dataclass(frozen=True, eq=False)
class LabeledTree:
    """A connected acyclic WeightedGraph with a designated leaf set L.

    Every member of L must have degree 1.  ``origin`` optionally maps this
    tree's vertices back to an ancestor tree (set by ``steiner_trim``).
    """

    graph: WeightedGraph
    leaves: tuple[int, ...]
    root: int | None = None
    origin: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        g = self.graph
        if g.m != g.n - 1:
            raise InputError(f"not a tree: {g.m} edges on {g.n} vertices")
        if not g.is_connected():
            raise InputError("not a tree: disconnected")
        leaves = tuple(sorted(set(int(x) for x in self.leaves)))
        object.__setattr__(self, "leaves", leaves)
        if leaves:
            arr = np.asarray(leaves, dtype=np.int64)
            if arr.min() < 0 or arr.max() >= g.n:
                raise InputError("designated leaf out of range")
            # A single-vertex tree may designate its lone (degree-0) vertex.
            if g.n > 1 and (g.degrees()[arr] != 1).any():
                raise InputError("designated leaf does not have degree 1")
        if self.root is not None and not (0 <= self.root < g.n):
            raise InputError("root out of range")

    @property
    def q(self) -> int:
        return self.graph.q

    def __repr__(self) -> str:
        return f"LabeledTree(n={self.graph.n}, |L|={len(self.leaves)}, q={self.q})"


class CompleteWeightedDigraph:
    """Complete digraph on n vertices with a Z_q weight per ordered pair."""

    __slots__ = ("n", "q", "w")

    def __init__(self, weights: Sequence[Sequence[int]], q: int):
        q = _check_modulus(q)
        n = len(weights)
        if n < 1:
            raise InputError("digraph needs at least one vertex")
        rows = []
        for u, row in enumerate(weights):
            if len(row) != n:
                raise InputError("weight matrix must be square")
            rows.append(tuple(0 if u == v else int(row[v]) % q for v in range(n)))
        self.n = n
        self.q = q
        self.w = tuple(rows)

    def weight(self, u: int, v: int) -> int:
        if u == v:
            raise InputError("no loops in a complete digraph")
        return self.w[u][v]

    def cycle_weight(self, cycle: Sequence[int]) -> Residue:
        total = 0
        for i, u in enumerate(cycle):
            total += self.w[u][cycle[(i + 1) % len(cycle)]]
        return Residue(total % self.q, self.q)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CompleteWeightedDigraph)
            and self.n == other.n
            and self.q == other.q
            and self.w == other.w
        )

    def __hash__(self):
        return hash((self.n, self.q, self.w))

    def __repr__(self) -> str:
        return f"CompleteWeightedDigraph(n={self.n}, q={self.q})"


@dataclass(frozen=True, eq=False)
class MinorModel:
    """Explicit certificate of a complete minor in a host graph.

    Branch sets are pairwise-disjoint connected vertex subsets, each with a
    chosen spanning tree of host edges inside it, plus exactly one chosen
    cross edge per pair of branch sets.
    """

    host: WeightedGraph
    branch_sets: tuple[tuple[int, ...], ...]
    spanning_trees: tuple[tuple[tuple[int, int], ...], ...]
    cross_edges: dict  # (i, j) with i < j -> (u, v), u in set i, v in set j

    def __post_init__(self):
        object.__setattr__(
            self,
            "branch_sets",
            tuple(tuple(sorted(int(x) for x in s)) for s in self.branch_sets),
        )
        object.__setattr__(
            self,
            "spanning_trees",
            tuple(
                tuple((int(u), int(v)) for u, v in t) for t in self.spanning_trees
            ),
        )
        object.__setattr__(
            self,
            "cross_edges",
            {
                (int(i), int(j)): (int(u), int(v))
                for (i, j), (u, v) in self.cross_edges.items()
            },
        )

    @property
    def size(self) -> int:
        return len(self.branch_sets)

    def tree_adjacency(self, idx: int) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.branch_sets[idx]}
        for u, v in self.spanning_trees[idx]:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def tree_path(self, idx: int, a: int, b: int) -> list[int]:
        """Unique path from a to b inside branch set idx's spanning tree."""
        if a == b:
            return [a]
        adj = self.tree_adjacency(idx)
        prev = {a: a}
        queue = [a]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            if x == b:
                break
            for y in adj[x]:
                if y not in prev:
                    prev[y] = x
                    queue.append(y)
        if b not in prev:
            raise InputError(f"branch set {idx}: spanning tree does not connect {a} and {b}")
        path = [b]
        while path[-1] != a:
            path.append(prev[path[-1]])
        path.reverse()
        return path

    def __repr__(self) -> str:
        return f"MinorModel(size={self.size}, host={self.host!r})"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def validate_minor_model(m: MinorModel) -> ValidationReport:
    """Check every MinorModel invariant and report all violations found."""
    issues: list[str] = []
    host = m.host
    seen: dict[int, int] = {}
    for i, s in enumerate(m.branch_sets):
        if not s:
            issues.append(f"branch set {i} is empty")
            continue
        for v in s:
            if not (0 <= v < host.n):
                issues.append(f"branch set {i}: vertex {v} out of range")
            elif v in seen:
                issues.append(f"branch sets {seen[v]} and {i} share vertex {v}")
            else:
                seen[v] = i

    for i, (s, tree) in enumerate(zip(m.branch_sets, m.spanning_trees)):
        members = set(s)
        if len(tree) != len(members) - 1:
            issues.append(
                f"branch set {i}: spanning tree has {len(tree)} edges, needs {len(members) - 1}"
            )
        parent = {v: v for v in members}

        def find(x, parent=parent):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        connected_pairs = 0
        for u, v in tree:
            if u not in members or v not in members:
                issues.append(f"branch set {i}: tree edge ({u},{v}) leaves the set")
                continue
            if not host.has_edge(u, v):
                issues.append(f"branch set {i}: tree edge ({u},{v}) is not a host edge")
                continue
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                connected_pairs += 1
        if members and connected_pairs != len(members) - 1:
            issues.append(f"branch set {i}: spanning tree does not connect the set")

    size = m.size
    for i in range(size):
        for j in range(i + 1, size):
            if (i, j) not in m.cross_edges:
                issues.append(f"no cross edge recorded for pair ({i},{j})")
    for (i, j), (u, v) in m.cross_edges.items():
        if not (0 <= i < j < size):
            issues.append(f"cross edge key ({i},{j}) is not an ordered pair of set indices")
            continue
        if u not in set(m.branch_sets[i]) or v not in set(m.branch_sets[j]):
            issues.append(f"cross edge ({u},{v}) for pair ({i},{j}) has an endpoint outside its set")
        elif not host.has_edge(u, v):
            issues.append(f"cross edge ({u},{v}) for pair ({i},{j}) is not a host edge")

    return ValidationReport(ok=not issues, violations=tuple(issues))


def model_from_branch_sets(
    host: WeightedGraph, branch_sets: Sequence[Sequence[int]]
) -> MinorModel:
    """Build a MinorModel from bare branch sets.

    Spanning trees come from breadth-first traversal rooted at the
    smallest-index vertex of each set; when several host edges join a pair of
    sets, the lexicographically smallest (by endpoint indices) is recorded.
    """
    sets = [tuple(sorted(set(int(x) for x in s))) for s in branch_sets]
    owner: dict[int, int] = {}
    for i, s in enumerate(sets):
        for v in s:
            if v in owner:
                raise InputError(f"branch sets {owner[v]} and {i} share vertex {v}")
            owner[v] = i

    trees = []
    for i, s in enumerate(sets):
        members = set(s)
        visited = {s[0]}
        tree_edges = []
        queue = [s[0]]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            for y in sorted(int(t) for t in host.neighbors(x)):
                if y in members and y not in visited:
                    visited.add(y)
                    tree_edges.append((x, y))
                    queue.append(y)
        if visited != members:
            raise InputError(f"branch set {i} is not connected in the host")
        trees.append(tuple(tree_edges))

    cross: dict[tuple[int, int], tuple[int, int]] = {}
    lo, hi, _ = host.edge_arrays()
    for a, b in zip(lo.tolist(), hi.tolist()):
        ia, ib = owner.get(a), owner.get(b)
        if ia is None or ib is None or ia == ib:
            continue
        (i, j) = (ia, ib) if ia < ib else (ib, ia)
        (u, v) = (a, b) if ia < ib else (b, a)
        if (i, j) not in cross or (u, v) < cross[(i, j)]:
            cross[(i, j)] = (u, v)
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if (i, j) not in cross:
                raise InputError(f"no host edge between branch sets {i} and {j}")
    return MinorModel(host=host, branch_sets=tuple(sets), spanning_trees=tuple(trees), cross_edges=cross)


def identity_minor_model(host: WeightedGraph) -> MinorModel:
    """The model whose branch sets are the single vertices of a complete host."""
    return model_from_branch_sets(host, [[v] for v in range(host.n)])


# -- pattern graphs and subdivisions --------------------------------------


@dataclass(frozen=True)
class PatternGraph:
    """Small simple graph used as a subdivision target (the pattern H)."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        canon = []
        seen = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise InputError("pattern has a loop")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError("pattern edge endpoint out of range")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise InputError("pattern has a parallel edge")
            seen.add(e)
            canon.append(e)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def max_degree(self) -> int:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return max(deg, default=0)

    @staticmethod
    def cycle(k: int) -> "PatternGraph":
        if k < 3:
            raise InputError("cycle pattern needs at least 3 vertices")
        return PatternGraph(k, tuple((i, (i + 1) % k) for i in range(k)))

    @staticmethod
    def path(k: int) -> "PatternGraph":
        if k < 1:
            raise InputError("path pattern needs at least one edge")
        return PatternGraph(k + 1, tuple((i, i + 1) for i in range(k)))

    @staticmethod
    def complete(k: int) -> "PatternGraph":
        return PatternGraph(k, tuple((i, j) for i in range(k) for j in range(i + 1, k)))


def subdivide_pattern(
    h: PatternGraph, t: int
) -> tuple[PatternGraph, dict[tuple[int, int], tuple[int, ...]]]:
    """Replace each edge of h by a path with t internal vertices.

    Returns the subdivided pattern D plus, per original edge, the chain of
    D-vertices realizing it (endpoints included).
    """
    if t < 0:
        raise InputError("subdivision count must be nonnegative")
    edges: list[tuple[int, int]] = []
    chains: dict[tuple[int, int], tuple[int, ...]] = {}
    nxt = h.n
    for u, v in h.edges:
        chain = [u] + list(range(nxt, nxt + t)) + [v]
        nxt += t
        for a, b in zip(chain[:-1], chain[1:]):
            edges.append((a, b))
        chains[(u, v)] = tuple(chain)
    return PatternGraph(nxt, tuple(edges)), chains


# -- witnesses -------------------------------------------------------------

Host = Union[WeightedGraph, CompleteWeightedDigraph]


@dataclass(frozen=True, eq=False)
class CycleWitness:
    """A simple cycle in a host together with the divisibility claim.

    ``vertices`` lists the cycle once, without repeating the first vertex;
    in an undirected host it is read cyclically, in a digraph it is a
    directed cycle in listed order.
    """

    host: Host
    vertices: tuple[int, ...]
    q: int

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))
        object.__setattr__(self, "q", int(self.q))


def cycle_witness_report(w: CycleWitness) -> list[str]:
    """All invariant violations of a cycle witness; empty means valid."""
    issues: list[str] = []
    host = w.host
    directed = isinstance(host, CompleteWeightedDigraph)
    if w.q != host.q:
        issues.append(f"modulus-mismatch: witness claims q={w.q}, host has q={host.q}")
    verts = w.vertices
    min_len = 2 if directed else 3
    if len(verts) < min_len:
        issues.append(f"too-short: cycle of length {len(verts)}, minimum {min_len}")
    if len(set(verts)) != len(verts):
        issues.append("repeated-vertex: cycle vertices are not pairwise distinct")
    if any(not (0 <= v < host.n) for v in verts):
        issues.append("vertex-out-of-range")
        return issues
    total = 0
    for i, u in enumerate(verts):
        v = verts[(i + 1) % len(verts)]
        if u == v:
            issues.append(f"non-edge: ({u},{v})")
            continue
        if directed:
            total += host.w[u][v]
        else:
            if not host.has_edge(u, v):
                issues.append(f"non-edge: ({u},{v})")
                continue
            total += host.weight(u, v)
    if not issues and total % host.q != 0:
        issues.append(f"weight-not-divisible: sum {total} != 0 (mod {host.q})")
    return issues


def verify_cycle_witness(w: CycleWitness) -> bool:
    """True iff every cycle-witness invariant holds.

    The check recomputes everything from the host and is independent of how
    the witness was produced.
    """
    return not cycle_witness_report(w)


@dataclass(frozen=True, eq=False)
class SubdivisionWitness:
    """A subdivision of a pattern H embedded in a host graph.

    ``branch_vertices[i]`` is the host image of H-vertex i; ``paths`` is
    aligned with ``pattern.edges`` and stores, per H-edge (u, v), a host path
    from the image of u to the image of v.
    """

    host: WeightedGraph
    pattern: PatternGraph
    branch_vertices: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]
    q: int

    def __post_init__(self):
        object.__setattr__(self, "branch_vertices", tuple(int(v) for v in self.branch_vertices))
        object.__setattr__(self, "paths", tuple(tuple(int(v) for v in p) for p in self.paths))
        object.__setattr__(self, "q", int(self.q))


def subdivision_witness_report(w: SubdivisionWitness) -> list[str]:
    """All invariant violations of a subdivision witness; empty means valid."""
    issues: list[str] = []
    host = w.host
    if w.q != host.q:
        issues.append(f"modulus-mismatch: witness claims q={w.q}, host has q={host.q}")
    if len(w.branch_vertices) != w.pattern.n:
        issues.append("branch-count: one branch vertex required per pattern vertex")
        return issues
    if len(w.paths) != len(w.pattern.edges):
        issues.append("path-count: one path required per pattern edge")
        return issues
    if any(not (0 <= v < host.n) for v in w.branch_vertices):
        issues.append("branch-vertex-out-of-range")
        return issues
    if len(set(w.branch_vertices)) != len(w.branch_vertices):
        issues.append("branch-collision: branch vertices are not distinct")
    branch_set = set(w.branch_vertices)
    used_internal: dict[int, int] = {}
    for eidx, ((hu, hv), path) in enumerate(zip(w.pattern.edges, w.paths)):
        tag = f"edge ({hu},{hv})"
        if len(path) < 2:
            issues.append(f"degenerate-path: {tag}")
            continue
        if path[0] != w.branch_vertices[hu] or path[-1] != w.branch_vertices[hv]:
            issues.append(f"endpoint-mismatch: {tag}")
            continue
        if len(set(path)) != len(path):
            issues.append(f"repeated-vertex: {tag}")
            continue
        ok_edges = True
        for a, b in zip(path[:-1], path[1:]):
            if not host.has_edge(a, b):
                issues.append(f"non-edge: ({a},{b}) on {tag}")
                ok_edges = False
                break
        if not ok_edges:
            continue
        for v in path[1:-1]:
            if v in branch_set:
                issues.append(f"interior-hits-branch: vertex {v} on {tag}")
            elif v in used_internal:
                issues.append(
                    f"paths-intersect: vertex {v} shared by edge index {used_internal[v]} and {tag}"
                )
            else:
                used_internal[v] = eidx
        total = int(path_weight(host, path))
        if total % host.q != 0:
            issues.append(f"weight-not-divisible: {tag} has weight {total} (mod {host.q})")
    return issues


def verify_subdivision_witness(w: SubdivisionWitness) -> bool:
    """True iff every subdivision-witness invariant holds (independent check)."""
    return not subdivision_witness_report(w)
