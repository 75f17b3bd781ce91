"""Zero-sum directed cycles in complete Z_q-weighted digraphs.

Two finders plus an exhaustive oracle:

* a randomized labeling search that succeeds with certainty once the digraph
  has at least ceil(2q ln q) vertices, but runs (and may honestly fail) on
  smaller instances;
* a deterministic construction for prime q on at least 2q-1 vertices that
  grows a family of paths realizing more and more residues, one sumset step
  at a time;
* a factorial-time enumerator of all simple directed cycles, used as ground
  truth on small instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .errors import AttemptsExhausted, InputError, InternalInvariantError
from .model import CompleteWeightedDigraph, CycleWitness, verify_cycle_witness
from .rngutil import rng

__all__ = [
    "is_prime",
    "Labeling",
    "labeling_attempt",
    "PathFamily",
    "find_zero_cycle_randomized",
    "default_max_attempts",
    "find_zero_cycle_prime",
    "grow_path_family",
    "sumset_extend",
    "brute_force_zero_cycle",
    "BRUTE_FORCE_CAP",
]

BRUTE_FORCE_CAP = 9


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Labeling:
    """A total assignment of Z_q values to the vertices of a digraph."""

    values: tuple[int, ...]
    q: int

    def __post_init__(self):
        if any(not (0 <= c < self.q) for c in self.values):
            raise InputError("label out of range")


def default_max_attempts(n: int) -> int:
    """Retry budget for the randomized finder; attempts are O(n^2) each."""
    return 64 * math.ceil(math.log(n + 1))


def _functional_cycle(succ: list[int]) -> list[int]:
    """The cycle reached by iterating succ from vertex 0."""
    seen: dict[int, int] = {}
    walk: list[int] = []
    x = 0
    while x not in seen:
        seen[x] = len(walk)
        walk.append(x)
        x = succ[x]
    return walk[seen[x] :]


def labeling_attempt(d: CompleteWeightedDigraph, labeling: Labeling) -> CycleWitness | None:
    """One deterministic attempt of the labeling search.

    If every vertex u has an outneighbor v with c(v) = c(u) + w(u,v), keep
    one such edge per vertex (smallest v) and extract a cycle of the
    resulting outdegree-1 subgraph; the labels telescope around it, so its
    weight is 0 mod q.  Returns None when some vertex has no matching
    outneighbor.
    """
    n, q = d.n, d.q
    if labeling.q != q or len(labeling.values) != n:
        raise InputError("labeling does not match the digraph")
    c = labeling.values
    succ: list[int] = []
    for u in range(n):
        chosen = -1
        row = d.w[u]
        for v in range(n):
            if v != u and (c[u] + row[v]) % q == c[v]:
                chosen = v
                break
        if chosen < 0:
            return None
        succ.append(chosen)
    cycle = _functional_cycle(succ)
    witness = CycleWitness(host=d, vertices=tuple(cycle), q=q)
    if not verify_cycle_witness(witness):
        raise InternalInvariantError("functional-graph cycle failed verification")
    return witness


def find_zero_cycle_randomized(
    d: CompleteWeightedDigraph,
    seed: int = 0,
    max_attempts: int | None = None,
) -> CycleWitness:
    """Find a simple directed cycle of weight 0 mod q by random labelings.

    Draws one uniform labeling per attempt (each from an independent derived
    seed) and runs ``labeling_attempt`` on it.  Guaranteed-regime instances
    have n >= ceil(2q ln q); smaller instances run too but may exhaust
    ``max_attempts`` (raising AttemptsExhausted with the failure count).
    """
    n, q = d.n, d.q
    if n < 2:
        raise InputError("need at least 2 vertices")
    if max_attempts is None:
        max_attempts = default_max_attempts(n)
    for attempt in range(max_attempts):
        values = rng(seed, "labeling", attempt).integers(0, q, size=n)
        witness = labeling_attempt(d, Labeling(values=tuple(values.tolist()), q=q))
        if witness is not None:
            return witness
    raise AttemptsExhausted(max_attempts)


@dataclass(frozen=True)
class PathFamily:
    """State of the prime-q construction after k growth steps.

    ``spine`` holds x_0..x_k and ``detours`` y_1..y_k; ``paths`` maps each
    achieved residue to one directed path from x_0 to x_k realizing it, where
    segment i is either the direct edge x_{i-1} x_i or the two-edge detour
    x_{i-1} y_i x_i.
    """

    spine: tuple[int, ...]
    detours: tuple[int, ...]
    paths: dict  # residue -> tuple of vertices

    @property
    def k(self) -> int:
        return len(self.spine) - 1

    @property
    def residues(self) -> frozenset[int]:
        return frozenset(self.paths)

    def check(self, d: CompleteWeightedDigraph) -> None:
        """Re-evaluate every stored path; raises on any broken invariant."""
        used = set(self.spine) | set(self.detours)
        if len(used) != len(self.spine) + len(self.detours):
            raise InternalInvariantError("anchor vertices are not distinct")
        if len(self.paths) < self.k + 1:
            raise InternalInvariantError(
                f"only {len(self.paths)} residues after step {self.k}"
            )
        for s, path in self.paths.items():
            if path[0] != self.spine[0] or path[-1] != self.spine[-1]:
                raise InternalInvariantError("stored path has wrong endpoints")
            if not set(path) <= used:
                raise InternalInvariantError("stored path leaves the anchor set")
            if len(set(path)) != len(path):
                raise InternalInvariantError("stored path repeats a vertex")
            total = sum(d.w[a][b] for a, b in zip(path[:-1], path[1:]))
            if total % d.q != s:
                raise InternalInvariantError("stored path weight does not match its key")


def sumset_extend(
    s: set[int] | frozenset[int], t: set[int] | frozenset[int], q: int
) -> tuple[frozenset[int], dict[int, tuple[int, int]]]:
    """S + T in Z_q with one (s, t) provenance pair per output residue.

    For prime q the Cauchy-Davenport bound |S+T| >= min(q, |S|+|T|-1) is
    asserted; violating it would mean broken arithmetic, not bad input.
    """
    if not s or not t:
        raise InputError("sumset of an empty set")
    out: dict[int, tuple[int, int]] = {}
    for a in sorted(s):
        for b in sorted(t):
            r = (a + b) % q
            if r not in out:
                out[r] = (a, b)
    result = frozenset(out)
    if is_prime(q) and len(result) < min(q, len(s) + len(t) - 1):
        raise InternalInvariantError(
            f"Cauchy-Davenport violated: |S+T|={len(result)} < min({q}, {len(s)}+{len(t)}-1)"
        )
    return result, out


def grow_path_family(d: CompleteWeightedDigraph) -> Iterator[PathFamily]:
    """Yield the path family after each growth step, k = 0 .. q-1.

    Assumes no antisymmetric pair (w(u,v) = -w(v,u)) exists; callers must
    handle that shortcut first.  Each step consumes the two smallest unused
    vertices, orienting them so the direct edge and the detour give two
    distinct new residues.
    """
    n, q = d.n, d.q
    if n < 2 * q - 1:
        raise InputError(f"growing to k={q - 1} needs 2q-1={2 * q - 1} vertices, got {n}")
    fam = PathFamily(spine=(0,), detours=(), paths={0: (0,)})
    yield fam
    free = iter(range(1, n))
    for _ in range(q - 1):
        u = next(free)
        v = next(free)
        xk = fam.spine[-1]
        direct = d.w[xk][u]
        detour = (d.w[xk][v] + d.w[v][u]) % q
        if direct == detour:
            # One orientation must work, else (u, v) would be antisymmetric.
            u, v = v, u
            direct = d.w[xk][u]
            detour = (d.w[xk][v] + d.w[v][u]) % q
            if direct == detour:
                raise InternalInvariantError(
                    f"both orientations of ({u},{v}) collide; antisymmetric pair missed"
                )
        t = {direct, detour}
        new_residues, provenance = sumset_extend(fam.residues, t, q)
        paths: dict[int, tuple[int, ...]] = {}
        for r in new_residues:
            a, b = provenance[r]
            base = fam.paths[a]
            if b == direct:
                paths[r] = base + (u,)
            else:
                paths[r] = base + (v, u)
        fam = PathFamily(spine=fam.spine + (u,), detours=fam.detours + (v,), paths=paths)
        fam.check(d)
        yield fam


def find_zero_cycle_prime(d: CompleteWeightedDigraph) -> CycleWitness:
    """Deterministic zero-sum cycle for prime q on n >= 2q-1 vertices.

    Any pair with w(u,v) = -w(v,u) closes a 2-cycle immediately.  Otherwise
    the path family grows until all q residues from x_0 to x_{q-1} are
    realized; choosing the residue -w(x_{q-1}, x_0) and appending that edge
    closes the cycle.
    """
    n, q = d.n, d.q
    if not is_prime(q):
        raise InputError(f"q={q} is not prime; use the randomized finder")
    if n < 2 * q - 1:
        raise InputError(f"need at least 2q-1={2 * q - 1} vertices, got {n}")

    for u in range(n):
        for v in range(u + 1, n):
            if (d.w[u][v] + d.w[v][u]) % q == 0:
                witness = CycleWitness(host=d, vertices=(u, v), q=q)
                if not verify_cycle_witness(witness):
                    raise InternalInvariantError("antisymmetric 2-cycle failed verification")
                return witness

    fam = None
    for fam in grow_path_family(d):
        pass
    assert fam is not None and fam.k == q - 1
    want = (-d.w[fam.spine[-1]][fam.spine[0]]) % q
    if want not in fam.paths:
        raise InternalInvariantError("full residue coverage missing after q-1 steps")
    cycle = fam.paths[want]
    witness = CycleWitness(host=d, vertices=cycle, q=q)
    if not verify_cycle_witness(witness):
        raise InternalInvariantError("closed path-family cycle failed verification")
    return witness


def _simple_cycles_of_length(n: int, length: int) -> Iterator[tuple[int, ...]]:
    """All simple directed cycles of the given length on vertices 0..n-1.

    Each cycle is emitted exactly once, rotated so its smallest vertex leads;
    enumeration order is lexicographic.
    """
    verts = list(range(n))
    cycle: list[int] = []

    def extend(start: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield tuple(cycle)
            return
        for v in verts:
            if v <= start or v in cycle:
                continue
            cycle.append(v)
            yield from extend(start, remaining - 1)
            cycle.pop()

    for s in range(n):
        cycle = [s]
        yield from extend(s, length - 1)


def brute_force_zero_cycle(
    d: CompleteWeightedDigraph, cap: int = BRUTE_FORCE_CAP
) -> CycleWitness | None:
    """Minimum-length zero-weight simple cycle by exhaustive enumeration.

    Ground truth for both finders.  Factorial in n, hence the cap.
    """
    n, q = d.n, d.q
    if n > cap:
        raise InputError(f"brute force capped at n={cap}, got n={n}")
    for length in range(2, n + 1):
        for cycle in _simple_cycles_of_length(n, length):
            total = 0
            for i, u in enumerate(cycle):
                total += d.w[u][cycle[(i + 1) % length]]
            if total % q == 0:
                return CycleWitness(host=d, vertices=cycle, q=q)
    return None
