"""Divisible cycles from complete-minor certificates.

Pipeline: pair the branch sets of a complete minor, build the auxiliary
complete weighted digraph whose edge i->j weighs the pair edge of i plus the
tree route from i's plus-side to j's minus-side, find a zero-sum directed
cycle there, then lift it to a simple host cycle whose weight telescopes to
0 mod q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError, InternalInvariantError
from .model import (
    CompleteWeightedDigraph,
    CycleWitness,
    MinorModel,
    validate_minor_model,
    verify_cycle_witness,
)
from .zerosum import find_zero_cycle_prime, find_zero_cycle_randomized, is_prime

__all__ = [
    "SupernodePairing",
    "pair_supernodes",
    "build_auxiliary_digraph",
    "lift_cycle",
    "required_branch_sets",
    "find_divisible_cycle",
]


@dataclass(frozen=True, eq=False)
class SupernodePairing:
    """N branch-set pairs plus the precomputed inter-pair route data.

    Pair i couples branch sets (2i, 2i+1): the plus side is 2i, the minus
    side 2i+1, joined by the recorded cross edge (pair_edges[i], weight
    pair_weights[i]).  conn_paths[(i, j)] is the unique route from pair i's
    plus anchor through its spanning tree, over the cross edge into pair j's
    minus side, and through that tree to j's minus anchor; conn_weights holds
    its weight mod q.
    """

    model: MinorModel
    q: int
    pairs: tuple[tuple[int, int], ...]
    pair_edges: tuple[tuple[int, int], ...]  # (x_plus, x_minus) host vertices
    pair_weights: tuple[int, ...]
    conn_paths: dict  # (i, j) -> tuple of host vertices, x_i_plus .. x_j_minus
    conn_weights: dict  # (i, j) -> int

    @property
    def count(self) -> int:
        return len(self.pairs)


def _oriented_cross(model: MinorModel, a: int, b: int) -> tuple[int, int]:
    """Cross edge between branch sets a and b, returned as (in a, in b)."""
    if a < b:
        return model.cross_edges[(a, b)]
    v, u = model.cross_edges[(b, a)]
    return u, v


def pair_supernodes(model: MinorModel, n_pairs: int, q: int) -> SupernodePairing:
    """Pair branch sets (2i, 2i+1) in index order and precompute all routes.

    Requires a validated model with at least 2*n_pairs branch sets; extras
    are ignored.
    """
    if q < 2:
        raise InputError("q must be at least 2")
    if model.host.q != q:
        raise InputError(f"host weights live in Z_{model.host.q}, pipeline asked for q={q}")
    if model.size < 2 * n_pairs:
        raise InputError(
            f"model has {model.size} branch sets, pairing needs {2 * n_pairs}"
        )
    report = validate_minor_model(model)
    if not report:
        raise InputError("invalid minor model: " + "; ".join(report.violations[:5]))

    host = model.host
    pairs = []
    pair_edges = []
    pair_weights = []
    for i in range(n_pairs):
        plus, minus = 2 * i, 2 * i + 1
        x_plus, x_minus = _oriented_cross(model, plus, minus)
        pairs.append((plus, minus))
        pair_edges.append((x_plus, x_minus))
        pair_weights.append(host.weight(x_plus, x_minus) % q)

    conn_paths = {}
    conn_weights = {}
    for i in range(n_pairs):
        plus_i = 2 * i
        x_plus = pair_edges[i][0]
        for j in range(n_pairs):
            if i == j:
                continue
            minus_j = 2 * j + 1
            x_minus = pair_edges[j][1]
            p, r = _oriented_cross(model, plus_i, minus_j)
            route = model.tree_path(plus_i, x_plus, p)
            route = route + model.tree_path(minus_j, r, x_minus)
            total = sum(
                host.weight(a, b) for a, b in zip(route[:-1], route[1:])
            )
            conn_paths[(i, j)] = tuple(route)
            conn_weights[(i, j)] = total % q

    return SupernodePairing(
        model=model,
        q=q,
        pairs=tuple(pairs),
        pair_edges=tuple(pair_edges),
        pair_weights=tuple(pair_weights),
        conn_paths=conn_paths,
        conn_weights=conn_weights,
    )


def build_auxiliary_digraph(p: SupernodePairing) -> CompleteWeightedDigraph:
    """Auxiliary digraph on pair indices: weight(i->j) = b_i + w'(i,j) mod q."""
    n = p.count
    w = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                w[i][j] = (p.pair_weights[i] + p.conn_weights[(i, j)]) % p.q
    return CompleteWeightedDigraph(w, p.q)


def lift_cycle(p: SupernodePairing, aux_cycle) -> CycleWitness:
    """Lift a simple directed cycle on pair indices to a simple host cycle.

    Each step i->j contributes the pair edge x_i_minus -> x_i_plus and the
    precomputed route into j's minus anchor.  Disjoint branch sets visited
    once each keep the host cycle simple; the weight telescopes to the
    auxiliary cycle weight, 0 mod q.
    """
    aux = [int(v) for v in aux_cycle]
    if len(aux) < 2:
        raise InputError("auxiliary cycle needs at least 2 pair indices")
    if len(set(aux)) != len(aux):
        raise InputError("auxiliary cycle repeats a pair index")
    if any(not (0 <= v < p.count) for v in aux):
        raise InputError("auxiliary cycle index out of range")

    verts: list[int] = []
    for step, i in enumerate(aux):
        j = aux[(step + 1) % len(aux)]
        x_minus = p.pair_edges[i][1]
        route = p.conn_paths[(i, j)]
        verts.append(x_minus)
        verts.extend(route[:-1])
    witness = CycleWitness(host=p.model.host, vertices=tuple(verts), q=p.q)
    if not verify_cycle_witness(witness):
        raise InternalInvariantError("lifted cycle failed verification")
    return witness


def required_branch_sets(q: int) -> int:
    """Branch sets needed for the guarantee: 2N, with N = 2q-1 for prime q
    and N = ceil(2q ln q) otherwise."""
    if q < 2:
        raise InputError("q must be at least 2")
    n = 2 * q - 1 if is_prime(q) else math.ceil(2 * q * math.log(q))
    return 2 * n


def find_divisible_cycle(
    model: MinorModel,
    q: int,
    seed: int = 0,
    use_all: bool = False,
    max_attempts: int | None = None,
) -> CycleWitness:
    """Full pipeline: pair, build the auxiliary digraph, find a zero-sum
    cycle (deterministic for prime q, randomized otherwise), and lift it.

    By default the model must certify a complete minor on at least
    required_branch_sets(q) branch sets.  ``use_all`` pairs every available
    branch set instead and runs best-effort: below the guarantee the
    randomized finder may exhaust its attempts (an honest failure), but a
    wrong witness is never returned.
    """
    need = required_branch_sets(q)
    if use_all:
        if model.size < 4:
            raise InputError("need at least 4 branch sets to pair")
        n_pairs = model.size // 2
    else:
        if model.size < need:
            raise InputError(
                f"model too small: q={q} needs {need} branch sets, got {model.size}"
            )
        n_pairs = need // 2
    pairing = pair_supernodes(model, n_pairs, q)
    aux = build_auxiliary_digraph(pairing)
    if is_prime(q) and n_pairs >= 2 * q - 1:
        aux_witness = find_zero_cycle_prime(aux)
    else:
        aux_witness = find_zero_cycle_randomized(aux, seed=seed, max_attempts=max_attempts)
    return lift_cycle(pairing, aux_witness.vertices)
