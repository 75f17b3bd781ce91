"""Shared fixtures and independent re-check helpers.

The checkers here deliberately reimplement validation logic with plain
dict/set scans so library outputs are tested against something other than
the library's own verifiers.
"""

from __future__ import annotations

import pytest

from divgraph import MinorModel, WeightedGraph


@pytest.fixture
def k4():
    return WeightedGraph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)], 4)


def independent_model_check(model: MinorModel) -> list[str]:
    """Re-check minor-model invariants by direct scans, not via the library."""
    problems = []
    host_edges = {(u, v) for u, v, _ in model.host.edges()}
    host_edges |= {(v, u) for u, v in host_edges}

    seen = {}
    for i, s in enumerate(model.branch_sets):
        for v in s:
            if v in seen:
                problems.append(f"vertex {v} in sets {seen[v]} and {i}")
            seen[v] = i

    for i, (s, tree) in enumerate(zip(model.branch_sets, model.spanning_trees)):
        members = set(s)
        adj = {v: [] for v in members}
        for u, v in tree:
            if u not in members or v not in members:
                problems.append(f"set {i}: tree edge ({u},{v}) escapes")
                continue
            if (u, v) not in host_edges:
                problems.append(f"set {i}: tree edge ({u},{v}) not in host")
                continue
            adj[u].append(v)
            adj[v].append(u)
        if len(tree) != len(members) - 1:
            problems.append(f"set {i}: wrong tree edge count")
        stack = [s[0]]
        visited = {s[0]}
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in visited:
                    visited.add(y)
                    stack.append(y)
        if visited != members:
            problems.append(f"set {i}: tree does not connect the set")

    size = len(model.branch_sets)
    for i in range(size):
        for j in range(i + 1, size):
            if (i, j) not in model.cross_edges:
                problems.append(f"pair ({i},{j}) has no cross edge")
                continue
            u, v = model.cross_edges[(i, j)]
            if u not in set(model.branch_sets[i]) or v not in set(model.branch_sets[j]):
                problems.append(f"pair ({i},{j}) cross edge endpoints misplaced")
            if (u, v) not in host_edges:
                problems.append(f"pair ({i},{j}) cross edge not a host edge")
    return problems


def undirected_cycle_weight(g: WeightedGraph, vertices) -> int:
    """Plain re-summation of a cyclic vertex sequence's edge weights."""
    total = 0
    for i, u in enumerate(vertices):
        v = vertices[(i + 1) % len(vertices)]
        total += g.weight(u, v)
    return total
