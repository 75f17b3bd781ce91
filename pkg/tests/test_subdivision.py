import itertools

import pytest

from divgraph import (
    BudgetExceeded,
    InputError,
    PatternGraph,
    StageFailure,
    WeightedGraph,
    build_divisible_subdivision,
    common_residue_filter,
    edge_path_residue,
    find_monochromatic_subdivision,
    gen_favorable_subdivision_instance,
    gen_minor_model,
    route_edges,
    select_all,
    split_and_weight,
    subdivide_pattern,
    validate_minor_model,
    verify_subdivision_witness,
)

C3 = PatternGraph.cycle(3)


def favorable(q=2, m=8, seed=0, pattern=C3, **kw):
    host, model, xs, ys = gen_favorable_subdivision_instance(pattern, q, m, seed, **kw)
    return host, model, xs, ys


def contract_split_host(inst):
    """Test-local contraction of split vertices back to original edges."""
    n = inst.original.n
    edges = set()
    z_ends = {}
    for u, v, _ in inst.host.edges():
        if u >= n or v >= n:
            z = u if u >= n else v
            other = v if u >= n else u
            z_ends.setdefault(z, []).append(other)
        else:
            edges.add((min(u, v), max(u, v)))
    for z, ends in z_ends.items():
        assert len(ends) == 2, f"split vertex {z} has {len(ends)} neighbors"
        a, b = ends
        edges.add((min(a, b), max(a, b)))
    return edges


class TestSplit:
    def test_single_cross_edge_split(self):
        host, model, xs, ys = favorable(q=2, m=4, seed=1)
        inst = split_and_weight(model, xs, ys)
        z = inst.original.n  # first split vertex
        x_end, y_end = inst.split_origin[z]
        assert inst.host.weight(x_end, z) == 0
        assert inst.host.weight(z, y_end) == 1
        x_owner = inst.owner[x_end]
        assert x_owner in xs and z in inst.model.branch_sets[x_owner]

    def test_internal_edges_untouched(self):
        host, model, xs, ys = favorable(q=2, m=4, seed=1)
        inst = split_and_weight(model, xs, ys)
        for idx in xs:
            for u, v in model.spanning_trees[idx]:
                assert inst.host.weight(u, v) == 1

    def test_contraction_roundtrip_50_seeds(self):
        for seed in range(50):
            _, model = gen_minor_model(6, 2, seed=seed, size_lo=1, size_hi=4)
            xs, ys = (0, 2, 4), (1, 3, 5)
            inst = split_and_weight(model, xs, ys)
            original_edges = {(u, v) for u, v, _ in model.host.edges()}
            assert contract_split_host(inst) == original_edges
            assert validate_minor_model(inst.model).ok

    def test_non_unit_host_rejected(self):
        g = WeightedGraph(4, [(0, 1, 2), (1, 2), (2, 3), (0, 2), (0, 3), (1, 3)], 3)
        from divgraph import identity_minor_model

        model = identity_minor_model(g)
        with pytest.raises(InputError):
            split_and_weight(model, (0, 1), (2, 3))

    def test_bad_partition_rejected(self):
        host, model, xs, ys = favorable(q=2, m=4, seed=0)
        with pytest.raises(InputError):
            split_and_weight(model, xs[:-1], ys)


class TestSelectAll:
    def test_favorable_all_supernodes_residue_zero(self):
        host, model, xs, ys = favorable(q=2, m=4, seed=2)
        inst = split_and_weight(model, xs, ys)
        selections = select_all(inst, 3, 2)
        assert set(selections) == set(xs)
        assert all(selections[i].residue.value == 0 for i in xs)
        # leaves are split vertices wired to distinct Y-supernodes
        for i in xs:
            ys_used = {inst.owner[inst.split_origin[z][1]] for z in selections[i].leaves_host}
            assert len(ys_used) == len(selections[i].leaves_host)

    def test_failure_names_supernode(self):
        # shrink the leaf pool by asking for more leaves than any class has
        host, model, xs, ys = favorable(q=2, m=4, seed=2)
        inst = split_and_weight(model, xs, ys)
        with pytest.raises(StageFailure) as exc:
            select_all(inst, 9, 2)
        assert exc.value.stage == "leaf-selection"
        assert "supernode" in str(exc.value)

    def test_hub_degree_sits_exactly_on_threshold(self):
        # engineered hubs land on (k-1)q+2 after trimming, and the selection
        # still finds its k leaves there
        from divgraph import steiner_trim
        from divgraph.subdivision import _supernode_tree

        for q, m in [(2, 8), (3, 4), (4, 4)]:
            k = m - 1
            host, model, xs, ys = favorable(q=q, m=m, seed=3)
            inst = split_and_weight(model, xs, ys)
            tree, members = _supernode_tree(inst, xs[0])
            trimmed = steiner_trim(tree)
            hub_local = trimmed.origin.index(0) if trimmed.origin else 0
            assert trimmed.graph.degree(hub_local) == (k - 1) * q + 2
            sel = select_all(inst, k, q)[xs[0]]
            assert len(sel.selection.leaves) == k


class TestCommonResidueFilter:
    def test_pigeonhole_at_exact_threshold(self):
        # (N-1)q+1 values with q=2, N=3 always yield 3 sharing a residue
        for bits in itertools.product([0, 1], repeat=5):
            picked = common_residue_filter(bits, 3, 2)
            assert picked is not None
            vals = {bits[i] for i in picked}
            assert len(vals) == 1 and len(picked) == 3

    def test_all_equal_takes_smallest_indices(self):
        assert common_residue_filter([4] * 7, 3, 5) == (0, 1, 2)

    def test_converse_failure(self):
        # N-1 copies of each of q residues: no residue reaches N
        q, n = 3, 4
        values = [r for r in range(q) for _ in range(n - 1)]
        assert common_residue_filter(values, n, q) is None

    def test_tie_prefers_smaller_residue(self):
        assert common_residue_filter([1, 0, 1, 0], 2, 2) == (1, 3)


class TestRouting:
    def test_favorable_routes_all_edges_disjointly(self):
        host, model, xs, ys = favorable(q=2, m=8, seed=4)
        inst = split_and_weight(model, xs, ys)
        selections = select_all(inst, 7, 2)
        gamma = PatternGraph.complete(8)
        chosen = tuple(xs[:8])
        routed = route_edges(inst, gamma, selections, chosen)
        assert len(routed) == 28
        seen = set()
        for r in routed.values():
            assert not (seen & set(r.path))
            seen.update(r.path)
            assert sum(inst.host.weight(a, b) for a, b in zip(r.path, r.path[1:])) % 2 == r.color

    def test_shared_endpoint_uses_distinct_leaves(self):
        host, model, xs, ys = favorable(q=2, m=4, seed=5)
        inst = split_and_weight(model, xs, ys)
        selections = select_all(inst, 3, 2)
        gamma = PatternGraph.complete(4)
        routed = route_edges(inst, gamma, selections, tuple(xs[:4]))
        at_zero = [r.leaves[0] for e, r in routed.items() if e[0] == 0]
        assert len(at_zero) == len(set(at_zero)) == 3

    def test_pool_exhaustion(self):
        # K_5 demands 4 leaves per vertex but selections carry only 3
        host, model, xs, ys = favorable(q=2, m=4, seed=5)
        inst = split_and_weight(model, xs, ys)
        selections = select_all(inst, 3, 2)
        gamma = PatternGraph.complete(5)
        with pytest.raises(StageFailure) as exc:
            route_edges(inst, gamma, selections, tuple(xs[:5]))
        assert exc.value.stage == "routing"


class TestMonochromaticSearch:
    def test_monochromatic_coloring_found_immediately(self):
        target, _ = subdivide_pattern(C3, 1)  # C_6
        coloring = {(u, v): 1 for u in range(8) for v in range(u + 1, 8)}
        found = find_monochromatic_subdivision(8, coloring, 2, target)
        assert found is not None
        images, color = found
        assert color == 1 and len(set(images)) == 6

    def test_every_two_coloring_of_k6_has_mono_triangle(self):
        # classic sanity case, exhausted over all 2^15 colorings
        pairs = [(u, v) for u in range(6) for v in range(u + 1, 6)]
        for bits in range(1 << 15):
            coloring = {e: (bits >> i) & 1 for i, e in enumerate(pairs)}
            found = find_monochromatic_subdivision(6, coloring, 2, C3)
            assert found is not None
            images, color = found
            a, b, c = images
            for x, y in [(a, b), (b, c), (a, c)]:
                assert coloring[(min(x, y), max(x, y))] == color

    def test_too_large_target_gives_none(self):
        target, _ = subdivide_pattern(C3, 1)  # C_6 needs 6 vertices
        coloring = {(u, v): 0 for u in range(5) for v in range(u + 1, 5)}
        assert find_monochromatic_subdivision(5, coloring, 2, target) is None

    def test_budget_exceeded_is_distinct(self):
        target, _ = subdivide_pattern(C3, 1)
        coloring = {(u, v): (u + v) % 3 for u in range(6) for v in range(u + 1, 6)}
        with pytest.raises(BudgetExceeded):
            find_monochromatic_subdivision(6, coloring, 3, target, budget=5)

    def test_embedding_recheck(self):
        # found copies re-verify: right shape and one color
        host, model, xs, ys = favorable(q=2, m=8, seed=6)
        inst = split_and_weight(model, xs, ys)
        selections = select_all(inst, 7, 2)
        gamma = PatternGraph.complete(8)
        routed = route_edges(inst, gamma, selections, tuple(xs[:8]))
        coloring = {e: r.color for e, r in routed.items()}
        target, _ = subdivide_pattern(C3, 1)
        images, color = find_monochromatic_subdivision(8, coloring, 2, target)
        assert len(set(images)) == target.n
        for u, v in target.edges:
            gu, gv = images[u], images[v]
            assert coloring[(min(gu, gv), max(gu, gv))] == color


class TestWeightAccounting:
    def test_identity_exhaustive_up_to_q11(self):
        # 2a + (q-1)*2a + q*b = (2a+b)q = 0 mod q for every a, b
        for q in range(2, 12):
            for a in range(q):
                for b in range(q):
                    assert edge_path_residue(a, b, q) == 0


class TestEndToEnd:
    def test_favorable_c3_q2(self):
        host, model, xs, ys = favorable(q=2, m=8, seed=7)
        w = build_divisible_subdivision(model, xs, ys, C3, 2, 8)
        assert verify_subdivision_witness(w)
        assert w.host is model.host
        for path in w.paths:
            assert (len(path) - 1) % 2 == 0  # even lengths in original coordinates

    def test_single_edge_pattern(self):
        edge = PatternGraph(2, ((0, 1),))
        host, model, xs, ys = favorable(q=2, m=4, seed=8, pattern=edge)
        w = build_divisible_subdivision(model, xs, ys, edge, 2, 4)
        assert verify_subdivision_witness(w)
        assert len(w.paths) == 1 and (len(w.paths[0]) - 1) % 2 == 0

    def test_q3_pipeline(self):
        host, model, xs, ys = favorable(q=3, m=4, seed=9)
        # C_3 subdivided twice = C_9 needs 9 > 4 vertices: honest ramsey miss
        with pytest.raises(StageFailure) as exc:
            build_divisible_subdivision(model, xs, ys, C3, 3, 4)
        assert exc.value.stage == "ramsey"

    def test_ramsey_size_bound_failure(self):
        host, model, xs, ys = favorable(q=2, m=5, seed=10)
        with pytest.raises(StageFailure) as exc:
            build_divisible_subdivision(model, xs, ys, C3, 2, 5)
        assert exc.value.stage == "ramsey"

    def test_high_degree_pattern_rejected(self):
        star4 = PatternGraph(5, ((0, 1), (0, 2), (0, 3), (0, 4)))
        host, model, xs, ys = favorable(q=2, m=8, seed=11)
        with pytest.raises(InputError):
            build_divisible_subdivision(model, xs, ys, star4, 2, 8)

    def test_growth_is_monotone(self):
        # extra Y-supernodes never turn a success into a failure
        for seed in (12, 13):
            host, model, xs, ys = favorable(q=2, m=8, seed=seed)
            w0 = build_divisible_subdivision(model, xs, ys, C3, 2, 8)
            assert verify_subdivision_witness(w0)
            host2, model2, xs2, ys2 = favorable(q=2, m=8, seed=seed, y_extra=4)
            w1 = build_divisible_subdivision(model2, xs2, ys2, C3, 2, 8)
            assert verify_subdivision_witness(w1)

    def test_edges_k_mode(self):
        # the original parameterization k = 2|E| on a matching instance
        host, model, xs, ys = favorable(q=2, m=4, seed=14, k_mode="edges")
        w = build_divisible_subdivision(
            model, xs, ys, PatternGraph(2, ((0, 1),)), 2, 4, k_mode="edges"
        )
        assert verify_subdivision_witness(w)
