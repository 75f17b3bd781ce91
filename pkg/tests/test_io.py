import pytest

from divgraph import (
    InputError,
    PatternGraph,
    complete_graph,
    find_divisible_cycle,
    gen_digraph,
    gen_minor_model,
    gen_tree,
    identity_minor_model,
    select_leaves,
    verify_cycle_witness,
    verify_selection,
    verify_subdivision_witness,
)
from divgraph.io import (
    parse_pattern,
    read_digraph,
    read_graph,
    read_model,
    read_selection,
    read_tree,
    read_witness,
    write_digraph,
    write_graph,
    write_model,
    write_selection,
    write_tree,
    write_witness,
)


class TestGraphFormat:
    def test_roundtrip(self, tmp_path):
        g = complete_graph(5, 3)
        p = tmp_path / "g.graph"
        write_graph(p, g)
        assert read_graph(p) == g

    def test_omitted_weight_is_one(self, tmp_path):
        p = tmp_path / "g.graph"
        p.write_text("graph 3 2 4\n0 1\n1 2 3\n")
        g = read_graph(p)
        assert g.weight(0, 1) == 1 and g.weight(1, 2) == 3

    def test_comments_and_blanks_ignored(self, tmp_path):
        p = tmp_path / "g.graph"
        p.write_text("# a graph\ngraph 2 1 2\n\n0 1 1  # the only edge\n")
        assert read_graph(p).m == 1

    def test_bad_header_diagnosed(self, tmp_path):
        p = tmp_path / "g.graph"
        p.write_text("graph 3 2\n0 1\n1 2\n")
        with pytest.raises(InputError, match="header"):
            read_graph(p)

    def test_missing_edges_diagnosed(self, tmp_path):
        p = tmp_path / "g.graph"
        p.write_text("graph 3 5 2\n0 1\n")
        with pytest.raises(InputError, match="expected 5 edge lines"):
            read_graph(p)

    def test_trailing_content_diagnosed(self, tmp_path):
        p = tmp_path / "g.graph"
        p.write_text("graph 3 1 2\n0 1\n1 2\n")
        with pytest.raises(InputError, match="trailing"):
            read_graph(p)

    def test_non_integer_diagnosed_with_line(self, tmp_path):
        p = tmp_path / "g.graph"
        p.write_text("graph 3 1 2\n0 x\n")
        with pytest.raises(InputError, match=":2:"):
            read_graph(p)

    def test_write_is_deterministic(self, tmp_path):
        g = complete_graph(6, 5)
        p1, p2 = tmp_path / "a", tmp_path / "b"
        write_graph(p1, g)
        write_graph(p2, g)
        assert p1.read_bytes() == p2.read_bytes()


class TestDigraphFormat:
    def test_roundtrip(self, tmp_path):
        d = gen_digraph(5, 4, seed=3)
        p = tmp_path / "d.digraph"
        write_digraph(p, d)
        assert read_digraph(p) == d

    def test_wrong_arc_count_diagnosed(self, tmp_path):
        p = tmp_path / "d.digraph"
        p.write_text("digraph 3 5 2\n")
        with pytest.raises(InputError, match="n\\(n-1\\)"):
            read_digraph(p)

    def test_duplicate_arc_diagnosed(self, tmp_path):
        p = tmp_path / "d.digraph"
        p.write_text("digraph 2 2 2\n0 1 1\n0 1 0\n")
        with pytest.raises(InputError, match="duplicate"):
            read_digraph(p)


class TestTreeFormat:
    def test_roundtrip(self, tmp_path):
        t = gen_tree("caterpillar", 3, seed=2, branch=6)
        p = tmp_path / "t.tree"
        write_tree(p, t)
        loaded = read_tree(p)
        assert loaded.graph == t.graph and loaded.leaves == t.leaves

    def test_root_preserved(self, tmp_path):
        from divgraph import LabeledTree, WeightedGraph

        t = LabeledTree(graph=WeightedGraph(3, [(0, 1), (1, 2)], 2), leaves=(0, 2), root=1)
        p = tmp_path / "t.tree"
        write_tree(p, t)
        assert read_tree(p).root == 1


class TestModelFormat:
    def test_roundtrip_with_partition(self, tmp_path):
        host, model = gen_minor_model(6, 3, seed=1, size_lo=1, size_hi=3)
        p = tmp_path / "m.model.json"
        write_model(p, model, x_sets=[0, 2, 4], y_sets=[1, 3, 5])
        loaded, partition = read_model(p, host)
        assert loaded.branch_sets == model.branch_sets
        assert loaded.cross_edges == model.cross_edges
        assert partition == ((0, 2, 4), (1, 3, 5))

    def test_roundtrip_without_partition(self, tmp_path):
        host, model = gen_minor_model(4, 3, seed=2)
        p = tmp_path / "m.model.json"
        write_model(p, model)
        loaded, partition = read_model(p, host)
        assert partition is None and loaded.spanning_trees == model.spanning_trees

    def test_malformed_json_diagnosed(self, tmp_path):
        p = tmp_path / "m.model.json"
        p.write_text("{not json")
        with pytest.raises(InputError, match="cannot parse"):
            read_model(p, complete_graph(3, 2))

    def test_missing_field_diagnosed(self, tmp_path):
        p = tmp_path / "m.model.json"
        p.write_text('{"branch_sets": [[0]]}')
        with pytest.raises(InputError, match="malformed model"):
            read_model(p, complete_graph(3, 2))


class TestWitnessFormat:
    def test_cycle_roundtrip_digraph(self, tmp_path):
        from divgraph import find_zero_cycle_prime

        d = gen_digraph(5, 3, seed=1)
        w = find_zero_cycle_prime(d)
        p = tmp_path / "w.json"
        write_witness(p, w)
        loaded = read_witness(p, d)
        assert loaded.vertices == w.vertices and verify_cycle_witness(loaded)

    def test_cycle_roundtrip_graph(self, tmp_path):
        model = identity_minor_model(complete_graph(18, 5))
        w = find_divisible_cycle(model, 5)
        p = tmp_path / "w.json"
        write_witness(p, w)
        loaded = read_witness(p, model.host)
        assert verify_cycle_witness(loaded)

    def test_subdivision_roundtrip(self, tmp_path):
        from divgraph import build_divisible_subdivision, gen_favorable_subdivision_instance

        pattern = PatternGraph.cycle(3)
        host, model, xs, ys = gen_favorable_subdivision_instance(pattern, 2, 8, seed=1)
        w = build_divisible_subdivision(model, xs, ys, pattern, 2, 8)
        p = tmp_path / "w.json"
        write_witness(p, w)
        loaded = read_witness(p, host)
        assert verify_subdivision_witness(loaded)
        assert loaded.paths == w.paths

    def test_unknown_kind_diagnosed(self, tmp_path):
        p = tmp_path / "w.json"
        p.write_text('{"kind": "mystery"}')
        with pytest.raises(InputError, match="unknown witness kind"):
            read_witness(p, complete_graph(3, 2))


class TestSelectionFormat:
    def test_roundtrip_both_cases(self, tmp_path):
        star = gen_tree("star", 2, seed=0, leaves=6, labels=0)
        cat = gen_tree("caterpillar", 2, seed=0, branch=9, labels=0)
        for tree, k in [(star, 3), (cat, 3)]:
            sel = select_leaves(tree, k, 2)
            p = tmp_path / "sel.json"
            write_selection(p, sel)
            loaded = read_selection(p)
            assert loaded == sel
            assert verify_selection(tree, loaded)


class TestPatternParse:
    def test_shorthands(self):
        assert parse_pattern("cycle:3") == PatternGraph.cycle(3)
        assert parse_pattern("path:2") == PatternGraph.path(2)
        assert parse_pattern("edge") == PatternGraph(2, ((0, 1),))
        assert parse_pattern("edges:0-1,1-2,2-0") == PatternGraph.cycle(3)

    def test_garbage_rejected(self):
        with pytest.raises(InputError):
            parse_pattern("dodecahedron")
