import json
from fractions import Fraction
from pathlib import Path

import pytest

from graphpotentials.graphs import (
    EdgeWeightVector,
    canonical_form,
    coloring_boundary_move,
    dumbbell_graph,
    elementary_transformation,
    enumerate_trivalent,
    genus,
    graph_from_json,
    graph_to_json,
    homology_ranks_f2,
    is_isomorphic,
    make_graph,
    mgamma_member,
    necklace_graph,
    normalize_coloring,
    theta_graph,
    validate,
    with_colors,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def tripod():
    return make_graph([("v", 0)], [], [("X", "v", "out"), ("Y", "v", "out"), ("Z", "v", "out")])


class TestValidation:
    def test_good_graphs_have_no_diagnostics(self):
        for g in (theta_graph(), dumbbell_graph(), necklace_graph(3), tripod(),
                  necklace_graph(2, open_ends=True, parity=1)):
            assert validate(g) == []

    def test_duplicate_vertex_id(self):
        g = make_graph([("v1", 0), ("v1", 0)], [("a", "v1", "v1")], [])
        assert any("duplicate vertex" in d for d in validate(g))

    def test_edge_and_leaf_ids_share_namespace(self):
        g = make_graph([("v1", 0), ("v2", 0)],
                       [("a", "v1", "v2"), ("b", "v1", "v2")],
                       [("a", "v1", "out"), ("b", "v2", "out")])
        assert any("distinct" in d for d in validate(g))

    def test_unknown_endpoint(self):
        g = make_graph([("v1", 0)], [("a", "v1", "nowhere")], [])
        assert any("nowhere" in d for d in validate(g))

    def test_bad_color_and_orientation(self):
        g = make_graph([("v1", 2)], [], [("p", "v1", "sideways")])
        diags = validate(g)
        assert any("color" in d for d in diags)
        assert any("orientation" in d for d in diags)

    def test_wrong_degree(self):
        g = make_graph([("v1", 0), ("v2", 0)], [("a", "v1", "v2")], [])
        assert any("degree" in d for d in validate(g))

    def test_count_identities_follow_from_trivalence(self):
        # per component: V = 2b - 2 + n and E_int = 3b - 3 + n
        for g in enumerate_trivalent(2) + enumerate_trivalent(3):
            b = genus(g)
            assert len(g.vertices) == 2 * b - 2
            assert len(g.edges) == 3 * b - 3


class TestGenusAndHomology:
    @pytest.mark.parametrize("g,expected", [
        (theta_graph(), 2),
        (dumbbell_graph(), 2),
        (necklace_graph(4), 4),
        (necklace_graph(2, open_ends=True), 2),
        (tripod(), 0),
    ])
    def test_genus(self, g, expected):
        assert genus(g) == expected

    def test_homology_ranks(self):
        # rank H_0 = components, rank H_1 = genus, from the F2 incidence matrix
        assert homology_ranks_f2(theta_graph()) == (1, 2)
        assert homology_ranks_f2(dumbbell_graph()) == (1, 2)
        assert homology_ranks_f2(necklace_graph(5)) == (1, 5)
        assert homology_ranks_f2(tripod()) == (1, 0)


class TestColoring:
    def test_boundary_move_flips_both_endpoints(self):
        g = theta_graph()
        h = coloring_boundary_move(g, "a")
        assert h.color("v1") == 1 and h.color("v2") == 1
        assert coloring_boundary_move(h, "a") == g

    def test_boundary_move_on_loop_is_identity(self):
        g = dumbbell_graph()
        assert coloring_boundary_move(g, "b") == g

    def test_moves_preserve_parity(self):
        g = with_colors(necklace_graph(3), {"v2": 1})
        h = coloring_boundary_move(g, "s2")
        assert h.coloring_parity() == g.coloring_parity() == 1

    def test_normalize_coloring(self):
        g = with_colors(necklace_graph(3), {"v1": 1, "v3": 1, "v4": 1})
        normal, moves = normalize_coloring(g)
        assert normal.coloring_parity() == 1
        assert sum(normal.color(v.id) for v in normal.vertices) == 1
        # replaying the moves reproduces the normalized coloring
        replay = g
        for e in moves:
            replay = coloring_boundary_move(replay, e)
        assert replay == normal

    def test_normalize_even_clears_all_colors(self):
        g = with_colors(theta_graph(), {"v1": 1, "v2": 1})
        normal, _ = normalize_coloring(g)
        assert all(normal.color(v.id) == 0 for v in normal.vertices)


class TestElementaryTransformation:
    def test_theta_becomes_dumbbell(self):
        out = elementary_transformation(theta_graph(), "a")
        assert is_isomorphic(out, dumbbell_graph())

    def test_dumbbell_bridge_becomes_theta(self):
        out = elementary_transformation(dumbbell_graph(), "a")
        assert is_isomorphic(out, theta_graph())

    def test_loop_rejected(self):
        with pytest.raises(ValueError):
            elementary_transformation(dumbbell_graph(), "b")

    def test_preserves_genus_and_validity(self):
        for g in enumerate_trivalent(3):
            for e in g.edges:
                if e.ends[0] == e.ends[1]:
                    continue
                out = elementary_transformation(g, e.id)
                assert validate(out) == []
                assert genus(out) == 3


class TestEnumeration:
    def test_counts(self):
        assert len(enumerate_trivalent(2)) == 2
        assert len(enumerate_trivalent(3)) == 5

    def test_classes_are_pairwise_distinct(self):
        classes = enumerate_trivalent(3)
        for i, a in enumerate(classes):
            for b in classes[i + 1:]:
                assert not is_isomorphic(a, b)

    def test_genus_2_is_theta_and_dumbbell(self):
        classes = enumerate_trivalent(2)
        assert any(is_isomorphic(g, theta_graph()) for g in classes)
        assert any(is_isomorphic(g, dumbbell_graph()) for g in classes)

    def test_genus_3_shape_invariants(self):
        def shape(g):
            loops = sum(1 for e in g.edges if e.ends[0] == e.ends[1])
            mult = {}
            for e in g.edges:
                key = tuple(sorted(e.ends))
                mult[key] = mult.get(key, 0) + 1
            return loops, max(mult.values())

        shapes = sorted(shape(g) for g in enumerate_trivalent(3))
        assert shapes == [(0, 1), (0, 2), (1, 2), (2, 2), (3, 1)]

    def test_canonical_form_is_relabeling_invariant(self):
        g = necklace_graph(3)
        # reverse vertex naming, permute edge insertion order
        mapping = {v.id: f"w{9 - i}" for i, v in enumerate(g.vertices)}
        relabeled = make_graph(
            [(mapping[v.id], v.color) for v in reversed(g.vertices)],
            [(e.id, mapping[e.ends[0]], mapping[e.ends[1]]) for e in reversed(g.edges)],
        )
        assert canonical_form(relabeled) == canonical_form(g)
        assert is_isomorphic(relabeled, g)

    def test_isomorphism_respects_colors(self):
        a = with_colors(theta_graph(), {"v1": 1})
        b = with_colors(theta_graph(), {"v2": 1})
        c = theta_graph()
        assert is_isomorphic(a, b)
        assert not is_isomorphic(a, c)


class TestNecklace:
    @pytest.mark.parametrize("g", [2, 3, 4])
    def test_closed_shape(self, g):
        n = necklace_graph(g)
        assert validate(n) == []
        assert genus(n) == g
        assert len(n.leaves) == 0

    def test_open_has_two_leaves_and_parity(self):
        n0 = necklace_graph(1, open_ends=True, parity=0)
        n1 = necklace_graph(1, open_ends=True, parity=1)
        assert {l.id for l in n0.leaves} == {"x", "y"}
        assert n0.coloring_parity() == 0
        assert n1.coloring_parity() == 1
        orient0 = {l.id: l.orientation for l in n0.leaves}
        orient1 = {l.id: l.orientation for l in n1.leaves}
        assert orient0 == {"x": "out", "y": "out"}
        assert orient1 == {"x": "out", "y": "in"}


class TestLattice:
    def test_integer_weights_are_members(self):
        g = theta_graph()
        assert mgamma_member(g, {"a": 1, "b": 0, "c": 2})

    def test_half_integers_need_even_vertex_sums(self):
        g = theta_graph()
        # half on every edge: each vertex sees 3/2, not integral
        assert not mgamma_member(g, {"a": Fraction(1, 2), "b": Fraction(1, 2), "c": Fraction(1, 2)})
        # half on two edges forming a cycle through both vertices
        assert mgamma_member(g, {"a": Fraction(1, 2), "b": Fraction(1, 2), "c": 0})

    def test_loop_counts_twice(self):
        g = dumbbell_graph()
        # loop weight contributes twice at its vertex, so half-integer loop
        # weight alone sums to an integer
        assert mgamma_member(g, {"a": 0, "b": Fraction(1, 2), "c": 0})
        assert not mgamma_member(g, {"a": Fraction(1, 2), "b": 0, "c": 0})

    def test_quarter_weights_rejected(self):
        g = theta_graph()
        assert not mgamma_member(g, {"a": Fraction(1, 4), "b": Fraction(1, 4), "c": Fraction(1, 2)})

    def test_weight_vector_wrapper(self):
        g = theta_graph()
        w = EdgeWeightVector(g, {"a": Fraction(1, 2), "b": Fraction(1, 2), "c": 0})
        assert w.in_lattice()


class TestJson:
    def test_round_trip(self):
        for g in (theta_graph(1), dumbbell_graph(), necklace_graph(2, open_ends=True, parity=1)):
            assert graph_from_json(graph_to_json(g)) == g

    def test_fixture_files_load_and_validate(self):
        files = sorted(FIXTURES.glob("*.json"))
        assert len(files) >= 8
        for f in files:
            g = graph_from_json(json.loads(f.read_text()))
            assert validate(g) == []

    def test_fixture_theta_matches_builtin(self):
        g = graph_from_json(json.loads((FIXTURES / "theta.json").read_text()))
        assert is_isomorphic(g, theta_graph())
