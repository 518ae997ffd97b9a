from comtes.core import components, comte, graph
from comtes.invariants import (
    abelianization_rank,
    group_presentation,
    linking_matrix,
    quandle_presentation,
)
from comtes.racks import graph_of_rack, tetrahedron_quandle

TREFOIL = graph("a b c", [("a", "b", "c"), ("b", "c", "a"), ("c", "a", "b")])
LK_EXAMPLE = comte("a b c d", [("a", "b", "c", 1), ("b", "a", "c", 1)])


class TestGroupPresentation:
    def test_trefoil_relations(self):
        pres = group_presentation(TREFOIL)
        assert pres.generators == ("a", "b", "c")
        # arrow b --a--> c contributes a*b = c*a
        assert pres.relations[0] == ((("c", 1), ("a", 1)), (("b", 1), ("c", 1)))
        assert len(pres.relations) == 3
        text = pres.format()
        assert "gens: a b c" in text and "c*a = b*c" in text

    def test_free_group_rank_one(self):
        pres = group_presentation(graph("a", []))
        assert pres.generators == ("a",) and pres.relations == ()

    def test_tautological_relation_kept(self):
        pres = group_presentation(graph("a", [("a", "a", "a")]))
        assert pres.relations == (((("a", 1), ("a", 1)), (("a", 1), ("a", 1))),)


class TestQuandlePresentation:
    def test_trefoil(self):
        pres = quandle_presentation(TREFOIL)
        assert pres.relations == ((("c", "a"), "b"), (("a", "b"), "c"), (("b", "c"), "a"))
        assert "c |> a = b" in pres.format()

    def test_self_loop(self):
        pres = quandle_presentation(graph("a", [("a", "a", "a")]))
        assert pres.relations == ((("a", "a"), "a"),)

    def test_rack_graph_has_square_many_relations(self):
        x = tetrahedron_quandle()
        pres = quandle_presentation(graph_of_rack(x))
        assert len(pres.relations) == x.n ** 2


class TestAbelianization:
    def test_trefoil(self):
        assert abelianization_rank(TREFOIL) == 1

    def test_three_components(self):
        assert abelianization_rank(LK_EXAMPLE.graph) == 3

    def test_empty(self):
        assert abelianization_rank(graph([], [])) == 0

    def test_matches_components_random(self, make_comte):
        for _ in range(120):
            g = make_comte().graph
            assert abelianization_rank(g) == len(components(g))


class TestLinking:
    def test_paper_example(self):
        lk = linking_matrix(LK_EXAMPLE)
        assert lk.components == (("a", "b"), ("c",), ("d",))
        want = {(i, j): 0 for i in range(3) for j in range(3) if i != j}
        want[(1, 0)] = 2
        assert lk.entries == want

    def test_hopf_comte(self):
        hopf = comte("a b", [("a", "a", "b", -1), ("b", "b", "a", -1)])
        lk = linking_matrix(hopf)
        assert lk.entries == {(0, 1): -1, (1, 0): -1}

    def test_connected_is_empty(self):
        lk = linking_matrix(comte("a b c", [("a", "b", "c", 1), ("b", "c", "a", 1), ("c", "a", "b", 1)]))
        assert lk.entries == {}
        assert "no off-diagonal" in lk.format()

    def test_format(self):
        lk = linking_matrix(LK_EXAMPLE)
        assert "lk[2][1] = 2" in lk.format()
