"""Tests for trees: validation, constructors, grafting, subtrees, canonical codes and enumeration."""
import itertools

import pytest

from dendrokit.tree import (
    Tree,
    TreeError,
    Vertex,
    are_isomorphic,
    canonical_code,
    cnk,
    corolla,
    cuts,
    enumerate_trees,
    eta,
    format_tree,
    graft,
    leaves_over,
    linear,
    linear_chain,
    parse_tree,
    relabel,
    shuffled,
    spanned_subtree,
    validate,
)


def planar_shapes(vertices: int, max_arity: int):
    """Every planar tree with exactly ``vertices`` vertices, as nested tuples ("|" is a leaf)."""
    if vertices == 0:
        return ["|"]
    out = []
    for arity in range(max_arity + 1):
        for split in itertools.product(range(vertices), repeat=arity):
            if sum(split) != vertices - 1:
                continue
            for children in itertools.product(*(planar_shapes(k, max_arity) for k in split)):
                out.append(tuple(children))
    return out


def shape_code(shape) -> str:
    if shape == "|":
        return "|"
    return "(" + "".join(sorted(shape_code(c) for c in shape)) + ")"


class TestValidate:
    def test_eta_is_valid(self):
        assert validate(eta()) is None

    def test_two_edges_without_vertices(self):
        problem = validate(Tree(edges=("a", "b"), root="a", vertices=()))
        assert problem is not None
        assert "exactly one" in problem

    def test_figure_tree(self, figure_tree):
        assert validate(figure_tree) is None
        assert figure_tree.leaves == {"a", "b", "d"}
        assert figure_tree.inner_edges == {"c"}

    def test_edge_with_two_output_vertices(self):
        with pytest.raises(TreeError, match="output of more than one vertex"):
            Tree.build("r", [Vertex("r", ("x",)), Vertex("r", ("y",))])

    def test_edge_feeding_two_vertices(self):
        with pytest.raises(TreeError):
            Tree.build("r", [Vertex("r", ("x", "y")), Vertex("y", ("x",))])

    def test_stump(self):
        t = parse_tree("r[]")
        assert t.leaves == frozenset()
        assert t.inner_edges == frozenset()


class TestConstructors:
    def test_linear_zero_is_eta(self):
        assert linear(0) == eta()

    def test_corolla_zero(self):
        c0 = corolla(0)
        assert c0.edges == ("b",)
        assert len(c0.vertices) == 1 and c0.vertices[0].arity == 0

    def test_corolla_two(self):
        c2 = corolla(2)
        assert len(c2.edges) == 3
        assert len(c2.vertices) == 1
        assert c2.leaves == {"a1", "a2"}

    def test_corolla_three_leaves(self):
        assert corolla(3).leaves == {"a1", "a2", "a3"}
        assert corolla(3).inner_edges == frozenset()

    def test_negative_sizes(self):
        with pytest.raises(TreeError):
            corolla(-1)
        with pytest.raises(TreeError):
            linear(-2)
        with pytest.raises(TreeError):
            cnk(1, 0)

    def test_linear_chain(self):
        assert linear_chain(linear(2)) == ["a0", "a1", "a2"]
        assert linear_chain(eta()) == ["a0"]
        assert linear_chain(corolla(2)) is None


class TestGraft:
    def test_cnk_from_two_corollas(self):
        lower = relabel(corolla(2), {"a1": "b1", "a2": "bk", "b": "c"})
        upper = corolla(3)
        assert are_isomorphic(graft(lower, "bk", upper), cnk(3, 2))
        assert cnk(3, 2).inner_edges == {"bk"}

    def test_graft_eta_on_leaf(self, figure_tree):
        assert graft(figure_tree, "a", eta("a")) == figure_tree

    def test_graft_onto_eta(self, figure_tree):
        assert are_isomorphic(graft(eta("z"), "z", figure_tree), figure_tree)

    def test_graft_needs_a_leaf(self, figure_tree):
        with pytest.raises(TreeError, match="not a leaf"):
            graft(figure_tree, "c", corolla(1))

    def test_graft_name_clash(self):
        with pytest.raises(TreeError, match="both trees"):
            graft(corolla(2), "a1", parse_tree("x[a2,y]"))


class TestSubtrees:
    def test_composite_operation(self, figure_tree):
        sub = spanned_subtree(figure_tree, "e", {"a", "b", "d"})
        assert sub is not None
        assert set(sub.vertices) == {"c", "e"}
        assert "c" in sub.edges

    def test_single_vertex(self, figure_tree):
        sub = spanned_subtree(figure_tree, "e", {"c", "d"})
        assert sub.vertices == ("e",)

    def test_uncovered_branch(self, figure_tree):
        assert spanned_subtree(figure_tree, "e", {"a", "d"}) is None

    def test_identity(self, figure_tree):
        sub = spanned_subtree(figure_tree, "a", {"a"})
        assert sub.is_identity

    def test_cuts_of_root(self, figure_tree):
        assert set(cuts(figure_tree, "e")) == {
            frozenset({"e"}),
            frozenset({"c", "d"}),
            frozenset({"a", "b", "d"}),
        }

    def test_leaves_over(self, figure_tree):
        assert leaves_over(figure_tree, "c") == {"a", "b"}
        assert leaves_over(figure_tree, "e") == {"a", "b", "d"}
        assert leaves_over(figure_tree, "d") == {"d"}


class TestCanonicalCode:
    def test_mirror_images(self):
        assert canonical_code(parse_tree("e[c[a,b],d]")) == canonical_code(parse_tree("e[d,c[b,a]]"))

    def test_linear_vs_corolla(self):
        assert canonical_code(linear(2)) != canonical_code(corolla(2))

    def test_relabelings_of_c22(self, rng):
        codes = {canonical_code(shuffled(cnk(2, 2), rng)) for _ in range(30)}
        assert codes == {canonical_code(cnk(2, 2))}

    @pytest.mark.parametrize("t", enumerate_trees(3, 2))
    def test_shuffle_stability(self, t, rng):
        assert are_isomorphic(shuffled(t, rng), t)


class TestEnumerate:
    def test_no_vertices(self):
        trees = enumerate_trees(0, 5)
        assert len(trees) == 1
        assert are_isomorphic(trees[0], eta())

    def test_one_vertex_arity_two(self):
        codes = {t.code for t in enumerate_trees(1, 2)}
        assert codes == {canonical_code(t) for t in (eta(), corolla(0), corolla(1), corolla(2))}

    @pytest.mark.parametrize("max_vertices,max_arity", [(2, 2), (3, 2), (3, 3), (4, 2)])
    def test_against_planar_oracle(self, max_vertices, max_arity):
        expected = {shape_code(s) for v in range(max_vertices + 1) for s in planar_shapes(v, max_arity)}
        found = [t.code.decode() for t in enumerate_trees(max_vertices, max_arity)]
        assert len(found) == len(set(found))
        assert set(found) == expected

    def test_two_vertices_count(self):
        assert len(enumerate_trees(2, 2)) == 10

    def test_edge_cap(self):
        assert all(len(t.edges) <= 4 for t in enumerate_trees(4, 3, max_edges=4))

    def test_deterministic_order(self):
        first = [format_tree(t) for t in enumerate_trees(3, 3)]
        second = [format_tree(t) for t in enumerate_trees(3, 3)]
        assert first == second


class TestGrammar:
    @pytest.mark.parametrize("text", ["e[c[a,b],d]", "x", "r[]", "c[b1,bk[a1,a2]]"])
    def test_round_trip(self, text):
        t = parse_tree(text)
        assert format_tree(t) == text
        assert are_isomorphic(parse_tree(format_tree(t)), t)

    @pytest.mark.parametrize("t", enumerate_trees(3, 3))
    def test_enumerated_trees_reparse(self, t):
        assert parse_tree(format_tree(t)) == t

    def test_shorthands(self):
        assert parse_tree("C(3)") == corolla(3)
        assert parse_tree("L(2)") == linear(2)
        assert parse_tree("C(2,2)") == cnk(2, 2)


@pytest.mark.slow
def test_canonical_code_stable_under_relabelling(rng):
    for t in enumerate_trees(6, 5, max_edges=6):
        code = canonical_code(t)
        for _ in range(1000):
            assert canonical_code(shuffled(t, rng)) == code, format_tree(t)
