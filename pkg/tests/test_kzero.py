"""Tests for K0 presentations, induced maps, lambda and colimit preservation."""
import pytest

from dendrokit import dset
from dendrokit.dset import DendMap
from dendrokit.intlin import GroupHom, compose_homs, identity_matrix, induced_iso_check
from dendrokit.kan import horn_map_dendmap, horn_maps
from dendrokit.kzero import (
    ETA,
    BoundError,
    cocycle_count,
    colour_map,
    colimit_check,
    hom_count_to_cyclic,
    induced,
    inclusion_is_k0_iso,
    k0,
    lambda_is_bijective,
    lambda_is_injective,
    lambda_map,
    pi0_underlying,
    presentation,
    quotient_colimit_check,
    union_colimit_check,
)
from dendrokit.omega import compose, face, hom, horn_labels
from dendrokit.tree import cnk, corolla, enumerate_trees, linear, parse_tree


def edge_class(pres, t, edges):
    """The generator-level vector summing the eta-dendrices of ``t`` at ``edges``."""
    row = [0] * len(pres.generators)
    for e in edges:
        row = [a + b for a, b in zip(row, pres.unit(dset.map_dendrex(colour_map(t, e))))]
    return row


class TestPresentation:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_corolla(self, n):
        pres = presentation(dset.representable(corolla(n)))
        assert len(pres.generators) == n + 1
        assert str(pres.group) == ("Z" if n == 1 else f"Z^{n}")

    def test_nullary_corolla_kills_its_output(self):
        pres = presentation(dset.representable(corolla(0)))
        assert pres.relations == [[-1]]
        assert pres.group.is_trivial()

    def test_discrete_z2_rows(self, z2_nerve):
        pres = presentation(z2_nerve, 2)
        assert len(pres.generators) == 2
        assert [-1, 0] in pres.relations
        assert [-1, 2] in pres.relations
        assert str(pres.group) == "Z/2"

    def test_interval_has_only_unary_rows(self):
        x = dset.i_shriek(dset.standard_simplex(1), "interval")
        pres = presentation(x)
        assert pres.arity_bound == 1
        assert all(p.startswith("C1") for p in pres.provenance)
        assert str(pres.group) == "Z"

    def test_provenance_per_row(self, figure_tree):
        pres = presentation(dset.representable(figure_tree))
        assert len(pres.provenance) == len(pres.relations)

    def test_bound_too_small(self):
        with pytest.raises(BoundError, match="below"):
            presentation(dset.representable(corolla(3)), 2)

    def test_nerve_bound_is_two(self, z2_nerve):
        with pytest.raises(BoundError):
            presentation(z2_nerve, 1)

    @pytest.mark.parametrize("groupoid", ["z2", "max2", "sign"])
    def test_nerve_bound_stability(self, groupoid, z2, max2):
        from dendrokit.smc import picard_sign_example

        p = {"z2": z2, "max2": max2, "sign": picard_sign_example()}[groupoid]
        d = dset.nerve(p)
        two, three = presentation(d, 2), presentation(d, 3)
        assert two.generators == three.generators
        h = GroupHom.of(two.group, three.group, identity_matrix(len(two.generators)))
        assert induced_iso_check(h)


class TestK0Values:
    @pytest.mark.parametrize("t", enumerate_trees(3, 3, max_edges=5))
    def test_representable_is_free_on_leaves(self, t):
        group = k0(dset.representable(t))
        assert group.free_rank == len(t.leaves)
        assert group.invariant_factors == []

    @pytest.mark.parametrize("t", enumerate_trees(3, 2, max_edges=5))
    def test_segal_core(self, t):
        core = dset.segal_core(t)
        assert k0(core).free_rank == len(t.leaves)
        assert induced_iso_check(induced(core.inclusion))

    def test_terminal_and_empty(self):
        assert str(k0(dset.terminal())) == "0"
        assert str(k0(dset.empty())) == "0"

    def test_horn_of_grafted_corollas(self):
        assert str(k0(dset.horn(cnk(2, 2), "bk"))) == "Z^3"

    def test_figure_tree(self, figure_tree):
        assert str(k0(dset.representable(figure_tree))) == "Z^3"

    def test_discrete_max_monoid_is_trivial(self, max2_nerve):
        assert k0(max2_nerve).is_trivial()

    def test_sign_groupoid(self, sign_nerve):
        assert str(k0(sign_nerve)) == "Z/2"


class TestInduced:
    def test_identity(self, figure_tree):
        rep = dset.representable(figure_tree)
        h = induced(dset.identity_map(rep))
        assert h.matrix == tuple(tuple(r) for r in identity_matrix(5))

    def test_outer_face_sends_edge_to_leaves_over_it(self, figure_tree):
        m = face(figure_tree, "@e")
        h = induced(dset.yoneda(m))
        source, target = presentation(dset.representable(m.source)), presentation(dset.representable(figure_tree))
        image = h(edge_class(source, m.source, ["c"]))
        expected = edge_class(target, figure_tree, ["a", "b"])
        assert target.group.coordinates(image) == target.group.coordinates(expected)

    @pytest.mark.parametrize("label", ["c", "@c", "@e"])
    def test_horn_inclusions(self, figure_tree, label):
        assert induced_iso_check(induced(dset.horn(figure_tree, label).inclusion))

    @pytest.mark.parametrize("t", [corolla(2), cnk(1, 2), cnk(2, 1), linear(3)])
    def test_horn_inclusions_of_small_trees(self, t):
        for label in horn_labels(t):
            assert induced_iso_check(induced(dset.horn(t, label).inclusion))

    def test_functorial(self, figure_tree):
        s, u = corolla(2), parse_tree("c[a,b]")
        for f in hom(s, u):
            for g in hom(u, figure_tree):
                both = induced(dset.yoneda(compose(g, f)))
                assert compose_homs(induced(dset.yoneda(g)), induced(dset.yoneda(f))).matrix == both.matrix

    def test_non_natural_map_is_rejected(self):
        rep = dset.representable(corolla(2))
        point = rep.dendrices(ETA)[0]
        bad = DendMap(rep, rep, lambda shape, x: point if shape == ETA else x, name="bad")
        with pytest.raises(dset.NaturalityError):
            induced(bad)


class TestLambda:
    def test_interval_is_connected(self):
        x = dset.i_shriek(dset.standard_simplex(1), "interval")
        assert len(pi0_underlying(x)) == 1
        assert lambda_is_bijective(x) is False
        assert lambda_is_injective(x)

    def test_two_points(self):
        x = dset.i_shriek(dset.SimplicialSetFin(("p", "q")), "two-points")
        assert len(pi0_underlying(x)) == 2
        assert str(k0(x)) == "Z^2"

    def test_discrete_z2(self, z2_nerve):
        table = lambda_map(z2_nerve)
        assert len(table) == 2
        assert lambda_is_bijective(z2_nerve)

    def test_max_monoid_not_injective(self, max2_nerve):
        assert len(pi0_underlying(max2_nerve)) == 2
        assert not lambda_is_injective(max2_nerve)

    def test_sign_groupoid(self, sign_nerve):
        assert lambda_is_bijective(sign_nerve)


class TestColimits:
    def test_collapse_horn(self, figure_tree):
        q = dset.quotient(dset.representable(figure_tree), dset.horn(figure_tree, "c"))
        assert quotient_colimit_check(q)
        assert k0(q).is_trivial()

    def test_collapse_root(self):
        q = dset.quotient(dset.representable(corolla(2)), dset.colour_subobject(corolla(2), "b"))
        assert str(k0(q)) == "Z"
        assert colimit_check(q)

    def test_collapse_boundary(self):
        q = dset.quotient(dset.representable(corolla(2)), dset.boundary(corolla(2)))
        assert k0(q).is_trivial()
        assert colimit_check(q)

    def test_union(self, z2_nerve):
        u = dset.disjoint_union([z2_nerve, dset.representable(corolla(2)), dset.empty()])
        assert union_colimit_check(u)
        assert str(k0(u)) == "Z^2 + Z/2"

    def test_attach(self, z2_nerve):
        (hm, *_) = horn_maps(z2_nerve, corolla(2), "b")
        cell = dset.attach_cell(z2_nerve, corolla(2), "b", horn_map_dendmap(z2_nerve, hm))
        assert colimit_check(cell)
        assert inclusion_is_k0_iso(cell)

    def test_attach_inner_horn(self):
        base = dset.i_shriek(dset.standard_simplex(1), "interval")
        maps = horn_maps(base, linear(2), "a1")
        assert maps
        for hm in maps:
            cell = dset.attach_cell(base, linear(2), "a1", horn_map_dendmap(base, hm))
            assert colimit_check(cell)
            assert inclusion_is_k0_iso(cell)

    def test_not_a_colimit(self):
        with pytest.raises(TypeError):
            colimit_check(dset.terminal())


class TestCyclicMaps:
    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_hom_count_matches_cocycles(self, m, z2_nerve, max2_nerve):
        for d in (z2_nerve, max2_nerve, dset.representable(corolla(2)), dset.i_shriek(dset.standard_simplex(1))):
            assert hom_count_to_cyclic(d, m) == cocycle_count(d, m)

    def test_too_many_generators(self, figure_tree):
        with pytest.raises(BoundError, match="too many"):
            cocycle_count(dset.representable(figure_tree), 2, limit=4)
