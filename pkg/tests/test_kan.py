"""Tests for horn maps, filler search and the bounded Kan checks."""
import pytest

from dendrokit import dset
from dendrokit.dset import check_naturality
from dendrokit.dset.pushout import attaching_window
from dendrokit.kan import (
    FULL,
    INNER,
    check_fully_kan,
    check_inner_kan,
    check_kan,
    fibrant_step,
    has_filler,
    horn_map_dendmap,
    horn_maps,
    horn_tasks,
    restrictions,
)
from dendrokit.smc import picard_sign_example
from dendrokit.tree import cnk, corolla, linear


def colour_of(x):
    """The colour of a nerve dendrex at a one-edge shape."""
    return x.payload[0][0][1]


class TestHornMaps:
    def test_root_horn_of_c2_into_z2(self, z2_nerve):
        maps = horn_maps(z2_nerve, corolla(2), "b")
        assert len(maps) == 4
        assert {tuple(colour_of(x) for _, x in hm.faces) for hm in maps} == {
            ("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")
        }

    @pytest.mark.parametrize("d", [dset.empty(), dset.terminal(), dset.representable(corolla(2))])
    def test_empty_horn_has_one_map(self, d):
        assert len(horn_maps(d, corolla(0), "b")) == 1

    def test_nothing_maps_into_empty(self):
        assert horn_maps(dset.empty(), corolla(2), "b") == []
        assert horn_maps(dset.empty(), cnk(2, 2), "bk") == []

    def test_maps_are_natural(self, z2_nerve):
        t = cnk(1, 2)
        for label in ("bk", "@bk", "@c"):
            for hm in horn_maps(z2_nerve, t, label):
                assert check_naturality(horn_map_dendmap(z2_nerve, hm), attaching_window(t)) is None

    def test_restrictions_of_a_dendrex_form_a_horn_map(self, sign_nerve):
        t = cnk(1, 2)
        maps = {tuple(x for _, x in hm.faces) for hm in horn_maps(sign_nerve, t, "bk")}
        for x in sign_nerve.dendrices(t):
            assert restrictions(sign_nerve, t, "bk", x) in maps

    def test_inner_horn_of_representable(self, figure_tree):
        rep = dset.representable(figure_tree)
        maps = horn_maps(rep, figure_tree, "c")
        assert len(maps) >= 1
        assert all(has_filler(rep, hm) is not None for hm in maps)


class TestFillers:
    def test_z2_root_horn(self, z2_nerve):
        (hm,) = [hm for hm in horn_maps(z2_nerve, corolla(2), "b") if all(colour_of(x) == "1" for _, x in hm.faces)]
        filler = has_filler(z2_nerve, hm)
        assert filler is not None
        assert dict(filler.payload[0])["b"] == "0"
        assert restrictions(z2_nerve, corolla(2), "b", filler) == tuple(x for _, x in hm.faces)

    def test_max_monoid_leaf_horn(self, max2_nerve):
        # the horn asks for x with max(x, 1) = 0; there is none
        unfilled = [
            hm
            for hm in horn_maps(max2_nerve, corolla(2), "a1")
            if colour_of(dict(hm.faces)["a2"]) == "1" and colour_of(dict(hm.faces)["b"]) == "0"
        ]
        assert len(unfilled) == 1
        assert has_filler(max2_nerve, unfilled[0]) is None

    def test_composite_edge(self):
        chain = dset.poset_nerve(["x", "y", "z"], [("x", "y"), ("y", "z"), ("x", "z")])
        x = dset.i_shriek(chain, "chain")
        maps = horn_maps(x, linear(2), "a1")
        assert maps
        for hm in maps:
            filler = has_filler(x, hm)
            assert filler is not None

    def test_filler_restricts_to_horn(self, sign_nerve):
        for hm in horn_maps(sign_nerve, cnk(2, 1), "bk"):
            filler = has_filler(sign_nerve, hm)
            assert filler is not None
            assert restrictions(sign_nerve, cnk(2, 1), "bk", filler) == tuple(x for _, x in hm.faces)


class TestKanChecks:
    def test_tasks(self):
        inner = horn_tasks(2, 2, INNER)
        full = horn_tasks(2, 2, FULL)
        assert set(inner) <= set(full)
        assert all(label in t.inner_edges for t, label in inner)

    def test_bounds_checked(self, z2_nerve):
        with pytest.raises(ValueError, match=">= 1"):
            check_kan(z2_nerve, 0, 2, INNER)

    @pytest.mark.parametrize("name", ["z2_nerve", "max2_nerve", "sign_nerve"])
    def test_nerves_are_inner_kan(self, name, request):
        assert check_inner_kan(request.getfixturevalue(name), 2, 2).passed

    def test_picard_nerves_are_fully_kan(self, z2_nerve, sign_nerve):
        assert check_fully_kan(z2_nerve, 2, 2).passed
        assert check_fully_kan(sign_nerve, 2, 2).passed

    def test_max_monoid_nerve_is_not_fully_kan(self, max2_nerve):
        report = check_fully_kan(max2_nerve, 1, 2)
        assert not report.passed
        assert report.counterexample is not None

    def test_extension_by_zero_is_not_fully_kan(self):
        x = dset.i_shriek(dset.standard_simplex(0), "pt")
        report = check_fully_kan(x, 1, 2)
        assert not report.passed
        assert report.counterexample.tree.max_arity != 1

    def test_empty_is_inner_kan_but_not_fully_kan(self):
        assert check_inner_kan(dset.empty(), 2, 2).passed
        report = check_fully_kan(dset.empty(), 1, 1)
        assert not report.passed
        assert report.counterexample.tree.max_arity == 0

    def test_workers_give_same_report(self, sign_nerve):
        one = check_kan(sign_nerve, 2, 2, FULL, workers=1)
        four = check_kan(sign_nerve, 2, 2, FULL, workers=4)
        assert [(t.tree, t.label, t.maps, t.fillers) for t in one.tallies] == [
            (t.tree, t.label, t.maps, t.fillers) for t in four.tallies
        ]

    def test_tallies_count_fillers(self, z2_nerve):
        report = check_fully_kan(z2_nerve, 1, 2)
        assert all(t.maps == t.fillers for t in report.tallies)


class TestFibrantStep:
    def test_fills_point_horns(self):
        x = dset.i_shriek(dset.standard_simplex(0), "pt")
        step = fibrant_step(x, 1, 2)
        # the nullary horn and the three horns of the binary corolla
        assert len(step.cells) == 4
        assert check_naturality(step.inclusion, attaching_window(corolla(2))) is None
        assert check_fully_kan(step, 1, 1).passed

    def test_nothing_to_fill(self, z2_nerve):
        step = fibrant_step(z2_nerve, 1, 2)
        assert step.cells == []
        assert step.dendrices(corolla(2)) == z2_nerve.dendrices(corolla(2))

    def test_k0_unchanged(self):
        from dendrokit.kzero import inclusion_is_k0_iso

        x = dset.i_shriek(dset.standard_simplex(1), "interval")
        assert inclusion_is_k0_iso(fibrant_step(x, 1, 2))

    def test_sign_groupoid_is_already_fibrant(self):
        assert fibrant_step(dset.nerve(picard_sign_example()), 1, 2).cells == []


@pytest.mark.slow
def test_whole_corpus_fully_kan_iff_picard():
    from dendrokit.smc import groupoid_corpus

    for p in groupoid_corpus(5):
        n = dset.nerve(p)
        assert check_inner_kan(n, 3, 3).passed, p.name
        assert check_fully_kan(n, 3, 3).passed == p.is_picard(), p.name
