"""Tests for finite monoids and permutative groupoids."""
import pytest

from dendrokit.models import GroupoidTable, load_document
from dendrokit.smc import (
    FiniteMonoid,
    GroupoidError,
    absorbing_clone_example,
    cyclic_group,
    enumerate_commutative_monoids,
    from_abelian_group,
    from_commutative_monoid,
    groupoid_corpus,
    groupoid_from_document,
    max_monoid,
    picard_sign_example,
    saturating_monoid,
)


class TestFiniteMonoid:
    @pytest.mark.parametrize("monoid", [cyclic_group(3), max_monoid(3), saturating_monoid(2)])
    def test_valid(self, monoid):
        assert monoid.validate() is None

    def test_missing_unit(self):
        m = FiniteMonoid(("0", "1"), "2", {})
        assert "not an element" in m.validate()

    def test_not_associative(self):
        # a rock-paper-scissors style table is commutative but not associative
        table = {("e", x): x for x in "eabc"} | {(x, "e"): x for x in "eabc"}
        for x, y, z in [("a", "b", "a"), ("b", "c", "b"), ("a", "c", "c")]:
            table[(x, y)] = table[(y, x)] = z
        for x in "abc":
            table[(x, x)] = x
        m = FiniteMonoid(tuple("eabc"), "e", table)
        assert "not associative" in m.validate()

    def test_not_commutative(self):
        # left-zero band with an adjoined unit
        elements = ("e", "a", "b")
        table = {(x, y): x if x != "e" else y for x in elements for y in elements}
        m = FiniteMonoid(elements, "e", table)
        assert "not commutative" in m.validate()
        assert m.validate(require_commutative=False) is None

    def test_groups(self):
        assert cyclic_group(4).is_group()
        assert not max_monoid(2).is_group()
        assert cyclic_group(5).inverse("2") == "3"


class TestEnumerate:
    @pytest.mark.parametrize("order,count", [(1, 1), (2, 2), (3, 5), (4, 19)])
    def test_isomorphism_classes(self, order, count):
        monoids = enumerate_commutative_monoids(order)
        assert len(monoids) == count
        assert all(m.validate() is None for m in monoids)

    def test_contains_known_monoids(self):
        codes = {tuple(sorted(m.table.items())) for m in enumerate_commutative_monoids(2)}
        assert tuple(sorted(cyclic_group(2).table.items())) in codes
        assert tuple(sorted(max_monoid(2).table.items())) in codes

    def test_empty_order(self):
        assert enumerate_commutative_monoids(0) == []


class TestPermutativeGroupoid:
    @pytest.mark.parametrize("p", groupoid_corpus(2), ids=lambda p: p.name)
    def test_corpus_is_valid(self, p):
        assert p.validate() is None

    def test_sign_groupoid(self):
        p = picard_sign_example()
        assert p.validate() is None
        assert p.is_picard()
        assert p.symmetry[("1", "1")] == "s0"
        assert p.inverse("s1") == "s1"

    def test_absorbing_clone(self):
        p = absorbing_clone_example()
        assert p.validate() is None
        pi0 = p.pi0_monoid()
        assert pi0.elements == ("0", "x")
        assert pi0("x", "x") == "x"
        assert not p.is_picard()

    def test_discrete(self, z2, max2):
        assert z2.is_picard()
        assert not max2.is_picard()
        assert z2.operations(["1", "1"], "0") == ["id0"]
        assert z2.operations([], "1") == []

    def test_from_abelian_group_needs_inverses(self):
        with pytest.raises(GroupoidError):
            from_abelian_group(max_monoid(2))

    def test_rejects_bad_monoid(self):
        with pytest.raises(GroupoidError, match="not a commutative monoid"):
            from_commutative_monoid(FiniteMonoid(("0",), "0", {}))

    def test_reorder_swaps(self):
        p = picard_sign_example()
        assert p.reorder(["1", "1"], [1, 0]) == "s0"
        assert p.reorder(["1", "1"], [0, 1]) == "id0"
        assert p.reorder(["1", "0", "1"], [2, 1, 0]) == "s0"

    def test_broken_symmetry(self):
        p = picard_sign_example()
        broken = type(p)(
            objects=p.objects,
            unit=p.unit,
            tensor=p.tensor,
            morphisms=p.morphisms,
            composition=p.composition,
            identities=p.identities,
            tensor_morphisms=p.tensor_morphisms,
            symmetry={**p.symmetry, ("0", "1"): "s1", ("1", "0"): "s1"},
        )
        assert broken.validate() is not None


class TestTableFiles:
    def test_discrete_file(self, data_dir):
        p = groupoid_from_document(load_document(data_dir / "z2.yaml", GroupoidTable))
        assert p.objects == ("0", "1")
        assert p.is_picard()

    def test_full_file(self, data_dir):
        p = groupoid_from_document(load_document(data_dir / "sign.yaml", GroupoidTable))
        assert p.name == "sign"
        assert p.symmetry[("1", "1")] == "s0"

    def test_invalid_table(self):
        doc = GroupoidTable(
            name="bad",
            objects=["0", "1"],
            unit="0",
            tensor=[["0", "0", "0"], ["0", "1", "1"], ["1", "0", "1"], ["1", "1", "1"]],
            morphisms=[["id0", "0", "0"], ["id1", "1", "1"]],
            composition=[["id0", "id0", "id0"]],
            identities={"0": "id0", "1": "id1"},
            tensor_morphisms=[],
            symmetry=[],
        )
        with pytest.raises(GroupoidError, match="bad"):
            groupoid_from_document(doc)

    def test_partial_table_is_rejected(self):
        with pytest.raises(ValueError, match="partial"):
            GroupoidTable(name="t", objects=["0", "1"], unit="0", tensor=[["0", "0", "0"]], discrete=True)
