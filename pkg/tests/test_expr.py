"""Tests for the tree grammar errors and the construction expression language."""
import pytest

from dendrokit import dset
from dendrokit.expr import ParseError, parse_expression
from dendrokit.kzero import k0
from dendrokit.tree import cnk, corolla, eta, parse_tree


class TestTreeErrors:
    @pytest.mark.parametrize(
        "text,position",
        [
            ("e[c[a,b],d", 10),
            ("e[c[a,b],d]]", 11),
            ("a[b,b]", 4),
            ("[a]", 0),
            ("C(x)", 2),
        ],
    )
    def test_positions(self, text, position):
        with pytest.raises(ParseError) as exc:
            parse_tree(text)
        assert exc.value.position == position
        assert f"at position {position}" in str(exc.value)

    def test_parse_error_is_a_value_error(self):
        with pytest.raises(ValueError):
            parse_tree("")


class TestExpressions:
    def test_representable(self, figure_tree):
        d = parse_expression("repr(e[c[a,b],d])")
        assert isinstance(d, dset.Representable)
        assert d.tree == figure_tree

    def test_shorthands(self):
        assert parse_expression("repr(C(3))").tree == corolla(3)
        assert parse_expression("horn(C(2,2), bk)").tree == cnk(2, 2)

    def test_atoms(self):
        assert isinstance(parse_expression("empty"), dset.Empty)
        assert isinstance(parse_expression("terminal"), dset.Terminal)
        assert parse_expression("eta").tree == eta()

    def test_outer_face_labels(self):
        h = parse_expression("horn(C(2,2), @c)")
        assert h.label == "@c"

    def test_subobjects(self):
        assert parse_expression("boundary(C(2))").description == "boundary(b[a1,a2])"
        assert parse_expression("core(e[c[a,b],d])").description == "core(e[c[a,b],d])"
        assert parse_expression("face(e[c[a,b],d], c)").description == "face(e[c[a,b],d], c)"
        assert parse_expression("edge(C(2), b)").description == "edge(b[a1,a2], b)"

    def test_union(self):
        u = parse_expression("union(repr(C(1)), terminal, empty)")
        assert len(u.summands) == 3

    def test_whitespace(self):
        assert parse_expression("  horn( C(2,2) ,  bk )  ").label == "bk"

    def test_quotient(self):
        q = parse_expression("quotient(repr(C(2)), edge(C(2), b))")
        assert str(k0(q)) == "Z"

    def test_nested_attach(self, data_dir):
        text = f"attach(attach(empty, C(0), b, {data_dir}/first_map.yaml), C(0), b, {data_dir}/first_map.yaml)"
        d = parse_expression(text)
        assert d.depth == 2
        assert len(d.dendrices(corolla(0))) == 2


class TestFileForms:
    def test_nerve_file(self, data_dir):
        d = parse_expression("nerve(z2.yaml)", base_dir=data_dir)
        assert str(k0(d)) == "Z/2"

    def test_sign_file(self, data_dir):
        d = parse_expression(f"nerve({data_dir / 'sign.yaml'})")
        assert d.groupoid.is_picard()

    def test_simplicial_files(self, data_dir):
        assert str(k0(parse_expression("simplicial(pt.yaml)", base_dir=data_dir))) == "Z"
        assert str(k0(parse_expression("simplicial(interval.yaml)", base_dir=data_dir))) == "Z"
        chain = parse_expression("simplicial(chain.yaml)", base_dir=data_dir)
        assert chain.description == "simplicial(chain)"

    def test_attach_file(self, data_dir):
        d = parse_expression("attach(nerve(z2.yaml), C(2), b, first_map.yaml)", base_dir=data_dir)
        assert len(d.dendrices(eta())) == 3

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            parse_expression("nerve(nowhere.yaml)", base_dir=tmp_path)

    def test_horn_map_out_of_range(self, tmp_path, data_dir):
        (tmp_path / "far.yaml").write_text("horn_map: 7\n")
        with pytest.raises(ParseError, match="only 4 exist"):
            parse_expression(f"attach(nerve({data_dir}/z2.yaml), C(2), b, far.yaml)", base_dir=tmp_path)

    def test_attach_label_error_points_at_label(self, data_dir):
        with pytest.raises(ParseError, match="not a horn label") as exc:
            parse_expression("attach(empty, C(2), zz, first_map.yaml)", base_dir=data_dir)
        assert exc.value.position == 20

    def test_invalid_table(self, tmp_path):
        (tmp_path / "bad.yaml").write_text("name: bad\nobjects: ['0']\nunit: '1'\ntensor: []\ndiscrete: true\n")
        with pytest.raises(ValueError, match="unit"):
            parse_expression("nerve(bad.yaml)", base_dir=tmp_path)


class TestExpressionErrors:
    @pytest.mark.parametrize(
        "text,position",
        [
            ("frob(C(2))", 0),
            ("repr(C(2)", 9),
            ("repr(C(2)) x", 11),
            ("horn(C(2), zz)", 0),
            ("union(repr(C(1)) terminal)", 17),
            ("quotient(repr(C(2)))", 19),
        ],
    )
    def test_positions(self, text, position):
        with pytest.raises(ParseError) as exc:
            parse_expression(text)
        assert exc.value.position == position

    def test_horn_label_must_exist(self):
        with pytest.raises(ParseError, match="not a horn label"):
            parse_expression("horn(e[c[a,b],d], a)")
