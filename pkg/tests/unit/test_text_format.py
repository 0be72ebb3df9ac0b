"""Unit tests for the category and monoid-table text formats."""

import pytest

from frobenius_checker.core.builders import arrow, idempotent_monoid
from frobenius_checker.core.category import validate
from frobenius_checker.core.text_format import (
    load_category,
    load_monoid_table,
    parse_category,
    parse_monoid_table,
    serialize_category,
)
from frobenius_checker.exceptions import CategoryParseError, InvalidCategoryError

IDMON_TEXT = """\
# the monoid {1, e}
objects 1
mor 1 0 0
mor e 0 0
id 0 1
comp e e e   # ee = e
end
"""


class TestParseCategory:
    def test_parse_idempotent_monoid(self):
        cat = parse_category(IDMON_TEXT)
        assert cat == idempotent_monoid()

    def test_identity_composites_are_inferred(self):
        cat = parse_category(IDMON_TEXT)
        assert cat.compose(0, 1) == 1
        assert validate(cat).is_valid

    def test_round_trip_corpus(self, corpus):
        for name, cat in corpus.items():
            assert parse_category(serialize_category(cat, title=name)) == cat, name

    def test_serialize_omits_identity_composites(self):
        text = serialize_category(arrow())
        assert "comp" not in text
        assert text.endswith("end\n")

    @pytest.mark.parametrize(
        "text, line",
        [
            ("mor a 0 0\nend\n", 1),
            ("objects 1\nmor a 0 2\nend\n", 2),
            ("objects 1\nmor a 0 0\nmor a 0 0\nend\n", 3),
            ("objects 1\nmor a 0 0\nid 0 b\nend\n", 3),
            ("objects 1\nfoo\nend\n", 2),
            ("objects x\nend\n", 1),
            ("objects 1\nmor a 0 0\nid 0 a\nend\nmor b 0 0\n", 5),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(CategoryParseError) as info:
            parse_category(text)
        assert info.value.line == line
        assert str(info.value).startswith(f"line {line}:")

    def test_missing_end(self):
        with pytest.raises(CategoryParseError, match="missing 'end'"):
            parse_category("objects 1\nmor a 0 0\nid 0 a\n")

    def test_missing_identity(self):
        with pytest.raises(CategoryParseError, match="no identity"):
            parse_category("objects 1\nmor a 0 0\nend\n")

    def test_invalid_category_still_parses(self):
        cat = parse_category("objects 1\nmor 1 0 0\nmor a 0 0\nid 0 1\nend\n")
        assert validate(cat).kinds() == ["missing_composition"]

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "idmon.cat"
        path.write_text(IDMON_TEXT, encoding="utf-8")
        assert load_category(path) == idempotent_monoid()


class TestMonoidTable:
    @pytest.fixture
    def table_text(self):
        return "elements 1 e\n1 1 e\ne e e\n"

    def test_parse(self, table_text):
        assert parse_monoid_table(table_text) == idempotent_monoid()

    def test_load(self, tmp_path, table_text):
        path = tmp_path / "idmon.tbl"
        path.write_text(table_text, encoding="utf-8")
        assert load_monoid_table(path).n_morphisms == 2

    def test_needs_header(self):
        with pytest.raises(CategoryParseError):
            parse_monoid_table("1 1 e\n")

    def test_missing_row(self):
        with pytest.raises(CategoryParseError, match="missing rows"):
            parse_monoid_table("elements 1 e\n1 1 e\n")

    def test_not_a_monoid(self):
        with pytest.raises(InvalidCategoryError):
            parse_monoid_table("elements a b\na b b\nb b b\n")
