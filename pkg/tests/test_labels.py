"""Labels, spaces and rational text encoding."""

from fractions import Fraction

import pytest

from grc.errors import InvalidSpace, ParseError
from grc.labels import (
    UNIT_SPACE,
    format_label,
    label_key,
    make_space,
    micro_label,
    parse_label,
    product_space,
)
from grc.rational import format_rational, parse_rational


class TestLabels:
    def test_pair_text_form(self):
        assert format_label(("a", ("b", "c"))) == "(a,(b,c))"
        assert parse_label("(a,(b,c))") == ("a", ("b", "c"))
        assert parse_label(" x~1 ") == "x~1"

    @pytest.mark.parametrize("text", ["", "(a,b", "(a b)", "a)", "(a,b)c"])
    def test_malformed(self, text):
        with pytest.raises(InvalidSpace):
            parse_label(text)

    def test_strings_sort_before_pairs(self):
        labels = [("a", "a"), "b", ("a", "b"), "a"]
        assert sorted(labels, key=label_key) == ["a", "b", ("a", "a"), ("a", "b")]

    def test_space_checks(self):
        assert make_space(["a", "b"]) == ("a", "b")
        with pytest.raises(InvalidSpace):
            make_space([])
        with pytest.raises(InvalidSpace):
            make_space(["a", "a"])

    def test_product_space_order(self):
        assert product_space(("a", "b"), ("u",)) == (("a", "u"), ("b", "u"))
        assert product_space(UNIT_SPACE, UNIT_SPACE) == (("*", "*"),)

    def test_micro_label(self):
        assert micro_label("0", 0) == "0"
        assert micro_label("0", 3) == "0~3"
        assert micro_label(("a", "b"), 1) == ("a~1", "b")
        # index 0 is always the least member of its block
        assert min([micro_label("x", i) for i in range(4)], key=label_key) == "x"


class TestRational:
    @pytest.mark.parametrize("text,value", [
        ("1/2", Fraction(1, 2)),
        ("2/4", Fraction(1, 2)),
        ("1", Fraction(1)),
        ("0", Fraction(0)),
        (1, Fraction(1)),
    ])
    def test_parse(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("bad", ["0.5", "1/0", "a/b", "1e3", 0.5, True, None])
    def test_rejects_inexact_or_malformed(self, bad):
        with pytest.raises(ParseError):
            parse_rational(bad)

    def test_format(self):
        assert format_rational(Fraction(3, 6)) == "1/2"
        assert format_rational(Fraction(2)) == "2"
