import pytest

from vbshadow import (DimensionMismatch, ParseError, format_birack, format_module, format_shadow,
                      parse_birack, parse_module, parse_shadow)
from conftest import read


def test_birack_round_trip(two, twisted3):
    for b in (two, twisted3):
        again = parse_birack(format_birack(b))
        assert format_birack(again) == format_birack(b)
    assert parse_birack(format_birack(twisted3)).twisted


def test_shadow_round_trip(two, checker):
    assert parse_shadow(format_shadow(checker), two).printed() == checker.printed()


def test_module_round_trip(z5_modules, two, checker, twisted_module):
    for spec in z5_modules.values():
        assert parse_module(format_module(spec), two, checker).key() == spec.key()
    again = parse_module(format_module(twisted_module), twisted_module.birack, twisted_module.shadow)
    assert again.key() == twisted_module.key()


def test_comments_ignored():
    b = parse_birack("# header comment\n" + read("two.birack") + "\n# trailing\n")
    assert b.n == 2


@pytest.mark.parametrize("text", ["", "shadow n=2\n", "birack n=2\nB1:\n1 x\n2 2\n", "birack\nB1:\n1\n",
                                  "1 1\nbirack n=1"])
def test_bad_birack_text(text):
    with pytest.raises((ParseError, DimensionMismatch)):
        parse_birack(text)


def test_missing_block():
    text = "\n".join(l for l in read("two.birack").splitlines() if not l.startswith("V"))
    with pytest.raises((ParseError, DimensionMismatch)):
        parse_birack(text)


def test_shadow_dimension_mismatch(two):
    with pytest.raises(DimensionMismatch):
        parse_shadow("shadow m=2 n=3\n1 1 1\n2 2 2\n", two)
    with pytest.raises(DimensionMismatch):
        parse_shadow("shadow m=3 n=2\n1 1\n2 2\n", two)


def test_module_dimension_mismatch(two, checker, twisted3):
    with pytest.raises(DimensionMismatch):
        parse_module(read("hopf.module").replace("m=2", "m=3"), two, checker)
    with pytest.raises(DimensionMismatch):
        parse_module(read("hopf.module").replace("q=5", "q=5 twisted"), two, checker)


def test_module_block_order(two, checker):
    text = read("hopf.module").replace("S:", "X:", 1)
    with pytest.raises(ParseError):
        parse_module(text, two, checker)
