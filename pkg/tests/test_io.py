import io
from fractions import Fraction

import pytest

from rcsp import Instance, InstanceFormatError, Mode, desk_suite, dump, load, parse_instance, serialize_instance

from conftest import chain3, diamond

DIAMOND_TEXT = """rcsp 1
4 5 1 final nowait
1 4
15
1 2 1 10
1 3 10 1
2 4 1 10
3 4 10 1
2 3 1 1
"""


def test_parse_diamond():
    inst = parse_instance(DIAMOND_TEXT)
    assert (inst.n, inst.m, inst.resources) == (4, 5, 1)
    assert inst == diamond(15)
    assert parse_instance(io.StringIO(DIAMOND_TEXT)) == inst


def test_roundtrip_small():
    for inst in (diamond(15), chain3()):
        assert parse_instance(serialize_instance(inst)) == inst


def test_zero_resources_have_no_window_columns():
    inst = Instance(3, [(1, 2, 1, ()), (2, 3, 2, ())], 0, 1, 3, mode=Mode.WINDOWS)
    text = serialize_instance(inst)
    assert [line for line in text.splitlines() if line.strip()][3:] == ["1 2 1", "2 3 2"]
    assert parse_instance(text) == inst


def test_rational_values_roundtrip():
    inst = Instance(2, [(1, 2, Fraction(7, 2), (Fraction(1, 3),))], 1, 1, 2, budget=(1,))
    text = serialize_instance(inst)
    assert "3.5" in text and "1/3" in text
    assert parse_instance(text) == inst


@pytest.mark.parametrize("text, message", [
    ("4 5 1 final nowait\n", "magic"),
    ("rcsp 1\n4 5 final\n", "malformed header"),
    (DIAMOND_TEXT.replace("3 4 10 1", "3 9 10 1"), "dangling node id"),
    (DIAMOND_TEXT.replace("1 2 1 10", "1 2 1 -1"), "negative consumption"),
    (DIAMOND_TEXT.replace("4 5 1", "4 3 1"), "arc count mismatch"),
    (DIAMOND_TEXT + "1 4 1 1\n", "arc count mismatch"),
])
def test_parse_errors(text, message):
    with pytest.raises(InstanceFormatError, match=message) as info:
        parse_instance(text)
    assert info.value.line is not None


def test_window_error_reports_line():
    text = "rcsp 1\n2 1 1 windows nowait\n1 2\n0 0\n5 4\n1 2 1 1\n"
    with pytest.raises(InstanceFormatError, match="a > b") as info:
        parse_instance(text)
    assert info.value.line == 5


def test_comments_and_blank_lines():
    text = "# header\n" + DIAMOND_TEXT.replace("1 4\n", "1 4   # s t\n\n")
    assert parse_instance(text) == diamond(15)


def test_load_dump(tmp_path):
    f = tmp_path / "x.rcsp"
    dump(diamond(15), f)
    assert load(f) == diamond(15)


def test_roundtrip_generated():
    for inst in desk_suite(300, seed=5, max_paths=10**6):
        assert parse_instance(serialize_instance(inst)) == inst
