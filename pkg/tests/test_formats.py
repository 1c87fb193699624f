import pytest
from hypothesis import given, settings

from constraint_minors import formats
from constraint_minors.errors import GraphInputError

from strategies import constraint_graphs

TRIANGLE_TEXT = """# a triangle with two X edges
3 3
0 1 1
1 2 1   # second X edge
2 0 0
"""


def test_parse_text():
    g = formats.parse_text(TRIANGLE_TEXT)
    assert g.n == 3 and g.m == 3 and g.x == {0, 1}
    assert g.endpoints[2] == (0, 2)


@pytest.mark.parametrize("text, line, fragment", [
    ("", 1, "empty"),
    ("3 2\n0 1 0\n", 2, "announces 2"),
    ("3 2\n0 1 0\n1 0 0\n", 3, "duplicate"),
    ("3 1\n0 0 0\n", 2, "loop"),
    ("3 1\n0 7 0\n", 2, "outside"),
    ("3 1\n0 1 2\n", 2, "X flag"),
    ("3 1\n0 one 0\n", 2, "non-integer"),
    ("3\n", 1, "expected 2"),
])
def test_parse_text_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(GraphInputError) as info:
        formats.parse_text(text)
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"line {line}:")


def test_parse_json():
    g = formats.parse_json('{"n": 3, "edges": [[0, 1], [1, 2], [2, 0]], "X": [0, 1]}')
    assert g == formats.parse_text(TRIANGLE_TEXT)


@pytest.mark.parametrize("text", ["{", "[1, 2]", '{"n": 3}', '{"n": 3, "edges": [[0]]}',
                                  '{"n": 3, "edges": [[0, 1]], "X": [4]}'])
def test_parse_json_errors(text):
    with pytest.raises(GraphInputError):
        formats.parse_json(text)


@given(constraint_graphs(min_n=1, max_n=7, min_m=0))
@settings(max_examples=100, deadline=None)
def test_round_trips(g):
    assert formats.parse_text(formats.dump_text(g)) == g
    assert formats.parse_json(formats.dump_json(g)) == g


def test_read_graph_detects_json_suffix(tmp_path):
    path = tmp_path / "g.json"
    path.write_text('{"n": 2, "edges": [[0, 1]], "X": [0]}')
    assert formats.read_graph(path).x == {0}
    text = tmp_path / "g.txt"
    text.write_text("2 1\n0 1 1\n")
    assert formats.read_graph(text) == formats.read_graph(path)
    assert formats.read_graph(path, "json") == formats.read_graph(text, "text")


def test_read_graph_missing_file(tmp_path):
    with pytest.raises(GraphInputError):
        formats.read_graph(tmp_path / "nope.txt")
