import pytest
from hypothesis import given, strategies as st

from rmcs import toy
from rmcs.cxt import CxtFormatError, format_cxt, parse_cxt, read_cxt, write_cxt
from rmcs.fca import FormalContext

TABLE2_CXT = """\
B
toy classification context
8
4

1
2
3
4
5
6
7
8
cl1
cl2
cl3
cl4
X.XX
.XX.
X..X
.XX.
XX..
XX.X
.X.X
.XXX
"""


def test_write_table2():
    assert format_cxt(toy.classification_context()) == TABLE2_CXT


def test_read_table2():
    ctx = parse_cxt(TABLE2_CXT)
    assert ctx == toy.classification_context()
    assert ctx.attribute_names == ("cl1", "cl2", "cl3", "cl4")


def test_normalized_round_trip():
    assert format_cxt(parse_cxt(TABLE2_CXT)) == TABLE2_CXT


def test_blank_line_after_counts_is_optional():
    text = "B\n\n2\n1\na\nb\nm\nX\n.\n"
    ctx = parse_cxt(text)
    assert ctx.to_matrix() == [[True], [False]]
    assert format_cxt(ctx) == "B\n\n2\n1\n\na\nb\nm\nX\n.\n"


def test_lowercase_x_accepted():
    assert parse_cxt("B\n\n1\n2\n\ng\na\nb\nx.\n").to_matrix() == [[True, False]]


@pytest.mark.parametrize("text", [
    "",
    "A\n\n1\n1\n\ng\nm\nX\n",
    "B\n\none\n1\n\ng\nm\nX\n",
    "B\n\n1\n2\n\ng\na\nb\nX\n",
    "B\n\n1\n1\n\ng\nm\nY\n",
    "B\n\n2\n1\n\ng\nh\nm\nX\n",
    "B\n\n1\n1\n\ng\nm\nX\nextra\n",
])
def test_malformed_files(text):
    with pytest.raises(CxtFormatError):
        parse_cxt(text)


@given(st.integers(1, 6).flatmap(lambda m: st.lists(
    st.lists(st.booleans(), min_size=m, max_size=m), min_size=1, max_size=8)))
def test_round_trip_random(mat):
    ctx = FormalContext.from_matrix(mat, name="r")
    assert parse_cxt(format_cxt(ctx)) == ctx


def test_file_helpers(tmp_path):
    path = tmp_path / "t.cxt"
    write_cxt(toy.classification_context(), path)
    assert read_cxt(path) == toy.classification_context()
