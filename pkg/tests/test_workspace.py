import pytest

from smlab.catalog import default_catalog
from smlab.errors import InputError, WorkspaceSyntaxError
from smlab.workspace import load_workspace, parse_workspace

SAMPLE = """\
# comment line
ring R = zn 12
module M = cyclic 4 over R
ring A = idealization R M
ideal I = gen R 2
submodule N = gen M 2   # trailing comment
module Z12 = cyclic 12 over Z
ring S = zn 4
hom f = R -> S : reduce
module P = product M M
module D = dup M I
"""


def test_three_declarations():
    spec = parse_workspace("ring R = zn 12\nmodule M = cyclic 4 over R\nring A = idealization R M")
    assert len(spec.declarations) == 3
    assert load_workspace(spec.text())["A"].order == 48


def test_empty_workspace():
    assert parse_workspace("").declarations == ()
    assert load_workspace("").objects == {}


def test_round_trip():
    spec = parse_workspace(SAMPLE)
    again = parse_workspace(spec.text())
    assert [(d.kind, d.name, d.args) for d in again.declarations] == [(d.kind, d.name, d.args) for d in spec.declarations]
    assert again.text() == spec.text()


def test_catalog_round_trip():
    ws = default_catalog("minimal").workspace
    text = ws.spec.text()
    assert parse_workspace(text, validate=False).text() == text


def test_semantic_error():
    with pytest.raises(InputError, match="5 does not divide 12"):
        parse_workspace("ring R = zn 12\nmodule M = cyclic 5 over R")


@pytest.mark.parametrize("text,line", [
    ("ring R zn 12", 1),
    ("ring R = zn 12\nmodule M = cyclic four over R", 2),
    ("ring R = zn 12\nring R = zn 6", 2),
    ("widget W = zn 3", 1),
    ("ring R = zn 12\nmodule M = cyclic 4 over Q", 2),
])
def test_errors_have_line_numbers(text, line):
    with pytest.raises(InputError) as ei:
        parse_workspace(text)
    assert f"line {line}" in str(ei.value)


def test_syntax_error_has_column():
    with pytest.raises(WorkspaceSyntaxError) as ei:
        parse_workspace("ring R = zn twelve")
    assert ei.value.line == 1 and ei.value.column > 1


def test_bad_reduction():
    with pytest.raises(InputError, match="does not divide"):
        load_workspace("ring R = zn 12\nring S = zn 5\nhom f = R -> S : reduce")


def test_fragment_replays():
    ws = load_workspace(SAMPLE)
    frag = ws.fragment(["N"])
    ws2 = load_workspace(frag)
    assert ws2["N"].members == ws["N"].members
    assert set(ws2.objects) == {"R", "M", "N"}
