import pytest

from multigerm.germfile import GermFileError, read_germ_file, read_germ_text

from conftest import GERMS, bigerm


def test_bigerm_file_matches_builder():
    gf = read_germ_file(GERMS / "bigerm.germ")
    f, g = gf.germ(), bigerm()
    assert f.target == g.target
    assert [b.coords for b in f.branches] == [b.coords for b in g.branches]
    assert [b.label for b in f.branches] == ["f1", "f2"]
    assert set(gf.ideals) == {"C", "D"} and set(gf.matrices) == {"M"}
    assert len(gf.matrices["M"]) == 3 and len(gf.matrices["M"][0]) == 2


def test_comments_and_layout():
    gf = read_germ_text("# header\ntarget X Y; # trailing\n\nbranch a source u :\n  u^2,\n  u^3 ;\n")
    (b,) = gf.germ().branches
    assert [str(c) for c in b.coords] == ["u^2", "u^3"]


def test_ideal_statement():
    gf = read_germ_text("ring R x y; ideal I in R : x^2, x*y;")
    assert [str(g) for g in gf.ideals["I"].gens] == ["x^2", "x*y"]


@pytest.mark.parametrize(
    "text,line,col,fragment",
    [
        ("", 1, 1, "empty input"),
        ("# only a comment\n", 1, 1, "empty input"),
        ("target X Y", 1, 1, "missing ';'"),
        ("target X Y;\nbranch a source u : u, 2*w;", 2, 26, "unknown variable 'w'"),
        ("target X Y;\nbranch a source u : u, u^;", 2, 26, ""),
        ("target X Y;\nbogus thing;", 2, 1, "unknown statement"),
        ("branch a source u : u, u;", 1, 1, "branch before target"),
        ("target X X;", 1, 10, "repeated"),
        ("target X Y;\nbranch a source u v : u, v;", 2, 1, "target has 2 variables"),
        ("target X Y;\nbranch a source u : 1 + u, u;", 2, 1, "does not vanish"),
        ("ring R x; ideal I in S : x;", 1, 22, "unknown ring"),
        ("ring R x y; matrix M in R : [x, y], [x];", 1, 13, "different lengths"),
        ("ring R x y; matrix M in R : x, y;", 1, 28, "rows are written"),
        ("target X Y;\ntarget X Y;", 2, 1, "second target"),
    ],
)
def test_errors_carry_position(text, line, col, fragment):
    with pytest.raises(GermFileError) as e:
        read_germ_text(text).germ()
    assert (e.value.line, e.value.col) == (line, col)
    assert fragment in str(e.value)


def test_germ_needs_target():
    with pytest.raises(GermFileError):
        read_germ_text("ring R x;").germ()
