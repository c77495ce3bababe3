import pathlib

import pytest

pydga = pytest.importorskip("pydga")

DATA = pathlib.Path(__file__).resolve().parents[2] / "examples_data"


def read(name):
    return (DATA / name).read_text()


def test_color3_on_triangle_and_k4():
    a = pydga.Adga.builtin("color3")
    assert a.automaton_class == "NDGA"
    assert a.accepts(a.parse_graph(read("triangle.graph")))
    assert not a.accepts(a.parse_graph(read("k4.graph")))


def test_text_round_trip():
    a = pydga.Adga.builtin("order_ge:3")
    assert pydga.Adga.parse(a.to_text()).to_text() == a.to_text()


def test_complement_flips_acceptance():
    a = pydga.Adga.builtin("color3")
    c = pydga.complement(a)
    for name in ("triangle.graph", "k4.graph"):
        g = a.parse_graph(read(name))
        assert c.accepts(g) != a.accepts(g)


def test_mso_compile_and_eval_agree():
    text = read("color3.mso")
    compiled = pydga.compile_mso(text)
    for name in ("triangle.graph", "k4.graph"):
        graph = read(name)
        assert compiled.accepts(compiled.parse_graph(graph)) == pydga.eval_mso(text, graph)


def test_smallest_member():
    member, checked, exact = pydga.find_member(pydga.Adga.builtin("order_ge:3"), cap=5)
    assert member is not None and member.node_count == 3
    assert checked == 3
    with pytest.raises(pydga.ClassError):
        pydga.find_member(pydga.Adga.builtin("order_le:2"))


def test_floodmax_simulation():
    p = pydga.Program.parse(read("floodmax.dpl"))
    vals, done = p.run(p.parse_graph(read("floodmax_path.graph")), fuel=10)
    assert done
    assert [v[0] for v in vals] == [2, 2, 2]


def test_strengthened_invariant_verifies():
    p = pydga.Program.parse(read("floodmax_strengthened.dpl"))
    ok, report = p.verify(cap=3)
    assert ok
    assert report.count("HOLDS") == 3


def test_parse_errors_raise():
    with pytest.raises(pydga.ParseError):
        pydga.Program.parse("program p\ndomain 1\nvars m\n")
