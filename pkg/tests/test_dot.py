from findual.dot import export_dot, point_names
from findual.fixtures import B2, CH2, P3
from findual.functors import spectrum


def edges(text):
    return [l for l in text.splitlines() if "->" in l]


def test_chain_and_square():
    assert len(edges(export_dot(CH2))) == 1
    out = export_dot(B2)
    assert len(edges(out)) == 4 and "rankdir=BT" in out
    assert out.startswith("digraph order {") and out.rstrip().endswith("}")


def test_space_styling():
    out = export_dot(P3)
    assert out.count("doublecircle") == 1
    assert out.count("lightgrey") == 2


def test_dual_pair():
    out = export_dot(B2, "dual-pair")
    assert "cluster_algebra" in out and "cluster_space" in out
    for name in ("↑a", "↑b", '"M"'):
        assert name in out
    names = point_names(B2, spectrum(B2))
    assert sorted(names.values()) == ["M", "↑a", "↑b"]


def test_label_escaping():
    from findual.order import FinitePoset

    P = FinitePoset.from_pairs(['say "hi"', "x"], [])
    assert '\\"hi\\"' in export_dot(P)
