import pytest

import symindiv as si


def test_prefix_of_rado():
    assert si.eval("(rado)").prefix(3) == "size 3\nrel E 2\n0 1\n1 2\n"


def test_canonical_and_parse_errors():
    assert si.canonical(" (union (rado)\n(finite-graph 2)) ") == "(union (rado) (finite-graph 2))"
    with pytest.raises(si.InvalidInput):
        si.canonical("(gammak 0)")
    with pytest.raises(si.InvalidInput, match="byte 5"):
        si.canonical("(rado")


def test_structure_queries():
    g = si.eval("(endow (gammastar))")
    assert g.size is None
    assert g.symbols == [("E", 2), ("<e", 2)]
    assert g.holds("E", [3, 4])
    assert g.holds("<e", [3, 4]) and not g.holds("<e", [4, 3])
    assert si.eval("(finite-order 3)").size == 3


def test_even_triangle_needs_backtracking():
    tri = si.eval("(finite-graph 3 (0 1) (1 2) (0 2))")
    colour, pairs = si.monochromatic_copy(si.eval("(rado)"), "parity", tri, color=si.RED, steps=3)
    assert colour == si.RED
    assert [t for _, t in pairs] == [2, 4, 20]
    with pytest.raises(si.Exhausted) as info:
        si.monochromatic_copy(si.eval("(rado)"), "parity", tri, color=si.RED, steps=3, backtrack=0)
    assert info.value.stuck_index == 1


def test_no_blue_rado_in_gammastar():
    with pytest.raises(si.Exhausted):
        si.monochromatic_copy(si.eval("(gammastar)"), "gammastar-part", si.eval("(rado)"), color=si.BLUE, steps=8)


def test_back_and_forth_and_signatures():
    pairs = si.back_and_forth(si.eval("(rationals)"), si.eval("(lexq (finite-order 2))"), steps=20, budget=4096)
    assert len(pairs) == 20
    with pytest.raises(si.SignatureMismatch):
        si.greedy_embedding(si.eval("(rado)"), si.eval("(rationals)"))


def test_obstruction_certificates():
    swap, fixed = si.gamma_star_obstruction(2, 12)
    assert swap["swap"] == [4, 5] and swap["passed"]
    assert fixed["pair"] == [1, 3] and fixed["passed"]


def test_decoders():
    graph, cert = si.decode_graph("(encode-graph (finite-graph 3 (0 1) (1 2) (0 2)))", 64)
    assert graph == "(finite-graph 3 (0 1) (1 2) (0 2))"
    assert cert["cross_edges"] == 0
    order, indices = si.decode_order("(encode-order (finite-order 3))", 512)
    assert order == "(finite-order 3)" and len(indices) == 3
    with pytest.raises(si.Exhausted):
        si.decode_order("(rationals)", 512)
    with pytest.raises(si.NotAnEncoding):
        si.decode_graph("(rado)")


def test_transfer_is_claimed():
    report = si.transfer_rado_parity(8)
    assert report["symmetric_status"] == "claimed"
    assert report["monochromatic"] and report["composition_verified"]


def test_reduct_demo_report_is_stable():
    a = si.reduct_demo(64, 0, 1 << 16)
    b = si.reduct_demo(64, 0, 1 << 16)
    assert a["passed"] and a["hash"] == b["hash"]
    assert [s["status"] for s in a["stages"]] == ["passed"] * 5


def test_colorings():
    assert si.color_of("gammastar-part", 2) == si.BLUE
    assert si.color_of("gammastar-part", 3) == si.RED
    assert si.color_of("mod:3:1", 1) == 2
