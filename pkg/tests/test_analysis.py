from itertools import combinations

import networkx as nx
import pytest

from hamtri.analysis import (
    contract_edge,
    contract_interior,
    cycles_of_length,
    degree4_min_distance,
    find_diamonds,
    has_separating_triangle,
    is_k_connected,
    load_patterns,
    minimum_vertex_cut,
    parse_patterns,
    separating_cycle,
    separating_cycles,
    vertex_connectivity,
)
from hamtri.embed import canonical_form, from_rotation_system
from hamtri.errors import (
    EmptyInteriorError,
    FixtureInvalidError,
    FixtureMissingError,
    NotAnEdgeError,
)
from hamtri.gen import (
    GenerationBudget,
    double_wheel,
    generate_all,
    icosahedron,
    octahedron,
    stack_vertex,
    tetrahedron,
)

import oracles


def stacked5():
    return stack_vertex(tetrahedron(), 0)


def test_connectivity_examples():
    assert vertex_connectivity(tetrahedron()) == 3
    assert vertex_connectivity(stacked5()) == 3
    assert vertex_connectivity(octahedron()) == 4
    assert vertex_connectivity(icosahedron()) == 5


def test_octahedron_has_no_small_cut():
    g = octahedron()
    for size in (1, 2, 3):
        assert oracles.separating_subsets(g, size) == []
    assert minimum_vertex_cut(g) is not None and len(minimum_vertex_cut(g)) == 4


def test_connectivity_matches_networkx_on_corpus():
    for g in generate_all(GenerationBudget(n_max=9)):
        assert vertex_connectivity(g) == oracles.connectivity(g)


def test_minimum_cut_separates():
    g = stack_vertex(octahedron(), 3)
    cut = minimum_vertex_cut(g)
    assert len(cut) == 3
    h = oracles.to_nx(g)
    h.remove_nodes_from(cut)
    assert not nx.is_connected(h)


def test_separating_triangles():
    assert separating_cycles(octahedron(), 3) == []
    s = separating_cycles(stacked5(), 3)
    assert len(s) == 1
    assert set(s[0].cycle) == set(stacked5().faces[0].vertices) or len(s[0].side_a) + len(s[0].side_b) == 2


def test_double_wheel_five_separating_four_cycles():
    g = double_wheel(5)
    s = separating_cycles(g, 4)
    assert len(s) == 5
    for c in s:
        apex = [v for v in c.cycle if v >= 5]
        assert sorted(apex) == [5, 6]
    assert {frozenset(c.cycle) for c in s} == oracles.separating_cycle_sets(g, 4)


def test_separating_cycles_match_oracle_on_corpus():
    for g in generate_all(GenerationBudget(n_max=8)):
        for k in (3, 4, 5):
            got = {frozenset(c.cycle) for c in separating_cycles(g, k)}
            assert got == oracles.separating_cycle_sets(g, k)


def test_has_separating_triangle_iff_connectivity_three():
    for g in generate_all(GenerationBudget(n_max=9, n_min=5)):
        assert has_separating_triangle(g) == (vertex_connectivity(g) == 3)


def test_cycles_of_length_counts():
    # K4 has 4 triangles and 3 four-cycles
    assert len(list(cycles_of_length(tetrahedron(), 3))) == 4
    assert len(list(cycles_of_length(tetrahedron(), 4))) == 3


def test_separating_cycle_sides_partition():
    g = double_wheel(6)
    sc = separating_cycle(g, (6, 1, 7, 4))
    assert sc is not None
    assert sc.side_a | sc.side_b == {0, 2, 3, 5}
    assert not sc.side_a & sc.side_b
    assert separating_cycle(g, (6, 0, 1)) is None


def test_contract_interior_double_wheel():
    g = double_wheel(5)
    # a one-vertex side is replaced by one vertex: same graph back
    same = contract_interior(g, (5, 1, 6, 3), side=2)
    assert canonical_form(same.graph) == canonical_form(g)
    assert same.vmap[2] == same.new_vertex
    # the two-vertex side {0, 4} collapses to the octahedron
    res = contract_interior(g, (5, 1, 6, 3), side=0)
    assert res.graph.n == 6
    assert canonical_form(res.graph) == canonical_form(double_wheel(4))
    assert res.vmap[0] == res.vmap[4] == res.new_vertex
    assert res.four_connected is True


def test_contract_interior_of_separating_cycle_object():
    g = double_wheel(6)
    sc = separating_cycle(g, (6, 1, 7, 4))
    for side in ("a", "b"):
        res = contract_interior(g, sc, side)
        assert res.graph.n == 8 - 2 + 1


def test_contract_interior_empty():
    g = octahedron()
    f = g.faces[0].vertices
    with pytest.raises(EmptyInteriorError):
        contract_interior(g, f, side="right")


def test_contract_edge_octahedron():
    g = octahedron()
    res = contract_edge(g, g.edges[0])
    assert res.graph.n == 5
    assert canonical_form(res.graph) == canonical_form(stacked5())


def test_contract_edge_k4_gives_triangle():
    res = contract_edge(tetrahedron(), (0, 1))
    assert (res.graph.n, res.graph.num_edges) == (3, 3)


def test_contract_edge_not_an_edge():
    with pytest.raises(NotAnEdgeError):
        contract_edge(octahedron(), (0, 2))


def test_degree4_distance():
    assert degree4_min_distance(octahedron()) == 1
    assert degree4_min_distance(icosahedron()) == float("inf")
    assert degree4_min_distance(double_wheel(6)) == 1
    for g in generate_all(GenerationBudget(n_max=10, connectivity=4)):
        assert degree4_min_distance(g) == oracles.min_degree4_distance(g)


def test_find_diamonds_on_d4_pattern_itself():
    p = load_patterns()["d4"]
    h = nx.Graph(p.edges)
    ok, emb = nx.check_planarity(h)
    g = from_rotation_system([list(emb.neighbors_cw_order(v)) for v in range(p.n)])
    matches = find_diamonds(g, "d4")
    assert len(matches) == 1
    assert matches[0].crucial == frozenset({0, 4})


def test_find_diamonds_small_graph():
    assert find_diamonds(tetrahedron(), "d6") == []


def test_find_diamonds_match_brute_force_n9():
    pats = load_patterns()
    for g in generate_all(GenerationBudget(n_max=9, n_min=9, connectivity=4)):
        for name in ("d4", "d6"):
            p = pats[name]
            got = {
                frozenset(tuple(sorted((m.image[a], m.image[b]))) for a, b in p.edges)
                for m in find_diamonds(g, name)
            }
            assert got == oracles.pattern_images(p.edges, p.n, g)


def test_pattern_fixture_errors(tmp_path):
    with pytest.raises(FixtureMissingError):
        find_diamonds(octahedron(), "d4", fixture=str(tmp_path / "missing.txt"))
    with pytest.raises(FixtureInvalidError):
        parse_patterns("pattern d4\nvertices 5\nedges 0-1 1-2 2-3 3-0 4-0 4-1 4-3\ncrucial 1 2\n")


def test_is_k_connected():
    assert is_k_connected(octahedron(), 4)
    assert not is_k_connected(octahedron(), 5)
    for a, b in combinations(range(6), 2):
        h = oracles.to_nx(octahedron())
        h.remove_nodes_from([a, b])
        assert nx.is_connected(h)
