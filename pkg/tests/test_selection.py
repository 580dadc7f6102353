from itertools import combinations

import pytest

from hamtri.analysis import delete_edges, vertex_connectivity
from hamtri.embed import decode_code
from hamtri.errors import DegreeTooHighError, PreconditionFailed
from hamtri.gen import GenerationBudget, generate_all, icosahedron, octahedron, stack_vertex
from hamtri.selection import (
    CandidateSet,
    admissible_selections,
    check_selection_hypotheses,
    count_selections,
    link,
    low_degree_independent_set,
    preserves_4_connectivity,
    refine_saturation_free,
    saturates,
)

import oracles

# n=12, 4-connected; S = {3, 10} passes every hypothesis with |A_u| = 4 for both
TWO_LINKS_OF_FOUR = bytes.fromhex(
    "0c02030405000105060300010206070804000103080905000104090a06020002050a0b07030003060b0c08"
    "0003070c09040004080c0a050005090c0b0600060a0c0700070b0a090800"
)
# n=12, 4-connected; two edges of A_0 together leave a 2-cut
DOUBLE_PICK = bytes.fromhex(
    "0c02030405000105060300010206070400010307080500010408090602000205090a07030003060a0b08"
    "040004070b0c09050005080c0a060006090c0b0700070a0c0800080b0a0900"
)


def corpus4(n_max=10):
    return list(generate_all(GenerationBudget(n_max=n_max, connectivity=4)))


def test_independent_set_octahedron():
    g = octahedron()
    s = low_degree_independent_set(g)
    assert len(s) == 2 == oracles.max_independent_size(g, range(6))
    assert not any(g.has_edge(a, b) for a, b in combinations(s, 2))


def test_independent_set_icosahedron():
    g = icosahedron()
    s = low_degree_independent_set(g)
    assert len(s) == 3 == oracles.max_independent_size(g, range(12))


def test_independent_set_with_exclusion():
    g = octahedron()  # antipodal pairs {0,2}, {1,3}, {4,5}
    s = low_degree_independent_set(g, exclude={4, 5})
    assert len(s) == 2 and not s.vertices & {4, 5}


def test_independent_set_matches_oracle_on_corpus():
    for g in corpus4(10):
        allowed = [v for v in range(g.n) if g.degree(v) <= 6]
        assert len(low_degree_independent_set(g)) == oracles.max_independent_size(g, allowed)


def test_saturates_examples():
    g = octahedron()
    w = saturates(g, [0, 2], "4cycle")
    assert w is not None and {0, 2} <= set(w)
    assert saturates(g, [0], "4cycle") is None
    assert saturates(g, [0, 2], "diamond6") is None


def test_saturation_witness_is_a_cycle():
    for g in corpus4(9):
        s = low_degree_independent_set(g)
        for target, k in (("4cycle", 4), ("5cycle", 5)):
            w = saturates(g, s, target)
            if w is not None:
                assert len(w) == k and len(set(w)) == k
                assert all(g.has_edge(w[i], w[(i + 1) % k]) for i in range(k))
                assert len(set(w) & s.vertices) >= 2


def test_refine_octahedron_branch_a():
    g = octahedron()
    b = refine_saturation_free(g, CandidateSet.of(g, [0, 2]), t=2)
    assert b.kind == "A"
    v, x = b.pair
    assert {v, x} in ({1, 3}, {4, 5})
    assert b.common == frozenset({0, 2})


def test_refine_single_vertex_branch_b():
    g = octahedron()
    b = refine_saturation_free(g, CandidateSet.of(g, [4]), t=7)
    assert b.kind == "B" and b.subset.vertices == frozenset({4})


def test_refine_agrees_with_pair_oracle_at_n12():
    for g in generate_all(GenerationBudget(n_max=12, n_min=12, connectivity=4)):
        i = low_degree_independent_set(g)
        for t in (2, 3, 7):
            has_pair = any(
                len(g.adj[v] & g.adj[x] & i.vertices) >= t for v, x in combinations(range(g.n), 2)
            )
            b = refine_saturation_free(g, i, t)
            assert (b.kind == "A") == has_pair
            if b.kind == "A":
                v, x = b.pair
                assert len(g.adj[v] & g.adj[x] & i.vertices) >= t
            else:
                for target in ("4cycle", "5cycle", "diamond6"):
                    assert saturates(g, b.subset, target) is None


def test_link_octahedron():
    g = octahedron()
    a = link(g, 0)
    nb = g.adj[0]
    assert len(a.edges) == 4
    assert all(x in nb and y in nb for x, y in a.edges)


def test_link_icosahedron_matches_connectivity_oracle():
    g = icosahedron()
    a = link(g, 0)
    want = set()
    for w in g.adj[0]:
        h = oracles.to_nx(g)
        h.remove_edge(0, w)
        if oracles.nx.node_connectivity(h) >= 4:
            want.add(tuple(sorted((0, w))))
    assert a.edges == frozenset(want)


def test_link_degree_too_high():
    g = octahedron()
    for f in range(3):
        g = stack_vertex(g, g.dart_face[(0, g.rot[0][0])])
    assert g.degree(0) == 7
    with pytest.raises(DegreeTooHighError):
        link(g, 0)


def test_octahedron_antipodal_pair_fails_hypotheses():
    g = octahedron()
    with pytest.raises(PreconditionFailed) as info:
        list(admissible_selections(g, CandidateSet.of(g, [0, 2])))
    assert "4cycle" in info.value.hypothesis


def test_empty_set_has_one_selection():
    g = octahedron()
    sels = list(admissible_selections(g, CandidateSet.of(g, [])))
    assert len(sels) == 1 and sels[0].edges == frozenset()


def test_product_count_two_links_of_four():
    g = decode_code(TWO_LINKS_OF_FOUR)
    s = CandidateSet.of(g, [3, 10])
    links = check_selection_hypotheses(g, s)
    assert [len(links[u].edges) for u in (3, 10)] == [4, 4]
    assert count_selections(links) == 25
    sels = list(admissible_selections(g, s))
    assert len(sels) == 25
    assert all(preserves_4_connectivity(g, f) for f in sels)


def test_selection_sampling_is_seeded():
    g = decode_code(TWO_LINKS_OF_FOUR)
    s = CandidateSet.of(g, [3, 10])
    a = list(admissible_selections(g, s, seed=3, limit=10))
    b = list(admissible_selections(g, s, seed=3, limit=10))
    assert a == b and len(a) == 10


def test_empty_selection_preserves():
    for g in corpus4(9):
        assert preserves_4_connectivity(g, [])


def test_double_pick_from_one_link_can_fail():
    g = decode_code(DOUBLE_PICK)
    a = sorted(link(g, 0).edges)
    assert (1, 2) in a and (1, 4) in a
    res = preserves_4_connectivity(g, [(1, 2), (1, 4)])
    assert not res
    assert vertex_connectivity(delete_edges(g, [(1, 2), (1, 4)])) == len(res.cut)
    assert res.cut == frozenset({0, 5})
