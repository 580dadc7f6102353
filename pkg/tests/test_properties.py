"""Property tests: structural invariants over random triangulations."""

import random
from functools import lru_cache

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from hamtri.analysis import (
    contract_edge,
    contract_interior,
    has_separating_triangle,
    separating_cycles,
    vertex_connectivity,
)
from hamtri.census import read_planar_code, write_planar_code
from hamtri.embed import canonical_form, closed_region, validate_triangulation
from hamtri.errors import EmptyInteriorError, NotContractibleError, PreconditionFailed
from hamtri.gen import GenerationBudget, generate_all, random_triangulation, split_vertex
from hamtri.ham import (
    count_hamiltonian_cycles,
    count_hamiltonian_cycles_dp,
    enumerate_hamiltonian_cycles,
)
from hamtri.selection import CandidateSet, admissible_selections, preserves_4_connectivity

import oracles

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def triangulations(lo: int = 4, hi: int = 30):
    return st.builds(
        lambda n, seed: random_triangulation(n, random.Random(seed)),
        st.integers(lo, hi),
        st.integers(0, 2**32 - 1),
    )


@lru_cache(maxsize=None)
def corpus4():
    return tuple(generate_all(GenerationBudget(n_max=11, connectivity=4)))


@SETTINGS
@given(triangulations(4, 60))
def test_euler_and_triangular_faces(g):
    assert g.num_edges == 3 * g.n - 6
    assert len(g.faces) == 2 * g.n - 4
    assert validate_triangulation(g)


@SETTINGS
@given(triangulations(4, 40), st.randoms(use_true_random=False), st.booleans())
def test_canonical_form_is_an_invariant(g, rnd, flip):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    if flip:
        h = h.mirror()
    assert canonical_form(h) == canonical_form(g)


@SETTINGS
@given(st.lists(triangulations(4, 50), min_size=0, max_size=5))
def test_planar_code_round_trip(graphs):
    data = write_planar_code(graphs)
    back = list(read_planar_code(data))
    assert write_planar_code(back) == data
    assert [canonical_form(g) for g in back] == [canonical_form(g) for g in graphs]


@SETTINGS
@given(triangulations(4, 18))
def test_connectivity_agrees_with_networkx(g):
    assert vertex_connectivity(g) == oracles.connectivity(g)


@SETTINGS
@given(triangulations(5, 25))
def test_separating_triangle_iff_three_connected(g):
    assert has_separating_triangle(g) == (vertex_connectivity(g) == 3)


@SETTINGS
@given(triangulations(4, 11))
def test_backtracking_count_equals_dp(g):
    assert count_hamiltonian_cycles(g) == count_hamiltonian_cycles_dp(g)


@SETTINGS
@given(triangulations(5, 11), st.data())
def test_required_plus_forbidden_partitions_cycles(g, data):
    e = data.draw(st.sampled_from(g.edges))
    total = count_hamiltonian_cycles(g)
    with_e = enumerate_hamiltonian_cycles(g, required=[e])
    assert all(e in c.edges for c in with_e)
    assert len(with_e) + count_hamiltonian_cycles(g, forbidden=[e]) == total


@SETTINGS
@given(triangulations(6, 22), st.sampled_from([3, 4]))
def test_closed_regions_split_the_graph(g, k):
    for sc in separating_cycles(g, k)[:4]:
        a = sc.closed_region("a")
        b = sc.closed_region("b")
        assert a.n + b.n == g.n + k
        assert a.num_edges + b.num_edges == g.num_edges + k
        for h in (a, b):
            assert h.is_near_triangulation()
            assert len(h.outer_cycle) == k


@SETTINGS
@given(triangulations(5, 30), st.data())
def test_edge_contraction(g, data):
    e = data.draw(st.sampled_from(g.edges))
    try:
        res = contract_edge(g, e)
    except NotContractibleError:
        # only edges on a separating triangle, or any edge of K4, are refused
        u, v = e
        common = g.adj[u] & g.adj[v]
        assert len(common) > 2 or g.n == 4
        return
    assert res.graph.n == g.n - 1 and validate_triangulation(res.graph)
    assert res.vmap[e[0]] == res.vmap[e[1]] == res.new_vertex


@SETTINGS
@given(triangulations(4, 30), st.data())
def test_split_vertex_grows_triangulation(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    d = g.degree(v)
    i = data.draw(st.integers(0, d - 1))
    j = data.draw(st.integers(0, d - 1).filter(lambda x: x != i))
    h = split_vertex(g, v, min(i, j), max(i, j))
    assert h.n == g.n + 1 and validate_triangulation(h)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_admissible_selections_keep_four_connectivity(data):
    g = data.draw(st.sampled_from(corpus4()))
    low = [v for v in range(g.n) if g.degree(v) <= 6]
    s = data.draw(st.lists(st.sampled_from(low), max_size=3, unique=True))
    try:
        sels = list(admissible_selections(g, CandidateSet.of(g, s), seed=0, limit=50))
    except (PreconditionFailed, ValueError):
        return
    for f in sels:
        assert preserves_4_connectivity(g, f)


@SETTINGS
@given(triangulations(5, 30))
def test_no_separating_triangle_means_min_degree_four(g):
    if not has_separating_triangle(g):
        assert min(g.degrees) >= 4


@SETTINGS
@given(triangulations(6, 24), st.sampled_from([3, 4, 5]))
def test_separating_cycle_sides_are_the_components(g, k):
    h = oracles.to_nx(g)
    for sc in separating_cycles(g, k)[:5]:
        rest = h.subgraph(set(range(g.n)) - set(sc.cycle))
        comps = {frozenset(c) for c in oracles.nx.connected_components(rest)}
        assert len(comps) >= 2
        assert sc.side_a | sc.side_b == set(rest)
        assert not sc.side_a & sc.side_b
        # each side is a union of whole components
        for side in (sc.side_a, sc.side_b):
            assert all(c <= side or not c & side for c in comps)
        if not has_separating_triangle(g):
            assert {sc.side_a, sc.side_b} == comps


@SETTINGS
@given(triangulations(6, 24), st.sampled_from(["a", "b"]))
def test_contract_interior_gives_triangulation(g, which):
    for sc in separating_cycles(g, 4)[:3]:
        try:
            res = contract_interior(g, sc, which)
        except (NotContractibleError, EmptyInteriorError):
            # a chord can leave one disc empty, which needs separating triangles
            assert has_separating_triangle(g)
            continue
        inside = sc.side_a if which == "a" else sc.side_b
        assert validate_triangulation(res.graph)
        assert res.graph.n == g.n - len(inside) + 1


@SETTINGS
@given(triangulations(4, 10), st.randoms(use_true_random=False))
def test_cycle_count_invariant_under_relabel_and_mirror(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert count_hamiltonian_cycles(g.relabel(perm).mirror()) == count_hamiltonian_cycles(g)
