import json
import random
from collections import Counter

import networkx as nx
import pytest

from hamtri.analysis import has_separating_triangle, separating_cycles, vertex_connectivity
from hamtri.embed import canonical_form, validate_triangulation
from hamtri.errors import BadFaceError, TooSmallError
from hamtri.gen import (
    GenerationBudget,
    all_triangulation_codes,
    antiprism_chain,
    double_wheel,
    expansions,
    four_connected_codes,
    generate_all,
    icosahedron,
    octahedron,
    random_triangulation,
    split_vertex,
    stack_vertex,
    tetrahedron,
)

import oracles


def test_double_wheel_four_is_octahedron():
    g = double_wheel(4)
    assert (g.n, g.num_edges) == (6, 12)
    assert set(g.degrees) == {4}
    assert canonical_form(g) == canonical_form(octahedron())


def test_double_wheel_too_small():
    with pytest.raises(TooSmallError):
        double_wheel(3)


def test_double_wheel_five():
    g = double_wheel(5)
    assert (g.n, g.num_edges) == (7, 15)
    assert vertex_connectivity(g) == 4 == oracles.connectivity(g)


def test_generate_n4_is_k4():
    out = list(generate_all(GenerationBudget(n_max=4)))
    assert len(out) == 1
    assert canonical_form(out[0]) == canonical_form(tetrahedron())


def test_generate_n6_matches_brute_force():
    out = [g for g in generate_all(GenerationBudget(n_max=6)) if g.n == 6]
    ref = oracles.brute_triangulation_classes(6)
    assert len(out) == len(ref) == 2
    for g in out:
        assert sum(nx.is_isomorphic(oracles.to_nx(g), h) for h in ref) == 1


def test_generate_n6_four_connected_is_octahedron():
    out = [g for g in generate_all(GenerationBudget(n_max=6, connectivity=4))]
    assert len(out) == 1
    assert canonical_form(out[0]) == canonical_form(octahedron())


def test_generation_order_and_uniqueness():
    out = list(generate_all(GenerationBudget(n_max=9)))
    keys = [(g.n, canonical_form(g).code) for g in out]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)
    assert all(validate_triangulation(g) for g in out)


def test_counts_match_fixture(fixtures_dir):
    table = json.loads((fixtures_dir / "plantri_counts.json").read_text())
    got = {n: len(codes) for n, codes in all_triangulation_codes(10)}
    assert got == {int(k): v for k, v in table["all"].items() if int(k) <= 10}
    got4 = {n: len(codes) for n, codes in four_connected_codes(10)}
    want4 = {int(k): v for k, v in table["4-connected"].items() if 6 <= int(k) <= 10}
    assert got4 == want4


def test_four_connected_methods_agree():
    budget = GenerationBudget(n_max=10, connectivity=4)
    a = [canonical_form(g) for g in generate_all(budget, method="full")]
    b = [canonical_form(g) for g in generate_all(budget, method="four-connected")]
    assert a == b


def test_parallel_generation_is_identical():
    a = [c for _, cs in all_triangulation_codes(9, jobs=1) for c in cs]
    b = [c for _, cs in all_triangulation_codes(9, jobs=2) for c in cs]
    assert a == b


def test_stack_vertex_on_k4():
    g = stack_vertex(tetrahedron(), 2)
    assert g.n == 5 and validate_triangulation(g)
    assert len(separating_cycles(g, 3)) == 1


def test_stack_vertex_on_octahedron():
    g = stack_vertex(octahedron(), 0)
    assert g.n == 7
    assert has_separating_triangle(g)
    assert vertex_connectivity(g) == 3


def test_stack_vertex_bad_face():
    with pytest.raises(BadFaceError):
        stack_vertex(tetrahedron(), 4)
    with pytest.raises(BadFaceError):
        stack_vertex(tetrahedron(), -1)


def test_split_vertex_keeps_triangulation():
    g = octahedron()
    h = split_vertex(g, 0, 0, 2)
    assert h.n == 7 and validate_triangulation(h)
    assert sorted((h.degree(0), h.degree(6))) == [4, 4]


def test_expansions_respect_min_degree():
    for h in expansions(octahedron(), min_degree=4):
        assert min(h.degrees) >= 4


def test_budget_validation():
    with pytest.raises(ValueError):
        GenerationBudget(n_max=3)
    with pytest.raises(ValueError):
        GenerationBudget(n_max=256)


def test_named_graphs():
    ico = icosahedron()
    assert ico.n == 12 and set(ico.degrees) == {5}
    assert canonical_form(antiprism_chain(4, 1)) == canonical_form(octahedron())
    chain = antiprism_chain(4, 3)
    assert chain.n == 14 and validate_triangulation(chain)
    assert vertex_connectivity(chain) == 4


def test_random_triangulation_is_reproducible():
    a = random_triangulation(12, random.Random(5))
    b = random_triangulation(12, random.Random(5))
    assert a == b and validate_triangulation(a)


def test_degree_sequences_of_n7():
    seqs = Counter(
        tuple(sorted(g.degrees)) for g in generate_all(GenerationBudget(n_max=7, n_min=7))
    )
    ref = Counter(
        tuple(sorted(d for _, d in h.degree())) for h in oracles.brute_triangulation_classes(7)
    )
    assert seqs == ref
