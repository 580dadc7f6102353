"""Property suites that exercise the structural claims on exhaustive corpora.

Each suite returns a :class:`SuiteResult` listing how many instances were
checked and every instance where the claimed property failed.  A failure is
data, not an exception: callers decide whether it is fatal.

Suite names describe the property tested:

``edge-deletion``      deleting one link edge per member keeps 4-connectivity
``uw-paths``           opposite-corner path dichotomy for 4-gon near triangulations
``uv-paths``           adjacent-corner path dichotomy (or an outerplanar remainder)
``degree4-pair``       few corner paths force two adjacent interior degree-4 vertices
``link-size``          size and disjointness properties of links
``edge-link``          Hamiltonian cycles through an edge and a link edge (also in G - y)
``cycle-intersection`` two 4-cycles through far-apart members meet in at most an edge
``nested-paths``       path dichotomy between nested separating 4-cycles
``nested-count``       chains of nested separating 4-cycles force many cycles
``cofacial``           a Hamiltonian cycle through any two edges of a face
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .analysis import (
    bits,
    contract_interior,
    cycles_of_length,
    degree4_min_distance,
    is_connected,
    left_faces,
    separating_cycle,
    side_interior,
    vertex_connectivity,
)
from .embed import (
    NearTriangulation,
    RotationGraph,
    canonical_form,
    closed_region,
    cycle_edges,
    decode_code,
    delete_vertices,
    edge,
    insert_vertex,
)
from .errors import EmbeddingError, PreconditionFailed
from .gen import all_triangulation_codes, antiprism_chain, double_wheel, four_connected_codes
from .ham import count_hamiltonian_cycles, hamiltonian_paths, iter_hamiltonian_paths
from .selection import (
    CandidateSet,
    admissible_selections,
    check_selection_hypotheses,
    link,
    preserves_4_connectivity,
    saturates,
)

log = logging.getLogger(__name__)


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    skipped: int = 0
    violations: list[dict] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, g, **detail) -> None:
        """Record a violation; ``g`` is a graph or an already computed key."""
        key = g if isinstance(g, str) or g is None else graph_key(g)
        rec = {"suite": self.name, "graph": key}
        rec.update(detail)
        self.violations.append(rec)
        log.error("suite %s violation: %s", self.name, rec)


# -- corpora --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def triangulations(n_max: int) -> tuple[RotationGraph, ...]:
    """Every triangulation with 4..n_max vertices, one per class."""
    out = []
    for _, codes in all_triangulation_codes(n_max):
        out.extend(decode_code(c) for c in codes)
    return tuple(out)


@lru_cache(maxsize=None)
def four_connected(n_max: int) -> tuple[RotationGraph, ...]:
    out = []
    for _, codes in four_connected_codes(n_max):
        out.extend(decode_code(c) for c in codes)
    return tuple(out)


def triangle_count(g) -> int:
    return sum(1 for _ in cycles_of_length(g, 3))


def has_separating_triangle_near(h: NearTriangulation) -> bool:
    """A 3-cycle that is not an inner face separates a near triangulation."""
    inner = sum(1 for f in h.faces if f.id != h.outer_face and len(f) == 3)
    return triangle_count(h) != inner


def _capped_key(h: NearTriangulation) -> bytes:
    cap = insert_vertex(h, h.outer_face)
    return canonical_form(cap, root_vertices=[h.n]).code


def graph_key(g: RotationGraph) -> str:
    """Hex canonical form; near triangulations are keyed with their outer face capped."""
    if isinstance(g, NearTriangulation) and g.outer_face is not None:
        return "cap:" + _capped_key(g).hex()
    return canonical_form(g).hex()


@lru_cache(maxsize=None)
def quad_near_triangulations(n_max: int) -> tuple[NearTriangulation, ...]:
    """Near triangulations with an outer 4-cycle and no separating triangle, n <= n_max.

    Built two ways and merged: removing each degree-4 vertex from every
    triangulation on at most ``n_max + 1`` vertices (this reaches every such
    graph), and cutting out both closed sides of every separating 4-cycle of
    the triangulations on at most ``n_max`` vertices.
    """
    found: dict[bytes, NearTriangulation] = {}

    def offer(h: NearTriangulation) -> None:
        if len(h.outer_cycle) != 4 or has_separating_triangle_near(h):
            return
        key = _capped_key(h)
        if key not in found:
            found[key] = h

    for g in triangulations(n_max + 1):
        for u in range(g.n):
            if g.degree(u) == 4:
                offer(delete_vertices(g, [u]))
    for g in triangulations(n_max):
        for c in cycles_of_length(g, 4):
            sc = separating_cycle(g, c)
            if sc is not None:
                offer(sc.closed_region("a"))
                offer(sc.closed_region("b"))
    return tuple(found[k] for k in sorted(found))


# -- path dichotomies ------------------------------------------------------------------


def _corner_paths(h: NearTriangulation, a: int, b: int, limit: Optional[int] = 2) -> int:
    gone = [c for c in h.outer_cycle if c not in (a, b)]
    return len(hamiltonian_paths(h, a, b, gone, limit))


def _is_path_between(h: RotationGraph, gone: Iterable[int], a: int, b: int) -> bool:
    gone = set(gone)
    alive = [v for v in range(h.n) if v not in gone]
    amask = sum(1 << v for v in alive)
    m = [h.masks[v] & amask for v in range(h.n)]
    edges = sum(m[v].bit_count() for v in alive) // 2
    if edges != len(alive) - 1 or not is_connected(m, amask):
        return False
    ends = sorted(v for v in alive if m[v].bit_count() <= 1)
    return sorted([a, b]) == ends or (len(alive) == 1 and a == b)


def is_outerplanar_remainder(h: NearTriangulation, a: int, b: int) -> bool:
    """Whether ``h - (outer cycle minus {a, b})`` is an outerplanar near triangulation.

    ``ab`` must be an outer edge; the outer face of the remainder is the face
    on the outer side of ``ab``.
    """
    gone = [c for c in h.outer_cycle if c not in (a, b)]
    if h.n - len(gone) <= 2:
        return True
    try:
        r = delete_vertices(h, gone)
    except EmbeddingError:
        return False  # disconnected remainder
    new = {old: i for i, old in enumerate(r.labels)}
    dart = (a, b) if h.dart_face[(a, b)] == h.outer_face else (b, a)
    outer = r.dart_face[(new[dart[0]], new[dart[1]])]
    if set(r.faces[outer].vertices) != set(range(r.n)):
        return False
    return all(len(f) == 3 for f in r.faces if f.id != outer)


def _quad_corpus(n_max: int, n_min: int = 0) -> list[NearTriangulation]:
    return [h for h in quad_near_triangulations(n_max) if h.n >= n_min]


def suite_uw_paths(n_max: int = 10, **_) -> SuiteResult:
    res = SuiteResult("uw-paths")
    for h in _quad_corpus(n_max):
        c = h.outer_cycle
        for i in (0, 1):
            u, v, w, x = c[i], c[i + 1], c[(i + 2) % 4], c[(i + 3) % 4]
            if h.n == 4 and h.has_edge(v, x):
                res.skipped += 1  # the 4-cycle plus the chord vx is excluded
                continue
            res.checked += 1
            if _corner_paths(h, u, w) >= 2:
                continue
            if not _is_path_between(h, (v, x), u, w):
                res.fail(h, outer=list(c), a=u, b=w)
    return res


def suite_uv_paths(n_max: int = 10, **_) -> SuiteResult:
    res = SuiteResult("uv-paths")
    for h in _quad_corpus(n_max):
        c = h.outer_cycle
        for i in range(4):
            u, v = c[i], c[(i + 1) % 4]
            res.checked += 1
            if _corner_paths(h, u, v) >= 2:
                continue
            if not is_outerplanar_remainder(h, u, v):
                res.fail(h, outer=list(c), a=u, b=v)
    return res


def suite_degree4_pair(n_max: int = 10, **_) -> SuiteResult:
    res = SuiteResult("degree4-pair")
    for h in _quad_corpus(n_max, n_min=6):
        inner = set(h.interior)
        pair = any(
            h.degree(a) == 4 and h.degree(b) == 4 for a in inner for b in h.adj[a] & inner
        )
        for a, b in combinations(h.outer_cycle, 2):
            res.checked += 1
            if _corner_paths(h, a, b) <= 1 and not pair:
                res.fail(h, outer=list(h.outer_cycle), a=a, b=b)
    return res


# -- selections and links --------------------------------------------------------------


def candidate_subsets(g: RotationGraph, max_size: int = 3) -> Iterator[CandidateSet]:
    low = [v for v in range(g.n) if g.degree(v) <= 6]
    for k in range(max_size + 1):
        for combo in combinations(low, k):
            if all(not g.has_edge(a, b) for a, b in combinations(combo, 2)):
                yield CandidateSet(frozenset(combo))


def suite_edge_deletion(n_max: int = 10, seed: int = 0, limit: int = 1000, **_) -> SuiteResult:
    res = SuiteResult("edge-deletion")
    sizes: dict[int, int] = {}
    for g in four_connected(n_max):
        for s in candidate_subsets(g):
            try:
                check_selection_hypotheses(g, s)
            except PreconditionFailed:
                res.skipped += 1
                continue
            sizes[len(s)] = sizes.get(len(s), 0) + 1
            for sel in admissible_selections(g, s, seed=seed, limit=limit, check=False):
                res.checked += 1
                chk = preserves_4_connectivity(g, sel)
                if not chk:
                    res.fail(g, S=sorted(s), F=sorted(sel.edges), cut=sorted(chk.cut))
    res.notes["valid_sets_by_size"] = {str(k): v for k, v in sorted(sizes.items())}
    return res


def _degree4_nbrs_adjacent(g: RotationGraph, u: int) -> bool:
    low = [w for w in g.adj[u] if g.degree(w) == 4]
    return any(g.has_edge(a, b) for a, b in combinations(low, 2))


def _closed_edges(g: RotationGraph, u: int) -> set:
    vs = g.adj[u] | {u}
    return {edge(a, b) for a in vs for b in g.adj[a] & vs}


def suite_link_size(n_max: int = 10, **_) -> SuiteResult:
    res = SuiteResult("link-size")
    for g in four_connected(n_max):
        for u in range(g.n):
            d = g.degree(u)
            if d == 4:
                res.checked += 1
                nb = sorted(g.adj[u])
                deg_in = [len(g.adj[w] & g.adj[u]) for w in nb]
                if deg_in != [2, 2, 2, 2] or not is_connected(
                    [m & sum(1 << w for w in nb) for m in g.masks], sum(1 << w for w in nb)
                ):
                    res.fail(g, u=u, claim="neighbourhood is a 4-cycle")
            elif d in (5, 6) and not _degree4_nbrs_adjacent(g, u):
                res.checked += 1
                a = link(g, u)
                off = [w for w in g.adj[u] if edge(u, w) not in a.edges]
                if any(g.has_edge(p, q) for p, q in combinations(off, 2)):
                    res.fail(g, u=u, claim="non-link neighbours independent", off=sorted(off))
                if len(a) < math.ceil(d / 2):
                    res.fail(g, u=u, claim="link size", size=len(a))
        low = [v for v in range(g.n) if g.degree(v) <= 6]
        for u1, u2 in combinations(low, 2):
            if g.has_edge(u1, u2) or len(g.adj[u1] & g.adj[u2]) >= 2:
                continue
            res.checked += 1
            if _closed_edges(g, u1) & _closed_edges(g, u2):
                res.fail(g, u=[u1, u2], claim="closed neighbourhood edges disjoint")
    return res


def _edge_link_hypotheses(g: RotationGraph, u: int, a) -> bool:
    d = g.degree(u)
    if d > 6:
        return False
    nb = g.adj[u]
    if any(len(g.adj[w] & nb) != 2 for w in nb):
        return False
    if d in (5, 6):
        off = [w for w in nb if edge(u, w) not in a.edges]
        return not any(g.has_edge(p, q) for p, q in combinations(off, 2))
    if d == 4:
        big = [w for w in nb if g.degree(w) >= 5]
        return any(not g.has_edge(p, q) for p, q in combinations(big, 2))
    return False


def suite_edge_link(n_max: int = 10, **_) -> SuiteResult:
    res = SuiteResult("edge-link")
    for g in four_connected(n_max):
        for u in range(g.n):
            if g.degree(u) > 6:
                continue
            a = link(g, u)
            if not _edge_link_hypotheses(g, u, a):
                continue
            near = _closed_edges(g, u)
            for e in g.edges:
                if e in near:
                    continue
                res.checked += 1
                if not any(count_hamiltonian_cycles(g, required=[e, f], limit=1) for f in sorted(a.edges)):
                    res.fail(g, u=u, e=list(e), claim="cycle through e and a link edge")
                ys = set()
                for f in (g.face_of(*e), g.face_of(e[1], e[0])):
                    ys |= set(f.vertices)
                for y in sorted(ys - set(e) - {u}):
                    res.checked += 1
                    fs = [f for f in sorted(a.edges) if y not in f]
                    if not any(
                        count_hamiltonian_cycles(g, required=[e, f], delete=[y], limit=1) for f in fs
                    ):
                        res.fail(g, u=u, e=list(e), y=y, claim="cycle in G-y through e and a link edge")
    return res


def suite_cofacial(n_max: int = 10, **_) -> SuiteResult:
    res = SuiteResult("cofacial")
    for g in four_connected(n_max):
        pairs = set()
        for f in g.faces:
            es = sorted(edge(a, b) for a, b in f.boundary)
            pairs.update(combinations(es, 2))
        for e1, e2 in sorted(pairs):
            res.checked += 1
            if not count_hamiltonian_cycles(g, required=[e1, e2], limit=1):
                res.fail(g, edges=[list(e1), list(e2)])
    return res


# -- pairs of 4-cycles ---------------------------------------------------------------------


@lru_cache(maxsize=65536)
def far_pair(g: RotationGraph, u: int, w: int) -> bool:
    """``{u, w}`` is independent and lies on no common 4-cycle or 5-cycle."""
    if u == w or g.has_edge(u, w):
        return False
    return saturates(g, [u, w], "4cycle") is None and saturates(g, [u, w], "5cycle") is None


def suite_cycle_intersection(n_max: int = 10, **_) -> SuiteResult:
    res = SuiteResult("cycle-intersection")
    for g in four_connected(n_max):
        quads = list(cycles_of_length(g, 4))
        through = {v: [c for c in quads if v in c] for v in range(g.n)}
        for u, w in combinations(range(g.n), 2):
            if not far_pair(g, u, w):
                continue
            for du in through[u]:
                for dw in through[w]:
                    res.checked += 1
                    common = set(du) & set(dw)
                    bad = None
                    if len(common) > 2:
                        bad = "more than two shared vertices"
                    elif common & {u, w}:
                        bad = "shared vertex in the set"
                    elif len(common) == 2:
                        e = edge(*common)
                        if e not in cycle_edges(du) or e not in cycle_edges(dw):
                            bad = "two shared vertices not a shared edge"
                    if bad:
                        res.fail(g, u=u, u2=w, du=list(du), du2=list(dw), claim=bad)
    return res


# -- nested separating 4-cycles ---------------------------------------------------------------


def _disc(g: RotationGraph, cycle, away_face: int) -> tuple[tuple[int, ...], frozenset[int]]:
    """Orientation with the disc on the left, and the disc's interior, avoiding ``away_face``."""
    cyc = tuple(cycle)
    lf = left_faces(g, cyc)
    if away_face in lf:
        cyc = (cyc[0],) + tuple(reversed(cyc[1:]))
        lf = left_faces(g, cyc)
    return cyc, frozenset(side_interior(g, cyc, lf))


@dataclass(frozen=True)
class NestedInstance:
    graph: RotationGraph
    u: int
    u2: int
    outer: tuple[int, ...]  # D_u, disc on its left
    inner: tuple[int, ...]  # D_u', disc on its left


def nested_instances(g: RotationGraph, max_per_graph: Optional[int] = None) -> Iterator[NestedInstance]:
    """Configurations meeting every hypothesis of the nested-cycle path dichotomy."""
    if vertex_connectivity(g, upto=4) < 4 or degree4_min_distance(g) < 3:
        return
    seps = [c for c in cycles_of_length(g, 4) if separating_cycle(g, c) is not None]
    count = 0
    for du in seps:
        for side in ("left", "right"):
            cyc = du if side == "left" else (du[0],) + tuple(reversed(du[1:]))
            lf = left_faces(g, cyc)
            away = min(set(range(len(g.faces))) - lf)
            ocyc, oin = _disc(g, cyc, away)
            odisc = oin | set(ocyc)
            discs = {c: _disc(g, c, away) for c in seps}
            for u in ocyc:
                for dw in seps:
                    if dw == du:
                        continue
                    icyc, iin = discs[dw]
                    if not iin or not (iin | set(icyc)) <= odisc:
                        continue
                    for w in icyc:
                        if not far_pair(g, u, w):
                            continue
                        mine = iin | set(icyc)
                        maximal = True
                        for other in seps:
                            if other == dw or w not in other:
                                continue
                            oc, oi = discs[other]
                            if mine <= (oi | set(oc)):
                                maximal = False
                                break
                        if not maximal:
                            continue
                        yield NestedInstance(g, u, w, ocyc, icyc)
                        count += 1
                        if max_per_graph is not None and count >= max_per_graph:
                            return


def contracted_region(inst: NestedInstance) -> tuple[NearTriangulation, int]:
    """The closed disc of the outer cycle with the inner disc's interior shrunk to ``z``."""
    g = inst.graph
    res = contract_interior(g, inst.inner, "left")
    outer = tuple(res.vmap[v] for v in inst.outer)
    h = closed_region(res.graph, outer, res.new_vertex)
    z = h.labels.index(res.new_vertex)
    return h, z


def nested_dichotomy(h: NearTriangulation, z: int) -> tuple[str, Optional[str]]:
    """Which branch holds (``"i"`` or ``"ii"``), or ``"fail"`` with a short reason."""
    c = h.outer_cycle
    paths = {}
    for a, b in combinations(c, 2):
        gone = [x for x in c if x not in (a, b)]
        paths[(a, b)] = hamiltonian_paths(h, a, b, gone, limit=2)
    low = [p for p, ps in paths.items() if len(ps) < 2]
    if not low:
        return "i", None
    if len(low) > 1:
        return "fail", f"{len(low)} corner pairs with fewer than two paths"
    (ab,) = low
    if not paths[ab]:
        return "fail", "a corner pair has no Hamiltonian path"
    at_z = {e for e in paths[ab][0].edges if z in e}
    for cd in paths:
        if cd == ab:
            continue
        gone = [x for x in c if x not in cd]
        good = 0
        for q in iter_hamiltonian_paths(h, cd[0], cd[1], gone):
            if not at_z <= q.edges:
                good += 1
                if good == 2:
                    break
        if good < 2:
            return "fail", f"pair {cd} has {good} paths avoiding an edge of the unique path at z"
    return "ii", None


def nested_chain_graphs(max_rings: int = 5) -> list[RotationGraph]:
    return [antiprism_chain(4, rings) for rings in range(4, max_rings + 1)]


def suite_nested_paths(n_max: int = 12, max_rings: int = 5, **_) -> SuiteResult:
    res = SuiteResult("nested-paths")
    graphs = list(nested_chain_graphs(max_rings))
    graphs += [g for g in four_connected(n_max) if degree4_min_distance(g) >= 3]
    outcome = {"i": 0, "ii": 0}
    for g in graphs:
        for inst in nested_instances(g):
            h, z = contracted_region(inst)
            res.checked += 1
            branch, why = nested_dichotomy(h, z)
            if why is not None:
                res.fail(g, u=inst.u, u2=inst.u2, outer=list(inst.outer), inner=list(inst.inner), claim=why)
            else:
                outcome[branch] += 1
    res.notes["outcomes"] = outcome
    return res


def nested_chain_bound(t: int) -> int:
    return 2 ** math.isqrt(t)


def chain_instances(
    rings_list: Iterable[int] = (3, 4, 5),
) -> Iterator[tuple[str, RotationGraph, list[tuple[int, ...]], int]]:
    """Constructed graphs with a chain of nested separating 4-cycles.

    Each item carries a reference vertex lying inside every disc of the chain.
    """
    for rings in rings_list:
        g = antiprism_chain(4, rings)
        yield f"antiprism-chain-{rings}", g, [tuple(range(j * 4, j * 4 + 4)) for j in range(rings)], 4 * rings + 1
        k = rings + 4
        dw = double_wheel(k)
        # apex, v0, apex, v_j for j = 2 .. k-2 bound growing discs
        yield f"double-wheel-{k}", dw, [(k, 0, k + 1, j) for j in range(2, 2 + rings)], 1


def chain_is_nested(g: RotationGraph, chain: Sequence[Sequence[int]], ref: int) -> bool:
    """The sides of the chain cycles that contain ``ref`` are totally ordered by inclusion."""
    discs = []
    for c in chain:
        sc = separating_cycle(g, c)
        if sc is None:
            return False
        discs.append(sc.side_a if ref in sc.side_a else sc.side_b)
    discs.sort(key=len)
    return all(a < b for a, b in zip(discs, discs[1:]))


def suite_nested_count(rings: Iterable[int] = (3, 4, 5), **_) -> SuiteResult:
    res = SuiteResult("nested-count")
    for name, g, chain, ref in chain_instances(rings):
        res.checked += 1
        t = len(chain) - 1
        if not chain_is_nested(g, chain, ref):
            res.fail(g, instance=name, claim="chain cycles are not nested separating cycles")
            continue
        hc = count_hamiltonian_cycles(g)
        res.notes[name] = {"n": g.n, "t": t, "hc_count": hc, "bound": nested_chain_bound(t)}
        if hc < nested_chain_bound(t):
            res.fail(g, instance=name, hc_count=hc, bound=nested_chain_bound(t))
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "edge-deletion": suite_edge_deletion,
    "uw-paths": suite_uw_paths,
    "uv-paths": suite_uv_paths,
    "degree4-pair": suite_degree4_pair,
    "link-size": suite_link_size,
    "edge-link": suite_edge_link,
    "cycle-intersection": suite_cycle_intersection,
    "nested-paths": suite_nested_paths,
    "nested-count": suite_nested_count,
    "cofacial": suite_cofacial,
}


def run_suite(name: str, **kwargs) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return fn(**kwargs)
