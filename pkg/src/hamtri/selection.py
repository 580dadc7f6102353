"""Independent sets of low-degree vertices, saturation tests, links and edge selections.

An independent set S *saturates* a 4- or 5-cycle when two of its members lie
on it, and a diamond-6-cycle when it holds three of the pattern's crucial
vertices.  The link ``A_u`` of a vertex of degree at most 6 is the edge set of
its neighbourhood cycle (degree 4) or the incident edges whose deletion keeps
the graph 4-connected (degree 5 or 6).
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import prod
from typing import Iterable, Iterator, Optional, Union

from .analysis import bits, delete_edges, find_diamonds, minimum_vertex_cut, vertex_connectivity
from .embed import Edge, RotationGraph, edge
from .errors import DegreeTooHighError, PreconditionFailed

log = logging.getLogger(__name__)

TARGETS = ("4cycle", "5cycle", "diamond6")
EXACT_LIMIT = 12
SELECTION_LIMIT = 1000


@dataclass(frozen=True)
class CandidateSet:
    """Pairwise non-adjacent vertices, each of degree at most ``max_degree``."""

    vertices: frozenset[int]
    max_degree: int = 6

    @classmethod
    def of(cls, g: RotationGraph, vertices: Iterable[int], max_degree: int = 6) -> "CandidateSet":
        vs = frozenset(vertices)
        for v in vs:
            if g.degree(v) > max_degree:
                raise ValueError(f"vertex {v} has degree {g.degree(v)} > {max_degree}")
        for a, b in combinations(sorted(vs), 2):
            if g.has_edge(a, b):
                raise ValueError(f"{a} and {b} are adjacent")
        return cls(vs, max_degree)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.vertices))

    def __contains__(self, v: object) -> bool:
        return v in self.vertices


@dataclass(frozen=True)
class LinkSet:
    vertex: int
    edges: frozenset[Edge]
    rule: str  # "neighborhood-edges" or "deletion-safe"

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class EdgeSelection:
    """At most one link edge per member of the source set.

    ``per_link`` lists ``(u, chosen edge or None)`` in increasing ``u``.
    """

    edges: frozenset[Edge]
    per_link: tuple[tuple[int, Optional[Edge]], ...] = ()

    @property
    def by_vertex(self) -> dict[int, Optional[Edge]]:
        return dict(self.per_link)


# -- independent sets -------------------------------------------------------------


def _max_independent(masks, cand: int) -> int:
    """Maximum independent subset of ``cand``; ties go to the lexicographically first."""
    best = 0

    def grow(chosen: int, rest: int) -> None:
        nonlocal best
        if chosen.bit_count() + rest.bit_count() <= best.bit_count():
            return
        if not rest:
            best = chosen
            return
        v = (rest & -rest).bit_length() - 1
        grow(chosen | 1 << v, rest & ~(1 << v) & ~masks[v])
        grow(chosen, rest & ~(1 << v))

    grow(0, cand)
    return best


def low_degree_independent_set(
    g: RotationGraph, max_degree: int = 6, exclude: Iterable[int] = ()
) -> CandidateSet:
    """Independent set among vertices of degree <= ``max_degree`` outside ``exclude``.

    Exact maximum for n <= 12 (lexicographically first among maxima), greedy
    by (degree, id) above that; the greedy result is still inclusion-maximal.
    """
    excl = set(exclude)
    cand = [v for v in range(g.n) if g.degree(v) <= max_degree and v not in excl]
    if g.n <= EXACT_LIMIT:
        mask = 0
        for v in cand:
            mask |= 1 << v
        return CandidateSet(frozenset(bits(_max_independent(g.masks, mask))), max_degree)
    chosen: set[int] = set()
    for v in sorted(cand, key=lambda v: (g.degree(v), v)):
        if not g.adj[v] & chosen:
            chosen.add(v)
    return CandidateSet(frozenset(chosen), max_degree)


# -- saturation -----------------------------------------------------------------------


def _rooted(cycle: tuple[int, ...]) -> tuple[int, ...]:
    i = cycle.index(min(cycle))
    c = cycle[i:] + cycle[:i]
    return c if c[1] < c[-1] else (c[0],) + tuple(reversed(c[1:]))


def _four_cycle_through(g: RotationGraph, u: int, w: int) -> Optional[tuple[int, ...]]:
    common = sorted(g.adj[u] & g.adj[w] - {u, w})
    if len(common) >= 2:
        return _rooted((u, common[0], w, common[1]))
    return None


def _five_cycle_through(g: RotationGraph, u: int, w: int) -> Optional[tuple[int, ...]]:
    found = []
    if g.has_edge(u, w):
        # u w a b c
        for a in g.adj[w] - {u}:
            for b in g.adj[a] - {u, w}:
                for c in g.adj[b] & g.adj[u] - {w, a}:
                    found.append(_rooted((u, w, a, b, c)))
    else:
        for a in g.adj[u] & g.adj[w]:
            for b in g.adj[w] - {u, a}:
                for c in g.adj[b] & g.adj[u] - {w, a}:
                    found.append(_rooted((u, a, w, b, c)))
    return min(found) if found else None


def saturates(g: RotationGraph, s: Union[CandidateSet, Iterable[int]], target: str):
    """A cycle or diamond saturated by ``s``, or ``None``.

    Witnesses are rooted cycles for ``"4cycle"``/``"5cycle"`` and a
    :class:`~hamtri.analysis.DiamondMatch` for ``"diamond6"``; the smallest
    one is returned so results are reproducible.
    """
    members = sorted(s)
    if target == "4cycle":
        hits = [_four_cycle_through(g, a, b) for a, b in combinations(members, 2)]
    elif target == "5cycle":
        hits = [_five_cycle_through(g, a, b) for a, b in combinations(members, 2)]
    elif target == "diamond6":
        if len(members) < 3:
            return None
        sset = set(members)
        for m in find_diamonds(g, "d6"):
            if len(m.crucial & sset) >= 3:
                return m
        return None
    else:
        raise ValueError(f"unknown saturation target {target!r}")
    hits = [h for h in hits if h is not None]
    return min(hits) if hits else None


# -- refinement --------------------------------------------------------------------


@dataclass(frozen=True)
class Branch:
    """Outcome of :func:`refine_saturation_free`.

    Branch ``"A"`` carries a pair ``(v, x)`` and their common neighbours in I;
    branch ``"B"`` carries the saturation-free subset ``S``.  ``ratios`` are
    observed sizes relative to ``|I|`` (report only).
    """

    kind: str
    pair: Optional[tuple[int, int]] = None
    common: frozenset[int] = frozenset()
    subset: Optional[CandidateSet] = None
    ratios: dict = field(default_factory=dict, compare=False)


def common_neighbour_pairs(g: RotationGraph, members: Iterable[int], t: int) -> Iterator[tuple[int, int, frozenset[int]]]:
    """Pairs ``v < x`` with at least ``t`` common neighbours in ``members``."""
    iset = set(members)
    for v in range(g.n):
        for x in range(v + 1, g.n):
            common = g.adj[v] & g.adj[x] & iset
            if len(common) >= t:
                yield v, x, frozenset(common)


def _members_on(witness, sset: set[int]) -> list[int]:
    verts = witness.crucial if hasattr(witness, "crucial") else witness
    return sorted(set(verts) & sset)


def saturation_free_subset(g: RotationGraph, i: CandidateSet) -> tuple[CandidateSet, dict]:
    """Greedy subset saturating no 4-cycle, then no 5-cycle, then no diamond-6-cycle.

    Each saturated witness loses its largest member from the set; the smallest
    one stays.  Returns the subset and the sizes after each stage.
    """
    sset = set(i.vertices)
    sizes = {"I": len(sset)}
    for target in TARGETS:
        while True:
            w = saturates(g, sset, target)
            if w is None:
                break
            sset.discard(_members_on(w, sset)[-1])
        sizes[target] = len(sset)
    return CandidateSet(frozenset(sset), i.max_degree), sizes


def refine_saturation_free(g: RotationGraph, i: CandidateSet, t: int = 7) -> Branch:
    """Branch A (two vertices with >= t common neighbours in I) when it exists, else B."""
    for v, x, common in common_neighbour_pairs(g, i.vertices, t):
        return Branch("A", (v, x), common, ratios={"common_over_I": len(common) / max(1, len(i))})
    s, sizes = saturation_free_subset(g, i)
    base = max(1, sizes["I"])
    ratios = {
        "S1_over_I": sizes["4cycle"] / base,
        "S_over_S1": sizes["diamond6"] / max(1, sizes["4cycle"]),
        "S_over_I": sizes["diamond6"] / base,
    }
    return Branch("B", subset=s, ratios=ratios)


# -- links and selections ---------------------------------------------------------------


@lru_cache(maxsize=65536)
def _deletion_keeps_4c(masks: tuple[int, ...], e: Edge) -> bool:
    u, v = e
    m = list(masks)
    m[u] &= ~(1 << v)
    m[v] &= ~(1 << u)
    return vertex_connectivity(tuple(m), upto=4) >= 4


def link(g: RotationGraph, u: int, avoid: Iterable[int] = ()) -> LinkSet:
    """The link ``A_u``; edges touching a vertex of ``avoid`` are filtered out."""
    d = g.degree(u)
    if d > 6:
        raise DegreeTooHighError(f"vertex {u} has degree {d} > 6")
    if d == 4:
        nb = g.adj[u]
        edges = {edge(a, b) for a in nb for b in g.adj[a] & nb}
        rule = "neighborhood-edges"
    else:
        edges = {edge(u, w) for w in g.rot[u] if _deletion_keeps_4c(g.masks, edge(u, w))}
        rule = "deletion-safe"
    gone = set(avoid)
    if gone:
        edges = {e for e in edges if not (e[0] in gone or e[1] in gone)}
    return LinkSet(u, frozenset(edges), rule)


def check_selection_hypotheses(g: RotationGraph, s: CandidateSet) -> dict[int, LinkSet]:
    """Raise :class:`PreconditionFailed` unless ``s`` meets every edge-selection hypothesis."""
    kappa = vertex_connectivity(g, upto=4)
    if kappa < 4:
        raise PreconditionFailed("graph is not 4-connected", minimum_vertex_cut(g, upto=4))
    members = sorted(s)
    for a, b in combinations(members, 2):
        if g.has_edge(a, b):
            raise PreconditionFailed("set is not independent", (a, b))
    for u in members:
        if g.degree(u) > 6:
            raise PreconditionFailed("member degree exceeds 6", u)
    for target in TARGETS:
        w = saturates(g, members, target)
        if w is not None:
            raise PreconditionFailed(f"saturates a {target}", w)
    for u in members:
        if g.degree(u) == 4:
            for w in sorted(g.adj[u]):
                if g.degree(w) == 4:
                    raise PreconditionFailed("degree-4 member has a degree-4 neighbour", (u, w))
    links = {u: link(g, u) for u in members}
    for u, a in links.items():
        if not a.edges:
            raise PreconditionFailed("empty link", u)
    return links


def count_selections(links: dict[int, LinkSet]) -> int:
    return prod(len(a) + 1 for a in links.values())


def _selection(order, choices, links) -> Optional[EdgeSelection]:
    picked = [c for c in choices if c is not None]
    fset = frozenset(picked)
    if len(fset) != len(picked):
        return None
    for a in links.values():
        if len(fset & a.edges) > 1:
            return None
    return EdgeSelection(fset, tuple(zip(order, choices)))


def admissible_selections(
    g: RotationGraph,
    s: CandidateSet,
    seed: Optional[int] = None,
    limit: int = SELECTION_LIMIT,
    check: bool = True,
) -> Iterator[EdgeSelection]:
    """Edge sets F with at most one edge from each link.

    Every selection is produced when there are at most ``limit`` of them;
    otherwise ``limit`` distinct selections are drawn with ``random.Random(seed)``.
    Choices that would put two edges into one link (possible only if links
    overlap) are skipped.
    """
    links = check_selection_hypotheses(g, s) if check else {u: link(g, u) for u in sorted(s)}
    order = sorted(links)
    options = [[None] + sorted(links[u].edges) for u in order]
    total = count_selections(links)
    if total <= limit:
        choice_iter: Iterable = product(*options)
    else:
        rng = random.Random(seed)
        picks = sorted(rng.sample(range(total), limit))

        def decode(idx):
            out = []
            for opts in reversed(options):
                idx, r = divmod(idx, len(opts))
                out.append(opts[r])
            return tuple(reversed(out))

        choice_iter = (decode(i) for i in picks)
    for choices in choice_iter:
        sel = _selection(order, choices, links)
        if sel is not None:
            yield sel


@dataclass(frozen=True)
class ConnectivityCheck:
    """Truthy when G - F is 4-connected; otherwise ``cut`` is a separating set."""

    ok: bool
    cut: Optional[frozenset[int]] = None

    def __bool__(self) -> bool:
        return self.ok


def preserves_4_connectivity(g: RotationGraph, f: Union[EdgeSelection, Iterable[Edge]]) -> ConnectivityCheck:
    edges = f.edges if isinstance(f, EdgeSelection) else frozenset(edge(*e) for e in f)
    cut = minimum_vertex_cut(delete_edges(g, edges), upto=4)
    if cut is not None:
        log.warning("G - F not 4-connected: F=%s cut=%s", sorted(edges), sorted(cut))
        return ConnectivityCheck(False, cut)
    return ConnectivityCheck(True)


__all__ = [
    "Branch",
    "CandidateSet",
    "ConnectivityCheck",
    "EdgeSelection",
    "LinkSet",
    "admissible_selections",
    "check_selection_hypotheses",
    "common_neighbour_pairs",
    "count_selections",
    "link",
    "low_degree_independent_set",
    "preserves_4_connectivity",
    "refine_saturation_free",
    "saturates",
    "saturation_free_subset",
]
