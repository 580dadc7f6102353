"""Structural predicates and surgery on plane triangulations.

Connectivity is decided by exhaustive search over small vertex subsets; at the
sizes this package targets (n <= 16) that is cheap and easy to audit.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from importlib import resources
from itertools import combinations
from typing import Iterator, Optional, Sequence, Union

from .embed import (
    NearTriangulation,
    RotationGraph,
    check_cycle,
    closed_region,
    cycle_edges,
    edge,
    from_rotation_system,
    left_faces,
    resolve_side,
    side_interior,
    validate_triangulation,
)
from .errors import (
    EmptyInteriorError,
    FixtureInvalidError,
    FixtureMissingError,
    NotACycleError,
    NotAnEdgeError,
    NotContractibleError,
)

Adjacency = Union[RotationGraph, Sequence[int]]


def _masks(g: Adjacency) -> tuple[int, ...]:
    if isinstance(g, RotationGraph):
        return g.masks
    return tuple(g)


def adjacency_masks(n: int, edges) -> tuple[int, ...]:
    masks = [0] * n
    for u, v in edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return tuple(masks)


def delete_edges(g: RotationGraph, edges) -> tuple[int, ...]:
    """Adjacency masks of ``g`` with ``edges`` removed."""
    masks = list(g.masks)
    for u, v in edges:
        masks[u] &= ~(1 << v)
        masks[v] &= ~(1 << u)
    return tuple(masks)


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def reach(masks: Sequence[int], start: int, alive: int) -> int:
    """Mask of vertices reachable from ``start`` inside ``alive``."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nb = 0
        for v in bits(frontier):
            nb |= masks[v]
        frontier = nb & alive & ~seen
        seen |= frontier
    return seen


def is_connected(masks: Sequence[int], alive: int) -> bool:
    if not alive:
        return True
    start = (alive & -alive).bit_length() - 1
    return reach(masks, start, alive) == alive


def components(masks: Sequence[int], alive: int) -> list[frozenset[int]]:
    out = []
    while alive:
        start = (alive & -alive).bit_length() - 1
        comp = reach(masks, start, alive)
        out.append(frozenset(bits(comp)))
        alive &= ~comp
    return out


# -- connectivity ---------------------------------------------------------------


def minimum_vertex_cut(g: Adjacency, upto: Optional[int] = None) -> Optional[frozenset[int]]:
    """Smallest vertex set whose removal disconnects the graph.

    Only sets of size ``< upto`` are tried when ``upto`` is given.  Returns
    ``None`` when no such set exists (complete graphs have none at all).
    """
    masks = _masks(g)
    n = len(masks)
    full = (1 << n) - 1
    top = n - 2 if upto is None else min(upto - 1, n - 2)
    for k in range(0, top + 1):
        for cut in combinations(range(n), k):
            alive = full
            for v in cut:
                alive &= ~(1 << v)
            if not is_connected(masks, alive):
                return frozenset(cut)
    return None


def vertex_connectivity(g: Adjacency, upto: Optional[int] = None) -> int:
    """Exact vertex connectivity, or ``min(kappa, upto)`` when capped.

    Follows the convention that a k-connected graph has more than k
    vertices, so the complete graph on n vertices has connectivity n-1.
    """
    n = len(_masks(g))
    cut = minimum_vertex_cut(g, upto)
    if cut is not None:
        return len(cut)
    kappa = n - 1
    return kappa if upto is None else min(kappa, upto)


def is_k_connected(g: Adjacency, k: int) -> bool:
    return vertex_connectivity(g, upto=k) >= k


# -- cycles ---------------------------------------------------------------------


def cycles_of_length(g: Adjacency, length: int) -> Iterator[tuple[int, ...]]:
    """Every simple cycle with ``length`` vertices, once each.

    Cycles come out in canonical rotation: smallest vertex first, second
    vertex smaller than the last.
    """
    masks = _masks(g)
    n = len(masks)

    def extend(path, used):
        last = path[-1]
        if len(path) == length:
            if masks[last] >> path[0] & 1 and path[1] < last:
                yield tuple(path)
            return
        for w in bits(masks[last] & ~used):
            if w > path[0]:
                path.append(w)
                yield from extend(path, used | 1 << w)
                path.pop()

    for s in range(n):
        yield from extend([s], 1 << s)


@dataclass(frozen=True)
class SeparatingCycle:
    """A cycle whose deletion disconnects the graph.

    ``side_a`` and ``side_b`` are the interior vertex sets of the two discs;
    ``side_b`` is the side holding the smallest vertex id off the cycle.
    ``components`` are the components of ``G - V(cycle)``.
    """

    cycle: tuple[int, ...]
    side_a: frozenset[int]
    side_b: frozenset[int]
    components: tuple[frozenset[int], ...]
    graph: RotationGraph = field(repr=False, compare=False)
    a_is_left: bool = field(default=True, repr=False)

    def side(self, which: str = "a") -> str:
        """Orientation keyword selecting side ``which`` of the cycle."""
        left = self.a_is_left if which == "a" else not self.a_is_left
        return "left" if left else "right"

    def closed_region(self, which: str = "a") -> NearTriangulation:
        return closed_region(self.graph, self.cycle, self.side(which))

    @cached_property
    def region(self) -> NearTriangulation:
        """The closed disc on side ``a``."""
        return self.closed_region("a")


def cycle_sides(g: RotationGraph, cycle: Sequence[int]) -> tuple[set[int], set[int]]:
    """Interior vertex sets left and right of ``cycle``."""
    cycle = tuple(cycle)
    left = side_interior(g, cycle, left_faces(g, cycle))
    rest = set(range(g.n)) - set(cycle) - left
    return left, rest


def separating_cycle(g: RotationGraph, cycle: Sequence[int]) -> Optional[SeparatingCycle]:
    cycle = check_cycle(g, cycle)
    alive = (1 << g.n) - 1
    for v in cycle:
        alive &= ~(1 << v)
    comps = components(g.masks, alive)
    if len(comps) < 2:
        return None
    left, right = cycle_sides(g, cycle)
    pivot = min(left | right)
    if pivot in left:
        return SeparatingCycle(cycle, frozenset(right), frozenset(left), tuple(comps), g, False)
    return SeparatingCycle(cycle, frozenset(left), frozenset(right), tuple(comps), g, True)


def separating_cycles(g: RotationGraph, length: int) -> list[SeparatingCycle]:
    """All separating cycles with ``length`` vertices (3, 4 or 5)."""
    if length not in (3, 4, 5):
        raise ValueError("length must be 3, 4 or 5")
    out = []
    for c in cycles_of_length(g, length):
        sc = separating_cycle(g, c)
        if sc is not None:
            out.append(sc)
    return out


def has_separating_triangle(g: Adjacency) -> bool:
    masks = _masks(g)
    n = len(masks)
    for u in range(n):
        for v in bits(masks[u]):
            if v <= u:
                continue
            for w in bits(masks[u] & masks[v]):
                if w <= v:
                    continue
                alive = ((1 << n) - 1) & ~(1 << u | 1 << v | 1 << w)
                if not is_connected(masks, alive):
                    return True
    return False


def degree4_min_distance(g: RotationGraph) -> float:
    """Smallest distance between two degree-4 vertices (``inf`` if < 2)."""
    deg4 = [v for v in range(g.n) if g.degree(v) == 4]
    best = math.inf
    targets = set(deg4)
    for s in deg4:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            if dist[x] >= best:
                break
            for y in g.rot[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        for t in targets:
            if t != s and t in dist:
                best = min(best, dist[t])
    return best


# -- contraction ----------------------------------------------------------------


@dataclass(frozen=True)
class ContractionResult:
    graph: RotationGraph
    new_vertex: int
    vmap: dict[int, int]
    # kappa >= 4 re-checked when a 4-cycle interior of a 4-connected graph is contracted
    four_connected: Optional[bool] = None


def _finish(rot: dict[int, list[int]], merged: set[int], z: int) -> ContractionResult:
    keep = sorted(v for v in rot if v != z)
    new = {v: i for i, v in enumerate(keep)}
    new[z] = len(keep)
    out: list[tuple[int, ...]] = [()] * (len(keep) + 1)
    for v, r in rot.items():
        out[new[v]] = tuple(new[w] for w in r)
    graph = from_rotation_system(out)
    vmap = {v: new[v] for v in keep}
    vmap.update({v: new[z] for v in merged})
    return ContractionResult(graph, new[z], dict(sorted(vmap.items())))


def contract_interior(
    g: RotationGraph, d: Union[SeparatingCycle, Sequence[int]], side="a"
) -> ContractionResult:
    """Replace the interior on one side of ``d`` by a single vertex.

    ``side`` is ``"a"``/``"b"`` for a :class:`SeparatingCycle`, otherwise any
    side designation accepted by :func:`closed_region`.  The new vertex is
    adjacent to every cycle vertex and nothing else.
    """
    if isinstance(d, SeparatingCycle):
        cycle, orient = d.cycle, d.side(side)
    else:
        cycle, orient = check_cycle(g, d), side
    cyc = resolve_side(g, cycle, orient)
    interior = side_interior(g, cyc, left_faces(g, cyc))
    if not interior:
        raise EmptyInteriorError(f"no vertices inside {tuple(cycle)} on side {side!r}")
    k = len(cyc)
    z = g.n
    rot: dict[int, list[int]] = {}
    for i, c in enumerate(cyc):
        nxt, prv = cyc[(i + 1) % k], cyc[i - 1]
        r = list(g.rot[c])
        j = r.index(nxt)
        r = r[j:] + r[:j]
        stop = r.index(prv)
        arc = r[1:stop]
        if any(w not in interior for w in arc):
            raise NotContractibleError(f"chord inside {tuple(cycle)} at {c}")
        rot[c] = [nxt, z] + r[stop:]
    for v in range(g.n):
        if v not in interior and v not in rot:
            rot[v] = list(g.rot[v])
    rot[z] = list(cyc)
    res = _finish(rot, interior, z)
    four = None
    if k == 4 and is_k_connected(g, 4):
        four = is_k_connected(res.graph, 4)
    return ContractionResult(res.graph, res.new_vertex, res.vmap, four)


def _dedupe_cyclic(seq: list[int]) -> list[int]:
    out: list[int] = []
    for x in seq:
        if not out or out[-1] != x:
            out.append(x)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def contract_edge(g: RotationGraph, e: Sequence[int]) -> ContractionResult:
    """Contract edge ``e`` of a triangulation into a single new vertex."""
    u, v = e
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise NotAnEdgeError(f"{u}-{v} is not an edge")
    z = g.n
    ru = list(g.rot[u])
    i = ru.index(v)
    rv = list(g.rot[v])
    j = rv.index(u)
    merged = ru[i + 1:] + ru[:i] + rv[j + 1:] + rv[:j]
    rot: dict[int, list[int]] = {z: _dedupe_cyclic(merged)}
    for w in range(g.n):
        if w in (u, v):
            continue
        r = [z if x in (u, v) else x for x in g.rot[w]]
        rot[w] = _dedupe_cyclic(r) if (u in g.adj[w] and v in g.adj[w]) else r
    for w, r in rot.items():
        if len(set(r)) != len(r):
            raise NotContractibleError(f"contracting {u}-{v} creates a parallel edge at {w}")
    return _finish(rot, {u, v}, z)


# -- diamond patterns -------------------------------------------------------------


@dataclass(frozen=True)
class Pattern:
    name: str
    n: int
    edges: tuple[tuple[int, int], ...]
    crucial: frozenset[int]

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return adjacency_masks(self.n, self.edges)

    def degree(self, v: int) -> int:
        return self.masks[v].bit_count()


def parse_patterns(text: str) -> dict[str, Pattern]:
    """Parse the plain-text pattern fixture (see ``data/diamonds.txt``)."""
    out = {}
    cur: dict = {}

    def flush():
        if cur:
            p = Pattern(cur["name"], cur["n"], tuple(cur["edges"]), frozenset(cur["crucial"]))
            out[p.name] = p

    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        if key == "pattern":
            flush()
            cur = {"name": rest.strip(), "n": 0, "edges": [], "crucial": []}
        elif key == "vertices":
            cur["n"] = int(rest)
        elif key == "edges":
            for tok in rest.split():
                a, b = tok.split("-")
                cur["edges"].append(edge(int(a), int(b)))
        elif key == "crucial":
            cur["crucial"] = [int(x) for x in rest.split()]
        else:
            raise FixtureInvalidError(f"unknown fixture line: {raw!r}")
    flush()
    for p in out.values():
        _check_pattern(p)
    return out


def _check_pattern(p: Pattern) -> None:
    if any(not (0 <= a < p.n and 0 <= b < p.n and a != b) for a, b in p.edges):
        raise FixtureInvalidError(f"{p.name}: edge outside vertex range")
    if len(set(p.edges)) != len(p.edges):
        raise FixtureInvalidError(f"{p.name}: repeated edge")
    if any(p.degree(c) != 3 for c in p.crucial):
        raise FixtureInvalidError(f"{p.name}: crucial vertices must have degree 3")
    if p.name == "d6":
        deg3 = {v for v in range(p.n) if p.degree(v) == 3}
        if deg3 != set(p.crucial):
            raise FixtureInvalidError("d6: crucial vertices are exactly the degree-3 vertices")
    if p.name == "d4":
        low = [v for v in range(p.n) if p.degree(v) == 2]
        if len(low) != 1:
            raise FixtureInvalidError("d4: needs exactly one degree-2 vertex")
        far = {v for v in range(p.n) if p.degree(v) == 3 and not p.masks[low[0]] >> v & 1}
        if far != set(p.crucial):
            raise FixtureInvalidError("d4: crucial = degree-3 vertices not next to the degree-2 vertex")


@lru_cache(maxsize=None)
def load_patterns(path: Optional[str] = None) -> dict[str, Pattern]:
    try:
        if path is None:
            text = resources.files("hamtri").joinpath("data/diamonds.txt").read_text()
        else:
            with open(path) as fh:
                text = fh.read()
    except (FileNotFoundError, OSError) as exc:
        raise FixtureMissingError(f"diamond fixture not found: {exc}") from exc
    return parse_patterns(text)


@dataclass(frozen=True)
class DiamondMatch:
    pattern: str
    image: tuple[int, ...]  # image[i] = G-vertex for pattern vertex i
    crucial: frozenset[int]


def monomorphisms(pattern_masks: Sequence[int], masks: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Injective, edge-preserving maps from the pattern into the graph."""
    k = len(pattern_masks)
    n = len(masks)
    # match in BFS order so each new vertex has a mapped neighbour
    order = [0]
    seen = {0}
    i = 0
    while len(order) < k:
        if i < len(order):
            for w in bits(pattern_masks[order[i]]):
                if w not in seen:
                    seen.add(w)
                    order.append(w)
            i += 1
        else:
            rest = min(set(range(k)) - seen)
            seen.add(rest)
            order.append(rest)
    pdeg = [m.bit_count() for m in pattern_masks]
    gdeg = [m.bit_count() for m in masks]
    image = [-1] * k

    def place(idx, used):
        if idx == k:
            yield tuple(image)
            return
        p = order[idx]
        cand = (1 << n) - 1
        for q in bits(pattern_masks[p]):
            if image[q] >= 0:
                cand &= masks[image[q]]
        for v in bits(cand & ~used):
            if gdeg[v] >= pdeg[p]:
                image[p] = v
                yield from place(idx + 1, used | 1 << v)
        image[p] = -1

    yield from place(0, 0)


def find_diamonds(g: RotationGraph, pattern: str, fixture: Optional[str] = None) -> list[DiamondMatch]:
    """All copies of a diamond pattern in ``g``, one per pattern automorphism class.

    Two embeddings that differ by a pattern automorphism share an image edge
    set; the lexicographically smallest image represents the class.
    """
    p = load_patterns(fixture)[pattern]
    return list(_find_cached(g, p))


@lru_cache(maxsize=4096)
def _find_cached(g: RotationGraph, p: Pattern) -> tuple[DiamondMatch, ...]:
    if g.n < p.n:
        return ()
    best: dict[frozenset, tuple[int, ...]] = {}
    for img in monomorphisms(p.masks, g.masks):
        key = frozenset(edge(img[a], img[b]) for a, b in p.edges)
        if key not in best or img < best[key]:
            best[key] = img
    out = [
        DiamondMatch(p.name, img, frozenset(img[c] for c in p.crucial))
        for img in best.values()
    ]
    return tuple(sorted(out, key=lambda m: m.image))


__all__ = [
    "ContractionResult",
    "DiamondMatch",
    "SeparatingCycle",
    "components",
    "contract_edge",
    "contract_interior",
    "cycles_of_length",
    "degree4_min_distance",
    "delete_edges",
    "find_diamonds",
    "has_separating_triangle",
    "is_connected",
    "is_k_connected",
    "load_patterns",
    "minimum_vertex_cut",
    "separating_cycle",
    "separating_cycles",
    "validate_triangulation",
    "vertex_connectivity",
]
