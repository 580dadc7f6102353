"""Hamiltonian cycles and paths, bridges, and Tutte-cycle certification.

Cycles are undirected and unrooted.  A cycle is reported in its canonical
rotation: it starts at its smallest vertex and the second vertex is smaller
than the last, which is the lexicographic minimum over all rotations and both
directions.  The search works on adjacency bitmasks, so it runs equally on a
plane graph or on the masks of an edge-deleted subgraph.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence, Union

from .analysis import Adjacency, _masks, bits, components, is_connected, reach, vertex_connectivity
from .embed import Edge, NearTriangulation, RotationGraph, cycle_edges, edge
from .errors import (
    BadEndpointsError,
    ContradictoryConstraintsError,
    NotCircuitGraphError,
    SearchExhaustedError,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class CycleWitness:
    vertices: tuple[int, ...]

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(cycle_edges(self.vertices))

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True, order=True)
class PathWitness:
    vertices: tuple[int, ...]

    @property
    def edges(self) -> frozenset[Edge]:
        v = self.vertices
        return frozenset(edge(v[i], v[i + 1]) for i in range(len(v) - 1))

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]


def canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    c = tuple(cycle)
    i = c.index(min(c))
    c = c[i:] + c[:i]
    if len(c) > 2 and c[1] > c[-1]:
        c = (c[0],) + tuple(reversed(c[1:]))
    return c


def _constraints(masks, required, forbidden):
    n = len(masks)
    req = [0] * n
    m = list(masks)
    rset = {edge(*e) for e in required}
    fset = {edge(*e) for e in forbidden}
    if rset & fset:
        raise ContradictoryConstraintsError(f"edges both required and forbidden: {sorted(rset & fset)}")
    for u, v in rset:
        if not (0 <= u < n and 0 <= v < n) or not masks[u] >> v & 1:
            raise ContradictoryConstraintsError(f"required edge {u}-{v} is not in the graph")
        req[u] |= 1 << v
        req[v] |= 1 << u
    for u, v in fset:
        if 0 <= u < n and 0 <= v < n:
            m[u] &= ~(1 << v)
            m[v] &= ~(1 << u)
    return m, req


def _cycle_search(masks, alive: int, req, limit: Optional[int], emit: bool):
    """Depth-first search for Hamiltonian cycles of the subgraph on ``alive``.

    Yields each canonical cycle (as a tuple) when ``emit`` is set, or ``None``
    placeholders otherwise, so counting avoids building tuples.
    """
    if alive.bit_count() < 3:
        return
    if any(req[v].bit_count() > 2 for v in bits(alive)):
        return
    m = [masks[v] & alive for v in range(len(masks))]
    if any(m[v].bit_count() < 2 for v in bits(alive)):
        return
    if not is_connected(m, alive):
        return
    s = (alive & -alive).bit_length() - 1
    path = [s]
    found = 0
    full = alive

    def ok_to_leave(x: int, prev: int, nxt: int) -> bool:
        return not (req[x] & ~(1 << prev | 1 << nxt))

    def dfs(last: int, visited: int):
        nonlocal found
        if visited == full:
            if m[last] >> s & 1 and path[1] < last:
                if not req[s] & ~(1 << path[1] | 1 << last) and ok_to_leave(last, path[-2], s):
                    found += 1
                    yield tuple(path) if emit else None
            return
        unvisited = full & ~visited
        prev = path[-2] if len(path) > 1 else -1
        forced = req[last] & unvisited if last != s else 0
        if last != s and req[last] & ~(1 << prev) & visited & ~(1 << s):
            return
        cand = m[last] & unvisited
        if forced:
            cand &= forced
        for w in bits(cand):
            if last != s and not ok_to_leave(last, prev, w):
                continue
            # req partners of w that are already interior to the path are lost
            if req[w] & visited & ~(1 << last | 1 << s):
                continue
            rest = unvisited & ~(1 << w)
            ends = rest | 1 << w | 1 << s
            dead = False
            if last != s:
                for x in bits(m[last] & rest):
                    if (m[x] & ends).bit_count() < 2:
                        dead = True
                        break
            if dead:
                continue
            if rest and not m[w] & rest:
                continue
            if rest.bit_count() > 3 and reach(m, w, rest | 1 << w) != rest | 1 << w:
                continue
            path.append(w)
            yield from dfs(w, visited | 1 << w)
            path.pop()
            if limit is not None and found >= limit:
                return

    yield from dfs(s, 1 << s)


def _alive_mask(n: int, delete: Iterable[int]) -> int:
    alive = (1 << n) - 1
    for v in delete:
        alive &= ~(1 << v)
    return alive


def enumerate_hamiltonian_cycles(
    g: Adjacency,
    required: Iterable[Sequence[int]] = (),
    forbidden: Iterable[Sequence[int]] = (),
    limit: Optional[int] = None,
    delete: Iterable[int] = (),
) -> list[CycleWitness]:
    """Hamiltonian cycles through every ``required`` edge and no ``forbidden`` one.

    ``delete`` removes vertices first (the cycles span the rest).  Output is
    sorted by canonical rotation when complete; with ``limit`` the first
    cycles in search order are returned.
    """
    masks = _masks(g)
    m, req = _constraints(masks, required, forbidden)
    alive = _alive_mask(len(masks), delete)
    for v in range(len(masks)):
        if req[v] and not alive >> v & 1:
            return []
    out = [CycleWitness(c) for c in _cycle_search(m, alive, req, limit, True)]
    return out if limit is not None else sorted(out)


def count_hamiltonian_cycles(
    g: Adjacency,
    required: Iterable[Sequence[int]] = (),
    forbidden: Iterable[Sequence[int]] = (),
    delete: Iterable[int] = (),
    limit: Optional[int] = None,
) -> int:
    masks = _masks(g)
    m, req = _constraints(masks, required, forbidden)
    alive = _alive_mask(len(masks), delete)
    for v in range(len(masks)):
        if req[v] and not alive >> v & 1:
            return 0
    return sum(1 for _ in _cycle_search(m, alive, req, limit, False))


def count_hamiltonian_cycles_dp(g: Adjacency) -> int:
    """Independent count by dynamic programming over vertex subsets."""
    masks = _masks(g)
    n = len(masks)
    if n < 3:
        return 0
    # paths from vertex 0 over subsets of 1..n-1
    size = 1 << (n - 1)
    table = [[0] * n for _ in range(size)]
    for v in bits(masks[0]):
        table[1 << (v - 1)][v] = 1
    for sub in range(1, size):
        row = table[sub]
        for v in range(1, n):
            c = row[v]
            if not c:
                continue
            for w in bits(masks[v] & ~(sub << 1) & ~1):
                table[sub | 1 << (w - 1)][w] += c
    total = sum(table[size - 1][v] for v in bits(masks[0]))
    return total // 2


# -- paths --------------------------------------------------------------------------


def _path_search(m, alive: int, a: int, b: int, limit: Optional[int]) -> Iterator[tuple[int, ...]]:
    full = alive
    path = [a]
    found = 0
    if not (alive >> a & 1 and alive >> b & 1):
        return
    if a == b:
        return

    def dfs(last: int, visited: int):
        nonlocal found
        if visited == full:
            if last == b:
                found += 1
                yield tuple(path)
            return
        if last == b:
            return
        rest = full & ~visited
        for w in bits(m[last] & rest):
            if w == b and rest != 1 << b:
                continue
            nr = rest & ~(1 << w)
            if nr and reach(m, b, nr) != nr:
                continue
            path.append(w)
            yield from dfs(w, visited | 1 << w)
            path.pop()
            if limit is not None and found >= limit:
                return

    yield from dfs(a, 1 << a)


def iter_hamiltonian_paths(
    g: Adjacency, a: int, b: int, delete: Iterable[int] = ()
) -> Iterator[PathWitness]:
    """Lazily yield Hamiltonian a-b paths of ``g - delete``."""
    masks = _masks(g)
    alive = _alive_mask(len(masks), delete)
    m = [x & alive for x in masks]
    for p in _path_search(m, alive, a, b, None):
        yield PathWitness(p)


def hamiltonian_paths(
    g: Adjacency, a: int, b: int, delete: Iterable[int] = (), limit: Optional[int] = None
) -> list[PathWitness]:
    """Hamiltonian a-b paths of ``g - delete`` with no endpoint checks."""
    masks = _masks(g)
    alive = _alive_mask(len(masks), delete)
    m = [x & alive for x in masks]
    return [PathWitness(p) for p in _path_search(m, alive, a, b, limit)]


def hamiltonian_paths_between(
    h: Union[NearTriangulation, RotationGraph],
    a: int,
    b: int,
    delete: Iterable[int] = (),
    limit: Optional[int] = None,
) -> list[PathWitness]:
    """All Hamiltonian paths of ``h - delete`` between outer-cycle vertices ``a`` and ``b``."""
    outer = tuple(getattr(h, "outer_cycle", ()) or ())
    if not outer and h.outer_face is not None:
        outer = h.faces[h.outer_face].vertices
    delete = set(delete)
    if a == b or (outer and (a not in outer or b not in outer)):
        raise BadEndpointsError(f"{a}, {b} must be distinct vertices of the outer cycle {outer}")
    if a in delete or b in delete or (outer and not delete <= set(outer)):
        raise BadEndpointsError("deleted vertices must lie on the outer cycle and avoid the endpoints")
    return hamiltonian_paths(h, a, b, delete, limit)


# -- bridges and Tutte cycles ------------------------------------------------------------


@dataclass(frozen=True)
class BridgeReport:
    """One H-bridge: a chord (no inner vertices) or a component of G - H with its edges to H."""

    inner: frozenset[int]
    edges: frozenset[Edge]
    attachments: frozenset[int]

    @property
    def is_chord(self) -> bool:
        return not self.inner


def _h_edges(h: Sequence[int], closed: bool) -> set[Edge]:
    h = tuple(h)
    es = {edge(h[i], h[i + 1]) for i in range(len(h) - 1)}
    if closed and len(h) > 2:
        es.add(edge(h[-1], h[0]))
    return es


def bridges(g: Adjacency, h: Sequence[int], closed: bool = True) -> list[BridgeReport]:
    """Bridge decomposition of ``g`` relative to the path or cycle ``h``."""
    masks = _masks(g)
    n = len(masks)
    hset = set(h)
    hed = _h_edges(h, closed)
    out = []
    for u in sorted(hset):
        for v in bits(masks[u]):
            if v in hset and u < v and edge(u, v) not in hed:
                out.append(BridgeReport(frozenset(), frozenset({edge(u, v)}), frozenset({u, v})))
    alive = _alive_mask(n, hset)
    for comp in components(masks, alive):
        es = set()
        att = set()
        for x in comp:
            for y in bits(masks[x]):
                es.add(edge(x, y))
                if y in hset:
                    att.add(y)
        out.append(BridgeReport(frozenset(comp), frozenset(es), frozenset(att)))
    return sorted(out, key=lambda b: (min(b.inner) if b.inner else -1, sorted(b.edges)))


@dataclass(frozen=True)
class TutteCheck:
    ok: bool
    bridge: Optional[BridgeReport] = None

    def __bool__(self) -> bool:
        return self.ok


def is_tutte(
    g: Adjacency, p: Sequence[int], closed: bool = True, c: Optional[Sequence[int]] = None
) -> TutteCheck:
    """Every bridge has <= 3 attachments; bridges using an edge of cycle ``c`` have <= 2."""
    cedges = cycle_edges(c) if c is not None else set()
    for br in bridges(g, p, closed):
        limit = 2 if br.edges & cedges else 3
        if len(br.attachments) > limit:
            return TutteCheck(False, br)
    return TutteCheck(True)


def _is_facial(g: RotationGraph, c: Sequence[int]) -> bool:
    cyc = canonical_cycle(c)
    for f in g.faces:
        v = f.vertices
        if len(v) == len(cyc) and len(set(v)) == len(v) and canonical_cycle(v) == cyc:
            return True
    return False


def is_circuit_graph(g: RotationGraph, c: Sequence[int]) -> bool:
    """2-connected, ``c`` facial, and every 2-cut leaves a vertex of ``c`` in each component."""
    if not _is_facial(g, c):
        return False
    masks = g.masks
    n = g.n
    full = (1 << n) - 1
    for v in range(n):
        if not is_connected(masks, full & ~(1 << v)):
            return False
    cset = set(c)
    for a, b in combinations(range(n), 2):
        comps = components(masks, full & ~(1 << a | 1 << b))
        if len(comps) > 1 and any(not comp & cset for comp in comps):
            return False
    return True


def _cycles_through(masks, e: Edge, through: set[int]) -> Iterator[tuple[int, ...]]:
    """Simple cycles containing edge ``e`` and all of ``through``, longest first."""
    n = len(masks)
    u, v = e
    found = []

    def dfs(path, used):
        last = path[-1]
        for w in bits(masks[last] & ~used):
            if w == v:
                cyc = path + [v]
                if len(cyc) >= 3 and through <= set(cyc):
                    found.append(canonical_cycle(cyc))
                continue
            path.append(w)
            dfs(path, used | 1 << w)
            path.pop()

    # paths from u to v avoiding the edge itself
    dfs([u], 1 << u)
    uniq = sorted(set(found), key=lambda c: (-len(c), c))
    return iter(uniq)


def find_tutte_cycle(
    g: RotationGraph, c: Sequence[int], e: Sequence[int], through: Iterable[int] = ()
) -> CycleWitness:
    """A C-Tutte cycle through edge ``e`` of ``c`` and up to two given vertices.

    Hamiltonian cycles through ``e`` are tried first; shorter cycles follow
    in order of decreasing length.  In a 4-connected input the witness must be
    Hamiltonian, and a non-spanning result there is logged as a red flag.
    """
    through = set(through)
    if len(through) > 2:
        raise ValueError("at most two prescribed vertices")
    e = edge(*e)
    if not is_circuit_graph(g, c):
        raise NotCircuitGraphError(f"({c}) does not make a circuit graph")
    if e not in cycle_edges(c):
        raise ValueError(f"{e} is not an edge of the facial cycle")
    hc = enumerate_hamiltonian_cycles(g, required=[e], limit=1)
    if hc:
        return hc[0]
    for cyc in _cycles_through(g.masks, e, through):
        if is_tutte(g, cyc, True, c):
            if len(cyc) < g.n and vertex_connectivity(g, upto=4) >= 4:
                log.error("non-spanning Tutte cycle in a 4-connected graph: %s", cyc)
            return CycleWitness(cyc)
    log.error("no C-Tutte cycle through %s and %s", e, sorted(through))
    raise SearchExhaustedError(f"no C-Tutte cycle through {e} and {sorted(through)}")


__all__ = [
    "BridgeReport",
    "CycleWitness",
    "PathWitness",
    "TutteCheck",
    "bridges",
    "canonical_cycle",
    "count_hamiltonian_cycles",
    "count_hamiltonian_cycles_dp",
    "enumerate_hamiltonian_cycles",
    "find_tutte_cycle",
    "hamiltonian_paths",
    "hamiltonian_paths_between",
    "iter_hamiltonian_paths",
    "is_circuit_graph",
    "is_tutte",
]
