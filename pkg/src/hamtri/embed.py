"""Plane graphs stored as rotation systems.

A :class:`RotationGraph` keeps, for every vertex, the cyclic order of its
neighbours.  Faces are traced with the rule ``(u, v) -> (v, w)`` where ``w``
is the neighbour that follows ``u`` in the rotation of ``v``.  Under this rule
the face holding the dart ``(c1, c0)`` of a cycle ``c0 c1 ... c(k-1)`` lies on
the *left* of the cycle; at each ``ci`` the left side sees the neighbours that
come after ``c(i+1)`` and before ``c(i-1)`` in the rotation.

Vertices are the dense integers ``0 .. n-1``.  Every operation that changes
the vertex set returns a fresh graph together with an explicit old->new map.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import (
    AmbiguousSideError,
    EmbeddingError,
    InconsistentRotationError,
    NonSimpleError,
    NotACycleError,
    NotSphereError,
)

MAX_VERTICES = 255

Edge = tuple[int, int]
Dart = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def cycle_edges(cycle: Sequence[int]) -> set[Edge]:
    k = len(cycle)
    return {edge(cycle[i], cycle[(i + 1) % k]) for i in range(k)}


def trace_faces(rot: Mapping[int, Sequence[int]]) -> list[list[Dart]]:
    """Trace the face boundaries of an arbitrary rotation mapping.

    Works for sub-rotations (vertex deletions) as well, which need not be
    connected; the caller interprets the result.
    """
    pos = {v: {w: i for i, w in enumerate(r)} for v, r in rot.items()}
    seen: set[Dart] = set()
    faces = []
    for u in sorted(rot):
        for v in rot[u]:
            if (u, v) in seen:
                continue
            boundary = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                boundary.append((a, b))
                r = rot[b]
                a, b = b, r[(pos[b][a] + 1) % len(r)]
            faces.append(boundary)
    return faces


@dataclass(frozen=True)
class Face:
    id: int
    boundary: tuple[Dart, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(u for u, _ in self.boundary)

    def __len__(self) -> int:
        return len(self.boundary)


@dataclass(frozen=True)
class RotationGraph:
    """A simple plane graph given by its rotation system.

    Build instances through :func:`from_rotation_system`, which validates the
    input; the constructor itself trusts its arguments.
    """

    rot: tuple[tuple[int, ...], ...]
    outer_face: Optional[int] = None

    @property
    def n(self) -> int:
        return len(self.rot)

    @cached_property
    def num_edges(self) -> int:
        return sum(len(r) for r in self.rot) // 2

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(r) for r in self.rot)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhoods as bit masks, for the search routines."""
        out = []
        for r in self.rot:
            m = 0
            for w in r:
                m |= 1 << w
            out.append(m)
        return tuple(out)

    @cached_property
    def _pos(self) -> tuple[dict[int, int], ...]:
        return tuple({w: i for i, w in enumerate(r)} for r in self.rot)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted((u, v) for u in range(self.n) for v in self.rot[u] if u < v))

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rot)

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def succ(self, v: int, u: int) -> int:
        """Neighbour of ``v`` that follows ``u`` in the rotation at ``v``."""
        r = self.rot[v]
        return r[(self._pos[v][u] + 1) % len(r)]

    def pred(self, v: int, u: int) -> int:
        r = self.rot[v]
        return r[(self._pos[v][u] - 1) % len(r)]

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        rot = {v: r for v, r in enumerate(self.rot)}
        return tuple(Face(i, tuple(b)) for i, b in enumerate(trace_faces(rot)))

    @cached_property
    def dart_face(self) -> dict[Dart, int]:
        return {d: f.id for f in self.faces for d in f.boundary}

    def face_of(self, u: int, v: int) -> Face:
        return self.faces[self.dart_face[(u, v)]]

    def mirror(self) -> "RotationGraph":
        """The reflected embedding: every rotation reversed."""
        return RotationGraph(tuple(tuple(reversed(r)) for r in self.rot))

    def relabel(self, perm: Sequence[int]) -> "RotationGraph":
        """Rename vertex ``v`` to ``perm[v]``."""
        rot: list[tuple[int, ...]] = [()] * self.n
        for v, r in enumerate(self.rot):
            rot[perm[v]] = tuple(perm[w] for w in r)
        return RotationGraph(tuple(rot))

    def _verify(self) -> None:
        n = self.n
        if n < 3:
            raise EmbeddingError(f"need at least 3 vertices, got {n}")
        for v, r in enumerate(self.rot):
            if len(set(r)) != len(r):
                raise NonSimpleError(f"vertex {v} repeats a neighbour: {r}")
            for w in r:
                if w == v:
                    raise NonSimpleError(f"loop at vertex {v}")
                if not 0 <= w < n:
                    raise InconsistentRotationError(f"vertex {v} names unknown neighbour {w}")
        for v, r in enumerate(self.rot):
            for w in r:
                if v not in self.adj[w]:
                    raise InconsistentRotationError(f"edge {v}-{w} only in rotation of {v}")
        chi = n - self.num_edges + len(self.faces)
        if chi != 2:
            raise NotSphereError(f"V - E + F = {chi}, expected 2")
        if self.outer_face is not None and not 0 <= self.outer_face < len(self.faces):
            raise EmbeddingError(f"outer face {self.outer_face} does not exist")


def from_rotation_system(
    rot: Union[Sequence[Sequence[int]], Mapping[int, Sequence[int]]],
    outer_face: Optional[int] = None,
) -> RotationGraph:
    """Validate per-vertex neighbour cycles and return the plane graph.

    Raises ``NonSimpleError``, ``InconsistentRotationError`` or
    ``NotSphereError`` when the input is not a simple sphere embedding.
    """
    if isinstance(rot, Mapping):
        if sorted(rot) != list(range(len(rot))):
            raise EmbeddingError("vertex ids must be 0..n-1")
        rot = [rot[v] for v in range(len(rot))]
    g = RotationGraph(tuple(tuple(int(w) for w in r) for r in rot), outer_face)
    g._verify()
    return g


def validate_triangulation(g: RotationGraph) -> bool:
    """True iff every face of ``g`` is bounded by a triangle."""
    return all(len(f) == 3 for f in g.faces)


# -- closed regions -------------------------------------------------------------


@dataclass(frozen=True)
class NearTriangulation(RotationGraph):
    """A plane graph with a designated outer cycle.

    ``labels[i]`` is the id vertex ``i`` had in the graph the region was cut
    from (identity when built directly).
    """

    outer_cycle: tuple[int, ...] = ()
    labels: tuple[int, ...] = ()

    def is_near_triangulation(self) -> bool:
        return all(len(f) == 3 for f in self.faces if f.id != self.outer_face)

    @property
    def interior(self) -> tuple[int, ...]:
        on = set(self.outer_cycle)
        return tuple(v for v in range(self.n) if v not in on)


def check_cycle(g: RotationGraph, cycle: Sequence[int]) -> tuple[int, ...]:
    cycle = tuple(cycle)
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        raise NotACycleError(f"{cycle} is not a cycle")
    for i, v in enumerate(cycle):
        if not 0 <= v < g.n:
            raise NotACycleError(f"{v} is not a vertex")
        if not g.has_edge(v, cycle[(i + 1) % len(cycle)]):
            raise NotACycleError(f"{cycle}: {v}-{cycle[(i + 1) % len(cycle)]} is not an edge")
    return cycle


def left_faces(g: RotationGraph, cycle: Sequence[int]) -> set[int]:
    """Ids of the faces lying on the left of ``cycle``."""
    on_cycle = cycle_edges(cycle)
    start = g.dart_face[(cycle[1], cycle[0])]
    seen = {start}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        for a, b in g.faces[f].boundary:
            if edge(a, b) in on_cycle:
                continue
            h = g.dart_face[(b, a)]
            if h not in seen:
                seen.add(h)
                queue.append(h)
    return seen


def side_interior(g: RotationGraph, cycle: Sequence[int], faces: Iterable[int]) -> set[int]:
    on = set(cycle)
    return {v for f in faces for v in g.faces[f].vertices if v not in on}


def resolve_side(g: RotationGraph, cycle: Sequence[int], side=None) -> tuple[int, ...]:
    """Return ``cycle`` oriented so that the requested side is on its left.

    ``side`` is ``"left"``, ``"right"``, a vertex id lying strictly inside the
    wanted side, or ``None`` to take the side away from ``g.outer_face``.
    """
    cycle = check_cycle(g, cycle)
    rev = (cycle[0],) + tuple(reversed(cycle[1:]))
    if side == "left":
        return cycle
    if side == "right":
        return rev
    if side is None:
        if g.outer_face is None:
            raise AmbiguousSideError("no outer face set and no side given")
        return rev if g.outer_face in left_faces(g, cycle) else cycle
    if isinstance(side, int):
        if side in cycle:
            raise AmbiguousSideError(f"vertex {side} lies on the cycle")
        inside = side_interior(g, cycle, left_faces(g, cycle))
        return cycle if side in inside else rev
    raise AmbiguousSideError(f"unknown side designation {side!r}")


def closed_region(g: RotationGraph, cycle: Sequence[int], side=None) -> NearTriangulation:
    """The subgraph drawn in the closed disc bounded by ``cycle``.

    The result is relabelled densely (sorted by old id) and its outer face is
    the face bounded by the cycle.
    """
    cyc = resolve_side(g, cycle, side)
    faces = left_faces(g, cyc)
    keep_edges = cycle_edges(cyc)
    for f in faces:
        for a, b in g.faces[f].boundary:
            keep_edges.add(edge(a, b))
    verts = sorted(set(cyc) | side_interior(g, cyc, faces))
    new = {v: i for i, v in enumerate(verts)}
    rot = tuple(
        tuple(new[w] for w in g.rot[v] if edge(v, w) in keep_edges) for v in verts
    )
    region = NearTriangulation(
        rot, None, tuple(new[v] for v in cycle), tuple(verts)
    )
    region._verify()
    outer = region.dart_face[(new[cyc[0]], new[cyc[1]])]
    return NearTriangulation(rot, outer, region.outer_cycle, region.labels)


def insert_vertex(g: RotationGraph, face: int) -> RotationGraph:
    """Add a vertex inside ``face`` joined to every corner of it.

    The new vertex gets id ``n``.  The face boundary must be a cycle.
    """
    corners = g.faces[face].vertices
    if len(set(corners)) != len(corners):
        raise EmbeddingError(f"face {face} is not bounded by a cycle")
    z = g.n
    rot = [list(r) for r in g.rot]
    k = len(corners)
    for i in range(k):
        a, b, c = corners[i - 1], corners[i], corners[(i + 1) % k]
        # in rot[b], a is immediately followed by c along this face
        r = rot[b]
        j = r.index(a)
        r.insert(j + 1, z)
    rot.append(list(reversed(corners)))
    out = RotationGraph(tuple(tuple(r) for r in rot))
    out._verify()
    return out


def near_triangulation(g: RotationGraph, outer_face: int) -> NearTriangulation:
    """View ``g`` as a near triangulation whose outer face is ``outer_face``."""
    f = g.faces[outer_face]
    return NearTriangulation(g.rot, outer_face, f.vertices, tuple(range(g.n)))


def delete_vertices(g: RotationGraph, gone: Iterable[int]) -> NearTriangulation:
    """``g`` minus some vertices, relabelled densely, with the old ids in ``labels``.

    When a single vertex is removed from a triangulation the face it leaves
    behind becomes the outer face and ``outer_cycle`` is its boundary.
    """
    gone = set(gone)
    verts = [v for v in range(g.n) if v not in gone]
    new = {v: i for i, v in enumerate(verts)}
    rot = tuple(tuple(new[w] for w in g.rot[v] if w not in gone) for v in verts)
    out = NearTriangulation(rot, None, (), tuple(verts))
    out._verify()
    if len(gone) == 1:
        (y,) = gone
        r = g.rot[y]
        # the dart leaving r[1] towards r[0] ran along y's side before deletion
        f = out.dart_face[(new[r[1]], new[r[0]])] if len(r) > 1 else None
        if f is not None:
            return NearTriangulation(rot, f, out.faces[f].vertices, tuple(verts))
    return out


# -- canonical forms ------------------------------------------------------------


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Total-order key of a plane-isomorphism class (reflections allowed).

    ``code`` is itself a planar_code record of the canonically relabelled
    graph: vertex count, then each rotation (1-based, 0-terminated).
    """

    code: bytes

    def hex(self) -> str:
        return self.code.hex()


def _bfs_code(g: RotationGraph, u: int, v: int, mirror: bool) -> bytes:
    n = g.n
    label = [0] * n
    ref = [0] * n
    label[u] = 1
    ref[u] = v
    order = [u]
    nxt = 2
    out = bytearray([n])
    step = -1 if mirror else 1
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        r = g.rot[x]
        d = len(r)
        k = g._pos[x][ref[x]]
        for s in range(d):
            y = r[(k + step * s) % d]
            if not label[y]:
                label[y] = nxt
                nxt += 1
                order.append(y)
                ref[y] = x
            out.append(label[y])
        out.append(0)
    return bytes(out)


def _candidate_roots(g: RotationGraph, root_vertices=None) -> list[Dart]:
    deg = g.degrees
    if root_vertices is not None:
        darts = [(u, v) for u in root_vertices for v in g.rot[u]]
    else:
        darts = [(u, v) for u in range(g.n) for v in g.rot[u]]
    best = min((deg[u], deg[v]) for u, v in darts)
    return [(u, v) for u, v in darts if (deg[u], deg[v]) == best]


def canonical_form(g: RotationGraph, root_vertices: Optional[Iterable[int]] = None) -> CanonicalForm:
    """Canonical key: minimum breadth-first code over roots and orientations.

    Roots are restricted to darts with the smallest (degree, degree) pair,
    which is invariant under isomorphism and reflection.  Passing
    ``root_vertices`` canonicalises the graph with those vertices marked.
    """
    if g.n > MAX_VERTICES:
        raise ValueError(f"canonical codes use one byte per label; n={g.n} exceeds {MAX_VERTICES}")
    roots = _candidate_roots(g, None if root_vertices is None else list(root_vertices))
    return CanonicalForm(
        min(_bfs_code(g, u, v, m) for u, v in roots for m in (False, True))
    )


def decode_code(code: bytes) -> RotationGraph:
    """Inverse of the code layout used by :class:`CanonicalForm`."""
    n = code[0]
    rot = []
    cur: list[int] = []
    for b in code[1:]:
        if b == 0:
            rot.append(tuple(cur))
            cur = []
        else:
            cur.append(b - 1)
    if len(rot) != n or cur:
        raise EmbeddingError("malformed code")
    return from_rotation_system(rot)
