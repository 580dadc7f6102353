"""Named triangulation families and isomorph-free exhaustive generation.

Generation runs inverse edge contraction (vertex splitting) level by level
from K4 and keeps one representative per canonical form.  When only
4-connected triangulations are wanted, a much smaller tree is grown from the
double wheels using splits that keep 4-connectivity; the two routes are
cross-checked against each other in the test suite.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .analysis import degree4_min_distance, has_separating_triangle, vertex_connectivity
from .embed import (
    RotationGraph,
    canonical_form,
    decode_code,
    from_rotation_system,
    insert_vertex,
    validate_triangulation,
)
from .errors import BadFaceError, TooSmallError

log = logging.getLogger(__name__)


def tetrahedron() -> RotationGraph:
    return from_rotation_system([(1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1)])


def double_wheel(k: int) -> RotationGraph:
    """A k-cycle ``0..k-1`` plus apexes ``k`` and ``k+1`` joined to all of it."""
    if k < 4:
        raise TooSmallError(f"double wheel needs k >= 4, got {k}")
    north, south = k, k + 1
    rot = [((i + 1) % k, north, (i - 1) % k, south) for i in range(k)]
    rot.append(tuple(range(k)))
    rot.append(tuple(reversed(range(k))))
    return from_rotation_system(rot)


def octahedron() -> RotationGraph:
    return double_wheel(4)


def antiprism_chain(k: int, levels: int) -> RotationGraph:
    """Concentric k-cycles joined by antiprism bands and capped at both ends.

    Ring ``j`` holds vertices ``j*k .. j*k+k-1``; the outer cap is ``levels*k``
    and the inner cap ``levels*k + 1``.  Every ring is a separating k-cycle and
    the rings are nested.  ``antiprism_chain(5, 2)`` is the icosahedron and
    ``antiprism_chain(4, 1)`` the octahedron.
    """
    if k < 3 or levels < 1:
        raise TooSmallError("need k >= 3 and at least one ring")
    outer, inner = levels * k, levels * k + 1

    def r(j, i):
        return j * k + i % k

    rot = []
    for j in range(levels):
        for i in range(k):
            # counter-clockwise from the outward side
            out_ccw = outer if j == 0 else r(j - 1, i + 1)
            out_cw = None if j == 0 else r(j - 1, i)
            in_ccw = inner if j == levels - 1 else r(j + 1, i)
            in_cw = None if j == levels - 1 else r(j + 1, i - 1)
            seq = [out_ccw, r(j, i + 1), in_ccw, in_cw, r(j, i - 1), out_cw]
            rot.append(tuple(v for v in seq if v is not None))
    rot.append(tuple(reversed(range(k))))
    rot.append(tuple(r(levels - 1, i) for i in range(k)))
    return from_rotation_system(rot)


def icosahedron() -> RotationGraph:
    return antiprism_chain(5, 2)


def stack_vertex(g: RotationGraph, f: int) -> RotationGraph:
    """Put a degree-3 vertex (id ``n``) inside triangular face ``f``."""
    if not 0 <= f < len(g.faces) or len(g.faces[f]) != 3:
        raise BadFaceError(f"{f} is not a triangular face")
    return insert_vertex(g, f)


def split_vertex(g: RotationGraph, v: int, i: int, j: int) -> RotationGraph:
    """Inverse edge contraction at ``v``.

    With rotation ``w`` at ``v`` and ``i < j``, vertex ``v`` keeps the arc
    ``w[i..j]`` and a new vertex ``n`` takes ``w[j..i]`` (cyclically); the two
    are joined and ``w[i]``, ``w[j]`` become their common neighbours.
    """
    w = g.rot[v]
    d = len(w)
    z = g.n
    arc1 = [w[t] for t in range(i, j + 1)]
    arc2 = [w[t % d] for t in range(j, i + d + 1)]
    rot = [list(r) for r in g.rot]
    rot[v] = arc1 + [z]
    rot.append(arc2 + [v])
    for x in arc2[1:-1]:
        rot[x] = [z if y == v else y for y in rot[x]]
    a, b = w[i], w[j]
    ra = rot[a]
    t = ra.index(v)
    rot[a] = ra[:t] + [v, z] + ra[t + 1:]
    rb = rot[b]
    t = rb.index(v)
    rot[b] = rb[:t] + [z, v] + rb[t + 1:]
    return RotationGraph(tuple(tuple(r) for r in rot))


def expansions(g: RotationGraph, min_degree: int = 3) -> Iterator[RotationGraph]:
    """All vertex splits of ``g`` whose two new vertices have degree >= ``min_degree``."""
    for v in range(g.n):
        d = g.degree(v)
        for i in range(d):
            for j in range(i + 1, d):
                if j - i + 2 < min_degree or d - (j - i) + 2 < min_degree:
                    continue
                yield split_vertex(g, v, i, j)


# -- exhaustive generation ------------------------------------------------------


@dataclass(frozen=True)
class GenerationBudget:
    """Size range and class filter for :func:`generate_all`.

    ``connectivity`` asks for vertex connectivity at least that value;
    ``degree4_distance`` for degree-4 vertices pairwise at least that far apart.
    """

    n_max: int
    n_min: int = 4
    min_degree: Optional[int] = None
    connectivity: Optional[int] = None
    no_separating_triangle: bool = False
    degree4_distance: Optional[int] = None

    def __post_init__(self):
        if not 4 <= self.n_max <= 255:
            raise ValueError(f"n_max must lie in 4..255, got {self.n_max}")
        if self.n_min < 4:
            raise ValueError("n_min must be at least 4")

    @property
    def four_connected_only(self) -> bool:
        return (self.connectivity or 0) >= 4 or (
            self.no_separating_triangle and (self.min_degree or 0) >= 4
        )

    def accepts(self, g: RotationGraph) -> bool:
        if self.min_degree is not None and min(g.degrees) < self.min_degree:
            return False
        if self.connectivity is not None and vertex_connectivity(g, upto=self.connectivity) < self.connectivity:
            return False
        if self.no_separating_triangle and has_separating_triangle(g):
            return False
        if self.degree4_distance is not None and degree4_min_distance(g) < self.degree4_distance:
            return False
        return True


def _child_codes(args) -> set[bytes]:
    code, min_degree = args
    g = decode_code(code)
    return {canonical_form(h).code for h in expansions(g, min_degree)}


def _next_level(codes: list[bytes], min_degree: int, jobs: int) -> set[bytes]:
    work = [(c, min_degree) for c in codes]
    found: set[bytes] = set()
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_child_codes, work, chunksize=max(1, len(work) // (4 * jobs))):
                found |= part
    else:
        for item in work:
            found |= _child_codes(item)
    return found


def all_triangulation_codes(n_max: int, jobs: int = 1) -> Iterator[tuple[int, list[bytes]]]:
    """Yield ``(n, sorted canonical codes)`` for every triangulation size 4..n_max."""
    level = [canonical_form(tetrahedron()).code]
    yield 4, level
    for n in range(5, n_max + 1):
        level = sorted(_next_level(level, 3, jobs))
        yield n, level


def _is_4c(code: bytes) -> bool:
    return vertex_connectivity(decode_code(code), upto=4) >= 4


def four_connected_codes(n_max: int, jobs: int = 1) -> Iterator[tuple[int, list[bytes]]]:
    """Yield ``(n, sorted codes)`` of 4-connected triangulations, n = 6..n_max.

    Each level is the double wheel on n vertices plus the 4-connected
    results of splitting the previous level into two vertices of degree >= 4.
    """
    level: list[bytes] = []
    for n in range(6, n_max + 1):
        found = _next_level(level, 4, jobs) if level else set()
        found.add(canonical_form(double_wheel(n - 2)).code)
        level = sorted(c for c in found if _is_4c(c))
        yield n, level


def generate_all(budget: GenerationBudget, jobs: int = 1, method: str = "auto") -> Iterator[RotationGraph]:
    """One triangulation per isomorphism class, ordered by n then canonical form.

    ``method`` is ``"full"`` (grow every triangulation), ``"four-connected"``
    (grow 4-connected ones only; valid when the filter implies it) or
    ``"auto"``.  Emitted graphs are decoded from their canonical codes, so
    the output does not depend on generation order or worker count.
    """
    if budget.n_max >= 13:
        log.warning("generation up to n=%d can take a long time", budget.n_max)
    if method == "auto":
        method = "four-connected" if budget.four_connected_only else "full"
    if method == "four-connected":
        if not budget.four_connected_only:
            raise ValueError("four-connected generation needs a filter implying 4-connectivity")
        levels: Iterable = four_connected_codes(budget.n_max, jobs)
    elif method == "full":
        levels = all_triangulation_codes(budget.n_max, jobs)
    else:
        raise ValueError(f"unknown method {method!r}")
    for n, codes in levels:
        if n < budget.n_min:
            continue
        for code in codes:
            g = decode_code(code)
            if budget.accepts(g):
                assert validate_triangulation(g)
                yield g


def random_triangulation(n: int, rng) -> RotationGraph:
    """Grow a random triangulation on ``n`` vertices from K4 by random splits."""
    g = tetrahedron()
    while g.n < n:
        v = rng.randrange(g.n)
        d = g.degree(v)
        i, j = sorted(rng.sample(range(d), 2))
        g = split_vertex(g, v, i, j)
    return from_rotation_system(g.rot)
