"""Exact Hamiltonian-cycle experiments on plane triangulations.

The modules build on each other bottom-up: :mod:`embed` (rotation systems),
:mod:`gen` (exhaustive generation), :mod:`analysis` (connectivity, separating
cycles, pattern matching), :mod:`selection` (independent sets and edge links),
:mod:`ham` (cycle and path enumeration, Tutte certificates), :mod:`census`
(file formats and the result ledger).  :mod:`suites` holds the corpus checks.
"""

from .analysis import (
    degree4_min_distance,
    find_diamonds,
    has_separating_triangle,
    separating_cycles,
    vertex_connectivity,
)
from .census import read_planar_code, run_census, write_planar_code
from .embed import (
    NearTriangulation,
    RotationGraph,
    canonical_form,
    closed_region,
    from_rotation_system,
)
from .gen import GenerationBudget, double_wheel, generate_all, octahedron, tetrahedron
from .ham import count_hamiltonian_cycles, enumerate_hamiltonian_cycles, hamiltonian_paths
from .selection import admissible_selections, link, preserves_4_connectivity

__version__ = "0.1.0"

__all__ = [
    "GenerationBudget",
    "NearTriangulation",
    "RotationGraph",
    "admissible_selections",
    "canonical_form",
    "closed_region",
    "count_hamiltonian_cycles",
    "degree4_min_distance",
    "double_wheel",
    "enumerate_hamiltonian_cycles",
    "find_diamonds",
    "from_rotation_system",
    "generate_all",
    "hamiltonian_paths",
    "has_separating_triangle",
    "link",
    "octahedron",
    "preserves_4_connectivity",
    "read_planar_code",
    "run_census",
    "separating_cycles",
    "tetrahedron",
    "vertex_connectivity",
    "write_planar_code",
]
