"""File formats, per-graph census records and the JSONL result ledger.

Ledger layout (schema version :data:`LEDGER_VERSION`): one JSON object per
line, keys sorted, no spaces.  Every line has ``kind`` and ``version``.

* ``graph`` records, sorted by (n, canonical form), carry the fields of
  :class:`CensusRecord`.
* ``violation`` records, sorted after the graphs, describe a failed check.
* one final ``summary`` record holds totals, suite statistics and the
  report-only bound constants.
"""

from __future__ import annotations

import json
import logging
import random
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import IO, Iterable, Iterator, Optional

from .analysis import degree4_min_distance, separating_cycles, vertex_connectivity
from .embed import MAX_VERTICES, RotationGraph, canonical_form, decode_code, from_rotation_system
from .errors import (
    BadHeaderError,
    EmbeddingError,
    FormatError,
    InvalidRotationError,
    TooLargeError,
    TruncatedError,
)
from .gen import GenerationBudget, double_wheel, generate_all
from .ham import count_hamiltonian_cycles, count_hamiltonian_cycles_dp
from .selection import low_degree_independent_set, refine_saturation_free
from .suites import SuiteResult, run_suite

log = logging.getLogger(__name__)

LEDGER_VERSION = 1
PLANAR_CODE_HEADER = b">>planar_code<<"
DEFAULT_THRESHOLDS = (7, 10)


# -- planar_code ------------------------------------------------------------------------


def read_planar_code(data: bytes) -> Iterator[RotationGraph]:
    """Decode a planar_code byte stream (optional header, then records)."""
    pos = 0
    if data.startswith(b">>"):
        end = data.find(b"<<")
        if end < 0:
            raise BadHeaderError("unterminated header")
        head = data[: end + 2]
        if not head.startswith(b">>planar_code"):
            raise BadHeaderError(f"unexpected header {head!r}")
        if b" be" in head:
            raise BadHeaderError("big-endian two-byte entries are not supported")
        pos = end + 2
    size = len(data)
    while pos < size:
        n = data[pos]
        pos += 1
        if n == 0:
            raise TooLargeError("two-byte entries (n > 255) are not supported")
        rot = []
        for v in range(n):
            nbrs = []
            while True:
                if pos >= size:
                    raise TruncatedError(f"stream ends inside the rotation of vertex {v + 1}")
                b = data[pos]
                pos += 1
                if b == 0:
                    break
                if b > n:
                    raise InvalidRotationError(f"neighbour {b} out of range for n={n}")
                nbrs.append(b - 1)
            rot.append(nbrs)
        try:
            yield from_rotation_system(rot)
        except EmbeddingError as exc:
            raise InvalidRotationError(str(exc)) from exc


def rooted_rotation(r: Iterable[int]) -> tuple[int, ...]:
    """Rotation started at its smallest neighbour."""
    r = tuple(r)
    if not r:
        return r
    i = r.index(min(r))
    return r[i:] + r[:i]


def encode_graph(g: RotationGraph) -> bytes:
    if g.n > MAX_VERTICES:
        raise TooLargeError(f"n={g.n} exceeds {MAX_VERTICES}")
    out = bytearray([g.n])
    for r in g.rot:
        out.extend(w + 1 for w in rooted_rotation(r))
        out.append(0)
    return bytes(out)


def write_planar_code(graphs: Iterable[RotationGraph], header: bool = True) -> bytes:
    parts = [PLANAR_CODE_HEADER] if header else []
    parts.extend(encode_graph(g) for g in graphs)
    return b"".join(parts)


_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


def to_ascii(g: RotationGraph) -> str:
    """plantri-style ascii line: ``n`` then comma-separated letter rotations."""
    if g.n > len(_LETTERS):
        raise TooLargeError(f"ascii form supports at most {len(_LETTERS)} vertices")
    rots = ",".join("".join(_LETTERS[w] for w in rooted_rotation(r)) for r in g.rot)
    return f"{g.n} {rots}"


def from_ascii(line: str) -> RotationGraph:
    try:
        head, body = line.strip().split(" ", 1)
        n = int(head)
        rot = [[_LETTERS.index(ch) for ch in part] for part in body.split(",")]
    except ValueError as exc:
        raise FormatError(f"bad ascii line {line!r}") from exc
    if len(rot) != n:
        raise InvalidRotationError(f"expected {n} rotations, got {len(rot)}")
    try:
        return from_rotation_system(rot)
    except EmbeddingError as exc:
        raise InvalidRotationError(str(exc)) from exc


def read_ascii(text: str) -> Iterator[RotationGraph]:
    for line in text.splitlines():
        if line.strip():
            yield from_ascii(line)


# -- records ------------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundConstants:
    """Constants of the asymptotic lower bounds; reported, never asserted."""

    c: float = (12 * 90 * 541 * 301) ** -2 / 2
    c1: float = 1 / (12 * 63 * 541 * 301)
    c2: float = 1 / (12 * 90 * 541 * 301)

    def bound(self, n: int) -> float:
        return self.c * n * n


def conjectured_bound(n: int) -> int:
    return 2 * (n - 2) * (n - 4)


@dataclass
class CensusRecord:
    n: int
    canonical_form: str
    connectivity: int
    sep3: int
    sep4: int
    sep5: int
    degree4_min_distance: Optional[int]
    hc_count: int
    bound: int
    is_double_wheel: bool
    refine: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        d = asdict(self)
        d["kind"] = "graph"
        d["version"] = LEDGER_VERSION
        return d


def is_double_wheel(g: RotationGraph) -> bool:
    return g.n >= 6 and canonical_form(g) == canonical_form(double_wheel(g.n - 2))


def census_record(g: RotationGraph, thresholds: Iterable[int] = DEFAULT_THRESHOLDS) -> CensusRecord:
    kappa = vertex_connectivity(g, upto=5)
    dist = degree4_min_distance(g)
    refine = {}
    if kappa >= 4:
        i = low_degree_independent_set(g)
        for t in thresholds:
            br = refine_saturation_free(g, i, t)
            refine[f"t{t}"] = {"branch": br.kind, "I": len(i), "ratios": br.ratios}
    return CensusRecord(
        n=g.n,
        canonical_form=canonical_form(g).hex(),
        connectivity=kappa,
        sep3=len(separating_cycles(g, 3)),
        sep4=len(separating_cycles(g, 4)),
        sep5=len(separating_cycles(g, 5)),
        degree4_min_distance=None if dist == float("inf") else int(dist),
        hc_count=count_hamiltonian_cycles(g),
        bound=conjectured_bound(g.n),
        is_double_wheel=is_double_wheel(g),
        refine=refine,
    )


def conjecture_violations(rec: CensusRecord) -> list[dict]:
    """Check the lower bound on a 4-connected record; equality must mean a double wheel."""
    if rec.connectivity < 4:
        return []
    out = []
    if rec.hc_count < rec.bound:
        out.append({"check": "hc_count >= 2(n-2)(n-4)"})
    elif rec.hc_count == rec.bound and not rec.is_double_wheel:
        out.append({"check": "equality only at the double wheel"})
    elif rec.is_double_wheel and rec.hc_count != rec.bound:
        out.append({"check": "double wheel attains the bound"})
    for v in out:
        v.update(kind="violation", version=LEDGER_VERSION, suite="conjecture",
                 graph=rec.canonical_form, hc_count=rec.hc_count, bound=rec.bound)
    return out


def _record_from_code(code: bytes) -> CensusRecord:
    return census_record(decode_code(code))


def shard_of(code: bytes, jobs: int) -> int:
    return zlib.crc32(code) % jobs


def compute_records(graphs: Iterable[RotationGraph], jobs: int = 1) -> list[CensusRecord]:
    """Census records for ``graphs``, sharded by canonical-form hash, merged in order."""
    codes = [canonical_form(g).code for g in graphs]
    if jobs > 1 and len(codes) > 1:
        shards: list[list[bytes]] = [[] for _ in range(jobs)]
        for c in codes:
            shards[shard_of(c, jobs)].append(c)
        recs: list[CensusRecord] = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_records_for_shard, shards):
                recs.extend(part)
    else:
        recs = [_record_from_code(c) for c in codes]
    return sorted(recs, key=lambda r: (r.n, bytes.fromhex(r.canonical_form)))


def _records_for_shard(codes: list[bytes]) -> list[CensusRecord]:
    return [_record_from_code(c) for c in codes]


def audit_records(records: list[CensusRecord], fraction: float = 0.01, seed: int = 0) -> list[dict]:
    """Recount a seeded sample (at least one record) with the subset DP counter."""
    if not records or fraction <= 0:
        return []
    k = max(1, round(len(records) * fraction))
    rng = random.Random(seed)
    out = []
    for rec in rng.sample(records, min(k, len(records))):
        if rec.n > 16:
            continue
        again = count_hamiltonian_cycles_dp(decode_code(bytes.fromhex(rec.canonical_form)))
        if again != rec.hc_count:
            out.append({"kind": "violation", "version": LEDGER_VERSION, "suite": "audit",
                        "graph": rec.canonical_form, "hc_count": rec.hc_count, "recount": again})
    return out


@dataclass
class Ledger:
    records: list[CensusRecord]
    violations: list[dict]
    suites: list[SuiteResult] = field(default_factory=list)
    audited: int = 0

    def lines(self) -> list[str]:
        rows = [r.to_json() for r in self.records]
        viol = []
        for v in self.violations:
            v = dict(v)
            v.setdefault("kind", "violation")
            v.setdefault("version", LEDGER_VERSION)
            viol.append(v)
        viol.sort(key=lambda v: (v.get("suite", ""), v.get("graph") or "", json.dumps(v, sort_keys=True)))
        summary = {
            "kind": "summary",
            "version": LEDGER_VERSION,
            "records": len(self.records),
            "violations": len(viol),
            "audited": self.audited,
            "constants": asdict(BoundConstants()),
            "suites": {
                s.name: {"checked": s.checked, "skipped": s.skipped,
                         "violations": len(s.violations), "notes": s.notes}
                for s in self.suites
            },
        }
        return [_dump(r) for r in rows + viol + [summary]]

    def write(self, fh: IO[str]) -> None:
        for line in self.lines():
            fh.write(line + "\n")

    @property
    def ok(self) -> bool:
        return not self.violations


def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def read_ledger(lines: Iterable[str]) -> list[dict]:
    out = []
    for line in lines:
        if line.strip():
            rec = json.loads(line)
            if rec.get("version") != LEDGER_VERSION:
                raise FormatError(f"unsupported ledger version {rec.get('version')!r}")
            out.append(rec)
    return out


def run_census(
    budget: GenerationBudget,
    suites: Iterable[str] = (),
    jobs: int = 1,
    seed: int = 0,
    limit: int = 1000,
    audit: float = 0.01,
    check_conjecture: bool = True,
) -> Ledger:
    """Generate the corpus, build one record per graph, run suites, collect violations."""
    graphs = list(generate_all(budget, jobs=jobs))
    records = compute_records(graphs, jobs)
    violations: list[dict] = []
    if check_conjecture:
        for rec in records:
            violations.extend(conjecture_violations(rec))
    audit_v = audit_records(records, audit, seed)
    violations.extend(audit_v)
    results = []
    for name in suites:
        res = run_suite(name, n_max=budget.n_max, seed=seed, limit=limit)
        results.append(res)
        violations.extend(res.violations)
    audited = max(1, round(len(records) * audit)) if records and audit > 0 else 0
    return Ledger(records, violations, results, audited)


__all__ = [
    "BoundConstants",
    "CensusRecord",
    "LEDGER_VERSION",
    "Ledger",
    "PLANAR_CODE_HEADER",
    "audit_records",
    "census_record",
    "compute_records",
    "conjecture_violations",
    "conjectured_bound",
    "encode_graph",
    "from_ascii",
    "read_ascii",
    "read_ledger",
    "read_planar_code",
    "rooted_rotation",
    "run_census",
    "to_ascii",
    "write_planar_code",
]
