"""
Search over connected Coxeter diagrams up to isomorphism.

Diagrams on n vertices are enumerated over a finite label alphabet; one
representative is kept per isomorphism class, the one whose flattened upper
triangle is lexicographically least over all vertex orders (inf sorts above
every finite label). Work is sharded by the label pattern of the first row,
so every shard runs the full canonicity test and shards never overlap.
"""
import re
import logging
import operator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, permutations, product
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from ..config import DEFAULT_ALPHABET, MAX_SEARCH_VERTICES
from ..utils import InputError, InvariantError
from .classify import ComponentClass, Kind, classify_component
from .coxeter import INF, CoxeterMatrix
from .tits_form import Signature, gram, signature

logger = logging.getLogger(__file__)

OPERATORS = {
    "==": operator.eq,
    "!=": operator.ne,
    "<=": operator.le,
    ">=": operator.ge,
    "<": operator.lt,
    ">": operator.gt,
}
KIND_VALUES = {kind.value: kind for kind in Kind}
CLAUSE = re.compile(r"^\s*(p|q|r|n|kind)\s*(==|!=|<=|>=|<|>)\s*([A-Za-z]+|[0-9]{1,9})\s*$")


@dataclass(frozen=True)
class Constraint:
    field: str
    op: str
    value: object

    def holds(self, values: dict) -> bool:
        return OPERATORS[self.op](values[self.field], self.value)

    def __str__(self) -> str:
        value = self.value.value if isinstance(self.value, Kind) else self.value
        return f"{self.field}{self.op}{value}"


@dataclass(frozen=True)
class Predicate:
    """Conjunction of comparisons on p, q, r, n and kind."""

    constraints: Tuple[Constraint, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "Predicate":
        """Parses e.g. 'p<=2 and kind==NonAffine'; an empty string accepts everything."""
        if not text or not text.strip():
            return cls()
        constraints = []
        for clause in re.split(r"\band\b", text):
            match = CLAUSE.match(clause)
            if not match:
                raise InputError(f"Cannot parse predicate clause {clause.strip()!r}.")
            name, op, raw = match.groups()
            if name == "kind":
                if op not in ("==", "!=") or raw not in KIND_VALUES:
                    raise InputError(f"kind only supports == and != against {sorted(KIND_VALUES)}, got {clause.strip()!r}.")
                constraints.append(Constraint(name, op, KIND_VALUES[raw]))
            else:
                if not raw.isdigit():
                    raise InputError(f"{name} must be compared with an integer, got {raw!r}.")
                constraints.append(Constraint(name, op, int(raw)))
        return cls(tuple(constraints))

    def matches(self, sig: Signature, kind: Kind, n: int) -> bool:
        values = {"p": sig.p, "q": sig.q, "r": sig.r, "n": n, "kind": kind}
        return all(c.holds(values) for c in self.constraints)

    def __str__(self) -> str:
        return " and ".join(str(c) for c in self.constraints)


@dataclass(frozen=True)
class SearchSpec:
    vertices: Tuple[int, int]
    alphabet: Tuple = DEFAULT_ALPHABET
    predicate: Predicate = field(default_factory=Predicate)
    limit: Optional[int] = None
    workers: int = 1

    def __post_init__(self):
        low, high = self.vertices
        if not 1 <= low <= high:
            raise InputError(f"Invalid vertex range {low}-{high}.")
        if high > MAX_SEARCH_VERTICES:
            raise InputError(f"Search is limited to n <= {MAX_SEARCH_VERTICES}, got {high}.")
        # Non-edges (label 2) are always allowed.
        alphabet = tuple(sorted(set(self.alphabet) | {2}))
        if any(not (m == INF or (isinstance(m, int) and m >= 2)) for m in alphabet):
            raise InputError(f"Alphabet labels must be integers >= 2 or inf, got {alphabet}.")
        if high > 1 and not any(m >= 3 for m in alphabet):
            raise InputError("Alphabet needs a label >= 3 for connected diagrams with n >= 2.")
        if self.workers < 1:
            raise InputError(f"Worker count must be positive, got {self.workers}.")
        object.__setattr__(self, "alphabet", alphabet)


@dataclass(frozen=True)
class Hit:
    matrix: CoxeterMatrix
    signature: Signature
    component: ComponentClass


@dataclass
class HuntResult:
    hits: List[Hit]
    examined: int
    truncated: bool


# === Canonical forms === #
def _pairs(n: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _full_labels(upper: Sequence, n: int) -> List[List]:
    labels = [[1] * n for _ in range(n)]
    for (i, j), m in zip(_pairs(n), upper):
        labels[i][j] = labels[j][i] = m
    return labels


def is_canonical(upper: Sequence, n: int) -> bool:
    """True when no vertex order gives a lexicographically smaller upper triangle."""
    labels = _full_labels(upper, n)
    pairs = _pairs(n)
    for order in permutations(range(n)):
        for (i, j), current in zip(pairs, upper):
            candidate = labels[order[i]][order[j]]
            if candidate < current:
                return False
            if candidate > current:
                break
    return True


def canonical_form(matrix: CoxeterMatrix) -> Tuple:
    """Lexicographically least flattened upper triangle over all vertex orders."""
    n = matrix.n
    pairs = _pairs(n)
    return min(tuple(matrix.labels[order[i]][order[j]] for i, j in pairs) for order in permutations(range(n)))


def _connected(upper: Sequence, n: int) -> bool:
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(pair for pair, m in zip(_pairs(n), upper) if m >= 3)
    return nx.is_connected(graph)


def _matrix(upper: Sequence, n: int) -> CoxeterMatrix:
    return CoxeterMatrix.from_labels(_full_labels(upper, n))


# === Sharded workers === #
def _enumerate_shard(n: int, alphabet: Tuple, first_rows: List[Tuple]) -> List[Tuple]:
    """Canonical connected upper triangles whose first row is one of first_rows."""
    rest = len(_pairs(n)) - (n - 1)
    found = []
    for first in first_rows:
        for tail in product(alphabet, repeat=rest):
            upper = tuple(first) + tail
            if _connected(upper, n) and is_canonical(upper, n):
                found.append(upper)
    return found


def _hunt_shard(n: int, alphabet: Tuple, first_rows: List[Tuple], predicate: Predicate) -> Tuple[int, List[Hit]]:
    uppers = _enumerate_shard(n, alphabet, first_rows)
    hits = []
    for upper in uppers:
        matrix = _matrix(upper, n)
        component = classify_component(matrix)
        if predicate.matches(component.signature, component.kind, n):
            hits.append(Hit(matrix, component.signature, component))
    return len(uppers), hits


def _first_rows(n: int, alphabet: Tuple) -> List[Tuple]:
    # A canonical first row is sorted: swapping two later vertices would otherwise shrink it.
    return list(combinations_with_replacement(alphabet, n - 1))


def _run_shards(worker: Callable, n: int, spec: SearchSpec, *extra) -> list:
    """Runs worker over round-robin shards of first rows, in order, on spec.workers processes."""
    rows = _first_rows(n, spec.alphabet)
    shards = [rows[k::spec.workers] for k in range(spec.workers)]
    shards = [shard for shard in shards if shard]
    if spec.workers == 1 or len(shards) <= 1:
        return [worker(n, spec.alphabet, shard, *extra) for shard in shards]
    with ProcessPoolExecutor(max_workers=spec.workers) as pool:
        futures = [pool.submit(worker, n, spec.alphabet, shard, *extra) for shard in shards]
        results = [future.result() for future in futures]
    logger.debug(f"n={n}: {len(shards)} shards finished on {spec.workers} workers.")
    return results


def enumerate_diagrams(spec: SearchSpec) -> Iterator[CoxeterMatrix]:
    """One canonical representative per isomorphism class of connected diagrams, sorted by (n, canonical form)."""
    low, high = spec.vertices
    for n in range(low, high + 1):
        uppers = sorted(upper for shard in _run_shards(_enumerate_shard, n, spec) for upper in shard)
        logger.debug(f"n={n}: {len(uppers)} connected diagrams over {spec.alphabet}.")
        for upper in uppers:
            yield _matrix(upper, n)


def hunt(spec: SearchSpec) -> HuntResult:
    """Connected diagrams satisfying the predicate, each re-verified by a second signature computation."""
    low, high = spec.vertices
    hits, examined, truncated = [], 0, False
    for n in range(low, high + 1):
        results = _run_shards(_hunt_shard, n, spec, spec.predicate)
        examined += sum(count for count, _ in results)
        found = sorted((hit for _, shard_hits in results for hit in shard_hits), key=lambda hit: hit.matrix.upper_triangle())
        for hit in found:
            # Only a hit beyond the limit makes the result incomplete.
            if spec.limit is not None and len(hits) >= spec.limit:
                truncated = True
                break
            # Sylvester: the reversed vertex order must give the same inertia.
            check = signature(gram(hit.matrix.permuted(list(reversed(range(n))))))
            if check != hit.signature:
                raise InvariantError(f"Signature of {hit.matrix.upper_triangle()} changed under relabelling: {hit.signature} vs {check}.")
            hits.append(hit)
        if truncated:
            logger.warning(f"Search stopped at the limit of {spec.limit} hits.")
            break
    return HuntResult(hits, examined, truncated)
