"""
Coxeter matrices, their diagrams and the named spherical/affine types.

A Coxeter matrix is stored as a tuple of label rows (1 on the diagonal, labels
in {2, 3, ..., inf} elsewhere). The diagram keeps an edge exactly when the
label is at least 3; its connected components are the irreducible factors.
Named types are recognised by labelled-graph isomorphism against the
spherical and affine catalogs.
"""
import math
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import numerical_edge_match

from ..utils import InputError, default_names

logger = logging.getLogger(__file__)

INF = math.inf

SPHERICAL_FAMILIES = ("A", "B", "D", "E", "F", "H", "I2")
AFFINE_FAMILIES = ("~A", "~B", "~C", "~D", "~E", "~F", "~G")
UNNAMED = "Unnamed"


def label_text(m) -> str:
    """Text form of a label: integers as digits, infinity as 'inf'."""
    return "inf" if m == INF else str(int(m))


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric label matrix of a Coxeter system, with generator names."""

    labels: Tuple[Tuple, ...]
    names: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        labels = tuple(tuple(row) for row in self.labels)
        object.__setattr__(self, "labels", labels)
        if not self.names:
            object.__setattr__(self, "names", default_names(len(labels)))
        else:
            object.__setattr__(self, "names", tuple(self.names))

    @classmethod
    def from_labels(cls, labels: Sequence[Sequence], names: Sequence[str] = ()) -> "CoxeterMatrix":
        """Builds and validates a matrix, raising InputError on any violation."""
        matrix = cls(labels, tuple(names))
        problems = validate(matrix)
        if problems:
            raise InputError("; ".join(problems))
        return matrix

    @classmethod
    def from_edges(cls, n: int, edges: Dict[Tuple[int, int], object], names: Sequence[str] = ()) -> "CoxeterMatrix":
        """Matrix with the given labelled edges; unmentioned pairs commute (label 2)."""
        labels = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for (s, t), m in edges.items():
            labels[s][t] = labels[t][s] = m
        return cls.from_labels(labels, names)

    @property
    def n(self) -> int:
        return len(self.labels)

    def label_set(self) -> set:
        return {m for row in self.labels for m in row}

    def edges(self) -> List[Tuple[int, int, object]]:
        """Diagram edges (s, t, m) with s < t and m >= 3."""
        return [(s, t, self.labels[s][t]) for s in range(self.n) for t in range(s + 1, self.n) if self.labels[s][t] >= 3]

    def diagram(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        for s, t, m in self.edges():
            # inf is kept as a float so numerical edge matching works.
            graph.add_edge(s, t, m=float(m))
        return graph

    def submatrix(self, vertices: Sequence[int]) -> "CoxeterMatrix":
        return CoxeterMatrix(
            tuple(tuple(self.labels[s][t] for t in vertices) for s in vertices),
            tuple(self.names[s] for s in vertices),
        )

    def permuted(self, order: Sequence[int]) -> "CoxeterMatrix":
        """The matrix with generator order[i] moved to position i."""
        return self.submatrix(order)

    def upper_triangle(self) -> Tuple:
        return tuple(self.labels[s][t] for s in range(self.n) for t in range(s + 1, self.n))

    def is_connected(self) -> bool:
        return self.n > 0 and nx.is_connected(self.diagram())


def validate(matrix: CoxeterMatrix) -> List[str]:
    """Returns every invariant violation of a Coxeter matrix (empty when valid)."""
    problems = []
    n = matrix.n
    if n == 0:
        problems.append("matrix must have at least one generator")
    if any(len(row) != n for row in matrix.labels):
        problems.append("matrix must be square")
        return problems
    if len(matrix.names) != n:
        problems.append(f"expected {n} generator names, got {len(matrix.names)}")
    elif len(set(matrix.names)) != n:
        problems.append("generator names must be distinct")
    for s in range(n):
        if matrix.labels[s][s] != 1:
            problems.append(f"diagonal must be 1 (entry {s},{s} is {matrix.labels[s][s]})")
        for t in range(s + 1, n):
            m, m_back = matrix.labels[s][t], matrix.labels[t][s]
            if m != m_back:
                problems.append(f"asymmetric entries at {s},{t}: {m} != {m_back}")
            if not (m == INF or (isinstance(m, int) and not isinstance(m, bool))):
                problems.append(f"label at {s},{t} must be an integer or inf, got {m!r}")
            elif m < 2:
                problems.append(f"label at {s},{t} must be >= 2, got {m}")
    return problems


def components(matrix: CoxeterMatrix) -> List[Tuple[Tuple[int, ...], CoxeterMatrix]]:
    """Connected components of the diagram, ordered by smallest vertex, as induced matrices."""
    parts = sorted(tuple(sorted(part)) for part in nx.connected_components(matrix.diagram()))
    logger.debug(f"Split {matrix.n} generators into components {parts}.")
    return [(part, matrix.submatrix(part)) for part in parts]


# === Named types === #
@dataclass(frozen=True)
class NamedType:
    """A catalog name such as A_4, I_2(7) or ~A_2 (affine types carry a leading '~')."""

    family: str
    rank: int = 0
    extra: Optional[int] = None

    @property
    def is_spherical(self) -> bool:
        return self.family in SPHERICAL_FAMILIES

    @property
    def is_affine(self) -> bool:
        return self.family in AFFINE_FAMILIES

    def __str__(self) -> str:
        if self.family == UNNAMED:
            return UNNAMED
        if self.family == "I2":
            return f"I_2({self.extra})"
        return f"{self.family}_{self.rank}"

    def order(self) -> Optional[int]:
        """Order of the finite group of a spherical type; None otherwise."""
        n = self.rank
        orders = {
            "A": lambda: math.factorial(n + 1),
            "B": lambda: 2 ** n * math.factorial(n),
            "D": lambda: 2 ** (n - 1) * math.factorial(n),
            "E": lambda: {6: 51840, 7: 2903040, 8: 696729600}[n],
            "F": lambda: 1152,
            "H": lambda: {3: 120, 4: 14400}[n],
            "I2": lambda: 2 * self.extra,
        }
        return orders[self.family]() if self.family in orders else None

    def centre_order(self) -> int:
        """Order of the centre: 2 when the longest element is central and nontrivial, else 1."""
        if self.family in ("B", "F", "H"):
            return 2
        if self.family == "D":
            return 2 if self.rank % 2 == 0 else 1
        if self.family == "E":
            return 2 if self.rank in (7, 8) else 1
        if self.family == "I2":
            return 2 if self.extra % 2 == 0 else 1
        # A_1 is Z/2; A_n for n >= 2 and all infinite irreducible groups are centreless.
        return 2 if (self.family == "A" and self.rank == 1) else 1


def _path(labels: Sequence) -> CoxeterMatrix:
    """Path diagram whose consecutive edges carry the given labels."""
    return CoxeterMatrix.from_edges(len(labels) + 1, {(i, i + 1): m for i, m in enumerate(labels)})


def _star(arms: Sequence[int], tail_label: int = 3) -> CoxeterMatrix:
    """Tree with a branch vertex 0 and arms of the given lengths, all labels 3."""
    edges, vertex = {}, 1
    for length in arms:
        previous = 0
        for _ in range(length):
            edges[(previous, vertex)] = tail_label
            previous, vertex = vertex, vertex + 1
    return CoxeterMatrix.from_edges(vertex, edges)


def _cycle(n: int) -> CoxeterMatrix:
    return CoxeterMatrix.from_edges(n, {(i, (i + 1) % n): 3 for i in range(n)})


def _forked_path(n_vertices: int, far_end: str) -> CoxeterMatrix:
    """D-type fork at one end; the far end is a fork ('fork') or a label-4 edge ('4')."""
    edges = {(0, 2): 3, (1, 2): 3}
    last = 2
    body_end = n_vertices - (2 if far_end == "fork" else 1)
    for v in range(3, body_end):
        edges[(v - 1, v)] = 3
        last = v
    if far_end == "fork":
        edges[(last, n_vertices - 2)] = 3
        edges[(last, n_vertices - 1)] = 3
    else:
        edges[(last, n_vertices - 1)] = 4
    return CoxeterMatrix.from_edges(n_vertices, edges)


def catalog(n: int) -> List[Tuple[NamedType, CoxeterMatrix]]:
    """
    Spherical and affine templates with n generators, in recognition order.

    A precedes D so the D_3 shape is reported as A_3; rank 2 templates follow
    the A_2 / B_2 / I_2(m) / ~A_1 convention and are handled by recognize.
    """
    templates = []
    if n >= 1:
        templates.append((NamedType("A", n), _path([3] * (n - 1))))
    if n >= 3:
        templates.append((NamedType("B", n), _path([4] + [3] * (n - 2))))
    if n >= 4:
        templates.append((NamedType("D", n), _star([1, 1, n - 3])))
    if n in (6, 7, 8):
        templates.append((NamedType("E", n), _star([1, 2, n - 4])))
    if n == 4:
        templates.append((NamedType("F", 4), _path([3, 4, 3])))
        templates.append((NamedType("H", 4), _path([5, 3, 3])))
    if n == 3:
        templates.append((NamedType("H", 3), _path([5, 3])))
    # Affine types have rank n - 1.
    if n >= 3:
        templates.append((NamedType("~A", n - 1), _cycle(n)))
    if n >= 4:
        templates.append((NamedType("~B", n - 1), _forked_path(n, "4")))
    if n >= 3:
        templates.append((NamedType("~C", n - 1), _path([4] + [3] * (n - 3) + [4])))
    if n == 5:
        templates.append((NamedType("~D", 4), _star([1, 1, 1, 1])))
    elif n >= 6:
        templates.append((NamedType("~D", n - 1), _forked_path(n, "fork")))
    if n == 7:
        templates.append((NamedType("~E", 6), _star([2, 2, 2])))
    if n == 8:
        templates.append((NamedType("~E", 7), _star([1, 3, 3])))
    if n == 9:
        templates.append((NamedType("~E", 8), _star([1, 2, 5])))
    if n == 5:
        templates.append((NamedType("~F", 4), _path([3, 3, 4, 3])))
    if n == 3:
        templates.append((NamedType("~G", 2), _path([6, 3])))
    return templates


def recognize(matrix: CoxeterMatrix) -> NamedType:
    """Names a connected Coxeter matrix from the spherical and affine catalogs, or Unnamed."""
    n = matrix.n
    if n == 2:
        m = matrix.labels[0][1]
        if m == 3:
            return NamedType("A", 2)
        if m == 4:
            return NamedType("B", 2)
        if m == INF:
            return NamedType("~A", 1)
        if m >= 5:
            return NamedType("I2", 2, m)
        return NamedType(UNNAMED, n)
    graph = matrix.diagram()
    for name, template in catalog(n):
        if nx.is_isomorphic(graph, template.diagram(), edge_match=numerical_edge_match("m", 0)):
            logger.debug(f"Recognized {matrix.names} as {name}.")
            return name
    return NamedType(UNNAMED, n)
