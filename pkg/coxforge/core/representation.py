"""
The Tits representation and its reduction modulo the kernel of the form.

Matrices act on column vectors and alpha(s_1 ... s_k) = r_{s_1} ... r_{s_k},
so extending a word on the right multiplies by a reflection on the right.
Balls of the Cayley graph are enumerated breadth-first with exact
deduplication; the quotient action on R^S / Ker(B) is read off in the
complement coordinates chosen by the kernel computation.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..config import BALL_BUDGET
from ..utils import BudgetExceeded, InputError, InvariantError
from .scalar import Matrix, identity, is_identity, is_minus_identity, mat_vec, matmul, matrix_key, transpose
from .tits_form import GramForm, KernelBasis

logger = logging.getLogger(__file__)


@dataclass(frozen=True)
class GroupElement:
    """alpha(w) together with the ShortLex-least word w found for it."""

    matrix: Matrix
    word: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def key(self) -> tuple:
        return matrix_key(self.matrix)


@dataclass
class Ball:
    radius: int
    elements: List[GroupElement]
    closed: bool
    index: Dict[tuple, GroupElement] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def growth(self) -> List[int]:
        """Number of elements of each length 0..radius."""
        counts = [0] * (self.radius + 1)
        for element in self.elements:
            counts[element.length] += 1
        return counts

    def find(self, matrix: Matrix) -> Optional[GroupElement]:
        return self.index.get(matrix_key(matrix))


@dataclass(frozen=True)
class QuotientAction:
    element: GroupElement
    qmatrix: Matrix


@dataclass(frozen=True)
class Violation:
    element: GroupElement
    kind: str  # "kernel": acts trivially modulo Ker(B); "projective": acts as -I there.


@dataclass
class FaithfulnessReport:
    radius: int
    dimension: int
    checked: int
    closed: bool
    violations: List[Violation]


def reflection(s: int, form: GramForm) -> GroupElement:
    """r_s(v) = v - 2B(e_s, v)e_s: column t is e_t - 2B(e_s, e_t)e_s."""
    if not 0 <= s < form.n:
        raise InputError(f"Generator index {s} out of range for {form.n} generators.")
    ctx = form.ctx
    rows = []
    for i in range(form.n):
        if i == s:
            rows.append(tuple((ctx.one if t == s else ctx.zero) - 2 * form.entries[s][t] for t in range(form.n)))
        else:
            rows.append(tuple(ctx.one if t == i else ctx.zero for t in range(form.n)))
    return GroupElement(tuple(rows), (s,))


def generators(form: GramForm) -> List[GroupElement]:
    return [reflection(s, form) for s in range(form.n)]


def _times_reflection(matrix: Matrix, s: int, twice_form: List[List]) -> Matrix:
    """matrix * r_s: column t becomes column t minus 2B(e_s, e_t) times column s."""
    coefficients = twice_form[s]
    return tuple(
        tuple(entry - c * row[s] if c and row[s] else entry for entry, c in zip(row, coefficients))
        for row in matrix
    )


def _twice_form(form: GramForm) -> List[List]:
    return [[2 * entry for entry in row] for row in form.entries]


def word_matrix(word: Sequence[int], form: GramForm) -> Matrix:
    """alpha of an explicit generator word."""
    twice = _twice_form(form)
    matrix = identity(form.ctx, form.n)
    for s in word:
        matrix = _times_reflection(matrix, s, twice)
    return matrix


def enumerate_ball(form: GramForm, radius: int, budget: int = BALL_BUDGET) -> Ball:
    """
    All elements of length <= radius, breadth-first, generators in index order.

    The first word reaching a matrix is its ShortLex-least word. The ball is
    closed when no element of length radius + 1 is new, i.e. the whole
    (finite) group has been enumerated.
    """
    if radius < 0:
        raise InputError(f"Radius must be non-negative, got {radius}.")
    twice = _twice_form(form)
    start = GroupElement(identity(form.ctx, form.n), ())
    index = {start.key: start}
    elements, frontier = [start], [start]
    closed = False
    for length in range(1, radius + 2):
        fresh = []
        for g in frontier:
            for s in range(form.n):
                matrix = _times_reflection(g.matrix, s, twice)
                key = matrix_key(matrix)
                if key in index:
                    continue
                if length > radius:
                    # One new element past the radius: the group does not close here.
                    return Ball(radius, elements, False, index)
                h = GroupElement(matrix, g.word + (s,))
                index[key] = h
                fresh.append(h)
                if len(index) > budget:
                    logger.error(f"Ball enumeration exceeded the budget of {budget} elements at length {length}.")
                    raise BudgetExceeded(f"Ball of radius {radius} exceeds the budget of {budget} elements.")
        if not fresh:
            closed = True
            break
        logger.debug(f"Ball level {length}: {len(fresh)} new elements, {len(index)} in total.")
        elements.extend(fresh)
        frontier = fresh
    return Ball(radius, elements, closed, index)


def preserves_form(matrix: Matrix, form: GramForm) -> bool:
    """M^T * Gram * M == Gram exactly."""
    return matrix_key(matmul(matmul(transpose(matrix), form.entries), matrix)) == matrix_key(form.entries)


def fixes_kernel(matrix: Matrix, kernel: KernelBasis) -> bool:
    return all(mat_vec(matrix, v) == v for v in kernel.vectors)


def quotient_action(g: GroupElement, kernel: KernelBasis) -> QuotientAction:
    """
    The induced action of g on R^S / Ker(B) in the complement coordinates.

    Each kernel vector is 1 at its free coordinate and 0 at the other free
    coordinates, so the kernel component of a vector is read off its free
    coordinates and the rest is expressed in the complement basis.
    """
    if not fixes_kernel(g.matrix, kernel):
        logger.error(f"Element with word {g.word} does not fix the kernel pointwise.")
        raise InvariantError(f"Element {g.word} does not fix Ker(B) pointwise.")
    if not kernel.vectors:
        return QuotientAction(g, g.matrix)
    columns = []
    for c in kernel.complement_index:
        image = [row[c] for row in g.matrix]
        for f, v in zip(kernel.free_index, kernel.vectors):
            y = image[f]
            if y:
                image = [a - y * b for a, b in zip(image, v)]
        columns.append(tuple(image[i] for i in kernel.complement_index))
    return QuotientAction(g, transpose(tuple(columns)))


def in_Tf(g: GroupElement, kernel: KernelBasis) -> bool:
    """Whether g acts trivially on R^S / Ker(B) (membership in T_f)."""
    return is_identity(quotient_action(g, kernel).qmatrix)


def _shortlex(word: Sequence[int]) -> tuple:
    return len(word), tuple(word)


def verify_reduced_faithful(form: GramForm, kernel: KernelBasis, radius: int, budget: int = BALL_BUDGET) -> FaithfulnessReport:
    """
    Checks every non-identity element of the ball for a quotient matrix equal to I or -I.

    An element and its inverse generate the same subgroup, so each inverse
    pair is reported once under its ShortLex-smaller word. The -I test is
    skipped for a one-dimensional quotient, whose projective group is trivial.
    """
    if radius < 1:
        raise InputError(f"Radius must be at least 1, got {radius}.")
    ball = enumerate_ball(form, radius, budget)
    dimension = form.n - len(kernel.vectors)
    violations = []
    for g in ball.elements[1:]:
        qmatrix = quotient_action(g, kernel).qmatrix
        if is_identity(qmatrix):
            kind = "kernel"
        elif dimension >= 2 and is_minus_identity(qmatrix):
            kind = "projective"
        else:
            continue
        inverse = ball.find(word_matrix(tuple(reversed(g.word)), form))
        if inverse is not None and _shortlex(inverse.word) < _shortlex(g.word):
            continue
        violations.append(Violation(g, kind))
    logger.debug(f"Checked {len(ball) - 1} elements up to length {radius}: {len(violations)} violations.")
    return FaithfulnessReport(radius, dimension, len(ball) - 1, ball.closed, violations)


def relation_order(s: int, t: int, form: GramForm, cap: int = 20) -> Optional[int]:
    """Multiplicative order of r_s r_t, or None if no power up to cap is the identity."""
    product = matmul(reflection(s, form).matrix, reflection(t, form).matrix)
    power = product
    for k in range(1, cap + 1):
        if is_identity(power):
            return k
        power = matmul(power, product)
    return None


def contains_minus_identity(ball: Ball) -> bool:
    return any(is_minus_identity(g.matrix) for g in ball.elements)
