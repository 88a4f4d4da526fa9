"""
The Tits form B(e_s, e_t) = -cos(pi/m_st) as an exact symmetric matrix.

Signatures are computed by symmetric congruence diagonalization over the exact
field (Sylvester's law of inertia), kernels by Gaussian elimination.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .coxeter import INF, CoxeterMatrix
from .scalar import FieldContext, Matrix, Scalar, Vector, entry_from_label, make_context, mat_vec, sign

logger = logging.getLogger(__file__)


@dataclass(frozen=True)
class GramForm:
    ctx: FieldContext
    entries: Matrix
    source: CoxeterMatrix

    @property
    def n(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Signature:
    p: int
    q: int
    r: int

    @property
    def n(self) -> int:
        return self.p + self.q + self.r

    def as_dict(self) -> Dict[str, int]:
        return {"p": self.p, "q": self.q, "r": self.r}

    def __str__(self) -> str:
        return f"({self.p},{self.q},{self.r})"


@dataclass(frozen=True)
class KernelBasis:
    vectors: Tuple[Vector, ...]
    complement_index: Tuple[int, ...]
    # Free coordinate of each kernel vector (its entry there is 1, other free entries 0).
    free_index: Tuple[int, ...]


def gram(matrix: CoxeterMatrix) -> GramForm:
    """Exact Gram matrix of the Tits form in the field of the matrix's labels."""
    ctx = make_context(matrix.label_set())
    entries = tuple(tuple(entry_from_label(m, ctx) for m in row) for row in matrix.labels)
    return GramForm(ctx, entries, matrix)


def signature(form: GramForm) -> Signature:
    """
    Inertia (p, q, r) of the form.

    Pivots on the first nonzero diagonal entry; when the remaining diagonal is
    zero but some a_ij is not, eliminates the hyperbolic pair (i, j) at once,
    which contributes one positive and one negative square.
    """
    a = [list(row) for row in form.entries]
    remaining = list(range(form.n))
    p = q = 0
    trace = []
    while remaining:
        pivot = next((i for i in remaining if a[i][i]), None)
        if pivot is not None:
            d = a[pivot][pivot]
            d_sign = sign(d)
            if d_sign > 0:
                p += 1
            else:
                q += 1
            remaining.remove(pivot)
            for j in remaining:
                if not a[j][pivot]:
                    continue
                factor = a[j][pivot] / d
                for k in remaining:
                    if a[pivot][k]:
                        a[j][k] = a[j][k] - factor * a[pivot][k]
            trace.append(("pivot", pivot, d_sign))
            continue
        pair = next(((i, j) for i in remaining for j in remaining if i < j and a[i][j]), None)
        if pair is None:
            break
        i, j = pair
        h = a[i][j]
        p += 1
        q += 1
        remaining.remove(i)
        remaining.remove(j)
        # Schur complement of the block [[0, h], [h, 0]].
        for k in remaining:
            for l in remaining:
                correction = a[k][i] * a[j][l] + a[k][j] * a[i][l]
                if correction:
                    a[k][l] = a[k][l] - correction / h
        trace.append(("hyperbolic", i, j))
    result = Signature(p, q, len(remaining))
    logger.debug(f"Signature {result} of {form.source.names} via {trace}.")
    return result


def _row_reduce(form: GramForm) -> Tuple[List[List[Scalar]], List[int]]:
    """Reduced row echelon form of the Gram matrix and its pivot columns."""
    rows = [list(row) for row in form.entries]
    n = form.n
    pivots = []
    lead = 0
    for col in range(n):
        pivot_row = next((r for r in range(lead, n) if rows[r][col]), None)
        if pivot_row is None:
            continue
        rows[lead], rows[pivot_row] = rows[pivot_row], rows[lead]
        inverse = form.ctx.one / rows[lead][col]
        rows[lead] = [entry * inverse for entry in rows[lead]]
        for r in range(n):
            if r != lead and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[lead])]
        pivots.append(col)
        lead += 1
    return rows, pivots


def kernel(form: GramForm) -> KernelBasis:
    """Exact basis of Ker(B); the pivot coordinates index a complement of the kernel."""
    rows, pivots = _row_reduce(form)
    free = [c for c in range(form.n) if c not in pivots]
    zero, one = form.ctx.zero, form.ctx.one
    vectors = []
    for f in free:
        v = [zero] * form.n
        v[f] = one
        for row_index, col in enumerate(pivots):
            v[col] = -rows[row_index][f]
        vectors.append(tuple(v))
    logger.debug(f"Kernel of {form.source.names} has dimension {len(vectors)}; complement {pivots}.")
    return KernelBasis(tuple(vectors), tuple(pivots), tuple(free))


def is_null(form: GramForm, vector: Vector) -> bool:
    return not any(mat_vec(form.entries, vector))


def finite_edge_witness(matrix: CoxeterMatrix) -> Optional[Tuple[int, int]]:
    """
    A pair (s, t) with finite label, on whose plane B is positive definite.

    Such a pair forces p >= 2. Returns None when every off-diagonal label is
    inf, the complete-graph case that needs a direct computation instead.
    """
    for s in range(matrix.n):
        for t in range(s + 1, matrix.n):
            if matrix.labels[s][t] != INF:
                return s, t
    return None
