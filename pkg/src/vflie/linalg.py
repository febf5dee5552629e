"""Exact sparse linear algebra over Q.

Vector fields are coordinatized over keys (component index, monomial); an
EchelonBasis keeps a fully reduced row set with unit pivots, so span
membership, residuals and coordinates are all exact.  Dense helpers on
Fraction matrices back the null-space and solve steps used by the algebra
layer, and generic_rank decides the pointwise-span dimension of a field
family through symbolic minors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import NotInSpan
from .fields import VariableContext, VectorField
from .ring import ExpMonomial, ExpPoly, Q

Key = tuple[int, ExpMonomial]
CoordVector = dict[Key, Fraction]


def key_sort(key: Key):
    return (key[0], key[1].sort_key())


def coordinatize(field: VectorField) -> CoordVector:
    """Linear bijection onto sparse coordinates keyed by (component, monomial)."""
    out: CoordVector = {}
    for i, comp in enumerate(field.comps):
        for mono, coeff in comp.term_map().items():
            out[(i, mono)] = coeff
    return out


def uncoordinatize(vec: CoordVector, ctx: VariableContext) -> VectorField:
    n = ctx.nvars
    comps: list[dict[ExpMonomial, Fraction]] = [{} for _ in range(n)]
    for (i, mono), coeff in vec.items():
        comps[i][mono] = coeff
    return VectorField(ctx, tuple(ExpPoly(n, c) for c in comps))


def _leading(vec: CoordVector) -> Key:
    return min(vec, key=key_sort)


def _axpy(dst: CoordVector, src: CoordVector, scale: Fraction) -> None:
    """dst += scale * src, dropping exact zeros."""
    for key, coeff in src.items():
        acc = dst.get(key, Q(0)) + scale * coeff
        if acc:
            dst[key] = acc
        else:
            dst.pop(key, None)


@dataclass
class InsertResult:
    independent: bool
    residual: CoordVector
    index: int | None
    dirtied: tuple[int, ...]


class EchelonBasis:
    """Mutable reduced row set with unit pivots, one owner at a time.

    Rows are stored in insertion order so callers can keep stable indices
    while the basis grows; `order()` gives the pivot-sorted (reduced
    row-echelon) view.  Every pivot column is zero in all other rows and
    the span is independent of insertion order.
    """

    def __init__(self) -> None:
        self.rows: list[CoordVector] = []
        self.pivots: list[Key] = []
        self._pivot_row: dict[Key, int] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: CoordVector) -> tuple[CoordVector, dict[int, Fraction]]:
        """Fully reduce a copy of vec; returns (residual, row -> coefficient)."""
        v = dict(vec)
        coeffs: dict[int, Fraction] = {}
        hits = sorted((k for k in v if k in self._pivot_row), key=key_sort)
        for key in hits:
            coeff = v.get(key)
            if not coeff:
                continue
            row_idx = self._pivot_row[key]
            coeffs[row_idx] = coeff
            _axpy(v, self.rows[row_idx], -coeff)
        return v, coeffs

    def contains(self, vec: CoordVector) -> bool:
        residual, _ = self.reduce(vec)
        return not residual

    def insert(self, vec: CoordVector) -> InsertResult:
        residual, _ = self.reduce(vec)
        if not residual:
            return InsertResult(False, {}, None, ())
        lead = _leading(residual)
        scale = residual[lead]
        row = {k: c / scale for k, c in residual.items()}
        index = len(self.rows)
        dirtied = []
        for i, other in enumerate(self.rows):
            coeff = other.get(lead)
            if coeff:
                _axpy(other, row, -coeff)
                dirtied.append(i)
        self.rows.append(row)
        self.pivots.append(lead)
        self._pivot_row[lead] = index
        return InsertResult(True, row, index, tuple(dirtied))

    def express(self, vec: CoordVector) -> list[Fraction]:
        """Exact coordinates of vec over the rows (insertion order)."""
        residual, coeffs = self.reduce(vec)
        if residual:
            raise NotInSpan("vector is outside the span of the basis")
        return [coeffs.get(i, Q(0)) for i in range(len(self.rows))]

    def order(self) -> list[int]:
        """Row indices sorted by pivot key (the reduced row-echelon order)."""
        return sorted(range(len(self.rows)), key=lambda i: key_sort(self.pivots[i]))

    def rows_sorted(self) -> list[CoordVector]:
        return [self.rows[i] for i in self.order()]


# -- dense exact helpers ------------------------------------------------------


def rref_dense(matrix: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of a copy; returns (rows, pivot columns)."""
    rows = [list(map(Q, r)) for r in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        scale = rows[r][c]
        rows[r] = [v / scale for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                coeff = rows[i][c]
                rows[i] = [a - coeff * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def null_space_dense(matrix: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Canonical null-space basis: one vector per free column, ascending."""
    rows, pivots = rref_dense(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Q(0)] * ncols
        vec[f] = Q(1)
        for r, c in enumerate(pivots):
            vec[c] = -rows[r][f]
        basis.append(vec)
    return basis


def solve_dense(
    matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> list[Fraction] | None:
    """One exact solution of A x = b with free unknowns set to 0, or None."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    augmented = [list(map(Q, row)) + [Q(b)] for row, b in zip(matrix, rhs)]
    rows, pivots = rref_dense(augmented)
    solution = [Q(0)] * ncols
    for r, c in enumerate(pivots):
        if c == ncols:
            return None  # pivot in the constant column: inconsistent
        solution[c] = rows[r][ncols]
    return solution


def rank_dense(matrix: Sequence[Sequence[Fraction]]) -> int:
    return len(rref_dense(matrix)[0])


# -- generic rank -------------------------------------------------------------


def _det(entries: list[list[ExpPoly]]) -> ExpPoly:
    k = len(entries)
    if k == 1:
        return entries[0][0]
    if k == 2:
        return entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0]
    acc = ExpPoly.zero(entries[0][0].nvars)
    for j in range(k):
        minor = [[row[c] for c in range(k) if c != j] for row in entries[1:]]
        term = entries[0][j] * _det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def generic_rank(fields: Sequence[VectorField]) -> int:
    """Largest k with a symbolically nonzero k x k minor of the coefficient matrix.

    Rows are the fields, columns the variables.  For these real-analytic
    coefficients this equals the maximal pointwise span dimension, attained
    on a dense open set; a rank at a specific point is deliberately not
    computed.
    """
    fields = [f for f in fields if not f.is_zero]
    if not fields:
        return 0
    ctx = fields[0].ctx
    for f in fields:
        if f.ctx != ctx:
            from .errors import ContextMismatch

            raise ContextMismatch("rank of fields over different contexts")
    n = ctx.nvars
    m = len(fields)
    for k in range(min(m, n), 0, -1):
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                entries = [[fields[r].comps[c] for c in cols] for r in rows]
                if not _det(entries).is_zero:
                    return k
    return 0
