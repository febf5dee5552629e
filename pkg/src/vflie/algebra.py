"""Bracket closure and structural analysis of finite-dimensional Lie algebras
of vector fields.

close() generates the smallest bracket-closed subspace containing a finite
set of fields.  The resulting LieAlgebra holds the canonical reduced
row-echelon basis of that span (ordered by pivot key, hence independent of
generator order) together with the exact structure-constant tensor, and all
queries (center, series, projections, adjoints, quotients) are exact and
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import (
    ClosureCapExceeded,
    ContextMismatch,
    DegreeCapExceeded,
    InternalInvariantViolation,
    NotAnIdeal,
    NotInSpan,
    ProjectionHypothesisViolated,
)
from .fields import VariableContext, VectorField
from .linalg import (
    CoordVector,
    EchelonBasis,
    Q,
    coordinatize,
    generic_rank,
    null_space_dense,
    rref_dense,
    uncoordinatize,
)

DEFAULT_CAP_DIM = 64
DEFAULT_CAP_ROUNDS = 32

IdealLike = Union[Sequence[int], Sequence[VectorField], Sequence[Sequence[Fraction]]]


def close(
    generators: Sequence[VectorField],
    *,
    cap_dim: int = DEFAULT_CAP_DIM,
    cap_rounds: int = DEFAULT_CAP_ROUNDS,
) -> "LieAlgebra":
    """Bracket closure of a generating set.

    Worklist over unordered basis pairs, processed in deterministic rounds;
    rows dirtied by echelon reduction are re-paired, so on termination every
    pairwise bracket of the final basis has been verified inside the span.
    Raises ClosureCapExceeded when the dimension or round cap is hit, or when
    the ring degree cap fires inside the worklist (both signal a likely
    infinite-dimensional closure).
    """
    gens = list(generators)
    if not gens:
        raise ValueError("at least one generator is required")
    if cap_dim <= 0 or cap_rounds <= 0:
        raise ValueError("caps must be positive")
    ctx = gens[0].ctx
    for g in gens:
        if g.ctx != ctx:
            raise ContextMismatch("generators belong to different contexts")

    echelon = EchelonBasis()
    fields: list[VectorField] = []
    pending: set[tuple[int, int]] = set()

    def add(vec: CoordVector) -> None:
        result = echelon.insert(vec)
        if not result.independent:
            return
        if len(echelon) > cap_dim:
            raise ClosureCapExceeded(
                f"closure dimension exceeded cap_dim={cap_dim}; "
                "the generated algebra is likely infinite-dimensional"
            )
        new = result.index
        fields.append(uncoordinatize(echelon.rows[new], ctx))
        pending.update((k, new) for k in range(new))
        for d in result.dirtied:
            fields[d] = uncoordinatize(echelon.rows[d], ctx)
            pending.update((min(d, k), max(d, k)) for k in range(len(echelon)) if k != d)

    for g in gens:
        add(coordinatize(g))

    rounds = 0
    while pending:
        rounds += 1
        if rounds > cap_rounds:
            raise ClosureCapExceeded(
                f"closure did not stabilize within cap_rounds={cap_rounds}"
            )
        batch = sorted(pending)
        pending.clear()
        for i, j in batch:
            try:
                w = fields[i].bracket(fields[j])
            except DegreeCapExceeded as exc:
                raise ClosureCapExceeded(
                    f"degree cap hit while closing ({exc}); "
                    "the generated algebra is likely infinite-dimensional"
                ) from exc
            if not w.is_zero:
                add(coordinatize(w))

    basis = tuple(uncoordinatize(row, ctx) for row in echelon.rows_sorted())
    return LieAlgebra(ctx, basis)


@dataclass(frozen=True)
class SeriesReport:
    """Dimensions of one descending series until stabilization."""

    kind: str  # "lower-central" | "derived"
    dims: tuple[int, ...]
    terminated_at_zero: bool

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "dims": list(self.dims),
            "terminated_at_zero": self.terminated_at_zero,
        }


@dataclass(frozen=True)
class Projection:
    """Component-dropping homomorphism with its image algebra and kernel."""

    source: "LieAlgebra"
    kept: tuple[int, ...]
    image: "LieAlgebra"
    kernel_basis: tuple[VectorField, ...]
    kernel_coeffs: tuple[tuple[Fraction, ...], ...]

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel_basis)

    def to_dict(self) -> dict:
        return {
            "kept": [self.source.ctx.names[i] for i in self.kept],
            "dim": self.source.dim,
            "image": {
                "variables": list(self.image.ctx.names),
                "basis": [str(b) for b in self.image.basis],
                "dim": self.image.dim,
            },
            "kernel": [str(k) for k in self.kernel_basis],
            "kernel_dim": self.kernel_dim,
        }


@dataclass(frozen=True)
class QuotientStructure:
    """Structure constants of L/ideal on representatives e_r, r in rep_indices."""

    rep_indices: tuple[int, ...]
    tensor: dict  # (a, b) with a < b -> {c: Fraction}, indices into rep_indices

    @property
    def dim(self) -> int:
        return len(self.rep_indices)

    def to_dict(self) -> dict:
        entries = []
        for (a, b), comps in sorted(self.tensor.items()):
            for c, coeff in sorted(comps.items()):
                entries.append([a, b, c, str(coeff)])
        return {"rep_indices": list(self.rep_indices), "structure": entries}


class LieAlgebra:
    """Closed algebra: canonical echelon basis plus exact structure tensor."""

    def __init__(self, ctx: VariableContext, basis: Sequence[VectorField]):
        self.ctx = ctx
        self.basis = tuple(basis)
        self._echelon = EchelonBasis()
        for b in self.basis:
            result = self._echelon.insert(coordinatize(b))
            if not result.independent or result.dirtied:
                raise InternalInvariantViolation("basis is not reduced echelon")
        self.structure: dict[tuple[int, int], dict[int, Fraction]] = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                try:
                    coeffs = self._echelon.express(coordinatize(self.basis[i].bracket(self.basis[j])))
                except NotInSpan:
                    raise InternalInvariantViolation(
                        "bracket of basis elements escapes the span; closure is broken"
                    ) from None
                entry = {k: c for k, c in enumerate(coeffs) if c}
                if entry:
                    self.structure[(i, j)] = entry
        self._center_coeffs: list[list[Fraction]] | None = None

    # -- basics --------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def c(self, i: int, j: int, k: int) -> Fraction:
        """Structure constant: coefficient of e_k in [e_i, e_j]."""
        if i == j:
            return Q(0)
        if i < j:
            return self.structure.get((i, j), {}).get(k, Q(0))
        return -self.structure.get((j, i), {}).get(k, Q(0))

    def bracket_coeffs(
        self, u: Sequence[Fraction], w: Sequence[Fraction]
    ) -> list[Fraction]:
        """[u, w] in basis coordinates, computed on the structure tensor."""
        out = [Q(0)] * self.dim
        for (i, j), comps in self.structure.items():
            factor = u[i] * w[j] - u[j] * w[i]
            if factor:
                for k, coeff in comps.items():
                    out[k] += factor * coeff
        return out

    def element(self, coeffs: Sequence[Fraction]) -> VectorField:
        out = self.ctx.field([self.ctx.zero_poly()] * self.ctx.nvars)
        for c, b in zip(coeffs, self.basis):
            if c:
                out = out + b * Q(c)
        return out

    def express(self, field: VectorField) -> list[Fraction]:
        """Coordinates of a field over the basis; raises NotInSpan otherwise."""
        if field.ctx != self.ctx:
            raise ContextMismatch("field belongs to a different context")
        return self._echelon.express(coordinatize(field))

    def contains(self, field: VectorField) -> bool:
        return self._echelon.contains(coordinatize(field))

    def _coeffs_of(self, v: Union[VectorField, Sequence[Fraction]]) -> list[Fraction]:
        if isinstance(v, VectorField):
            return self.express(v)
        coeffs = [Q(c) for c in v]
        if len(coeffs) != self.dim:
            raise ValueError("coefficient vector has the wrong length")
        return coeffs

    # -- center ---------------------------------------------------------------

    def center_coeffs(self) -> list[list[Fraction]]:
        """Null space of the stacked adjoint maps, in basis coordinates."""
        if self._center_coeffs is None:
            rows = []
            for j in range(self.dim):
                for k in range(self.dim):
                    row = [self.c(i, j, k) for i in range(self.dim)]
                    if any(row):
                        rows.append(row)
            self._center_coeffs = null_space_dense(rows, self.dim)
        return self._center_coeffs

    def center(self) -> list[VectorField]:
        return [self.element(v) for v in self.center_coeffs()]

    # -- series and flags -------------------------------------------------------

    def _subspace_brackets(
        self, left: list[list[Fraction]], right: list[list[Fraction]]
    ) -> list[list[Fraction]]:
        vecs = []
        for u in left:
            for w in right:
                v = self.bracket_coeffs(u, w)
                if any(v):
                    vecs.append(v)
        return rref_dense(vecs)[0]

    def series(self, kind: str) -> SeriesReport:
        """Lower-central (g, [g,g^k]) or derived (g^(k), [g^(k),g^(k)]) dims."""
        if kind not in ("lower-central", "derived"):
            raise ValueError("kind must be 'lower-central' or 'derived'")
        full = [
            [Q(1) if i == j else Q(0) for i in range(self.dim)] for j in range(self.dim)
        ]
        dims = [self.dim]
        current = full
        terminated = self.dim == 0
        while dims[-1] > 0:
            left = full if kind == "lower-central" else current
            nxt = self._subspace_brackets(left, current)
            if len(nxt) == dims[-1]:
                break  # stabilized above zero
            dims.append(len(nxt))
            current = nxt
            if not nxt:
                terminated = True
        return SeriesReport(kind, tuple(dims), terminated)

    def is_abelian(self) -> bool:
        return not self.structure

    def is_nilpotent(self) -> bool:
        return self.series("lower-central").terminated_at_zero

    def is_solvable(self) -> bool:
        return self.series("derived").terminated_at_zero

    # -- adjoint ----------------------------------------------------------------

    def adjoint_matrix(self, v: Union[VectorField, Sequence[Fraction]]) -> list[list[Fraction]]:
        """Matrix of ad(v) on the basis: entry [k][j] = e_k-coefficient of [v, e_j]."""
        x = self._coeffs_of(v)
        mat = [[Q(0)] * self.dim for _ in range(self.dim)]
        for (i, j), comps in self.structure.items():
            for k, coeff in comps.items():
                if x[i]:
                    mat[k][j] += x[i] * coeff
                if x[j]:
                    mat[k][i] -= x[j] * coeff
        return mat

    # -- projection ---------------------------------------------------------------

    def project(self, kept: Sequence[Union[int, str]]) -> Projection:
        """Drop the complementary components; verifies the block hypothesis.

        Requires every component of every basis element to depend only on the
        kept variables (this is what makes the dropped part an abelian ideal
        and the kept part a homomorphic image).
        """
        indices = sorted(
            self.ctx.index(k) if isinstance(k, str) else int(k) for k in kept
        )
        if not indices or len(set(indices)) != len(indices):
            raise ValueError("kept variables must be a nonempty distinct subset")
        if not all(0 <= i < self.ctx.nvars for i in indices):
            raise ValueError("kept variable index out of range")
        if len(indices) == self.ctx.nvars:
            raise ValueError("at least one variable must be dropped")
        for b in self.basis:
            for ci, comp in enumerate(b.comps):
                if not comp.depends_only_on(indices):
                    raise ProjectionHypothesisViolated(
                        f"component {self.ctx.names[ci]} of basis element '{b}' "
                        "depends on a dropped variable"
                    )
        sub_ctx = VariableContext(tuple(self.ctx.names[i] for i in indices))
        images = []
        for b in self.basis:
            comps = tuple(b.comps[i].restrict(indices) for i in indices)
            f = VectorField(sub_ctx, comps)
            if not f.is_zero:
                images.append(f)
        image = (
            close(images, cap_dim=max(self.dim, 1), cap_rounds=DEFAULT_CAP_ROUNDS)
            if images
            else LieAlgebra(sub_ctx, ())
        )
        # kernel: combinations of basis elements with vanishing kept components
        keys = sorted(
            {
                (i, mono)
                for b in self.basis
                for i in indices
                for mono in b.comps[i].term_map()
            },
            key=lambda km: (km[0], km[1].sort_key()),
        )
        rows = []
        for i, mono in keys:
            rows.append([b.comps[i].term_map().get(mono, Q(0)) for b in self.basis])
        kernel_coeffs = null_space_dense(rows, self.dim)
        kernel_fields = tuple(self.element(v) for v in kernel_coeffs)
        if image.dim + len(kernel_fields) != self.dim:
            raise InternalInvariantViolation("projection dimension identity failed")
        return Projection(
            self,
            tuple(indices),
            image,
            kernel_fields,
            tuple(tuple(v) for v in kernel_coeffs),
        )

    # -- ideals and quotients --------------------------------------------------------

    def ideal_subspace(self, ideal: IdealLike) -> list[list[Fraction]]:
        """Normalize an ideal given as basis indices, fields, or coefficient
        vectors into echelonized coefficient rows (not yet verified)."""
        items = list(ideal)
        if not items:
            raise ValueError("ideal must be nonempty")
        vecs: list[list[Fraction]] = []
        for item in items:
            if isinstance(item, VectorField):
                vecs.append(self.express(item))
            elif isinstance(item, int):
                if not 0 <= item < self.dim:
                    raise ValueError(f"basis index {item} out of range")
                vec = [Q(0)] * self.dim
                vec[item] = Q(1)
                vecs.append(vec)
            else:
                vecs.append(self._coeffs_of(item))
        return rref_dense(vecs)[0]

    def verify_ideal(self, rows: list[list[Fraction]]) -> None:
        _, pivots = rref_dense(rows)

        def reduce_mod(vec: list[Fraction]) -> list[Fraction]:
            v = list(vec)
            for r, c in enumerate(pivots):
                if v[c]:
                    coeff = v[c]
                    v = [a - coeff * b for a, b in zip(v, rows[r])]
            return v

        for i in range(self.dim):
            unit = [Q(1) if t == i else Q(0) for t in range(self.dim)]
            for w in rows:
                if any(reduce_mod(self.bracket_coeffs(unit, w))):
                    raise NotAnIdeal(
                        f"[{self.basis[i]}, ideal] is not contained in the ideal"
                    )

    def quotient_structure(self, ideal: IdealLike) -> QuotientStructure:
        """Structure constants of L/ideal on the complementary basis lines."""
        rows = self.ideal_subspace(ideal)
        self.verify_ideal(rows)
        _, pivots = rref_dense(rows)
        reps = tuple(i for i in range(self.dim) if i not in pivots)

        def reduce_mod(vec: list[Fraction]) -> list[Fraction]:
            v = list(vec)
            for r, c in enumerate(pivots):
                if v[c]:
                    coeff = v[c]
                    v = [a - coeff * b for a, b in zip(v, rows[r])]
            return v

        tensor: dict[tuple[int, int], dict[int, Fraction]] = {}
        for a in range(len(reps)):
            for b in range(a + 1, len(reps)):
                ua = [Q(1) if t == reps[a] else Q(0) for t in range(self.dim)]
                ub = [Q(1) if t == reps[b] else Q(0) for t in range(self.dim)]
                reduced = reduce_mod(self.bracket_coeffs(ua, ub))
                entry = {
                    c: reduced[rep] for c, rep in enumerate(reps) if reduced[rep]
                }
                if entry:
                    tensor[(a, b)] = entry
        return QuotientStructure(reps, tensor)

    # -- reporting -----------------------------------------------------------------

    def report(self) -> dict:
        """JSON-ready structural report with a stable key order."""
        center_fields = self.center()
        entries = []
        for (i, j), comps in sorted(self.structure.items()):
            for k, coeff in sorted(comps.items()):
                entries.append([i, j, k, str(coeff)])
        return {
            "variables": list(self.ctx.names),
            "basis": [str(b) for b in self.basis],
            "dim": self.dim,
            "structure": entries,
            "nilpotent": self.is_nilpotent(),
            "solvable": self.is_solvable(),
            "abelian": self.is_abelian(),
            "center": [str(v) for v in center_fields],
            "generic_rank": generic_rank(self.basis),
            "center_rank": generic_rank(center_fields),
        }
