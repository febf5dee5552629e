"""Decision procedures on closed nilpotent algebras.

classify() sorts a nilpotent algebra by the generic rank and dimension of its
center: abelian algebras by rank; nonabelian ones into the center-rank-2
case, the center-rank-1 / dim >= 2 case, or the center-dimension-1 case whose
subcase (a-d) is read off the component-dropping projection when the given
coordinates admit it.  jordan_chains() decomposes an ad-nilpotent operator on
an invariant subspace into its kernel-filtration chains, split_check()
decides split extensions over abelian ideals by an exact linear system (with
an infeasibility certificate when no complement exists), and match_template()
tests a basis against the constructive normal-form shapes in the given
coordinates, never attempting a coordinate change.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .algebra import IdealLike, LieAlgebra
from .errors import (
    ContextMismatch,
    IdealNotAbelian,
    InternalInvariantViolation,
    NotInvariant,
    NotNilpotent,
    NotNilpotentOperator,
    ProjectionHypothesisViolated,
)
from .fields import VectorField
from .linalg import Q, generic_rank, null_space_dense, rref_dense, solve_dense
from .ring import ExpPoly

CASE_CENTER_RANK2 = "CenterRank2"
CASE_CENTER_RANK1_DIMGE2 = "CenterRank1DimGE2"
CASE_CENTER_DIM1 = "CenterDim1"
SUBCASE_UNDETERMINED = "undetermined-in-these-coordinates"

TEMPLATES = (
    "abelian-rank1",
    "abelian-rank2",
    "abelian-rank3",
    "center-rank2",
    "heisenberg",
    "single-chain",
    "nonabelian-projection",
    "abelian-projection",
)


# ---------------------------------------------------------------------------
# classification report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassificationReport:
    dim: int
    abelian: bool
    abelian_rank: int | None
    case: str | None
    subcase: str | None
    center_dim: int
    center_rank: int
    evidence: dict

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "abelian": self.abelian,
            "abelian_rank": self.abelian_rank,
            "case": self.case,
            "subcase": self.subcase,
            "center_dim": self.center_dim,
            "center_rank": self.center_rank,
            "evidence": self.evidence,
        }


def _constant_axis(v: VectorField) -> int | None:
    """Index i when v = c * d/dx_i with constant c != 0, else None."""
    axis = None
    for i, comp in enumerate(v.comps):
        if comp.is_zero:
            continue
        if not comp.is_constant:
            return None
        if axis is not None:
            return None
        axis = i
    return axis


def classify(algebra: LieAlgebra) -> ClassificationReport:
    """Sort a closed nilpotent algebra by (generic rank, dimension) of its center."""
    if algebra.ctx.nvars != 3:
        raise ContextMismatch("classification is defined for 3-variable contexts")
    if not algebra.is_nilpotent():
        raise NotNilpotent("classification requires a nilpotent algebra")

    if algebra.is_abelian():
        rank = generic_rank(algebra.basis)
        matched = [name for name in ("abelian-rank1", "abelian-rank2", "abelian-rank3")
                   if match_template(algebra, name).matched]
        return ClassificationReport(
            dim=algebra.dim,
            abelian=True,
            abelian_rank=rank,
            case=None,
            subcase=None,
            center_dim=algebra.dim,
            center_rank=rank,
            evidence={"templates_matched": matched},
        )

    center_fields = algebra.center()
    dz = len(center_fields)
    rz = generic_rank(center_fields)
    evidence: dict = {
        "center": [str(v) for v in center_fields],
        "center_dim": dz,
        "center_rank": rz,
    }
    if rz >= 3:
        raise InternalInvariantViolation(
            "nonabelian nilpotent algebra with center of rank 3: impossible"
        )
    if rz == 2:
        return ClassificationReport(
            algebra.dim, False, None, CASE_CENTER_RANK2, None, dz, rz, evidence
        )
    if dz >= 2:
        return ClassificationReport(
            algebra.dim, False, None, CASE_CENTER_RANK1_DIMGE2, None, dz, rz, evidence
        )

    # center is one-dimensional: read the subcase off the projection that
    # drops the center direction, when the given coordinates allow it
    subcase = SUBCASE_UNDETERMINED
    axis = _constant_axis(center_fields[0])
    if axis is None:
        evidence["undetermined_reason"] = (
            "center is not a constant multiple of a coordinate field in these coordinates"
        )
    else:
        evidence["center_axis"] = algebra.ctx.names[axis]
        kept = [i for i in range(3) if i != axis]
        try:
            proj = algebra.project(kept)
        except ProjectionHypothesisViolated as exc:
            evidence["undetermined_reason"] = str(exc)
        else:
            image = proj.image
            if image.dim == 0:
                raise InternalInvariantViolation(
                    "nonabelian algebra with trivial projection image"
                )
            image_rank = generic_rank(image.basis)
            evidence["image_dim"] = image.dim
            evidence["image_rank"] = image_rank
            evidence["image_abelian"] = image.is_abelian()
            evidence["kernel_dim"] = proj.kernel_dim
            if image_rank == 1:
                # trivial kernel <=> no kernel element of positive degree in
                # the translation direction (kernel elements free of it are central)
                subcase = "a" if proj.kernel_dim == 1 else "b"
            elif not image.is_abelian():
                subcase = "c"
            else:
                subcase = "d"
    return ClassificationReport(
        algebra.dim, False, None, CASE_CENTER_DIM1, subcase, dz, rz, evidence
    )


# ---------------------------------------------------------------------------
# Jordan chains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JordanDecomposition:
    """Chains [v, Nv, N^2 v, ...] of N = ad(operator) on an invariant subspace.

    Chain elements jointly form a basis of the subspace; the number of chains
    equals the kernel dimension of the restricted operator; each chain ends
    in a kernel element (its terminal vector).
    """

    operator: VectorField
    ideal_basis: tuple[VectorField, ...]
    chains: tuple[tuple[VectorField, ...], ...]

    @property
    def generators(self) -> tuple[VectorField, ...]:
        return tuple(chain[0] for chain in self.chains)

    @property
    def terminals(self) -> tuple[VectorField, ...]:
        return tuple(chain[-1] for chain in self.chains)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(chain) for chain in self.chains)

    def aligned_heads(self) -> list[tuple[ExpPoly, ...]] | None:
        """Coefficients of each chain head along the terminal directions.

        Defined when all terminals are constant fields, linearly independent,
        and the heads lie in the terminals' pointwise span; returns, per
        chain, one coefficient function per terminal.  Returns None when the
        decomposition does not apply.
        """
        terms = self.terminals
        n = terms[0].ctx.nvars
        rows = []
        for t in terms:
            if not all(c.is_constant for c in t.comps):
                return None
            rows.append([c.constant_coefficient() for c in t.comps])
        if len(rref_dense(rows)[0]) != len(terms):
            return None
        matrix = [[rows[j][i] for j in range(len(terms))] for i in range(n)]
        result = []
        for chain in self.chains:
            head = chain[0]
            coeffs: list[dict] = [dict() for _ in terms]
            monos = sorted(
                {m for comp in head.comps for m in comp.term_map()},
                key=lambda m: m.sort_key(),
            )
            for mono in monos:
                rhs = [head.comps[i].term_map().get(mono, Q(0)) for i in range(n)]
                sol = solve_dense(matrix, rhs)
                if sol is None or any(
                    sum(matrix[i][j] * sol[j] for j in range(len(terms))) != rhs[i]
                    for i in range(n)
                ):
                    return None
                for j, c in enumerate(sol):
                    if c:
                        coeffs[j][mono] = c
            result.append(tuple(ExpPoly(n, c) for c in coeffs))
        return result

    def to_dict(self) -> dict:
        return {
            "operator": str(self.operator),
            "ideal": [str(w) for w in self.ideal_basis],
            "chains": [[str(v) for v in chain] for chain in self.chains],
            "chain_lengths": list(self.lengths),
            "kernel_dim": len(self.chains),
        }


def _dense_insert(rows: list[list[Fraction]], pivots: list[int], vec: Sequence[Fraction]) -> bool:
    v = list(vec)
    for row, p in zip(rows, pivots):
        if v[p]:
            coeff = v[p]
            v = [a - coeff * b for a, b in zip(v, row)]
    lead = next((i for i, a in enumerate(v) if a), None)
    if lead is None:
        return False
    scale = v[lead]
    rows.append([a / scale for a in v])
    pivots.append(lead)
    return True


def jordan_chains(
    algebra: LieAlgebra,
    operator: Union[VectorField, Sequence[Fraction]],
    ideal: IdealLike,
) -> JordanDecomposition:
    """Kernel-filtration chains of ad(operator) restricted to an invariant subspace.

    Deterministic: candidate heads are drawn from the canonical null-space
    bases of the operator powers in decreasing chain length.
    """
    op_coeffs = algebra._coeffs_of(operator)
    op_field = operator if isinstance(operator, VectorField) else algebra.element(op_coeffs)
    rows = algebra.ideal_subspace(ideal)
    _, pivots = rref_dense(rows)
    m = len(rows)

    def to_ideal_coords(vec: list[Fraction]) -> list[Fraction]:
        v = list(vec)
        coeffs = []
        for row, p in zip(rows, pivots):
            coeffs.append(v[p])
            if v[p]:
                c = v[p]
                v = [a - c * b for a, b in zip(v, row)]
        if any(v):
            raise NotInvariant("subspace is not invariant under the operator")
        return coeffs

    # matrix of the restricted operator over the subspace basis
    n_mat = [[Q(0)] * m for _ in range(m)]
    for s in range(m):
        image = to_ideal_coords(algebra.bracket_coeffs(op_coeffs, rows[s]))
        for t in range(m):
            n_mat[t][s] = image[t]

    def mat_mul(a, b):
        return [
            [sum(a[i][k] * b[k][j] for k in range(m)) for j in range(m)]
            for i in range(m)
        ]

    powers = [n_mat]  # powers[k] = N^(k+1); grows until N^p = 0
    while any(any(row) for row in powers[-1]):
        if len(powers) > m:
            raise NotNilpotentOperator(
                "adjoint operator is not nilpotent on the subspace"
            )
        powers.append(mat_mul(powers[-1], n_mat))
    p = len(powers)  # nilpotency index; p = 1 for the zero operator
    null_spaces: dict[int, list[list[Fraction]]] = {0: []}
    for j in range(1, p + 1):
        null_spaces[j] = null_space_dense(powers[j - 1], m)

    def apply_n(vec: list[Fraction]) -> list[Fraction]:
        return [sum(n_mat[t][s] * vec[s] for s in range(m)) for t in range(m)]

    chains_vec: list[list[list[Fraction]]] = []
    for j in range(p, 0, -1):
        ech_rows: list[list[Fraction]] = []
        ech_pivots: list[int] = []
        for w in null_spaces[j - 1]:
            _dense_insert(ech_rows, ech_pivots, w)
        for chain in chains_vec:  # carried images at height j
            _dense_insert(ech_rows, ech_pivots, chain[len(chain) - j])
        for w in null_spaces[j]:
            if _dense_insert(ech_rows, ech_pivots, w):
                chain = [list(w)]
                for _ in range(j - 1):
                    chain.append(apply_n(chain[-1]))
                chains_vec.append(chain)
    if sum(len(c) for c in chains_vec) != m:
        raise InternalInvariantViolation("chain lengths do not sum to the subspace dimension")
    if len(chains_vec) != len(null_spaces[1]):
        raise InternalInvariantViolation("chain count differs from operator kernel dimension")

    def to_field(vec: list[Fraction]) -> VectorField:
        coeffs = [Q(0)] * algebra.dim
        for t, c in enumerate(vec):
            if c:
                for k in range(algebra.dim):
                    coeffs[k] += c * rows[t][k]
        return algebra.element(coeffs)

    ideal_fields = tuple(algebra.element(r) for r in rows)
    chains = tuple(tuple(to_field(v) for v in chain) for chain in chains_vec)
    return JordanDecomposition(op_field, ideal_fields, chains)


# ---------------------------------------------------------------------------
# one-dimensional ideals of the central quotient
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OneDimIdealFamily:
    """Lines in the center of L/Z(L); each line's preimage is a 1-dim-over-center ideal.

    For a nilpotent algebra every one-dimensional ideal of the quotient is a
    central line there (the adjoint action on it is nilpotent, hence zero).
    """

    degenerate: bool
    center_dim: int
    parameter_dim: int
    lifts: tuple[VectorField, ...]

    def to_dict(self) -> dict:
        return {
            "degenerate": self.degenerate,
            "center_dim": self.center_dim,
            "parameter_dim": self.parameter_dim,
            "quotient_center_lifts": [str(v) for v in self.lifts],
            "preimage_dim": None if self.degenerate else self.center_dim + 1,
        }


def one_dim_ideals_mod_center(algebra: LieAlgebra) -> OneDimIdealFamily:
    if algebra.is_abelian():
        return OneDimIdealFamily(True, algebra.dim, algebra.dim, tuple(algebra.basis))
    if not algebra.is_nilpotent():
        raise NotNilpotent("one-dimensional-ideal analysis requires nilpotency")
    center = algebra.center_coeffs()
    quotient = algebra.quotient_structure(center)
    q = quotient.dim
    rows = []
    for b in range(q):
        for c in range(q):
            row = [Q(0)] * q
            for a in range(q):
                lo, hi = min(a, b), max(a, b)
                coeff = quotient.tensor.get((lo, hi), {}).get(c, Q(0))
                if a > b:
                    coeff = -coeff
                row[a] = coeff
            if any(row):
                rows.append(row)
    qcenter = null_space_dense(rows, q)
    lifts = []
    for vec in qcenter:
        coeffs = [Q(0)] * algebra.dim
        for a, c in enumerate(vec):
            coeffs[quotient.rep_indices[a]] = c
        lifts.append(algebra.element(coeffs))
    return OneDimIdealFamily(False, len(center), len(qcenter), tuple(lifts))


# ---------------------------------------------------------------------------
# split extensions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstraintRow:
    pair: tuple[int, int]  # basis indices of the two lifted elements
    coordinate: int  # basis index whose coefficient this row equates
    coeffs: dict  # unknown index -> Fraction
    const: Fraction

    def to_dict(self) -> dict:
        return {
            "pair": list(self.pair),
            "coordinate": self.coordinate,
            "coeffs": {str(u): str(c) for u, c in sorted(self.coeffs.items())},
            "const": str(self.const),
        }


@dataclass(frozen=True)
class SplitCertificate:
    """Exact infeasible linear system for complement lifts, with the
    contradiction located."""

    unknowns: tuple[dict, ...]  # per unknown: lift basis index + ideal element
    rows: tuple[ConstraintRow, ...]
    conflicts: tuple[dict, ...]

    def to_dict(self) -> dict:
        return {
            "unknowns": list(self.unknowns),
            "rows": [r.to_dict() for r in self.rows],
            "conflicts": list(self.conflicts),
        }


@dataclass(frozen=True)
class SplitVerdict:
    split: bool
    complement: tuple[VectorField, ...] | None
    certificate: SplitCertificate | None

    def to_dict(self) -> dict:
        return {
            "split": self.split,
            "complement": None if self.complement is None else [str(v) for v in self.complement],
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
        }


def split_check(algebra: LieAlgebra, ideal: IdealLike) -> SplitVerdict:
    """Decide whether the extension of L/ideal by an abelian ideal splits.

    A complement must have a basis a_i = e_i + k_i with e_i spanning a fixed
    complement of the ideal and k_i unknown in the ideal; closing under
    brackets with the quotient structure constants is a linear condition
    because the ideal is abelian.  Returns a verified complement or the
    infeasible system with the contradictory rows identified.
    """
    rows_ideal = algebra.ideal_subspace(ideal)
    algebra.verify_ideal(rows_ideal)
    for s in range(len(rows_ideal)):
        for t in range(s + 1, len(rows_ideal)):
            if any(algebra.bracket_coeffs(rows_ideal[s], rows_ideal[t])):
                raise IdealNotAbelian(
                    "split check requires an abelian ideal (linear lift system)"
                )
    quotient = algebra.quotient_structure(rows_ideal)
    reps = quotient.rep_indices
    q, m, d = len(reps), len(rows_ideal), algebra.dim

    def unit(i: int) -> list[Fraction]:
        return [Q(1) if t == i else Q(0) for t in range(d)]

    bracket_lift_ideal = [
        [algebra.bracket_coeffs(unit(reps[a]), rows_ideal[t]) for t in range(m)]
        for a in range(q)
    ]

    unknowns = tuple(
        {"lift": reps[a], "ideal_index": t, "ideal_element": str(algebra.element(rows_ideal[t]))}
        for a in range(q)
        for t in range(m)
    )

    def u_index(a: int, t: int) -> int:
        return a * m + t

    raw_rows: list[ConstraintRow] = []
    for a in range(q):
        for b in range(a + 1, q):
            base = algebra.bracket_coeffs(unit(reps[a]), unit(reps[b]))
            mu = quotient.tensor.get((a, b), {})
            const_vec = list(base)
            for c, coeff in mu.items():
                const_vec[reps[c]] -= coeff
            coeff_vecs: dict[int, list[Fraction]] = {}

            def add_vec(uidx: int, vec: Sequence[Fraction], scale: Fraction) -> None:
                acc = coeff_vecs.setdefault(uidx, [Q(0)] * d)
                for k, v in enumerate(vec):
                    if v:
                        acc[k] += scale * v

            for t in range(m):
                add_vec(u_index(b, t), bracket_lift_ideal[a][t], Q(1))
                add_vec(u_index(a, t), bracket_lift_ideal[b][t], Q(-1))
                for c, coeff in mu.items():
                    add_vec(u_index(c, t), rows_ideal[t], -coeff)
            for k in range(d):
                coeffs = {u: vec[k] for u, vec in coeff_vecs.items() if vec[k]}
                if coeffs or const_vec[k]:
                    raw_rows.append(
                        ConstraintRow((reps[a], reps[b]), k, coeffs, const_vec[k])
                    )

    nunk = q * m
    matrix = []
    rhs = []
    for row in raw_rows:
        vec = [Q(0)] * nunk
        for u, c in row.coeffs.items():
            vec[u] = c
        matrix.append(vec)
        rhs.append(-row.const)
    solution = solve_dense(matrix, rhs) if matrix else [Q(0)] * nunk
    if solution is not None and all(
        sum(row[u] * solution[u] for u in range(nunk)) == b
        for row, b in zip(matrix, rhs)
    ):
        complement = []
        for a in range(q):
            coeffs = unit(reps[a])
            for t in range(m):
                s = solution[u_index(a, t)]
                if s:
                    for k in range(d):
                        coeffs[k] += s * rows_ideal[t][k]
            complement.append(algebra.element(coeffs))
        _verify_complement(algebra, complement, rows_ideal)
        return SplitVerdict(True, tuple(complement), None)

    conflicts: list[dict] = []
    singles: dict[int, list[tuple[int, Fraction]]] = {}
    for r, row in enumerate(raw_rows):
        if not row.coeffs and row.const:
            conflicts.append({"kind": "constant-row", "row_indices": [r]})
        elif len(row.coeffs) == 1:
            (u, c), = row.coeffs.items()
            singles.setdefault(u, []).append((r, -row.const / c))
    for u, entries in sorted(singles.items()):
        values = {v for _, v in entries}
        if len(values) > 1:
            conflicts.append(
                {
                    "kind": "singleton-pair",
                    "unknown": u,
                    "row_indices": [r for r, _ in entries],
                    "values": [str(v) for _, v in entries],
                }
            )
    if not conflicts:
        conflicts.append({"kind": "elimination", "detail": "system is inconsistent under exact elimination"})
    certificate = SplitCertificate(unknowns, tuple(raw_rows), tuple(conflicts))
    return SplitVerdict(False, None, certificate)


def _verify_complement(
    algebra: LieAlgebra, complement: list[VectorField], rows_ideal: list[list[Fraction]]
) -> None:
    comp_rows = rref_dense([algebra.express(v) for v in complement])[0]
    if len(comp_rows) != len(complement):
        raise InternalInvariantViolation("complement is not independent")
    combined = rref_dense(comp_rows + rows_ideal)[0]
    if len(combined) != algebra.dim:
        raise InternalInvariantViolation("complement + ideal do not span the algebra")
    for i in range(len(complement)):
        for j in range(i + 1, len(complement)):
            w = algebra.bracket_coeffs(
                algebra.express(complement[i]), algebra.express(complement[j])
            )
            residual = list(w)
            rows, pivots = rref_dense(comp_rows)
            for row, p in zip(rows, pivots):
                if residual[p]:
                    c = residual[p]
                    residual = [x - c * y for x, y in zip(residual, row)]
            if any(residual):
                raise InternalInvariantViolation("complement is not a subalgebra")


# ---------------------------------------------------------------------------
# normal-form templates (checked in the given coordinates only)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TemplateMatch:
    template: str
    matched: bool
    details: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "template": self.template,
            "matched": self.matched,
            "details": list(self.details),
        }


def match_template(algebra: LieAlgebra, template: str) -> TemplateMatch:
    """Shape test of the basis against one constructive normal form.

    A negative match is a result, not an error; no coordinate change is
    attempted.  Variable roles follow context order: the first variable
    plays x, the second y, the third z.
    """
    if template not in TEMPLATES:
        raise ValueError(f"unknown template {template!r}; one of {', '.join(TEMPLATES)}")
    details: list[str] = []
    if algebra.ctx.nvars != 3:
        return TemplateMatch(template, False, ("template requires a 3-variable context",))
    names = algebra.ctx.names

    def contains_partial(i: int) -> bool:
        if algebra.contains(algebra.ctx.partial(i)):
            return True
        details.append(f"D{names[i]} is not in the algebra")
        return False

    def component_zero(b: VectorField, i: int) -> bool:
        if b.comps[i].is_zero:
            return True
        details.append(f"'{b}' has a nonzero D{names[i]} component")
        return False

    def component_depends_only_on(b: VectorField, i: int, allowed: tuple[int, ...]) -> bool:
        if b.comps[i].depends_only_on(allowed):
            return True
        allowed_names = ", ".join(names[a] for a in allowed)
        details.append(
            f"D{names[i]} component of '{b}' depends on more than {{{allowed_names}}}"
        )
        return False

    def component_polynomial(b: VectorField, i: int) -> bool:
        if b.comps[i].is_polynomial:
            return True
        details.append(f"D{names[i]} component of '{b}' carries an exponential factor")
        return False

    def component_constant(b: VectorField, i: int) -> bool:
        if b.comps[i].is_constant:
            return True
        details.append(f"D{names[i]} component of '{b}' is not constant")
        return False

    def require(cond: bool, message: str) -> bool:
        if not cond:
            details.append(message)
        return cond

    ok = True
    if template == "abelian-rank3":
        ok &= require(algebra.is_abelian(), "algebra is not abelian")
        ok &= require(algebra.dim == 3, f"dimension is {algebra.dim}, not 3")
        for b in algebra.basis:
            for i in range(3):
                ok &= component_constant(b, i)
    elif template == "abelian-rank2":
        ok &= require(algebra.is_abelian(), "algebra is not abelian")
        ok &= contains_partial(0) and contains_partial(1)
        for b in algebra.basis:
            ok &= component_zero(b, 2)
            ok &= component_depends_only_on(b, 0, (2,))
            ok &= component_depends_only_on(b, 1, (2,))
    elif template == "abelian-rank1":
        ok &= require(algebra.is_abelian(), "algebra is not abelian")
        ok &= contains_partial(0)
        for b in algebra.basis:
            ok &= component_zero(b, 1)
            ok &= component_zero(b, 2)
            ok &= component_depends_only_on(b, 0, (1, 2))
    elif template == "center-rank2":
        ok &= contains_partial(2)
        for b in algebra.basis:
            for i in (0, 1):
                ok &= component_depends_only_on(b, i, (2,))
                ok &= component_polynomial(b, i)
            ok &= component_constant(b, 2)
    elif template == "heisenberg":
        ok &= require(algebra.dim == 3, f"dimension is {algebra.dim}, not 3")
        ok &= require(not algebra.is_abelian(), "algebra is abelian")
        ok &= contains_partial(0) and contains_partial(2)
        for b in algebra.basis:
            ok &= component_zero(b, 1)
            ok &= component_depends_only_on(b, 0, (1,))
            comp = b.comps[2]
            if not (comp.is_polynomial and comp.depends_only_on((0,)) and comp.degree_in(0) <= 1):
                details.append(
                    f"D{names[2]} component of '{b}' is not affine in {names[0]} "
                    "with constant coefficients"
                )
                ok = False
    elif template == "single-chain":
        ok &= contains_partial(0)
        for b in algebra.basis:
            ok &= component_constant(b, 0)
            ok &= component_zero(b, 1)
            ok &= component_depends_only_on(b, 2, (0, 1))
            ok &= component_polynomial(b, 2)
    elif template == "nonabelian-projection":
        ok &= contains_partial(0)
        ok &= require(
            any(not b.comps[1].is_zero for b in algebra.basis),
            f"no element has a D{names[1]} component",
        )
        for b in algebra.basis:
            ok &= component_depends_only_on(b, 0, (1,))
            ok &= component_polynomial(b, 0)
            ok &= component_constant(b, 1)
            ok &= component_depends_only_on(b, 2, (0, 1))
            ok &= component_polynomial(b, 2)
    elif template == "abelian-projection":
        ok &= contains_partial(0)
        ok &= require(
            any(not b.comps[1].is_zero for b in algebra.basis),
            f"no element has a D{names[1]} component",
        )
        for b in algebra.basis:
            ok &= component_constant(b, 0)
            ok &= component_constant(b, 1)
            ok &= component_depends_only_on(b, 2, (0, 1))
            ok &= component_polynomial(b, 2)
    return TemplateMatch(template, bool(ok), tuple(details))
