"""Closure, structure tensors, center, series, projections, quotients."""

from __future__ import annotations

import pytest

from vflie import (
    ClosureCapExceeded,
    DEFAULT_CONTEXT,
    LieAlgebra,
    NotAnIdeal,
    NotInSpan,
    ProjectionHypothesisViolated,
    close,
    generic_rank,
)
from vflie.parser import parse_field

from conftest import Q, naive_field_coords, oracle_member, oracle_rank, rng

ctx = DEFAULT_CONTEXT


def F(text: str):
    return parse_field(text, ctx)


def algebra(*texts: str, **kw) -> LieAlgebra:
    return close([F(t) for t in texts], **kw)


EX_SPLIT_FAIL = ("Dx", "y*Dx", "Dy + (x^2+y^2)*Dz", "(x+y)*Dz")  # closes to dim 8
EX_EXP = ("Dx", "y*Dx + x^2*exp(y)*Dz", "x*Dz")  # closes to dim 8
HEISENBERG = ("Dx", "y*Dx + x*Dz", "Dz")
TWO_CHAIN = ("Dz", "z*Dx", "z^2*Dx + z*Dy", "Dx", "Dy")  # closes to dim 5


def center_oracle(L: LieAlgebra) -> int:
    """Independent center dimension: null space of bracket constraints assembled
    from raw field brackets and a naive coordinatization."""
    brackets = []
    for j in range(L.dim):
        brackets.extend(L.basis[i].bracket(L.basis[j]) for i in range(L.dim))
    coords = naive_field_coords(list(L.basis) + brackets)
    width = len(coords[0])
    rows = []
    for col in range(width):
        for j in range(L.dim):
            rows.append([coords[L.dim + j * L.dim + i][col] for i in range(L.dim)])
    rows = [r for r in rows if any(r)]
    return L.dim - oracle_rank(rows) if rows else L.dim


# -- closure ------------------------------------------------------------------------


def test_abelian_translations():
    L = algebra("Dx", "Dy", "Dz")
    assert L.dim == 3 and L.is_abelian()
    assert not L.structure


def test_closure_polynomial_example_dim8():
    L = algebra(*EX_SPLIT_FAIL)
    assert L.dim == 8
    expected = ["Dx", "y*Dx", "Dy + (x^2+y^2)*Dz", "Dz", "x*Dz", "y*Dz", "x*y*Dz", "y^2*Dz"]
    for text in expected:
        assert L.contains(F(text))


def test_closure_exponential_example_dim8():
    L = algebra(*EX_EXP)
    assert L.dim == 8
    for text in (
        "Dx", "y*Dx + x^2*exp(y)*Dz", "x*Dz", "Dz",
        "y*Dz", "x*exp(y)*Dz", "exp(y)*Dz", "y*exp(y)*Dz",
    ):
        assert L.contains(F(text))


def test_closure_exponential_variant_is_smaller():
    # replacing x^2*exp(y) by exp(y) in the second generator changes the algebra
    L = algebra("Dx", "y*Dx + exp(y)*Dz", "x*Dz")
    assert L.dim == 5
    assert [str(b) for b in L.basis] == [
        "Dx", "y*Dx + exp(y)*Dz", "Dz", "x*Dz", "y*Dz",
    ]


def test_closure_cap_exceeded_for_unbounded_growth():
    # oracle: [x*Dx, x^k*Dx] = (k-1) x^k ... degrees grow without bound
    with pytest.raises(ClosureCapExceeded):
        algebra("Dx", "x*Dx", "x^3*Dx")


def test_closure_respects_small_dim_cap():
    with pytest.raises(ClosureCapExceeded):
        algebra(*EX_SPLIT_FAIL, cap_dim=5)


def test_closure_deterministic_and_generator_order_independent():
    L1 = algebra(*EX_SPLIT_FAIL)
    L2 = algebra(*reversed(EX_SPLIT_FAIL))
    assert [str(b) for b in L1.basis] == [str(b) for b in L2.basis]
    assert L1.structure == L2.structure


def test_closure_idempotent():
    L = algebra(*EX_EXP)
    again = close(list(L.basis))
    assert [str(b) for b in again.basis] == [str(b) for b in L.basis]


def test_closure_agrees_with_naive_fixpoint_oracle():
    # independent oracle: recompute all pairwise brackets of the full current
    # list every round, membership-tested with the naive dense routine
    r = rng(20240545)
    for _ in range(10):
        gens = []
        for _ in range(r.randint(2, 3)):
            f = parse_field("0", ctx) + ctx.field(
                [
                    ctx.const(r.randint(-2, 2)) + ctx.var_poly(1) * r.randint(-2, 2),
                    ctx.zero_poly(),
                    ctx.const(r.randint(-2, 2)) + ctx.var_poly(0) * r.randint(-2, 2),
                ]
            )
            gens.append(f)
        if all(g.is_zero for g in gens):
            continue
        fields = [g for g in gens if not g.is_zero]
        kept = []
        for f in fields:
            coords = naive_field_coords(kept + [f])
            if not oracle_member(coords[:-1], coords[-1]):
                kept.append(f)
        while True:
            grown = False
            for i in range(len(kept)):
                for j in range(len(kept)):
                    w = kept[i].bracket(kept[j])
                    if w.is_zero:
                        continue
                    coords = naive_field_coords(kept + [w])
                    if not oracle_member(coords[:-1], coords[-1]):
                        kept.append(w)
                        grown = True
            if not grown:
                break
        L = close(gens)
        assert L.dim == len(kept)
        for f in kept:
            assert L.contains(f)


def test_structure_tensor_antisymmetry_and_jacobi():
    for texts in (EX_SPLIT_FAIL, EX_EXP, HEISENBERG, TWO_CHAIN):
        L = algebra(*texts)
        d = L.dim
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    assert L.c(i, j, k) == -L.c(j, i, k)
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    unit = lambda t: [Q(1) if s == t else Q(0) for s in range(d)]
                    jac = [Q(0)] * d
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        inner = L.bracket_coeffs(unit(b), unit(c))
                        outer = L.bracket_coeffs(unit(a), inner)
                        jac = [x + y for x, y in zip(jac, outer)]
                    assert not any(jac)


def test_express_and_element_round_trip():
    L = algebra(*EX_EXP)
    r = rng(20240540)
    for _ in range(10):
        coeffs = [Q(r.randint(-3, 3), r.choice((1, 2))) for _ in range(L.dim)]
        assert L.express(L.element(coeffs)) == coeffs
    with pytest.raises(NotInSpan):
        L.express(F("x^5*Dz"))


# -- center -------------------------------------------------------------------------


def test_center_of_abelian_is_everything():
    L = algebra("Dx", "Dy", "Dz")
    assert len(L.center()) == 3


def test_center_of_polynomial_example():
    L = algebra(*EX_SPLIT_FAIL)
    c = L.center()
    assert [str(v) for v in c] == ["Dz"]
    assert center_oracle(L) == 1


def test_center_of_exponential_example():
    L = algebra(*EX_EXP)
    c = L.center()
    assert len(c) == 4
    assert center_oracle(L) == 4
    for v in c:
        assert v.comps[0].is_zero and v.comps[1].is_zero
        assert v.comps[2].depends_only_on((1,))  # all of the form g(y)Dz
    assert generic_rank(c) == 1


def test_center_matches_oracle_randomized():
    r = rng(20240541)
    from vflie import build, random_spec

    for recipe in ("center-rank2", "single-chain", "heisenberg"):
        for seed in range(3):
            L = close(build(random_spec(recipe, seed, 2)).generators)
            assert len(L.center()) == center_oracle(L)


# -- series -------------------------------------------------------------------------


def test_heisenberg_lower_central():
    L = algebra(*HEISENBERG)
    report = L.series("lower-central")
    assert report.dims == (3, 1, 0) and report.terminated_at_zero


def test_abelian_series():
    L = algebra("Dx", "Dy", "Dz")
    assert L.series("lower-central").dims == (3, 0)
    assert L.series("derived").dims == (3, 0)


def test_polynomial_example_is_nilpotent():
    L = algebra(*EX_SPLIT_FAIL)
    assert L.series("lower-central").terminated_at_zero
    assert L.is_nilpotent() and L.is_solvable() and not L.is_abelian()


def test_affine_line_solvable_not_nilpotent():
    L = algebra("Dx", "x*Dx")
    assert L.is_solvable() and not L.is_nilpotent()
    assert L.series("lower-central").dims == (2, 1)


def test_sl2_like_not_solvable():
    L = algebra("Dx", "x*Dx", "x^2*Dx")
    assert L.dim == 3
    assert not L.is_nilpotent() and not L.is_solvable()


def test_single_field_nilpotent():
    assert algebra("y*Dx + x^2*exp(y)*Dz").is_nilpotent()


# -- projection ----------------------------------------------------------------------


def test_project_exponential_example():
    L = algebra(*EX_EXP)
    proj = L.project(["x", "y"])
    assert proj.image.dim == 2
    assert proj.kernel_dim == 6
    assert {str(b) for b in proj.image.basis} == {"Dx", "y*Dx"}
    assert L.dim == proj.image.dim + proj.kernel_dim


def test_project_abelian():
    L = algebra("Dx", "Dy", "Dz")
    proj = L.project(["x", "y"])
    assert proj.image.dim == 2 and proj.kernel_dim == 1


def test_project_kernel_is_abelian_ideal():
    for texts in (EX_SPLIT_FAIL, EX_EXP, TWO_CHAIN):
        L = algebra(*texts)
        kept = ["x", "y"] if texts is not TWO_CHAIN else ["z"]
        proj = L.project(kept)
        kernel = list(proj.kernel_coeffs)
        for s in range(len(kernel)):
            for t in range(len(kernel)):
                assert not any(L.bracket_coeffs(kernel[s], kernel[t]))
        span = [list(v) for v in kernel]
        for i in range(L.dim):
            unit = [Q(1) if t == i else Q(0) for t in range(L.dim)]
            for w in kernel:
                assert oracle_member(span, L.bracket_coeffs(unit, list(w)))


def test_project_hypothesis_violation():
    L = algebra("Dx", "z*Dx")  # x-component depends on dropped z
    with pytest.raises(ProjectionHypothesisViolated):
        L.project(["x", "y"])


def test_project_image_of_two_chain():
    L = algebra(*TWO_CHAIN)
    proj = L.project(["z"])
    assert proj.image.dim == 1 and proj.kernel_dim == 4


# -- adjoint -------------------------------------------------------------------------


def test_adjoint_of_central_element_is_zero():
    L = algebra(*HEISENBERG)
    mat = L.adjoint_matrix(F("Dz"))
    assert all(not any(row) for row in mat)


def test_adjoint_action_example():
    L = algebra("Dx", "Dy", "z*Dx", "Dz")
    mat = L.adjoint_matrix(F("Dz"))
    i_zdx = [str(b) for b in L.basis].index("z*Dx")
    i_dx = [str(b) for b in L.basis].index("Dx")
    assert mat[i_dx][i_zdx] == 1
    total = sum(1 for row in mat for v in row if v)
    assert total == 1


def test_adjoint_nilpotent_for_nilpotent_algebra():
    for texts in (EX_SPLIT_FAIL, EX_EXP, HEISENBERG, TWO_CHAIN):
        L = algebra(*texts)
        for i in range(L.dim):
            unit = [Q(1) if t == i else Q(0) for t in range(L.dim)]
            mat = L.adjoint_matrix(unit)
            power = mat
            for _ in range(L.dim):
                power = [
                    [
                        sum(power[r][k] * mat[k][c] for k in range(L.dim))
                        for c in range(L.dim)
                    ]
                    for r in range(L.dim)
                ]
            assert all(not any(row) for row in power)


# -- quotients -----------------------------------------------------------------------


def test_quotient_by_whole_algebra():
    L = algebra(*HEISENBERG)
    q = L.quotient_structure(list(range(L.dim)))
    assert q.dim == 0


def test_heisenberg_mod_center_is_abelian():
    L = algebra(*HEISENBERG)
    q = L.quotient_structure(L.center())
    assert q.dim == 2 and not q.tensor


def test_polynomial_example_quotient_pattern():
    # modding out the projection kernel leaves [e1, e2] = -e0
    L = algebra(*EX_SPLIT_FAIL)
    proj = L.project(["x", "y"])
    q = L.quotient_structure(list(proj.kernel_coeffs))
    assert q.dim == 3
    assert q.tensor == {(1, 2): {0: Q(-1)}}


def test_not_an_ideal_detected():
    L = algebra(*HEISENBERG)
    span_dx = [i for i, b in enumerate(L.basis) if str(b) == "Dx"]
    with pytest.raises(NotAnIdeal):
        L.quotient_structure(span_dx)


def test_report_schema():
    L = algebra(*HEISENBERG)
    report = L.report()
    assert list(report.keys()) == [
        "variables", "basis", "dim", "structure", "nilpotent",
        "solvable", "abelian", "center", "generic_rank", "center_rank",
    ]
    assert report["dim"] == 3 and report["nilpotent"] is True
    # the realization spans the x and z directions only
    assert report["generic_rank"] == 2 and report["center_rank"] == 1
    assert all(isinstance(entry[3], str) for entry in report["structure"])
