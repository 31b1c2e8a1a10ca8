"""Tests for the u-element calculus (ρ(u), D, α, β, invariant trace)."""

from __future__ import annotations

import pytest

from qla.appendix_u import (
    beta_constant,
    build_u_data,
    check_D_identities,
    invariant_trace,
    normalize_D,
    rep_u,
    rep_u_inverse,
)
from qla.rmatrix import sun_r_matrix
from qla.scalars import DeformationContext, parse_scalar
from qla.tensors import BiMat, Mat

S = parse_scalar


class TestRepU:
    def test_su2_golden_value(self):
        # q^{-5/2}·diag(1, q²) with q = p² reads diag(p⁻⁵, p⁻¹).
        u_mat = rep_u(sun_r_matrix(2).R)
        assert u_mat == Mat.diagonal([S("p^-5"), S("p^-1")])

    def test_su3_is_diagonal_with_q_squared_steps(self):
        spec = sun_r_matrix(3)
        u_mat = rep_u(spec.R)
        q2 = spec.ctx.q_power(2)
        assert u_mat == Mat.diagonal(
            [S("p^-14"), S("p^-14") * q2, S("p^-14") * q2 * q2]
        )

    @pytest.mark.parametrize("N", [2, 3])
    def test_classical_limit_is_identity(self, N):
        assert rep_u(sun_r_matrix(N).R).eval_at(1).is_identity

    @pytest.mark.parametrize("N", [2, 3])
    def test_inverse_route_matches_exactly(self, N):
        R = sun_r_matrix(N).R
        assert rep_u_inverse(R) == rep_u(R).inverse()


class TestNormalizeD:
    @pytest.mark.parametrize(
        "N,alpha_exp", [(2, "p^5"), (3, "p^14")]
    )
    def test_sun_alpha_and_D(self, N, alpha_exp):
        spec = sun_r_matrix(N)
        D, alpha = normalize_D(rep_u(spec.R), spec.ctx)
        assert alpha == S(alpha_exp)
        q2 = spec.ctx.q_power(2)
        expected = Mat.diagonal([q2 ** k for k in range(N)])
        assert D == expected

    def test_identity_input(self):
        ctx = DeformationContext(N=2, root_order=1)
        D, alpha = normalize_D(Mat.identity(2), ctx)
        assert D.is_identity
        assert alpha == S("1")

    def test_zero_head_entry_rejected(self):
        ctx = DeformationContext(N=2, root_order=1)
        bad = Mat.zeros(2)
        bad[1, 1] = S("p")
        with pytest.raises(ValueError, match="zero"):
            normalize_D(bad, ctx)


class TestBetaConstant:
    @pytest.mark.parametrize("N,beta_exp", [(2, "p"), (3, "p^2")])
    def test_sun_beta(self, N, beta_exp):
        spec = sun_r_matrix(N)
        D, _ = normalize_D(rep_u(spec.R), spec.ctx)
        assert beta_constant(D, spec.R) == S(beta_exp)

    def test_classical_limit_is_one(self):
        spec = sun_r_matrix(2)
        D, _ = normalize_D(rep_u(spec.R), spec.ctx)
        assert beta_constant(D, spec.R).eval_at(1) == S("1").eval_at(1)

    def test_inconsistent_D_rejected(self):
        spec = sun_r_matrix(2)
        bad_D = Mat.diagonal([S("1"), S("p^9")])
        with pytest.raises(ValueError):
            beta_constant(bad_D, spec.R)


class TestDIdentities:
    @pytest.mark.parametrize("N", [2, 3])
    def test_all_identities_pass(self, N):
        spec = sun_r_matrix(N)
        data = build_u_data(spec.R, spec.ctx)
        for result in check_D_identities(spec.R, data.D, data.alpha, data.beta):
            assert result.passed, result.line()

    def test_perturbed_D_fails_tilde_identity(self):
        spec = sun_r_matrix(2)
        data = build_u_data(spec.R, spec.ctx)
        bad_D = data.D.copy()
        bad_D[1, 1] = S("p^7")
        results = {r.name: r for r in check_D_identities(spec.R, bad_D, data.alpha, data.beta)}
        assert not results["u-tilde[b1]"].passed
        assert results["u-tilde[b1]"].witness is not None
        assert not results["u-trace[a1]"].passed

    def test_perturbed_offdiagonal_D_fails_commutation(self):
        spec = sun_r_matrix(2)
        data = build_u_data(spec.R, spec.ctx)
        bad_D = data.D.copy()
        bad_D[0, 1] = S("p")
        results = {r.name: r for r in check_D_identities(spec.R, bad_D, data.alpha, data.beta)}
        assert not results["u-comm[c]"].passed
        assert results["u-comm[c]"].witness is not None


class TestInvariantTrace:
    def test_trace_of_D_counts_dimension(self):
        spec = sun_r_matrix(3)
        data = build_u_data(spec.R, spec.ctx)
        assert invariant_trace(data.D, data.D) == S("3")

    def test_zero_matrix(self):
        spec = sun_r_matrix(2)
        data = build_u_data(spec.R, spec.ctx)
        assert invariant_trace(data.D, Mat.zeros(2)).is_zero


class TestBuildUData:
    @pytest.mark.parametrize("N", [2, 3])
    def test_c_scalar_is_inverse_alpha_beta(self, N):
        spec = sun_r_matrix(N)
        data = build_u_data(spec.R, spec.ctx)
        assert data.c_scalar == (data.alpha * data.beta) ** -1
        assert data.D == data.rep_u.scale(data.alpha)

    def test_su2_c_scalar_value(self):
        spec = sun_r_matrix(2)
        data = build_u_data(spec.R, spec.ctx)
        assert data.c_scalar == S("p^-6")

    def test_singular_tilde_rejected(self):
        # The flip matrix P has a singular first partial transpose, so the
        # tilde operation (hence ρ(u)) does not exist for it.
        P = BiMat.perm(2)
        ctx = DeformationContext(N=2, root_order=1)
        with pytest.raises(ValueError):
            build_u_data(P, ctx)
