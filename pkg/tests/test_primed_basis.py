"""Tests for the traceless basis change and the (n−1)-dimensional adjoint."""

from __future__ import annotations

from fractions import Fraction

import pytest

from qla.appendix_u import build_u_data
from qla.primed_basis import (
    PrimedBasis,
    adjoint_prime,
    basis_report,
    build_primed,
    check_chi0_central,
    check_comm_prime,
    check_traceless,
    chi0_image,
    d_vector,
    mu_scalar,
    primed_images,
    primed_structure,
)
from qla.qla_core import (
    QlaStructure,
    RepBundle,
    build_structure,
    check_representation,
    fundamental_generators,
)
from qla.rmatrix import sun_r_matrix
from qla.scalars import Scalar, parse_scalar
from qla.tensors import Mat

S = parse_scalar


@pytest.fixture(scope="module")
def su2():
    spec = sun_r_matrix(2)
    Q = build_structure(spec.R, spec.ctx)
    bundle = fundamental_generators(spec.R, spec.ctx)
    D = build_u_data(spec.R, spec.ctx).D
    return spec, Q, bundle, D


@pytest.fixture(scope="module")
def su3():
    spec = sun_r_matrix(3)
    Q = build_structure(spec.R, spec.ctx)
    bundle = fundamental_generators(spec.R, spec.ctx)
    D = build_u_data(spec.R, spec.ctx).D
    return spec, Q, bundle, D


def golden_T(spec, Q, bundle, D):
    """su(2) basis {χ₀, χ₊, χ₋, χ₃} with χ₃ = (χ₁ − χ₂)/[2]_{q⁻¹}."""
    d = d_vector(Q, D)
    tp_inv = spec.ctx.qnum(2, inverse=True).inv()
    zero, one = S("0"), S("1")
    return Mat(
        [
            [d[0], zero, zero, tp_inv],
            [d[1], one, zero, zero],
            [d[2], zero, one, zero],
            [d[3], zero, zero, -tp_inv],
        ]
    )


@pytest.fixture(scope="module")
def su2_golden(su2):
    spec, Q, bundle, D = su2
    pb = build_primed(Q, bundle, D, dropped_index=3, T_override=golden_T(spec, Q, bundle, D))
    return spec, Q, bundle, pb


class TestDVector:
    def test_su2_golden(self, su2):
        _, Q, _, D = su2
        assert d_vector(Q, D) == [S("1"), S("0"), S("0"), S("p^-4")]

    def test_su3_diagonal_pattern(self, su3):
        _, Q, _, D = su3
        d = d_vector(Q, D)
        assert [d[0], d[4], d[8]] == [S("1"), S("p^-6"), S("p^-12")]
        assert all(d[A].is_zero for A in range(9) if A // 3 != A % 3)

    def test_exchange_sum_rule(self, su2):
        _, Q, _, D = su2
        d = d_vector(Q, D)
        zero = Scalar.from_rational(0)
        for C in range(4):
            for A in range(4):
                for B in range(4):
                    acc = zero
                    for E in range(4):
                        acc = acc + Q.bigR.get4(C, A, B, E) * d[E]
                    expected = d[C] if A == B else zero
                    assert acc == expected

    def test_degenerate_kernel_rejected(self, su2):
        _, Q, _, D = su2
        hollow = QlaStructure(
            ctx=Q.ctx, n=Q.n, bigR=Q.bigR, f={}, I_id=Q.I_id,
            bigD=Q.bigD, F_adj=Q.F_adj, lam=Q.lam,
        )
        with pytest.raises(ValueError, match="dimension"):
            d_vector(hollow, D)

    def test_misaligned_kernel_rejected(self, su2):
        _, Q, _, D = su2
        one = Scalar.from_rational(1)
        skewed_f = {(0, 1, 1): one, (0, 2, 2): one, (0, 3, 3): one}
        skewed = QlaStructure(
            ctx=Q.ctx, n=Q.n, bigR=Q.bigR, f=skewed_f, I_id=Q.I_id,
            bigD=Q.bigD, F_adj=Q.F_adj, lam=Q.lam,
        )
        with pytest.raises(ValueError, match="not proportional"):
            d_vector(skewed, D)


class TestBuildPrimed:
    def test_default_basis_shape(self, su2):
        _, Q, bundle, D = su2
        pb = build_primed(Q, bundle, D)
        assert pb.dropped_index == 3
        assert pb.chi0_coords == pb.d_vec
        assert [pb.T[E, 0] for E in range(4)] == pb.d_vec

    def test_d_is_first_unit_vector_in_primed_basis(self, su2):
        _, Q, bundle, D = su2
        pb = build_primed(Q, bundle, D)
        coords = pb.T.inverse() @ Mat([[v] for v in pb.d_vec])
        assert coords[0, 0].is_one
        assert all(coords[a, 0].is_zero for a in range(1, 4))

    def test_mu_fn_golden(self, su2):
        spec, Q, bundle, D = su2
        ctx = spec.ctx
        pb = build_primed(Q, bundle, D)
        expected = -(
            ctx.lam() * ctx.qnum(Fraction(1, 2)) * ctx.qnum(Fraction(3, 2), inverse=True)
        )
        assert pb.mu["fn"] == expected
        assert chi0_image(pb, bundle) == Mat.identity(2).scale(expected)

    def test_zero_trace_bundle_rejected(self, su2):
        _, Q, bundle, D = su2
        flat = RepBundle(name="flat", dim=2, gen=bundle.gen, u=Mat.zeros(2))
        with pytest.raises(ValueError, match="vanishes"):
            build_primed(Q, flat, D)

    def test_override_must_start_with_d(self, su2):
        _, Q, bundle, D = su2
        with pytest.raises(ValueError, match="must be 𝒟"):
            build_primed(Q, bundle, D, T_override=Mat.identity(4))

    def test_dropping_off_diagonal_index_is_singular(self, su2):
        _, Q, bundle, D = su2
        with pytest.raises(ValueError, match="singular"):
            build_primed(Q, bundle, D, dropped_index=1)


class TestPrimedStructure:
    def test_su2_golden_structure_constants(self, su2_golden):
        spec, _, _, pb = su2_golden
        ctx = spec.ctx
        lam = ctx.lam()
        q, qi = ctx.q_power(1), ctx.q_power(-1)
        tp = ctx.qnum(2, inverse=True)
        expected = {
            (0, 1, 1): -(lam * tp),
            (0, 2, 2): -(lam * tp),
            (0, 3, 3): -(lam * tp),
            (3, 3, 3): -lam,
            (1, 2, 3): tp * qi,
            (2, 1, 3): -(tp * qi),
            (3, 1, 1): qi,
            (3, 2, 2): -q,
            (1, 3, 1): -q,
            (2, 3, 2): qi,
        }
        assert pb.f_primed == expected

    @pytest.mark.parametrize("fixture_name", ["su2", "su3"])
    def test_zero_pattern(self, fixture_name, request):
        _, Q, bundle, D = request.getfixturevalue(fixture_name)
        pb = build_primed(Q, bundle, D)
        constants, result = primed_structure(pb)
        assert constants is pb.f_primed
        assert result.passed

    def test_pattern_violation_reported(self, su2_golden):
        _, _, _, pb = su2_golden
        broken = PrimedBasis(
            d_vec=pb.d_vec, chi0_coords=pb.chi0_coords, T=pb.T,
            dropped_index=pb.dropped_index,
            f_primed={**pb.f_primed, (1, 0, 1): S("p")},
        )
        _, result = primed_structure(broken)
        assert not result.passed
        assert result.witness.key == (1, 0, 1)

    def test_classical_limit_is_classical_su2(self, su2_golden):
        _, _, _, pb = su2_golden
        classical = {
            key: val.eval_at(1) for key, val in pb.f_primed.items() if val.eval_at(1)
        }
        assert classical == {
            (1, 2, 3): 2, (2, 1, 3): -2,
            (3, 1, 1): 1, (3, 2, 2): -1,
            (1, 3, 1): -1, (2, 3, 2): 1,
        }


class TestMu:
    def test_su2_conjecture_values(self, su2_golden):
        spec, Q, _, pb = su2_golden
        ctx = spec.ctx
        adjoint_prime(pb, Q)

        def conjecture(j):
            return -(
                ctx.lam() * ctx.qnum(j) * ctx.qnum(j + 1, inverse=True)
            )

        assert pb.mu["fn"] == conjecture(Fraction(1, 2))
        assert pb.mu["ad'"] == conjecture(Fraction(1, 1))
        assert pb.mu["ad'"] == -(ctx.lam() * ctx.qnum(2, inverse=True))

    def test_non_scalar_image_rejected(self, su2):
        _, Q, bundle, D = su2
        pb = build_primed(Q, bundle, D)
        lopsided = RepBundle(
            name="lopsided", dim=2,
            gen=[bundle.gen[0], bundle.gen[1], bundle.gen[2], bundle.gen[1]],
            u=bundle.u,
        )
        with pytest.raises(ValueError, match="not proportional"):
            mu_scalar(pb, lopsided)


class TestAdjointPrime:
    def test_su2_golden_u(self, su2_golden):
        _, Q, _, pb = su2_golden
        adp = adjoint_prime(pb, Q)
        # diag(q⁻², q⁻⁶, q⁻⁴) in the basis {χ₊, χ₋, χ₃}, q = p².
        assert adp.u == Mat.diagonal([S("p^-4"), S("p^-12"), S("p^-8")])

    def test_su2_golden_matrices(self, su2_golden):
        spec, Q, _, pb = su2_golden
        ctx = spec.ctx
        adp = adjoint_prime(pb, Q)
        images = primed_images(pb, adp)
        zero = S("0")
        q, qi = ctx.q_power(1), ctx.q_power(-1)
        lam = ctx.lam()
        tp = ctx.qnum(2, inverse=True)
        assert images[0] == Mat.identity(3).scale(-(lam * tp))
        assert images[1] == Mat(
            [[zero, zero, -q], [zero, zero, zero], [zero, tp * qi, zero]]
        )
        assert images[2] == Mat(
            [[zero, zero, zero], [zero, zero, qi], [-(tp * qi), zero, zero]]
        )
        assert images[3] == Mat.diagonal([qi, -q, -lam])

    def test_su2_rescaled_frame_matches_table(self, su2_golden):
        # Conjugating the third basis direction by [2]_{q⁻¹} reproduces the
        # tabulated matrix forms entry by entry.
        spec, Q, _, pb = su2_golden
        ctx = spec.ctx
        adp = adjoint_prime(pb, Q)
        images = primed_images(pb, adp)
        one, zero = S("1"), S("0")
        q, qi = ctx.q_power(1), ctx.q_power(-1)
        tp = ctx.qnum(2, inverse=True)
        frame = Mat.diagonal([one, one, tp.inv()])
        frame_inv = frame.inverse()
        assert frame @ images[1] @ frame_inv == Mat(
            [[zero, zero, -(q * tp)], [zero, zero, zero], [zero, qi, zero]]
        )
        assert frame @ images[2] @ frame_inv == Mat(
            [[zero, zero, zero], [zero, zero, qi * tp], [-qi, zero, zero]]
        )

    @pytest.mark.parametrize("fixture_name", ["su2", "su3"])
    def test_is_a_representation(self, fixture_name, request):
        _, Q, bundle, D = request.getfixturevalue(fixture_name)
        pb = build_primed(Q, bundle, D)
        adp = adjoint_prime(pb, Q)
        assert adp.dim == Q.n - 1
        assert check_representation(Q, adp).passed

    def test_reducible_constants_rejected(self, su2_golden):
        _, Q, _, pb = su2_golden
        hollow = PrimedBasis(
            d_vec=pb.d_vec, chi0_coords=pb.chi0_coords, T=pb.T,
            dropped_index=pb.dropped_index, f_primed={},
        )
        with pytest.raises(ValueError, match="null vector"):
            adjoint_prime(hollow, Q)


class TestRepresentationLevelChecks:
    @pytest.mark.parametrize("fixture_name", ["su2", "su3"])
    def test_chi0_is_central(self, fixture_name, request):
        _, Q, bundle, D = request.getfixturevalue(fixture_name)
        pb = build_primed(Q, bundle, D)
        adp = adjoint_prime(pb, Q)
        assert check_chi0_central(pb, bundle).passed
        assert check_chi0_central(pb, adp).passed

    @pytest.mark.parametrize("fixture_name", ["su2", "su3"])
    def test_primed_generators_are_traceless(self, fixture_name, request):
        _, Q, bundle, D = request.getfixturevalue(fixture_name)
        pb = build_primed(Q, bundle, D)
        adp = adjoint_prime(pb, Q)
        assert check_traceless(pb, bundle).passed
        assert check_traceless(pb, adp).passed

    @pytest.mark.parametrize("fixture_name", ["su2", "su3"])
    def test_comm_prime_holds(self, fixture_name, request):
        _, Q, bundle, D = request.getfixturevalue(fixture_name)
        pb = build_primed(Q, bundle, D)
        adp = adjoint_prime(pb, Q)
        assert check_comm_prime(Q, pb, bundle, bundle).passed
        assert check_comm_prime(Q, pb, bundle, adp).passed

    def test_comm_prime_detects_rescaled_generators(self, su2):
        _, Q, bundle, D = su2
        pb = build_primed(Q, bundle, D)
        two = Scalar.from_rational(2)
        rescaled = RepBundle(
            name="rescaled", dim=2, gen=[g.scale(two) for g in bundle.gen], u=bundle.u
        )
        result = check_comm_prime(Q, pb, bundle, rescaled)
        assert not result.passed
        assert result.witness is not None


class TestBasisReport:
    def test_report_round_trips_scalars(self, su2_golden):
        _, Q, _, pb = su2_golden
        adjoint_prime(pb, Q)
        report = basis_report(pb)
        assert sorted(report) == ["T", "d_vec", "dropped_index", "f_primed", "mu"]
        assert report["dropped_index"] == 3
        assert [S(text) for text in report["d_vec"]] == pb.d_vec
        assert {
            (a, b, c): S(text) for a, b, c, text in report["f_primed"]
        } == pb.f_primed
        assert S(report["mu"]["ad'"]) == pb.mu["ad'"]
