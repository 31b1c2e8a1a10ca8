"""Killing form, canonical metric, index, and quadratic casimir.

For a representation bundle ρ the Killing form is the deformed trace
η(x, y) = tr(ρ(u)·ρ(x)·ρ(y)).  The metric η_{AB} on the generators is
block-diagonal in the traceless basis; its traceless block is proportional
to a canonical metric, the proportionality factor being the index c_ρ, and
the inverse canonical metric yields the quadratic casimir
ρ(Q′) = η^{ab}ρ(χ′_a)ρ(χ′_b), which is central and scalar on irreducible
bundles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .primed_basis import PrimedBasis, adjoint_prime, primed_images
from .qla_core import QlaStructure, RepBundle
from .reporting import CheckResult, Witness, check_mats_equal, check_sparse_zero
from .scalars import DeformationContext, Scalar
from .tensors import Mat, SparseTensor

__all__ = [
    "KillingReport",
    "killing_form",
    "killing_metric",
    "primed_metric_blocks",
    "fundamental_metric_closed_form",
    "check_metric_identities",
    "fundamental_index",
    "canonical_and_index",
    "casimir",
    "full_casimir",
    "positivity_sample",
    "killing_reports",
    "killing_report_to_dict",
]

_ZERO = Scalar.from_rational(0)
_ONE = Scalar.from_rational(1)


@dataclass
class KillingReport:
    """Killing-form data of one representation bundle.

    ``eta_full`` is the n×n metric written in the traceless basis (central
    element first), so block-diagonality is visible directly; ``eta_primed``
    is its lower-right (n−1)×(n−1) block and ``eta00`` the upper-left entry.
    ``canonical`` is the normalized canonical metric, ``index`` the factor
    with eta_primed = index·canonical, ``K`` the matrix
    (η^{fn}_primed)⁻¹·η^{(ρ)}_primed (a multiple of the identity), and
    ``casimir_mat``/``casimir_eigen`` the image of the quadratic casimir
    together with its eigenvalue (None when the image is not scalar).
    """

    rep_name: str
    eta_full: Mat
    eta_primed: Mat
    eta00: Scalar
    canonical: Mat
    index: Scalar
    inv_canonical: Mat
    casimir_mat: Mat
    casimir_eigen: Scalar | None
    K: Mat


def _image(B: RepBundle, coords: Sequence[Scalar]) -> Mat:
    """ρ(x) for x = Σ_A coords[A]·χ_A."""
    out = Mat.zeros(B.dim)
    for A, c in enumerate(coords):
        if not c.is_zero:
            out = out + B.gen[A].scale(c)
    return out


def killing_form(B: RepBundle, x_coords: Sequence[Scalar], y_coords: Sequence[Scalar]) -> Scalar:
    """η(x, y) = tr(ρ(u)·ρ(x)·ρ(y)) for coordinate vectors of length n."""
    return (B.u @ _image(B, x_coords) @ _image(B, y_coords)).trace()


def killing_metric(B: RepBundle) -> Mat:
    """η_{AB} = tr(ρ(u)·ρ(χ_A)·ρ(χ_B)) over the unprimed generator labels."""
    n = len(B.gen)
    eta = Mat.zeros(n)
    for A in range(n):
        uA = B.u @ B.gen[A]
        for C in range(n):
            eta[A, C] = (uA @ B.gen[C]).trace()
    return eta


def primed_metric_blocks(pb: PrimedBasis, eta: Mat) -> tuple[Mat, Scalar, Mat]:
    """Rewrite the metric in the traceless basis and split off its blocks.

    Returns (full primed-basis metric Tᵀ·η·T, η₀₀, traceless block).
    Raises ValueError if the result is not block-diagonal.
    """
    n = pb.n
    full = pb.T.t() @ eta @ pb.T
    for a in range(1, n):
        if not (full[0, a].is_zero and full[a, 0].is_zero):
            raise ValueError("Killing metric is not block-diagonal in the traceless basis")
    primed = Mat([[full[a, b] for b in range(1, n)] for a in range(1, n)])
    return full, full[0, 0], primed


def fundamental_metric_closed_form(ctx: DeformationContext, D: Mat) -> Mat:
    """Closed form of the fundamental metric for the standard A-series R-matrix.

    η_{(ij)(kℓ)} = q^{-1/N}(q[1-1/N]_q - q⁻¹[1+1/N]_{q⁻¹}
                   + q^{2/N-3}[1/N]²_{q⁻¹}[N]_{q⁻¹})·δ^i_j δ^k_ℓ
                   + q^{1-3/N-2N}·δ^i_ℓ D^k_j.
    """
    N = ctx.N
    c1 = ctx.q_power(Fraction(-1, N)) * (
        ctx.q_power(1) * ctx.qnum(Fraction(N - 1, N))
        - ctx.q_power(-1) * ctx.qnum(Fraction(N + 1, N), inverse=True)
        + ctx.q_power(Fraction(2, N) - 3)
        * ctx.qnum(Fraction(1, N), inverse=True) ** 2
        * ctx.qnum(N, inverse=True)
    )
    c2 = ctx.q_power(Fraction(N - 3 - 2 * N * N, N))
    eta = Mat.zeros(N * N)
    for i in range(N):
        for j in range(N):
            for k in range(N):
                for l in range(N):
                    val = _ZERO
                    if i == j and k == l:
                        val = val + c1
                    if i == l:
                        val = val + c2 * D[k, j]
                    eta[i * N + j, k * N + l] = val
    return eta


def check_metric_identities(
    Q: QlaStructure,
    eta: Mat,
    reference: Mat | None = None,
) -> list[CheckResult]:
    """Exchange symmetry, square-antipode symmetry, and total antisymmetry.

    Verifies η_{AB} = ℝ^{CD}_{AB}η_{CD} = 𝔻^C_A η_{BC} and
    f_{CA}^D η_{DB} + ℝ^{ED}_{CA} f_{DB}^F η_{EF} = 0.  When a closed-form
    ``reference`` metric is supplied, an entrywise equality check is added.
    """
    n = Q.n
    by_low: dict[tuple[int, int], list[tuple[int, int, Scalar]]] = {}
    for (C, D2, A, B), val in Q.bigR.to4dict().items():
        by_low.setdefault((A, B), []).append((C, D2, val))
    f_low: dict[tuple[int, int], list[tuple[int, Scalar]]] = {}
    for (A, B, C), val in Q.f.items():
        f_low.setdefault((A, B), []).append((C, val))

    rsym: SparseTensor = {}
    dsym: SparseTensor = {}
    for A in range(n):
        for B in range(n):
            acc = -eta[A, B]
            for C, D2, val in by_low.get((A, B), []):
                acc = acc + val * eta[C, D2]
            if not acc.is_zero:
                rsym[(A, B)] = acc
            acc = -eta[A, B]
            for C in range(n):
                acc = acc + Q.bigD[C, A] * eta[B, C]
            if not acc.is_zero:
                dsym[(A, B)] = acc

    asym: SparseTensor = {}
    for C in range(n):
        for A in range(n):
            for B in range(n):
                acc = _ZERO
                for D2, fv in f_low.get((C, A), []):
                    acc = acc + fv * eta[D2, B]
                for E, D2, rv in by_low.get((C, A), []):
                    for F, fv in f_low.get((D2, B), []):
                        acc = acc + rv * fv * eta[E, F]
                if not acc.is_zero:
                    asym[(C, A, B)] = acc

    results = [
        check_sparse_zero("metric-rsym", rsym),
        check_sparse_zero("metric-dsym", dsym),
        check_sparse_zero("metric-asym", asym),
    ]
    if reference is not None:
        results.append(check_mats_equal("metric-closed-form", eta, reference))
    return results


def fundamental_index(ctx: DeformationContext) -> Scalar:
    """Normalization c_fn of the canonical metric.

    For N = 2 the index of the fundamental bundle is q^{-9/2}/[2]_{q⁻¹},
    which makes the canonical metric carry the (q + 1/q) prefactor and
    reproduces the classical value 1/2 at p = 1.  For N ≥ 3 the fundamental
    metric itself is taken as canonical (index 1).
    """
    if ctx.N == 2:
        return ctx.q_power(Fraction(-9, 2)) * ctx.qnum(2, inverse=True).inv()
    return _ONE


def canonical_and_index(
    fn_primed: Mat,
    rho_primed: Mat,
    ad_gen: Sequence[Mat],
    index_fn: Scalar,
) -> tuple[Mat, Scalar, Mat]:
    """Canonical metric, index of ρ, and the intertwiner K.

    K = (η^{fn}_primed)⁻¹·η^{(ρ)}_primed must commute with every matrix of
    the traceless adjoint bundle and be a multiple of the identity; the
    index of ρ is that multiple times the fundamental index.
    """
    K = fn_primed.inverse() @ rho_primed
    for g in ad_gen:
        if not (K @ g - g @ K).is_zero:
            raise ValueError("metric ratio K does not commute with the adjoint action")
    ratio = K[0, 0]
    if K != Mat.identity(K.nrows).scale(ratio):
        raise ValueError("metric ratio K is not a multiple of the identity; "
                         "the bundle does not share the canonical metric")
    canonical = fn_primed.scale(index_fn.inv())
    return canonical, ratio * index_fn, K


def casimir(B: RepBundle, inv_canonical: Mat, pb: PrimedBasis) -> tuple[Mat, Scalar | None]:
    """ρ(Q′) = η^{ab}·ρ(χ′_a)·ρ(χ′_b) and its eigenvalue when scalar.

    Raises ValueError if the image fails to commute with every generator.
    """
    images = primed_images(pb, B)
    m = pb.n - 1
    out = Mat.zeros(B.dim)
    for a in range(m):
        for b in range(m):
            coeff = inv_canonical[a, b]
            if not coeff.is_zero:
                out = out + (images[a + 1] @ images[b + 1]).scale(coeff)
    for g in B.gen:
        if not (out @ g - g @ out).is_zero:
            raise ValueError(f"quadratic casimir is not central in {B.name}")
    eigen = out[0, 0]
    if out == Mat.identity(B.dim).scale(eigen):
        return out, eigen
    return out, None


def full_casimir(pb: PrimedBasis, B: RepBundle, eta_full: Mat) -> Mat:
    """Per-bundle casimir (η_full⁻¹)^{AB}·ρ(b_A)·ρ(b_B) over the whole basis.

    ``eta_full`` is the metric in the traceless basis, b_0 = χ₀ and
    b_a = χ′_a.  The result is checked to be central; unlike Q′ it is not
    proportional across bundles because the central block is not canonical.
    """
    inv_full = eta_full.inverse()
    images = primed_images(pb, B)
    out = Mat.zeros(B.dim)
    for A in range(pb.n):
        for C in range(pb.n):
            coeff = inv_full[A, C]
            if not coeff.is_zero:
                out = out + (images[A] @ images[C]).scale(coeff)
    for g in B.gen:
        if not (out @ g - g @ out).is_zero:
            raise ValueError(f"full-metric casimir is not central in {B.name}")
    return out


def positivity_sample(
    pb: PrimedBasis,
    eta_primed_fn: Mat,
    p_samples: Sequence[Fraction | int],
    Xi_samples: Sequence[Mat],
) -> CheckResult:
    """Sample positivity of the traceless block of the fundamental metric.

    Each Ξ is an N×N matrix of constants giving the element x = tr(ΞX)
    with coordinates ξ^{(ij)} = Ξ^j_i; its traceless part has coordinates
    (T⁻¹ξ)^a, and the quadratic form η_{ab}ξ^aξ^b must be nonnegative at
    every sample point, vanishing only when the traceless part itself
    vanishes there (i.e. Ξ ∝ D⁻¹).
    """
    n = pb.n
    N = isqrt(n)
    T_inv = pb.T.inverse()
    for s, Xi in enumerate(Xi_samples):
        xi = [Xi[j, i] for i in range(N) for j in range(N)]
        primed = [
            sum((T_inv[a, A] * xi[A] for A in range(n)), _ZERO)
            for a in range(1, n)
        ]
        form = _ZERO
        for a in range(n - 1):
            for b in range(n - 1):
                form = form + eta_primed_fn[a, b] * primed[a] * primed[b]
        for p0 in p_samples:
            value = form.eval_at(p0)
            if value < 0:
                return CheckResult(
                    "positivity", False, f"sample {s} at p={p0}",
                    Witness((s, str(p0)), str(value)),
                )
            if value == 0 and any(c.eval_at(p0) for c in primed):
                return CheckResult(
                    "positivity", False,
                    f"sample {s} at p={p0}: zero without vanishing traceless part",
                    Witness((s, str(p0)), "0"),
                )
    return CheckResult(
        "positivity", True,
        f"{len(Xi_samples)} matrices x {len(p_samples)} points",
    )


def killing_reports(Q: QlaStructure, pb: PrimedBasis, B_fn: RepBundle) -> dict[str, KillingReport]:
    """Killing reports for the fundamental bundle and the traceless adjoint."""
    ad = adjoint_prime(pb, Q)
    index_fn = fundamental_index(Q.ctx)
    eta_fn = killing_metric(B_fn)
    full_fn, eta00_fn, prim_fn = primed_metric_blocks(pb, eta_fn)
    canonical = prim_fn.scale(index_fn.inv())
    inv_canonical = canonical.inverse()

    reports: dict[str, KillingReport] = {}
    for bundle in (B_fn, ad):
        if bundle is B_fn:
            full, eta00, prim = full_fn, eta00_fn, prim_fn
        else:
            full, eta00, prim = primed_metric_blocks(pb, killing_metric(bundle))
        _, index, K = canonical_and_index(prim_fn, prim, ad.gen, index_fn)
        cas_mat, cas_eigen = casimir(bundle, inv_canonical, pb)
        reports[bundle.name] = KillingReport(
            rep_name=bundle.name,
            eta_full=full,
            eta_primed=prim,
            eta00=eta00,
            canonical=canonical,
            index=index,
            inv_canonical=inv_canonical,
            casimir_mat=cas_mat,
            casimir_eigen=cas_eigen,
            K=K,
        )
    return reports


def _mat_entries(mat: Mat) -> list[list[str]]:
    return [[val.render() for val in row] for row in mat.rows]


def killing_report_to_dict(report: KillingReport) -> dict:
    """JSON-ready form of a report, scalars rendered in the text grammar."""
    return {
        "rep": report.rep_name,
        "eta_full": _mat_entries(report.eta_full),
        "eta_primed": _mat_entries(report.eta_primed),
        "eta00": report.eta00.render(),
        "canonical": _mat_entries(report.canonical),
        "index": report.index.render(),
        "inv_canonical": _mat_entries(report.inv_canonical),
        "casimir_mat": _mat_entries(report.casimir_mat),
        "casimir_eigen": None if report.casimir_eigen is None else report.casimir_eigen.render(),
        "K": _mat_entries(report.K),
    }
