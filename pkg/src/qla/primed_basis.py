"""Traceless basis change: 𝒟-vector, central element χ₀, primed generators, ad′.

The structure constants admit a joint null vector 𝒟^A; the combination
χ₀ = 𝒟^A χ_A is central, and subtracting its trace part from each generator
yields the primed set χ′_A = χ_A − (I′_A/I′₀)χ₀, which is traceless in every
representation but linearly dependent (𝒟^A χ′_A ≡ 0).  Dropping one primed
generator and prepending χ₀ gives an n-element basis in which the adjoint
action is block-diagonal; its (n−1)-dimensional block ad′ is irreducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .appendix_u import rep_u
from .qla_core import QlaStructure, RepBundle, deformed_traces
from .reporting import CheckResult, Witness
from .scalars import Scalar
from .tensors import Mat

__all__ = [
    "PrimedBasis",
    "d_vector",
    "build_primed",
    "primed_structure",
    "adjoint_prime",
    "chi0_image",
    "mu_scalar",
    "primed_images",
    "check_chi0_central",
    "check_traceless",
    "check_comm_prime",
    "basis_report",
]

_ZERO = Scalar.from_rational(0)
_ONE = Scalar.from_rational(1)


@dataclass
class PrimedBasis:
    """The primed basis data over one structure.

    ``d_vec`` is 𝒟^A; ``chi0_coords`` the coordinates of χ₀ in the unprimed
    basis (equal to 𝒟); ``T`` the change-of-basis matrix whose column 0 is
    χ₀ and whose remaining columns are the kept primed generators;
    ``dropped_index`` the composite index whose primed generator was removed;
    ``f_primed`` the structure constants in the new basis (index 0 = χ₀);
    ``mu`` maps a bundle name to μ(ρ) where ρ(χ₀) = μ(ρ)·I.
    """

    d_vec: list[Scalar]
    chi0_coords: list[Scalar]
    T: Mat
    dropped_index: int
    f_primed: dict[tuple[int, int, int], Scalar]
    mu: dict[str, Scalar] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.d_vec)

    def f_primed_entry(self, A: int, B: int, C: int) -> Scalar:
        return self.f_primed.get((A, B, C), _ZERO)


def d_vector(Q: QlaStructure, D: Mat) -> list[Scalar]:
    """The joint null vector of the structure constants, 𝒟^A.

    Solves ``f_{AB}{}^C 𝒟^B = 0`` for all A, C; the kernel must be
    one-dimensional and proportional to ``𝒟^{(ij)} = (D⁻¹)^j_i``, which is
    the normalization returned (so that 𝒟⁰ = 1 in the primed basis).
    """
    n = Q.n
    N = math.isqrt(n)
    stacked = Mat.zeros(n * n, n)
    for (A, B, C), val in Q.f.items():
        stacked[A * n + C, B] = val
    kernel = stacked.null_space()
    if len(kernel) != 1:
        raise ValueError(
            f"joint null space of the structure constants has dimension "
            f"{len(kernel)}, expected 1"
        )
    vec = kernel[0]
    D_inv = D.inverse()
    target = [D_inv[j, i] for i in range(N) for j in range(N)]
    pivot = next(i for i, v in enumerate(vec) if not v.is_zero)
    if target[pivot].is_zero:
        raise ValueError("null vector is not proportional to the inverse D pattern")
    scale = target[pivot] * vec[pivot].inv()
    scaled = [v * scale for v in vec]
    if scaled != target:
        raise ValueError("null vector is not proportional to the inverse D pattern")
    return scaled


def _adjoint_matrices(Q: QlaStructure) -> list[Mat]:
    """Unprimed adjoint action matrices M_A with (M_A)^C_B = f_{AB}{}^C."""
    mats = [Mat.zeros(Q.n) for _ in range(Q.n)]
    for (A, B, C), val in Q.f.items():
        mats[A][C, B] = val
    return mats


def build_primed(
    Q: QlaStructure,
    B_fn: RepBundle,
    D: Mat,
    dropped_index: int | None = None,
    T_override: Mat | None = None,
) -> PrimedBasis:
    """Assemble the primed basis from the structure and the fundamental bundle.

    The trace ratios are taken in ``B_fn`` (whose χ₀-trace must not vanish).
    By default the primed generator at the last diagonal composite index is
    dropped; ``T_override`` may supply the basis columns directly (column 0
    must be 𝒟), e.g. for a rescaled textbook basis.
    """
    n = Q.n
    d_vec = d_vector(Q, D)
    traces = deformed_traces(Q, B_fn)
    I0 = _ZERO
    for A in range(n):
        I0 = I0 + d_vec[A] * traces[A]
    if I0.is_zero:
        raise ValueError("the trace of the central element vanishes in this bundle")
    ratios = [traces[A] * I0.inv() for A in range(n)]

    # Full primed coordinate columns χ′_A = e_A − (I_A/I₀)·𝒟; they satisfy
    # Σ_A 𝒟^A χ′_A = 0, so exactly one may be dropped.
    primed_cols = []
    for A in range(n):
        col = [-(ratios[A] * d_vec[E]) for E in range(n)]
        col[A] = col[A] + _ONE
        primed_cols.append(col)
    for E in range(n):
        acc = _ZERO
        for A in range(n):
            acc = acc + d_vec[A] * primed_cols[A][E]
        if not acc.is_zero:
            raise ValueError("primed generators fail the dependence relation")

    if dropped_index is None:
        dropped_index = n - 1
    if T_override is not None:
        T = T_override
        for E in range(n):
            if T[E, 0] != d_vec[E]:
                raise ValueError("column 0 of the basis override must be 𝒟")
    else:
        T = Mat.zeros(n)
        for E in range(n):
            T[E, 0] = d_vec[E]
        col = 1
        for A in range(n):
            if A == dropped_index:
                continue
            for E in range(n):
                T[E, col] = primed_cols[A][E]
            col += 1
    try:
        T_inv = T.inverse()
    except ValueError as exc:
        raise ValueError(
            "basis matrix is singular; drop a different generator"
        ) from exc

    adj = _adjoint_matrices(Q)
    f_primed: dict[tuple[int, int, int], Scalar] = {}
    for A in range(n):
        acting = Mat.zeros(n)
        for E in range(n):
            coeff = T[E, A]
            if not coeff.is_zero:
                acting = acting + adj[E].scale(coeff)
        conj = T_inv @ acting @ T
        for C in range(n):
            for B in range(n):
                val = conj[C, B]
                if not val.is_zero:
                    f_primed[(A, B, C)] = val

    pb = PrimedBasis(
        d_vec=d_vec,
        chi0_coords=list(d_vec),
        T=T,
        dropped_index=dropped_index,
        f_primed=f_primed,
    )
    try:
        pb.mu[B_fn.name] = mu_scalar(pb, B_fn)
    except ValueError:
        pass  # reducible bundle: χ₀ image is not scalar, so no μ is recorded
    return pb


def primed_structure(
    pb: PrimedBasis,
) -> tuple[dict[tuple[int, int, int], Scalar], CheckResult]:
    """The primed structure constants with their zero-pattern certificate.

    Only ``f′_{Aa}{}^b`` with a, b ≥ 1 may be nonzero: nothing acts on χ₀,
    and nothing produces a χ₀ component.
    """
    for (A, B, C), val in sorted(pb.f_primed.items()):
        if B == 0 or C == 0:
            return pb.f_primed, CheckResult(
                "struc-prime",
                False,
                witness=Witness((A, B, C), val.render()),
            )
    return pb.f_primed, CheckResult("struc-prime", True)


def chi0_image(pb: PrimedBasis, bundle: RepBundle) -> Mat:
    """ρ(χ₀) = Σ_A 𝒟^A ρ(χ_A)."""
    out = Mat.zeros(bundle.dim)
    for A, coeff in enumerate(pb.d_vec):
        if not coeff.is_zero:
            out = out + bundle.gen[A].scale(coeff)
    return out


def mu_scalar(pb: PrimedBasis, bundle: RepBundle) -> Scalar:
    """μ(ρ) with ρ(χ₀) = μ(ρ)·I; raises if the image is not scalar."""
    image = chi0_image(pb, bundle)
    mu = image[0, 0]
    if image != Mat.identity(bundle.dim).scale(mu):
        raise ValueError(
            f"central element image in {bundle.name} is not proportional to I"
        )
    return mu


def primed_images(pb: PrimedBasis, bundle: RepBundle) -> list[Mat]:
    """Images of the new basis [χ₀, χ′_a, …] in a bundle, via the T columns."""
    out = []
    for A in range(pb.n):
        mat = Mat.zeros(bundle.dim)
        for E in range(pb.n):
            coeff = pb.T[E, A]
            if not coeff.is_zero:
                mat = mat + bundle.gen[E].scale(coeff)
        out.append(mat)
    return out


def adjoint_prime(pb: PrimedBasis, Q: QlaStructure) -> RepBundle:
    """The (n−1)-dimensional adjoint bundle ad′.

    ``ad′(χ′_A)^a_b = f′_{Ab}{}^a`` on the primed labels; the returned bundle
    carries the images of the *unprimed* generators (obtained through T⁻¹) so
    it composes with every structure-level checker.  Its u-matrix is the
    primed block of the adjoint u; μ(ad′) is recorded on the basis.
    Raises if the matrices share a null vector (the block must be an irrep)
    or if the adjoint u fails to be block-diagonal in this basis.
    """
    n = pb.n
    small = [Mat.zeros(n - 1) for _ in range(n)]
    for (A, B, C), val in pb.f_primed.items():
        if B >= 1 and C >= 1:
            small[A][C - 1, B - 1] = val

    stacked = Mat.zeros(n * (n - 1), n - 1)
    for A in range(n):
        for a in range(n - 1):
            for b in range(n - 1):
                stacked[A * (n - 1) + a, b] = small[A][a, b]
    if stacked.null_space():
        raise ValueError("primed adjoint matrices share a null vector")

    mu0 = small[0][0, 0]
    if small[0] != Mat.identity(n - 1).scale(mu0):
        raise ValueError("central element image in ad' is not proportional to I")
    pb.mu["ad'"] = mu0

    T_inv = pb.T.inverse()
    u_full = T_inv @ rep_u(Q.F_adj) @ pb.T
    for k in range(1, n):
        if not (u_full[0, k].is_zero and u_full[k, 0].is_zero):
            raise ValueError("adjoint u-matrix is not block-diagonal in this basis")
    u_block = Mat.zeros(n - 1)
    for a in range(n - 1):
        for b in range(n - 1):
            u_block[a, b] = u_full[a + 1, b + 1]

    gen = []
    for E in range(n):
        mat = Mat.zeros(n - 1)
        for A in range(n):
            coeff = T_inv[A, E]
            if not coeff.is_zero:
                mat = mat + small[A].scale(coeff)
        gen.append(mat)
    return RepBundle(name="ad'", dim=n - 1, gen=gen, u=u_block)


def check_chi0_central(pb: PrimedBasis, bundle: RepBundle) -> CheckResult:
    """ρ(χ₀) commutes with every ρ(χ_A)."""
    name = f"chi0-central[{bundle.name}]"
    center = chi0_image(pb, bundle)
    for A, g in enumerate(bundle.gen):
        diff = center @ g - g @ center
        if not diff.is_zero:
            (x, y), val = sorted(diff.to_sparse().items())[0]
            return CheckResult(name, False, witness=Witness((A, x, y), val.render()))
    return CheckResult(name, True)


def check_traceless(pb: PrimedBasis, bundle: RepBundle) -> CheckResult:
    """tr(ρ(u)ρ(χ′_a)) = 0 for every kept primed generator."""
    name = f"primed-traceless[{bundle.name}]"
    images = primed_images(pb, bundle)
    for a in range(1, pb.n):
        value = (bundle.u @ images[a]).trace()
        if not value.is_zero:
            return CheckResult(name, False, witness=Witness((a,), value.render()))
    return CheckResult(name, True)


def check_comm_prime(
    Q: QlaStructure, pb: PrimedBasis, B_fn: RepBundle, bundle: RepBundle
) -> CheckResult:
    """The primed commutation relation at representation level.

    With ρ(χ₀) = μ(ρ)I and r_D = I′_D/I′₀ taken in the distinguished bundle,

    ``ρ(χ′_A)ρ(χ′_B) − ℝ^{CD}_{AB} ρ(χ′_C)ρ(χ′_D)
        = Σ_C [f_{AB}{}^C − μ(ρ)(r_A δ^C_B − ℝ^{CD}_{AB} r_D)] ρ(χ′_C)``.
    """
    name = f"comm-prime[{bundle.name}]"
    n = Q.n
    traces = deformed_traces(Q, B_fn)
    I0 = _ZERO
    for A in range(n):
        I0 = I0 + pb.d_vec[A] * traces[A]
    ratios = [traces[A] * I0.inv() for A in range(n)]
    mu = mu_scalar(pb, bundle)
    eye = Mat.identity(bundle.dim)
    primed = [
        bundle.gen[A] - eye.scale(mu * ratios[A]) for A in range(n)
    ]
    by_lower: dict[tuple[int, int], list[tuple[int, int, Scalar]]] = {}
    for (C, D, A, B), val in Q.bigR4().items():
        by_lower.setdefault((A, B), []).append((C, D, val))
    for A in range(n):
        for B in range(n):
            lhs = primed[A] @ primed[B]
            rhs = primed[B].scale(-(mu * ratios[A]))
            for C, D, val in by_lower.get((A, B), ()):
                lhs = lhs - (primed[C] @ primed[D]).scale(val)
                rhs = rhs + primed[C].scale(mu * val * ratios[D])
            for C in range(n):
                coeff = Q.f_entry(A, B, C)
                if not coeff.is_zero:
                    rhs = rhs + primed[C].scale(coeff)
            diff = lhs - rhs
            if not diff.is_zero:
                (x, y), val = sorted(diff.to_sparse().items())[0]
                return CheckResult(
                    name, False, witness=Witness((A, B, x, y), val.render())
                )
    return CheckResult(name, True)


def basis_report(pb: PrimedBasis) -> dict:
    """JSON-ready summary: 𝒟, T, dropped index, f′ nonzeros, μ values."""
    return {
        "d_vec": [v.render() for v in pb.d_vec],
        "T": [[v.render() for v in row] for row in pb.T.rows],
        "dropped_index": pb.dropped_index,
        "f_primed": [
            [a, b, c, val.render()] for (a, b, c), val in sorted(pb.f_primed.items())
        ],
        "mu": {name: val.render() for name, val in sorted(pb.mu.items())},
    }
