"""Numerical R-matrices: construction, file ingest, and consistency checks.

Builds the standard unitary-series R-matrix for any N, loads external
R-matrices from JSON, and verifies the Yang–Baxter equation, the quadratic
(Hecke) and cubic characteristic equations, and the exchange relations among
the L-matrix representation blocks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from qla.reporting import CheckResult, Witness, check_mat_zero
from qla.scalars import DeformationContext, Scalar, parse_scalar
from qla.tensors import BiMat, Mat, SparseTensor, contract

_ZERO = Scalar.zero()
_ONE = Scalar.one()


@dataclass(frozen=True, eq=False)
class RMatrixSpec:
    """An N²×N² numerical R-matrix together with its deformation context."""

    label: str
    ctx: DeformationContext
    R: BiMat

    def __post_init__(self) -> None:
        if self.R.N != self.ctx.N:
            raise ValueError("R-matrix size does not match the context dimension")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RMatrixSpec):
            return NotImplemented
        return self.label == other.label and self.ctx == other.ctx and self.R == other.R

    @property
    def N(self) -> int:
        return self.ctx.N

    def hat(self) -> BiMat:
        """The braid form: the flip composed with R."""
        return BiMat.perm(self.N) @ self.R

    def r21(self) -> BiMat:
        """R with both tensor factors swapped: P·R·P."""
        p = BiMat.perm(self.N)
        return p @ self.R @ p


def sun_r_matrix(N: int, ctx: DeformationContext | None = None) -> RMatrixSpec:
    """The unitary-series fundamental R-matrix.

    ``R = q^{-1/N} ( q Σ_I E_II⊗E_II + Σ_{I≠J} E_II⊗E_JJ + λ Σ_{I>J} E_IJ⊗E_JI )``
    with ``E_IJ`` the matrix units.  The default context takes ``q = p**N`` so
    that the ``q^{-1/N}`` prefactor is an exact monomial.
    """
    if ctx is None:
        ctx = DeformationContext(N=N, root_order=N)
    if ctx.N != N:
        raise ValueError("context dimension mismatch")
    pref = ctx.q_power(Fraction(-1, N))
    q = ctx.q_power(1)
    lam = ctx.lam()
    R = BiMat.zeros(N)
    for i in range(N):
        R.set4(i, i, i, i, pref * q)
    for i in range(N):
        for j in range(N):
            if i != j:
                R.set4(i, j, i, j, pref)
    for i in range(N):
        for j in range(N):
            if i > j:
                R.set4(i, j, j, i, pref * lam)
    return RMatrixSpec(label=f"su{N}", ctx=ctx, R=R)


# ---------------------------------------------------------------------------
# Yang-Baxter and characteristic equations
# ---------------------------------------------------------------------------


def _three_site_ops(R: BiMat) -> tuple[SparseTensor, SparseTensor, SparseTensor]:
    """R acting on sites (1,2), (1,3), (2,3) of an N³ space, as sparse matrices."""
    N = R.N
    entries = R.to4dict()
    r12: SparseTensor = {}
    r13: SparseTensor = {}
    r23: SparseTensor = {}
    for (a, b, c, d), val in entries.items():
        for x in range(N):
            r12[(a * N * N + b * N + x, c * N * N + d * N + x)] = val
            r13[(a * N * N + x * N + b, c * N * N + x * N + d)] = val
            r23[(x * N * N + a * N + b, x * N * N + c * N + d)] = val
    return r12, r13, r23


def _first_nonzero_witness(diff: SparseTensor, N: int) -> Witness | None:
    for key in sorted(diff):
        val = diff[key]
        if not val.is_zero:
            row, col = key
            a, rest = divmod(row, N * N)
            b, c = divmod(rest, N)
            d, rest = divmod(col, N * N)
            e, f = divmod(rest, N)
            return Witness((a, b, c, d, e, f), val.render())
    return None


def check_ybe(spec: RMatrixSpec) -> CheckResult:
    """Yang–Baxter equation ``R12 R13 R23 = R23 R13 R12`` on the triple space."""
    r12, r13, r23 = _three_site_ops(spec.R)
    lhs = contract("xy,yz,zw->xw", r12, r13, r23)
    rhs = contract("xy,yz,zw->xw", r23, r13, r12)
    diff = dict(lhs)
    for key, val in rhs.items():
        acc = diff.get(key, _ZERO) - val
        if acc.is_zero:
            diff.pop(key, None)
        else:
            diff[key] = acc
    witness = _first_nonzero_witness(diff, spec.N)
    if witness is None:
        return CheckResult(f"ybe[{spec.label}]", True)
    return CheckResult(f"ybe[{spec.label}]", False, witness=witness)


def check_characteristic(spec: RMatrixSpec, kind: str = "hecke", eps: int = 1) -> CheckResult:
    """Characteristic equation of the braid matrix.

    ``kind="hecke"``: verifies ``R̂² − q^{-1/N} λ R̂ − q^{-2/N} I = 0``.
    ``kind="cubic"``: verifies ``(R̂ − qI)(R̂ + q⁻¹I)(R̂ − ε q^{ε−N} I) = 0``
    with ``eps`` ∈ {+1, −1}.
    """
    ctx = spec.ctx
    rhat = spec.hat().mat
    eye = Mat.identity(spec.N * spec.N)
    if kind == "hecke":
        coeff1 = ctx.q_power(Fraction(-1, spec.N)) * ctx.lam()
        coeff0 = ctx.q_power(Fraction(-2, spec.N))
        residual = rhat @ rhat - rhat.scale(coeff1) - eye.scale(coeff0)
        return check_mat_zero(f"hecke[{spec.label}]", residual)
    if kind == "cubic":
        if eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        q = ctx.q_power(1)
        roots = [q, -ctx.q_power(-1), ctx.scalar(eps) * ctx.q_power(eps - spec.N)]
        residual = eye
        for root in roots:
            residual = residual @ (rhat - eye.scale(root))
        return check_mat_zero(f"cubic[{spec.label},eps={eps:+d}]", residual)
    raise ValueError(f"unknown characteristic kind {kind!r}")


# ---------------------------------------------------------------------------
# L-matrix representation blocks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LMatrices:
    """Representation images of the L-matrix entries.

    ``lplus[k][l]`` is the image of the (k,l) entry of L⁺, and similarly for
    ``lminus``; ``s_lminus`` holds the images of the antipoded L⁻ entries.
    """

    N: int
    lplus: list[list[Mat]]
    lminus: list[list[Mat]]
    s_lminus: list[list[Mat]]


def fundamental_L_matrices(spec: RMatrixSpec) -> LMatrices:
    """Blocks ``ρ(L⁺ᵏ_ℓ)^i_j = R^{ik}_{jℓ}``, ``ρ(L⁻ᵏ_ℓ)^i_j = (R₂₁⁻¹)^{ik}_{jℓ}``,
    and ``ρ(S(L⁻ᵏ_ℓ))^i_j = R^{ki}_{ℓj}``."""
    N = spec.N
    R = spec.R
    r21_inv = spec.r21().inverse()
    lplus = [[Mat.zeros(N) for _ in range(N)] for _ in range(N)]
    lminus = [[Mat.zeros(N) for _ in range(N)] for _ in range(N)]
    s_lminus = [[Mat.zeros(N) for _ in range(N)] for _ in range(N)]
    for k in range(N):
        for l in range(N):
            for i in range(N):
                for j in range(N):
                    lplus[k][l][i, j] = R.get4(i, k, j, l)
                    lminus[k][l][i, j] = r21_inv.get4(i, k, j, l)
                    s_lminus[k][l][i, j] = R.get4(k, i, l, j)
    return LMatrices(N=N, lplus=lplus, lminus=lminus, s_lminus=s_lminus)


def _exchange_residual(
    R: BiMat,
    left_space1: list[list[Mat]],
    left_space2: list[list[Mat]],
    right_space1: list[list[Mat]],
    right_space2: list[list[Mat]],
) -> Mat | None:
    """Residual of ``A₁B₂R − RB₂A₁`` in the representation, or None if zero.

    Entry (ij),(kl) of the left side is ``Σ_{a,b} ρ(A^i_a)ρ(B^j_b) R^{ab}_{kl}``
    (products taken in reading order), and of the right side
    ``Σ_{a,b} R^{ij}_{ab} ρ(B^b_l)ρ(A^a_k)``.
    """
    N = R.N
    for i in range(N):
        for j in range(N):
            for k in range(N):
                for l in range(N):
                    lhs = Mat.zeros(N)
                    rhs = Mat.zeros(N)
                    for a in range(N):
                        for b in range(N):
                            coeff = R.get4(a, b, k, l)
                            if not coeff.is_zero:
                                lhs = lhs + (left_space1[i][a] @ left_space2[j][b]).scale(coeff)
                            coeff = R.get4(i, j, a, b)
                            if not coeff.is_zero:
                                rhs = rhs + (right_space2[b][l] @ right_space1[a][k]).scale(coeff)
                    diff = lhs - rhs
                    if not diff.is_zero:
                        return diff
    return None


def check_rll(spec: RMatrixSpec, lmats: LMatrices | None = None) -> list[CheckResult]:
    """The three exchange relations among L-blocks:

    ``L⁺₁L⁺₂R = RL⁺₂L⁺₁``, ``L⁻₁L⁻₂R = RL⁻₂L⁻₁``, ``L⁻₂L⁺₁R = RL⁺₂L⁻₁``.
    """
    if lmats is None:
        lmats = fundamental_L_matrices(spec)
    R = spec.R
    lp, lm = lmats.lplus, lmats.lminus
    results = []
    res = _exchange_residual(R, lp, lp, lp, lp)
    results.append(
        CheckResult(f"rll[{spec.label},++]", res is None, witness=None if res is None else _mat_witness(res))
    )
    res = _exchange_residual(R, lm, lm, lm, lm)
    results.append(
        CheckResult(f"rll[{spec.label},--]", res is None, witness=None if res is None else _mat_witness(res))
    )
    # Mixed relation L⁻₁L⁺₂R = RL⁺₂L⁻₁: the left side pairs ρ(L⁻ⁱ_c)ρ(L⁺ʲ_d)
    # with R^{cd}_{kl}, the right side R^{ij}_{cd} with ρ(L⁺ᵈ_l)ρ(L⁻ᶜ_k).
    res = _exchange_residual(R, lm, lp, lm, lp)
    results.append(
        CheckResult(f"rll[{spec.label},-+]", res is None, witness=None if res is None else _mat_witness(res))
    )
    return results


def check_antipode_inverse(lmats: LMatrices) -> CheckResult:
    """``S(L⁻)`` blocks invert the ``L⁻`` blocks: Σ_a ρ(L⁻ᵏ_a)ρ(S(L⁻ᵃ_ℓ)) = δᵏ_ℓ I."""
    N = lmats.N
    for k in range(N):
        for l in range(N):
            total = Mat.zeros(N)
            for a in range(N):
                total = total + lmats.lminus[k][a] @ lmats.s_lminus[a][l]
            expected = Mat.identity(N) if k == l else Mat.zeros(N)
            if total != expected:
                return CheckResult(
                    "antipode-inverse", False, witness=_mat_witness(total - expected)
                )
    return CheckResult("antipode-inverse", True)


def _mat_witness(diff: Mat) -> Witness:
    for i, row in enumerate(diff.rows):
        for j, val in enumerate(row):
            if not val.is_zero:
                return Witness((i, j), val.render())
    raise AssertionError("witness requested for a zero matrix")


# ---------------------------------------------------------------------------
# JSON ingest / save
# ---------------------------------------------------------------------------


def load_r_matrix(path: str | Path) -> RMatrixSpec:
    """Load an R-matrix from JSON.

    Schema: ``{"label": str, "n": int, "root_order": int, "entries":
    [{"i": int, "j": int, "k": int, "l": int, "value": scalar-string}, ...]}``
    with 0-based indices; omitted entries are zero.  Invertibility is checked
    on load.
    """
    path = Path(path)
    data = json.loads(path.read_text())
    try:
        label = str(data["label"])
        N = int(data["n"])
        root_order = int(data["root_order"])
        raw_entries = data["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"{path}: malformed R-matrix file: {exc}") from exc
    ctx = DeformationContext(N=N, root_order=root_order)
    R = BiMat.zeros(N)
    for pos, item in enumerate(raw_entries):
        try:
            i, j, k, l = (int(item[key]) for key in ("i", "j", "k", "l"))
            value = parse_scalar(str(item["value"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"{path}: entry {pos}: missing field: {exc}") from exc
        except ValueError as exc:
            raise ValueError(f"{path}: entry {pos}: {exc}") from exc
        if not all(0 <= idx < N for idx in (i, j, k, l)):
            raise ValueError(f"{path}: entry {pos}: index out of range for n={N}")
        R.set4(i, j, k, l, value)
    try:
        R.mat.inverse()
    except ValueError as exc:
        raise ValueError(f"{path}: R-matrix is singular") from exc
    return RMatrixSpec(label=label, ctx=ctx, R=R)


def save_r_matrix(spec: RMatrixSpec, path: str | Path) -> None:
    entries = [
        {"i": i, "j": j, "k": k, "l": l, "value": val.render()}
        for (i, j, k, l), val in sorted(spec.R.to4dict().items())
    ]
    payload = {
        "label": spec.label,
        "n": spec.N,
        "root_order": spec.ctx.root_order,
        "entries": entries,
    }
    Path(path).write_text(json.dumps(payload, indent=1))
