"""Quantum Lie algebra construction from a numerical R-matrix.

Given an R-matrix, this module builds the n = N² generator representations,
the big-ℝ matrix and structure constants f, the 𝔻 matrix, the adjoint
numerical R-matrix 𝔽, the deformed traces, and the adjoint representation,
together with checkers for the full family of consistency identities
(exchange relations, braid equation, deformed Jacobi, sum rules).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .appendix_u import rep_u
from .reporting import CheckResult, Witness, check_mat_zero, check_sparse_zero
from .rmatrix import RMatrixSpec, fundamental_L_matrices
from .scalars import DeformationContext, Scalar, parse_scalar
from .tensors import BiMat, Mat, SparseTensor, contract

__all__ = [
    "RepBundle",
    "QlaStructure",
    "fundamental_generators",
    "build_structure",
    "verify_qla",
    "check_representation",
    "deformed_traces",
    "adjoint_rep",
    "null_space_lemma",
    "check_bigD_identities",
    "check_square_antipode",
    "structure_to_dict",
    "structure_from_dict",
    "save_structure",
    "load_structure",
]

_ZERO = Scalar.from_rational(0)
_ONE = Scalar.from_rational(1)


@dataclass
class RepBundle:
    """A representation of the quantum Lie algebra.

    ``gen[A]`` is ρ(χ_A) with the composite basis order A = (i,j) ↦ i·N + j;
    ``orep[A][B]``, when present, is ρ(O_A{}^B); ``u`` is ρ(u);
    ``numerical_R`` is the R-matrix of the pair (ρ, ρ) when known.
    """

    name: str
    dim: int
    gen: list[Mat]
    u: Mat
    orep: list[list[Mat]] | None = None
    numerical_R: BiMat | None = None

    def __post_init__(self) -> None:
        for g in self.gen:
            if g.nrows != self.dim or g.ncols != self.dim:
                raise ValueError("generator matrix has wrong dimension")

    @property
    def n(self) -> int:
        return len(self.gen)


@dataclass
class QlaStructure:
    """Structure data of the quantum Lie algebra on n = N² generators.

    ``bigR`` is ℝ^{AB}_{CD} as a BiMat over composite indices, ``f`` the
    sparse structure constants f_{AB}{}^C, ``I_id`` the invariant vector
    I_{(ij)} = δ^i_j, ``bigD`` the matrix 𝔻^A_B = tilde(ℝ)^{CA}_{BC}, and
    ``F_adj`` the numerical R-matrix 𝔽 of the adjoint representation.
    """

    ctx: DeformationContext
    n: int
    bigR: BiMat
    f: dict[tuple[int, int, int], Scalar]
    I_id: list[Scalar]
    bigD: Mat
    F_adj: BiMat
    lam: Scalar = field(default=_ZERO)

    def __post_init__(self) -> None:
        if self.lam.is_zero:
            self.lam = self.ctx.lam()

    def f_entry(self, A: int, B: int, C: int) -> Scalar:
        return self.f.get((A, B, C), _ZERO)

    def bigR4(self) -> SparseTensor:
        """ℝ as a sparse 4-index dict keyed (A, B, C, D) for ℝ^{AB}_{CD}."""
        return self.bigR.to4dict()

    def f3(self) -> SparseTensor:
        """f as a sparse 3-index dict keyed (A, B, C) for f_{AB}{}^C."""
        return dict(self.f)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def fundamental_generators(R: BiMat, ctx: DeformationContext) -> RepBundle:
    """The fundamental (vector) representation bundle.

    ``fn(χ_(kl))^i_j = (1/λ)(δ^k_l δ^i_j − (R̂²)^{ki}_{lj})`` — the composite
    label supplies the first index of each slot of R̂².  The bundle carries
    ``ρ(O_(ij){}^{(kl)}) = ρ(L⁺ⁱ_k)·ρ(S(L⁻ˡ_j))`` and ρ(u).
    """
    N = R.N
    lam_inv = ctx.lam() ** -1
    rhat = BiMat.perm(N) @ R
    rhat2 = rhat @ rhat
    gen: list[Mat] = []
    for k in range(N):
        for l in range(N):
            mat = Mat.zeros(N)
            for i in range(N):
                for j in range(N):
                    val = rhat2.get4(k, i, l, j)
                    if k == l and i == j:
                        val = val - _ONE
                    if not val.is_zero:
                        mat[i, j] = -lam_inv * val
            gen.append(mat)
    lmats = fundamental_L_matrices(RMatrixSpec(label="tmp", ctx=ctx, R=R))
    orep = [
        [lmats.lplus[i][k] @ lmats.s_lminus[l][j] for k in range(N) for l in range(N)]
        for i in range(N)
        for j in range(N)
    ]
    return RepBundle(
        name="fn", dim=N, gen=gen, u=rep_u(R), orep=orep, numerical_R=R
    )


def build_structure(R: BiMat, ctx: DeformationContext) -> QlaStructure:
    """Assemble ℝ, f, I, 𝔻 and 𝔽 from one numerical R-matrix.

    All four objects are single contractions of R̃, R̂, R̂⁻¹ and R̂²:

    - ℝ^{(ab)(cd)}_{(ij)(kl)} = R̃^{mk}_{jn} R̂^{sd}_{ml} (R̂⁻¹)^{ni}_{ra} R̂^{rb}_{sc}
    - f_{(ij)(kl)}{}^{(rs)} = (1/λ)[δ^i_j δ^k_r δ^s_l − R̃^{mk}_{jn} (R̂⁻¹)^{ni}_{tr} (R̂²)^{ts}_{ml}]
    - 𝔻^A_B = tilde(ℝ)^{CA}_{BC}
    - 𝔽^{(ab)(cd)}_{(ij)(kl)} = R̃^{mk}_{jn} R̂^{sb}_{ml} R̂^{ni}_{rc} (R̂⁻¹)^{rd}_{sa}
    """
    N = R.N
    n = N * N
    til4 = R.tilde().to4dict()
    rhat = BiMat.perm(N) @ R
    rhat4 = rhat.to4dict()
    rhatinv4 = rhat.inverse().to4dict()
    rhat2_4 = (rhat @ rhat).to4dict()
    lam = ctx.lam()
    lam_inv = lam ** -1

    bigR = BiMat.zeros(n)
    for key, val in contract(
        "mkjn,sdml,nira,rbsc->abcdijkl", til4, rhat4, rhatinv4, rhat4
    ).items():
        a, b, c, d, i, j, k, l = key
        bigR.set4(a * N + b, c * N + d, i * N + j, k * N + l, val)

    f_term = contract("mkjn,nitr,tsml->ijklrs", til4, rhatinv4, rhat2_4)
    f: dict[tuple[int, int, int], Scalar] = {}
    keys = set(f_term)
    for i in range(N):
        for k in range(N):
            for l in range(N):
                keys.add((i, i, k, l, k, l))
    for i, j, k, l, r, s in keys:
        val = -f_term.get((i, j, k, l, r, s), _ZERO)
        if i == j and k == r and s == l:
            val = val + _ONE
        if not val.is_zero:
            f[(i * N + j, k * N + l, r * N + s)] = lam_inv * val

    F_adj = BiMat.zeros(n)
    for key, val in contract(
        "mkjn,sbml,nirc,rdsa->abcdijkl", til4, rhat4, rhat4, rhatinv4
    ).items():
        a, b, c, d, i, j, k, l = key
        F_adj.set4(a * N + b, c * N + d, i * N + j, k * N + l, val)

    # ℝ is braid-form (it tends to the composite flip classically), so the
    # tilde operation applies to its un-braided companion P·ℝ.  The result
    # solves the exchange system Σ_{C,B} T^{AB}_{CD} ℝ^{FC}_{EB} = δ^A_E δ^F_D
    # coming from the antipode axioms.
    til_big = (BiMat.perm(n) @ bigR).tilde()
    bigD = Mat.zeros(n)
    for A in range(n):
        for B in range(n):
            acc = _ZERO
            for C in range(n):
                acc = acc + til_big.get4(C, A, B, C)
            if not acc.is_zero:
                bigD[A, B] = acc

    I_id = [_ONE if A // N == A % N else _ZERO for A in range(n)]
    return QlaStructure(
        ctx=ctx, n=n, bigR=bigR, f=f, I_id=I_id, bigD=bigD, F_adj=F_adj, lam=lam
    )


# ---------------------------------------------------------------------------
# Identity suites
# ---------------------------------------------------------------------------


def _gen3(bundle: RepBundle) -> SparseTensor:
    """Generators as a sparse dict keyed (A, row, col)."""
    out: SparseTensor = {}
    for A, g in enumerate(bundle.gen):
        for (x, y), val in g.to_sparse().items():
            out[(A, x, y)] = val
    return out


def _orep4(bundle: RepBundle) -> SparseTensor:
    """O-matrices as a sparse dict keyed (A, B, row, col)."""
    if bundle.orep is None:
        raise ValueError("bundle does not carry the O-representation")
    out: SparseTensor = {}
    for A, row_of_mats in enumerate(bundle.orep):
        for B, mat in enumerate(row_of_mats):
            for (x, y), val in mat.to_sparse().items():
                out[(A, B, x, y)] = val
    return out


def _sparse_diff(lhs: SparseTensor, *rest: SparseTensor) -> SparseTensor:
    out = dict(lhs)
    for term in rest:
        for key, val in term.items():
            acc = out.get(key, _ZERO) - val
            if acc.is_zero:
                out.pop(key, None)
            else:
                out[key] = acc
    return out


def _sparse_sum(lhs: SparseTensor, rhs: SparseTensor) -> SparseTensor:
    out = dict(lhs)
    for key, val in rhs.items():
        acc = out.get(key, _ZERO) + val
        if acc.is_zero:
            out.pop(key, None)
        else:
            out[key] = acc
    return out


def _three_site_braid(M: BiMat) -> tuple[SparseTensor, SparseTensor]:
    """(M₁₂M₂₃M₁₂, M₂₃M₁₂M₂₃) on the triple composite space, sparse."""
    n = M.N
    entries = M.to4dict()
    m12: SparseTensor = {}
    m23: SparseTensor = {}
    for (a, b, c, d), val in entries.items():
        for x in range(n):
            m12[(a * n * n + b * n + x, c * n * n + d * n + x)] = val
            m23[(x * n * n + a * n + b, x * n * n + c * n + d)] = val
    lhs = contract("xy,yz,zw->xw", m12, m23, m12)
    rhs = contract("xy,yz,zw->xw", m23, m12, m23)
    return lhs, rhs


def verify_qla(
    Q: QlaStructure, B: RepBundle, skip_heavy: bool = False
) -> list[CheckResult]:
    """The full consistency suite for one structure and one bundle.

    Checks, all symbolically exact:

    1. the four exchange relations between ρ(χ) and ρ(O) matrices;
    2. the braid equation ℝ₁₂ℝ₂₃ℝ₁₂ = ℝ₂₃ℝ₁₂ℝ₂₃ (heavy for n ≥ 9;
       skipped when ``skip_heavy``);
    3. the deformed Jacobi identity;
    4. both auxiliary ℝ–f relations;
    5. the three sum rules tying ℝ and f to the invariant vector I.
    """
    bigR4 = Q.bigR4()
    f3 = Q.f3()
    G3 = _gen3(B)
    O4 = _orep4(B)
    tag = B.name
    results: list[CheckResult] = []

    lhs = contract("axy,byz->abxz", G3, G3)
    mid = contract("cdab,cxy,dyz->abxz", bigR4, G3, G3)
    rhs = contract("abc,cxz->abxz", f3, G3)
    results.append(
        check_sparse_zero(f"qla-rel1[{tag}]", _sparse_diff(lhs, mid, rhs))
    )

    lhs = contract("efab,ecxy,fdyz->abcdxz", bigR4, O4, O4)
    rhs = contract("aexy,bfyz,cdef->abcdxz", O4, O4, bigR4)
    results.append(
        check_sparse_zero(f"qla-rel2[{tag}]", _sparse_diff(lhs, rhs))
    )

    t1 = contract("axy,bcyz->abcxz", G3, O4)
    t2 = contract("deab,dcxy,eyz->abcxz", bigR4, O4, G3)
    t3 = contract("abd,dcxz->abcxz", f3, O4)
    t4 = contract("adxy,beyz,dec->abcxz", O4, O4, f3)
    results.append(
        check_sparse_zero(
            f"qla-rel3[{tag}]", _sparse_sum(_sparse_diff(t1, t2, t3), t4)
        )
    )

    w1 = contract("abxy,cyz->abcxz", O4, G3)
    w2 = contract("deac,dxy,ebyz->abcxz", bigR4, G3, O4)
    results.append(
        check_sparse_zero(f"qla-rel4[{tag}]", _sparse_diff(w1, w2))
    )

    if skip_heavy and Q.n >= 9:
        results.append(
            CheckResult("ybe-qla", True, detail="skipped (heavy)", skipped=True)
        )
    else:
        lhs, rhs = _three_site_braid(Q.bigR)
        results.append(check_sparse_zero("ybe-qla", _sparse_diff(lhs, rhs)))

    j1 = contract("alm,bnl->abmn", f3, f3)
    j2 = contract("cdab,clm,dnl->abmn", bigR4, f3, f3)
    j3 = contract("abc,cnm->abmn", f3, f3)
    results.append(
        check_sparse_zero("jacobi", _sparse_diff(j1, j2, j3))
    )

    u1 = contract("dcbn,adm->abcmn", bigR4, f3)
    u2 = contract("deab,mcdf,enf->abcmn", bigR4, bigR4, f3)
    u3 = contract("mcdn,abd->abcmn", bigR4, f3)
    u4 = contract("dfbn,mead,efc->abcmn", bigR4, bigR4, f3)
    results.append(
        check_sparse_zero("aux1", _sparse_sum(_sparse_diff(u1, u2, u3), u4))
    )

    v1 = contract("mbad,cnd->abcmn", bigR4, f3)
    v2 = contract("deac,fben,dfm->abcmn", bigR4, bigR4, f3)
    results.append(check_sparse_zero("aux2", _sparse_diff(v1, v2)))

    Ivec: SparseTensor = {
        (A,): val for A, val in enumerate(Q.I_id) if not val.is_zero
    }
    results.append(
        check_sparse_zero("qla-i[fI]", contract("abc,c->ab", f3, Ivec))
    )
    s1 = contract("cdab,c->dab", bigR4, Ivec)
    delta1: SparseTensor = {}
    for A in range(Q.n):
        for B, val in enumerate(Q.I_id):
            if not val.is_zero:
                delta1[(A, A, B)] = val
    results.append(check_sparse_zero("qla-i[RI1]", _sparse_diff(s1, delta1)))
    s2 = contract("cdab,d->cab", bigR4, Ivec)
    delta2: SparseTensor = {}
    for key, val in Ivec.items():
        (A,) = key
        for C in range(Q.n):
            delta2[(C, A, C)] = val
    lam_f = {key: Q.lam * val for key, val in f3.items()}
    lam_f3: SparseTensor = {(c, a, b): v for (a, b, c), v in lam_f.items()}
    results.append(
        check_sparse_zero(
            "qla-i[RI2]", _sparse_sum(_sparse_diff(s2, delta2), lam_f3)
        )
    )
    return results


def check_representation(Q: QlaStructure, B: RepBundle) -> CheckResult:
    """The generator exchange relation alone (for bundles without orep):

    ``ρ(χ_A)ρ(χ_B) − ℝ^{CD}_{AB} ρ(χ_C)ρ(χ_D) = f_{AB}{}^C ρ(χ_C)``.
    """
    G3 = _gen3(B)
    lhs = contract("axy,byz->abxz", G3, G3)
    mid = contract("cdab,cxy,dyz->abxz", Q.bigR4(), G3, G3)
    rhs = contract("abc,cxz->abxz", Q.f3(), G3)
    return check_sparse_zero(
        f"qla-rel1[{B.name}]", _sparse_diff(lhs, mid, rhs)
    )


def deformed_traces(Q: QlaStructure, B: RepBundle) -> list[Scalar]:
    """The deformed traces ``I^ρ_A = tr(ρ(u)ρ(χ_A))``.

    Raises if the sum rules ``f_{AB}{}^C I^ρ_C = 0`` and
    ``ℝ^{DB}_{AC} I^ρ_D = δ^B_A I^ρ_C`` fail (they hold for every
    consistently built bundle).
    """
    traces = [(B.u @ g).trace() for g in B.gen]
    Ivec: SparseTensor = {
        (A,): val for A, val in enumerate(traces) if not val.is_zero
    }
    f3 = Q.f3()
    if contract("abc,c->ab", f3, Ivec):
        raise ValueError(f"deformed traces of {B.name} violate the f-sum rule")
    lhs = contract("dbac,d->bac", Q.bigR4(), Ivec)
    expected: SparseTensor = {}
    for A in range(Q.n):
        for C, val in enumerate(traces):
            if not val.is_zero:
                expected[(A, A, C)] = val
    if _sparse_diff(lhs, expected):
        raise ValueError(f"deformed traces of {B.name} violate the ℝ-sum rule")
    return traces


def adjoint_rep(Q: QlaStructure) -> RepBundle:
    """The adjoint bundle: ``[ad(χ_A)]^C_B = f_{AB}{}^C``, R-matrix 𝔽, u = ρ(u) of 𝔽."""
    n = Q.n
    gen = [Mat.zeros(n) for _ in range(n)]
    for (A, B, C), val in Q.f.items():
        gen[A][C, B] = val
    return RepBundle(
        name="ad", dim=n, gen=gen, u=rep_u(Q.F_adj), orep=None, numerical_R=Q.F_adj
    )


def null_space_lemma(Q: QlaStructure) -> CheckResult:
    """Joint kernel of the transposed adjoint matrices is span{I}.

    The kernel of the stacked system ``Σ_C f_{AB}{}^C v_C = 0`` (all A, B)
    must be exactly 1-dimensional and proportional to I_A = δ^i_j.
    """
    n = Q.n
    stacked = Mat.zeros(n * n, n)
    for (A, B, C), val in Q.f.items():
        stacked[A * n + B, C] = val
    basis = stacked.null_space()
    if len(basis) != 1:
        return CheckResult(
            "null-space-lemma",
            False,
            detail=f"kernel dimension {len(basis)}, expected 1",
        )
    vec = basis[0]
    pivot = next((v for v in vec if not v.is_zero), None)
    if pivot is None:
        return CheckResult("null-space-lemma", False, detail="kernel vector is zero")
    scaled = [v * pivot.inv() for v in vec]
    ref_pivot = next(v for v in Q.I_id if not v.is_zero)
    reference = [v * ref_pivot.inv() for v in Q.I_id]
    if scaled != reference:
        return CheckResult(
            "null-space-lemma",
            False,
            detail="kernel vector is not proportional to the invariant vector",
        )
    return CheckResult("null-space-lemma", True)


def check_bigD_identities(Q: QlaStructure) -> list[CheckResult]:
    """𝔻 satisfies the same identity family as the small D-matrix:

    ``𝔻₁𝔻₂ℝ = ℝ𝔻₁𝔻₂`` and ``tilde(Pℝ)^{AB}_{CD} = (𝔻₁⁻¹ℝ⁻¹𝔻₂)^{AB}_{DC}``.
    """
    n = Q.n
    eye = Mat.identity(n)
    d1 = BiMat(n, Q.bigD.kron(eye))
    d2 = BiMat(n, eye.kron(Q.bigD))
    d1_inv = BiMat(n, Q.bigD.inverse().kron(eye))
    results = [
        check_mat_zero(
            "bigD-comm", (d1 @ d2 @ Q.bigR).mat - (Q.bigR @ d1 @ d2).mat
        )
    ]
    til = (BiMat.perm(n) @ Q.bigR).tilde()
    conj = d1_inv @ Q.bigR.inverse() @ d2
    residual: SparseTensor = {}
    for (A, B, C, D), val in til.to4dict().items():
        residual[(A, B, C, D)] = val
    for (A, B, D, C), val in conj.to4dict().items():
        key = (A, B, C, D)
        acc = residual.get(key, _ZERO) - val
        if acc.is_zero:
            residual.pop(key, None)
        else:
            residual[key] = acc
    results.append(check_sparse_zero("bigD-tilde", residual))
    return results


def check_square_antipode(Q: QlaStructure, B: RepBundle) -> CheckResult:
    """``Σ_B 𝔻^B_A ρ(χ_B) = ρ(u) ρ(χ_A) ρ(u)⁻¹`` for every A."""
    u_inv = B.u.inverse()
    for A in range(Q.n):
        lhs = Mat.zeros(B.dim)
        for Bidx in range(Q.n):
            coeff = Q.bigD[Bidx, A]
            if not coeff.is_zero:
                lhs = lhs + B.gen[Bidx].scale(coeff)
        rhs = B.u @ B.gen[A] @ u_inv
        diff = lhs - rhs
        if not diff.is_zero:
            for (x, y), val in sorted(diff.to_sparse().items()):
                return CheckResult(
                    f"square-antipode[{B.name}]",
                    False,
                    witness=Witness((A, x, y), val.render()),
                )
    return CheckResult(f"square-antipode[{B.name}]", True)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _bimat_entries(M: BiMat) -> list[list]:
    return [
        [i, j, k, l, val.render()] for (i, j, k, l), val in sorted(M.to4dict().items())
    ]


def _bimat_from_entries(n: int, entries: list[list]) -> BiMat:
    M = BiMat.zeros(n)
    for i, j, k, l, text in entries:
        M.set4(int(i), int(j), int(k), int(l), parse_scalar(text))
    return M


def structure_to_dict(Q: QlaStructure) -> dict:
    """JSON-ready dict with every scalar rendered in the text grammar."""
    return {
        "N": Q.ctx.N,
        "root_order": Q.ctx.root_order,
        "n": Q.n,
        "lambda": Q.lam.render(),
        "bigR": _bimat_entries(Q.bigR),
        "f": [[a, b, c, val.render()] for (a, b, c), val in sorted(Q.f.items())],
        "I_id": [val.render() for val in Q.I_id],
        "bigD": [
            [i, j, val.render()] for (i, j), val in sorted(Q.bigD.to_sparse().items())
        ],
        "F_adj": _bimat_entries(Q.F_adj),
    }


def structure_from_dict(data: dict) -> QlaStructure:
    ctx = DeformationContext(N=int(data["N"]), root_order=int(data["root_order"]))
    n = int(data["n"])
    bigD = Mat.zeros(n)
    for i, j, text in data["bigD"]:
        bigD[int(i), int(j)] = parse_scalar(text)
    return QlaStructure(
        ctx=ctx,
        n=n,
        bigR=_bimat_from_entries(n, data["bigR"]),
        f={
            (int(a), int(b), int(c)): parse_scalar(text)
            for a, b, c, text in data["f"]
        },
        I_id=[parse_scalar(text) for text in data["I_id"]],
        bigD=bigD,
        F_adj=_bimat_from_entries(n, data["F_adj"]),
        lam=parse_scalar(data["lambda"]),
    )


def save_structure(Q: QlaStructure, path: str | Path) -> None:
    Path(path).write_text(json.dumps(structure_to_dict(Q)))


def load_structure(path: str | Path) -> QlaStructure:
    return structure_from_dict(json.loads(Path(path).read_text()))
