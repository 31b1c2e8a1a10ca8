"""Exact dense/sparse linear algebra over the scalar field Q(p).

Provides :class:`Mat` (a dense matrix of :class:`~qla.scalars.Scalar` entries
with exact inverse and null space), :class:`BiMat` (a matrix over a composite
double index, with the partial transpose, partial traces and the "tilde"
contraction inverse used throughout the R-matrix constructions), and
:func:`contract`, a sparse einsum over dictionaries keyed by index tuples.
"""

from __future__ import annotations

from typing import Callable, Mapping, Sequence

from qla.scalars import Scalar

_ZERO = Scalar.zero()
_ONE = Scalar.one()

SparseTensor = dict[tuple[int, ...], Scalar]


# ---------------------------------------------------------------------------
# Dense exact matrices
# ---------------------------------------------------------------------------


class Mat:
    """Dense matrix of exact scalars.

    Rows are lists of :class:`Scalar`.  Arithmetic skips zero entries, so
    sparse matrices stay cheap even in the dense representation.  Equality is
    entrywise (canonical scalar forms make that exact value equality).
    """

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[Scalar]]):
        self.rows: list[list[Scalar]] = [list(row) for row in rows]
        width = len(self.rows[0]) if self.rows else 0
        if any(len(row) != width for row in self.rows):
            raise ValueError("ragged rows")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> Mat:
        ncols = nrows if ncols is None else ncols
        return cls([[_ZERO] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> Mat:
        out = cls.zeros(n, n)
        for i in range(n):
            out.rows[i][i] = _ONE
        return out

    @classmethod
    def from_sparse(cls, entries: Mapping[tuple[int, int], Scalar], nrows: int, ncols: int | None = None) -> Mat:
        out = cls.zeros(nrows, ncols)
        for (i, j), val in entries.items():
            out.rows[i][j] = val
        return out

    @classmethod
    def diagonal(cls, values: Sequence[Scalar]) -> Mat:
        out = cls.zeros(len(values), len(values))
        for i, val in enumerate(values):
            out.rows[i][i] = val
        return out

    # -- shape and access ------------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, key: tuple[int, int]) -> Scalar:
        i, j = key
        return self.rows[i][j]

    def __setitem__(self, key: tuple[int, int], value: Scalar) -> None:
        i, j = key
        self.rows[i][j] = value

    def copy(self) -> Mat:
        return Mat(self.rows)

    def to_sparse(self) -> SparseTensor:
        return {
            (i, j): val
            for i, row in enumerate(self.rows)
            for j, val in enumerate(row)
            if not val.is_zero
        }

    def nnz(self) -> int:
        return sum(1 for row in self.rows for val in row if not val.is_zero)

    # -- predicates --------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(val.is_zero for row in self.rows for val in row)

    @property
    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        for i, row in enumerate(self.rows):
            for j, val in enumerate(row):
                if i == j:
                    if not val.is_one:
                        return False
                elif not val.is_zero:
                    return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):  # mutable container
        raise TypeError("Mat is unhashable")

    # -- arithmetic ----------------------------------------------------------------

    def __add__(self, other: Mat) -> Mat:
        self._check_same_shape(other)
        return Mat(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: Mat) -> Mat:
        self._check_same_shape(other)
        return Mat(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __neg__(self) -> Mat:
        return Mat([[-a for a in row] for row in self.rows])

    def scale(self, factor: Scalar | int) -> Mat:
        if isinstance(factor, int):
            factor = Scalar.from_rational(factor)
        return Mat([[a * factor for a in row] for row in self.rows])

    def __matmul__(self, other: Mat) -> Mat:
        if self.ncols != other.nrows:
            raise ValueError("inner dimensions do not match")
        out = Mat.zeros(self.nrows, other.ncols)
        orows = other.rows
        for i, row in enumerate(self.rows):
            out_row = out.rows[i]
            for k, a in enumerate(row):
                if a.is_zero:
                    continue
                for j, b in enumerate(orows[k]):
                    if b.is_zero:
                        continue
                    out_row[j] = out_row[j] + a * b
        return out

    def t(self) -> Mat:
        return Mat([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)])

    def trace(self) -> Scalar:
        if self.nrows != self.ncols:
            raise ValueError("trace of a non-square matrix")
        total = _ZERO
        for i in range(self.nrows):
            total = total + self.rows[i][i]
        return total

    def map_entries(self, fn: Callable[[Scalar], Scalar]) -> Mat:
        return Mat([[fn(a) for a in row] for row in self.rows])

    def eval_at(self, p0) -> Mat:
        """Entrywise evaluation at a rational point, as a matrix of constants."""
        return Mat(
            [[Scalar.from_rational(a.eval_at(p0)) for a in row] for row in self.rows]
        )

    def _check_same_shape(self, other: Mat) -> None:
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch")

    # -- elimination-based operations -------------------------------------------------

    def inverse(self) -> Mat:
        """Exact inverse by Gauss-Jordan elimination.

        Pivots are chosen to minimize the term count of the pivot entry, which
        keeps intermediate rational functions small.  Raises ``ValueError`` on
        a singular matrix.
        """
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        work = [list(row) + ident_row for row, ident_row in zip(self.rows, Mat.identity(n).rows)]
        for col in range(n):
            pivot_row = None
            pivot_size = None
            for r in range(col, n):
                entry = work[r][col]
                if entry.is_zero:
                    continue
                if pivot_row is None or entry.size < pivot_size:
                    pivot_row, pivot_size = r, entry.size
                    if pivot_size == 2:  # a monomial pivot cannot be beaten
                        break
            if pivot_row is None:
                raise ValueError("matrix is singular")
            if pivot_row != col:
                work[col], work[pivot_row] = work[pivot_row], work[col]
            pivot = work[col][col]
            if not pivot.is_one:
                inv_pivot = pivot.inv()
                work[col] = [
                    val if val.is_zero else val * inv_pivot for val in work[col]
                ]
            prow = work[col]
            for r in range(n):
                if r == col:
                    continue
                factor = work[r][col]
                if factor.is_zero:
                    continue
                row = work[r]
                for j in range(col, 2 * n):
                    pval = prow[j]
                    if not pval.is_zero:
                        row[j] = row[j] - factor * pval
        return Mat([row[n:] for row in work])

    def rref(self) -> tuple[Mat, list[int]]:
        """Reduced row echelon form and the list of pivot columns."""
        work = [list(row) for row in self.rows]
        nrows, ncols = self.nrows, self.ncols
        pivots: list[int] = []
        rank = 0
        for col in range(ncols):
            pivot_row = None
            pivot_size = None
            for r in range(rank, nrows):
                entry = work[r][col]
                if entry.is_zero:
                    continue
                if pivot_row is None or entry.size < pivot_size:
                    pivot_row, pivot_size = r, entry.size
                    if pivot_size == 2:
                        break
            if pivot_row is None:
                continue
            work[rank], work[pivot_row] = work[pivot_row], work[rank]
            pivot = work[rank][col]
            if not pivot.is_one:
                inv_pivot = pivot.inv()
                work[rank] = [v if v.is_zero else v * inv_pivot for v in work[rank]]
            prow = work[rank]
            for r in range(nrows):
                if r == rank:
                    continue
                factor = work[r][col]
                if factor.is_zero:
                    continue
                row = work[r]
                for j in range(col, ncols):
                    pval = prow[j]
                    if not pval.is_zero:
                        row[j] = row[j] - factor * pval
            pivots.append(col)
            rank += 1
            if rank == nrows:
                break
        return Mat(work), pivots

    def null_space(self) -> list[list[Scalar]]:
        """Basis of the right null space (vectors ``x`` with ``self @ x = 0``)."""
        reduced, pivots = self.rref()
        pivot_set = set(pivots)
        free_cols = [c for c in range(self.ncols) if c not in pivot_set]
        basis: list[list[Scalar]] = []
        for free in free_cols:
            vec = [_ZERO] * self.ncols
            vec[free] = _ONE
            for row_idx, pivot_col in enumerate(pivots):
                vec[pivot_col] = -reduced.rows[row_idx][free]
            basis.append(vec)
        return basis

    def rank(self) -> int:
        return len(self.rref()[1])

    # -- structure helpers -----------------------------------------------------------

    def kron(self, other: Mat) -> Mat:
        """Kronecker product; row/column composite index is (self, other) row-major."""
        out = Mat.zeros(self.nrows * other.nrows, self.ncols * other.ncols)
        for i, row in enumerate(self.rows):
            for j, a in enumerate(row):
                if a.is_zero:
                    continue
                for k, orow in enumerate(other.rows):
                    base_r = i * other.nrows + k
                    base_c = j * other.ncols
                    out_row = out.rows[base_r]
                    for l, b in enumerate(orow):
                        if not b.is_zero:
                            out_row[base_c + l] = a * b
        return out

    def __repr__(self) -> str:
        return f"Mat({self.nrows}x{self.ncols})"

    def render(self) -> str:
        """Multi-line text rendering with aligned columns of scalar text."""
        cells = [[val.render() for val in row] for row in self.rows]
        widths = [
            max(len(cells[r][c]) for r in range(self.nrows)) if self.nrows else 0
            for c in range(self.ncols)
        ]
        lines = []
        for row in cells:
            lines.append("[ " + "   ".join(text.rjust(w) for text, w in zip(row, widths)) + " ]")
        return "\n".join(lines)


def mat_pow(mat: Mat, power: int) -> Mat:
    if power < 0:
        return mat_pow(mat.inverse(), -power)
    result = Mat.identity(mat.nrows)
    base = mat
    while power:
        if power & 1:
            result = result @ base
        base = base @ base
        power >>= 1
    return result


# ---------------------------------------------------------------------------
# Matrices over a composite double index
# ---------------------------------------------------------------------------


class BiMat:
    """Square matrix over the composite index ``(i, j) -> i*N + j``.

    Entry ``M[i,j ; k,l]`` lives at row ``i*N + j`` and column ``k*N + l``.
    This is the natural home of R-matrices (operators on a two-fold tensor
    product) and of structure tensors over doubled labels.
    """

    __slots__ = ("N", "mat")

    def __init__(self, N: int, mat: Mat):
        if mat.nrows != N * N or mat.ncols != N * N:
            raise ValueError("matrix size must be N^2 x N^2")
        self.N = N
        self.mat = mat

    # -- constructors --------------------------------------------------------

    @classmethod
    def zeros(cls, N: int) -> BiMat:
        return cls(N, Mat.zeros(N * N))

    @classmethod
    def identity(cls, N: int) -> BiMat:
        return cls(N, Mat.identity(N * N))

    @classmethod
    def perm(cls, N: int) -> BiMat:
        """The flip operator: ``P[i,j ; k,l] = delta(i,l) delta(j,k)``."""
        out = cls.zeros(N)
        for i in range(N):
            for j in range(N):
                out.set4(i, j, j, i, _ONE)
        return out

    @classmethod
    def from4dict(cls, N: int, entries: Mapping[tuple[int, int, int, int], Scalar]) -> BiMat:
        out = cls.zeros(N)
        for (i, j, k, l), val in entries.items():
            if not val.is_zero:
                out.set4(i, j, k, l, val)
        return out

    # -- access ----------------------------------------------------------------

    def get4(self, i: int, j: int, k: int, l: int) -> Scalar:
        return self.mat.rows[i * self.N + j][k * self.N + l]

    def set4(self, i: int, j: int, k: int, l: int, value: Scalar) -> None:
        self.mat.rows[i * self.N + j][k * self.N + l] = value

    def to4dict(self) -> SparseTensor:
        N = self.N
        out: SparseTensor = {}
        for r, row in enumerate(self.mat.rows):
            i, j = divmod(r, N)
            for c, val in enumerate(row):
                if not val.is_zero:
                    k, l = divmod(c, N)
                    out[(i, j, k, l)] = val
        return out

    def copy(self) -> BiMat:
        return BiMat(self.N, self.mat.copy())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BiMat):
            return NotImplemented
        return self.N == other.N and self.mat == other.mat

    def __hash__(self):
        raise TypeError("BiMat is unhashable")

    # -- arithmetic (delegated) ---------------------------------------------------

    def __matmul__(self, other: BiMat) -> BiMat:
        return BiMat(self.N, self.mat @ other.mat)

    def __add__(self, other: BiMat) -> BiMat:
        return BiMat(self.N, self.mat + other.mat)

    def __sub__(self, other: BiMat) -> BiMat:
        return BiMat(self.N, self.mat - other.mat)

    def scale(self, factor: Scalar | int) -> BiMat:
        return BiMat(self.N, self.mat.scale(factor))

    def inverse(self) -> BiMat:
        return BiMat(self.N, self.mat.inverse())

    @property
    def is_zero(self) -> bool:
        return self.mat.is_zero

    # -- index gymnastics ------------------------------------------------------------

    def t1(self) -> BiMat:
        """Partial transpose in the first factor: ``out[i,j;k,l] = self[k,j;i,l]``."""
        N = self.N
        out = BiMat.zeros(N)
        for (i, j, k, l), val in self.to4dict().items():
            out.set4(k, j, i, l, val)
        return out

    def t2(self) -> BiMat:
        """Partial transpose in the second factor: ``out[i,j;k,l] = self[i,l;k,j]``."""
        N = self.N
        out = BiMat.zeros(N)
        for (i, j, k, l), val in self.to4dict().items():
            out.set4(i, l, k, j, val)
        return out

    def tr1(self) -> Mat:
        """Trace over the first factor: ``out[k,l] = sum_m self[m,k;m,l]``."""
        N = self.N
        out = Mat.zeros(N)
        for (i, j, k, l), val in self.to4dict().items():
            if i == k:
                out.rows[j][l] = out.rows[j][l] + val
        return out

    def tr2(self) -> Mat:
        """Trace over the second factor: ``out[i,j] = sum_m self[i,m;j,m]``."""
        N = self.N
        out = Mat.zeros(N)
        for (i, j, k, l), val in self.to4dict().items():
            if j == l:
                out.rows[i][k] = out.rows[i][k] + val
        return out

    def tilde(self) -> BiMat:
        """The contraction inverse: partial transpose, invert, transpose back.

        Satisfies ``sum_{m,n} M[i,m;n,l] tilde(M)[n,k;j,m] = delta(i,j) delta(k,l)``
        whenever the partial transpose is invertible.
        """
        return self.t1().inverse().t1()

    def eval_at(self, p0) -> BiMat:
        return BiMat(self.N, self.mat.eval_at(p0))

    def __repr__(self) -> str:
        return f"BiMat(N={self.N})"


# ---------------------------------------------------------------------------
# Sparse einsum
# ---------------------------------------------------------------------------


def contract(pattern: str, *operands: Mapping[tuple[int, ...], Scalar]) -> SparseTensor:
    """Sparse einsum over dictionaries keyed by integer index tuples.

    ``pattern`` reads like ``"mkjn,sdml->kjsdnl"``: single-letter indices, one
    group per operand, and an explicit output.  Repeated letters inside one
    group take the diagonal; letters absent from the output are summed over.
    Operands are folded left to right with hash joins on the shared letters,
    dropping (summing) letters as soon as no later group or the output needs
    them.  Zero values are never stored.
    """
    lhs, _, out_letters = pattern.partition("->")
    groups = [g.strip() for g in lhs.split(",")]
    out_letters = out_letters.strip()
    if len(groups) != len(operands):
        raise ValueError("operand count does not match the pattern")
    seen_inputs = set("".join(groups))
    if any(ch not in seen_inputs for ch in out_letters):
        raise ValueError("output uses a letter absent from the inputs")
    if len(set(out_letters)) != len(out_letters):
        raise ValueError("output letters must be distinct")

    prepared: list[tuple[str, Mapping[tuple[int, ...], Scalar]]] = []
    for letters, tensor in zip(groups, operands):
        prepared.append(_collapse_repeats(letters, tensor))

    letters, current = prepared[0]
    for pos in range(1, len(prepared)):
        needed = set(out_letters)
        for future_letters, _ in prepared[pos + 1 :]:
            needed.update(future_letters)
        letters, current = _join(letters, current, *prepared[pos], needed)

    # Sum out any remaining letters not in the output, then order the key.
    if set(letters) != set(out_letters) or letters != out_letters:
        positions = [letters.index(ch) for ch in out_letters]
        projected: SparseTensor = {}
        for key, val in current.items():
            out_key = tuple(key[p] for p in positions)
            acc = projected.get(out_key)
            acc = val if acc is None else acc + val
            if acc.is_zero:
                projected.pop(out_key, None)
            else:
                projected[out_key] = acc
        return projected
    return {k: v for k, v in current.items() if not v.is_zero}


def _collapse_repeats(
    letters: str, tensor: Mapping[tuple[int, ...], Scalar]
) -> tuple[str, Mapping[tuple[int, ...], Scalar]]:
    if len(set(letters)) == len(letters):
        return letters, tensor
    first_pos: dict[str, int] = {}
    keep: list[int] = []
    for pos, ch in enumerate(letters):
        if ch not in first_pos:
            first_pos[ch] = pos
            keep.append(pos)
    out: SparseTensor = {}
    for key, val in tensor.items():
        if all(key[pos] == key[first_pos[ch]] for pos, ch in enumerate(letters)):
            out[tuple(key[p] for p in keep)] = val
    return "".join(letters[p] for p in keep), out


def _join(
    letters_a: str,
    tensor_a: Mapping[tuple[int, ...], Scalar],
    letters_b: str,
    tensor_b: Mapping[tuple[int, ...], Scalar],
    needed: set[str],
) -> tuple[str, SparseTensor]:
    shared = [ch for ch in letters_a if ch in letters_b]
    out_letters = [ch for ch in letters_a if ch in needed]
    out_letters += [ch for ch in letters_b if ch in needed and ch not in letters_a]

    a_shared = [letters_a.index(ch) for ch in shared]
    b_shared = [letters_b.index(ch) for ch in shared]
    a_out = [(pos, letters_a.index(ch)) for pos, ch in enumerate(out_letters) if ch in letters_a]
    b_out = [
        (pos, letters_b.index(ch))
        for pos, ch in enumerate(out_letters)
        if ch not in letters_a and ch in letters_b
    ]

    buckets: dict[tuple[int, ...], list[tuple[tuple[int, ...], Scalar]]] = {}
    for key, val in tensor_b.items():
        buckets.setdefault(tuple(key[p] for p in b_shared), []).append((key, val))

    out: SparseTensor = {}
    width = len(out_letters)
    for key_a, val_a in tensor_a.items():
        matches = buckets.get(tuple(key_a[p] for p in a_shared))
        if not matches:
            continue
        base = [0] * width
        for pos, src in a_out:
            base[pos] = key_a[src]
        for key_b, val_b in matches:
            out_key_list = list(base)
            for pos, src in b_out:
                out_key_list[pos] = key_b[src]
            out_key = tuple(out_key_list)
            term = val_a * val_b
            acc = out.get(out_key)
            acc = term if acc is None else acc + term
            if acc.is_zero:
                out.pop(out_key, None)
            else:
                out[out_key] = acc
    return "".join(out_letters), out


def sparse_identity(dim: int) -> SparseTensor:
    return {(i, i): _ONE for i in range(dim)}


def sparse_to_mat(entries: Mapping[tuple[int, int], Scalar], nrows: int, ncols: int | None = None) -> Mat:
    return Mat.from_sparse(entries, nrows, ncols)


def delta(N: int) -> SparseTensor:
    """The identity as a 2-index sparse tensor."""
    return {(i, i): _ONE for i in range(N)}
