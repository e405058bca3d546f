"""Dense linear algebra over F_q.

Matrices are immutable wrappers around 2-D int64 numpy arrays with
entries in ``0..q-1`` plus the owning :class:`~fqchain.gf.GF`.  Empty
matrices (0 rows and/or 0 columns) are first-class citizens: they carry
an explicit shape, have rank 0, and appear as the trivial boundary
operators of bounded chain complexes.

Row reduction uses leftmost-pivot / first-nonzero-row ordering, so every
derived basis (RREF, kernels, duals, shortened generators) is
deterministic and reproducible across runs.

For extension fields, matrix products are computed by lifting one
operand with the regular representation of GF(p^m) over GF(p): each
entry becomes an m x m block over GF(p), after which the product is a
plain integer matrix product mod p.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .gf import GF

_BLAS_SAFE = 1 << 24  # float32 matmul is exact while sums stay below 2^24


def _as_data(field: GF, data, rows=None, cols=None) -> np.ndarray:
    arr = np.array(data, dtype=np.int64)
    if arr.size == 0 and (arr.ndim != 2 or rows is not None or cols is not None):
        r = rows if rows is not None else (arr.shape[0] if arr.ndim == 2 else 0)
        c = cols if cols is not None else (arr.shape[1] if arr.ndim == 2 else 0)
        arr = arr.reshape((r, c))
    if arr.ndim != 2:
        raise ValueError(f"matrix data must be 2-D, got shape {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= field.q):
        raise ValueError(f"entries must lie in 0..{field.q - 1}")
    return arr


def mod_p_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact (a @ b) % p, using BLAS float32 when the sums cannot overflow."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch {a.shape} @ {b.shape}")
    if a.size == 0 or b.size == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    bound = a.shape[1] * (p - 1) * (p - 1)
    if bound < _BLAS_SAFE:
        c = np.matmul(a.astype(np.float32), b.astype(np.float32))
        return np.mod(c, p).astype(np.int64)
    return np.matmul(a, b) % p


def field_matmul(field: GF, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Raw-array matrix product over F_q."""
    if field.m == 1:
        return mod_p_matmul(a, b, field.p)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch {a.shape} @ {b.shape}")
    m = field.m
    r, k = a.shape
    c = b.shape[1]
    # lift left operand entries to m x m blocks, expand right into digits
    a_hat = field.lift_table[a].transpose(0, 2, 1, 3).reshape(r * m, k * m)
    b_hat = field.digit_table[b].transpose(0, 2, 1).reshape(k * m, c)
    c_hat = mod_p_matmul(a_hat, b_hat, field.p).reshape(r, m, c)
    powers = field.p ** np.arange(m, dtype=np.int64)
    return np.einsum("imc,m->ic", c_hat, powers)


def rref_data(field: GF, data: np.ndarray) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form; returns (array, pivot columns)."""
    r = data.copy()
    nrows, ncols = r.shape
    pivots: list[int] = []
    if field.m == 1:
        p = field.p
        inv = field.inv_table
        row = 0
        for col in range(ncols):
            if row >= nrows:
                break
            nz = np.nonzero(r[row:, col])[0]
            if nz.size == 0:
                continue
            i = row + int(nz[0])
            if i != row:
                r[[row, i]] = r[[i, row]]
            r[row] = r[row] * int(inv[r[row, col]]) % p
            factors = r[:, col].copy()
            factors[row] = 0
            r -= np.outer(factors, r[row])
            r %= p
            pivots.append(col)
            row += 1
        return r, tuple(pivots)
    mul, sub = field.mul_table, field.sub_table
    inv = field.inv_table
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        i = row + int(nz[0])
        if i != row:
            r[[row, i]] = r[[i, row]]
        r[row] = mul[int(inv[r[row, col]]), r[row]]
        factors = r[:, col].copy()
        factors[row] = 0
        r = sub[r, mul[factors[:, None], r[row][None, :]]]
        pivots.append(col)
        row += 1
    return r, tuple(pivots)


def kernel_data(field: GF, data: np.ndarray) -> np.ndarray:
    """Basis (as rows) of the right kernel {v : data @ v^T = 0}."""
    ncols = data.shape[1]
    r, pivots = rref_data(field, data)
    free = [c for c in range(ncols) if c not in set(pivots)]
    k = np.zeros((len(free), ncols), dtype=np.int64)
    neg = field.neg_table
    for idx, f in enumerate(free):
        k[idx, f] = 1
        for i, pc in enumerate(pivots):
            k[idx, pc] = neg[r[i, f]]
    return k


class Mat:
    """Immutable dense matrix over a fixed finite field."""

    __slots__ = ("field", "data", "_rref")

    def __init__(self, field: GF, data, rows: int | None = None, cols: int | None = None):
        object.__setattr__(self, "field", field)
        arr = _as_data(field, data, rows, cols)
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "_rref", None)

    def __setattr__(self, *_):
        raise AttributeError("Mat is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, field: GF, rows: int, cols: int) -> "Mat":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: GF, n: int) -> "Mat":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def empty(cls, field: GF, rows: int, cols: int) -> "Mat":
        """Zero-size matrix with an explicit shape (rows*cols must be 0)."""
        if rows and cols:
            raise ValueError("empty matrix must have 0 rows or 0 cols")
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def row_vector(cls, field: GF, entries: Iterable[int]) -> "Mat":
        return cls(field, [list(entries)])

    # -- basic protocol ----------------------------------------------------

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def T(self) -> "Mat":
        return Mat(self.field, self.data.T.copy())

    def __eq__(self, other) -> bool:
        return (isinstance(other, Mat) and self.field == other.field
                and self.shape == other.shape and np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((self.field, self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"Mat({self.field!r}, {self.rows}x{self.cols})"

    def is_zero(self) -> bool:
        return not self.data.any()

    def _require_same_field(self, other: "Mat") -> None:
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")

    # -- arithmetic --------------------------------------------------------

    def __matmul__(self, other: "Mat") -> "Mat":
        self._require_same_field(other)
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch {self.shape} @ {other.shape}")
        return Mat(self.field, field_matmul(self.field, self.data, other.data))

    def __add__(self, other: "Mat") -> "Mat":
        self._require_same_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Mat(self.field, self.field.add_table[self.data, other.data])

    def __sub__(self, other: "Mat") -> "Mat":
        self._require_same_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return Mat(self.field, self.field.sub_table[self.data, other.data])

    def __neg__(self) -> "Mat":
        return Mat(self.field, self.field.neg_table[self.data])

    def scale(self, s: int) -> "Mat":
        self.field._check(s)
        return Mat(self.field, self.field.mul_table[s, self.data])

    def kron(self, other: "Mat") -> "Mat":
        """Kronecker product; block (i, j) is self[i, j] * other."""
        self._require_same_field(other)
        f = self.field
        ra, ca = self.shape
        rb, cb = other.shape
        if self.data.size == 0 or other.data.size == 0:
            return Mat(f, np.zeros((ra * rb, ca * cb), dtype=np.int64))
        if f.m == 1:
            return Mat(f, np.kron(self.data, other.data) % f.p)
        blocks = f.mul_table[self.data[:, :, None, None], other.data[None, None, :, :]]
        return Mat(f, blocks.transpose(0, 2, 1, 3).reshape(ra * rb, ca * cb))

    # -- elimination -------------------------------------------------------

    def rref(self) -> tuple["Mat", tuple[int, ...]]:
        """RREF with deterministic pivoting; cached."""
        if self._rref is None:
            r, piv = rref_data(self.field, self.data)
            r.setflags(write=False)
            object.__setattr__(self, "_rref", (r, piv))
        r, piv = self._rref
        return Mat(self.field, r), piv

    def rank(self) -> int:
        _, piv = self.rref()
        return len(piv)

    def row_basis(self) -> "Mat":
        """RREF rows with zero rows dropped (canonical row-space basis)."""
        r, piv = self.rref()
        return Mat(self.field, r.data[: len(piv)].copy())

    def kernel_basis(self) -> "Mat":
        """Full-row-rank K with self @ K.T = 0 and rank K = cols - rank."""
        return Mat(self.field, kernel_data(self.field, self.data))

    def dual_matrix(self) -> "Mat":
        """Generator of the Euclidean dual code: G H^T = 0, ranks add to n."""
        return self.kernel_basis()

    def rowspace_contains(self, v) -> bool:
        """True iff v is a linear combination of the rows."""
        vec = np.atleast_1d(np.asarray(v, dtype=np.int64)).ravel()
        if vec.shape[0] != self.cols:
            raise ValueError(f"vector length {vec.shape[0]} != cols {self.cols}")
        r, piv = self.rref()
        return not _reduce_against(self.field, r.data, piv, vec).any()

    def solve_left(self, v) -> np.ndarray | None:
        """Coefficients a with a @ self = v, or None when v is outside."""
        vec = np.atleast_1d(np.asarray(v, dtype=np.int64)).ravel()
        aug = np.concatenate([self.data.T, vec[:, None]], axis=1)
        r, piv = rref_data(self.field, aug)
        if self.cols in piv:
            return None
        coeff = np.zeros(self.rows, dtype=np.int64)
        for i, pc in enumerate(piv):
            coeff[pc] = r[i, -1]
        return coeff

    # -- column surgery ----------------------------------------------------

    def puncture(self, keep: Sequence[int]) -> "Mat":
        """Keep only the columns in `keep` (0-based, strictly increasing)."""
        idx = _check_index_set(keep, self.cols)
        return Mat(self.field, self.data[:, idx].copy() if idx else
                   np.zeros((self.rows, 0), dtype=np.int64))

    def shorten(self, keep: Sequence[int]) -> "Mat":
        """Generator (restricted to `keep`) of the row combinations vanishing
        outside `keep`."""
        idx = _check_index_set(keep, self.cols)
        drop = sorted(set(range(self.cols)) - set(idx))
        outside = self.data[:, drop] if drop else np.zeros((self.rows, 0), dtype=np.int64)
        left = kernel_data(self.field, outside.T)  # rows a with a @ outside = 0
        sub = field_matmul(self.field, left, self.data)[:, idx]
        r, piv = rref_data(self.field, sub)
        return Mat(self.field, r[: len(piv)].copy() if len(piv) else
                   np.zeros((0, len(idx)), dtype=np.int64))


def _check_index_set(keep: Sequence[int], n: int) -> list[int]:
    idx = list(keep)
    if any(not 0 <= c < n for c in idx):
        raise ValueError(f"index set not within 0..{n - 1}: {idx}")
    if sorted(set(idx)) != idx:
        raise ValueError("index set must be strictly increasing and distinct")
    return idx


def _reduce_against(field: GF, rref_rows: np.ndarray, pivots: tuple[int, ...],
                    vec: np.ndarray) -> np.ndarray:
    """Remainder of vec after elimination against normalized RREF rows."""
    v = vec.copy()
    if field.m == 1:
        for i, pc in enumerate(pivots):
            if v[pc]:
                v = (v - v[pc] * rref_rows[i]) % field.p
    else:
        mul, sub = field.mul_table, field.sub_table
        for i, pc in enumerate(pivots):
            if v[pc]:
                v = sub[v, mul[int(v[pc]), rref_rows[i]]]
    return v


def vstack(mats: Sequence[Mat]) -> Mat:
    if not mats:
        raise ValueError("vstack of nothing")
    f = mats[0].field
    cols = mats[0].cols
    for m in mats[1:]:
        if m.field != f or m.cols != cols:
            raise ValueError("vstack: incompatible blocks")
    return Mat(f, np.concatenate([m.data for m in mats], axis=0))


def hstack(mats: Sequence[Mat]) -> Mat:
    if not mats:
        raise ValueError("hstack of nothing")
    f = mats[0].field
    rows = mats[0].rows
    for m in mats[1:]:
        if m.field != f or m.rows != rows:
            raise ValueError("hstack: incompatible blocks")
    return Mat(f, np.concatenate([m.data for m in mats], axis=1))


def same_rowspace(a: Mat, b: Mat) -> bool:
    """True iff the two matrices generate the same row space."""
    if a.field != b.field or a.cols != b.cols:
        return False
    ra = a.rank()
    if ra != b.rank():
        return False
    return vstack([a, b]).rank() == ra


class RowAccumulator:
    """Incremental row-space builder with elimination.

    Keeps a growing internally-reduced basis; `add` reports whether the
    row enlarged the space.  Used to select independent logical classes.
    """

    def __init__(self, field: GF, ncols: int, seed_rows: np.ndarray | None = None):
        self.field = field
        self.ncols = ncols
        self.pivots: list[int] = []
        self.rows: list[np.ndarray] = []
        if seed_rows is not None:
            for r in seed_rows:
                self.add(r)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64).copy()
        f = self.field
        for pc, row in zip(self.pivots, self.rows):
            c = int(v[pc])
            if c:
                if f.m == 1:
                    v = (v - c * row) % f.p
                else:
                    v = f.sub_table[v, f.mul_table[c, row]]
        return v

    def add(self, v: np.ndarray) -> bool:
        rem = self.reduce(v)
        nz = np.nonzero(rem)[0]
        if nz.size == 0:
            return False
        lead = int(nz[0])
        f = self.field
        rem = f.mul_table[int(f.inv_table[rem[lead]]), rem]
        self.pivots.append(lead)
        self.rows.append(rem)
        return True


# -- symplectic structure ---------------------------------------------------

def symplectic_matrix(field: GF, n: int) -> Mat:
    """The 2n x 2n block matrix ((0, I), (-I, 0))."""
    z = np.zeros((n, n), dtype=np.int64)
    i = np.eye(n, dtype=np.int64)
    neg_i = field.neg_table[i]
    top = np.concatenate([z, i], axis=1)
    bot = np.concatenate([neg_i, z], axis=1)
    return Mat(field, np.concatenate([top, bot], axis=0))


def symplectic_product(field: GF, e1, e2) -> int:
    """For e1 = (a'|b'), e2 = (a|b): a'.b - b'.a."""
    v1 = np.asarray(e1, dtype=np.int64).ravel()
    v2 = np.asarray(e2, dtype=np.int64).ravel()
    if v1.shape != v2.shape or v1.shape[0] % 2:
        raise ValueError("symplectic product needs equal even-length vectors")
    n = v1.shape[0] // 2
    a1, b1 = v1[:n], v1[n:]
    a2, b2 = v2[:n], v2[n:]
    acc = 0
    for x, y in zip(a1, b2):
        acc = field.add(acc, field.mul(int(x), int(y)))
    for x, y in zip(b1, a2):
        acc = field.sub(acc, field.mul(int(x), int(y)))
    return acc
