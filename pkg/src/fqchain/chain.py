"""Bounded chain complexes of F_q vector spaces.

A complex holds boundary matrices A_1..A_l, where A_j maps the level-j
space (dimension n_j) into level j-1 (dimension n_{j-1}); consecutive
boundaries must compose to zero.  Trivial boundary operators at both
ends are implicit rank-zero matrices.

Tensor products lay out the level-j space of the product as the direct
sum of the subspaces A_i (x) B_{j-i} ordered by *decreasing* A-degree i,
with the sign (-1)^i applied to the B-boundary blocks through field
negation.  The layout (block offsets) is recorded on the product so
that certificates and projections can address subspaces directly.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .gf import GF
from .matf import Mat

INF = math.inf


def dist_mul(a, b):
    """Product of distances with the infinity convention (d >= 1 always)."""
    if a is INF or b is INF:
        return INF
    return a * b


class ChainComplex:
    """Validated bounded chain complex K(A_1, ..., A_l)."""

    def __init__(self, field: GF, boundaries: Sequence[Mat], validate: bool = True):
        if not boundaries:
            raise ValueError("a complex needs at least one boundary matrix")
        for a in boundaries:
            if a.field != field:
                raise ValueError("all boundary matrices must share the complex field")
        for j in range(1, len(boundaries)):
            if boundaries[j - 1].cols != boundaries[j].rows:
                raise ValueError(
                    f"dimension chain broken between boundaries {j} and {j + 1}: "
                    f"{boundaries[j - 1].shape} then {boundaries[j].shape}")
        if validate:
            for j in range(1, len(boundaries)):
                if not (boundaries[j - 1] @ boundaries[j]).is_zero():
                    raise ValueError(f"boundaries {j} and {j + 1} do not compose to zero")
        self.field = field
        self.boundaries = tuple(boundaries)

    @property
    def ell(self) -> int:
        return len(self.boundaries)

    @property
    def dims(self) -> tuple[int, ...]:
        return (self.boundaries[0].rows,) + tuple(a.cols for a in self.boundaries)

    def dim(self, j: int) -> int:
        return self.dims[j]

    def boundary(self, j: int) -> Mat:
        """A_j for 1 <= j <= l; the trivial operators for j = 0 and l+1."""
        if j == 0:
            return Mat.empty(self.field, 0, self.dims[0])
        if j == self.ell + 1:
            return Mat.empty(self.field, self.dims[self.ell], 0)
        if 1 <= j <= self.ell:
            return self.boundaries[j - 1]
        raise ValueError(f"boundary index {j} out of range 0..{self.ell + 1}")

    def check_level(self, j: int) -> int:
        if not 0 <= j <= self.ell:
            raise ValueError(f"level {j} out of range 0..{self.ell}")
        return j

    def homology_rank(self, j: int) -> int:
        """k_j = n_j - rank A_j - rank A_{j+1} (trivial ends have rank 0)."""
        self.check_level(j)
        return self.dim(j) - self.boundary(j).rank() - self.boundary(j + 1).rank()

    def homology_ranks(self) -> tuple[int, ...]:
        return tuple(self.homology_rank(j) for j in range(self.ell + 1))

    def poincare_poly(self) -> tuple[int, ...]:
        """Coefficients k_0..k_l of the homology generating polynomial."""
        return self.homology_ranks()

    def cochain(self) -> "ChainComplex":
        """Transposed boundaries in the opposite order."""
        return ChainComplex(self.field,
                            [a.T for a in reversed(self.boundaries)], validate=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ChainComplex) and self.field == other.field
                and self.boundaries == other.boundaries)


def complex_new(field: GF, boundaries: Sequence[Mat]) -> ChainComplex:
    return ChainComplex(field, boundaries)


def poly_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Integer polynomial product (used for Poincare polynomials)."""
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def kunneth_ranks(a: ChainComplex, b: ChainComplex) -> tuple[int, ...]:
    """Convolution of the factor homology ranks."""
    if a.field != b.field:
        raise ValueError("field mismatch")
    return poly_mul(a.homology_ranks(), b.homology_ranks())


class ProductComplex(ChainComplex):
    """Tensor product of two complexes, with the block layout recorded.

    ``layout[j]`` lists (a_degree, offset, width) for the subspaces
    A_i (x) B_{j-i} of level j, ordered by decreasing i.
    """

    def __init__(self, a: ChainComplex, b: ChainComplex):
        if a.field != b.field:
            raise ValueError("field mismatch")
        field = a.field
        ell = a.ell + b.ell
        layout: list[list[tuple[int, int, int]]] = []
        for j in range(ell + 1):
            blocks, off = [], 0
            for i in range(min(j, a.ell), max(0, j - b.ell) - 1, -1):
                w = a.dim(i) * b.dim(j - i)
                blocks.append((i, off, w))
                off += w
            layout.append(blocks)
        boundaries = [self._build_boundary(field, a, b, j, layout) for j in range(1, ell + 1)]
        super().__init__(field, boundaries, validate=True)
        self.factors = (a, b)
        self.layout = tuple(tuple(blocks) for blocks in layout)

    @staticmethod
    def _build_boundary(field: GF, a: ChainComplex, b: ChainComplex, j: int,
                        layout) -> Mat:
        rows = sum(w for _, _, w in layout[j - 1])
        cols = sum(w for _, _, w in layout[j])
        out = np.zeros((rows, cols), dtype=np.int64)
        row_off = {i: off for i, off, _ in layout[j - 1]}
        for i, coff, _ in layout[j]:
            bdeg = j - i
            if i >= 1 and (i - 1) in row_off:
                blk = a.boundary(i).kron(Mat.identity(field, b.dim(bdeg)))
                out[row_off[i - 1]: row_off[i - 1] + blk.rows, coff: coff + blk.cols] = blk.data
            if bdeg >= 1 and i in row_off:
                blk = Mat.identity(field, a.dim(i)).kron(b.boundary(bdeg))
                if i % 2:
                    blk = -blk
                out[row_off[i]: row_off[i] + blk.rows, coff: coff + blk.cols] = blk.data
        return Mat(field, out)

    def subspace_slice(self, j: int, i: int) -> tuple[int, int]:
        """(offset, width) of the subspace A_i (x) B_{j-i} inside level j."""
        self.check_level(j)
        for deg, off, w in self.layout[j]:
            if deg == i:
                return off, w
        raise ValueError(f"no subspace with A-degree {i} at level {j}")


def tensor_product(a: ChainComplex, b: ChainComplex) -> ProductComplex:
    """Product complex with Kuenneth-compatible levels and recorded layout."""
    return ProductComplex(a, b)
