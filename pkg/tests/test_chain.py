import numpy as np
import pytest

from fqchain.chain import (ChainComplex, ProductComplex, kunneth_ranks, poly_mul,
                           tensor_product)
from fqchain.gf import field, field_from_order
from fqchain.matf import Mat, same_rowspace


def random_complex(f, dims, rng):
    mats = [Mat(f, rng.integers(0, f.q, size=(dims[0], dims[1])))]
    for j in range(2, len(dims)):
        kb = mats[-1].kernel_basis()
        mats.append(kb.T @ Mat(f, rng.integers(0, f.q, size=(kb.rows, dims[j]))))
    return ChainComplex(f, mats)


def circulant3(f):
    return Mat(f, [[1, 1, 0], [0, 1, 1], [1, 0, 1]])


def slow_product_boundary(a, b, j):
    """Independent construction of the level-j product boundary, by
    applying the defining action on every basis vector a_s (x) b_t."""
    f = a.field

    def blocks(level):
        out, off = [], 0
        for i in range(min(level, a.ell), max(0, level - b.ell) - 1, -1):
            w = a.dim(i) * b.dim(level - i)
            out.append((i, off, w))
            off += w
        return out, off

    cols_blocks, ncols = blocks(j)
    rows_blocks, nrows = blocks(j - 1)
    row_off = {i: off for i, off, _ in rows_blocks}
    out = np.zeros((nrows, ncols), dtype=np.int64)
    for i, coff, _ in cols_blocks:
        bd = b.dim(j - i)
        amat = a.boundary(i).data
        bmat = b.boundary(j - i).data
        for s in range(a.dim(i)):
            for t in range(bd):
                col = coff + s * bd + t
                if i - 1 in row_off:  # boundary of the A part, keep b_t
                    for u in range(a.dim(i - 1)):
                        val = amat[u, s]
                        if val:
                            row = row_off[i - 1] + u * bd + t
                            out[row, col] = f.add(int(out[row, col]), int(val))
                if i in row_off and j - i >= 1:  # signed boundary of the B part
                    for v in range(b.dim(j - i - 1)):
                        val = int(bmat[v, t])
                        if val:
                            if i % 2:
                                val = f.neg(val)
                            row = row_off[i] + s * b.dim(j - i - 1) + v
                            out[row, col] = f.add(int(out[row, col]), val)
    return out


def test_complex_validation(f2):
    a = Mat(f2, [[1, 0], [0, 1]])
    with pytest.raises(ValueError, match="compose to zero"):
        ChainComplex(f2, [a, a])
    with pytest.raises(ValueError, match="dimension chain"):
        ChainComplex(f2, [Mat.zeros(f2, 2, 3), Mat.zeros(f2, 2, 2)])
    ChainComplex(f2, [a])  # any single matrix is a valid 1-complex


def test_two_complex_from_orthogonal_pair(f2):
    h = Mat(f2, [np.roll([1, 0, 1, 1, 1, 0, 0], i).tolist() for i in range(7)])
    assert (h @ h.T).is_zero()
    cx = ChainComplex(f2, [h, h.T])
    assert cx.dims == (7, 7, 7)


def test_homology_ranks_circle(f2):
    cx = ChainComplex(f2, [circulant3(f2)])
    assert cx.homology_ranks() == (1, 1)
    assert cx.poincare_poly() == (1, 1)


def test_homology_rank_full_row_rank_start(f3, rng):
    a1 = Mat(f3, [[1, 0, 2], [0, 1, 1]])
    assert a1.rank() == 2
    cx = ChainComplex(f3, [a1])
    assert cx.homology_rank(0) == 0
    with pytest.raises(ValueError):
        cx.homology_rank(2)


def test_steane_complex_middle_rank(f2):
    h = Mat(f2, [[1, 0, 1, 1, 1, 0, 0]])
    rows = [np.roll(h.data[0], i).tolist() for i in range(7)]
    hh = Mat(f2, rows)
    cx = ChainComplex(f2, [hh, hh.T])
    assert hh.rank() == 3
    assert cx.homology_rank(1) == 7 - 3 - 3 == 1


def test_cochain(f3, rng):
    cx = random_complex(f3, [3, 4, 3], rng)
    co = cx.cochain()
    assert co.cochain() == cx
    assert co.homology_ranks() == tuple(reversed(cx.homology_ranks()))
    single = ChainComplex(f3, [Mat(f3, [[1, 2]])])
    assert single.cochain().boundaries[0] == Mat(f3, [[1], [2]])


def test_tensor_dims_torus(f2):
    k = ChainComplex(f2, [circulant3(f2)])
    t = tensor_product(k, k)
    assert t.dims == (9, 18, 9)
    assert t.homology_ranks() == (1, 2, 1)
    assert t.poincare_poly() == (1, 2, 1)


@pytest.mark.parametrize("q", (2, 3, 5, 4))
def test_tensor_matches_basis_action_oracle(q, rng):
    f = field_from_order(q)
    for _ in range(6):
        a = random_complex(f, [int(rng.integers(1, 4)) for _ in
                               range(int(rng.integers(2, 4)))], rng)
        b = random_complex(f, [int(rng.integers(1, 4)) for _ in
                               range(int(rng.integers(2, 4)))], rng)
        t = tensor_product(a, b)
        for j in range(1, t.ell + 1):
            expect = slow_product_boundary(a, b, j)
            assert np.array_equal(t.boundaries[j - 1].data, expect)


def test_tensor_gf3_one_complex_blocks(rng):
    # 2x3 and 3x2 one-complexes: the banded two-block layout with signs
    f = field(3)
    a1 = Mat(f, rng.integers(0, 3, size=(2, 3)))
    b1 = Mat(f, rng.integers(0, 3, size=(3, 2)))
    a, b = ChainComplex(f, [a1]), ChainComplex(f, [b1])
    t = tensor_product(a, b)
    c1, c2 = t.boundaries
    assert np.array_equal(slow_product_boundary(a, b, 1), c1.data)
    assert np.array_equal(slow_product_boundary(a, b, 2), c2.data)
    # explicit block placement: [A1 (x) I(b0) | I(a0) (x) B1]
    left = a1.kron(Mat.identity(f, 3))
    right = Mat.identity(f, 2).kron(b1)
    assert np.array_equal(c1.data[:, :left.cols], left.data)
    assert np.array_equal(c1.data[:, left.cols:], right.data)
    # and C2 carries the (-1)^1 sign on its B block
    top = -(Mat.identity(f, 3).kron(b1))
    assert np.array_equal(c2.data[:top.rows], top.data)


def test_tensor_field_mismatch(f2, f3):
    a = ChainComplex(f2, [Mat.identity(f2, 2)])
    b = ChainComplex(f3, [Mat.identity(f3, 2)])
    with pytest.raises(ValueError):
        tensor_product(a, b)


@pytest.mark.parametrize("q", (2, 3, 4, 5, 7, 8, 9, 11))
def test_kunneth_matches_direct_ranks(q, rng):
    f = field_from_order(q)
    for _ in range(6):
        a = random_complex(f, [int(rng.integers(1, 4)) for _ in
                               range(int(rng.integers(2, 4)))], rng)
        b = random_complex(f, [int(rng.integers(1, 4)) for _ in
                               range(int(rng.integers(2, 3)))], rng)
        t = tensor_product(a, b)
        assert t.homology_ranks() == kunneth_ranks(a, b)


def test_kunneth_zero_factor(f2, rng):
    a = random_complex(f2, [2, 3], rng)
    dead = ChainComplex(f2, [Mat.identity(f2, 2)])  # all homology trivial
    assert all(v == 0 for v in kunneth_ranks(a, dead))


def test_poincare_multiplicativity(f3, rng):
    a = random_complex(f3, [2, 3, 2], rng)
    b = random_complex(f3, [3, 2], rng)
    t = tensor_product(a, b)
    assert t.poincare_poly() == poly_mul(a.poincare_poly(), b.poincare_poly())


def test_subspace_slices(f2):
    k = ChainComplex(f2, [circulant3(f2)])
    t = tensor_product(k, k)
    assert t.layout[1] == ((1, 0, 9), (0, 9, 9))
    assert t.subspace_slice(1, 0) == (9, 9)
    with pytest.raises(ValueError):
        t.subspace_slice(1, 2)


def test_tensor_dimension_identity(f5, rng):
    a = random_complex(f5, [2, 3, 2], rng)
    b = random_complex(f5, [2, 2], rng)
    t = tensor_product(a, b)
    for j in range(t.ell + 1):
        total = sum(a.dim(i) * b.dim(j - i)
                    for i in range(a.ell + 1) if 0 <= j - i <= b.ell)
        assert t.dim(j) == total
