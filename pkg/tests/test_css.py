import numpy as np
import pytest

from fqchain.chain import ChainComplex, tensor_product
from fqchain.css import (CssCode, SubsystemCode, code_params, css_from_complex,
                         css_new, logical_basis, logical_span, subsystem_new,
                         verify_css_pair, xz_swapped, z_shortened_code)
from fqchain.constructions import (repetition_check, stabilizer_product_matrices,
                                   steane_code, subsystem_product, toric_code)
from fqchain.experiments import random_css_pair, rng_for
from fqchain.gf import field, field_from_order
from fqchain.matf import Mat, same_rowspace, vstack


def test_css_new_steane(f2):
    code = steane_code()
    assert code.params() == (7, 1)
    assert verify_css_pair(code)


def test_css_new_trivial_and_errors(f2, f3):
    code = css_new(Mat.identity(f2, 4), Mat.empty(f2, 0, 4))
    assert code.params() == (4, 0)
    q3 = css_new(Mat(f3, [[1, 1, 1]]), Mat(f3, [[1, 1, 1]]))
    assert q3.params() == (3, 1)
    with pytest.raises(ValueError):
        css_new(Mat.identity(f2, 3), Mat.identity(f2, 3))
    with pytest.raises(ValueError):
        css_new(Mat.identity(f2, 3), Mat.empty(f2, 0, 4))


def test_css_from_complex_levels(f2):
    st = steane_code()
    cx = ChainComplex(f2, [st.hx, st.hz.T])
    mid = css_from_complex(cx, 1)
    assert mid.hx == st.hx and mid.hz == st.hz
    assert mid.k == cx.homology_rank(1)
    top = css_from_complex(cx, 2)
    assert top.hz.shape == (0, 7)
    bottom = css_from_complex(cx, 0)
    assert bottom.hx.shape == (0, 7)
    with pytest.raises(ValueError):
        css_from_complex(cx, 3)


def test_css_from_complex_matches_ranks(rng):
    f = field_from_order(3)
    for _ in range(10):
        a1 = Mat(f, rng.integers(0, 3, size=(3, 4)))
        kb = a1.kernel_basis()
        a2 = kb.T @ Mat(f, rng.integers(0, 3, size=(kb.rows, 3)))
        cx = ChainComplex(f, [a1, a2])
        for j in range(3):
            assert css_from_complex(cx, j).k == cx.homology_rank(j)


def test_toric_level_one_matches_builder(f2):
    p = repetition_check(f2, 3, full=True)
    cx = tensor_product(ChainComplex(f2, [p]), ChainComplex(f2, [p.T]))
    from_complex = css_from_complex(cx, 1)
    built = toric_code(f2, 3)
    assert same_rowspace(from_complex.hx, built.hx)
    assert same_rowspace(from_complex.hz, built.hz)


def test_subsystem_new_bacon_shor(f2):
    p = repetition_check(f2, 3)
    q = Mat(f2, [[1, 1, 1]])
    code = subsystem_new(p.kron(Mat.identity(f2, 3)), Mat.identity(f2, 3).kron(p))
    assert code.params() == (9, 1, 4)
    assert same_rowspace(code.hx, p.kron(q))
    assert same_rowspace(code.hz, q.kron(p))
    assert verify_css_pair(code)


def test_subsystem_new_orthogonal_gauges_is_stabilizer(f2):
    st = steane_code()
    code = subsystem_new(st.hx, st.hz)
    assert code.kappa == 0
    assert same_rowspace(code.hx, st.hx)
    assert code.k == st.k


def test_subsystem_product_stabilizers_match_explicit_blocks(f2, f3):
    for base in (steane_code(),
                 css_new(Mat(f3, [[1, 1, 1]]), Mat(f3, [[1, 1, 1]]))):
        prod = subsystem_product(base, base)
        hx, hz = stabilizer_product_matrices(base, base)
        assert same_rowspace(prod.hx, hx)
        assert same_rowspace(prod.hz, hz)
        assert prod.k == base.k * base.k
        assert verify_css_pair(prod)


def test_logical_basis_steane(f2):
    lx, lz = logical_basis(steane_code())
    assert (lx @ lz.T) == Mat.identity(f2, 1)


def test_logical_basis_toric(f2):
    code = toric_code(f2, 2)
    lx, lz = logical_basis(code)
    assert (lx @ lz.T) == Mat.identity(f2, 2)
    for row in lx.data:
        assert not code.hx.rowspace_contains(row)
    for row in lz.data:
        assert not code.hz.rowspace_contains(row)


def test_logical_basis_errors(f2):
    code = css_new(Mat.identity(f2, 3), Mat.empty(f2, 0, 3))
    with pytest.raises(ValueError):
        logical_basis(code)


def test_logical_basis_random_pairing(rng):
    for q in (2, 3, 4, 5):
        f = field_from_order(q)
        for trial in range(8):
            n = int(rng.integers(4, 8))
            rx = int(rng.integers(1, n - 2))
            rz = int(rng.integers(1, n - rx - 1))
            code = random_css_pair(f, n, rx, rz, seed=rng)
            lx, lz = logical_basis(code)
            assert (lx @ lz.T) == Mat.identity(f, code.k)
            assert (lx @ code.gz.T).is_zero()
            assert (lz @ code.gx.T).is_zero()


def test_subsystem_product_logicals_span_kronecker_classes(f2):
    # the product logicals are the Kronecker products of the factor
    # logicals (X with X, Z with Z); same classes as the computed basis
    st = steane_code()
    prod = subsystem_product(st, st)
    lxa, lza = logical_basis(st)
    lx_kron = lxa.kron(lxa)
    lz_kron = lza.kron(lza)
    lx, lz = logical_basis(prod)
    assert (lx_kron @ prod.gz.T).is_zero()
    assert (lz_kron @ prod.gx.T).is_zero()
    base_rank = vstack([prod.gx, lx]).rank()
    assert vstack([prod.gx, lx, lx_kron]).rank() == base_rank
    base_rank_z = vstack([prod.gz, lz]).rank()
    assert vstack([prod.gz, lz, lz_kron]).rank() == base_rank_z


def test_code_params(f2):
    assert code_params(steane_code()) == (7, 1)
    p = repetition_check(f2, 3)
    bs = subsystem_new(p.kron(Mat.identity(f2, 3)), Mat.identity(f2, 3).kron(p))
    assert code_params(bs) == (9, 1, 4)
    zero = css_new(Mat.identity(f2, 2), Mat.empty(f2, 0, 2))
    assert code_params(zero) == (2, 0)


def test_xz_swapped(f3):
    code = css_new(Mat(f3, [[1, 1, 1]]), Mat(f3, [[1, 2, 0]]))
    sw = xz_swapped(code)
    assert sw.hx == code.hz and sw.hz == code.hx


def test_z_shortened_code(f2, rng):
    st = steane_code()
    keep = [0, 1, 2, 3, 4]
    short = z_shortened_code(st, keep)
    assert short.n == 5
    assert verify_css_pair(short)


def test_logical_span_counts(rng):
    f = field_from_order(2)
    for _ in range(10):
        n = int(rng.integers(4, 9))
        rx = int(rng.integers(1, n - 1))
        rz = int(rng.integers(1, n - rx))
        code = random_css_pair(f, n, rx, rz, seed=rng)
        assert logical_span(code, "x").rows == code.k
        assert logical_span(code, "z").rows == code.k
