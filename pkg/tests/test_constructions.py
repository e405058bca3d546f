import math

import numpy as np
import pytest

from fqchain.chain import ChainComplex, dist_mul, tensor_product
from fqchain.css import css_from_complex, css_new, logical_basis, verify_css_pair
from fqchain.constructions import (circulant, concatenated_stabilizer,
                                   dbl_even_code, homological_product, multi_fold,
                                   nilpotent_from_css, odd_base_code, project_level,
                                   projection_lower_bound, qhp, qhp_complex,
                                   repetition_check, stabilizer_product_matrices,
                                   steane_code, subsystem_product, subsystem_qhp,
                                   toric_code, xz_symmetric_product)
from fqchain.distance import INF, dz_covering_set, dz_exact
from fqchain.experiments import random_css_pair
from fqchain.gf import field, field_from_order
from fqchain.matf import Mat, same_rowspace, vstack


def four_qudit_code(f):
    # [[4,1,(2,2)]]: single X check of full weight, two weight-2 Z checks
    return css_new(Mat(f, [[1, 1, 1, 1]]),
                   Mat(f, [[1, 1, 0, 0], [0, 0, 1, 1]]))


def test_circulant_and_repetition(f2):
    c = circulant(f2, [1, 1], 4)
    assert c.data.tolist() == [[1, 1, 0, 0], [0, 1, 1, 0],
                               [0, 0, 1, 1], [1, 0, 0, 1]]
    band = repetition_check(f2, 4)
    assert band.shape == (3, 4) and band.rank() == 3
    assert circulant(f2, [1, 1], 4).rank() == 3


def test_named_base_codes(f3, f4):
    assert steane_code().params() == (7, 1)
    assert odd_base_code(f3).params() == (3, 1)
    assert odd_base_code(field_from_order(9)).params() == (3, 1)
    q4 = dbl_even_code(f4)
    assert q4.params() == (3, 1)
    with pytest.raises(ValueError):
        odd_base_code(field(2))
    with pytest.raises(ValueError):
        dbl_even_code(field(2, 3))  # q - 1 = 7 not divisible by 3


def test_subsystem_product_params_and_rowspaces(f2):
    st = steane_code()
    prod = subsystem_product(st, st)
    assert prod.params()[:2] == (49, 1)
    hx, hz = stabilizer_product_matrices(st, st)
    assert same_rowspace(prod.hx, hx) and same_rowspace(prod.hz, hz)
    assert prod.provenance == "subsystem_product_gauge"
    assert prod.expected["n"] == 49 and prod.expected["k"] == 1
    assert prod.expected["d_z_upper"] == (9, "factor_product")


def test_subsystem_product_zero_k(f2):
    zero = css_new(Mat.identity(f2, 2), Mat.empty(f2, 0, 2))
    prod = subsystem_product(zero, steane_code())
    assert prod.k == 0


def test_concatenated_four_qudit_square(f2):
    base = four_qudit_code(f2)
    assert dz_exact(base, "z").value == 2 and dz_exact(base, "x").value == 2
    concat = concatenated_stabilizer(base, base)
    assert concat.params() == (16, 1)
    assert concat.expected["d_z"] == 4
    assert dz_exact(concat, "z").value == 4
    assert dz_exact(concat, "x").value == 4


def test_concatenated_steane_parameters(f2):
    st = steane_code()
    concat = concatenated_stabilizer(st, st)
    assert concat.params() == (49, 1)
    assert concat.expected["d_z"] == 9 and concat.expected["d_x"] == 9


def test_concatenated_zero_k(f2):
    zero = css_new(Mat.identity(f2, 2), Mat.empty(f2, 0, 2))
    concat = concatenated_stabilizer(steane_code(), zero)
    assert concat.k == 0


def test_gauge_fixing_inclusion_chain(rng):
    # stabilizer rows sit inside the concatenated rows, which sit inside
    # the gauge rows, on the Z side (and mirrored on X)
    for q in (2, 3):
        f = field_from_order(q)
        for _ in range(6):
            na = int(rng.integers(3, 5))
            nb = int(rng.integers(3, 5))
            qa = random_css_pair(f, na, 1, int(rng.integers(1, na - 1)), seed=rng)
            qb = random_css_pair(f, nb, 1, int(rng.integers(1, nb - 1)), seed=rng)
            prod = subsystem_product(qa, qb)
            concat = concatenated_stabilizer(qa, qb)
            hx_s, hz_s = stabilizer_product_matrices(qa, qb)
            for row in hz_s.data:
                assert concat.hz.rowspace_contains(row)
            for row in concat.hz.data:
                assert prod.gz.rowspace_contains(row)
            for row in hx_s.data:
                assert concat.hx.rowspace_contains(row)
            for row in concat.hx.data:
                assert prod.gx.rowspace_contains(row)


def test_xz_symmetric_product_examples(f3, f4):
    prod3 = xz_symmetric_product(odd_base_code(f3), cyclic_single=True)
    assert dz_exact(prod3, "z").value == 3
    assert dz_exact(prod3, "x").value == 3
    assert prod3.expected["d_z_upper"][0] == 3
    prod4 = xz_symmetric_product(dbl_even_code(f4), cyclic_single=True)
    assert dz_exact(prod4, "z").value == 3
    assert prod4.expected["d_z_lower"][0] == 3


def test_xz_symmetric_steane_square(f2):
    prod = xz_symmetric_product(steane_code(), cyclic_single=True)
    assert prod.expected["d_z_lower"] == (7, "cyclic_shift")
    assert prod.expected["d_z_upper"] == (7, "diagonal_support")
    cover = dz_covering_set(prod, "z", trials=400, seed=11)
    assert cover.value == 7


def test_symmetric_subsystem_vs_gauge_fixed_distance(f3, rng):
    # the gauge-fixed css(HX, GZ) shares kernel and degeneracy with the
    # subsystem code, so the searched distances agree
    prod = xz_symmetric_product(odd_base_code(f3))
    fixed = css_new(prod.hx, prod.gz.row_basis(), validate=False)
    assert dz_exact(prod, "z").value == dz_exact(fixed, "z").value


def test_homological_product_steane(f2):
    delta = nilpotent_from_css(steane_code())
    assert delta == delta.T
    assert (delta @ delta).is_zero() and delta.rank() == 3
    code = homological_product(delta, delta)
    assert code.params() == (49, 1)
    assert code.expected["d_z_upper"][0] == 9


def test_homological_product_validation(f2, f3):
    good = nilpotent_from_css(steane_code())
    with pytest.raises(ValueError):
        homological_product(Mat.identity(f2, 3), good)
    with pytest.raises(ValueError):
        homological_product(Mat.zeros(f3, 2, 2), Mat.zeros(f3, 2, 2))
    with pytest.raises(ValueError):
        homological_product(Mat.zeros(f2, 2, 3), good)


def test_homological_product_zero_factor_degenerates(f2):
    delta_b = nilpotent_from_css(steane_code())
    zero = Mat.zeros(f2, 2, 2)
    code = homological_product(zero, delta_b)
    expect = Mat.identity(f2, 2).kron(delta_b)
    assert code.hx == expect
    assert code.k == 2 * 1  # two independent copies of the B code


def test_homological_nilpotency_always(f2, rng):
    for _ in range(6):
        da = nilpotent_from_css(steane_code())
        db = nilpotent_from_css(four_qudit_code(f2))
        dc = Mat.identity(f2, da.rows).kron(db) + da.kron(Mat.identity(f2, db.rows))
        assert (dc @ dc).is_zero()


def test_qhp_toric_recovery(f2):
    for length in (2, 3, 4):
        code = toric_code(f2, length)
        assert code.params() == (2 * length * length, 2)
    assert dz_exact(toric_code(f2, 2), "z").value == 2
    assert dz_exact(toric_code(f2, 3), "x").value == 3


def test_qhp_full_row_rank_length(f3, rng):
    pa = repetition_check(f3, 4)  # 3 x 4 full row rank
    pb = repetition_check(f3, 3)
    code = qhp(pa, pb)
    assert code.n == 4 * 3 + 3 * 2
    assert code.expected["n"] == code.n


def test_qhp_matches_complex_route(f2, f3, rng):
    for f in (f2, f3):
        pa = Mat(f, rng.integers(0, f.q, size=(2, 3)))
        pb = Mat(f, rng.integers(0, f.q, size=(2, 4)))
        code = qhp(pa, pb)
        via_complex = css_from_complex(qhp_complex(pa, pb), 1)
        assert same_rowspace(code.hx, via_complex.hx)
        assert same_rowspace(code.hz, via_complex.hz)
        assert code.k == via_complex.k


def test_qhp_random_distance_formula(f3, rng):
    # with a two-space factor, the level-1 distance is the smaller of
    # the two cross products of factor distances
    hits = 0
    while hits < 6:
        pa = Mat(f3, rng.integers(0, 3, size=(2, 3)))
        pb = Mat(f3, rng.integers(0, 3, size=(2, 3)))
        code = qhp(pa, pb)
        if code.k < 1 or code.n > 14:
            continue
        prof_a = [dz_exact(css_from_complex(ChainComplex(f3, [pa]), j), "z").value
                  for j in range(2)]
        prof_b = [dz_exact(css_from_complex(ChainComplex(f3, [pb.T]), j), "z").value
                  for j in range(2)]
        rhs = min(dist_mul(prof_a[1], prof_b[0]), dist_mul(prof_a[0], prof_b[1]))
        assert dz_exact(code, "z").value == rhs
        hits += 1


def test_subsystem_qhp_bacon_shor(f2):
    p = repetition_check(f2, 3)
    code = subsystem_qhp(p, p)
    assert code.params() == (9, 1, 4)
    assert code.expected == {"n": 9, "k": 1, "d_x": 3, "d_z": 3}
    assert dz_exact(code, "z").value == 3
    assert dz_exact(code, "x").value == 3
    assert verify_css_pair(code)


def test_subsystem_qhp_asymmetric(f2):
    p5 = repetition_check(f2, 5)
    p3 = repetition_check(f2, 3)
    code = subsystem_qhp(p5, p3)
    assert code.params()[:2] == (15, 1)
    assert dz_exact(code, "x").value == 5
    assert dz_exact(code, "z").value == 3


def test_subsystem_qhp_zero_k(f2):
    full = Mat.identity(f2, 3)  # kernel-free classical code
    code = subsystem_qhp(full, repetition_check(f2, 3))
    assert code.k == 0


def test_multi_fold_toric_equivalence(f2):
    p = circulant(f2, [1, 1], 3)
    folded = multi_fold(p, 1, 1)
    direct = qhp_complex(p, p)
    assert folded.dims == direct.dims
    assert folded.homology_ranks() == direct.homology_ranks()
    code_a = css_from_complex(folded, 1)
    code_b = css_from_complex(direct, 1)
    assert same_rowspace(code_a.hx, code_b.hx)


def test_multi_fold_dimension_formula(f2):
    p = repetition_check(f2, 3)  # r=2, c=3
    r, c = p.shape
    for a, b in ((2, 0), (1, 1), (2, 1)):
        folded = multi_fold(p, a, b)
        expect = sum(c ** (2 * i) * r ** (a + b - 2 * i)
                     * math.comb(a, i) * math.comb(b, i)
                     for i in range(a + 1))
        assert folded.dim(a) == expect
        ranks = folded.homology_ranks()
        assert ranks[a] == 1
        assert all(v == 0 for j, v in enumerate(ranks) if j != a)


def test_multi_fold_square_distance(f2):
    folded = multi_fold(repetition_check(f2, 3), 2, 0)
    assert folded.expected["rank"] == 1
    assert folded.expected["distance_upper"][0] == 9
    code = css_from_complex(folded, 2)
    assert dz_exact(code, "z").value == 9


def test_multi_fold_argument_validation(f2):
    with pytest.raises(ValueError):
        multi_fold(repetition_check(f2, 3), 0, 0)


def test_project_level_structure_matches_subsystem_qhp(f2):
    # projecting the two-loop product onto its top-left level-1 block
    # reproduces the subsystem hypergraph-product gauge structure
    p = circulant(f2, [1, 1], 2)
    prod = tensor_product(ChainComplex(f2, [p]), ChainComplex(f2, [p]))
    proj = project_level(prod, 1, 1)
    ref = subsystem_qhp(p, p.T)
    assert same_rowspace(proj.gx.row_basis(), ref.gx.row_basis())
    assert same_rowspace(proj.gz.row_basis(), ref.gz.row_basis())


def test_project_level_distance_identities(f2, f3, rng):
    # with a two-space B factor every projection's distance is the plain
    # product of the factor distances
    for f in (f2, f3):
        for _ in range(4):
            a1 = Mat(f, rng.integers(0, f.q, size=(2, 4)))
            kb = a1.kernel_basis()
            a2 = kb.T @ Mat(f, rng.integers(0, f.q, size=(kb.rows, 3)))
            a = ChainComplex(f, [a1, a2])
            b = ChainComplex(f, [Mat(f, rng.integers(0, f.q, size=(2, 3)))])
            prod = tensor_product(a, b)
            da = [dz_exact(css_from_complex(a, j), "z").value for j in range(3)]
            db = [dz_exact(css_from_complex(b, j), "z").value for j in range(2)]
            for j in range(prod.ell + 1):
                for i, _, width in prod.layout[j]:
                    if width == 0:
                        continue
                    proj = project_level(prod, j, i)
                    val = dz_exact(proj, "z").value
                    assert val == dist_mul(da[i], db[j - i])


def test_projection_lower_bound_toric(f2):
    p = circulant(f2, [1, 1], 3)
    prod = qhp_complex(p, p)
    bound = projection_lower_bound(prod, 1, lambda c: dz_exact(c, "z").value)
    actual = dz_exact(css_from_complex(prod, 1), "z").value
    assert bound <= actual


def test_project_level_errors(f2):
    p = circulant(f2, [1, 1], 3)
    prod = qhp_complex(p, p)
    with pytest.raises(ValueError):
        project_level(prod, 1, 2)
    with pytest.raises(TypeError):
        project_level(ChainComplex(f2, [p]), 1, 1)


def test_builders_validate(f2, f3):
    with pytest.raises(ValueError):
        subsystem_product(steane_code(), odd_base_code(f3))
    with pytest.raises(ValueError):
        qhp(Mat.identity(f2, 2), Mat.identity(f3, 2))
