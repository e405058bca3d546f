"""Product-code builders and the worked example codes.

Every builder returns a validated code object carrying two extra
attributes:

* ``provenance`` -- the name of the defining construction rule, so that
  reports can say which formula produced each matrix;
* ``expected`` -- a dict with the exactly-known parameters (n, k, kappa)
  and, when constituent distances are available, distance *bounds*
  (never assertions) tagged with the bound that produced them.

Constituent distances for the annotations are computed exhaustively
when cheap, otherwise taken from the caller or omitted.
"""

from __future__ import annotations

import numpy as np

from .chain import ChainComplex, ProductComplex, dist_mul, tensor_product
from .css import (CssCode, SubsystemCode, css_new, logical_basis, subsystem_new,
                  xz_swapped)
from .distance import (INF, BudgetExceeded, ProductDescriptor, distance_bounds,
                       dz_exact)
from .gf import GF, field
from .matf import Mat, hstack, vstack

_ANNOTATE_BUDGET = 1 << 16  # factor-distance searches beyond this are skipped


# -- small named matrices ----------------------------------------------------

def circulant(f: GF, coeffs, n: int) -> Mat:
    """n x n circulant whose first row holds the polynomial coefficients."""
    row = [0] * n
    for i, c in enumerate(coeffs):
        row[i % n] = f.add(row[i % n], int(c))
    return Mat(f, [row[-i:] + row[:-i] for i in range(n)])


def repetition_check(f: GF, length: int, full: bool = False) -> Mat:
    """Parity checks of the length-n repetition code.

    The band form is (n-1) x n and full row rank; ``full=True`` gives
    the n x n circulant of 1 + x (rank n-1) used for closed loops.
    """
    if length < 2:
        raise ValueError("repetition code needs length >= 2")
    if full:
        return circulant(f, [1, f.neg(1)] if f.p != 2 else [1, 1], length)
    data = np.zeros((length - 1, length), dtype=np.int64)
    for i in range(length - 1):
        data[i, i] = 1
        data[i, i + 1] = f.neg(1)
    return Mat(f, data)


def steane_code(f: GF | None = None) -> CssCode:
    """The cyclic [[7,1,(3,3)]] code, generator polynomial 1+x^2+x^3+x^4."""
    f = f or field(2)
    if f.p != 2:
        raise ValueError("the cyclic [[7,1,3]] construction needs characteristic 2")
    h = circulant(f, [1, 0, 1, 1, 1], 7)
    code = css_new(h, h)
    code.provenance = "cyclic_seven_qudit"
    code.expected = {"n": 7, "k": 1, "d_x": 3, "d_z": 3}
    return code


def odd_base_code(f: GF) -> CssCode:
    """[[3,1,(2,2)]]_q for odd q: HX = (1,1,1), HZ = (t,t,1), 2t+1 = 0."""
    if f.p == 2:
        raise ValueError("construction needs odd characteristic")
    t = ((f.q - 1) // 2) % f.p
    code = css_new(Mat(f, [[1, 1, 1]]), Mat(f, [[t, t, 1]]))
    code.provenance = "odd_base_three_qudit"
    code.expected = {"n": 3, "k": 1, "d_x": 2, "d_z": 2}
    return code


def dbl_even_code(f: GF) -> CssCode:
    """[[3,1,(2,2)]]_q for q = 2^m with 3 | q-1: constacyclic HZ row
    (1, x^r, x^2r) built from a primitive element x, r = (q-1)/3."""
    if f.p != 2 or (f.q - 1) % 3:
        raise ValueError("construction needs q = 2^m with q - 1 divisible by 3")
    x = f.primitive_element()
    r = (f.q - 1) // 3
    hz = Mat(f, [[1, f.pow(x, r), f.pow(x, 2 * r)]])
    code = css_new(Mat(f, [[1, 1, 1]]), hz)
    code.provenance = "constacyclic_three_qudit"
    code.expected = {"n": 3, "k": 1, "d_x": 2, "d_z": 2}
    return code


# -- helpers ------------------------------------------------------------------

def _logicals_or_empty(code) -> tuple[Mat, Mat]:
    if code.k == 0:
        e = Mat.empty(code.field, 0, code.n)
        return e, e
    return logical_basis(code)


def _factor_distance(code, side: str):
    try:
        return dz_exact(code, side, budget=_ANNOTATE_BUDGET).value
    except BudgetExceeded:
        return None


def _product_expected(qa, qb, provenance: str, d_za=None, d_zb=None,
                      d_xa=None, d_xb=None) -> dict:
    exp = {"n": qa.n * qb.n, "k": qa.k * qb.k}
    d_za = d_za if d_za is not None else _factor_distance(qa, "z")
    d_zb = d_zb if d_zb is not None else _factor_distance(qb, "z")
    d_xa = d_xa if d_xa is not None else _factor_distance(qa, "x")
    d_xb = d_xb if d_xb is not None else _factor_distance(qb, "x")
    if d_za is not None and d_zb is not None:
        exp["d_z_upper"] = (dist_mul(d_za, d_zb), "factor_product")
    if d_xa is not None and d_xb is not None:
        exp["d_x_upper"] = (dist_mul(d_xa, d_xb), "factor_product")
    return exp


def _check_same_field(qa, qb) -> GF:
    if qa.field != qb.field:
        raise ValueError("constituent codes live over different fields")
    return qa.field


# -- the product constructions -------------------------------------------------

def subsystem_product(qa: CssCode, qb: CssCode, **dists) -> SubsystemCode:
    """Subsystem code whose gauge groups tensor each factor's stabilizer
    generators with identities on the other factor."""
    f = _check_same_field(qa, qb)
    gx = vstack([qa.hx.kron(Mat.identity(f, qb.n)),
                 Mat.identity(f, qa.n).kron(qb.hx)])
    gz = vstack([qa.hz.kron(Mat.identity(f, qb.n)),
                 Mat.identity(f, qa.n).kron(qb.hz)])
    code = subsystem_new(gx, gz)
    code.provenance = "subsystem_product_gauge"
    code.expected = _product_expected(qa, qb, code.provenance, **dists)
    return code


def stabilizer_product_matrices(qa: CssCode, qb: CssCode) -> tuple[Mat, Mat]:
    """Explicit stabilizer generators of the subsystem product: the
    stacked blocks H (x) H, H (x) L, L (x) H on each side."""
    f = _check_same_field(qa, qb)
    lxa, lza = _logicals_or_empty(qa)
    lxb, lzb = _logicals_or_empty(qb)
    hx = vstack([qa.hx.kron(qb.hx), qa.hx.kron(lxb), lxa.kron(qb.hx)])
    hz = vstack([qa.hz.kron(qb.hz), qa.hz.kron(lzb), lza.kron(qb.hz)])
    return hx, hz


def product_logicals(qa: CssCode, qb: CssCode) -> tuple[Mat, Mat]:
    """Canonical product logicals LX^A (x) LX^B, LZ^A (x) LZ^B."""
    lxa, lza = _logicals_or_empty(qa)
    lxb, lzb = _logicals_or_empty(qb)
    return lxa.kron(lxb), lza.kron(lzb)


def concatenated_stabilizer(qa: CssCode, qb: CssCode, **dists) -> CssCode:
    """Concatenation: n_B copies of the A code, logicals feeding the B
    code.  Parameters multiply exactly, distances included."""
    f = _check_same_field(qa, qb)
    lxa, lza = _logicals_or_empty(qa)
    hx = vstack([qa.hx.kron(Mat.identity(f, qb.n)), lxa.kron(qb.hx)])
    hz = vstack([qa.hz.kron(Mat.identity(f, qb.n)), lza.kron(qb.hz)])
    code = css_new(hx, hz)
    code.provenance = "concatenated_stabilizer"
    code.expected = _product_expected(qa, qb, code.provenance, **dists)
    if "d_z_upper" in code.expected:
        code.expected["d_z"] = code.expected.pop("d_z_upper")[0]
    if "d_x_upper" in code.expected:
        code.expected["d_x"] = code.expected.pop("d_x_upper")[0]
    return code


def xz_symmetric_product(qa: CssCode, cyclic_single: bool = False,
                         **dists) -> SubsystemCode:
    """Subsystem product of a code with its X-Z-swapped self.

    The diagonal vector sum_j e_j (x) e_j is a codeword on both sides,
    capping both distances at n_A.  ``cyclic_single`` asserts that the
    factor is a single-qudit-encoding (consta)cyclic code, enabling the
    shift-orbit lower bound in the annotations.
    """
    code = subsystem_product(qa, xz_swapped(qa), **dists)
    code.provenance = "xz_symmetric_product"
    code.expected["d_z_upper"] = _tighter_upper(code.expected.get("d_z_upper"), qa.n)
    code.expected["d_x_upper"] = _tighter_upper(code.expected.get("d_x_upper"), qa.n)
    if cyclic_single and qa.k == 1:
        d_xa = _factor_distance(qa, "x")
        d_za = _factor_distance(qa, "z")
        if d_xa is not None and d_za is not None:
            desc = ProductDescriptor(q=qa.field.q, n_a=qa.n, d_xa=d_xa, d_za=d_za,
                                     d_zb=d_xa, cyclic_single_a=True,
                                     xz_symmetric=True)
            lower, upper = distance_bounds(desc)
            code.expected["d_z_lower"] = lower
            code.expected["d_z_upper"] = upper
    return code


def _tighter_upper(current, cap):
    if current is None or cap < current[0]:
        return (cap, "diagonal_support")
    return current


def homological_product(delta_a: Mat, delta_b: Mat, **dists) -> CssCode:
    """css(D, D^T) for D = I (x) delta_B + delta_A (x) I, characteristic 2.

    Nilpotency of D follows from the factors' nilpotency since the
    cross terms coincide and cancel in characteristic 2.
    """
    if delta_a.field != delta_b.field:
        raise ValueError("nilpotent matrices live over different fields")
    f = delta_a.field
    if f.p != 2:
        raise ValueError("homological product requires characteristic 2")
    for name, d in (("delta_a", delta_a), ("delta_b", delta_b)):
        if d.rows != d.cols:
            raise ValueError(f"{name} must be square")
        if not (d @ d).is_zero():
            raise ValueError(f"{name} is not nilpotent (square != 0)")
    na, nb = delta_a.rows, delta_b.rows
    dc = Mat.identity(f, na).kron(delta_b) + delta_a.kron(Mat.identity(f, nb))
    code = css_new(dc, dc.T)
    code.provenance = "homological_product"
    qa = css_new(delta_a, delta_a.T)
    qb = css_new(delta_b, delta_b.T)
    code.expected = _product_expected(qa, qb, code.provenance, **dists)
    if "d_z_upper" in code.expected:
        code.expected["d_z_upper"] = (code.expected["d_z_upper"][0], "factor_product")
    return code


def nilpotent_from_css(code: CssCode) -> Mat:
    """Symmetric nilpotent matrix HX^T HZ (row-basis form preserves rank)."""
    hxb = code.hx.row_basis()
    hzb = code.hz.row_basis()
    delta = hxb.T @ hzb
    if not (delta @ delta).is_zero():
        raise ValueError("HZ @ HX^T != 0: cannot form a nilpotent matrix")
    return delta


def qhp(pa: Mat, pb: Mat) -> CssCode:
    """Hypergraph-product code of two check matrices.

    HX = (P_A (x) I | I (x) P_B^T), HZ = (I (x) P_B | -P_A^T (x) I); the
    same code as level 1 of K(P_A) x K(P_B^T) up to block ordering and
    row scaling.
    """
    if pa.field != pb.field:
        raise ValueError("check matrices live over different fields")
    f = pa.field
    ra, na = pa.shape
    rb, nb = pb.shape
    hx = hstack([pa.kron(Mat.identity(f, nb)), Mat.identity(f, ra).kron(pb.T)])
    hz = hstack([Mat.identity(f, na).kron(pb), -(pa.T.kron(Mat.identity(f, rb)))])
    code = css_new(hx, hz)
    code.provenance = "hypergraph_product"
    code.expected = {"n": na * nb + ra * rb, "k": _qhp_k(pa, pb)}
    return code


def _qhp_k(pa: Mat, pb: Mat) -> int:
    a = ChainComplex(pa.field, [pa])
    b = ChainComplex(pb.field, [pb.T])
    ranks_a, ranks_b = a.homology_ranks(), b.homology_ranks()
    return ranks_a[1] * ranks_b[0] + ranks_a[0] * ranks_b[1]


def qhp_complex(pa: Mat, pb: Mat) -> ProductComplex:
    """The chain-complex route to the same code: K(P_A) x K(P_B^T)."""
    return tensor_product(ChainComplex(pa.field, [pa]),
                          ChainComplex(pb.field, [pb.T]))


def toric_code(f: GF, length: int) -> CssCode:
    """[[2L^2, 2, L]]: hypergraph product of two closed repetition loops."""
    p = repetition_check(f, length, full=True)
    code = qhp(p, p)
    code.provenance = "hypergraph_product"
    code.expected.update({"n": 2 * length * length, "k": 2,
                          "d_z_upper": (length, "factor_product"),
                          "d_x_upper": (length, "factor_product")})
    return code


def subsystem_qhp(pa: Mat, pb: Mat, **dists) -> SubsystemCode:
    """Subsystem hypergraph product: gauge groups P_A (x) I and I (x) P_B;
    the derived stabilizers are P_A (x) Q_B and Q_A (x) P_B."""
    if pa.field != pb.field:
        raise ValueError("check matrices live over different fields")
    f = pa.field
    gx = pa.kron(Mat.identity(f, pb.cols))
    gz = Mat.identity(f, pa.cols).kron(pb)
    code = subsystem_new(gx, gz)
    code.provenance = "subsystem_hypergraph_product"
    ka = pa.cols - pa.rank()
    kb = pb.cols - pb.rank()
    code.expected = {"n": pa.cols * pb.cols, "k": ka * kb}
    d_a = dists.get("d_a", _classical_distance(pa))
    d_b = dists.get("d_b", _classical_distance(pb))
    if ka * kb > 0 and d_a is not None and d_b is not None:
        code.expected["d_x"] = d_a
        code.expected["d_z"] = d_b
    return code


def _classical_distance(p: Mat):
    """Minimum weight of the classical code with parity check matrix p."""
    wrapper = CssCode(p, Mat.empty(p.field, 0, p.cols), validate=False)
    if wrapper.k == 0:
        return INF
    try:
        return dz_exact(wrapper, "z", budget=_ANNOTATE_BUDGET).value
    except BudgetExceeded:
        return None


def multi_fold(p: Mat, a: int, b: int) -> ChainComplex:
    """Tensor power K(P)^a x K(P^T)^b (left-associated products).

    With P full row rank, the only nontrivial homology sits at level a,
    with rank kappa^(a+b) and distance bounded by delta^a.
    """
    if a < 0 or b < 0 or a + b < 1:
        raise ValueError("need a + b >= 1 nonnegative factors")
    parts = [ChainComplex(p.field, [p])] * a + [ChainComplex(p.field, [p.T])] * b
    out = parts[0]
    for nxt in parts[1:]:
        out = tensor_product(out, nxt)
    kappa = p.cols - p.rank()
    delta = _classical_distance(p)
    out.expected = {"level": a, "rank": kappa ** (a + b)}
    if delta is not None:
        out.expected["distance_upper"] = (dist_mul(delta, delta ** (a - 1)) if a else 1,
                                          "factor_product")
    out.provenance = "multi_fold_product"
    return out


def project_level(c: ProductComplex, j: int, i: int) -> SubsystemCode:
    """Subsystem code of the product level j projected onto the
    subspace with A-degree i; its Z-distance enters the projection
    lower bound on the level-j homological distance."""
    if not isinstance(c, ProductComplex):
        raise TypeError("projection needs a recorded tensor product")
    _, width = c.subspace_slice(j, i)  # raises if the subspace is absent
    if width == 0:
        raise ValueError(f"subspace with A-degree {i} at level {j} is empty")
    a, b = c.factors
    f = c.field
    gx = vstack([Mat.identity(f, a.dim(i)).kron(b.boundary(j - i)),
                 a.boundary(i).kron(Mat.identity(f, b.dim(j - i)))])
    gz = vstack([Mat.identity(f, a.dim(i)).kron(b.boundary(j - i + 1).T),
                 a.boundary(i + 1).T.kron(Mat.identity(f, b.dim(j - i)))])
    code = subsystem_new(gx, gz)
    code.provenance = "level_projection"
    code.expected = {"n": width}
    return code


def projection_lower_bound(c: ProductComplex, j: int, distance_fn) -> object:
    """min_i d_Z of the level-(j, i) projections; lower-bounds d_j."""
    values = []
    for i, _, width in c.layout[j]:
        if width == 0:
            continue
        values.append(distance_fn(project_level(c, j, i)))
    return min(values) if values else INF
