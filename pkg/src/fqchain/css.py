"""F-linear CSS stabilizer and subsystem codes.

A stabilizer code is a pair (HX, HZ) with HX @ HZ.T = 0; a subsystem
code is defined by gauge generators (GX, GZ) with no orthogonality
requirement, from which the stabilizer generators are derived as the
self-orthogonal core.  X and Z play symmetric roles throughout: every
derivation is written once and dispatched on a side parameter.

Logical bases are canonical: class representatives are selected by
deterministic elimination and normalized so that LX @ LZ.T = I_k.
"""

from __future__ import annotations

import numpy as np

from .chain import ChainComplex
from .gf import GF
from .matf import Mat, RowAccumulator, rref_data, same_rowspace, vstack


def _check_side(side: str) -> str:
    s = side.lower()
    if s not in ("x", "z"):
        raise ValueError(f"side must be 'x' or 'z', got {side!r}")
    return s


class CssCode:
    """Stabilizer code css(HX, HZ) with HX @ HZ.T = 0."""

    is_subsystem = False

    def __init__(self, hx: Mat, hz: Mat, validate: bool = True):
        if hx.field != hz.field:
            raise ValueError("field mismatch between HX and HZ")
        if hx.cols != hz.cols:
            raise ValueError(f"HX has {hx.cols} columns but HZ has {hz.cols}")
        if validate and not (hx @ hz.T).is_zero():
            raise ValueError("HX @ HZ.T != 0: not a CSS stabilizer pair")
        self.field = hx.field
        self.hx = hx
        self.hz = hz
        self.n = hx.cols
        self.k = self.n - hx.rank() - hz.rank()
        if self.k < 0:
            raise ValueError("rank accounting failed: negative k")
        self.kappa = 0

    # gauge generators coincide with the stabilizer generators
    @property
    def gx(self) -> Mat:
        return self.hx

    @property
    def gz(self) -> Mat:
        return self.hz

    def params(self) -> tuple[int, int]:
        return (self.n, self.k)

    def __repr__(self) -> str:
        return f"CssCode(n={self.n}, k={self.k}, q={self.field.q})"


class SubsystemCode:
    """Subsystem code with CSS gauge generators (GX, GZ).

    The stabilizer generators are derived with the left-kernel method:
    HX spans {v in rowspace(GX) : v @ GZ.T = 0}, i.e. HX = a @ GX for
    all solutions of a @ (GX @ GZ.T) = 0, and symmetrically for HZ.
    """

    is_subsystem = True

    def __init__(self, gx: Mat, gz: Mat):
        if gx.field != gz.field:
            raise ValueError("field mismatch between GX and GZ")
        if gx.cols != gz.cols:
            raise ValueError(f"GX has {gx.cols} columns but GZ has {gz.cols}")
        self.field = gx.field
        self.gx = gx
        self.gz = gz
        self.n = gx.cols
        self.hx = _stabilizer_core(gx, gz)
        self.hz = _stabilizer_core(gz, gx)
        rgx, rhx = gx.rank(), self.hx.rank()
        rgz, rhz = gz.rank(), self.hz.rank()
        if rgx - rhx != rgz - rhz:
            raise RuntimeError("gauge rank accounting failed")
        self.kappa = rgx - rhx
        self.k = self.n - rhx - rgz
        if self.k < 0:
            raise RuntimeError("rank accounting failed: negative k")

    def params(self) -> tuple[int, int, int]:
        return (self.n, self.k, self.kappa)

    def __repr__(self) -> str:
        return (f"SubsystemCode(n={self.n}, k={self.k}, kappa={self.kappa}, "
                f"q={self.field.q})")


def _stabilizer_core(g_this: Mat, g_other: Mat) -> Mat:
    """Canonical basis of {v in rowspace(g_this) : v @ g_other.T = 0}."""
    m = g_this @ g_other.T
    alpha = m.T.kernel_basis()  # rows a with a @ m = 0
    return (alpha @ g_this).row_basis()


def css_new(hx: Mat, hz: Mat) -> CssCode:
    return CssCode(hx, hz)


def subsystem_new(gx: Mat, gz: Mat) -> SubsystemCode:
    return SubsystemCode(gx, gz)


def css_from_complex(c: ChainComplex, j: int) -> CssCode:
    """css(A_j, A_{j+1}^T); its k equals the level-j homology rank."""
    c.check_level(j)
    code = CssCode(c.boundary(j), c.boundary(j + 1).T, validate=False)
    return code


def stabilizer_halves(code) -> tuple[Mat, Mat]:
    return code.hx, code.hz


def check_matrix(code, side: str) -> Mat:
    """The matrix whose kernel carries the side's codewords: HX for Z."""
    return code.hx if _check_side(side) == "z" else code.hz


def degeneracy_matrix(code, side: str) -> Mat:
    """Generators of the equivalence (degeneracy) space for the side."""
    return code.gz if _check_side(side) == "z" else code.gx


def logical_span(code, side: str) -> Mat:
    """k bare logical representatives for the side, unnormalized.

    Side X: rows of ker(GZ) independent modulo rowspace(GX); side Z the
    mirror image.  Deterministic given the RREF pivoting rule.
    """
    side = _check_side(side)
    ker_of = code.gz if side == "x" else code.gx
    mod_out = code.gx if side == "x" else code.gz
    k_basis = ker_of.kernel_basis()
    acc = RowAccumulator(code.field, code.n, seed_rows=mod_out.data)
    picked = [row for row in k_basis.data if acc.add(row)]
    got = len(picked)
    if got != code.k:
        raise RuntimeError(f"expected {code.k} logical classes, found {got}")
    return Mat(code.field, np.array(picked, dtype=np.int64), rows=got, cols=code.n)


def logical_basis(code) -> tuple[Mat, Mat]:
    """(LX, LZ) bare logical generator matrices with LX @ LZ.T = I_k."""
    if code.k < 1:
        raise ValueError("code has no logical qudits")
    lx = logical_span(code, "x")
    lz = logical_span(code, "z")
    pairing = lx @ lz.T
    inv = _invert(pairing)
    if inv is None:
        raise RuntimeError("logical pairing matrix is singular; "
                           "this indicates a bug in the class selection")
    lx = inv @ lx
    return lx, lz


def _invert(m: Mat) -> Mat | None:
    if m.rows != m.cols:
        return None
    aug = np.concatenate([m.data, np.eye(m.rows, dtype=np.int64)], axis=1)
    r, piv = rref_data(m.field, aug)
    if list(piv[: m.rows]) != list(range(m.rows)) or len(piv) < m.rows:
        return None
    return Mat(m.field, r[:, m.rows:].copy())


def code_params(code):
    """(n, k) for stabilizer codes, (n, k, kappa) for subsystem codes."""
    return code.params()


def xz_swapped(code: CssCode) -> CssCode:
    """The code with X and Z generator matrices interchanged."""
    return CssCode(code.hz, code.hx, validate=False)


def z_shortened_code(code, keep) -> CssCode:
    """X generators punctured and Z generators shortened to `keep`.

    The Z-distance of the original code never exceeds that of the
    restricted code (when the latter still encodes something).
    """
    hx = check_matrix(code, "z").puncture(keep)
    dz = degeneracy_matrix(code, "z").shorten(keep)
    return CssCode(hx, dz, validate=True)


def verify_css_pair(code) -> bool:
    """Re-assert the structural invariants of a constructed code."""
    if not (code.hx @ code.hz.T).is_zero():
        return False
    if code.is_subsystem:
        if not (code.hx @ code.gz.T).is_zero() or not (code.hz @ code.gx.T).is_zero():
            return False
        for row in code.hx.data:
            if not code.gx.rowspace_contains(row):
                return False
        for row in code.hz.data:
            if not code.gz.rowspace_contains(row):
                return False
        if code.gx.rank() != code.hx.rank() + code.kappa:
            return False
        if code.gz.rank() != code.hz.rank() + code.kappa:
            return False
    return code.k == code.n - code.hx.rank() - code.gz.rank()
