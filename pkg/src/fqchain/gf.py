"""Arithmetic in the finite field F_q = GF(p^m).

Field elements are plain Python ints in ``0..q-1``.  The int packs the
polynomial-basis coefficient vector (c_0, c_1, ..., c_{m-1}) in base p,
i.e. ``a = sum(c_i * p**i)``; for prime fields (m = 1) this is just the
residue mod p.  A :class:`GF` instance carries the modulus and the
precomputed operation tables, and every operation takes elements of one
field only.

The modulus for each supported extension field is fixed (Conway
polynomials), so element-level values are stable across runs.  Fields
outside the built-in table can be constructed with an explicit modulus
or with ``find_modulus=True``.
"""

from __future__ import annotations

import functools
from typing import Iterable, Sequence

import numpy as np

#: Moduli for the supported extension fields, as low-to-high coefficient
#: tuples over GF(p) (monic, degree m).  Conway polynomials:
#:   GF(4):  x^2 + x + 1
#:   GF(8):  x^3 + x + 1
#:   GF(9):  x^2 + 2x + 2
_MODULUS_TABLE: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (2, 2, 1),
}

#: Prime-power orders used throughout the numerical experiments.
SUPPORTED_ORDERS = (2, 3, 4, 5, 7, 8, 9, 11)

_TABLE_LIMIT = 1 << 12  # largest q for which dense op tables are built


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_trim(c: tuple[int, ...]) -> tuple[int, ...]:
    n = len(c)
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return c[:n]


def _poly_mulmod(a, b, modulus, p):
    """Product of coefficient tuples a*b reduced mod (modulus, p)."""
    m = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce degree >= m using x^m = -(modulus minus leading term)
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for i in range(m):
                prod[d - m + i] = (prod[d - m + i] - c * modulus[i]) % p
    out = prod[:m] + [0] * (m - len(prod))
    return tuple(out[:m])


def _poly_divmod(num, den, p):
    """Polynomial division over GF(p); returns (quotient, remainder)."""
    num = list(_poly_trim(tuple(num)))
    den = _poly_trim(tuple(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(den[-1], p - 2, p)
    quot = [0] * max(len(num) - len(den) + 1, 0)
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        factor = num[-1] * inv_lead % p
        quot[shift] = factor
        for i, d in enumerate(den):
            num[shift + i] = (num[shift + i] - factor * d) % p
        num = list(_poly_trim(tuple(num)))
    return tuple(quot), _poly_trim(tuple(num))


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Desk-scale irreducibility: root scan plus trial division.

    A degree-m polynomial with no roots is irreducible for m <= 3; beyond
    that every monic polynomial of degree <= m//2 is tried as a divisor.
    """
    mod = _poly_trim(tuple(x % p for x in modulus))
    m = len(mod) - 1
    if m < 1:
        return False
    for r in range(p):
        val = 0
        for c in reversed(mod):
            val = (val * r + c) % p
        if val == 0:
            return False
    if m <= 3:
        return True
    for deg in range(2, m // 2 + 1):
        for idx in range(p**deg):
            digits, t = [], idx
            for _ in range(deg):
                digits.append(t % p)
                t //= p
            cand = tuple(digits) + (1,)
            _, rem = _poly_divmod(mod, cand, p)
            if not rem:
                return False
    return True


def _find_modulus(p: int, m: int) -> tuple[int, ...]:
    """First irreducible monic degree-m polynomial in lexicographic order."""
    for idx in range(p**m):
        digits, t = [], idx
        for _ in range(m):
            digits.append(t % p)
            t //= p
        cand = tuple(digits) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise RuntimeError(f"no irreducible polynomial found for GF({p}^{m})")


class GF:
    """The finite field GF(p^m) with dense operation tables.

    Instances are immutable and safe to share between workers.  Use
    :func:`field` to get the cached instance for a given (p, m).
    """

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None,
                 find_modulus: bool = False):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        self.p = p
        self.m = m
        self.q = p**m
        if self.q > _TABLE_LIMIT:
            raise ValueError(f"field order {self.q} beyond desk-scale limit {_TABLE_LIMIT}")
        if modulus is not None:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree m")
            if m > 1 and not _is_irreducible(modulus, p):
                raise ValueError(f"modulus {modulus} is reducible over GF({p})")
            self.modulus = modulus
        elif m == 1:
            self.modulus = (0, 1)  # arithmetic mod p; modulus immaterial
        elif (p, m) in _MODULUS_TABLE:
            self.modulus = _MODULUS_TABLE[(p, m)]
        elif find_modulus:
            self.modulus = _find_modulus(p, m)
        else:
            raise ValueError(
                f"no fixed modulus for GF({p}^{m}); pass modulus=... or find_modulus=True")
        self._build_tables()

    # -- construction of operation tables ---------------------------------

    def _build_tables(self) -> None:
        p, m, q = self.p, self.m, self.q
        coeffs = [self.coeffs(a) for a in range(q)]
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            ca = coeffs[a]
            for b in range(a, q):
                cb = coeffs[b]
                s = tuple((x + y) % p for x, y in zip(ca, cb))
                add[a, b] = add[b, a] = self.from_coeffs(s)
                pr = _poly_mulmod(ca, cb, self.modulus, p)
                mul[a, b] = mul[b, a] = self.from_coeffs(pr)
        neg = np.zeros(q, dtype=np.int64)
        for a in range(q):
            neg[a] = self.from_coeffs(tuple((-x) % p for x in coeffs[a]))
        sub = add[:, neg]
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            # a^(q-2) = a^{-1}
            acc, base, e = 1, a, q - 2
            while e:
                if e & 1:
                    acc = int(mul[acc, base])
                base = int(mul[base, base])
                e >>= 1
            inv[a] = acc
        self.add_table = add
        self.sub_table = sub
        self.mul_table = mul
        self.neg_table = neg
        self.inv_table = inv
        # digit_table[a] = coefficient vector of a; lift_table[a] = the m x m
        # matrix over GF(p) of multiplication by a in the polynomial basis,
        # used to reduce F_q matrix products to integer products mod p.
        self.digit_table = np.array([coeffs[a] for a in range(q)], dtype=np.int64)
        lift = np.zeros((q, m, m), dtype=np.int64)
        if m == 1:
            lift[:, 0, 0] = np.arange(q)
        else:
            x = p  # the polynomial-basis generator
            for a in range(q):
                col = a  # a * x^t for t = 0, 1, ...
                for t in range(m):
                    lift[a, :, t] = self.digit_table[col]
                    col = int(mul[col, x])
        self.lift_table = lift

    # -- element <-> coefficient vector -----------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Polynomial-basis coefficient vector (c_0, ..., c_{m-1}) of a."""
        self._check(a)
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coeffs(self, cs: Iterable[int]) -> int:
        val, mult = 0, 1
        for c in cs:
            val += (int(c) % self.p) * mult
            mult *= self.p
        return val

    def _check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element of GF({self.q})")
        return a

    # -- arithmetic --------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[self._check(a), self._check(b)])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_table[self._check(a), self._check(b)])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[self._check(a), self._check(b)])

    def div(self, a: int, b: int) -> int:
        self._check(a), self._check(b)
        if b == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.q})")
        return int(self.mul_table[a, self.inv_table[b]])

    def neg(self, a: int) -> int:
        return int(self.neg_table[self._check(a)])

    def inv(self, a: int) -> int:
        return self.div(1, a)

    def pow(self, a: int, e: int) -> int:
        self._check(a)
        if e < 0:
            a, e = self.inv(a), -e
        acc = 1
        while e:
            if e & 1:
                acc = int(self.mul_table[acc, a])
            a = int(self.mul_table[a, a])
            e >>= 1
        return acc

    def arith(self, a: int, b: int, kind: str) -> int:
        """Dispatch one of {add, sub, mul, div}."""
        try:
            op = {"add": self.add, "sub": self.sub, "mul": self.mul, "div": self.div}[kind]
        except KeyError:
            raise ValueError(f"unknown operation {kind!r}") from None
        return op(a, b)

    def trace(self, a: int) -> int:
        """Field trace a + a^p + ... + a^(p^(m-1)), an element of GF(p)."""
        self._check(a)
        acc, term = 0, a
        for _ in range(self.m):
            acc = int(self.add_table[acc, term])
            term = self.pow(term, self.p)
        return acc

    def element_order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        self._check(a)
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        acc, e = a, 1
        while acc != 1:
            acc = int(self.mul_table[acc, a])
            e += 1
        return e

    def primitive_element(self) -> int:
        """Smallest element (in int order) of multiplicative order q-1."""
        for a in range(1, self.q):
            if self.element_order(a) == self.q - 1:
                return a
        raise RuntimeError("unreachable: every finite field has a primitive element")

    # -- misc --------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, GF)
                and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus))

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p})" if self.m == 1 else f"GF({self.p}^{self.m})"

    @property
    def tag(self) -> str:
        """Text form used in file headers: plain q for prime, else p^m."""
        return str(self.p) if self.m == 1 else f"{self.p}^{self.m}"


@functools.lru_cache(maxsize=None)
def field(p: int, m: int = 1) -> GF:
    """Cached GF(p^m) with the fixed modulus table."""
    return GF(p, m)


def field_from_order(q: int) -> GF:
    """GF(q) for a prime-power q (factors q and uses the fixed modulus)."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
        if p * p > q:
            p = q
            break
    m, t = 0, q
    while t > 1:
        if t % p:
            raise ValueError(f"{q} is not a prime power")
        t //= p
        m += 1
    return field(p, m)


def parse_field_tag(tok: str) -> GF:
    """Parse 'p^m' or a plain prime-power integer."""
    tok = tok.strip()
    if "^" in tok:
        ps, ms = tok.split("^", 1)
        return field(int(ps), int(ms))
    return field_from_order(int(tok))
