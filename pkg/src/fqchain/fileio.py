"""Text formats for matrices, complexes, and codes, plus JSON helpers.

Matrix format: a header line ``q rows cols`` followed by `rows` lines of
space-separated entries.  The field is written as plain ``q`` for prime
fields and ``p^m`` otherwise; extension-field entries are the integers
0..q-1 that pack the polynomial-basis coefficients in base p.

Complex format: header ``q l``, then l matrix blocks in the matrix
format (headers repeated, fields must agree).

Code format: a tag line ``css`` or ``subsystem``, then the X and Z
matrix blocks.  Index sets in files and on the command line are
1-based; the library API is 0-based.
"""

from __future__ import annotations

import hashlib
import io
import json
import math
from fractions import Fraction
from typing import Sequence, TextIO

from .chain import ChainComplex
from .css import CssCode, SubsystemCode
from .distance import DistanceResult
from .gf import GF, parse_field_tag
from .matf import Mat

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


class ParseError(ValueError):
    """Malformed matrix/complex/code text."""


def _open(target, mode: str):
    if hasattr(target, "read") or hasattr(target, "write"):
        return target, False
    return open(target, mode), True


def _require_tokens(line: str | None, count: int, what: str) -> list[str]:
    if line is None:
        raise ParseError(f"unexpected end of file while reading {what}")
    toks = line.split()
    if len(toks) != count:
        raise ParseError(f"expected {count} tokens for {what}, got {line!r}")
    return toks


def _next_content_line(handle: TextIO) -> str | None:
    for line in handle:
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            return stripped
    return None


def write_matrix(target, mat: Mat) -> None:
    handle, close = _open(target, "w")
    try:
        handle.write(f"{mat.field.tag} {mat.rows} {mat.cols}\n")
        if mat.rows and mat.cols:
            for row in mat.data:
                handle.write(" ".join(str(int(x)) for x in row) + "\n")
    finally:
        if close:
            handle.close()


def read_matrix(source, field: GF | None = None) -> Mat:
    handle, close = _open(source, "r")
    try:
        toks = _require_tokens(_next_content_line(handle), 3, "matrix header")
        try:
            f = parse_field_tag(toks[0])
            rows, cols = int(toks[1]), int(toks[2])
        except ValueError as exc:
            raise ParseError(f"bad matrix header: {exc}") from exc
        if field is not None and f != field:
            raise ParseError(f"matrix field {f!r} does not match expected {field!r}")
        if rows < 0 or cols < 0:
            raise ParseError("negative matrix dimensions")
        data = []
        if rows and cols:
            for i in range(rows):
                row_toks = _require_tokens(_next_content_line(handle), cols,
                                           f"matrix row {i + 1}")
                try:
                    data.append([int(t) for t in row_toks])
                except ValueError as exc:
                    raise ParseError(f"non-integer entry in row {i + 1}") from exc
        try:
            return Mat(f, data, rows=rows, cols=cols)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    finally:
        if close:
            handle.close()


def write_complex(target, cx: ChainComplex) -> None:
    handle, close = _open(target, "w")
    try:
        handle.write(f"{cx.field.tag} {cx.ell}\n")
        for a in cx.boundaries:
            write_matrix(handle, a)
    finally:
        if close:
            handle.close()


def read_complex(source) -> ChainComplex:
    handle, close = _open(source, "r")
    try:
        toks = _require_tokens(_next_content_line(handle), 2, "complex header")
        try:
            f = parse_field_tag(toks[0])
            ell = int(toks[1])
        except ValueError as exc:
            raise ParseError(f"bad complex header: {exc}") from exc
        if ell < 1:
            raise ParseError("a complex needs at least one boundary matrix")
        mats = [read_matrix(handle, field=f) for _ in range(ell)]
        try:
            return ChainComplex(f, mats)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    finally:
        if close:
            handle.close()


def write_code(target, code) -> None:
    handle, close = _open(target, "w")
    try:
        if code.is_subsystem:
            handle.write("subsystem\n")
            write_matrix(handle, code.gx)
            write_matrix(handle, code.gz)
        else:
            handle.write("css\n")
            write_matrix(handle, code.hx)
            write_matrix(handle, code.hz)
    finally:
        if close:
            handle.close()


def read_code(source):
    handle, close = _open(source, "r")
    try:
        tag = _next_content_line(handle)
        if tag not in ("css", "subsystem"):
            raise ParseError(f"expected a 'css' or 'subsystem' tag line, got {tag!r}")
        mx = read_matrix(handle)
        mz = read_matrix(handle, field=mx.field)
        try:
            if tag == "css":
                return CssCode(mx, mz)
            return SubsystemCode(mx, mz)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    finally:
        if close:
            handle.close()


def loads_matrix(text: str) -> Mat:
    return read_matrix(io.StringIO(text))


def dumps_matrix(mat: Mat) -> str:
    buf = io.StringIO()
    write_matrix(buf, mat)
    return buf.getvalue()


def parse_index_set(tokens: Sequence[str] | str, n: int) -> list[int]:
    """1-based, strictly increasing index list -> 0-based list."""
    if isinstance(tokens, str):
        tokens = tokens.replace(",", " ").split()
    try:
        idx = [int(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(f"non-integer index in {tokens!r}") from exc
    if any(not 1 <= i <= n for i in idx):
        raise ParseError(f"index set must lie within 1..{n}")
    if sorted(set(idx)) != idx:
        raise ParseError("index set must be strictly increasing and distinct")
    return [i - 1 for i in idx]


def certificate_digits(cert) -> str:
    """Base-q digit string (0-9 then a-z) for a certificate vector."""
    return "".join(_DIGITS[int(x)] for x in cert)


def value_to_json(value):
    if value == math.inf:
        return "inf"
    if isinstance(value, Fraction):
        return str(value)
    return int(value)


def result_to_json(result: DistanceResult) -> dict:
    out = {
        "value": value_to_json(result.value),
        "method": result.method,
        "exact": result.exact,
        "trials": result.trials,
        "seed": result.seed,
        "certifying_bound": result.certifying_bound,
    }
    out["certificate"] = (None if result.certificate is None
                          else certificate_digits(result.certificate))
    return out


def matrix_hash(mat: Mat) -> str:
    """Stable content hash used to identify ensemble instances."""
    h = hashlib.sha256()
    h.update(f"{mat.field.tag}:{mat.rows}x{mat.cols}:".encode())
    h.update(mat.data.tobytes())
    return h.hexdigest()[:16]


def dump_report(report: dict, target) -> None:
    handle, close = _open(target, "w")
    try:
        json.dump(report, handle, indent=2, sort_keys=True)
        handle.write("\n")
    finally:
        if close:
            handle.close()
