"""Line-oriented JSON serialization for representations and layer families.

A file is one header object followed by one body object per line.  Scalars are
decimal strings ("a/b" for rationals, "r" with 0 <= r < p for residues), so the
files are diff-able and exactly representable.  Writing is canonical: exponent
matrices in lexicographic order, layers and index pairs in increasing order.
"""

from __future__ import annotations

import json

from .arith import scalar_from_str, scalar_to_str
from .errors import ParseError
from .hopf import ExponentMatrix, Polynomial, variable_pairs
from .linalg import SquareMatrix
from .reps import ChiTable, LieLayerData, Representation

__all__ = [
    "write_rep_file",
    "parse_rep_file",
    "write_layer_file",
    "parse_layer_file",
]

FORMAT_VERSION = 1


def _exponent_rows(M: ExponentMatrix):
    return [list(r) for r in M.rows]


def _matrix_to_strings(mat: SquareMatrix):
    return [[scalar_to_str(v) for v in row] for row in mat.entries]


def _matrix_from_strings(rows, d, p, lineno):
    if len(rows) != d or any(len(r) != d for r in rows):
        raise ParseError(f"line {lineno}: matrix is not {d} x {d}")
    out = []
    for row in rows:
        parsed = []
        for s in row:
            try:
                parsed.append(scalar_from_str(s, p))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"line {lineno}: bad scalar {s!r}: {exc}") from None
        out.append(parsed)
    return SquareMatrix(out)


def _exponent_from_rows(rows, n, lineno):
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ParseError(f"line {lineno}: exponent matrix is not {n} x {n}")
    try:
        return ExponentMatrix(n, rows)
    except Exception as exc:
        raise ParseError(f"line {lineno}: bad exponent matrix: {exc}") from None


def _load_line(line, lineno):
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {lineno}: invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ParseError(f"line {lineno}: expected a JSON object")
    return obj


def _header_ints(header, keys, lineno=1):
    out = []
    for key in keys:
        v = header.get(key)
        if not isinstance(v, int) or v < 0:
            raise ParseError(f"line {lineno}: header field {key!r} must be a non-negative integer")
        out.append(v)
    return out


def write_rep_file(rep: Representation, body="chi") -> str:
    """Canonical text for a representation, with a chi-table or
    polynomial-matrix body."""
    if body not in ("chi", "poly"):
        raise ValueError(f"unknown body format {body!r}")
    lines = [json.dumps(
        {"format": body, "version": FORMAT_VERSION, "n": rep.n, "p": rep.p, "d": rep.d},
        sort_keys=True,
    )]
    if body == "chi":
        for M, mat in rep.chi.items():
            lines.append(json.dumps(
                {"M": _exponent_rows(M), "matrix": _matrix_to_strings(mat)}, sort_keys=True
            ))
    else:
        for a in range(rep.d):
            for b in range(rep.d):
                poly = rep.poly_matrix.entries[a][b]
                terms = [
                    {"M": _exponent_rows(M), "c": scalar_to_str(c)}
                    for M, c in sorted(poly.terms.items(), key=lambda kv: kv[0].sort_key())
                ]
                lines.append(json.dumps(
                    {"row": a + 1, "col": b + 1, "terms": terms}, sort_keys=True
                ))
    return "\n".join(lines) + "\n"


def parse_rep_file(text: str) -> Representation:
    """Inverse of write_rep_file; structural validation only."""
    lines = [l for l in text.splitlines() if l.strip()]
    if not lines:
        raise ParseError("line 1: empty file")
    header = _load_line(lines[0], 1)
    body = header.get("format")
    if body not in ("chi", "poly"):
        raise ParseError(f"line 1: unknown format {header.get('format')!r}")
    n, p, d = _header_ints(header, ("n", "p", "d"))
    if n < 1 or d < 1:
        raise ParseError("line 1: n and d must be positive")
    if body == "chi":
        support = {}
        for lineno, line in enumerate(lines[1:], start=2):
            obj = _load_line(line, lineno)
            M = _exponent_from_rows(obj.get("M"), n, lineno)
            if M in support:
                raise ParseError(f"line {lineno}: duplicate exponent matrix")
            support[M] = _matrix_from_strings(obj.get("matrix"), d, p, lineno)
        return Representation(ChiTable(n, p, d, support))
    entries = {}
    for lineno, line in enumerate(lines[1:], start=2):
        obj = _load_line(line, lineno)
        a, b = obj.get("row"), obj.get("col")
        if not (isinstance(a, int) and isinstance(b, int) and 1 <= a <= d and 1 <= b <= d):
            raise ParseError(f"line {lineno}: row/col out of range")
        if (a, b) in entries:
            raise ParseError(f"line {lineno}: duplicate entry ({a}, {b})")
        terms = {}
        for t in obj.get("terms", []):
            M = _exponent_from_rows(t.get("M"), n, lineno)
            try:
                c = scalar_from_str(t.get("c"), p)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"line {lineno}: bad scalar {t.get('c')!r}: {exc}") from None
            terms[M] = c
        entries[(a, b)] = Polynomial(n, p, terms)
    missing = [(a, b) for a in range(1, d + 1) for b in range(1, d + 1) if (a, b) not in entries]
    if missing:
        raise ParseError(f"line {len(lines)}: missing matrix entries {missing}")
    pm = SquareMatrix([[entries[(a, b)] for b in range(1, d + 1)] for a in range(1, d + 1)])
    return Representation.from_poly_matrix(pm, n, p)


def write_layer_file(data: LieLayerData) -> str:
    """Canonical text for a layer family; every pair of every layer is listed."""
    lines = [json.dumps(
        {"format": "layers", "version": FORMAT_VERSION, "n": data.n, "p": data.p,
         "d": data.d, "layers": len(data.layers)},
        sort_keys=True,
    )]
    for l in range(len(data.layers)):
        for i, j in variable_pairs(data.n):
            lines.append(json.dumps(
                {"layer": l, "i": i, "j": j,
                 "matrix": _matrix_to_strings(data.image(l, i, j))},
                sort_keys=True,
            ))
    return "\n".join(lines) + "\n"


def parse_layer_file(text: str) -> LieLayerData:
    lines = [l for l in text.splitlines() if l.strip()]
    if not lines:
        raise ParseError("line 1: empty file")
    header = _load_line(lines[0], 1)
    if header.get("format") != "layers":
        raise ParseError(f"line 1: unknown format {header.get('format')!r}")
    n, p, d, count = _header_ints(header, ("n", "p", "d", "layers"))
    layers = [dict() for _ in range(count)]
    for lineno, line in enumerate(lines[1:], start=2):
        obj = _load_line(line, lineno)
        l, i, j = obj.get("layer"), obj.get("i"), obj.get("j")
        if not (isinstance(l, int) and 0 <= l < count):
            raise ParseError(f"line {lineno}: layer index out of range")
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= n):
            raise ParseError(f"line {lineno}: pair ({i}, {j}) out of range")
        if (i, j) in layers[l]:
            raise ParseError(f"line {lineno}: duplicate layer entry")
        layers[l][(i, j)] = _matrix_from_strings(obj.get("matrix"), d, p, lineno)
    return LieLayerData(n, p, d, layers)
