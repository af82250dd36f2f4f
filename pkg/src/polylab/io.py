"""Plain-text geometry (``ig 1``) and morphism (``igmap 1``) files.

Geometry::

    ig 1
    points N
    lines M
    <sorted point indices of line 0>
    ...

A line without points is written as ``-``.  Morphism::

    igmap 1
    source <path or sha256:HEX>
    target <path or sha256:HEX>
    pointmap
    i j
    ...
    linemap
    i j
    ...

``#`` starts a comment; blank lines are ignored.  Writers emit the canonical
form, so ``write(parse(write(x))) == write(x)`` byte for byte.
"""

from __future__ import annotations

import hashlib
import re
from pathlib import Path
from typing import NamedTuple

from .errors import ParseError
from .incidence import IncidenceGeometry
from .morphisms import GeometryMorphism

_TOKEN = re.compile(r"\S+")


class _Line(NamedTuple):
    number: int
    tokens: list  # (column, text)


def _lines(data) -> list:
    if isinstance(data, (bytes, bytearray)):
        try:
            text = bytes(data).decode("ascii")
        except UnicodeDecodeError as exc:
            line = bytes(data)[: exc.start].count(b"\n") + 1
            raise ParseError(line, 1, "non-ASCII byte") from None
    else:
        text = data
    out = []
    for no, raw in enumerate(text.split("\n"), 1):
        raw = raw.rstrip("\r")
        cut = raw.find("#")
        if cut >= 0:
            raw = raw[:cut]
        tokens = [(m.start() + 1, m.group()) for m in _TOKEN.finditer(raw)]
        if tokens:
            out.append(_Line(no, tokens))
    return out


def _int(line: _Line, k: int, what: str) -> int:
    col, tok = line.tokens[k]
    if not tok.isdigit():
        raise ParseError(line.number, col, f"expected a non-negative integer for {what}, got {tok!r}")
    return int(tok)


def _keyword(lines, pos, word, nargs, end_line):
    if pos >= len(lines):
        raise ParseError(end_line, 1, f"missing '{word}'")
    ln = lines[pos]
    col, tok = ln.tokens[0]
    if tok != word:
        raise ParseError(ln.number, col, f"expected '{word}', got {tok!r}")
    if len(ln.tokens) != nargs + 1:
        raise ParseError(ln.number, col, f"'{word}' takes {nargs} argument(s)")
    return ln


def parse_geometry(data) -> IncidenceGeometry:
    lines = _lines(data)
    end = (lines[-1].number + 1) if lines else 1
    head = _keyword(lines, 0, "ig", 1, end)
    if head.tokens[1][1] != "1":
        raise ParseError(head.number, head.tokens[1][0], "unsupported format version")
    n = _int(_keyword(lines, 1, "points", 1, end), 1, "points")
    m = _int(_keyword(lines, 2, "lines", 1, end), 1, "lines")
    records = lines[3:]
    if len(records) < m:
        raise ParseError(end, 1, f"expected {m} line records, found {len(records)}")
    if len(records) > m:
        raise ParseError(records[m].number, 1, f"more than {m} line records")
    out = []
    for rec in records:
        if len(rec.tokens) == 1 and rec.tokens[0][1] == "-":
            out.append(())
            continue
        seen = set()
        pts = []
        for k in range(len(rec.tokens)):
            p = _int(rec, k, "a point index")
            col = rec.tokens[k][0]
            if p >= n:
                raise ParseError(rec.number, col, f"point index {p} out of range [0,{n})")
            if p in seen:
                raise ParseError(rec.number, col, f"duplicate flag with point {p}")
            seen.add(p)
            pts.append(p)
        out.append(tuple(pts))
    return IncidenceGeometry(n, out)


def write_geometry(G: IncidenceGeometry) -> bytes:
    rows = ["ig 1", f"points {G.num_points}", f"lines {G.num_lines}"]
    for rec in G.line_points:
        rows.append(" ".join(map(str, rec)) if rec else "-")
    return ("\n".join(rows) + "\n").encode("ascii")


def geometry_digest(G: IncidenceGeometry) -> str:
    return "sha256:" + hashlib.sha256(write_geometry(G)).hexdigest()


class MorphismRecord(NamedTuple):
    source: str
    target: str
    point_map: dict
    line_map: dict
    ref_lines: tuple = (2, 3)


def _pairs(lines, start, stop, name):
    out = {}
    for ln in lines[start:stop]:
        if len(ln.tokens) != 2:
            raise ParseError(ln.number, ln.tokens[0][0], f"{name} entries are 'i j' pairs")
        i, j = _int(ln, 0, "a source index"), _int(ln, 1, "a target index")
        if i in out:
            raise ParseError(ln.number, ln.tokens[0][0], f"{name} assigns {i} twice")
        out[i] = (j, ln)
    return out


def parse_morphism(data) -> MorphismRecord:
    """Parse the morphism file text without resolving the geometries."""
    lines = _lines(data)
    end = (lines[-1].number + 1) if lines else 1
    head = _keyword(lines, 0, "igmap", 1, end)
    if head.tokens[1][1] != "1":
        raise ParseError(head.number, head.tokens[1][0], "unsupported format version")
    src_ln = _keyword(lines, 1, "source", 1, end)
    tgt_ln = _keyword(lines, 2, "target", 1, end)
    _keyword(lines, 3, "pointmap", 0, end)
    split = next((k for k in range(4, len(lines)) if lines[k].tokens[0][1] == "linemap"), None)
    if split is None:
        raise ParseError(end, 1, "missing 'linemap'")
    _keyword(lines, split, "linemap", 0, end)
    pm = _pairs(lines, 4, split, "pointmap")
    lm = _pairs(lines, split + 1, len(lines), "linemap")
    return MorphismRecord(src_ln.tokens[1][1], tgt_ln.tokens[1][1], pm, lm, (src_ln.number, tgt_ln.number))


def _total(entries, size, codomain, name, end):
    out = []
    for i in range(size):
        if i not in entries:
            raise ParseError(end, 1, f"{name} has no image for {i}")
        j, ln = entries[i]
        if j >= codomain:
            raise ParseError(ln.number, ln.tokens[1][0], f"{name} image {j} out of range [0,{codomain})")
        out.append(j)
    extra = sorted(set(entries) - set(range(size)))
    if extra:
        ln = entries[extra[0]][1]
        raise ParseError(ln.number, ln.tokens[0][0], f"{name} index {extra[0]} out of range [0,{size})")
    return tuple(out)


def _resolve(ref: str, given, base_dir, which, line_no):
    if given is not None:
        if ref.startswith("sha256:") and geometry_digest(given) != ref:
            raise ParseError(line_no, 8, f"{which} digest does not match the supplied geometry")
        return given
    if ref.startswith("sha256:"):
        raise ParseError(line_no, 8, f"{which} given by digest only; supply the geometry")
    path = Path(base_dir or ".") / ref
    return parse_geometry(path.read_bytes())


def read_morphism(data, source: IncidenceGeometry = None, target: IncidenceGeometry = None,
                  base_dir=None) -> GeometryMorphism:
    """Parse a morphism file into a :class:`GeometryMorphism`.

    Geometries not supplied are loaded from the path references, relative to
    ``base_dir``.
    """
    rec = parse_morphism(data)
    S = _resolve(rec.source, source, base_dir, "source", rec.ref_lines[0])
    T = _resolve(rec.target, target, base_dir, "target", rec.ref_lines[1])
    lines = _lines(data)
    end = lines[-1].number + 1
    pm = _total(rec.point_map, S.num_points, T.num_points, "pointmap", end)
    lm = _total(rec.line_map, S.num_lines, T.num_lines, "linemap", end)
    return GeometryMorphism(S, T, pm, lm)


def write_morphism(phi: GeometryMorphism, source_ref: str = None, target_ref: str = None) -> bytes:
    """Canonical morphism file; references default to content digests."""
    src = source_ref or geometry_digest(phi.source)
    tgt = target_ref or geometry_digest(phi.target)
    for ref in (src, tgt):
        if not ref or any(ch.isspace() for ch in ref) or "#" in ref:
            raise ValueError(f"reference {ref!r} must be a single token without '#'")
    rows = ["igmap 1", f"source {src}", f"target {tgt}", "pointmap"]
    rows += [f"{i} {j}" for i, j in enumerate(phi.point_map)]
    rows.append("linemap")
    rows += [f"{i} {j}" for i, j in enumerate(phi.line_map)]
    return ("\n".join(rows) + "\n").encode("ascii")


def load_geometry(path) -> IncidenceGeometry:
    return parse_geometry(Path(path).read_bytes())


def save_geometry(G: IncidenceGeometry, path) -> None:
    Path(path).write_bytes(write_geometry(G))
