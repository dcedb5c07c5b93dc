"""Line-oriented text format for every domain value.

A document is::

    format 1
    ring Z
    <payload>

Blank lines, indentation and ``#`` comments are ignored.  Matrices are
written as a ``R C`` shape followed by exactly ``R`` row lines that begin
with ``|``.  The grammar is documented in ``docs/format.md``; the serializer
writes the canonical form, which parses back to the same bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .chains import ChainComplex, ChainMap
from .enriched import (VCategory, VFunctor, VNat, check_category_axioms, check_functor_axioms,
                       check_vnat)
from .base import VObject, VMorphism
from .errors import InvariantError
from .linalg import Matrix, RingSpec
from .translation import (DGFunctor, FunctorChainMap, FunctorComplex, check_dg_functor,
                          check_structure_condition)

FORMAT_VERSION = 1

KINDS = ("matrix", "v-object", "v-morphism", "complex", "chain-map", "v-category", "v-functor",
         "v-nat", "functor-complex", "dg-functor", "functor-chain-map")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        self.line, self.column = line, column
        super().__init__(f"line {line}, column {column}: {message}")


class UnsupportedVersion(ValueError):
    pass


@dataclass
class Document:
    ring: RingSpec
    kind: str
    value: Any
    format_version: int = FORMAT_VERSION


# --------------------------------------------------------------------------
# reading


class _Line:
    __slots__ = ("no", "tokens", "cols")

    def __init__(self, no, tokens, cols):
        self.no, self.tokens, self.cols = no, tokens, cols


def _lex(text: str) -> list[_Line]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        tokens, cols = [], []
        i = 0
        while i < len(body):
            if body[i].isspace():
                i += 1
                continue
            j = i
            while j < len(body) and not body[j].isspace():
                j += 1
            tokens.append(body[i:j])
            cols.append(i + 1)
            i = j
        if tokens:
            out.append(_Line(no, tokens, cols))
    return out


class _Reader:
    def __init__(self, text: str):
        self.lines = _lex(text)
        self.pos = 0
        self.ring: RingSpec | None = None

    def error(self, msg, line: _Line | None = None, tok: int = 0):
        if line is None:
            line = self.lines[self.pos] if self.pos < len(self.lines) else None
        if line is None:
            last = self.lines[-1].no if self.lines else 1
            raise ParseError(f"{msg} (unexpected end of input)", last, 1)
        col = line.cols[tok] if tok < len(line.cols) else (line.cols[-1] + len(line.tokens[-1]))
        raise ParseError(msg, line.no, col)

    def peek(self) -> _Line | None:
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def next(self) -> _Line:
        line = self.peek()
        if line is None:
            self.error("expected more input")
        self.pos += 1
        return line

    def expect(self, keyword: str, nargs: int | None = None) -> tuple[_Line, list[str]]:
        line = self.next()
        if line.tokens[0] != keyword:
            self.error(f"expected {keyword!r}, found {line.tokens[0]!r}", line)
        args = line.tokens[1:]
        if nargs is not None and len(args) != nargs:
            self.error(f"{keyword!r} takes {nargs} argument(s), got {len(args)}", line,
                       min(len(line.tokens) - 1, nargs + 1))
        return line, args

    def at(self, keyword: str) -> bool:
        line = self.peek()
        return line is not None and line.tokens[0] == keyword

    def int_arg(self, line: _Line, k: int) -> int:
        try:
            return int(line.tokens[k])
        except (ValueError, IndexError):
            self.error(f"expected an integer, found {line.tokens[k] if k < len(line.tokens) else 'nothing'!r}",
                       line, k)

    def matrix_rows(self, line: _Line, k: int) -> Matrix:
        """Shape ``R C`` at tokens ``k, k+1`` of ``line``, then ``R`` row lines."""
        if len(line.tokens) != k + 2:
            self.error("expected a matrix shape 'ROWS COLS'", line, min(k, len(line.tokens) - 1))
        nrows, ncols = self.int_arg(line, k), self.int_arg(line, k + 1)
        if nrows < 0 or ncols < 0:
            self.error("negative matrix dimension", line, k)
        rows = []
        for _ in range(nrows):
            row = self.next()
            if row.tokens[0] != "|":
                self.error("expected a matrix row starting with '|'", row)
            if len(row.tokens) - 1 != ncols:
                self.error(f"row has {len(row.tokens) - 1} entries, expected {ncols}", row,
                           len(row.tokens) - 1)
            vals = []
            for t in range(1, len(row.tokens)):
                try:
                    vals.append(self.ring.parse_scalar(row.tokens[t]))
                except (ValueError, ZeroDivisionError) as e:
                    self.error(str(e), row, t)
            rows.append(vals)
        return Matrix(self.ring, rows, nrows, ncols)

    def end(self):
        self.expect("end", 0)


def _read_complex(r: _Reader) -> ChainComplex:
    _, _ = r.expect("complex", 0)
    lo_line, _ = r.expect("lo", 1)
    lo = r.int_arg(lo_line, 1)
    ranks_line, args = r.expect("ranks")
    ranks = [r.int_arg(ranks_line, k + 1) for k in range(len(args))]
    diffs = {}
    while r.at("diff"):
        line = r.next()
        if len(line.tokens) != 4:
            r.error("expected 'diff DEGREE ROWS COLS'", line)
        n = r.int_arg(line, 1)
        if n in diffs:
            r.error(f"differential in degree {n} given twice", line, 1)
        diffs[n] = r.matrix_rows(line, 2)
    r.end()
    try:
        return ChainComplex(r.ring, lo, ranks, diffs)
    except InvariantError:
        raise
    except ValueError as e:
        r.error(str(e), lo_line)


def _read_category(r: _Reader) -> VCategory:
    head, _ = r.expect("v-category", 0)
    _, objs = r.expect("objects")
    homs, comp, unit = {}, {}, {}
    while r.at("hom"):
        line = r.next()
        if len(line.tokens) != 4:
            r.error("expected 'hom A B RANK'", line)
        homs[(line.tokens[1], line.tokens[2])] = r.int_arg(line, 3)
    while r.at("comp"):
        line = r.next()
        if len(line.tokens) != 6:
            r.error("expected 'comp A B C ROWS COLS'", line)
        comp[tuple(line.tokens[1:4])] = r.matrix_rows(line, 4)
    while r.at("unit"):
        line = r.next()
        if len(line.tokens) != 4:
            r.error("expected 'unit A ROWS COLS'", line)
        unit[line.tokens[1]] = r.matrix_rows(line, 2)
    r.end()
    try:
        return VCategory(r.ring, objs, homs, comp, unit)
    except (ValueError, KeyError) as e:
        r.error(str(e), head)


def _read_functor_body(r: _Reader, C: VCategory, opener: _Line) -> VFunctor:
    ranks, maps = {}, {}
    while r.at("value"):
        line = r.next()
        if len(line.tokens) != 3:
            r.error("expected 'value A RANK'", line)
        ranks[line.tokens[1]] = r.int_arg(line, 2)
    while r.at("map"):
        line = r.next()
        if len(line.tokens) != 5:
            r.error("expected 'map A B ROWS COLS'", line)
        maps[(line.tokens[1], line.tokens[2])] = r.matrix_rows(line, 3)
    r.end()
    try:
        return VFunctor(C, ranks, maps)
    except (ValueError, KeyError) as e:
        r.error(str(e), opener)


def _read_functor(r: _Reader) -> VFunctor:
    head, _ = r.expect("v-functor", 0)
    C = _read_category(r)
    return _read_functor_body(r, C, head)


def _read_components(r: _Reader, keyword: str, nkeys: int) -> dict:
    out = {}
    while r.at(keyword):
        line = r.next()
        if len(line.tokens) != 3 + nkeys:
            r.error(f"expected '{keyword} KEY ROWS COLS'", line)
        key = line.tokens[1] if nkeys == 1 else tuple(line.tokens[1:1 + nkeys])
        out[key] = r.matrix_rows(line, 1 + nkeys)
    return out


def _read_nat(r: _Reader) -> VNat:
    head, _ = r.expect("v-nat", 0)
    C = _read_category(r)
    s_line, _ = r.expect("source", 0)
    F = _read_functor_body(r, C, s_line)
    t_line, _ = r.expect("target", 0)
    G = _read_functor_body(r, C, t_line)
    comps = _read_components(r, "component", 1)
    r.end()
    try:
        alpha = VNat(F, G, comps)
    except ValueError as e:
        r.error(str(e), head)
    rep = check_vnat(alpha)
    if not rep.ok:
        raise InvariantError("naturality", str(rep.failures[0]))
    return alpha


def _read_functor_complex_body(r: _Reader, C: VCategory, head: _Line, verify: bool) -> FunctorComplex:
    lo_line, _ = r.expect("lo", 1)
    lo = r.int_arg(lo_line, 1)
    levels = []
    while r.at("level"):
        line = r.next()
        if len(line.tokens) != 2 or r.int_arg(line, 1) != lo + len(levels):
            r.error(f"expected 'level {lo + len(levels)}'", line, 1)
        levels.append(_read_functor_body(r, C, line))
    diffs = {}
    while r.at("diff"):
        line = r.next()
        if len(line.tokens) != 2:
            r.error("expected 'diff DEGREE'", line)
        n = r.int_arg(line, 1)
        diffs[n] = _read_components(r, "component", 1)
        r.end()
    r.end()
    try:
        G = FunctorComplex(C, lo, levels, diffs, check=False)
    except ValueError as e:
        r.error(str(e), head)
    rep = G.check(axioms=verify)
    if not rep.ok:
        f = rep.failures[0]
        raise InvariantError(f.diagram, f"at {f.where}")
    return G


def _read_functor_complex(r: _Reader, verify: bool) -> FunctorComplex:
    head, _ = r.expect("functor-complex", 0)
    C = _read_category(r)
    return _read_functor_complex_body(r, C, head, verify)


def _read_value(r: _Reader, verify: bool):
    line = r.peek()
    if line is None:
        r.error("missing payload")
    kind = line.tokens[0]
    if kind == "matrix":
        r.next()
        m = r.matrix_rows(line, 1)
        r.end()
        return kind, m
    if kind == "v-object":
        r.next()
        if len(line.tokens) != 2:
            r.error("expected 'v-object RANK'", line)
        return kind, VObject(r.ring, r.int_arg(line, 1))
    if kind == "v-morphism":
        r.next()
        m = r.matrix_rows(line, 1)
        r.end()
        return kind, VMorphism(VObject(r.ring, m.ncols), VObject(r.ring, m.nrows), m)
    if kind == "complex":
        return kind, _read_complex(r)
    if kind == "chain-map":
        r.next()
        X = _read_complex(r)
        Y = _read_complex(r)
        comps = {}
        while r.at("component"):
            cl = r.next()
            if len(cl.tokens) != 4:
                r.error("expected 'component DEGREE ROWS COLS'", cl)
            comps[r.int_arg(cl, 1)] = r.matrix_rows(cl, 2)
        r.end()
        try:
            f = ChainMap(X, Y, comps, check=False)
        except ValueError as e:
            r.error(str(e), line)
        bad = f.chain_defect()
        if bad is not None:
            raise InvariantError("chain map commutes with d", f"fails at degree {bad}")
        return kind, f
    if kind == "v-category":
        C = _read_category(r)
        if verify:
            rep = check_category_axioms(C)
            if not rep.ok:
                raise InvariantError(rep.failures[0].diagram, str(rep.failures[0]))
        return kind, C
    if kind == "v-functor":
        F = _read_functor(r)
        if verify:
            rep = check_functor_axioms(F)
            if not rep.ok:
                raise InvariantError(rep.failures[0].diagram, str(rep.failures[0]))
        return kind, F
    if kind == "v-nat":
        return kind, _read_nat(r)
    if kind == "functor-complex":
        return kind, _read_functor_complex(r, verify)
    if kind == "functor-chain-map":
        r.next()
        C = _read_category(r)
        s_line, _ = r.expect("source", 0)
        G = _read_functor_complex_body(r, C, s_line, verify)
        t_line, _ = r.expect("target", 0)
        H = _read_functor_complex_body(r, C, t_line, verify)
        comps = {}
        while r.at("degree"):
            dl = r.next()
            if len(dl.tokens) != 2:
                r.error("expected 'degree N'", dl)
            comps[r.int_arg(dl, 1)] = _read_components(r, "component", 1)
            r.end()
        r.end()
        try:
            return kind, FunctorChainMap(G, H, comps)
        except InvariantError:
            raise
        except ValueError as e:
            r.error(str(e), line)
    if kind == "dg-functor":
        r.next()
        C = _read_category(r)
        complexes = {}
        while r.at("at"):
            al = r.next()
            if len(al.tokens) != 2:
                r.error("expected 'at OBJECT'", al)
            complexes[al.tokens[1]] = _read_complex(r)
        structure = {}
        while r.at("structure"):
            sl = r.next()
            if len(sl.tokens) != 6:
                r.error("expected 'structure A B DEGREE ROWS COLS'", sl)
            structure.setdefault((sl.tokens[1], sl.tokens[2]), {})[r.int_arg(sl, 3)] = \
                r.matrix_rows(sl, 4)
        r.end()
        try:
            F = DGFunctor(C, complexes, structure)
        except (ValueError, KeyError) as e:
            r.error(str(e), line)
        rep = check_dg_functor(F) if verify else check_structure_condition(F)
        if not rep.ok:
            f = rep.failures[0]
            raise InvariantError(f.diagram, f"at {f.where}")
        return kind, F
    r.error(f"unknown payload kind {kind!r}", line)


def parse(text: str, verify_axioms: bool = False) -> Document:
    r = _Reader(text)
    line, args = r.expect("format", 1)
    version = r.int_arg(line, 1)
    if version != FORMAT_VERSION:
        raise UnsupportedVersion(f"format version {version} is not supported "
                                 f"(this reader understands {FORMAT_VERSION})")
    line, args = r.expect("ring", 1)
    try:
        r.ring = RingSpec.parse(args[0])
    except ValueError as e:
        r.error(str(e), line, 1)
    kind, value = _read_value(r, verify_axioms)
    if r.peek() is not None:
        r.error("trailing content after the payload")
    return Document(r.ring, kind, value, version)


# --------------------------------------------------------------------------
# writing


class _Writer:
    def __init__(self, ring: RingSpec):
        self.ring = ring
        self.out: list[str] = []
        self.depth = 0

    def line(self, *parts):
        self.out.append("  " * self.depth + " ".join(str(p) for p in parts))

    def matrix(self, head: tuple, m: Matrix):
        self.line(*head, m.nrows, m.ncols)
        self.depth += 1
        for row in m.rows:
            self.line("|", *(self.ring.format(x) for x in row))
        self.depth -= 1

    def open(self, *parts):
        self.line(*parts)
        self.depth += 1

    def close(self):
        self.depth -= 1
        self.line("end")


def _write_complex(w: _Writer, X: ChainComplex):
    w.open("complex")
    w.line("lo", X.lo)
    w.line("ranks", *[X.rank(n) for n in X.degrees()])
    for n in range(X.lo + 1, X.hi + 1):
        d = X.diff(n)
        if not d.is_zero():
            w.matrix(("diff", n), d)
    w.close()


def _write_category(w: _Writer, C: VCategory):
    w.open("v-category")
    w.line("objects", *C.objects)
    for a in C.objects:
        for b in C.objects:
            w.line("hom", a, b, C.rank(a, b))
    for a in C.objects:
        for b in C.objects:
            for c in C.objects:
                m = C.comp(a, b, c)
                if not m.is_zero():
                    w.matrix(("comp", a, b, c), m)
    for a in C.objects:
        if not C.unit(a).is_zero():
            w.matrix(("unit", a), C.unit(a))
    w.close()


def _write_functor_body(w: _Writer, F: VFunctor, *opener):
    w.open(*opener)
    C = F.source
    for a in C.objects:
        w.line("value", a, F.rank(a))
    for a in C.objects:
        for b in C.objects:
            m = F.hom_map(a, b)
            if not m.is_zero():
                w.matrix(("map", a, b), m)
    w.close()


def _write_components(w: _Writer, alpha: VNat):
    for c in alpha.category.objects:
        m = alpha.component(c)
        if not m.is_zero():
            w.matrix(("component", c), m)


def _write_functor_complex_body(w: _Writer, G: FunctorComplex):
    w.line("lo", G.lo)
    for n in G.degrees():
        _write_functor_body(w, G.level(n), "level", n)
    for n in range(G.lo + 1, G.hi + 1):
        d = G.diff(n)
        if not all(d.component(c).is_zero() for c in G.category.objects):
            w.open("diff", n)
            _write_components(w, d)
            w.close()


def serialize(doc: Document) -> str:
    w = _Writer(doc.ring)
    w.line("format", doc.format_version)
    w.line("ring", doc.ring)
    kind, v = doc.kind, doc.value
    if kind == "matrix":
        w.matrix(("matrix",), v)
        w.line("end")
    elif kind == "v-object":
        w.line("v-object", v.rank)
    elif kind == "v-morphism":
        w.matrix(("v-morphism",), v.matrix)
        w.line("end")
    elif kind == "complex":
        _write_complex(w, v)
    elif kind == "chain-map":
        w.open("chain-map")
        _write_complex(w, v.source)
        _write_complex(w, v.target)
        for n in v.degrees():
            m = v.component(n)
            if not m.is_zero():
                w.matrix(("component", n), m)
        w.close()
    elif kind == "v-category":
        _write_category(w, v)
    elif kind == "v-functor":
        w.open("v-functor")
        _write_category(w, v.source)
        for a in v.source.objects:
            w.line("value", a, v.rank(a))
        for a in v.source.objects:
            for b in v.source.objects:
                m = v.hom_map(a, b)
                if not m.is_zero():
                    w.matrix(("map", a, b), m)
        w.close()
    elif kind == "v-nat":
        w.open("v-nat")
        _write_category(w, v.category)
        _write_functor_body(w, v.source, "source")
        _write_functor_body(w, v.target, "target")
        _write_components(w, v)
        w.close()
    elif kind == "functor-complex":
        w.open("functor-complex")
        _write_category(w, v.category)
        _write_functor_complex_body(w, v)
        w.close()
    elif kind == "functor-chain-map":
        w.open("functor-chain-map")
        _write_category(w, v.source.category)
        w.open("source")
        _write_functor_complex_body(w, v.source)
        w.close()
        w.open("target")
        _write_functor_complex_body(w, v.target)
        w.close()
        for n in v.degrees():
            g = v.component(n)
            if not all(g.component(c).is_zero() for c in v.source.category.objects):
                w.open("degree", n)
                _write_components(w, g)
                w.close()
        w.close()
    elif kind == "dg-functor":
        w.open("dg-functor")
        C = v.category
        _write_category(w, C)
        for c in C.objects:
            w.open("at", c)
            _write_complex(w, v.complex(c))
            w.depth -= 1
        for a in C.objects:
            for b in C.objects:
                for p in range(v.lo, v.hi + 1):
                    m = v.structure(a, b, p)
                    if not m.is_zero():
                        w.matrix(("structure", a, b, p), m)
        w.close()
    else:
        raise ValueError(f"unknown payload kind {kind!r}")
    return "\n".join(w.out) + "\n"


def dumps(value, kind: str | None = None) -> str:
    """Serialize a bare value, inferring its payload kind."""
    if kind is None:
        kind = _infer_kind(value)
    return serialize(Document(value.ring, kind, value))


def _infer_kind(value) -> str:
    table = [(Matrix, "matrix"), (VObject, "v-object"), (VMorphism, "v-morphism"),
             (ChainComplex, "complex"), (ChainMap, "chain-map"), (VCategory, "v-category"),
             (VFunctor, "v-functor"), (VNat, "v-nat"), (FunctorComplex, "functor-complex"),
             (FunctorChainMap, "functor-chain-map"), (DGFunctor, "dg-functor")]
    for cls, name in table:
        if isinstance(value, cls):
            return name
    raise TypeError(f"cannot serialize {type(value).__name__}")


def read_file(path: str, verify_axioms: bool = False) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), verify_axioms)


__all__ = ["Document", "ParseError", "UnsupportedVersion", "parse", "serialize", "dumps",
           "read_file", "FORMAT_VERSION", "KINDS"]
