"""JSON readers and writers for algebras, generator sets, calculi, braidings and Cartan pairs.

Scalars are decimal integers or ``"p/q"`` strings; floats are rejected.
Every parse error names the file and the JSON path of the offending value.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .algebra import BUILTINS, Algebra, builtin
from .bimodule import Bimodule, FreeModuleBraiding
from .calculus import FODC, kernel_of_mu
from .duality import CartanPair
from .linalg import Field, Matrix, QQ


class ParseError(ValueError):
    """Malformed input; ``where`` is a JSON path such as ``mul[3][2]``."""

    def __init__(self, source: str, where: str, message: str):
        self.source = source
        self.where = where
        self.message = message
        loc = "%s: %s" % (source, where) if where else source
        super().__init__("%s: %s" % (loc, message))


class _Ctx:
    def __init__(self, source: str):
        self.source = source

    def fail(self, where: str, message: str):
        raise ParseError(self.source, where, message)

    def get(self, obj: dict, key: str, where: str, kind=None, required: bool = True, default=None):
        if not isinstance(obj, dict):
            self.fail(where, "expected an object")
        if key not in obj:
            if required:
                self.fail(_join(where, key), "missing field")
            return default
        val = obj[key]
        if kind is not None and not isinstance(val, kind) or isinstance(val, bool) and kind is int:
            self.fail(_join(where, key), "expected %s, got %s" % (_kind_name(kind), type(val).__name__))
        return val

    def scalar(self, field: Field, x, where: str):
        if isinstance(x, bool) or isinstance(x, float):
            self.fail(where, "scalars must be integers or \"p/q\" strings, got %r" % (x,))
        if not isinstance(x, (int, str)):
            self.fail(where, "expected a scalar, got %s" % type(x).__name__)
        try:
            return field(x)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            self.fail(where, str(exc))

    def vector(self, field: Field, xs, length: int, where: str) -> tuple:
        if not isinstance(xs, list):
            self.fail(where, "expected a list of %d scalars" % length)
        if len(xs) != length:
            self.fail(where, "expected %d entries, got %d" % (length, len(xs)))
        return tuple(self.scalar(field, x, "%s[%d]" % (where, i)) for i, x in enumerate(xs))

    def matrix(self, field: Field, rows, nrows: int, ncols: int, where: str) -> Matrix:
        if not isinstance(rows, list) or len(rows) != nrows:
            self.fail(where, "expected %d rows" % nrows)
        return Matrix(field, [self.vector(field, r, ncols, "%s[%d]" % (where, i)) for i, r in enumerate(rows)],
                      ncols)


def _join(where: str, key) -> str:
    if isinstance(key, int):
        return "%s[%d]" % (where, key)
    return "%s.%s" % (where, key) if where else key


def _kind_name(kind) -> str:
    if isinstance(kind, tuple):
        return " or ".join(k.__name__ for k in kind)
    return {list: "a list", dict: "an object", int: "an integer", str: "a string"}.get(kind, str(kind))


def load_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(str(path), "", "cannot read file (%s)" % exc.strerror) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(path), "line %d column %d" % (exc.lineno, exc.colno), exc.msg) from None


# ------------------------------------------------------------ algebras

def parse_field(text, source: str = "<data>", where: str = "field") -> Field:
    if not isinstance(text, str):
        raise ParseError(source, where, "field must be \"Q\" or \"Fp:<prime>\"")
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise ParseError(source, where, str(exc)) from None


def parse_algebra(obj, field: Field | None = None, source: str = "<data>") -> Algebra:
    """Algebra from its document; ``field`` overrides the document's own field."""
    c = _Ctx(source)
    if not isinstance(obj, dict):
        c.fail("", "algebra document must be an object")
    if field is None:
        field = parse_field(obj["field"], source) if "field" in obj else QQ
    if "builtin" in obj:
        kind = c.get(obj, "builtin", "", str)
        if kind not in BUILTINS:
            c.fail("builtin", "unknown builtin %r (known: %s)" % (kind, ", ".join(sorted(BUILTINS))))
        names = BUILTINS[kind][1]
        extra = sorted(set(obj) - set(names) - {"builtin", "field", "name"})
        if extra:
            c.fail(extra[0], "unexpected parameter for %s (takes %s)" % (kind, ", ".join(names)))
        params = {}
        for p in names:
            v = c.get(obj, p, "", (int, str))
            if p != "q" and not isinstance(v, int):
                c.fail(p, "expected an integer")
            params[p] = v
        try:
            return builtin(kind, field, **params)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            c.fail("builtin", str(exc))
    n = c.get(obj, "dim", "", int)
    if n < 1:
        c.fail("dim", "dimension must be positive")
    labels = c.get(obj, "basis", "", list, required=False, default=None)
    if labels is None:
        labels = ["e%d" % i for i in range(n)]
    if len(labels) != n or not all(isinstance(x, str) for x in labels):
        c.fail("basis", "expected %d string labels" % n)
    if len(set(labels)) != n:
        c.fail("basis", "duplicate basis label")
    unit = c.vector(field, c.get(obj, "unit", "", list), n, "unit")
    mul = c.get(obj, "mul", "", list)
    seen = {}
    triples = []
    for t, entry in enumerate(mul):
        w = "mul[%d]" % t
        if not isinstance(entry, list) or len(entry) != 4:
            c.fail(w, "expected [i, j, k, coeff]")
        idx = []
        for s in range(3):
            v = entry[s]
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                c.fail("%s[%d]" % (w, s), "index must be an integer in 0..%d" % (n - 1))
            idx.append(v)
        key = tuple(idx)
        if key in seen:
            c.fail(w, "duplicate structure triple (%d, %d, %d), first given at mul[%d]" % (key + (seen[key],)))
        seen[key] = t
        triples.append(key + (c.scalar(field, entry[3], "%s[3]" % w),))
    name = obj.get("name") if isinstance(obj.get("name"), str) else Path(source).stem
    return Algebra.from_triples(field, labels, unit, triples, name)


def read_algebra(path: str | Path, field: Field | None = None) -> Algebra:
    return parse_algebra(load_json(path), field, str(path))


def algebra_to_json(a: Algebra) -> dict:
    n = a.dim
    mul = [[i, j, k, a.field.format(a.table[i][j][k])]
           for i in range(n) for j in range(n) for k in range(n) if a.table[i][j][k]]
    return {"field": a.field.name, "name": a.name, "dim": n, "basis": list(a.labels),
            "unit": [a.field.format(x) for x in a.unit], "mul": mul}


# ------------------------------------------------------------ other objects

def parse_generators(obj, a: Algebra, source: str = "<data>") -> list[tuple]:
    """Elements of ker(mu) given in the n^2 coordinates of R (x) R."""
    c = _Ctx(source)
    amb = c.get(obj, "ambient", "", str)
    if amb != "ker_mu":
        c.fail("ambient", "only \"ker_mu\" generator sets are supported")
    gens = c.get(obj, "gens", "", list)
    K = kernel_of_mu(a)
    out = []
    for t, g in enumerate(gens):
        v = c.vector(a.field, g, a.dim ** 2, "gens[%d]" % t)
        if v not in K:
            c.fail("gens[%d]" % t, "element is not in the kernel of multiplication")
        out.append(v)
    return out


def read_generators(path: str | Path, a: Algebra) -> list[tuple]:
    return parse_generators(load_json(path), a, str(path))


def parse_bimodule(obj, a: Algebra, source: str = "<data>", where: str = "") -> Bimodule:
    """``{"dim": m, "left": [m x m per basis element], "right": [...]}``."""
    c = _Ctx(source)
    m = c.get(obj, "dim", where, int)
    if m < 0:
        c.fail(_join(where, "dim"), "dimension must be non-negative")
    mats = {}
    for side in ("left", "right"):
        w = _join(where, side)
        lst = c.get(obj, side, where, list)
        if len(lst) != a.dim:
            c.fail(w, "expected one matrix per basis element (%d)" % a.dim)
        mats[side] = tuple(c.matrix(a.field, x, m, m, "%s[%d]" % (w, i)) for i, x in enumerate(lst))
    name = obj.get("name") if isinstance(obj.get("name"), str) else ""
    return Bimodule(a, m, mats["left"], mats["right"], name)


def bimodule_to_json(M: Bimodule) -> dict:
    f = M.field.format
    mat = lambda x: [[f(y) for y in row] for row in x.rows]
    return {"name": M.name, "dim": M.dim, "left": [mat(x) for x in M.left], "right": [mat(x) for x in M.right]}


def parse_fodc(obj, a: Algebra, source: str = "<data>") -> FODC:
    """``{"bimodule": {...}, "d": [d(e_0), ..., d(e_{n-1})]}`` with d(e_i) in one-form coordinates.

    An optional ``"algebra"`` entry must describe the same algebra as ``a``.
    """
    c = _Ctx(source)
    if not isinstance(obj, dict):
        c.fail("", "calculus document must be an object")
    if "algebra" in obj:
        other = parse_algebra(obj["algebra"], a.field, source)
        if not other.same_structure(a):
            c.fail("algebra", "calculus was written for a different algebra")
    M = parse_bimodule(c.get(obj, "bimodule", "", dict), a, source, "bimodule")
    ds = c.get(obj, "d", "", list)
    if len(ds) != a.dim:
        c.fail("d", "expected one vector per basis element (%d)" % a.dim)
    cols = [c.vector(a.field, v, M.dim, "d[%d]" % i) for i, v in enumerate(ds)]
    d = Matrix.from_columns(a.field, cols, M.dim)
    name = obj.get("name") if isinstance(obj.get("name"), str) else Path(source).stem
    return FODC(M, d, name)


def read_fodc(path: str | Path, a: Algebra) -> FODC:
    return parse_fodc(load_json(path), a, str(path))


def fodc_to_json(f: FODC, with_algebra: bool = True) -> dict:
    out = {"name": f.name, "bimodule": bimodule_to_json(f.omega),
           "d": [[f.algebra.field.format(x) for x in col] for col in f.d.columns()]}
    if with_algebra:
        out["algebra"] = algebra_to_json(f.algebra)
    return out


def parse_braiding(obj, a: Algebra, source: str = "<data>") -> FreeModuleBraiding:
    """``{"generators": k, "kind": "beta"|"alpha", "matrix": nk x nk}``."""
    c = _Ctx(source)
    k = c.get(obj, "generators", "", int)
    if k < 1:
        c.fail("generators", "need at least one generator")
    kind = c.get(obj, "kind", "", str, required=False, default="beta")
    if kind not in ("beta", "alpha"):
        c.fail("kind", "must be \"beta\" or \"alpha\"")
    nk = a.dim * k
    m = c.matrix(a.field, c.get(obj, "matrix", "", list), nk, nk, "matrix")
    return FreeModuleBraiding(a, k, m, kind)


def braiding_to_json(b: FreeModuleBraiding) -> dict:
    f = b.algebra.field.format
    return {"generators": b.k, "kind": b.kind, "matrix": [[f(x) for x in r] for r in b.matrix.rows]}


def parse_cartan(obj, a: Algebra, source: str = "<data>") -> CartanPair:
    """``{"bimodule": {...}, "action": [flattened endomorphism per basis vector], "side": ...}``."""
    c = _Ctx(source)
    X = parse_bimodule(c.get(obj, "bimodule", "", dict), a, source, "bimodule")
    side = c.get(obj, "side", "", str, required=False, default="right")
    if side not in ("right", "left"):
        c.fail("side", "must be \"right\" or \"left\"")
    acts = c.get(obj, "action", "", list)
    if len(acts) != X.dim:
        c.fail("action", "expected one endomorphism per basis vector (%d)" % X.dim)
    n = a.dim
    cols = [c.vector(a.field, v, n * n, "action[%d]" % i) for i, v in enumerate(acts)]
    return CartanPair(X, Matrix.from_columns(a.field, cols, n * n), side, Path(source).stem)


def cartan_to_json(cp: CartanPair) -> dict:
    f = cp.algebra.field.format
    return {"side": cp.side, "bimodule": bimodule_to_json(cp.x),
            "action": [[f(x) for x in col] for col in cp.action.columns()]}
