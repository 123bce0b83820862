"""Exact scalars, dense matrices and canonical subspaces.

Everything here is exact: rationals are ``gmpy2.mpq`` values, prime-field
elements are :class:`Mod` values.  Subspaces are stored by their reduced
row-echelon basis, so equality of subspaces is equality of dataclasses.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class Mod:
    """Element of the prime field F_p, stored as a representative in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise ValueError("mixing elements of different prime fields")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(o, self.p) / self

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pow__(self, k: int):
        return Mod(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "Mod(%d, %d)" % (self.v, self.p)

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class Field:
    """Exact ground field: the rationals (``p is None``) or F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and (self.p < 2 or not gmpy2.is_prime(self.p)):
            raise ValueError("F_p needs a prime p, got %r" % self.p)

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip()
        if text == "Q":
            return cls()
        if text.startswith("Fp:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise ValueError("bad prime in field descriptor %r" % text) from None
            return cls(p)
        raise ValueError("field must be 'Q' or 'Fp:<prime>', got %r" % text)

    @property
    def name(self) -> str:
        return "Q" if self.p is None else "Fp:%d" % self.p

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def zero(self):
        return mpq(0) if self.p is None else Mod(0, self.p)

    @property
    def one(self):
        return mpq(1) if self.p is None else Mod(1, self.p)

    def __call__(self, x):
        """Convert an int, a ``"p/q"`` string, a Fraction or a field element."""
        if isinstance(x, bool) or isinstance(x, float):
            raise TypeError("refusing inexact or boolean scalar %r" % (x,))
        if self.p is None:
            if isinstance(x, Mod):
                raise TypeError("cannot lift a prime-field element to Q")
            if isinstance(x, str):
                num, den = _split_rational(x)
                return mpq(num, den)
            if isinstance(x, Fraction):
                return mpq(x.numerator, x.denominator)
            return mpq(x)
        if isinstance(x, Mod):
            if x.p != self.p:
                raise ValueError("element of F_%d used in F_%d" % (x.p, self.p))
            return x
        if isinstance(x, str):
            num, den = _split_rational(x)
        elif isinstance(x, int):
            num, den = x, 1
        else:
            q = mpq(x)
            num, den = int(q.numerator), int(q.denominator)
        if den % self.p == 0:
            raise ValueError("%s is not defined in F_%d" % (x, self.p))
        return Mod(num, self.p) / den

    def format(self, x) -> str:
        """Exact string form used in reports and files."""
        return str(x)

    def __str__(self):
        return self.name


QQ = Field()


def _split_rational(text: str) -> tuple[int, int]:
    m = _RATIONAL.match(text)
    if not m:
        raise ValueError("not an exact rational: %r" % text)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError("zero denominator in %r" % text)
    return num, den


class Matrix:
    """Immutable dense matrix over a :class:`Field`.

    Also serves as the linear-map type: columns are indexed by the domain
    basis, so ``codomain_dim == nrows`` and ``domain_dim == ncols``.
    """

    __slots__ = ("field", "nrows", "ncols", "rows", "_hash")

    def __init__(self, field: Field, rows: Iterable[Sequence], ncols: int | None = None, *, _raw=False):
        if _raw:
            data = tuple(rows)
        else:
            data = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
        self.field = field
        self.nrows = len(data)
        self.ncols = ncols
        self.rows = data
        self._hash = None

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls(field, [(z,) * ncols for _ in range(nrows)], ncols, _raw=True)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, [tuple(o if i == j else z for j in range(n)) for i in range(n)], n, _raw=True)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        cols = [tuple(c) for c in columns]
        for c in cols:
            if len(c) != nrows:
                raise ValueError("column length %d, expected %d" % (len(c), nrows))
        return cls(field, [tuple(c[i] for c in cols) for i in range(nrows)], len(cols), _raw=True)

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], ncols: int) -> "Matrix":
        return cls(field, [tuple(r) for r in rows], ncols, _raw=True)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def domain_dim(self) -> int:
        return self.ncols

    @property
    def codomain_dim(self) -> int:
        return self.nrows

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, [tuple(r[j] for r in self.rows) for j in range(self.ncols)], self.nrows,
                      _raw=True)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise ValueError("vector of length %d for %dx%d matrix" % (len(v), self.nrows, self.ncols))
        z = self.field.zero
        nz = [(j, x) for j, x in enumerate(v) if x]
        out = []
        for row in self.rows:
            s = z
            for j, x in nz:
                a = row[j]
                if a:
                    s = s + a * x
            out.append(s)
        return tuple(out)

    __call__ = apply

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return self.apply(other)
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        z = self.field.zero
        ocols = other.ncols
        orows = other.rows
        out = []
        for row in self.rows:
            acc = [z] * ocols
            for k, a in enumerate(row):
                if not a:
                    continue
                brow = orows[k]
                for j in range(ocols):
                    b = brow[j]
                    if b:
                        acc[j] = acc[j] + a * b
            out.append(tuple(acc))
        return Matrix(self.field, out, ocols, _raw=True)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch %s + %s" % (self.shape, other.shape))
        return Matrix(self.field, [tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)],
                      self.ncols, _raw=True)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch %s - %s" % (self.shape, other.shape))
        return Matrix(self.field, [tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)],
                      self.ncols, _raw=True)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, [tuple(-a for a in r) for r in self.rows], self.ncols, _raw=True)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix(self.field, [tuple(c * a for a in r) for r in self.rows], self.ncols, _raw=True)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; index (i, j) of a tensor maps to ``i * dim2 + j``."""
        z = self.field.zero
        out = []
        for r in self.rows:
            for s in other.rows:
                out.append(tuple((a * b if a and b else z) for a in r for b in s))
        return Matrix(self.field, out, self.ncols * other.ncols, _raw=True)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("hstack row mismatch")
        return Matrix(self.field, [r + s for r, s in zip(self.rows, other.rows)], self.ncols + other.ncols,
                      _raw=True)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise ValueError("vstack column mismatch")
        return Matrix(self.field, self.rows + other.rows, self.ncols, _raw=True)

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, [self.rows[i] for i in idx], self.ncols, _raw=True)

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, [tuple(r[j] for j in idx) for r in self.rows], len(idx), _raw=True)

    def flatten(self) -> tuple:
        """Row-major coordinates."""
        return tuple(x for r in self.rows for x in r)

    @classmethod
    def unflatten(cls, field: Field, v: Sequence, nrows: int, ncols: int) -> "Matrix":
        if len(v) != nrows * ncols:
            raise ValueError("cannot reshape %d entries to %dx%d" % (len(v), nrows, ncols))
        return cls(field, [tuple(v[i * ncols:(i + 1) * ncols]) for i in range(nrows)], ncols, _raw=True)

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        return all((x == 1) if i == j else (not x) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def rank(self) -> int:
        return len(_echelon(self.rows, self.ncols, self.field))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def tolist(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return "Matrix(%dx%d: [%s])" % (self.nrows, self.ncols, body)


LinearMap = Matrix


def _echelon(rows: Iterable, ncols: int, field: Field) -> dict[int, dict[int, object]]:
    """Incremental Gauss-Jordan elimination on sparse rows.

    Returns ``{pivot_column: row}`` with every row fully reduced against the
    other pivots and normalised to a leading 1.  Rows may be dense sequences
    or ``{column: value}`` dicts.
    """
    piv: dict[int, dict[int, object]] = {}
    for row in rows:
        if isinstance(row, dict):
            r = {c: v for c, v in row.items() if v}
        else:
            r = {c: v for c, v in enumerate(row) if v}
        if not r:
            continue
        hits = [c for c in r if c in piv]
        for c in hits:
            f = r.get(c)
            if not f:
                continue
            for cc, pv in piv[c].items():
                nv = r.get(cc, 0) - f * pv
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
        if not r:
            continue
        p = min(r)
        inv = field.one / r[p]
        if not (inv == 1):
            r = {c: v * inv for c, v in r.items()}
        for other in piv.values():
            f = other.get(p)
            if f:
                for cc, v in r.items():
                    nv = other.get(cc, 0) - f * v
                    if nv:
                        other[cc] = nv
                    else:
                        other.pop(cc, None)
        piv[p] = r
    return piv


def _dense(piv: dict, ncols: int, field: Field) -> tuple[list[tuple], list[int]]:
    z = field.zero
    pivots = sorted(piv)
    out = []
    for p in pivots:
        r = piv[p]
        out.append(tuple(r.get(c, z) for c in range(ncols)))
    return out, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form with zero rows dropped, and its pivot columns."""
    rows, pivots = _dense(_echelon(m.rows, m.ncols, m.field), m.ncols, m.field)
    return Matrix(m.field, rows, m.ncols, _raw=True), pivots


@dataclass(frozen=True)
class Subspace:
    """Subspace of ``field^ambient_dim`` held in canonical (RREF) form."""

    field: Field
    ambient_dim: int
    basis: Matrix
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = list(vectors)
        for v in rows:
            if not isinstance(v, dict) and len(v) != ambient_dim:
                raise ValueError("vector of length %d in ambient dimension %d" % (len(v), ambient_dim))
        dense, pivots = _dense(_echelon(rows, ambient_dim, field), ambient_dim, field)
        return cls(field, ambient_dim, Matrix(field, dense, ambient_dim, _raw=True), tuple(pivots))

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Matrix(field, [], ambient_dim, _raw=True), ())

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Matrix.identity(field, ambient_dim), tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def vectors(self) -> list[tuple]:
        return list(self.basis.rows)

    def reduce(self, v: Sequence) -> tuple:
        """Remainder of ``v`` after clearing the pivot coordinates."""
        r = list(v)
        for k, p in enumerate(self.pivots):
            f = r[p]
            if f:
                for j, b in enumerate(self.basis.rows[k]):
                    if b:
                        r[j] = r[j] - f * b
        return tuple(r)

    def __contains__(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("vector of length %d in ambient dimension %d" % (len(v), self.ambient_dim))
        return not any(self.reduce(v))

    def coords(self, v: Sequence) -> tuple:
        """Coordinates of ``v`` in the canonical basis (the pivot entries)."""
        if v not in self:
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def from_coords(self, c: Sequence) -> tuple:
        if len(c) != self.dim:
            raise ValueError("expected %d coordinates" % self.dim)
        return self.basis.T.apply(c) if self.dim else (self.field.zero,) * self.ambient_dim

    def inclusion(self) -> Matrix:
        """The ambient_dim x dim matrix whose columns are the basis."""
        if self.dim == 0:
            return Matrix(self.field, [()] * self.ambient_dim, 0, _raw=True)
        return self.basis.T

    def coords_map(self) -> Matrix:
        """dim x ambient_dim matrix reading off pivot entries (valid on the subspace)."""
        z, o = self.field.zero, self.field.one
        return Matrix(self.field, [tuple(o if j == p else z for j in range(self.ambient_dim)) for p in self.pivots],
                      self.ambient_dim, _raw=True)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.ambient_dim, self.basis.rows + other.basis.rows)

    def perp(self) -> "Subspace":
        """Annihilator under the standard bilinear form."""
        return kernel(self.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return (self.perp() + other.perp()).perp()

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(v in other for v in self.basis.rows)

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            raise ValueError("subspaces live in different spaces")


def kernel(f: Matrix) -> Subspace:
    """Null space of ``f`` (vectors in the domain killed by f)."""
    piv = _echelon(f.rows, f.ncols, f.field)
    pivots = sorted(piv)
    free = [c for c in range(f.ncols) if c not in piv]
    vecs = []
    for c in free:
        v = {c: f.field.one}
        for p in pivots:
            x = piv[p].get(c)
            if x:
                v[p] = -x
        vecs.append(v)
    return Subspace.span(f.field, f.ncols, vecs)


def image(f: Matrix) -> Subspace:
    return Subspace.span(f.field, f.nrows, f.columns())


def is_injective(f: Matrix) -> bool:
    return f.rank() == f.ncols


def is_surjective(f: Matrix) -> bool:
    return f.rank() == f.nrows


def solve_affine(f: Matrix, b: Sequence) -> tuple[tuple, Subspace] | None:
    """Solve ``f x = b``; return ``(particular, kernel)`` or None if inconsistent."""
    if len(b) != f.nrows:
        raise ValueError("right-hand side has %d entries, map has %d rows" % (len(b), f.nrows))
    b = tuple(f.field(x) for x in b)
    piv = _echelon([row + (x,) for row, x in zip(f.rows, b)], f.ncols + 1, f.field)
    if f.ncols in piv:
        return None
    x = [f.field.zero] * f.ncols
    for p, row in piv.items():
        x[p] = row.get(f.ncols, f.field.zero)
    return tuple(x), kernel(f)


@dataclass(frozen=True)
class Quotient:
    """Quotient ``field^ambient_dim / sub`` with canonical coordinates."""

    sub: Subspace
    projection: Matrix
    section: Matrix
    complement: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.complement)


def quotient(ambient_dim: int, n: Subspace) -> Quotient:
    """Quotient coordinates are the non-pivot coordinates of ``n``'s basis."""
    if n.ambient_dim != ambient_dim:
        raise ValueError("subspace does not live in dimension %d" % ambient_dim)
    field = n.field
    z, o = field.zero, field.one
    comp = tuple(j for j in range(ambient_dim) if j not in set(n.pivots))
    pos = {j: i for i, j in enumerate(comp)}
    cols = []
    for j in range(ambient_dim):
        if j in pos:
            cols.append(tuple(o if i == pos[j] else z for i in range(len(comp))))
        else:
            k = n.pivots.index(j)
            row = n.basis.rows[k]
            cols.append(tuple(-row[c] for c in comp))
    proj = Matrix.from_columns(field, cols, len(comp))
    sec = Matrix(field, [tuple(o if pos.get(j) == i else z for i in range(len(comp))) for j in range(ambient_dim)],
                 len(comp), _raw=True)
    return Quotient(n, proj, sec, comp)


def induced_map(f: Matrix, src: Quotient, tgt: Quotient) -> Matrix:
    """Map ``V/N1 -> W/N2`` induced by ``f``; requires ``f(N1)`` inside ``N2``."""
    for v in src.sub.basis.rows:
        if f.apply(v) not in tgt.sub:
            raise ValueError("map does not send the subspace into the target subspace")
    return tgt.projection @ f @ src.section


@dataclass(frozen=True)
class AffineSolutions:
    """Solution set ``particular + span(kernel)`` of a linear matrix system."""

    particular: Matrix
    kernel: Subspace

    @property
    def shape(self) -> tuple[int, int]:
        return self.particular.shape

    @property
    def dim(self) -> int:
        return self.kernel.dim

    def directions(self) -> list[Matrix]:
        r, c = self.shape
        f = self.particular.field
        return [Matrix.unflatten(f, v, r, c) for v in self.kernel.basis.rows]

    def __contains__(self, x: Matrix) -> bool:
        return x.shape == self.shape and (x - self.particular).flatten() in self.kernel


def solve_matrix_equations(field: Field, nrows: int, ncols: int, equations) -> AffineSolutions | None:
    """Solve a system of equations ``sum_k A_k X B_k = C`` for the matrix X.

    ``equations`` is an iterable of ``(terms, rhs)`` where ``terms`` is a list
    of ``(A, B)`` pairs; ``A`` (r x nrows) or ``B`` (ncols x s) may be None for
    the identity, and ``rhs`` (r x s) may be None for zero.  X is solved for in
    row-major coordinates.  Returns None when the system is inconsistent.
    """
    nvar = nrows * ncols
    rows = []
    for terms, rhs in equations:
        out_r = out_c = None
        sparse = []
        for A, B in terms:
            r = nrows if A is None else A.nrows
            s = ncols if B is None else B.ncols
            if A is not None and A.ncols != nrows:
                raise ValueError("left factor has %d columns, X has %d rows" % (A.ncols, nrows))
            if B is not None and B.nrows != ncols:
                raise ValueError("right factor has %d rows, X has %d columns" % (B.nrows, ncols))
            if out_r is None:
                out_r, out_c = r, s
            elif (out_r, out_c) != (r, s):
                raise ValueError("inconsistent term shapes in one equation")
            a_nz = [[(i, i, None)] for i in range(r)] if A is None else \
                [[(i, c, x) for c, x in enumerate(A.rows[i]) if x] for i in range(r)]
            b_nz = [[(j, j, None)] for j in range(s)] if B is None else \
                [[(j, e, B.rows[e][j]) for e in range(ncols) if B.rows[e][j]] for j in range(s)]
            sparse.append((a_nz, b_nz))
        if out_r is None:
            continue
        if rhs is not None and rhs.shape != (out_r, out_c):
            raise ValueError("right-hand side shape %s, expected %s" % (rhs.shape, (out_r, out_c)))
        for a in range(out_r):
            for b in range(out_c):
                row: dict[int, object] = {}
                for a_nz, b_nz in sparse:
                    for _, c, x in a_nz[a]:
                        for _, e, y in b_nz[b]:
                            coef = field.one if x is None else x
                            if y is not None:
                                coef = coef * y
                            k = c * ncols + e
                            row[k] = row.get(k, 0) + coef
                rhs_v = field.zero if rhs is None else rhs.rows[a][b]
                if rhs_v:
                    row[nvar] = rhs_v
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    piv = _echelon(rows, nvar + 1, field)
    if nvar in piv:
        return None
    x = [field.zero] * nvar
    hom = {}
    for p, row in piv.items():
        x[p] = row.get(nvar, field.zero)
        hom[p] = {c: v for c, v in row.items() if c != nvar}
    free = [c for c in range(nvar) if c not in piv]
    vecs = []
    for c in free:
        v = {c: field.one}
        for p, row in hom.items():
            y = row.get(c)
            if y:
                v[p] = -y
        vecs.append(v)
    return AffineSolutions(Matrix.unflatten(field, x, nrows, ncols), Subspace.span(field, nvar, vecs))


def unit_vector(field: Field, n: int, i: int) -> tuple:
    z, o = field.zero, field.one
    return tuple(o if j == i else z for j in range(n))


def block_diag_repeat(m: Matrix, times: int) -> Matrix:
    """``I_times (x) m``."""
    return Matrix.identity(m.field, times).kron(m)
