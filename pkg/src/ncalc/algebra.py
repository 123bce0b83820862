"""Finite-dimensional unital associative algebras given by structure constants."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .checks import Report
from .linalg import QQ, Field, Matrix, Subspace, kernel, unit_vector


@dataclass(frozen=True, eq=False)
class Algebra:
    """Algebra with basis e_0..e_{n-1} and ``e_i e_j = sum_k table[i][j][k] e_k``.

    Instances compare by identity; use :meth:`same_structure` to compare tables.
    """

    field: Field
    labels: tuple[str, ...]
    table: tuple[tuple[tuple, ...], ...]
    unit: tuple
    name: str = ""

    @classmethod
    def from_triples(cls, field: Field, labels: Sequence[str], unit: Sequence, triples, name: str = "") -> "Algebra":
        """Build from sparse ``(i, j, k, coeff)`` entries; omitted entries are zero."""
        n = len(labels)
        t = [[[field.zero] * n for _ in range(n)] for _ in range(n)]
        for i, j, k, c in triples:
            t[i][j][k] = t[i][j][k] + field(c)
        table = tuple(tuple(tuple(t[i][j]) for j in range(n)) for i in range(n))
        return cls(field, tuple(labels), table, tuple(field(u) for u in unit), name)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def c(self, i: int, j: int, k: int):
        return self.table[i][j][k]

    def basis(self, i: int) -> tuple:
        return unit_vector(self.field, self.dim, i)

    def one(self) -> tuple:
        return self.unit

    def zero(self) -> tuple:
        return (self.field.zero,) * self.dim

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def mul(self, u: Sequence, v: Sequence) -> tuple:
        n = self.dim
        out = [self.field.zero] * n
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self.table[i][j]):
                    if c:
                        out[k] = out[k] + ab * c
        return tuple(out)

    @cached_property
    def left_mult(self) -> tuple[Matrix, ...]:
        """``left_mult[i]`` is the matrix of s -> e_i s."""
        n = self.dim
        return tuple(Matrix.from_columns(self.field, [self.table[i][j] for j in range(n)], n) for i in range(n))

    @cached_property
    def right_mult(self) -> tuple[Matrix, ...]:
        """``right_mult[i]`` is the matrix of s -> s e_i."""
        n = self.dim
        return tuple(Matrix.from_columns(self.field, [self.table[j][i] for j in range(n)], n) for i in range(n))

    def left_matrix(self, r: Sequence) -> Matrix:
        return _combine(self.field, self.dim, r, self.left_mult)

    def right_matrix(self, r: Sequence) -> Matrix:
        return _combine(self.field, self.dim, r, self.right_mult)

    def element(self, label_or_coords) -> "Element":
        if isinstance(label_or_coords, str):
            return Element(self, self.basis(self.index(label_or_coords)))
        return Element(self, tuple(self.field(x) for x in label_or_coords))

    def same_structure(self, other: "Algebra") -> bool:
        return self.field == other.field and self.table == other.table and self.unit == other.unit

    def format_vector(self, v: Sequence) -> str:
        terms = []
        for x, lab in zip(v, self.labels):
            if x:
                terms.append(lab if x == 1 else "%s*%s" % (x, lab))
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return "Algebra(%s, dim=%d, field=%s)" % (self.name or "?", self.dim, self.field.name)


@dataclass(frozen=True)
class Element:
    """Convenience wrapper for arithmetic with algebra elements."""

    algebra: Algebra
    coords: tuple

    def __add__(self, other):
        other = self._lift(other)
        return Element(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return Element(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return Element(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, Element):
            return Element(self.algebra, self.algebra.mul(self.coords, other.coords))
        c = self.algebra.field(other)
        return Element(self.algebra, tuple(c * a for a in self.coords))

    def __rmul__(self, other):
        c = self.algebra.field(other)
        return Element(self.algebra, tuple(c * a for a in self.coords))

    def __pow__(self, k: int):
        out = Element(self.algebra, self.algebra.one())
        for _ in range(k):
            out = out * self
        return out

    def _lift(self, other):
        if isinstance(other, Element):
            return other
        c = self.algebra.field(other)
        return Element(self.algebra, tuple(c * u for u in self.algebra.unit))

    def __str__(self):
        return self.algebra.format_vector(self.coords)


def _combine(field: Field, n: int, r: Sequence, mats: Sequence[Matrix]) -> Matrix:
    out = Matrix.zeros(field, n, n)
    for x, m in zip(r, mats):
        if x:
            out = out + m.scale(x)
    return out


def validate_algebra(a: Algebra) -> Report:
    """Check associativity and the two unit laws on basis elements."""
    rep = Report("algebra %s" % (a.name or "?"))
    n = a.dim
    lab = a.labels
    bad = []
    for i in range(n):
        for j in range(n):
            eij = a.table[i][j]
            for k in range(n):
                left = a.mul(eij, a.basis(k))
                right = a.mul(a.basis(i), a.table[j][k])
                if left != right:
                    bad.append((lab[i], lab[j], lab[k]))
    rep.record("associativity", bad)
    unit_bad = []
    for i in range(n):
        e = a.basis(i)
        if a.mul(a.unit, e) != e:
            unit_bad.append(("1*" + lab[i],))
        if a.mul(e, a.unit) != e:
            unit_bad.append((lab[i] + "*1",))
    rep.record("unit", unit_bad)
    rep.info["dim"] = n
    return rep


def mu_map(a: Algebra) -> Matrix:
    """Multiplication R (x) R -> R; tensor basis index ``i * n + j``."""
    n = a.dim
    return Matrix.from_columns(a.field, [a.table[i][j] for i in range(n) for j in range(n)], n)


def opposite(a: Algebra) -> Algebra:
    n = a.dim
    table = tuple(tuple(a.table[j][i] for j in range(n)) for i in range(n))
    return Algebra(a.field, a.labels, table, a.unit, (a.name or "R") + "^op")


def center(a: Algebra) -> Subspace:
    """``{z : z e_i = e_i z for every basis element}``."""
    n = a.dim
    eqs = None
    for i in range(n):
        # z e_i - e_i z as a linear map of z
        m = a.right_mult[i] - a.left_mult[i]
        eqs = m if eqs is None else eqs.vstack(m)
    if eqs is None:
        return Subspace.zero(a.field, 0)
    return kernel(eqs)


def is_commutative(a: Algebra) -> bool:
    return center(a).dim == a.dim


# ---------------------------------------------------------------- builtins

def truncated_polynomial(m: int, field: Field = QQ) -> Algebra:
    """k[x]/(x^m) with basis 1, x, ..., x^(m-1)."""
    if not isinstance(m, int) or m < 1:
        raise ValueError("truncated_polynomial needs m >= 1, got %r" % (m,))
    labels = ["1"] + ["x" if i == 1 else "x^%d" % i for i in range(1, m)]
    triples = [(i, j, i + j, 1) for i in range(m) for j in range(m) if i + j < m]
    return Algebra.from_triples(field, labels, unit_vector(field, m, 0), triples, "truncated_polynomial(%d)" % m)


def matrix_algebra(k: int, field: Field = QQ) -> Algebra:
    """M_k with matrix units E_ab at index ``a * k + b`` (1-based labels)."""
    if not isinstance(k, int) or k < 1:
        raise ValueError("matrix_algebra needs k >= 1, got %r" % (k,))
    labels = ["E%d%d" % (a + 1, b + 1) if k < 10 else "E%d_%d" % (a + 1, b + 1) for a in range(k) for b in range(k)]
    triples = [(a * k + b, b * k + d, a * k + d, 1) for a in range(k) for b in range(k) for d in range(k)]
    unit = [1 if a == b else 0 for a in range(k) for b in range(k)]
    return Algebra.from_triples(field, labels, unit, triples, "matrix_algebra(%d)" % k)


def cyclic_group_algebra(m: int, field: Field = QQ) -> Algebra:
    """k[Z_m] with basis g^0, ..., g^(m-1)."""
    if not isinstance(m, int) or m < 1:
        raise ValueError("cyclic_group_algebra needs m >= 1, got %r" % (m,))
    labels = ["1"] + ["g" if i == 1 else "g^%d" % i for i in range(1, m)]
    triples = [(i, j, (i + j) % m, 1) for i in range(m) for j in range(m)]
    return Algebra.from_triples(field, labels, unit_vector(field, m, 0), triples, "cyclic_group_algebra(%d)" % m)


def quantum_plane(q, N: int, field: Field = QQ) -> Algebra:
    """k<x, y>/(xy - q yx, x^N, y^N), basis x^a y^b at index ``b * N + a``."""
    if not isinstance(N, int) or N < 1:
        raise ValueError("quantum_plane needs N >= 1, got %r" % (N,))
    q = field(q)
    if not q:
        raise ValueError("quantum_plane needs q != 0")
    qinv = field.one / q

    def label(a, b):
        xs = "" if a == 0 else ("x" if a == 1 else "x^%d" % a)
        ys = "" if b == 0 else ("y" if b == 1 else "y^%d" % b)
        return (xs + ys) or "1"

    idx = lambda a, b: b * N + a
    labels = [None] * (N * N)
    for a in range(N):
        for b in range(N):
            labels[idx(a, b)] = label(a, b)
    triples = []
    for a in range(N):
        for b in range(N):
            for c in range(N):
                for d in range(N):
                    if a + c < N and b + d < N:
                        # y^b x^c = q^(-bc) x^c y^b
                        triples.append((idx(a, b), idx(c, d), idx(a + c, b + d), qinv ** (b * c)))
    return Algebra.from_triples(field, labels, unit_vector(field, N * N, 0), triples,
                                "quantum_plane(%s,%d)" % (q, N))


BUILTINS = {
    "truncated_polynomial": (truncated_polynomial, ("m",)),
    "matrix_algebra": (matrix_algebra, ("k",)),
    "cyclic_group_algebra": (cyclic_group_algebra, ("m",)),
    "quantum_plane": (quantum_plane, ("q", "N")),
}


def builtin(kind: str, field: Field = QQ, **params) -> Algebra:
    """Construct a builtin family member, e.g. ``builtin("quantum_plane", q="-1", N=2)``."""
    if kind not in BUILTINS:
        raise ValueError("unknown builtin %r (known: %s)" % (kind, ", ".join(sorted(BUILTINS))))
    fn, names = BUILTINS[kind]
    missing = [p for p in names if p not in params]
    extra = [p for p in params if p not in names]
    if missing or extra:
        raise ValueError("builtin %s takes parameters %s" % (kind, ", ".join(names)))
    return fn(**params, field=field)


def corpus(field: Field = QQ) -> list[Algebra]:
    """The five algebras the invariant suite is checked on."""
    return [
        truncated_polynomial(2, field),
        truncated_polynomial(3, field),
        matrix_algebra(2, field),
        cyclic_group_algebra(3, field),
        quantum_plane(-1, 2, field),
    ]
