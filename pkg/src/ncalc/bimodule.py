"""Bimodules over an :class:`~ncalc.algebra.Algebra` and the maps between them.

A bimodule of dimension m is given by one m x m matrix per algebra basis
element for each side: ``left[i]`` is ``v -> e_i . v`` and ``right[i]`` is
``v -> v . e_i``.  Right actions therefore compose through the opposite
algebra: ``right(rs) = right(s) @ right(r)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import Algebra, mu_map
from .checks import Report
from .linalg import (AffineSolutions, Matrix, Subspace, induced_map, is_injective, is_surjective, quotient,
                     solve_matrix_equations)

KINDS = ("left", "right", "bi")


@dataclass(frozen=True, eq=False)
class Bimodule:
    algebra: Algebra
    dim: int
    left: tuple[Matrix, ...]
    right: tuple[Matrix, ...]
    name: str = ""

    def __post_init__(self):
        n = self.algebra.dim
        if len(self.left) != n or len(self.right) != n:
            raise ValueError("need one action matrix per algebra basis element")
        for m in self.left + self.right:
            if m.shape != (self.dim, self.dim):
                raise ValueError("action matrix of shape %s in a %d-dimensional module" % (m.shape, self.dim))

    @property
    def field(self):
        return self.algebra.field

    def act_left(self, r: Sequence) -> Matrix:
        return _combine(self, r, self.left)

    def act_right(self, r: Sequence) -> Matrix:
        return _combine(self, r, self.right)

    def lmul(self, r: Sequence, v: Sequence) -> tuple:
        return self.act_left(r).apply(v)

    def rmul(self, v: Sequence, r: Sequence) -> tuple:
        return self.act_right(r).apply(v)

    def zero_vector(self) -> tuple:
        return (self.field.zero,) * self.dim

    def __repr__(self):
        return "Bimodule(%s, dim=%d over %s)" % (self.name or "?", self.dim, self.algebra.name or "?")


def _combine(M: Bimodule, r: Sequence, mats: Sequence[Matrix]) -> Matrix:
    out = Matrix.zeros(M.field, M.dim, M.dim)
    for x, m in zip(r, mats):
        if x:
            out = out + m.scale(x)
    return out


@dataclass(frozen=True, eq=False)
class BimoduleMap:
    source: Bimodule
    target: Bimodule
    matrix: Matrix
    kind: str = "bi"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError("kind must be one of %s" % (KINDS,))
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ValueError("map matrix has shape %s, expected %s" % (self.matrix.shape,
                                                                       (self.target.dim, self.source.dim)))

    def __call__(self, v):
        return self.matrix.apply(v)

    def compose(self, first: "BimoduleMap") -> "BimoduleMap":
        """``self o first``."""
        if first.target is not self.source:
            raise ValueError("maps are not composable")
        kinds = {self.kind, first.kind} - {"bi"}
        if len(kinds) > 1:
            raise ValueError("composite of a left map and a right map has no module kind")
        kind = kinds.pop() if kinds else "bi"
        return BimoduleMap(first.source, self.target, self.matrix @ first.matrix, kind)

    def is_injective(self) -> bool:
        return is_injective(self.matrix)

    def is_surjective(self) -> bool:
        return is_surjective(self.matrix)


def intertwining_violations(f: Matrix, src: Bimodule, tgt: Bimodule, side: str) -> list:
    """Basis labels r at which ``f`` fails to commute with the ``side`` action."""
    bad = []
    labels = src.algebra.labels
    if side in ("left", "bi"):
        for i, lab in enumerate(labels):
            if f @ src.left[i] != tgt.left[i] @ f:
                bad.append(("left", lab))
    if side in ("right", "bi"):
        for i, lab in enumerate(labels):
            if f @ src.right[i] != tgt.right[i] @ f:
                bad.append(("right", lab))
    return bad


def check_map(f: BimoduleMap) -> Report:
    rep = Report("%s map %s -> %s" % (f.kind, f.source.name or "?", f.target.name or "?"))
    rep.record("intertwines %s actions" % f.kind, intertwining_violations(f.matrix, f.source, f.target, f.kind))
    return rep


def check_bimodule(M: Bimodule) -> Report:
    """Unitality, left multiplicativity, right anti-multiplicativity, commutation."""
    a = M.algebra
    n = a.dim
    lab = a.labels
    rep = Report("bimodule %s" % (M.name or "?"))
    ident = Matrix.identity(M.field, M.dim)
    unit_bad = []
    if M.act_left(a.unit) != ident:
        unit_bad.append("left")
    if M.act_right(a.unit) != ident:
        unit_bad.append("right")
    rep.record("unitality", unit_bad)
    lbad, rbad, cbad = [], [], []
    for i in range(n):
        for j in range(n):
            eij = a.table[i][j]
            if M.left[i] @ M.left[j] != M.act_left(eij):
                lbad.append((lab[i], lab[j]))
            if M.right[j] @ M.right[i] != M.act_right(eij):
                rbad.append((lab[i], lab[j]))
            if M.left[i] @ M.right[j] != M.right[j] @ M.left[i]:
                cbad.append((lab[i], lab[j]))
    rep.record("left multiplicativity", lbad)
    rep.record("right multiplicativity", rbad)
    rep.record("left/right commutation", cbad)
    rep.info["dim"] = M.dim
    return rep


# ------------------------------------------------------------ constructions

def regular_bimodule(a: Algebra) -> Bimodule:
    """R as a bimodule over itself."""
    return Bimodule(a, a.dim, a.left_mult, a.right_mult, "R")


def bifree_square(a: Algebra) -> Bimodule:
    """R (x) R with r.(p (x) q).s = rp (x) qs; tensor index ``i * n + j``."""
    n = a.dim
    ident = Matrix.identity(a.field, n)
    left = tuple(L.kron(ident) for L in a.left_mult)
    right = tuple(ident.kron(R) for R in a.right_mult)
    return Bimodule(a, n * n, left, right, "R(x)R")


def zero_bimodule(a: Algebra) -> Bimodule:
    z = Matrix(a.field, [], 0, _raw=True)
    return Bimodule(a, 0, (z,) * a.dim, (z,) * a.dim, "0")


def restrict(M: Bimodule, S: Subspace, name: str = "") -> tuple[Bimodule, BimoduleMap]:
    """Sub-bimodule on ``S`` (coordinates = pivot entries) and its inclusion."""
    if S.ambient_dim != M.dim:
        raise ValueError("subspace is not inside the module")
    inc = S.inclusion()
    rd = S.coords_map()
    for mats, side in ((M.left, "left"), (M.right, "right")):
        for i, m in enumerate(mats):
            for v in S.basis.rows:
                if m.apply(v) not in S:
                    raise ValueError("subspace is not closed under the %s action of %s"
                                     % (side, M.algebra.labels[i]))
    left = tuple(rd @ m @ inc for m in M.left)
    right = tuple(rd @ m @ inc for m in M.right)
    sub = Bimodule(M.algebra, S.dim, left, right, name or "sub(%s)" % (M.name or "?"))
    return sub, BimoduleMap(sub, M, inc, "bi")


def restrict_operators(a: Algebra, S: Subspace, left: Sequence[Matrix], right: Sequence[Matrix],
                       name: str = "") -> Bimodule:
    """Bimodule on ``S`` from ambient operators that preserve it."""
    amb = Bimodule(a, S.ambient_dim, tuple(left), tuple(right), name)
    return restrict(amb, S, name)[0]


def sub_bimodule_closure(gens: Iterable[Sequence], M: Bimodule) -> Subspace:
    """Smallest subspace containing ``gens`` and stable under both actions."""
    gens = list(gens)
    S = Subspace.span(M.field, M.dim, gens)
    ops = M.left + M.right
    while True:
        new = [op.apply(v) for v in S.basis.rows for op in ops]
        T = Subspace.span(M.field, M.dim, list(S.basis.rows) + new)
        if T.dim == S.dim:
            return S
        S = T


def quotient_bimodule(M: Bimodule, N: Subspace, name: str = "") -> tuple[Bimodule, BimoduleMap]:
    """``M / N`` with induced actions, plus the projection (kernel exactly N)."""
    if N.ambient_dim != M.dim:
        raise ValueError("subspace is not inside the module")
    q = quotient(M.dim, N)
    try:
        left = tuple(induced_map(m, q, q) for m in M.left)
        right = tuple(induced_map(m, q, q) for m in M.right)
    except ValueError:
        raise ValueError("subspace is not a sub-bimodule") from None
    Q = Bimodule(M.algebra, q.dim, left, right, name or "%s/N" % (M.name or "?"))
    return Q, BimoduleMap(M, Q, q.projection, "bi")


def _intertwining_equations(src: Bimodule, tgt: Bimodule, kind: str):
    eqs = []
    n = src.algebra.dim
    if kind in ("left", "bi"):
        for i in range(n):
            eqs.append(([(tgt.left[i], None), (None, -src.left[i])], None))
    if kind in ("right", "bi"):
        for i in range(n):
            eqs.append(([(tgt.right[i], None), (None, -src.right[i])], None))
    return eqs


def solve_module_maps(M: Bimodule, N: Bimodule, kind: str) -> Subspace:
    """All maps M -> N of the given kind, as a subspace of row-major N.dim x M.dim matrices."""
    if M.algebra is not N.algebra:
        raise ValueError("modules over different algebras")
    if kind not in KINDS:
        raise ValueError("kind must be one of %s" % (KINDS,))
    sol = solve_matrix_equations(M.field, N.dim, M.dim, _intertwining_equations(M, N, kind))
    return sol.kernel


def module_maps(M: Bimodule, N: Bimodule, kind: str) -> list[BimoduleMap]:
    """Basis of :func:`solve_module_maps` as map objects."""
    space = solve_module_maps(M, N, kind)
    return [BimoduleMap(M, N, Matrix.unflatten(M.field, v, N.dim, M.dim), kind) for v in space.basis.rows]


def find_splitting(f: BimoduleMap, kind: str) -> BimoduleMap | None:
    """A section s with f o s = id of the requested kind, or None if none exists.

    None is a certificate: the full linear system has been shown inconsistent.
    """
    if not f.is_surjective():
        raise ValueError("find_splitting needs a surjective map")
    sol = splitting_space(f, kind)
    if sol is None:
        return None
    return BimoduleMap(f.target, f.source, sol.particular, kind)


def splitting_space(f: BimoduleMap, kind: str) -> AffineSolutions | None:
    """Every section of the requested kind (affine space), or None."""
    F = f.source.field
    eqs = _intertwining_equations(f.target, f.source, kind)
    eqs.append(([(f.matrix, None)], Matrix.identity(F, f.target.dim)))
    return solve_matrix_equations(F, f.source.dim, f.target.dim, eqs)


def mu_bimodule_map(a: Algebra) -> BimoduleMap:
    """Multiplication as a bimodule map from R (x) R onto R."""
    return BimoduleMap(bifree_square(a), regular_bimodule(a), mu_map(a), "bi")


# ---------------------------------------------------------------- braidings

@dataclass(frozen=True, eq=False)
class FreeModuleBraiding:
    """A linear map swapping R with a generator space V of dimension k.

    ``kind="beta"``: R (x) V -> V (x) R (index ``i*k + v`` -> ``v*n + j``),
    giving a left structure on the free right module V (x) R.
    ``kind="alpha"``: V (x) R -> R (x) V, giving a right structure on R (x) V.
    """

    algebra: Algebra
    k: int
    matrix: Matrix
    kind: str = "beta"

    def __post_init__(self):
        nk = self.algebra.dim * self.k
        if self.matrix.shape != (nk, nk):
            raise ValueError("braiding matrix must be %dx%d" % (nk, nk))
        if self.kind not in ("beta", "alpha"):
            raise ValueError("braiding kind must be 'beta' or 'alpha'")


def flip_braiding(a: Algebra, k: int, kind: str = "beta") -> FreeModuleBraiding:
    return twisted_flip(a, k, Matrix.identity(a.field, a.dim), kind)


def twisted_flip(a: Algebra, k: int, sigma: Matrix, kind: str = "beta") -> FreeModuleBraiding:
    """beta(r (x) v) = v (x) sigma(r), or alpha(v (x) r) = sigma(r) (x) v."""
    n = a.dim
    F = a.field
    cols = []
    for i in range(n):
        for v in range(k):
            col = [F.zero] * (n * k)
            for j in range(n):
                s = sigma.rows[j][i]
                if s:
                    col[v * n + j if kind == "beta" else j * k + v] = s
            cols.append(col)
    if kind == "beta":
        m = Matrix.from_columns(F, cols, n * k)
    else:
        # columns of alpha are indexed by (v, r) = v * n + i
        order = [None] * (n * k)
        for i in range(n):
            for v in range(k):
                order[v * n + i] = cols[i * k + v]
        m = Matrix.from_columns(F, order, n * k)
    return FreeModuleBraiding(a, k, m, kind)


def left_structure_from_braiding(braid: FreeModuleBraiding) -> tuple[Bimodule, Report]:
    """Bimodule on V (x) R with r.(v (x) s) = beta(r (x) v).s, plus validity."""
    if braid.kind != "beta":
        raise ValueError("left structures come from beta-braidings")
    a, k = braid.algebra, braid.k
    n, F = a.dim, a.field
    ident_k = Matrix.identity(F, k)
    right = tuple(ident_k.kron(R) for R in a.right_mult)
    left = []
    for i in range(n):
        cols = []
        for v in range(k):
            w = braid.matrix.column(i * k + v)
            for j in range(n):
                cols.append(right[j].apply(w))
        left.append(Matrix.from_columns(F, cols, n * k))
    M = Bimodule(a, n * k, tuple(left), right, "beta(V(x)R)")
    return M, _braiding_report(braid, M)


def right_structure_from_braiding(braid: FreeModuleBraiding) -> tuple[Bimodule, Report]:
    """Bimodule on R (x) V with (s (x) v).r = s.alpha(v (x) r), plus validity."""
    if braid.kind != "alpha":
        raise ValueError("right structures come from alpha-braidings")
    a, k = braid.algebra, braid.k
    n, F = a.dim, a.field
    ident_k = Matrix.identity(F, k)
    left = tuple(L.kron(ident_k) for L in a.left_mult)
    right = []
    for i in range(n):
        cols = [None] * (n * k)
        for v in range(k):
            w = braid.matrix.column(v * n + i)
            for j in range(n):
                cols[j * k + v] = left[j].apply(w)
        right.append(Matrix.from_columns(F, cols, n * k))
    M = Bimodule(a, n * k, left, tuple(right), "(R(x)V)alpha")
    return M, _braiding_report(braid, M)


def _braiding_report(braid: FreeModuleBraiding, M: Bimodule) -> Report:
    a, k = braid.algebra, braid.k
    n = a.dim
    rep = Report("%s-braiding, dim V = %d" % (braid.kind, k))
    bad = []
    for v in range(k):
        if braid.kind == "beta":
            got = braid.matrix.apply(tuple(x for u in a.unit for x in _e(a, k, v, u)))
            want = tuple(x for vv in range(k) for x in (a.unit if vv == v else a.zero()))
        else:
            got = braid.matrix.apply(tuple(x for vv in range(k) for x in (a.unit if vv == v else a.zero())))
            want = tuple(x for u in a.unit for x in _e(a, k, v, u))
        if got != want:
            bad.append(("v%d" % v,))
    rep.record("unit axiom", bad)
    rep.merge(check_bimodule(M), "induced bimodule")
    return rep


def _e(a: Algebra, k: int, v: int, coeff) -> tuple:
    F = a.field
    return tuple(coeff if w == v else F.zero for w in range(k))


def check_braiding_pair(alpha: FreeModuleBraiding, beta: FreeModuleBraiding) -> tuple[Report, BimoduleMap | None]:
    """Test beta = alpha^-1; if so, alpha is a bimodule iso beta(V(x)R) -> (R(x)V)alpha."""
    if alpha.kind != "alpha" or beta.kind != "beta" or alpha.k != beta.k or alpha.algebra is not beta.algebra:
        raise ValueError("need matching alpha- and beta-braidings")
    rep = Report("braiding pair, dim V = %d" % alpha.k)
    nk = alpha.algebra.dim * alpha.k
    ident = Matrix.identity(alpha.algebra.field, nk)
    inverse = rep.require("beta o alpha = id", beta.matrix @ alpha.matrix == ident)
    inverse &= rep.require("alpha o beta = id", alpha.matrix @ beta.matrix == ident)
    if not inverse:
        return rep, None
    M, rb = left_structure_from_braiding(beta)
    N, ra = right_structure_from_braiding(alpha)
    rep.merge(rb, "beta structure")
    rep.merge(ra, "alpha structure")
    iso = BimoduleMap(M, N, alpha.matrix, "bi")
    rep.record("alpha intertwines both actions", intertwining_violations(iso.matrix, M, N, "bi"))
    return rep, iso
