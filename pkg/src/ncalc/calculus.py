"""First-order differential calculi: universal calculus, quotients, Kaehler forms.

Elements of R (x) R use the tensor index ``i * n + j``.  The universal module
of one-forms is ker(mu) with the canonical RREF basis, so "ker mu
coordinates" below always means pivot entries of that basis.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra import Algebra, is_commutative, mu_map
from .bimodule import (Bimodule, BimoduleMap, FreeModuleBraiding, bifree_square, check_braiding_pair,
                       intertwining_violations, left_structure_from_braiding, quotient_bimodule, restrict,
                       right_structure_from_braiding, sub_bimodule_closure)
from .checks import InvariantViolation, Report
from .linalg import (AffineSolutions, Matrix, Quotient, Subspace, image, is_injective, is_surjective, kernel,
                     quotient, solve_matrix_equations)


@dataclass(frozen=True, eq=False)
class FODC:
    """A bimodule of one-forms with a differential ``d`` (omega.dim x n matrix)."""

    omega: Bimodule
    d: Matrix
    name: str = ""
    # sub-bimodule of ker(mu) (in ker mu coordinates) this calculus was cut out by
    relations: Subspace | None = None

    def __post_init__(self):
        if self.d.shape != (self.omega.dim, self.omega.algebra.dim):
            raise ValueError("differential must be a %dx%d matrix" % (self.omega.dim, self.omega.algebra.dim))

    @property
    def algebra(self) -> Algebra:
        return self.omega.algebra

    @property
    def dim(self) -> int:
        return self.omega.dim

    def differential(self, r: Sequence) -> tuple:
        return self.d.apply(r)

    def __repr__(self):
        return "FODC(%s, dim=%d over %s)" % (self.name or "?", self.dim, self.algebra.name or "?")


def tensor(a: Algebra, u: Sequence, v: Sequence) -> tuple:
    """u (x) v in R (x) R."""
    z = a.field.zero
    return tuple((x * y if x and y else z) for x in u for y in v)


def tensor_product_in_square(a: Algebra, u: Sequence, v: Sequence) -> tuple:
    """Product in the algebra R (x) R: (p (x) q)(s (x) t) = ps (x) qt."""
    n = a.dim
    out = [a.field.zero] * (n * n)
    nzu = [(k, x) for k, x in enumerate(u) if x]
    nzv = [(k, x) for k, x in enumerate(v) if x]
    for ku, x in nzu:
        p, q = divmod(ku, n)
        for kv, y in nzv:
            s, t = divmod(kv, n)
            left = a.table[p][s]
            right = a.table[q][t]
            xy = x * y
            for i, c in enumerate(left):
                if not c:
                    continue
                for j, e in enumerate(right):
                    if e:
                        out[i * n + j] = out[i * n + j] + xy * c * e
    return tuple(out)


def validate_fodc(f: FODC) -> Report:
    """Leibniz rule and d(1) = 0 on basis pairs, and generation of omega by dR."""
    a = f.algebra
    M = f.omega
    n = a.dim
    lab = a.labels
    rep = Report("FODC %s" % (f.name or "?"))
    rep.require("d(1) = 0", not any(f.d.apply(a.unit)), "d(1) = %s" % (f.d.apply(a.unit),))
    cols = f.d.columns()
    bad = []
    for i in range(n):
        for j in range(n):
            lhs = f.d.apply(a.table[i][j])
            rhs = tuple(x + y for x, y in zip(M.right[j].apply(cols[i]), M.left[i].apply(cols[j])))
            if lhs != rhs:
                bad.append((lab[i], lab[j]))
    rep.record("Leibniz", bad)
    gen = sub_bimodule_closure(cols, M)
    rep.require("generated by dR as bimodule", gen.dim == M.dim,
                "generated dimension %d of %d" % (gen.dim, M.dim))
    rgen = Subspace.span(M.field, M.dim, [M.right[j].apply(c) for c in cols for j in range(n)])
    rep.require("generated by dR as right module", rgen.dim == M.dim,
                "right span dimension %d of %d" % (rgen.dim, M.dim))
    rep.info["dim"] = M.dim
    return rep


def require_valid(f: FODC) -> None:
    rep = validate_fodc(f)
    if not rep.ok:
        raise InvariantViolation(rep)


# ------------------------------------------------------------ universal calculus

@lru_cache(maxsize=None)
def kernel_of_mu(a: Algebra) -> Subspace:
    """ker(mu) inside R (x) R, canonical basis."""
    return kernel(mu_map(a))


def d_mu_ambient(a: Algebra) -> Matrix:
    """r -> r (x) 1 - 1 (x) r as an n^2 x n matrix."""
    cols = []
    for i in range(a.dim):
        e = a.basis(i)
        cols.append(tuple(x - y for x, y in zip(tensor(a, e, a.unit), tensor(a, a.unit, e))))
    return Matrix.from_columns(a.field, cols, a.dim * a.dim)


@lru_cache(maxsize=None)
def universal_kernel_calculus(a: Algebra) -> FODC:
    K = kernel_of_mu(a)
    omega, _ = restrict(bifree_square(a), K, "ker(mu)")
    d = K.coords_map() @ d_mu_ambient(a)
    return FODC(omega, d, "universal", Subspace.zero(a.field, K.dim))


def kernel_inclusion(a: Algebra) -> BimoduleMap:
    """The inclusion ker(mu) -> R (x) R as a bimodule map."""
    K = kernel_of_mu(a)
    return BimoduleMap(universal_kernel_calculus(a).omega, bifree_square(a), K.inclusion(), "bi")


def to_kernel_coords(a: Algebra, v: Sequence) -> tuple:
    K = kernel_of_mu(a)
    v = tuple(a.field(x) for x in v)
    if len(v) != a.dim ** 2:
        raise ValueError("element of R(x)R needs %d coordinates, got %d" % (a.dim ** 2, len(v)))
    if v not in K:
        raise ValueError("element is not in ker(mu)")
    return K.coords(v)


@dataclass(frozen=True, eq=False)
class BarredPresentations:
    """The two braided presentations of the universal calculus and connecting maps.

    ``bar`` is the quotient R -> R/k1 (its section picks representatives).
    Matrices: ``frak_i``: Rbar(x)R -> R(x)R, ``frak_t``: R(x)Rbar -> R(x)R,
    ``chi``: R(x)Rbar -> Rbar(x)R, ``gamma``: Rbar(x)R -> R(x)Rbar,
    ``d_tensor_id``: R(x)R -> Rbar(x)R.
    """

    algebra: Algebra
    bar: Quotient
    chi_fodc: FODC
    gamma_fodc: FODC
    frak_i: Matrix
    frak_t: Matrix
    chi: Matrix
    gamma: Matrix
    d_tensor_id: Matrix
    chi_braiding: FreeModuleBraiding
    gamma_braiding: FreeModuleBraiding

    @property
    def iso_chi_kernel(self) -> BimoduleMap:
        a = self.algebra
        K = kernel_of_mu(a)
        return BimoduleMap(self.chi_fodc.omega, universal_kernel_calculus(a).omega, K.coords_map() @ self.frak_i)

    @property
    def iso_gamma_kernel(self) -> BimoduleMap:
        a = self.algebra
        K = kernel_of_mu(a)
        return BimoduleMap(self.gamma_fodc.omega, universal_kernel_calculus(a).omega, K.coords_map() @ self.frak_t)

    @property
    def iso_chi_gamma(self) -> BimoduleMap:
        return BimoduleMap(self.chi_fodc.omega, self.gamma_fodc.omega, self.gamma)


@lru_cache(maxsize=None)
def barred_presentations(a: Algebra) -> BarredPresentations:
    n, F = a.dim, a.field
    bar = quotient(n, Subspace.span(F, n, [a.unit]))
    k = bar.dim
    D = bar.projection
    reps = [bar.section.column(b) for b in range(k)]
    z = F.zero

    def bar_tensor(rb, s):  # Rbar (x) R, index b * n + j
        return tuple((x * y if x and y else z) for x in rb for y in s)

    def tensor_bar(r, sb):  # R (x) Rbar, index i * k + b
        return tuple((x * y if x and y else z) for x in r for y in sb)

    def sub(u, v):
        return tuple(x - y for x, y in zip(u, v))

    # chi(r (x) sbar) = bar(rs) (x) 1 - bar(r) (x) s, columns indexed i * k + b
    chi_cols = []
    for i in range(n):
        e = a.basis(i)
        for b in range(k):
            s = reps[b]
            chi_cols.append(sub(bar_tensor(D.apply(a.mul(e, s)), a.unit), bar_tensor(D.apply(e), s)))
    chi = Matrix.from_columns(F, chi_cols, k * n)
    # gamma(rbar (x) s) = 1 (x) bar(rs) - r (x) bar(s), columns indexed b * n + j
    gamma_cols = []
    for b in range(k):
        r = reps[b]
        for j in range(n):
            e = a.basis(j)
            gamma_cols.append(sub(tensor_bar(a.unit, D.apply(a.mul(r, e))), tensor_bar(r, D.apply(e))))
    gamma = Matrix.from_columns(F, gamma_cols, n * k)
    # I(rbar (x) s) = r (x) s - 1 (x) rs
    fi_cols = []
    for b in range(k):
        r = reps[b]
        for j in range(n):
            e = a.basis(j)
            fi_cols.append(sub(tensor(a, r, e), tensor(a, a.unit, a.mul(r, e))))
    frak_i = Matrix.from_columns(F, fi_cols, n * n)
    # T(r (x) tbar) = rt (x) 1 - r (x) t
    ft_cols = []
    for i in range(n):
        e = a.basis(i)
        for b in range(k):
            t = reps[b]
            ft_cols.append(sub(tensor(a, a.mul(e, t), a.unit), tensor(a, e, t)))
    frak_t = Matrix.from_columns(F, ft_cols, n * n)

    chi_b = FreeModuleBraiding(a, k, chi, "beta")
    gamma_b = FreeModuleBraiding(a, k, gamma, "alpha")
    chi_mod, _ = left_structure_from_braiding(chi_b)
    gamma_mod, _ = right_structure_from_braiding(gamma_b)
    chi_mod = Bimodule(a, chi_mod.dim, chi_mod.left, chi_mod.right, "chi(Rbar(x)R)")
    gamma_mod = Bimodule(a, gamma_mod.dim, gamma_mod.left, gamma_mod.right, "(R(x)Rbar)gamma")
    d_chi = Matrix.from_columns(F, [bar_tensor(D.apply(a.basis(i)), a.unit) for i in range(n)], k * n)
    d_gamma = Matrix.from_columns(F, [tensor_bar(a.unit, D.apply(a.basis(i))) for i in range(n)], n * k)
    d_tensor_id = D.kron(Matrix.identity(F, n))
    return BarredPresentations(a, bar, FODC(chi_mod, d_chi, "D(x)1"), FODC(gamma_mod, d_gamma, "1(x)D"),
                               frak_i, frak_t, chi, gamma, d_tensor_id, chi_b, gamma_b)


def check_universal_presentations(a: Algebra) -> Report:
    """The three universal calculi are isomorphic FODCs via I, T and the braidings."""
    bp = barred_presentations(a)
    uni = universal_kernel_calculus(a)
    K = kernel_of_mu(a)
    F = a.field
    rep = Report("universal presentations of %s" % (a.name or "?"))
    rep.require("dim ker(mu) = n^2 - n", K.dim == a.dim ** 2 - a.dim, K.dim)
    rep.require("1(x)1 not in ker(mu)", tensor(a, a.unit, a.unit) not in K)
    rep.merge(validate_fodc(uni), "ker(mu), d_mu")
    rep.merge(validate_fodc(bp.chi_fodc), "chi(Rbar(x)R), D(x)1")
    rep.merge(validate_fodc(bp.gamma_fodc), "(R(x)Rbar)gamma, 1(x)D")
    m = bp.chi.nrows
    ident = Matrix.identity(F, m)
    rep.require("chi o gamma = id", bp.chi @ bp.gamma == ident)
    rep.require("gamma o chi = id", bp.gamma @ bp.chi == ident)
    rep.require("T o gamma = I", bp.frak_t @ bp.gamma == bp.frak_i)
    rep.require("image(I) = ker(mu)", image(bp.frak_i) == K)
    rep.require("(D(x)id) o I = id", bp.d_tensor_id @ bp.frak_i == ident)
    for label, iso, src, tgt in (("I", bp.iso_chi_kernel, bp.chi_fodc, uni),
                                 ("gamma", bp.iso_chi_gamma, bp.chi_fodc, bp.gamma_fodc),
                                 ("T", bp.iso_gamma_kernel, bp.gamma_fodc, uni)):
        rep.record("%s is a bimodule map" % label, intertwining_violations(iso.matrix, iso.source, iso.target, "bi"))
        rep.require("%s is bijective" % label, is_injective(iso.matrix) and is_surjective(iso.matrix))
        rep.require("%s carries differential to differential" % label, iso.matrix @ src.d == tgt.d)
    lemma, _ = check_braiding_pair(bp.gamma_braiding, bp.chi_braiding)
    rep.merge(lemma, "braiding pair (gamma, chi)")
    return rep


# ------------------------------------------------------------ quotients

def quotient_fodc(a: Algebra, gens: Iterable[Sequence], name: str = "") -> FODC:
    """ker(mu) / (sub-bimodule generated by gens), with d = pi o d_mu.

    ``gens`` are elements of R (x) R (n^2 coordinates) lying in ker(mu).
    """
    uni = universal_kernel_calculus(a)
    kc = [to_kernel_coords(a, g) for g in gens]
    N = sub_bimodule_closure(kc, uni.omega)
    Q, pi = quotient_bimodule(uni.omega, N, name or "ker(mu)/N")
    return FODC(Q, pi.matrix @ uni.d, name or "quotient", N)


def quotient_map(f: FODC) -> BimoduleMap:
    """Canonical projection ker(mu) -> omega for calculi built by :func:`quotient_fodc`."""
    if f.relations is None:
        raise ValueError("calculus does not record its relations")
    uni = universal_kernel_calculus(f.algebra)
    return BimoduleMap(uni.omega, f.omega, quotient(uni.omega.dim, f.relations).projection)


def universal_projection(f: FODC) -> BimoduleMap:
    """The bimodule epimorphism ker(mu) -> omega with d = pi o d_mu.

    On ker(mu), sum r_i (x) s_i = sum d_mu(r_i).s_i, so the projection is
    sum d(r_i).s_i, equivalently -sum r_i.d(s_i).  Raises
    :class:`InvariantViolation` if f is not an FODC or a property fails.
    """
    require_valid(f)
    a = f.algebra
    n = a.dim
    M = f.omega
    K = kernel_of_mu(a)
    cols_right = []
    cols_left = []
    dcols = f.d.columns()
    for i in range(n):
        for j in range(n):
            cols_right.append(M.right[j].apply(dcols[i]))
            cols_left.append(tuple(-x for x in M.left[i].apply(dcols[j])))
    inc = K.inclusion()
    pi_right = Matrix.from_columns(a.field, cols_right, M.dim) @ inc
    pi_left = Matrix.from_columns(a.field, cols_left, M.dim) @ inc
    uni = universal_kernel_calculus(a)
    pi = BimoduleMap(uni.omega, M, pi_right, "bi")
    rep = Report("universal projection onto %s" % (f.name or "?"))
    rep.require("sum d(r).s = -sum r.d(s) on ker(mu)", pi_right == pi_left)
    rep.record("bimodule map", intertwining_violations(pi.matrix, uni.omega, M, "bi"))
    rep.require("surjective", is_surjective(pi.matrix))
    rep.require("d = pi o d_mu", pi.matrix @ uni.d == f.d)
    if not rep.ok:
        raise InvariantViolation(rep)
    return pi


def inner_differential(M: Bimodule, omega: Sequence) -> tuple[FODC, Report, FODC]:
    """d(a) = a.w - w.a; returns (candidate on M, its report, FODC on the generated part)."""
    a = M.algebra
    w = tuple(a.field(x) for x in omega)
    cols = [tuple(x - y for x, y in zip(M.left[i].apply(w), M.right[i].apply(w))) for i in range(a.dim)]
    d = Matrix.from_columns(a.field, cols, M.dim)
    cand = FODC(M, d, "inner")
    rep = validate_fodc(cand)
    S = sub_bimodule_closure(cols, M)
    sub, _ = restrict(M, S, "generated by [R, w]")
    honest = FODC(sub, S.coords_map() @ d, "inner (generated)")
    rep.info["generated dim"] = S.dim
    return cand, rep, honest


def kaehler_calculus(a: Algebra) -> FODC:
    """ker(mu) / (ker mu)^2 for commutative algebras."""
    if not is_commutative(a):
        raise ValueError("Kaehler differentials need a commutative algebra")
    K = kernel_of_mu(a)
    vecs = K.vectors()
    prods = [tensor_product_in_square(a, u, v) for i, u in enumerate(vecs) for v in vecs[i:]]
    f = quotient_fodc(a, prods, "kaehler")
    sym = [i for i in range(a.dim) if f.omega.left[i] != f.omega.right[i]]
    if sym:
        rep = Report("Kaehler calculus")
        rep.record("left and right actions coincide", [(a.labels[i],) for i in sym])
        raise InvariantViolation(rep)
    return f


def fodc_morphisms(f1: FODC, f2: FODC) -> AffineSolutions | None:
    """All bimodule maps L: omega1 -> omega2 with d2 = L o d1 (None if there are none)."""
    if f1.algebra is not f2.algebra:
        raise ValueError("calculi over different algebras")
    M, N = f1.omega, f2.omega
    eqs = []
    for i in range(f1.algebra.dim):
        eqs.append(([(N.left[i], None), (None, -M.left[i])], None))
        eqs.append(([(N.right[i], None), (None, -M.right[i])], None))
    eqs.append(([(None, f1.d)], f2.d))
    return solve_matrix_equations(f1.algebra.field, N.dim, M.dim, eqs)


def random_generator_set(a: Algebra, rng: random.Random, max_gens: int = 2) -> list[tuple]:
    """A few sparse elements of ker(mu) with coefficients drawn from -2..2."""
    K = kernel_of_mu(a)
    basis = K.vectors()
    F = a.field
    gens = []
    for _ in range(rng.randint(0, max_gens)):
        support = rng.sample(range(len(basis)), min(len(basis), rng.randint(1, 2)))
        v = [F.zero] * (a.dim ** 2)
        for b in support:
            c = F(rng.randint(-2, 2))
            v = [x + c * y for x, y in zip(v, basis[b])]
        gens.append(tuple(v))
    return gens
