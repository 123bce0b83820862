"""The invariant suite: one function per criterion, each returning a Report for one algebra.

Parts that do not apply are skipped inside a criterion (the Kaehler
comparison needs a commutative algebra, the lambda-family needs the dual
numbers).  Known values for the builtin corpus over Q are checked in
addition to the structural identities.
"""
from __future__ import annotations

import random
from typing import Callable

from .algebra import Algebra, corpus, is_commutative, truncated_polynomial
from .bimodule import (BimoduleMap, bifree_square, check_braiding_pair, find_splitting, intertwining_violations,
                       left_structure_from_braiding, mu_bimodule_map, regular_bimodule, twisted_flip)
from .calculus import (barred_presentations, check_universal_presentations, kaehler_calculus, kernel_of_mu,
                       quotient_fodc, quotient_map, random_generator_set, tensor, to_kernel_coords,
                       universal_kernel_calculus, universal_projection, validate_fodc)
from .checks import InvariantViolation, Report
from .duality import (cartan_from_fodc, derivations, dual, pairing_adjunction_violations, right_dual, transpose,
                      universal_cartan, universal_splitting, validate_cartan_pair)
from .linalg import QQ, Matrix, image, is_injective, solve_matrix_equations

RANDOM_QUOTIENTS = 20
LAMBDAS = (0, 1, 2, -1)

# values known for the builtin corpus over Q
EXPECTED = {
    "truncated_polynomial(2)": {"ker_mu": 2, "bimodule_section": False, "derivations": 1, "kaehler": 1},
    "truncated_polynomial(3)": {"ker_mu": 6, "bimodule_section": False, "derivations": 2, "kaehler": 2},
    "matrix_algebra(2)": {"ker_mu": 12, "bimodule_section": True, "derivations": 3},
    "cyclic_group_algebra(3)": {"ker_mu": 6, "bimodule_section": True, "derivations": 0, "kaehler": 0},
    "quantum_plane(-1,2)": {"ker_mu": 12},
}

TITLES = {
    1: "universal dimension",
    2: "three presentations of the universal calculus",
    3: "random quotients and the universal projection",
    4: "Cartan pairs of calculi",
    5: "universal Cartan pair",
    6: "splitting of End(R)",
    7: "sections of multiplication",
    8: "commutative oracle",
    9: "duality functor",
    10: "braidings",
}


def expected_values(a: Algebra) -> dict:
    if a.field != QQ:
        return {}
    for b in corpus(QQ):
        if b.same_structure(a):
            return EXPECTED.get(b.name, {})
    return {}


def is_dual_numbers(a: Algebra) -> bool:
    return a.same_structure(truncated_polynomial(2, a.field))


def random_quotients(a: Algebra, seed: int = 0, count: int = RANDOM_QUOTIENTS) -> list:
    rng = random.Random("%d:%s" % (seed, a.name))
    return [quotient_fodc(a, random_generator_set(a, rng), "quotient %d" % t) for t in range(count)]


def _expect(rep: Report, exp: dict, key: str, got, label: str):
    if key in exp:
        rep.require("%s = %s (known value)" % (label, exp[key]), got == exp[key], got)


def c1_universal_dimension(a: Algebra, seed: int = 0) -> Report:
    rep = Report(TITLES[1])
    K = kernel_of_mu(a)
    n = a.dim
    rep.require("dim ker(mu) = n^2 - n", K.dim == n * n - n, K.dim)
    _expect(rep, expected_values(a), "ker_mu", K.dim, "dim ker(mu)")
    rep.info["dim ker(mu)"] = K.dim
    return rep


def c2_presentations(a: Algebra, seed: int = 0) -> Report:
    rep = Report(TITLES[2])
    return rep.merge(check_universal_presentations(a), "presentations")


def c3_quotients(a: Algebra, seed: int = 0) -> Report:
    rep = Report(TITLES[3])
    invalid, proj_bad = [], []
    dims = []
    for t, f in enumerate(random_quotients(a, seed)):
        dims.append(f.dim)
        if not validate_fodc(f).ok:
            invalid.append(t)
            continue
        try:
            pi = universal_projection(f)
        except InvariantViolation:
            proj_bad.append(t)
            continue
        if pi.matrix != quotient_map(f).matrix:
            proj_bad.append(t)
    rep.record("every quotient is an FODC", invalid)
    rep.record("universal projection is an epimorphism with d = pi o d_mu", proj_bad)
    rep.info["quotient dims"] = dims
    return rep


def _dual_numbers_functionals(a: Algebra) -> Report:
    """phi_p with phi(x(x)1 - 1(x)x) = p, phi(x(x)x) = p x acts by x -> p, 1 -> 0."""
    rep = Report("dual numbers functionals")
    F = a.field
    one, x = a.basis(0), a.basis(1)
    e1 = tuple(u - v for u, v in zip(tensor(a, x, one), tensor(a, one, x)))
    e2 = tensor(a, x, x)
    uni = universal_kernel_calculus(a)
    D = right_dual(uni.omega)
    cp = cartan_from_fodc(uni, "right", D)
    basis = Matrix.from_columns(F, [to_kernel_coords(a, e1), to_kernel_coords(a, e2)], 2)
    bad = []
    for p in (one, x):
        rhs = Matrix.from_columns(F, [p, a.mul(p, x)], 2)
        sol = solve_matrix_equations(F, 2, 2, [([(None, basis)], rhs)])
        phi = sol.particular
        try:
            c = D.coords(phi)
        except ValueError:
            bad.append((a.format_vector(p), "not right-linear"))
            continue
        A = cp.endomorphism(c)
        if A.apply(x) != p or any(A.apply(one)):
            bad.append((a.format_vector(p), "action"))
    rep.record("phi_p(x) = p and phi_p(1) = 0 for p in {1, x}", bad)
    rep.require("dim (ker mu)^R = 2", D.dim == 2, D.dim)
    return rep


def c4_cartan_of_calculi(a: Algebra, seed: int = 0) -> Report:
    rep = Report(TITLES[4])
    rep.merge(validate_cartan_pair(cartan_from_fodc(universal_kernel_calculus(a))), "universal calculus")
    bad = []
    for t, f in enumerate(random_quotients(a, seed)):
        r = validate_cartan_pair(cartan_from_fodc(f))
        if not r.ok:
            bad.append((t, sorted(r.failures)))
    rep.record("every random quotient gives a valid Cartan pair", bad)
    if is_dual_numbers(a):
        rep.merge(_dual_numbers_functionals(a))
    return rep


def c5_universal_cartan(a: Algebra, seed: int = 0) -> Report:
    rep = Report(TITLES[5])
    for side in ("right", "left"):
        rep.merge(universal_cartan(a, side)[1], "%s side" % side)
    return rep


def c6_splitting(a: Algebra, seed: int = 0) -> Report:
    rep = Report(TITLES[6])
    return rep.merge(universal_splitting(a)[1], "splitting")


def c7_sections(a: Algebra, seed: int = 0) -> Report:
    rep = Report(TITLES[7])
    mu = mu_bimodule_map(a)
    F = a.field
    n = a.dim
    r1 = Matrix.from_columns(F, [tensor(a, a.basis(i), a.unit) for i in range(n)], n * n)
    rep.require("r -> r(x)1 is a section of mu", (mu.matrix @ r1).is_identity())
    rep.record("r -> r(x)1 is a left-module map",
               intertwining_violations(r1, regular_bimodule(a), bifree_square(a), "left"))
    rep.require("solver finds a left-module section", find_splitting(mu, "left") is not None)
    s = find_splitting(mu, "bi")
    found = s is not None
    rep.info["bimodule section exists"] = found
    if found:
        e = s.matrix.apply(a.unit)
        rep.require("separability idempotent: mu(e) = 1", mu.matrix.apply(e) == a.unit)
        sq = bifree_square(a)
        rep.record("separability idempotent: r.e = e.r",
                   [a.labels[i] for i in range(n) if sq.left[i].apply(e) != sq.right[i].apply(e)])
        rep.info["separability idempotent"] = _format_tensor(a, e)
    _expect(rep, expected_values(a), "bimodule_section", found, "bimodule section exists")
    return rep


def _format_tensor(a: Algebra, v) -> str:
    n = a.dim
    terms = ["%s*%s(x)%s" % (x, a.labels[k // n], a.labels[k % n]) for k, x in enumerate(v) if x]
    return " + ".join(terms) or "0"


def c8_commutative(a: Algebra, seed: int = 0) -> Report:
    rep = Report(TITLES[8])
    exp = expected_values(a)
    der = derivations(a)
    rep.info["dim Der(R)"] = der.dim
    _expect(rep, exp, "derivations", der.dim, "dim Der(R)")
    if not is_commutative(a):
        rep.info["Kaehler calculus"] = "not defined (noncommutative)"
        return rep
    k = kaehler_calculus(a)
    rep.info["dim Kaehler"] = k.dim
    _expect(rep, exp, "kaehler", k.dim, "dim Kaehler")
    cp = cartan_from_fodc(k)
    rep.merge(validate_cartan_pair(cp), "Kaehler Cartan pair")
    rep.require("dim Kaehler dual = dim Der(R)", cp.dim == der.dim, (cp.dim, der.dim))
    rep.require("Kaehler action image = Der(R) in End0", image(cp.action) == der)
    return rep


def c9_duality(a: Algebra, seed: int = 0) -> Report:
    rep = Report(TITLES[9])
    uni = universal_kernel_calculus(a)
    K = uni.omega
    DK = right_dual(K)
    cpK = cartan_from_fodc(uni, "right", DK)
    bp = barred_presentations(a)
    chi_to_K = bp.iso_chi_kernel
    Dchi = right_dual(chi_to_K.source)
    adj_bad = []
    for D in (DK, dual(K, "left"), right_dual(bifree_square(a)), Dchi):
        adj_bad += [(D.source.name, D.side) + w for w in pairing_adjunction_violations(D)]
    ident = BimoduleMap(K, K, Matrix.identity(a.field, K.dim), "bi")
    rep.require("transpose(identity) = identity", transpose(ident, "right", DK, DK).matrix.is_identity())
    surj = [("mu", mu_bimodule_map(a))]
    not_inj, functor_bad, cartan_bad = [], [], []
    quotients = random_quotients(a, seed)
    if is_commutative(a):
        quotients.append(kaehler_calculus(a))
    for t, f in enumerate(quotients):
        pi = quotient_map(f)
        D = right_dual(f.omega)
        adj_bad += [(f.name,) + w for w in pairing_adjunction_violations(D)]
        T = transpose(pi, "right", DK, D)
        if not is_injective(T.matrix):
            not_inj.append(f.name)
        # (pi o I)^T = I^T o pi^T
        comp = transpose(BimoduleMap(chi_to_K.source, f.omega, pi.matrix @ chi_to_K.matrix, "bi"), "right", Dchi, D)
        if comp.matrix != transpose(chi_to_K, "right", Dchi, DK).matrix @ T.matrix:
            functor_bad.append(f.name)
        # the transpose of a calculus morphism is a morphism of Cartan pairs
        if cartan_from_fodc(f, "right", D).action != cpK.action @ T.matrix:
            cartan_bad.append(f.name)
    for name, m in surj:
        T = transpose(m, "right")
        if not is_injective(T.matrix):
            not_inj.append(name)
    rep.record("transpose of a surjection is injective", not_inj)
    rep.record("(psi o phi)^T = phi^T o psi^T", functor_bad)
    rep.record("transposed projection is a Cartan pair morphism", cartan_bad)
    rep.record("pairing adjunction on all basis triples", adj_bad)
    rep.info["surjections checked"] = len(quotients) + len(surj)
    return rep


def c10_braidings(a: Algebra, seed: int = 0) -> Report:
    rep = Report(TITLES[10])
    if is_dual_numbers(a):
        F = a.field
        for lam in LAMBDAS:
            sigma = Matrix(F, [(F.one, F.zero), (F.zero, F(lam))], 2)
            _, r = left_structure_from_braiding(twisted_flip(a, 1, sigma, "beta"))
            rep.merge(r, "lambda = %d" % lam)
    bp = barred_presentations(a)
    r, iso = check_braiding_pair(bp.gamma_braiding, bp.chi_braiding)
    rep.merge(r, "canonical pair")
    rep.require("isomorphism produced for the canonical pair", iso is not None)
    return rep


CRITERIA: dict[int, Callable[[Algebra, int], Report]] = {
    1: c1_universal_dimension,
    2: c2_presentations,
    3: c3_quotients,
    4: c4_cartan_of_calculi,
    5: c5_universal_cartan,
    6: c6_splitting,
    7: c7_sections,
    8: c8_commutative,
    9: c9_duality,
    10: c10_braidings,
}


def run_criterion(k: int, a: Algebra, seed: int = 0) -> Report:
    """Run one criterion; an unexpected InvariantViolation becomes a failed report."""
    try:
        rep = CRITERIA[k](a, seed)
    except InvariantViolation as exc:
        rep = Report(TITLES[k])
        rep.merge(exc.report)
    rep.title = "%d. %s [%s]" % (k, TITLES[k], a.name or "?")
    return rep


def run_suite(a: Algebra, seed: int = 0, only: list[int] | None = None) -> list[Report]:
    return [run_criterion(k, a, seed) for k in (only or sorted(CRITERIA))]
