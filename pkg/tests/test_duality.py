import random

import pytest
from hypothesis import given, settings, strategies as st

from ncalc.algebra import matrix_algebra, quantum_plane, truncated_polynomial
from ncalc.bimodule import (BimoduleMap, bifree_square, flip_braiding, left_structure_from_braiding,
                            regular_bimodule, zero_bimodule)
from ncalc.calculus import (FODC, kaehler_calculus, kernel_of_mu, quotient_fodc, quotient_map, random_generator_set,
                            tensor, to_kernel_coords, universal_kernel_calculus)
from ncalc.checks import InvariantViolation
from ncalc.duality import (CartanPair, cartan_from_fodc, derivation_cartan_pair, derivations, double_dual_map,
                           end_structures, evaluation, is_reflexive, is_torsionless, left_dual,
                           pairing_adjunction_violations, reconstruct_fodc, right_dual, round_trip_report, transpose,
                           universal_cartan, universal_splitting, validate_cartan_pair)
from ncalc.linalg import QQ, Matrix, image, is_injective, solve_matrix_equations

from conftest import CORPUS

DERIVATIONS = {"truncated_polynomial(2)": 1, "truncated_polynomial(3)": 2, "matrix_algebra(2)": 3,
               "cyclic_group_algebra(3)": 0, "quantum_plane(-1,2)": 6}


def phi_p(a, D, p):
    """Coordinates of the functional on ker(mu) with x(x)1 - 1(x)x -> p and x(x)x -> p x."""
    one, x = a.basis(0), a.basis(1)
    e1 = tuple(u - v for u, v in zip(tensor(a, x, one), tensor(a, one, x)))
    basis = Matrix.from_columns(QQ, [to_kernel_coords(a, e1), to_kernel_coords(a, tensor(a, x, x))], 2)
    rhs = Matrix.from_columns(QQ, [p, a.mul(p, x)], 2)
    return D.coords(solve_matrix_equations(QQ, 2, 2, [([(None, basis)], rhs)]).particular)


# ---- duals

def test_right_dual_of_R_is_R(algebra):
    D = right_dual(regular_bimodule(algebra))
    assert D.dim == algebra.dim
    # a right-linear map R -> R is left multiplication by its value at 1
    for phi in D.functionals():
        assert phi == algebra.left_matrix(phi.apply(algebra.unit))


def test_dual_of_free_module(algebra):
    M, _ = left_structure_from_braiding(flip_braiding(algebra, 2))
    assert right_dual(M).dim == 2 * algebra.dim
    assert is_reflexive(M)


def test_dual_of_kernel_has_dimension_n_n_minus_1(algebra):
    K = universal_kernel_calculus(algebra).omega
    n = algebra.dim
    assert right_dual(K).dim == n * (n - 1)
    assert left_dual(K).dim == n * (n - 1)


def test_pairing_adjunctions(algebra):
    for M in (regular_bimodule(algebra), bifree_square(algebra), universal_kernel_calculus(algebra).omega):
        for D in (right_dual(M), left_dual(M)):
            assert pairing_adjunction_violations(D) == []


def test_kernel_dual_on_dual_numbers(dual_numbers):
    a = dual_numbers
    D = right_dual(universal_kernel_calculus(a).omega)
    assert D.dim == 2
    c1, cx = phi_p(a, D, a.basis(0)), phi_p(a, D, a.basis(1))
    assert image(Matrix.from_columns(QQ, [c1, cx], 2)).dim == 2


def test_double_dual_verdicts(dual_numbers):
    assert is_reflexive(regular_bimodule(dual_numbers))
    K = universal_kernel_calculus(dual_numbers).omega
    assert is_torsionless(K)
    assert is_reflexive(K)
    mat, first, second = double_dual_map(K)
    assert second.source is first.module


def test_double_dual_of_zero_module(dual_numbers):
    Z = zero_bimodule(dual_numbers)
    assert right_dual(Z).dim == 0
    assert is_reflexive(Z)


# ---- transposes

def test_transpose_of_identity(algebra):
    K = universal_kernel_calculus(algebra).omega
    D = right_dual(K)
    T = transpose(BimoduleMap(K, K, Matrix.identity(QQ, K.dim)), "right", D, D)
    assert T.matrix.is_identity()


def test_transpose_of_surjection_onto_kaehler_is_injective(dual_numbers):
    k = kaehler_calculus(dual_numbers)
    T = transpose(quotient_map(k), "right")
    assert is_injective(T.matrix)


def test_transpose_needs_matching_kind(dual_numbers):
    R = regular_bimodule(dual_numbers)
    left_only = BimoduleMap(R, R, dual_numbers.right_mult[1], "left")
    with pytest.raises(ValueError):
        transpose(left_only, "right")
    assert transpose(left_only, "left").kind == "right"


def test_transpose_is_contravariant(algebra):
    rng = random.Random(7)
    f = quotient_fodc(algebra, random_generator_set(algebra, rng))
    g = quotient_fodc(algebra, list(random_generator_set(algebra, rng)) +
                      [kernel_of_mu(algebra).from_coords(v) for v in f.relations.vectors()])
    K = universal_kernel_calculus(algebra).omega
    # g's relations contain f's, so pi_g factors through pi_f
    from ncalc.calculus import fodc_morphisms
    sol = fodc_morphisms(f, g)
    assert sol is not None
    L = BimoduleMap(f.omega, g.omega, sol.particular)
    pf = quotient_map(f)
    DK, Df, Dg = right_dual(K), right_dual(f.omega), right_dual(g.omega)
    comp = BimoduleMap(K, g.omega, L.matrix @ pf.matrix)
    lhs = transpose(comp, "right", DK, Dg).matrix
    rhs = transpose(pf, "right", DK, Df).matrix @ transpose(L, "right", Df, Dg).matrix
    assert lhs == rhs
    # transposed calculus morphisms are Cartan morphisms
    assert cartan_from_fodc(g, "right", Dg).action == \
        cartan_from_fodc(f, "right", Df).action @ transpose(L, "right", Df, Dg).matrix


# ---- Cartan pairs

def test_universal_cartan_pair_on_dual_numbers(dual_numbers):
    a = dual_numbers
    uni = universal_kernel_calculus(a)
    D = right_dual(uni.omega)
    cp = cartan_from_fodc(uni, "right", D)
    assert cp.dim == 2
    one, x = a.basis(0), a.basis(1)
    for p in (one, x):
        A = cp.endomorphism(phi_p(a, D, p))
        assert A.apply(x) == p
        assert not any(A.apply(one))


def test_twisted_leibniz_spot_value(dual_numbers):
    # phi_1.x = phi_(-x), and phi_1(x x) = 0 = x + (-x)
    a = dual_numbers
    uni = universal_kernel_calculus(a)
    D = right_dual(uni.omega)
    cp = cartan_from_fodc(uni, "right", D)
    one, x = a.basis(0), a.basis(1)
    c1 = phi_p(a, D, one)
    c1x = D.module.right[1].apply(c1)
    assert c1x == phi_p(a, D, tuple(-v for v in x))
    A1, A1x = cp.endomorphism(c1), cp.endomorphism(c1x)
    assert not any(A1.apply(a.mul(x, x)))
    assert tuple(u + v for u, v in zip(a.mul(A1.apply(x), x), A1x.apply(x))) == a.zero()


def test_cartan_pairs_of_calculi_validate(algebra):
    for side in ("right", "left"):
        rep = validate_cartan_pair(cartan_from_fodc(universal_kernel_calculus(algebra), side))
        assert rep.ok, rep


@pytest.mark.parametrize("a", CORPUS, ids=[a.name for a in CORPUS])
@given(seed=st.integers(0, 10 ** 6))
@settings(max_examples=8, deadline=None)
def test_random_quotient_cartan_pairs_validate(a, seed):
    f = quotient_fodc(a, random_generator_set(a, random.Random(seed)))
    assert validate_cartan_pair(cartan_from_fodc(f)).ok


def test_zero_calculus_gives_zero_pair(dual_numbers):
    f = quotient_fodc(dual_numbers, kernel_of_mu(dual_numbers).vectors())
    cp = cartan_from_fodc(f)
    assert cp.dim == 0
    assert validate_cartan_pair(cp).ok
    rec = reconstruct_fodc(cp)
    assert rec.recovered and rec.candidate.dim == 0


def test_invalid_calculus_is_refused(dual_numbers):
    f = FODC(regular_bimodule(dual_numbers), Matrix(QQ, [(0, 1), (0, 0)]))
    with pytest.raises(InvariantViolation):
        cartan_from_fodc(f)


def test_derivation_dimensions(algebra):
    assert derivations(algebra).dim == DERIVATIONS[algebra.name]


def test_derivations_of_dual_numbers(dual_numbers):
    # spanned by x d/dx: 1 -> 0, x -> x
    assert derivations(dual_numbers).vectors() == [(0, 0, 0, 1)]
    cp = derivation_cartan_pair(dual_numbers)
    rep = validate_cartan_pair(cp)
    assert rep.ok
    assert "each X is a derivation (symmetric bimodule)" in rep.checks


def test_inner_derivations_of_matrices():
    a = matrix_algebra(2)
    D = derivations(a)
    for i in range(4):
        ad = a.left_mult[i] - a.right_mult[i]
        assert ad.flatten() in D


def test_action_with_kernel_fails_injectivity(dual_numbers):
    cp = derivation_cartan_pair(dual_numbers)
    bad = CartanPair(cp.x, Matrix.zeros(QQ, 4, cp.dim))
    rep = validate_cartan_pair(bad)
    assert rep.counts["injective action"] == 1
    assert rep.counts["twisted Leibniz"] == 0


def test_broken_leibniz_in_pair_is_detected(dual_numbers):
    # the identity endomorphism kills nothing and is not a derivation
    cp = derivation_cartan_pair(dual_numbers)
    bad = CartanPair(cp.x, Matrix.from_columns(QQ, [Matrix.identity(QQ, 2).flatten()], 4))
    rep = validate_cartan_pair(bad)
    assert rep.counts["X(1) = 0"] == 1
    assert rep.counts["twisted Leibniz"] > 0


def test_kaehler_pair_matches_derivations(algebra):
    try:
        k = kaehler_calculus(algebra)
    except ValueError:
        return
    cp = cartan_from_fodc(k)
    assert image(cp.action) == derivations(algebra)


# ---- End(R)

def test_end_structures_report(algebra):
    rep = end_structures(algebra).report
    assert rep.ok, rep


def test_multiplication_operators_on_dual_numbers(dual_numbers):
    a = dual_numbers
    Lx = a.left_mult[1]
    assert Lx.apply(a.unit) == a.basis(1)
    assert not any(Lx.apply(a.basis(1)))
    assert a.right_mult[1] == Lx


def test_matrix_algebra_embeddings_meet_in_center():
    es = end_structures(matrix_algebra(2))
    inter = image(es.left_embedding).intersect(image(es.right_embedding))
    assert inter.dim == 1
    assert es.left_embedding.apply(matrix_algebra(2).unit) in inter


def test_universal_cartan(algebra):
    for side in ("right", "left"):
        cp, rep = universal_cartan(algebra, side)
        assert rep.ok, rep
        assert cp.dim == algebra.dim * (algebra.dim - 1)


def test_odot_action_on_dual_numbers(dual_numbers):
    # (1.A odot x)(x) = A(x^2) - A(x) x = -A(x) x
    a = dual_numbers
    es = end_structures(a)
    x = a.basis(1)
    for v in es.end0.vectors():
        A = Matrix.unflatten(QQ, v, 2, 2)
        Ax = Matrix.unflatten(QQ, es.end0.from_coords(es.end0_right.right[1].apply(es.end0.coords(v))), 2, 2)
        assert Ax.apply(x) == tuple(-c for c in a.mul(A.apply(x), x))


def test_universal_splitting(algebra):
    sp, rep = universal_splitting(algebra)
    assert rep.ok, rep
    es = end_structures(algebra)
    assert (sp.project_left @ es.left_embedding).is_zero()
    assert (evaluation(algebra, algebra.unit) @ sp.inclusion @ sp.project_left).is_zero()


def test_left_projection_is_a_bimodule_map_for_the_first_pair(algebra):
    # P_L(A) odot r = A L_r - L_{A(1)} L_r - L_{A(r)} + L_{A(1) r} = P_L(A * r)
    sp, _ = universal_splitting(algebra)
    row = sp.table["P_L: End -> End0"]["ltimes -> odot_right"]
    assert row == {"left": True, "right": True}


def test_reconstruction_round_trip(algebra):
    rep = round_trip_report(universal_kernel_calculus(algebra))
    assert rep.ok, rep


def test_reconstruction_from_universal_pair(dual_numbers):
    cp, _ = universal_cartan(dual_numbers)
    rec = reconstruct_fodc(cp)
    assert rec.report.counts["Leibniz"] == 0
    assert rec.dual.dim == 2
    assert rec.recovered


def test_reconstruction_refuses_invalid_pair(dual_numbers):
    cp = derivation_cartan_pair(dual_numbers)
    with pytest.raises(InvariantViolation):
        reconstruct_fodc(CartanPair(cp.x, Matrix.zeros(QQ, 4, cp.dim)))


def test_prime_field_duality():
    from ncalc.linalg import Field
    a = quantum_plane(-1, 2, Field(7))
    cp, rep = universal_cartan(a)
    assert rep.ok
    assert derivations(truncated_polynomial(2, Field(7))).dim == 1
