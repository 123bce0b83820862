import pytest

from ncalc.algebra import center, cyclic_group_algebra, matrix_algebra, mu_map, truncated_polynomial
from ncalc.bimodule import (Bimodule, BimoduleMap, bifree_square, check_braiding_pair, check_bimodule, find_splitting,
                            flip_braiding, left_structure_from_braiding, module_maps, mu_bimodule_map,
                            quotient_bimodule, regular_bimodule, restrict, right_structure_from_braiding,
                            solve_module_maps, splitting_space, sub_bimodule_closure, twisted_flip, zero_bimodule)
from ncalc.calculus import tensor
from ncalc.linalg import QQ, Matrix, kernel

BIMODULE_SECTION = {"truncated_polynomial(2)": False, "truncated_polynomial(3)": False, "matrix_algebra(2)": True,
                    "cyclic_group_algebra(3)": True}


def test_standard_bimodules_are_valid(algebra):
    for M in (regular_bimodule(algebra), bifree_square(algebra), zero_bimodule(algebra)):
        assert check_bimodule(M).ok


def test_bimodule_endomorphisms_of_R_are_the_center(algebra):
    R = regular_bimodule(algebra)
    assert solve_module_maps(R, R, "bi").dim == center(algebra).dim


def test_left_endomorphisms_of_R_are_right_multiplications(algebra):
    R = regular_bimodule(algebra)
    maps = module_maps(R, R, "left")
    assert len(maps) == algebra.dim
    space = solve_module_maps(R, R, "left")
    for Rm in algebra.right_mult:
        assert Rm.flatten() in space


def test_broken_action_is_reported(dual_numbers):
    a = dual_numbers
    ident = Matrix.identity(QQ, 2)
    # x acting as the identity squares to the identity, not to x^2 = 0
    M = Bimodule(a, 2, (ident, ident), (ident, Matrix.zeros(QQ, 2, 2)))
    rep = check_bimodule(M)
    assert rep.counts["left multiplicativity"] > 0
    assert rep.counts["right multiplicativity"] == 0


def test_shape_mismatch_is_rejected(dual_numbers):
    with pytest.raises(ValueError):
        Bimodule(dual_numbers, 2, (Matrix.identity(QQ, 3),) * 2, (Matrix.identity(QQ, 2),) * 2)


def test_kernel_of_mu_is_generated_by_d_of_x(dual_numbers):
    a = dual_numbers
    one, x = a.basis(0), a.basis(1)
    dx = tuple(u - v for u, v in zip(tensor(a, x, one), tensor(a, one, x)))
    sq = bifree_square(a)
    S = sub_bimodule_closure([dx], sq)
    assert S == kernel(mu_map(a))
    sub, inc = restrict(sq, S)
    assert check_bimodule(sub).ok
    Q, pi = quotient_bimodule(sq, S)
    assert Q.dim == 2
    assert kernel(pi.matrix) == S


def test_quotient_by_non_submodule_fails(dual_numbers):
    from ncalc.linalg import Subspace
    sq = bifree_square(dual_numbers)
    S = Subspace.span(QQ, 4, [(1, 0, 0, 0)])
    with pytest.raises(ValueError):
        quotient_bimodule(sq, S)


def test_compose_kinds(dual_numbers):
    R = regular_bimodule(dual_numbers)
    ident = Matrix.identity(QQ, 2)
    left = BimoduleMap(R, R, ident, "left")
    right = BimoduleMap(R, R, ident, "right")
    bi = BimoduleMap(R, R, ident, "bi")
    assert left.compose(bi).kind == "left"
    assert bi.compose(bi).kind == "bi"
    with pytest.raises(ValueError):
        left.compose(right)


def test_left_section_of_mu_exists(algebra):
    s = find_splitting(mu_bimodule_map(algebra), "left")
    assert s is not None
    assert (mu_map(algebra) @ s.matrix).is_identity()


def test_bimodule_section_of_mu(algebra):
    s = find_splitting(mu_bimodule_map(algebra), "bi")
    if algebra.name in BIMODULE_SECTION:
        assert (s is not None) == BIMODULE_SECTION[algebra.name]
    if s is not None:
        sq = bifree_square(algebra)
        e = s.matrix.apply(algebra.unit)
        assert mu_map(algebra).apply(e) == algebra.unit
        for i in range(algebra.dim):
            assert sq.left[i].apply(e) == sq.right[i].apply(e)


def test_cyclic_group_idempotent_is_a_solution():
    # e = (1/3) sum_i g^i (x) g^-i
    a = cyclic_group_algebra(3)
    e = [QQ(0)] * 9
    for i in range(3):
        e[i * 3 + (-i) % 3] = QQ("1/3")
    # the section is determined by e = s(1): s(r) = r.e
    sq = bifree_square(a)
    s = Matrix.from_columns(QQ, [sq.act_left(a.basis(i)).apply(tuple(e)) for i in range(3)], 9)
    assert s in splitting_space(mu_bimodule_map(a), "bi")


def test_matrix_algebra_idempotent_is_a_solution():
    # e = sum_a E_a1 (x) E_1a
    a = matrix_algebra(2)
    e = [QQ(0)] * 16
    e[a.index("E11") * 4 + a.index("E11")] = QQ(1)
    e[a.index("E21") * 4 + a.index("E12")] = QQ(1)
    sq = bifree_square(a)
    s = Matrix.from_columns(QQ, [sq.act_left(a.basis(i)).apply(tuple(e)) for i in range(4)], 16)
    assert s in splitting_space(mu_bimodule_map(a), "bi")


def test_flip_braidings_invert_each_other(algebra):
    beta, alpha = flip_braiding(algebra, 2, "beta"), flip_braiding(algebra, 2, "alpha")
    M, rep = left_structure_from_braiding(beta)
    assert rep.ok
    rep, iso = check_braiding_pair(alpha, beta)
    assert rep.ok and iso is not None


@pytest.mark.parametrize("lam", [0, 1, 2, -1])
def test_lambda_family_on_dual_numbers(lam):
    a = truncated_polynomial(2)
    sigma = Matrix(QQ, [(1, 0), (0, lam)])
    for kind, build in (("beta", left_structure_from_braiding), ("alpha", right_structure_from_braiding)):
        M, rep = build(twisted_flip(a, 1, sigma, kind))
        assert rep.ok, rep


def test_non_multiplicative_twist_is_rejected():
    # x -> x, x^2 -> 2 x^2 is not an algebra map
    a = truncated_polynomial(3)
    sigma = Matrix(QQ, [(1, 0, 0), (0, 1, 0), (0, 0, 2)])
    _, rep = left_structure_from_braiding(twisted_flip(a, 1, sigma, "beta"))
    assert not rep.ok
    assert rep.counts["induced bimodule: left multiplicativity"] > 0


def test_non_inverse_braidings_give_no_iso():
    a = truncated_polynomial(2)
    sigma = Matrix(QQ, [(1, 0), (0, 2)])
    rep, iso = check_braiding_pair(twisted_flip(a, 1, sigma, "alpha"), flip_braiding(a, 1, "beta"))
    assert iso is None
    assert not rep.ok
