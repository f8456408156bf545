import random
from fractions import Fraction

import pytest

from sal import algebra as alg
from sal import designs, exact
from sal.designs import BlockSet
from sal.errors import AllParamsZero, DimMismatch
from sal.exact import Matrix

F = Fraction
PASCH = BlockSet(6, ((1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 5, 6)))


def trace_oracle(a, x, y):
    return (alg.mult_operator(a, x) @ alg.mult_operator(a, y)).trace()


def test_t_beta_relations(fano):
    beta = F(1, 2)
    a = alg.build_t_beta(fano, beta)
    al = (beta - 1) / 5
    for i in fano.points:
        ei = a.generator(i)
        assert alg.multiply(a, ei, ei) == ei
        for j in fano.points:
            if i == j:
                continue
            want = exact.vadd(exact.vscale(al, exact.vadd(ei, a.generator(j))),
                              exact.vscale(beta, a.generator(fano.join(i, j))))
            assert alg.multiply(a, ei, a.generator(j)) == want


def test_n3_is_e2(sts3):
    for beta in (0, 1, F(5, 3)):
        a = alg.build_t_beta(sts3, beta)
        assert alg.multiply(a, a.basis(0), a.basis(1)) == (-1, -1)


def test_beta_one_on_ag23(ag2):
    a = alg.build_t_beta(ag2, 1)
    assert alg.multiply(a, a.basis(0), a.basis(1)) == a.basis(2)


@pytest.mark.parametrize("name,n", [("fano", None), ("ag", 2), ("skolem", 13), ("ag", 1)])
def test_simplicial_equals_beta_zero(name, n):
    s = designs.construct_named(name, n)
    assert alg.build_simplicial(s.n).same_tensor(alg.build_t_beta(s, 0))


def test_simplicial_relation():
    a = alg.build_simplicial(7)
    assert alg.multiply(a, a.basis(0), a.basis(1)) == exact.vscale(F(-1, 5), exact.vadd(a.basis(0), a.basis(1)))
    assert alg.build_simplicial(2).dim == 1


def test_quotient_consistency(fano):
    # image of a product equals product of images under U -> T
    beta = F(2, 3)
    p = alg.AlgebraParams.for_t_beta(7, beta)
    u = alg.build_unreduced(fano, p.gamma, p.alpha, p.beta)
    t = alg.build_t_beta(fano, beta)

    def image(v):
        return t.from_spanning(v)

    for i in range(7):
        for j in range(7):
            lhs = image(alg.multiply(u, u.basis(i), u.basis(j)))
            rhs = alg.multiply(t, image(u.basis(i)), image(u.basis(j)))
            assert lhs == rhs


def test_unreduced_special_cases(fano):
    m = alg.build_unreduced(fano, 0, 0, 1)
    e = m.basis
    assert not any(alg.multiply(m, e(0), e(0)))
    assert alg.multiply(m, e(0), e(1)) == e(fano.join(1, 2) - 1)
    mat = alg.build_matsuo(fano, F(1, 4))
    assert alg.multiply(mat, e(0), e(1)) == exact.vscale(F(1, 4), exact.vsub(exact.vadd(e(0), e(1)), e(fano.join(1, 2) - 1)))
    # hat-e o hat-e_i = (1 + (n - 1) alpha) hat-e_i with beta = -alpha
    assert alg.matsuo_e_hat_eigenvalue(mat) == 1 + 6 * F(1, 4)
    p = alg.build_unreduced(PASCH, 0, 1, 1)
    assert not any(alg.multiply(p, p.basis(0), p.basis(5)))
    with pytest.raises(AllParamsZero):
        alg.build_unreduced(fano, 0, 0, 0)


def test_e_hat_ideal_status(fano):
    beta = F(3, 7)
    a = alg.build_unreduced(fano, 1, (beta - 1) / 5, beta)
    st = alg.e_hat_ideal_status(a)
    assert st.kind == "case_sts" and st.lam == (beta - 1) / 5 + beta
    assert alg.e_hat_ideal_status(alg.build_unreduced(PASCH, -4, 1, -1)).kind == "case_regular_annihilated"
    assert alg.e_hat_ideal_status(alg.build_unreduced(fano, 1, 0, 2)).kind == "not_ideal"


def test_mendelsohn(fano):
    m = alg.build_mendelsohn(fano)
    u = m.basis(7)
    assert m.dim == 8 and alg.multiply(m, u, u) == u
    assert alg.multiply(m, u, m.basis(3)) == m.basis(3)
    assert not alg.is_exact(m)
    assert alg.trace_of_multiplication(m, 7) == 8


def test_exactness(fano, ag2, skolem13):
    for s in (fano, ag2, skolem13):
        for beta in (0, 1, F(-5, 7), 2):
            assert alg.is_exact(alg.build_t_beta(s, beta))
    # regular partial system with gamma + 2 r alpha = 0
    assert alg.is_exact(alg.build_unreduced(PASCH, -4, 1, 3))
    assert not alg.is_exact(alg.build_unreduced(PASCH, 1, 1, 3))


def test_killing_form_against_trace_oracle(fano):
    a = alg.build_t_beta(fano, F(1, 2))
    g = alg.killing_form(a).gram
    for i in range(a.dim):
        for j in range(a.dim):
            assert g[i, j] == trace_oracle(a, a.basis(i), a.basis(j))


def test_killing_entries(ag2):
    a = alg.build_t_beta(ag2, 1)
    f = alg.killing_form(a)
    assert f.omega == 7
    assert f.gram[0, 0] == 8 == trace_oracle(a, a.basis(0), a.basis(0))
    assert f.gram[0, 1] == F(-7, 7)


def test_gram_closed_forms(fano, ag2):
    for s, beta in ((fano, 0), (fano, F(1, 2)), (ag2, 2)):
        a = alg.build_t_beta(s, beta)
        assert alg.gram_entries_check(a)
        # the identity omega (n I - J) misses the 1/(n-2) factor
        assert not alg.gram_identity_check(a)
        assert alg.killing_form(a).gram.scale(s.n - 2) == alg.expected_gram(s.n, a.params.omega)


def test_gram_ag3_beta_two(ag3):
    a = alg.build_t_beta(ag3, 2)
    assert a.params.omega == 97
    assert alg.gram_entries_check(a)


def test_invariance_values(fano):
    beta = F(1, 2)
    n = 7
    a = alg.build_t_beta(fano, beta)
    f = alg.killing_form(a)
    assert alg.check_invariance(a, f)
    om = a.params.omega
    e = a.generator
    i, j = 1, 2
    k = next(p for p in fano.points if p not in fano.block_of(i, j))
    al = a.params.alpha
    assert f(e(i), alg.multiply(a, e(j), e(fano.join(i, j)))) == ((n - 1) * beta - 2 * al) * om / (n - 2)
    assert f(e(i), alg.multiply(a, e(j), e(k))) == -(2 * al + beta) * om / (n - 2)
    assert f(e(i), alg.multiply(a, e(j), e(k))) == F(-3, 25)


def test_invariance_detects_perturbation():
    a = alg.build_simplicial(3)
    g = alg.killing_form(a).gram.tolist()
    g[0][0] += 1
    res = alg.check_invariance(a, alg.BilinearForm(Matrix(g)))
    assert not res and res.witness is not None
    i, j, k = res.witness
    f = alg.BilinearForm(Matrix(g))
    b = a.basis
    assert f(alg.multiply(a, b(i), b(j)), b(k)) != f(b(i), alg.multiply(a, b(j), b(k)))


def test_positive_definite(fano):
    for beta in (0, F(-3, 2), 5):
        f = alg.killing_form(alg.build_t_beta(fano, beta))
        assert f.is_positive_definite() and f.is_nondegenerate()


def test_tight_frame(fano, ag2):
    a = alg.build_t_beta(fano, 1)
    assert alg.frame_constant(a) == 7
    assert alg.tight_frame_check(a, a.basis(0))
    assert alg.tight_frame_check(a, (0,) * 6)
    b = alg.build_t_beta(ag2, F(1, 3))
    rng = random.Random(1)
    for _ in range(10):
        x = tuple(F(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(8))
        assert alg.tight_frame_check(b, x)
    assert not alg.tight_frame_check(b, b.basis(0), alg.BilinearForm(Matrix.identity(8)))


def test_multiply_zero_and_dims(fano):
    a = alg.build_t_beta(fano, 2)
    assert not any(alg.multiply(a, a.basis(0), (0,) * 6))
    assert alg.mult_operator(a, (0,) * 6) == Matrix.zeros(6, 6)
    with pytest.raises(DimMismatch):
        alg.multiply(a, (1, 2), (1, 2))


def test_mult_operator_columns(fano):
    a = alg.build_t_beta(fano, F(1, 3))
    L = alg.mult_operator(a, a.basis(2))
    for j in range(6):
        assert L.column(j) == alg.multiply(a, a.basis(2), a.basis(j))


def test_gamma_block_square(ag2):
    beta = F(2, 5)
    a = alg.build_t_beta(ag2, beta)
    g = a.from_spanning([1, 1, 1, 0, 0, 0, 0, 0, 0])
    assert alg.multiply(a, g, g) == exact.vscale(1 + 4 * (beta - 1) / 7 + 2 * beta, g)


def test_structure_symmetric_under_automorphism(ag2):
    a = alg.build_t_beta(ag2, F(3, 4))
    sigma = designs.sigma_involution(ag2, 4)
    e = a.generator
    for i in ag2.points:
        for j in ag2.points:
            img = alg.multiply(a, e(sigma[i - 1]), e(sigma[j - 1]))
            prod = a.to_spanning(alg.multiply(a, e(i), e(j)))
            mapped = exact.lincomb([(prod[k - 1], e(sigma[k - 1])) for k in ag2.points], a.dim)
            assert img == mapped


def test_ideal_closure(fano, ag2):
    a = alg.build_t_beta(fano, F(1, 2))
    assert alg.ideal_closure(a, []).is_zero
    assert alg.ideal_closure(a, [a.basis(0)]).is_full
    t1 = alg.build_t_beta(ag2, 1)
    e0 = lambda B: t1.from_spanning([F(1, 3) if p in B else 0 for p in ag2.points])
    ideal = alg.ideal_closure(t1, [exact.vsub(e0((1, 4, 7)), e0((2, 5, 8)))])
    assert ideal.is_proper_nontrivial and ideal.dim == 2
    assert alg.is_ideal(t1, ideal.basis)


def test_simplicity_verdicts(fano, ag2):
    assert alg.is_simple(alg.build_t_beta(fano, 2)).status == "simple"
    assert alg.is_simple(alg.build_t_beta(fano, F(1, 2))).status == "simple"
    v = alg.is_simple(alg.build_t_beta(ag2, 1))
    assert v.status == "not_simple" and v.witness.dim == 2
    assert alg.is_ideal(alg.build_t_beta(ag2, 1), v.witness.basis)
    assert alg.is_simple(alg.build_t_beta(ag2, F(-4, 3))).status == "simple"


def test_json_round_trip(fano):
    a = alg.build_t_beta(fano, F(-2, 3))
    data = alg.algebra_to_json(a)
    assert data["beta"] == "-2/3" and data["dim"] == 6
    keys = [(i, j, k) for i, j, k, _ in data["structure"]]
    assert keys == sorted(keys) and all(i <= j for i, j, _ in keys)
    assert alg.algebra_from_json(data).same_tensor(a)
