from fractions import Fraction

import pytest

from sal import algebra as alg
from sal import axial, designs, exact
from sal.errors import ClosureCapExceeded, ExcludedBeta
from sal.exact import Matrix

F = Fraction


def rank_multiplicity(a, i, lam):
    # geometric multiplicity as d - rank(L - lam I), independent of eigenspace()
    L = alg.mult_operator(a, a.generator(i))
    return a.dim - exact.rank(L - Matrix.identity(a.dim).scale(lam))


def test_excluded_and_transitional():
    assert set(axial.excluded_betas(9)) == {0, 1, F(-4, 3)}
    assert set(axial.excluded_betas(3)) == {0, 1}
    t = axial.transitional_betas(7)
    assert F(1, 6) in t and F(7, 12) in t and F(-3, 2) in t and F(-1, 4) in t


@pytest.mark.parametrize("beta", [F(1, 2), 2, F(-1, 2), F(3, 7)])
def test_generic_decomposition(fano, beta):
    a = alg.build_t_beta(fano, beta)
    for i in fano.points:
        d = axial.decompose_axis(a, i)
        assert d.formulas_ok and d.semisimple and d.exceptional_case == "generic"
        assert d.dims == (1, 2, 3)
        for lam, m in d.multiplicities.items():
            assert rank_multiplicity(a, i, lam) == m
        L = alg.mult_operator(a, a.generator(i))
        assert all(L.apply(v) == exact.vscale(d.beta_minus, v) for v in d.eigen_minus)


def test_fano_half_values(fano):
    d = axial.decompose_axis(alg.build_t_beta(fano, F(1, 2)), 1)
    assert (d.beta_plus, d.beta_minus) == (F(2, 5), F(-3, 5))


def test_exceptional_multiplicities(fano, ag2):
    d0 = axial.decompose_axis(alg.build_t_beta(fano, 0), 1)
    assert d0.exceptional_case == "beta_is_0" and d0.multiplicities == {F(-1, 5): 5, 1: 1}
    d1 = axial.decompose_axis(alg.build_t_beta(ag2, 1), 1)
    assert d1.multiplicities == {1: 4, -1: 4}
    dn = axial.decompose_axis(alg.build_t_beta(ag2, F(-4, 3)), 1)
    assert dn.multiplicities == {1: 5, F(-5, 3): 3}
    for beta in (0, 1, F(-4, 3), F(2, 9)):
        assert axial.lemma_multiplicities(9, beta) == axial.decompose_axis(alg.build_t_beta(ag2, beta), 2).multiplicities


def test_axial_identity(fano, ag2):
    for s in (fano, ag2):
        for beta in (0, 1, F(-7, 3)):
            assert axial.axial_identity_check(alg.build_t_beta(s, beta))


def test_fusion_tables():
    t = axial.fusion_table_for(9, 2)
    bp, bm = F(1, 7) + 2, F(1, 7) - 2
    assert t.name == "z2" and t(bm, bm) == {1, bp} and t(bp, bm) == {bm}
    assert t.grading_is_morphism()
    j = axial.fusion_table_for(9, F(1, 8))
    assert j.name == "jordan" and j(0, 0) == {0} and j(F(-1, 4), F(-1, 4)) == {1, 0}
    with pytest.raises(ExcludedBeta):
        axial.fusion_table_for(9, F(-4, 3))
    with pytest.raises(ExcludedBeta):
        axial.fusion_table_for(9, 2, law="jordan")
    with pytest.raises(ValueError):
        axial.fusion_table_for(9, 2, law="monster")


def test_grading_breaks_when_table_is_wrong():
    t = axial.fusion_table_for(7, 2)
    bm = t.eigenvalues[2]
    table = dict(t.table)
    table[(bm, bm)] = frozenset({bm})
    bad = axial.FusionLaw("z2", t.eigenvalues, table, t.grading)
    assert not bad.grading_is_morphism()


@pytest.mark.parametrize("beta", [2, F(-1, 2), F(3, 7), F(1, 8)])
def test_fusion_ag23(ag2, beta):
    a = alg.build_t_beta(ag2, beta)
    law = axial.fusion_table_for(9, beta)
    for i in ag2.points:
        assert axial.verify_fusion(a, i, law)


def test_fusion_fails_on_skolem(skolem13):
    a = alg.build_t_beta(skolem13, 2)
    law = axial.fusion_table_for(13, 2)
    v = axial.verify_fusion(a, 1, law)
    assert not v.ok
    w = v.witness
    assert w["reason"] == "product_outside_allowed_parts"
    # the reported product is not in the span the law allows
    dec = axial.decompose_axis(a, 1)
    parts = {1: list(dec.eigen_1), dec.beta_plus: list(dec.eigen_plus), dec.beta_minus: list(dec.eigen_minus)}
    allowed = [v for lam in law(w["lambda"], w["mu"]) for v in parts[lam]]
    assert not exact.in_span(w["product"], allowed)
    js = v.to_json()
    assert js["ok"] is False and js["witness"]["reason"] == "product_outside_allowed_parts"


def test_is_subalgebra(ag2):
    a = alg.build_t_beta(ag2, 1)
    # a block always spans a subalgebra
    assert axial.is_subalgebra(a, [a.generator(1), a.generator(2), a.generator(3)])
    assert not axial.is_subalgebra(a, [a.generator(1), a.generator(2)])
    assert axial.is_subalgebra(alg.build_t_beta(ag2, 2), [a.generator(1), a.generator(2), a.generator(3)])


def test_involutions(ag2, skolem13):
    a = alg.build_t_beta(ag2, F(3, 7))
    m = axial.miyamoto_involution(a, 1)
    assert m.is_automorphism and m.is_reflection
    assert m.matrix @ m.matrix == Matrix.identity(8)
    b = alg.build_t_beta(skolem13, 2)
    mb = axial.miyamoto_involution(b, 1)
    assert not mb.is_automorphism and mb.witness is not None
    assert mb.is_reflection


def test_group_sts3(sts3):
    g = axial.miyamoto_group(sts3)
    assert g.order == 6 and g.commutator_order == 3 and g.abelianization_order == 2
    assert axial.three_transposition_check(g, sts3)


def test_group_fano(fano):
    g = axial.miyamoto_group(fano)
    assert not g.hall and g.label.startswith("point-permutation")
    # each sigma_i is a product of three transpositions and they generate S_7
    assert g.order == 5040 and g.commutator_order == 2520


def test_group_ag23(ag2):
    g = axial.miyamoto_group(ag2)
    assert g.hall and g.order == 18 and g.commutator_order == 9
    # commutator subgroup equals the translations x -> x + v
    assert len({p for p in g.derived if not any(p[k] == k + 1 for k in range(9))}) == 8
    r = axial.three_transposition_check(g, ag2)
    assert r.ok and r.commutator_3_group


def test_group_ag33(ag3):
    g = axial.miyamoto_group(ag3)
    assert g.order == 54 and g.commutator_order == 27
    assert axial.three_transposition_check(g, ag3)


def test_transposition_fails_off_hall(skolem13):
    g = axial.miyamoto_group(skolem13, close=False)
    r = axial.three_transposition_check(g, skolem13)
    assert r.involutions and not r.ok and r.commutator_3_group is None


def test_closure_cap(ag2, monkeypatch):
    with pytest.raises(ClosureCapExceeded):
        axial.miyamoto_group(ag2, cap=10)
    monkeypatch.setenv("SAL_CLOSURE_CAP", "5")
    assert axial.closure_cap() == 5
    with pytest.raises(ClosureCapExceeded):
        axial.miyamoto_group(ag2)


def test_permutation_order():
    assert axial.permutation_order((2, 3, 1, 5, 4)) == 6


def test_graded_analysis(ag2, fano):
    a = alg.build_t_beta(ag2, F(-4, 3))
    r = axial.graded_ideal_analysis(a)
    assert r.generator_closures_full and r.simple_by_search
    with pytest.raises(ValueError):
        axial.graded_ideal_analysis(alg.build_t_beta(fano, F(-3, 2)))
    with pytest.raises(ExcludedBeta):
        axial.graded_ideal_analysis(alg.build_t_beta(ag2, 2))
