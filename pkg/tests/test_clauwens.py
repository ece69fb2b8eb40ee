import pytest

from hermkq.additive import solve_affine
from hermkq.clauwens import (
    AlmostHermitian,
    DeltaDatum,
    MatPoly,
    PolyQuadForm,
    _poly_det,
    _poly_unit,
    cup_product,
    kappa_hermitian_two_ways,
    kappa_nondegenerate,
    lemma2_shift,
    lemma4_recursion,
    linearize,
    linearize_cup_soundness,
    projector_conjugator,
    sqrt_one_plus_nu_t,
)
from hermkq.forms import DegenerateFormError, QuadFormEl, hyperbolic, min_equal
from hermkq.linalg import Mat, all_matrices, block, invert, kron
from hermkq.rings import F2, F4, Fp, Zn


F2_ = F2()
HYP = hyperbolic(F2_, 1, 1)
DELTA = DeltaDatum.from_quadform(HYP)


def all_deltas_f2():
    out = []
    for m in all_matrices(F2_, 2, 2):
        q = QuadFormEl(F2_, 1, m)
        if q.nondegenerate:
            out.append(DeltaDatum.from_quadform(q))
    return out


def test_delta_datum_from_hyperbolic():
    assert DELTA.gram.to_strs() == [["0", "1"], ["1", "0"]]
    assert DELTA.phi + DELTA.adjoint(DELTA.phi) == Mat.identity(F2_, 2)


def test_delta_datum_validation():
    with pytest.raises(ValueError):
        DeltaDatum(F2_, 1, 2, Mat.from_strs(F2_, [["0", "1"], ["1", "0"]]), Mat.zero(F2_, 2))
    with pytest.raises(DegenerateFormError):
        DeltaDatum(F2_, 1, 2, Mat.zero(F2_, 2), Mat.zero(F2_, 2))


def test_matpoly_star_s_is_involutive():
    coeffs = [
        Mat.from_strs(F2_, [["1", "0"], ["1", "1"]]),
        Mat.from_strs(F2_, [["0", "1"], ["0", "0"]]),
        Mat.from_strs(F2_, [["1", "1"], ["0", "1"]]),
    ]
    p = MatPoly(F2_, 2, 2, coeffs)
    assert p.star_s().star_s() == p
    q = MatPoly(F2_, 2, 2, coeffs[:2])
    assert (p * q).star_s() == q.star_s() * p.star_s()
    z5 = Fp(5)
    p5 = MatPoly(z5, 1, 1, [Mat.from_strs(z5, [["2"]]), Mat.from_strs(z5, [["3"]])])
    assert p5.star_s().star_s() == p5


def test_poly_det_and_units():
    ident = MatPoly.identity(F2_, 2)
    assert _poly_det(ident) == (F2_.one,)
    s_shift = MatPoly(F2_, 1, 1, [Mat.zero(F2_, 1), Mat.identity(F2_, 1)])
    assert not _poly_unit(F2_, _poly_det(s_shift))
    z4 = Zn(4)
    # 1 + 2s is a unit of Z/4[s] (2 nilpotent)
    assert _poly_unit(z4, (1, 2))
    assert not _poly_unit(z4, (2, 1))


def test_cup_product_linear_case():
    # linear theta = g*s with g the invertible hermitian matrix: kappa = g (x) delta
    g = HYP.associated().phi
    theta = PolyQuadForm.from_coeff_mats(F2_, 1, [Mat.zero(F2_, 2), g])
    kappa = cup_product(theta, DELTA)
    assert kappa.phi0 == kron(g, DELTA.gram * DELTA.phi)
    assert kappa.n == 4 and kappa.nondegenerate


def test_cup_product_constant_case():
    theta = PolyQuadForm.from_coeff_mats(F2_, 1, [HYP.phi0])
    kappa = cup_product(theta, DELTA)
    assert kappa.phi0 == kron(HYP.phi0, DELTA.gram)


def test_cup_product_explicit_4x4():
    g = HYP.associated().phi
    theta = PolyQuadForm.from_coeff_mats(F2_, 1, [Mat.zero(F2_, 2), g])
    kappa = cup_product(theta, DELTA)
    assert invert(kappa.associated().phi) is not None
    assert kappa_nondegenerate(theta, DELTA)


def test_cup_product_rejects_degenerate():
    with pytest.raises(DegenerateFormError):
        PolyQuadForm.from_coeff_mats(F2_, 1, [Mat.zero(F2_, 1)])


def test_kappa_hermitian_two_evaluation_orders():
    g = HYP.associated().phi
    theta = PolyQuadForm.from_coeff_mats(
        F2_, 1, [HYP.phi0, g, Mat.from_strs(F2_, [["0", "0"], ["1", "0"]])], check=False
    )
    if theta.nondegenerate():
        direct, lifted = kappa_hermitian_two_ways(theta, DELTA)
        assert direct == lifted


def test_lemma2_zero_shift():
    g = HYP.associated().phi
    theta = PolyQuadForm.from_coeff_mats(F2_, 1, [Mat.zero(F2_, 2), g])
    shifted, witness = lemma2_shift(theta, MatPoly.zero(F2_, 2, 2), DELTA)
    assert shifted.theta == theta.theta
    assert witness["gamma"].is_zero()


def test_lemma2_monomial_and_degree2_shifts():
    g = HYP.associated().phi
    theta = PolyQuadForm.from_coeff_mats(F2_, 1, [Mat.zero(F2_, 2), g])
    e = Mat.from_strs(F2_, [["1", "0"], ["0", "0"]])
    for k in range(3):
        z = MatPoly(F2_, 2, 2, [Mat.zero(F2_, 2)] * k + [e])
        shifted, witness = lemma2_shift(theta, z, DELTA)  # raises on failure
        assert witness is not None
    # rank-1 exhaustive shifts of degree <= 2
    theta1 = PolyQuadForm.from_coeff_mats(
        F2_, 1, [Mat.zero(F2_, 1), Mat.identity(F2_, 1)]
    )
    delta1 = DELTA
    for c0 in F2_.elements():
        for c1 in F2_.elements():
            for c2 in F2_.elements():
                z = MatPoly(F2_, 1, 1, [Mat(F2_, [[c0]]), Mat(F2_, [[c1]]), Mat(F2_, [[c2]])])
                lemma2_shift(theta1, z, delta1)


def test_linearize_already_linear():
    g = HYP.associated().phi
    theta = PolyQuadForm.from_coeff_mats(F2_, 1, [Mat.zero(F2_, 2), g])
    almost, transcript = linearize(theta)
    assert transcript == []
    assert almost.g == g and almost.index == 1  # N = 0 has index 1


def test_linearize_constant_rank1():
    # over F2 a rank-1 constant hermitianizes to zero; F3 carries the example
    z3 = Fp(3)
    theta = PolyQuadForm.from_coeff_mats(z3, 1, [Mat.identity(z3, 1)])
    almost, transcript = linearize(theta)
    assert [s["kind"] for s in transcript] == ["constant_elimination"]
    assert almost.g == Mat.from_strs(z3, [["2"]])  # theta0 + theta0^*
    assert invert(almost.g) is not None and almost.index == 1


def test_linearize_degree2_rank1():
    theta = PolyQuadForm.from_coeff_mats(
        F2_, 1, [Mat.zero(F2_, 1), Mat.zero(F2_, 1), Mat.identity(F2_, 1)]
    )
    almost, transcript = linearize(theta)
    assert almost.g.rows == 3  # rank 1 + one hyperbolic stabilization
    assert transcript[0]["kind"] == "degree_reduction"
    assert almost.index is not None
    ident = Mat.identity(F2_, 3)
    assert almost.g.star() == (almost.g * (ident + almost.nilpotent)).scale_sign(1)


def test_linearize_soundness_small():
    theta = PolyQuadForm.from_coeff_mats(
        F2_, 1, [Mat.identity(F2_, 1), Mat.zero(F2_, 1), Mat.identity(F2_, 1)]
    )
    almost, transcript = linearize(theta)
    for d in all_deltas_f2():
        assert linearize_cup_soundness(theta, almost, transcript, d)


def test_linearize_rejects_degenerate():
    bad = PolyQuadForm.from_coeff_mats(F2_, 1, [Mat.zero(F2_, 1)], check=False)
    with pytest.raises(DegenerateFormError):
        linearize(bad)


def _sigma_with_nilpotent(ring, nil):
    sols = solve_affine(
        ring, (nil.rows, nil.rows),
        lambda s: s.star() - s - s * nil,
        Mat.zero(ring, nil.rows),
        all_solutions=True,
    )
    return [s for s in sols if invert(s) is not None]


def test_lemma4_zeta_zero_and_hermitian_sigma():
    # zeta = 0: f = 1, Z = 0 and the residual vanishes at depth 0
    sym = HYP.associated().phi  # hermitian: N = 0
    rep = lemma4_recursion(sym, DELTA, Mat.zero(F2_, 2), depth=0)
    assert rep["residual_zero"] and rep["nilpotency_index"] == 1
    # N = 0 with nonzero zeta is already exact at p = 0
    rep2 = lemma4_recursion(sym, DELTA, Mat.from_strs(F2_, [["1", "0"], ["0", "0"]]), depth=0)
    assert rep2["residual_zero"]


def test_lemma4_index3_over_f2():
    nil = Mat.from_strs(F2_, [["0", "1", "0"], ["0", "0", "1"], ["0", "0", "0"]])
    sigmas = _sigma_with_nilpotent(F2_, nil)
    assert sigmas
    zeta = Mat.from_strs(F2_, [["1", "0"], ["1", "1"]])
    rep = lemma4_recursion(sigmas[0], DELTA, zeta, depth=3)
    assert rep["nilpotency_index"] == 3
    assert all(s["defect_in_span"] for s in rep["steps"])
    assert rep["residual_zero"]
    # below the index the residual need not vanish but stays in the span
    partial = lemma4_recursion(sigmas[0], DELTA, zeta, depth=1)
    assert partial["steps"][-1]["defect_in_span"]


def test_lemma4_index2_over_f4():
    f4 = F4()
    nil = Mat.from_strs(f4, [["0", "1"], ["0", "0"]])
    sigmas = _sigma_with_nilpotent(f4, nil)
    assert sigmas
    d4 = DeltaDatum.from_quadform(hyperbolic(f4, 1, 1))
    zeta = Mat.from_strs(f4, [["w", "0"], ["0", "1"]])
    rep = lemma4_recursion(sigmas[0], d4, zeta, depth=2)
    assert rep["residual_zero"] and rep["passed"]


def test_lemma4_residual_filtration():
    # the defect at every step lies in the span generated at level p+1
    nil = Mat.from_strs(F2_, [["0", "1", "0"], ["0", "0", "1"], ["0", "0", "0"]])
    sigma = _sigma_with_nilpotent(F2_, nil)[0]
    zeta = Mat.from_strs(F2_, [["0", "1"], ["0", "0"]])
    rep = lemma4_recursion(sigma, DELTA, zeta, depth=3)
    assert [s["defect_in_span"] for s in rep["steps"]] == [True] * 4


def test_sqrt_trivial_and_f4():
    f4 = F4()
    lam = f4.find_split_unit()
    gamma, rep = sqrt_one_plus_nu_t(Mat.zero(f4, 2), lam)
    assert rep["passed"] and gamma == MatPoly.identity(f4, 2)
    nu = Mat.from_strs(f4, [["1", "w"], ["w+1", "1"]])
    gamma2, rep2 = sqrt_one_plus_nu_t(nu, lam)
    assert rep2["passed"] and rep2["nilpotency_index"] == 2 and gamma2.degree <= 1


def test_sqrt_z9():
    z9 = Zn(9)
    lam = z9.find_split_unit()
    assert lam == 5
    nu = Mat.from_strs(z9, [["0", "3"], ["3", "0"]])
    gamma, rep = sqrt_one_plus_nu_t(nu, lam)
    assert rep["passed"]
    nu3 = Mat.from_strs(z9, [["4", "1", "1"], ["1", "7", "1"], ["1", "1", "1"]])
    gamma3, rep3 = sqrt_one_plus_nu_t(nu3, lam)
    assert rep3["passed"] and rep3["nilpotency_index"] == 3


def test_sqrt_rejects_bad_inputs():
    f4 = F4()
    lam = f4.find_split_unit()
    with pytest.raises(ValueError):
        sqrt_one_plus_nu_t(Mat.identity(f4, 2), lam)  # not nilpotent
    with pytest.raises(ValueError):
        sqrt_one_plus_nu_t(Mat.from_strs(f4, [["0", "1"], ["0", "0"]]), lam)  # not self-adjoint
    with pytest.raises(ValueError):
        sqrt_one_plus_nu_t(Mat.zero(F2_, 2), F2_.one)  # 1 is not a split unit of F2


def test_projector_trivial_and_z4():
    z4 = Zn(4)
    p0 = Mat.from_strs(z4, [["1", "0"], ["0", "0"]])
    gens = []
    for i in range(2):
        for j in range(2):
            entries = [[z4.zero] * 2 for _ in range(2)]
            entries[i][j] = 2
            gens.append(Mat(z4, entries))
    alpha, rep = projector_conjugator(p0, p0, gens)
    assert rep["passed"] and alpha == Mat.identity(z4, 2)
    sigma = Mat.from_strs(z4, [["0", "2"], ["2", "0"]])
    alpha2, rep2 = projector_conjugator(p0, p0 + sigma, gens)
    assert rep2["passed"]
    assert alpha2 * (p0 + sigma) == p0 * alpha2
    assert alpha2 != Mat.identity(z4, 2)


def test_projector_f3_hyperbolic_adjoint():
    f3 = Fp(3)
    a = Mat.from_strs(f3, [["1", "0"], ["0", "0"]])
    c = Mat.from_strs(f3, [["0", "1"], ["1", "0"]])
    z2 = Mat.zero(f3, 2)
    ident2 = Mat.identity(f3, 2)
    p0 = block(f3, [[a, z2], [c, a.transpose()]])
    y = Mat.from_strs(f3, [["0", "1"], ["1", "0"]])
    sigma = block(f3, [[z2, z2], [y, z2]])
    gram = block(f3, [[z2, ident2], [ident2, z2]])
    gens = []
    for i in range(2):
        for j in range(2):
            entries = [[f3.zero] * 2 for _ in range(2)]
            entries[i][j] = f3.one
            gens.append(block(f3, [[z2, z2], [Mat(f3, entries), z2]]))
    alpha, rep = projector_conjugator(p0, p0 + sigma, gens, gram=gram)
    assert rep["passed"]
    assert alpha != Mat.identity(f3, 4)


def test_projector_reports_violations_individually():
    z4 = Zn(4)
    not_idem = Mat.from_strs(z4, [["2", "0"], ["0", "0"]])
    gens = [Mat.from_strs(z4, [["2", "0"], ["0", "0"]])]
    _, rep = projector_conjugator(not_idem, not_idem, gens)
    assert not rep["p0_idempotent"]
    assert not rep["passed"]


def test_almost_hermitian_validation():
    g = HYP.associated().phi
    almost = AlmostHermitian.from_matrix(F2_, 1, g)
    assert almost.index == 1
    with pytest.raises(DegenerateFormError):
        AlmostHermitian.from_matrix(F2_, 1, Mat.zero(F2_, 2))
    with pytest.raises(ValueError):
        # invertible but sigma^{-1} sigma^* - 1 is not nilpotent over F3
        AlmostHermitian.from_matrix(Fp(3), 1, Mat.from_strs(Fp(3), [["1", "1"], ["2", "1"]]))
