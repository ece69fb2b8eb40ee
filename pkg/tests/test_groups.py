import random

import pytest

from hermkq.forms import HermForm, QuadFormEl, hyperbolic, psi_normalize
from hermkq.groups import (
    ElMorphism,
    check_max,
    check_min,
    compose_el,
    dual_numbers_iso,
    el_identity,
    el_inverse,
    enumerate_group,
    enumerate_orthogonal_min,
    enumerate_unitary,
    extension_check,
    field_hyperbolic_diagnostics,
    hyperbolic_adjoint,
    satisfies_S,
    section_homomorphism_report,
    split_section,
    whitehead_factorization,
)
from hermkq.linalg import Mat, all_matrices, invert
from hermkq.rings import DualRing, F2, F4, Fp, Zn


def test_check_max_examples():
    f2 = F2()
    h = hyperbolic(f2, 1, 1).associated()
    swap = Mat.from_strs(f2, [["0", "1"], ["1", "0"]])
    shear = Mat.from_strs(f2, [["1", "1"], ["0", "1"]])
    assert check_max(Mat.identity(f2, 2), h)
    assert check_max(swap, h)
    # over F2 every invertible 2x2 preserves the alternating form (Sp2 = GL2),
    # so the shear is unitary; it fails the quadratic membership instead
    assert check_max(shear, h)
    z5 = Fp(5)
    h5 = hyperbolic(z5, 1, 1).associated()
    shear5 = Mat.from_strs(z5, [["1", "1"], ["0", "1"]])
    assert not check_max(shear5, h5)
    with pytest.raises(ValueError):
        check_max(Mat.identity(f2, 3), h)


def test_check_min_examples():
    f2 = F2()
    q = hyperbolic(f2, 1, 1)
    assert check_min(Mat.identity(f2, 2), q) == Mat.zero(f2, 2)
    swap = Mat.from_strs(f2, [["0", "1"], ["1", "0"]])
    gamma = check_min(swap, q)
    assert gamma is not None and satisfies_S(q, swap, gamma)
    # the shear is unitary but not orthogonal: no witness gamma exists
    shear = Mat.from_strs(f2, [["1", "1"], ["0", "1"]])
    assert check_min(shear, q) is None
    # anything failing check_max on the associated form cannot be orthogonal
    z5 = Fp(5)
    q5 = hyperbolic(z5, 1, 1)
    shear5 = Mat.from_strs(z5, [["1", "1"], ["0", "1"]])
    assert not check_max(shear5, q5.associated())
    assert check_min(shear5, q5) is None


def test_compose_neutral_inverse_associative():
    f2 = F2()
    q = hyperbolic(f2, 1, 1)
    group = enumerate_group("el", q).elements
    ident = el_identity(q)
    for m in group:
        assert compose_el(ident, m) == m
        assert compose_el(m, ident) == m
        assert compose_el(m, el_inverse(m)) == ident
        assert compose_el(el_inverse(m), m) == ident
    rng = random.Random(3)
    for _ in range(60):
        a, b, c = (group[rng.randrange(len(group))] for _ in range(3))
        assert compose_el(compose_el(a, b), c) == compose_el(a, compose_el(b, c))


def test_compose_preserves_S_exhaustively():
    f2 = F2()
    q = hyperbolic(f2, 1, 1)
    group = enumerate_group("el", q).elements
    for a in group:
        for b in group:
            c = compose_el(a, b)
            assert satisfies_S(q, c.f, c.gamma)


def test_enumerate_group_orders():
    f2 = F2()
    q = hyperbolic(f2, 1, 1)
    gmin = enumerate_group("min", q)
    assert gmin.order == 2
    gel = enumerate_group("el", q)
    assert gel.order == 16 and gel.kernel_order == 8 and gel.base_order == 2
    gmax = enumerate_group("max", q.associated())
    assert gmax.order == 6
    assert all(v for v in gel.checks.values() if isinstance(v, bool))


def test_min_subgroup_of_max():
    for ring in (F2(), F4()):
        q = hyperbolic(ring, 1, 1)
        omin = set(m.key() for m in enumerate_orthogonal_min(q))
        omax = set(m.key() for m in enumerate_unitary(q.associated()))
        assert omin <= omax
        if ring.find_split_unit() is not None:
            assert omin == omax


def test_extension_check_examples():
    f2 = F2()
    rep = extension_check(hyperbolic(f2, 1, 1))
    assert rep["passed"]
    assert (rep["order_kernel"], rep["order_min"], rep["order_el"]) == (8, 2, 16)
    rep4 = extension_check(hyperbolic(F4(), 1, 1))
    assert rep4["passed"]
    assert rep4["order_el"] == rep4["order_kernel"] * rep4["order_min"]
    rep0 = extension_check(QuadFormEl(f2, 1, Mat(f2, [])))
    assert rep0["passed"] and rep0["order_el"] == 1


def test_split_section():
    f4 = F4()
    q = hyperbolic(f4, 1, 1)
    s1 = split_section(Mat.identity(f4, 2), q)
    assert s1.gamma.is_zero()
    rep = section_homomorphism_report(q)
    assert rep["passed"]
    with pytest.raises(ValueError):
        split_section(Mat.identity(F2(), 2), hyperbolic(F2(), 1, 1))


def test_kernel_action_formula():
    # s(g)^{-1} (1, u) s(g) = (1, g^{-1} u g) in the endomorphism picture
    f4 = F4()
    q = hyperbolic(f4, 1, 1)
    h = q.associated()
    inv_phi = h.inverse()
    from hermkq.forms import selfadjoint_subgroup

    se = selfadjoint_subgroup(f4, 1, 2).elements()
    for g in enumerate_orthogonal_min(q):
        sg = split_section(g, q)
        gi = invert(g)
        for gamma in se:
            conj = compose_el(compose_el(el_inverse(sg), ElMorphism(q, Mat.identity(f4, 2), gamma)), sg)
            assert conj.f == Mat.identity(f4, 2)
            u = inv_phi * gamma
            assert inv_phi * conj.gamma == gi * u * g


def test_dual_numbers_kernel_condition():
    # 1 + u e is unitary over A(e) exactly when u is self-adjoint
    f4 = F4()
    q = hyperbolic(f4, 1, 1)
    h = q.associated()
    ring_e = DualRing(f4, "-e")
    phi_e = h.phi.map_entries(lambda a: (a, f4.zero), ring=ring_e)
    herm_e = HermForm(ring_e, 1, phi_e)
    ident = Mat.identity(ring_e, 2)
    for u in all_matrices(f4, 2, 2):
        ue = u.map_entries(lambda a: (f4.zero, a), ring=ring_e)
        selfadj = h.adjoint(u) == u
        assert check_max(ident + ue, herm_e) == selfadj


def test_dual_numbers_iso():
    rep = dual_numbers_iso(hyperbolic(F4(), 1, 1))
    assert rep["passed"]
    assert rep["order_el"] == rep["order_dual_max"]
    with pytest.raises(ValueError):
        dual_numbers_iso(hyperbolic(F2(), 1, 1))


def test_whitehead_examples():
    f2 = F2()
    ident = Mat.identity(f2, 1)
    rep = whitehead_factorization(ident, ident)
    assert rep["passed"]
    z7 = Fp(7)
    assert whitehead_factorization(Mat.from_strs(z7, [["2"]]), Mat.from_strs(z7, [["3"]]))["passed"]
    f4 = F4()
    rng = random.Random(5)
    units = [m for m in all_matrices(f4, 2, 2) if invert(m) is not None]
    for _ in range(10):
        a = units[rng.randrange(len(units))]
        b = units[rng.randrange(len(units))]
        assert whitehead_factorization(a, b)["passed"]
    with pytest.raises(ValueError):
        whitehead_factorization(Mat.zero(f2, 2), Mat.identity(f2, 2))


def test_hyperbolic_adjoint_fast_path_cross_check():
    for ring, eps in ((F2(), 1), (Fp(5), 1), (Fp(5), -1)):
        q = hyperbolic(ring, eps, 1)
        h = q.associated()
        for f in all_matrices(ring, 2, 2):
            if invert(f) is None:
                continue
            assert hyperbolic_adjoint(f, eps) == h.adjoint(f)


def test_field_diagnostics_on_unitaries():
    f2 = F2()
    q = hyperbolic(f2, 1, 1)
    for f in enumerate_unitary(q.associated()):
        diag = field_hyperbolic_diagnostics(f)
        assert diag["a.td+b.tc=1"] and diag["c.tb+d.ta=1"]
        assert diag["a.tb+b.ta=0"] and diag["c.td+d.tc=0"]
    # the min members additionally satisfy the shift conditions
    for f in enumerate_orthogonal_min(q):
        diag = field_hyperbolic_diagnostics(f)
        assert diag["a.tb_is_shift"] and diag["c.td_is_shift"]


def test_el_morphism_validation():
    f2 = F2()
    q = hyperbolic(f2, 1, 1)
    # a self-adjoint gamma pairs with the identity; a non-self-adjoint one cannot
    ElMorphism(q, Mat.identity(f2, 2), Mat.from_strs(f2, [["1", "0"], ["0", "0"]]))
    with pytest.raises(ValueError):
        ElMorphism(q, Mat.identity(f2, 2), Mat.from_strs(f2, [["0", "1"], ["0", "0"]]))
