import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import d_tensor, to_tensor
from strategies import forms
from trimser.forms import exterior_derivative, parse
from trimser.linalg import D, equal, image, span
from trimser.proxy import (
    VectorField,
    ac_supplement,
    build_AC_pair,
    build_CF_parts,
    build_CF_space,
    check_prop_AC,
    check_prop_CF,
    cross,
    curl2d,
    curl3d,
    delta_e,
    delta_h,
    div,
    flat,
    flat_scalar,
    grad,
    homogeneous_vectors,
    poly,
    position,
    rot,
    sharp,
    sigma_hat_in_expected,
)
from trimser.spaces import j_space, sminus_space


def field(n, *comps):
    return VectorField(tuple(poly(n, c) for c in comps))


def test_flat_examples():
    v = field(3, {(1, 0, 0): 1}, {(0, 1, 0): 2}, {(0, 0, 1): 3})
    assert flat(v, 1) == parse("(1) x1 dx1 + (2) x2 dx2 + (3) x3 dx3", 3, 1)
    assert flat(v, 2) == parse("(3) x3 dx1^dx2 + (-2) x2 dx1^dx3 + (1) x1 dx2^dx3", 3, 2)
    assert flat_scalar(poly(2, {(1, 1): 1}), 2) == parse("(1) x1 x2 dx1^dx2", 2, 2)
    with pytest.raises(ValueError):
        flat(field(2, {(0, 0): 1}, {(0, 0): 1}), 2)
    with pytest.raises(ValueError):
        flat_scalar(poly(3, {(0, 0, 0): 1}), 1)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(2, 1), (3, 1), (3, 2)]).flatmap(lambda nk: forms(n=nk[0], k=nk[1], max_degree=3)))
def test_sharp_inverts_flat(omega):
    assert flat(sharp(omega), omega.k) == omega


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3]).flatmap(lambda n: forms(n=n, k=n, max_degree=3)))
def test_sharp_of_volume_form(omega):
    assert flat_scalar(sharp(omega), omega.n) == omega


def test_rot_is_quarter_turn():
    v = field(2, {(1, 0): 1}, {(0, 2): 3})
    assert rot(v).components == (poly(2, {(0, 2): 3}), poly(2, {(1, 0): -1}))
    twice = rot(rot(v))
    assert twice.components == tuple(-c for c in v.components)


def test_curl2d_example():
    assert curl2d(poly(2, {(1, 1): 1})).components == (poly(2, {(1, 0): 1}), poly(2, {(0, 1): -1}))


@settings(max_examples=50, deadline=None)
@given(forms(n=2, k=0, max_degree=5))
def test_div_curl2d_vanishes(w):
    assert not div(curl2d(w))


@settings(max_examples=40, deadline=None)
@given(forms(n=3, k=0, max_degree=4))
def test_curl_grad_vanishes(w):
    assert all(not c for c in curl3d(grad(w)).components)


@settings(max_examples=40, deadline=None)
@given(forms(n=3, k=1, max_degree=3))
def test_vector_calculus_matches_d(omega):
    v = sharp(omega)
    assert flat(curl3d(v), 2) == exterior_derivative(omega)
    assert flat_scalar(div(sharp(exterior_derivative(omega))), 3) == exterior_derivative(exterior_derivative(omega))
    assert flat_scalar(div(v), 3) == exterior_derivative(flat(v, 2))


def test_grad_matches_sympy():
    w = poly(3, {(2, 1, 0): 3, (0, 0, 4): -1})
    comps = d_tensor(to_tensor(w), 3, 0)
    got = to_tensor(flat(grad(w), 1))
    for i in range(3):
        assert got[(i,)] == comps[(i,)]


def test_cross_and_position():
    e1 = field(3, {(0, 0, 0): 1}, {}, {})
    e2 = field(3, {}, {(0, 0, 0): 1}, {})
    assert cross(e1, e2).components[2] == poly(3, {(0, 0, 0): 1})
    assert position(2).components == (poly(2, {(1, 0): 1}), poly(2, {(0, 1): 1}))


def test_vector_field_validation():
    with pytest.raises(ValueError):
        VectorField((poly(2, {(0, 0): 1}),))
    with pytest.raises(ValueError):
        VectorField((poly(3, {(0, 0, 0): 1}), poly(3, {(0, 0, 0): 1})))


def test_ac_supplement_is_curl_of_potential():
    s1, s2 = ac_supplement(2)
    # curl of x (1 - x^2) y = (x - x^3, -(1 - 3 x^2) y)
    assert s1.components == (poly(2, {(1, 0): 1, (3, 0): -1}), poly(2, {(0, 1): -1, (2, 1): 3}))
    assert not div(s2)
    with pytest.raises(ValueError):
        ac_supplement(0)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_ac_pair(r):
    v, w, count = build_AC_pair(r)
    assert equal(v, sminus_space(2, 1, r + 1))
    assert equal(w, sminus_space(2, 2, r + 1))
    assert count == v.dim
    rep = check_prop_AC(r)
    assert rep.passed, rep.record()


def test_ac_counts_at_lowest_order():
    v, w, count = build_AC_pair(1)
    assert (v.dim, w.dim, count) == (10, 3, 10)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_supplement_lies_in_expected_space(r):
    assert sigma_hat_in_expected(r)


@pytest.mark.parametrize("n,r", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)])
def test_cf_family(n, r):
    rep = check_prop_CF(n, r)
    assert rep.passed, rep.record()
    for k in range(n + 1):
        assert equal(build_CF_space(n, r, k), sminus_space(n, k, r + 1))


def test_cf_dims():
    assert check_prop_CF(3, 1).detail == "dims 20,36,21,4"
    assert build_CF_space(3, 1, 3).dim == 4
    with pytest.raises(ValueError):
        build_CF_parts(2, 1, 3)
    with pytest.raises(ValueError):
        build_CF_parts(3, 0, 1)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_delta_families(r):
    assert len(delta_h(2, r + 1)) == 2
    assert len(delta_h(3, r + 1)) == 3 * (r + 2) + 3
    assert equal(span([flat(e, 1) for e in delta_e(r)], 3, 1), j_space(3, 1, r + 1))
    assert len(homogeneous_vectors(3, r)) == 3 * (r + 1) * (r + 2) // 2


def test_delta_e_curl_equals_d_of_flat():
    for e in delta_e(2):
        assert flat(curl3d(e), 2) == exterior_derivative(flat(e, 1))
    assert equal(span([flat(curl3d(e), 2) for e in delta_e(2)], 3, 2), image(j_space(3, 1, 3), D))
