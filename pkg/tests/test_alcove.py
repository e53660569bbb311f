import warnings

import pytest
from hypothesis import given, strategies as st

from gds.alcove import (EllContext, affine_reflection, ell_dot, element_from_weight, identity,
                        in_affine_weyl_group, length, locate, omega_group, omega_of,
                        parse_element, parse_weight, simple, steinberg_factor, translation)
from gds.core_lie import root_system
from gds.errors import DominanceError, StructureError, UnsupportedEllError

from conftest import make_ctx

A1, A2 = root_system("A1"), root_system("A2")


def words(rs, max_size=6):
    gens = [simple(rs, i) for i in range(rs.rank)] + [affine_reflection(rs)]
    return st.lists(st.sampled_from(gens), max_size=max_size)


def product_of(rs, elems):
    x = identity(rs)
    for g in elems:
        x = x * g
    return x


def test_context_validation():
    with pytest.raises(UnsupportedEllError):
        EllContext(A2, 2)
    with pytest.raises(UnsupportedEllError):
        EllContext(A1, 9)
    with pytest.raises(StructureError):
        EllContext(A1, 5, "mixed")
    with pytest.warns(UserWarning):
        EllContext(A1, 4, "quantum")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        EllContext(A1, 9, "quantum")


def test_ell_dot_examples(a1, a2):
    assert ell_dot(translation(A1, (3,)), (0,), a1) == (15,)
    assert ell_dot(identity(A2), (2, 1), a2) == (2, 1)
    assert ell_dot(affine_reflection(A2), (0, 0), a2) == (3, 3)


def test_length_examples(a1, a2):
    assert length(translation(A1, (3,)), a1) == 3
    assert length(affine_reflection(A2), a2) == 1
    assert length(translation(A2, (1, 1)), a2) == 4
    for om in omega_group(a2):
        assert length(om, a2) == 0


def test_omega_group(a1, a2):
    om1 = omega_group(a1)
    assert len(om1) == 2
    w = next(o for o in om1 if not o.is_identity())
    assert w == translation(A1, (1,)) * simple(A1, 0)
    for z in range(4):
        assert ell_dot(w, (z,), a1) == (5 - 2 - z,)
    om2 = omega_group(a2)
    assert len(om2) == 3
    assert any(o.is_identity() for o in om2)
    # closed under composition and cyclic of order 3
    for x in om2:
        for y in om2:
            assert x * y in om2
        assert (x * x * x).is_identity()


def test_omega_of_examples(a1):
    om1 = omega_group(a1)
    w = next(o for o in om1 if not o.is_identity())
    assert omega_of(translation(A1, (2,)), a1).is_identity()
    assert omega_of(translation(A1, (1,)) * simple(A1, 0), a1) == w
    assert omega_of(translation(A1, (2,)) * w, a1) == w


def test_locate_examples(a1, a2):
    loc = locate((13,), a1)
    assert loc.regular and loc.weight == (3,)
    assert ell_dot(loc.element, (3,), a1) == (13,)
    loc = locate((2,), a1)
    assert loc.element.is_identity() and loc.weight == (2,) and loc.regular
    loc = locate((4,), a1)
    assert loc.weight == (4,) and not loc.regular
    assert locate((1, 1), a2).regular
    # (1,2) + rho lies on the upper wall
    assert not locate((1, 2), a2).regular


def test_steinberg_factor_examples(a1, a2):
    x = element_from_weight((13,), a1)
    sf = steinberg_factor(x, a1)
    assert sf.lam == (2,) and ell_dot(sf.x0, (0,), a1) == (3,)
    assert sf.eps == 0 and sf.omega == sf.x0
    u = affine_reflection(A2)
    sf = steinberg_factor(u, a2)
    assert sf.lam == (0, 0) and sf.eps == 1 and sf.omega.is_identity() and sf.x0 == u
    with pytest.raises(DominanceError):
        steinberg_factor(simple(A1, 0), a1)


def test_parse():
    assert parse_weight("(1,2)") == (1, 2)
    assert parse_weight("7") == (7,)
    x = parse_element("t:(1,0)s1u", A2)
    assert x == translation(A2, (1, 0)) * simple(A2, 0) * affine_reflection(A2)
    assert parse_element("e", A2).is_identity()
    with pytest.raises(StructureError):
        parse_element("t:(1,0)q", A2)
    with pytest.raises(StructureError):
        parse_element("s3", A2)


@given(words(A2), words(A2), words(A2))
def test_group_law(xs, ys, zs):
    x, y, z = product_of(A2, xs), product_of(A2, ys), product_of(A2, zs)
    assert (x * y) * z == x * (y * z)
    assert (x * x.inverse()).is_identity()


@given(words(A2), words(A2), st.tuples(st.integers(-6, 6), st.integers(-6, 6)))
def test_dot_action_law(xs, ys, mu):
    ctx = make_ctx("A2", 5)
    x, y = product_of(A2, xs), product_of(A2, ys)
    assert ell_dot(x * y, mu, ctx) == ell_dot(x, ell_dot(y, mu, ctx), ctx)


@given(words(A2, 8), st.sampled_from([(0, 0), (1, 0), (0, 2), (1, 1), (2, 0)]))
def test_locate_round_trip(xs, lam):
    ctx = make_ctx("A2", 5)
    x = product_of(A2, xs)
    mu = ell_dot(x, lam, ctx)
    loc = locate(mu, ctx)
    assert loc.regular and loc.weight == lam and loc.element == x
    assert in_affine_weyl_group(loc.element, ctx)


@given(words(A2, 8))
def test_affine_words_have_coxeter_length_bound(xs):
    ctx = make_ctx("A2", 7)
    x = product_of(A2, xs)
    n = length(x, ctx)
    assert n <= len(xs) and n % 2 == len(xs) % 2


@given(words(A2), words(A2), st.integers(0, 2), st.integers(0, 2))
def test_omega_of_is_multiplicative(xs, ys, i, j):
    ctx = make_ctx("A2", 5)
    om = omega_group(ctx)
    x = product_of(A2, xs) * om[i]
    y = product_of(A2, ys) * om[j]
    assert omega_of(x * y, ctx) == omega_of(x, ctx) * omega_of(y, ctx)


@given(st.tuples(st.integers(0, 40), st.integers(0, 40)), st.sampled_from([5, 7]))
def test_singular_locate_is_consistent(mu, ell):
    ctx = make_ctx("A2", ell)
    loc = locate(mu, ctx)
    assert ell_dot(loc.element, loc.weight, ctx) == mu
    p = A2.pairings(tuple(c + 1 for c in loc.weight))
    assert all(0 <= v <= ell for v in p)


@given(st.tuples(st.integers(0, 30), st.integers(0, 30)), st.tuples(st.integers(0, 30), st.integers(0, 30)))
def test_length_additivity_for_dominant_translations(lam, eta):
    ctx = make_ctx("A2", 5)
    loc = locate(eta, ctx)
    if not loc.regular:
        return
    x = loc.element
    t = translation(A2, lam)
    assert length(t, ctx) == A2.rho_check_pairing2(lam)
    assert length(t * x, ctx) == length(t, ctx) + length(x, ctx)
    sf = steinberg_factor(t * x, ctx)
    assert length(t * x, ctx) == length(translation(A2, sf.lam), ctx) + length(sf.x0, ctx)
