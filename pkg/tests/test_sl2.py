import pytest
from hypothesis import given, strategies as st

from gds.alcove import ell_dot, length, omega_group, translation
from gds.characters import simple_character, weyl_character
from gds.core_lie import root_system
from gds.errors import CaseError, DominanceError, EngineScopeError, ParityError, RangeError
from gds.labels import (DualWeyl, Jmod, Simple, Tilting, TruncInjective, character_of,
                        dual_label, gfd_of, jmod)
from gds.sl2 import (a1_parameters, cg_ell_set, cg_set, doty_henke, dual_weyl_c,
                     element_for_weight, generic_summand, generic_summand_nabla,
                     generic_summand_weyl, int_digits, regular_part, restricted_tensor,
                     trunc_injective_filtration)

from conftest import make_ctx

A1 = root_system("A1")


def t(a):
    return translation(A1, (a,))


def omega(ctx):
    return next(o for o in omega_group(ctx) if not o.is_identity())


def test_cg_sets(a1):
    assert cg_set(2, 3) == [1, 3, 5]
    assert cg_ell_set(3, 3, a1) == [0, 4, 6]
    assert cg_ell_set(4, 4, a1) == [4, 6, 8]
    assert cg_ell_set(1, 1, a1) == [0, 2]
    with pytest.raises(RangeError):
        cg_ell_set(5, 1, a1)


def test_int_digits():
    assert int_digits(13, 5) == [3, 2]
    assert int_digits(0, 5, 2) == [0, 0]


def test_restricted_tensor(a1):
    d = restricted_tensor(3, 3, a1)
    assert d.as_dict() == {Tilting((0,)): 1, Tilting((4,)): 1, Tilting((6,)): 1}
    assert d.conserved()


def test_doty_henke_example(a1):
    d = doty_henke(13, 7, a1)
    assert d.conserved()
    assert sum(character_of(l, a1).dim() * m for l, m in d.summands) == 12 * 6
    with pytest.raises(CaseError):
        doty_henke(1, 1, make_ctx("A1", 5, "quantum"))
    with pytest.raises(DominanceError):
        doty_henke(-1, 1, a1)
    with pytest.raises(EngineScopeError):
        doty_henke(1, 1, make_ctx("A2", 5))


def test_parameters(a1):
    assert a1_parameters(t(3), a1) == (3, omega(a1) * omega(a1))
    a, om = a1_parameters(t(2) * omega(a1), a1)
    assert a == 2 and om == omega(a1)
    assert element_for_weight(15, a1) == t(3)


def test_regular_part_examples(a1, a1q):
    d = regular_part(t(2), t(3), a1)
    assert d.as_dict() == {jmod((0, 5)): 1, jmod((0, 1)): 1}
    assert d.conserved()
    q = regular_part(t(2), t(3), a1q)
    assert q.as_dict() == {Simple((25,)): 1, Simple((15,)): 1, Simple((5,)): 1}
    assert q.conserved()
    assert character_of(jmod((0, 5)), a1).dim() == 10


def test_generic_summand_examples(a1, a1q):
    assert generic_summand(t(2), t(3), a1) == jmod((0, 5))
    assert generic_summand(t(2) * omega(a1q), t(1), a1q) == Simple((18,))
    assert generic_summand_nabla(t(2), t(3), a1) == TruncInjective(25, 15)
    assert generic_summand_nabla(t(2), t(3), a1q) == DualWeyl((25,))
    assert generic_summand_weyl(t(2), t(3), a1q).pretty() == "Delta(25)"
    assert gfd_of(generic_summand(t(2), t(3), a1), a1) == 5


def test_truncated_injective(a1):
    assert trunc_injective_filtration(5, 3, a1) == {5: 1, 3: 1}
    assert trunc_injective_filtration(8, 8, a1) == {8: 1}
    with pytest.raises(ParityError):
        trunc_injective_filtration(5, 2, a1)


def test_dual_weyl_c(a1):
    assert dual_weyl_c(2, 3, a1) == 3
    assert dual_weyl_c(1, 1, a1) == 2


elements = st.tuples(st.integers(0, 12), st.booleans())


def build(ctx, desc):
    a, twisted = desc
    return t(a) * omega(ctx) if twisted else t(a)


@given(st.integers(0, 200), st.integers(0, 200), st.sampled_from([2, 3, 5, 7]))
def test_doty_henke_conserves_characters(a, b, p):
    ctx = make_ctx("A1", p)
    d = doty_henke(a, b, ctx)
    assert d.conserved()
    assert all(isinstance(l, (Jmod, Simple)) or hasattr(l, "inner") for l in d.labels())


@given(elements, elements, st.sampled_from(["modular", "quantum"]))
def test_regular_part_conserves(x, y, case):
    ctx = make_ctx("A1", 5, case)
    d = regular_part(build(ctx, x), build(ctx, y), ctx)
    assert d.conserved()


@given(elements, elements)
def test_quantum_regular_part_size(x, y):
    ctx = make_ctx("A1", 5, "quantum")
    d = regular_part(build(ctx, x), build(ctx, y), ctx)
    assert len(d) == min(x[0], y[0]) + 1


@given(elements, elements, st.sampled_from(["modular", "quantum"]))
def test_generic_summand_occurs_once(x, y, case):
    ctx = make_ctx("A1", 5, case)
    X, Y = build(ctx, x), build(ctx, y)
    g = generic_summand(X, Y, ctx)
    assert regular_part(X, Y, ctx).as_dict().get(g) == 1
    assert gfd_of(g, ctx) == length(X, ctx) + length(Y, ctx)


@given(elements, elements, st.sampled_from(["modular", "quantum"]))
def test_nabla_and_weyl_summands_are_dual(x, y, case):
    ctx = make_ctx("A1", 5, case)
    X, Y = build(ctx, x), build(ctx, y)
    g = generic_summand_nabla(X, Y, ctx)
    assert generic_summand_weyl(X, Y, ctx) == dual_label(g)
    assert gfd_of(g, ctx) == 0
    # the nabla summand sits inside the tensor product of dual Weyl characters
    full = (weyl_character(ell_dot(X, (0,), ctx), A1) * weyl_character(ell_dot(Y, (0,), ctx), A1))
    ch = character_of(g, ctx)
    assert all(full[k] >= v for k, v in ch.items())


@given(st.integers(0, 60), st.integers(0, 60))
def test_simple_tensor_dimension(a, b):
    ctx = make_ctx("A1", 3)
    d = doty_henke(a, b, ctx)
    dims = sum(character_of(l, ctx).dim() * m for l, m in d.summands)
    assert dims == simple_character((a,), ctx).dim() * simple_character((b,), ctx).dim()
