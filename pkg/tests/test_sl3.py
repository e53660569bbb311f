import pytest
from hypothesis import given, strategies as st

from gds.alcove import ell_dot, length, omega_group, translation
from gds.characters import weyl_character
from gds.core_lie import root_system
from gds.errors import CaseError, EngineScopeError, RangeError, ScopeError
from gds.labels import (BdmM, ClassicalSimple, CwMnabla, DualWeyl, FrobTwist, Simple,
                        TensorOf, Tilting, a2_word, character_of, gfd_of, translate_label)
from gds.sl3 import (bdm_m_structure, classical_tensor, cw_mnabla_filtration,
                     generic_summand, generic_summand_nabla_restricted, m_lambda_mu,
                     regular_part, restricted_highest_summand)

from conftest import make_ctx

A2 = root_system("A2")
def u(ctx):
    return a2_word("u", ctx)


def test_bdm_structure(a2):
    s = bdm_m_structure((0, 0), a2)
    assert s.length == 5 and s.self_dual
    assert s.layers[0] == s.layers[2] == (Simple((3, 3)),)
    assert set(s.layers[1]) == {Simple((0, 0)), Simple((2, 5)), Simple((5, 2))}
    assert character_of(BdmM((0, 0)), a2).dim() == 163
    assert character_of(CwMnabla((0, 0)), a2).dim() == 226
    assert len(cw_mnabla_filtration((0, 0), a2)) == 3


def test_restricted_highest_summand(a2, a2q):
    assert restricted_highest_summand((1, 1), (2, 2), a2) == Simple((3, 3))
    assert restricted_highest_summand((1, 1), (1, 1), a2) == Tilting((2, 2))
    assert restricted_highest_summand((2, 2), (2, 2), a2) == Tilting((4, 4))
    with pytest.raises(RangeError):
        restricted_highest_summand((5, 0), (0, 0), a2)
    with pytest.raises(CaseError):
        restricted_highest_summand((1, 1), (1, 1), a2q)


def test_m_lambda_mu(a2):
    m = m_lambda_mu((6, 6), (12, 12), a2)
    assert m == TensorOf((Simple((3, 3)), FrobTwist(Simple((3, 3)))))
    assert m.pretty() == "L((3,3)) (x) L((3,3))^[1]"


def test_classical_tensor():
    assert classical_tensor((1, 0), (0, 1)) == {(0, 0): 1, (1, 1): 1}
    assert classical_tensor((1, 1), (1, 1)) == {(2, 2): 1, (3, 0): 1, (0, 3): 1, (1, 1): 2, (0, 0): 1}


def test_quantum_examples(a2q):
    x = translation(A2, (1, 0)) * u(a2q)
    g = generic_summand(x, u(a2q), a2q)
    assert g == TensorOf((BdmM((0, 0)), FrobTwist(ClassicalSimple((1, 0)))))
    assert gfd_of(g, a2q) == 4
    assert gfd_of(g, a2q) == length(x, a2q) + length(u(a2q), a2q)


def test_omega_translates(a2):
    nus = set()
    for om in omega_group(a2):
        nus.add(translate_label(om, BdmM((0, 0)), a2))
    assert nus == {BdmM((0, 0)), BdmM((2, 0)), BdmM((0, 2))}


def test_nabla_restricted(a2):
    assert generic_summand_nabla_restricted(u(a2), u(a2), a2) == CwMnabla((0, 0))
    assert generic_summand_nabla_restricted(u(a2), translation(A2, (0, 0)), a2) == DualWeyl((3, 3))
    with pytest.raises(ScopeError):
        generic_summand_nabla_restricted(translation(A2, (1, 1)), u(a2), a2)


def test_scope(a1):
    with pytest.raises(EngineScopeError):
        regular_part(u(make_ctx("A2", 5)), u(make_ctx("A2", 5)), a1)


def elements(ctx):
    oms = omega_group(ctx)
    return st.builds(
        lambda lam, eps, i: translation(A2, lam) * (u(ctx) if eps else translation(A2, (0, 0))) * oms[i],
        st.tuples(st.integers(0, 2), st.integers(0, 2)), st.booleans(), st.integers(0, 2))


QCTX = make_ctx("A2", 5, "quantum")
MCTX = make_ctx("A2", 5)


@given(elements(QCTX), elements(QCTX))
def test_quantum_regular_part(x, y):
    d = regular_part(x, y, QCTX)
    assert d.conserved()
    g = generic_summand(x, y, QCTX)
    assert d.as_dict().get(g) == 1
    assert gfd_of(g, QCTX) == length(x, QCTX) + length(y, QCTX)


@given(elements(MCTX), elements(MCTX))
def test_modular_regular_part(x, y):
    d = regular_part(x, y, MCTX)
    assert d.conserved() in (True, None)
    if d.complete:
        assert d.conserved()
    g = generic_summand(x, y, MCTX)
    assert d.as_dict().get(g) == 1
    assert gfd_of(g, MCTX) == length(x, MCTX) + length(y, MCTX)


@given(elements(QCTX), elements(QCTX), st.integers(0, 2))
def test_regular_part_is_omega_equivariant(x, y, i):
    om = omega_group(QCTX)[i]
    moved = regular_part(x * om, y, QCTX).as_dict()
    base = {translate_label(om, l, QCTX): m for l, m in regular_part(x, y, QCTX).as_dict().items()}
    assert moved == base


@given(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.tuples(st.integers(0, 3), st.integers(0, 3)))
def test_quantum_cardinality(lam, mu):
    x, y = translation(A2, lam), translation(A2, mu)
    d = regular_part(x, y, QCTX)
    assert len(d) == sum(classical_tensor(lam, mu).values())
    chi = weyl_character(lam, A2) * weyl_character(mu, A2)
    assert chi.dim() == sum(weyl_character(nu, A2).dim() * m for nu, m in classical_tensor(lam, mu).items())
