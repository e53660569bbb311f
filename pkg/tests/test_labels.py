import json

import pytest
from hypothesis import given, strategies as st

from gds.alcove import omega_group
from gds.characters import UNKNOWN, simple_character, weyl_character
from gds.errors import ParityError, RangeError, StructureError
from gds.labels import (BdmM, ClassicalSimple, CwMnabla, Decomposition, Dual, DualWeyl,
                        FrobTwist, Jmod, Simple, TensorOf, Tilting, TruncInjective, Weyl,
                        character_of, decomposition_from_obj, dual_label, from_obj, gfd_of,
                        jmod, loads, normalize, translate_label, translate_to, validate,
                        wfd_of)

from conftest import make_ctx

A1 = make_ctx("A1", 5)
A1Q = make_ctx("A1", 5, "quantum")
A2 = make_ctx("A2", 5)

a1_weight = st.integers(0, 40).map(lambda a: (a,))
a1_leaves = st.one_of(
    a1_weight.map(Simple), a1_weight.map(Weyl), a1_weight.map(DualWeyl),
    st.integers(0, 8).map(lambda a: Tilting((a,))),
    st.lists(st.integers(0, 8), min_size=1, max_size=3).map(lambda u: Jmod(tuple(u))),
    st.integers(0, 10).flatmap(lambda k: st.integers(0, k).map(
        lambda j: TruncInjective(5 * 2 * k, 5 * 2 * j))),
)
a1_labels = st.recursive(
    a1_leaves,
    lambda inner: st.one_of(
        st.tuples(inner, st.integers(1, 2)).map(lambda p: FrobTwist(*p)),
        st.lists(inner, min_size=2, max_size=3).map(lambda ps: TensorOf(tuple(ps))),
        inner.map(Dual)),
    max_leaves=4)


def test_json_shapes():
    assert json.loads(jmod((0, 5)).dumps()) == {"kind": "jmod", "u": [5], "twist": 1}
    assert json.loads(Simple((3,)).dumps()) == {"kind": "simple", "weight": [3], "twist": 0}
    assert json.loads(BdmM((0, 0)).dumps())["kind"] == "bdm_m"
    with pytest.raises(StructureError):
        loads('{"kind": "nonsense"}')
    with pytest.raises(StructureError):
        loads('{"kind": "simple"}')


def test_pretty():
    assert jmod((0, 5)).pretty() == "J(5)^[1]"
    assert TruncInjective(25, 15).pretty() == "I_25(15)"
    assert CwMnabla((0, 0)).pretty() == "M_nabla((0,0))"


def test_dual_involution_on_named_labels():
    for l in (Weyl((3,)), DualWeyl((7,)), Simple((2,)), TruncInjective(25, 15),
              TensorOf((Weyl((1,)), FrobTwist(DualWeyl((2,)))))):
        assert dual_label(dual_label(l)) == l


def test_jmod_canonical_form():
    assert jmod((0, 0, 3, 0)) == FrobTwist(Jmod((3,)), 2)
    assert jmod((3, 2)) == Jmod((3, 2))
    assert normalize(Jmod(()), A1) == Simple((0,))
    assert normalize(FrobTwist(jmod((0, 1)), 1), A1) == FrobTwist(Jmod((1,)), 2)


def test_normalize_merges():
    assert normalize(TensorOf((Simple((2,)), FrobTwist(Jmod((3,))))), A1) == Jmod((2, 3))
    assert normalize(TensorOf((Simple((2,)), FrobTwist(ClassicalSimple((3,))))), A1Q) == Simple((17,))
    assert normalize(FrobTwist(ClassicalSimple((3,))), A1Q) == Simple((15,))
    # inside a tensor product the classical simple keeps its name
    t = TensorOf((BdmM((0, 0)), FrobTwist(ClassicalSimple((1, 0)))))
    assert normalize(t, make_ctx("A2", 5, "quantum")) == t


def test_trunc_injective():
    with pytest.raises(ParityError):
        TruncInjective(5, 2)
    ch = character_of(TruncInjective(25, 15), A1)
    expected = sum((weyl_character((b,), A1.rs) for b in (25, 23, 15)), weyl_character((0,), A1.rs))
    assert ch == expected - weyl_character((0,), A1.rs)


def test_validate():
    with pytest.raises(RangeError):
        validate(Jmod((9,)), A1)
    with pytest.raises(StructureError):
        validate(Simple((1, 1)), A1)
    with pytest.raises(StructureError):
        validate(Simple((-1,)), A1)


def test_filtration_dimensions():
    assert gfd_of(Simple((15,)), A1) == 3
    assert gfd_of(Simple((4,)), A1) is UNKNOWN
    assert gfd_of(jmod((3, 3, 1)), A1) == 8
    assert gfd_of(DualWeyl((7,)), A1) == 0
    assert wfd_of(DualWeyl((7,)), A1) == 1
    assert gfd_of(BdmM((0, 0)), A2) == 2 and wfd_of(BdmM((0, 0)), A2) == 2
    assert gfd_of(CwMnabla((0, 0)), A2) == 0
    assert wfd_of(TruncInjective(25, 25), A1) == 5
    assert wfd_of(TruncInjective(25, 15), A1) is UNKNOWN
    assert gfd_of(Simple((25,)), A1Q) == 5


def test_translate_examples():
    om = next(o for o in omega_group(A1) if not o.is_identity())
    assert translate_label(om, Simple((15,)), A1) == Simple((18,))
    assert translate_label(om, jmod((0, 5)), A1) == Jmod((3, 5))
    assert translate_to((1,), Simple((0,)), A1) == Simple((1,))
    t = translate_to((1, 0), BdmM((0, 0)), A2)
    assert character_of(t, A2) is UNKNOWN


def test_decomposition_round_trip():
    d = Decomposition.build(A1, [(jmod((0, 5)), 1), (jmod((0, 1)), 1), (jmod((0, 1)), 1)])
    assert len(d) == 3
    summands, meta = decomposition_from_obj(json.loads(d.dumps()))
    assert summands == d.as_dict()
    assert meta == {"type": "A1", "ell": 5, "case": "modular", "complete": True}
    assert d.conserved() is None


@given(a1_labels)
def test_json_round_trip(label):
    assert loads(label.dumps()) == normalize_twists(label)


def normalize_twists(label):
    # JSON flattens nested twists into one power
    if isinstance(label, FrobTwist) and isinstance(label.inner, FrobTwist):
        return normalize_twists(FrobTwist(label.inner.inner, label.power + label.inner.power))
    if isinstance(label, FrobTwist):
        return FrobTwist(normalize_twists(label.inner), label.power)
    if isinstance(label, TensorOf):
        return TensorOf(tuple(normalize_twists(p) for p in label.parts))
    if isinstance(label, Dual):
        return Dual(normalize_twists(label.inner))
    return label


@given(a1_labels)
def test_normalize_is_idempotent_and_keeps_character(label):
    n = normalize(label, A1)
    assert normalize(n, A1) == n
    before, after = character_of(label, A1), character_of(n, A1)
    assert (before is UNKNOWN) == (after is UNKNOWN)
    if before is not UNKNOWN:
        assert before == after


@given(a1_labels)
def test_duality(label):
    d = dual_label(label)
    dd = dual_label(d)
    assert gfd_of(dd, A1) == gfd_of(label, A1) and wfd_of(dd, A1) == wfd_of(label, A1)
    assert wfd_of(label, A1) == gfd_of(d, A1)
    assert gfd_of(label, A1) == wfd_of(d, A1)
    ch, chd = character_of(label, A1), character_of(d, A1)
    if ch is not UNKNOWN:
        assert ch == chd


@given(st.integers(0, 60), st.sampled_from([A1, A1Q]))
def test_omega_translation_is_an_involution_on_simples(a, ctx):
    from gds.alcove import locate
    loc = locate((a,), ctx)
    if loc.weight not in ((0,), (3,)) or not loc.regular:
        return
    om = next(o for o in omega_group(ctx) if not o.is_identity())
    once = translate_label(om, Simple((a,)), ctx)
    assert translate_label(om, once, ctx) == Simple((a,))
    assert gfd_of(once, ctx) == gfd_of(Simple((a,)), ctx)


@given(st.integers(0, 8), st.integers(1, 3))
def test_translation_to_nu_preserves_filtration_dimension(a, nu):
    x = (5 * a,)
    lab = translate_to((nu,), Simple(x), A1)
    assert gfd_of(lab, A1) == gfd_of(Simple(x), A1)
    # the translate stays in the alcove of x
    assert (lab.weight[0] + 1) // 5 == (x[0] + 1) // 5
    assert lab.weight[0] != x[0]
    assert character_of(lab, A1) == simple_character(lab.weight, A1)
