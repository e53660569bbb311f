"""Type A1 engines: Clebsch-Gordan sets, the Krull-Schmidt decomposition of
L(a) (x) L(b), regular parts and generic direct summands of tensor products of
simple and dual Weyl modules.

Weights are single integers a (meaning a times the fundamental weight) unless
a function says otherwise; elements of W_ext are ``ExtAffineElement`` values.
"""
from __future__ import annotations

from itertools import product as cartesian

from .alcove import (EllContext, ExtAffineElement, element_from_weight, length,
                     steinberg_factor)
from .characters import (Character, into_weyl_basis, simple_character, weyl_character_any,
                         weyl_into_simples)
from .errors import CaseError, DataIntegrityError, DominanceError, EngineScopeError, ParityError, RangeError
from .labels import (Decomposition, DualWeyl, Label, Simple, Tilting,
                     TruncInjective, dual_label, jmod, translate_label, translate_weight)


def _require_a1(ctx: EllContext):
    if ctx.rs.label != "A1":
        raise EngineScopeError("this engine is for type A1")


def int_digits(a: int, ell: int, width: int = 0) -> list[int]:
    """Little-endian l-adic digits of a, padded to ``width``."""
    out = []
    while a:
        a, r = divmod(a, ell)
        out.append(r)
    return out + [0] * (width - len(out))


def cg_set(a: int, b: int) -> list[int]:
    return [abs(a - b) + 2 * i for i in range(min(a, b) + 1)]


def cg_ell_set(a: int, b: int, ctx: EllContext) -> list[int]:
    ell = ctx.ell
    if not (0 <= a < ell and 0 <= b < ell):
        raise RangeError(f"({a},{b}) is not l-restricted")
    cg = cg_set(a, b)
    removed = {2 * ell - 2 - c for c in cg if c >= ell}
    return [c for c in cg if c not in removed]


def restricted_tensor(a: int, b: int, ctx: EllContext) -> Decomposition:
    """L(a) (x) L(b) for restricted a, b as a sum of tilting modules."""
    _require_a1(ctx)
    items = [(Tilting((c,)), 1) for c in cg_ell_set(a, b, ctx)]
    expected = simple_character((a,), ctx) * simple_character((b,), ctx)
    return Decomposition.build(ctx, items, expected)


def doty_henke(a: int, b: int, ctx: EllContext) -> Decomposition:
    """Krull-Schmidt decomposition of L(a) (x) L(b) into modules J(u)."""
    _require_a1(ctx)
    if ctx.quantum:
        raise CaseError("the J-module decomposition is modular; use regular_part")
    if a < 0 or b < 0:
        raise DominanceError("weights must be non-negative")
    ell = ctx.ell
    n = max(len(int_digits(a, ell)), len(int_digits(b, ell)))
    da, db = int_digits(a, ell, n), int_digits(b, ell, n)
    choices = [cg_ell_set(x, y, ctx) for x, y in zip(da, db)]
    items: dict[Label, int] = {}
    for u in cartesian(*choices):
        lab = jmod(u)
        items[lab] = items.get(lab, 0) + 1
    expected = simple_character((a,), ctx) * simple_character((b,), ctx)
    return Decomposition.build(ctx, items, expected)


def a1_parameters(x: ExtAffineElement, ctx: EllContext) -> tuple[int, ExtAffineElement]:
    """(a, omega) with x = t_a omega, so that x.0 = t_a omega . 0."""
    _require_a1(ctx)
    sf = steinberg_factor(x, ctx)
    # in rank one x0 is already a length-zero element
    if length(sf.x0, ctx) != 0:
        raise DataIntegrityError(f"restricted part of {x} has positive length")
    return sf.lam[0], sf.x0


def _twist_pair(x, y, ctx):
    a, om = a1_parameters(x, ctx)
    b, om2 = a1_parameters(y, ctx)
    return a, b, om * om2


def _translated_character(ch: Character, om: ExtAffineElement, ctx: EllContext) -> Character:
    """Image of a principal-block character under T^omega, computed in the chi-basis."""
    if om.is_identity():
        return ch
    out = Character(ctx.rs)
    for mu, k in into_weyl_basis(ch).items():
        out = out + weyl_character_any(translate_weight(om, mu, ctx), ctx.rs).scale(k)
    return out


def regular_part(x: ExtAffineElement, y: ExtAffineElement, ctx: EllContext) -> Decomposition:
    """Regular part of L(x.0) (x) L(y.0) for x, y in W_ext^+."""
    a, b, om = _twist_pair(x, y, ctx)
    ell = ctx.ell
    if ctx.quantum:
        items = [(translate_label(om, Simple((ell * c,)), ctx), 1) for c in cg_set(a, b)]
    else:
        n = max(len(int_digits(a, ell)), len(int_digits(b, ell)))
        da, db = int_digits(a, ell, n), int_digits(b, ell, n)
        choices = [cg_ell_set(p, q, ctx) for p, q in zip(da, db)]
        items = [(translate_label(om, jmod((0,) + u), ctx), 1) for u in cartesian(*choices)]
    base = simple_character((ell * a,), ctx) * simple_character((ell * b,), ctx)
    return Decomposition.build(ctx, items, _translated_character(base, om, ctx))


def generic_summand(x: ExtAffineElement, y: ExtAffineElement, ctx: EllContext) -> Label:
    """The generic direct summand G(x, y) of L(x.0) (x) L(y.0)."""
    a, b, om = _twist_pair(x, y, ctx)
    ell = ctx.ell
    if ctx.quantum:
        return translate_label(om, Simple((ell * (a + b),)), ctx)
    n = max(len(int_digits(a, ell)), len(int_digits(b, ell)))
    sums = [p + q for p, q in zip(int_digits(a, ell, n), int_digits(b, ell, n))]
    return translate_label(om, jmod((0,) + tuple(sums)), ctx)


def dual_weyl_c(a: int, b: int, ctx: EllContext) -> int:
    ell = ctx.ell
    n = max(len(int_digits(a, ell)), len(int_digits(b, ell)))
    da, db = int_digits(a, ell, n), int_digits(b, ell, n)
    return sum(min(p + q, 2 * ell - 2 - p - q) * ell ** i for i, (p, q) in enumerate(zip(da, db)))


def generic_summand_nabla(x: ExtAffineElement, y: ExtAffineElement, ctx: EllContext) -> Label:
    """The generic direct summand of nabla(x.0) (x) nabla(y.0)."""
    a, b, om = _twist_pair(x, y, ctx)
    ell = ctx.ell
    d = ell * (a + b)
    if ctx.quantum:
        return translate_label(om, DualWeyl((d,)), ctx)
    c = ell * dual_weyl_c(a, b, ctx)
    inner: Label = DualWeyl((d,)) if c == d else TruncInjective(d, c)
    return translate_label(om, inner, ctx)


def generic_summand_weyl(x: ExtAffineElement, y: ExtAffineElement, ctx: EllContext) -> Label:
    """The generic summand of Delta(x.0) (x) Delta(y.0), the dual of the nabla one."""
    return dual_label(generic_summand_nabla(x, y, ctx))


def trunc_injective_filtration(d: int, c: int, ctx: EllContext) -> dict[int, int]:
    """nabla-multiplicities [I_d(c) : nabla(b)] = [nabla(b) : L(c)] for b in pi_d."""
    _require_a1(ctx)
    if ctx.quantum:
        raise CaseError("truncated injectives are used in the modular case")
    if c < 0 or c > d or (d - c) % 2:
        raise ParityError(f"{c} is not in pi_{d}")
    out = {}
    for b in range(d, c - 1, -2):
        m = weyl_into_simples((b,), ctx).get((c,), 0)
        if m:
            out[b] = m
    return out


def element_for_weight(mu: int, ctx: EllContext) -> ExtAffineElement:
    """The x in W_ext^+ with x.0 = mu; BlockError outside the extended principal block."""
    return element_from_weight((mu,), ctx)
