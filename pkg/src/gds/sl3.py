"""Type A2 engines: the modules M(nu), the summands M(lambda, mu), regular parts and
generic direct summands of tensor products, and the dual Weyl analogues.

The affine Weyl group is generated by s, t (finite simple reflections) and u.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .alcove import (EllContext, ExtAffineElement, check_alcove_weight, ell_dot,
                     is_restricted, steinberg_factor)
from .characters import (Character, digits, in_upper_alcove, into_weyl_basis,
                         simple_character, sum_characters, weyl_character, frobenius_stretch)
from .core_lie import RootSystem, Weight, root_system, wadd
from .errors import (CaseError, DataIntegrityError, EngineScopeError, RangeError,
                     ResourceError, ScopeError)
from .labels import (BdmM, ClassicalSimple, CwMnabla, Decomposition, DualWeyl, FrobTwist,
                     Label, Simple, TensorOf, Tilting, bdm_weights, character_of,
                     normalize, translate_label)

MAX_DIGITS = 64


def _require_a2(ctx: EllContext):
    if ctx.rs.label != "A2":
        raise EngineScopeError("this engine is for type A2")


@dataclass(frozen=True)
class BdmStructure:
    nu: Weight
    layers: tuple[tuple[Label, ...], ...]
    composition: dict
    self_dual: bool = True

    @property
    def length(self) -> int:
        return sum(self.composition.values())


def bdm_m_structure(nu: Weight, ctx: EllContext) -> BdmStructure:
    """Loewy layers of M(nu): L(u.nu) on top and in the socle, three simples in between."""
    _require_a2(ctx)
    nu = tuple(nu)
    check_alcove_weight(nu, ctx)
    ws = bdm_weights(nu, ctx)
    top = (Simple(ws["u"]),)
    middle = (Simple(ws["us"]), Simple(ws[""]), Simple(ws["ut"]))
    comp = {Simple(ws["u"]): 2, Simple(ws["us"]): 1, Simple(ws["ut"]): 1, Simple(ws[""]): 1}
    return BdmStructure(nu, (top, middle, top), comp)


def restricted_highest_summand(lp: Weight, mp: Weight, ctx: EllContext) -> Label:
    """M(lambda', mu') for restricted weights: a simple or a tilting module."""
    _require_a2(ctx)
    if ctx.quantum:
        raise CaseError("M(lambda, mu) is used in the modular case")
    lp, mp = tuple(lp), tuple(mp)
    if not (is_restricted(lp, ctx) and is_restricted(mp, ctx)):
        raise RangeError(f"{lp} and {mp} must both be l-restricted")
    total = wadd(lp, mp)
    if in_upper_alcove(total, ctx) and (in_upper_alcove(lp, ctx) or in_upper_alcove(mp, ctx)):
        return Simple(total)
    return Tilting(total)


def _digit_pairs(lam: Weight, mu: Weight, ctx: EllContext):
    dl, dm = digits(tuple(lam), ctx.ell), digits(tuple(mu), ctx.ell)
    n = max(len(dl), len(dm))
    if n > MAX_DIGITS:
        raise ResourceError(f"more than {MAX_DIGITS} l-adic digits")
    zero = ctx.rs.zero
    dl += [zero] * (n - len(dl))
    dm += [zero] * (n - len(dm))
    return list(zip(dl, dm))


def m_lambda_mu(lam: Weight, mu: Weight, ctx: EllContext) -> Label:
    """M(lambda, mu) as the twisted tensor product of its digitwise factors."""
    parts: list[Label] = []
    for i, (a, b) in enumerate(_digit_pairs(lam, mu, ctx)):
        part = restricted_highest_summand(a, b, ctx)
        parts.append(FrobTwist(part, i) if i else part)
    return normalize(TensorOf(tuple(parts)), ctx)


@lru_cache(maxsize=4096)
def _classical_tensor(rs: RootSystem, lam: Weight, mu: Weight) -> tuple:
    coeffs = into_weyl_basis(weyl_character(lam, rs) * weyl_character(mu, rs))
    if any(v < 0 for v in coeffs.values()):
        raise DataIntegrityError("negative multiplicity in a classical tensor product")
    return tuple(sorted(coeffs.items()))


def classical_tensor(lam: Weight, mu: Weight, rs: RootSystem | None = None) -> dict[Weight, int]:
    """Multiplicities d^nu of L_C(nu) in L_C(lambda) (x) L_C(mu)."""
    rs = rs or root_system("A2")
    return dict(_classical_tensor(rs, tuple(lam), tuple(mu)))


def _split(x: ExtAffineElement, ctx: EllContext):
    sf = steinberg_factor(x, ctx)
    if sf.eps is None:
        raise DataIntegrityError(f"restricted part of {x} is not in Omega or u Omega")
    return sf.eps, sf.omega, sf.lam


def _seeds(eps: int, ctx: EllContext) -> list[Label]:
    """Regular part of L(u^eps . 0) (x) L(u^eps' . 0) for eps + eps' = 0, 1, 2."""
    zero = ctx.rs.zero
    u0 = bdm_weights(zero, ctx)["u"]
    return [[Simple(zero)], [Simple(u0)], [BdmM(zero), Simple(zero)]][eps]


def _expected_regular(seeds, om, lam, mu, ctx) -> Character:
    rs = ctx.rs
    seed = sum_characters((character_of(translate_label(om, s, ctx), ctx) for s in seeds), rs)
    if ctx.quantum:
        outer = weyl_character(lam, rs) * weyl_character(mu, rs)
    else:
        outer = simple_character(lam, ctx) * simple_character(mu, ctx)
    return seed * frobenius_stretch(outer, ctx)


def regular_part(x: ExtAffineElement, y: ExtAffineElement, ctx: EllContext) -> Decomposition:
    """Regular part of L(x.0) (x) L(y.0) for x, y in W_ext^+.

    In the modular case only the summands coming from M(lambda, mu) are listed;
    the result is flagged incomplete unless L(lambda) (x) L(mu) is itself
    indecomposable, which is guaranteed when no digit of lambda and mu are both
    non-zero.
    """
    _require_a2(ctx)
    eps, om, lam = _split(x, ctx)
    eps2, om2, mu = _split(y, ctx)
    w = om * om2
    seeds = [translate_label(w, s, ctx) for s in _seeds(eps + eps2, ctx)]
    items: list[tuple[Label, int]] = []
    complete = True
    if ctx.quantum:
        for nu, d in classical_tensor(lam, mu, ctx.rs).items():
            for s in seeds:
                items.append((TensorOf((s, FrobTwist(ClassicalSimple(nu)))), d))
    else:
        pairs = _digit_pairs(lam, mu, ctx)
        complete = all(not any(a) or not any(b) for a, b in pairs)
        inner = m_lambda_mu(lam, mu, ctx)
        for s in seeds:
            items.append((TensorOf((s, FrobTwist(inner))), 1))
    expected = _expected_regular(_seeds(eps + eps2, ctx), w, lam, mu, ctx)
    return Decomposition.build(ctx, items, expected, complete)


def generic_summand(x: ExtAffineElement, y: ExtAffineElement, ctx: EllContext) -> Label:
    """G(x, y): the translated restricted seed tensored with a Frobenius twist."""
    _require_a2(ctx)
    eps, om, lam = _split(x, ctx)
    eps2, om2, mu = _split(y, ctx)
    seed = translate_label(om * om2, _seeds(eps + eps2, ctx)[0], ctx)
    total = wadd(lam, mu)
    if ctx.quantum:
        outer: Label = ClassicalSimple(total)
    else:
        outer = m_lambda_mu(lam, mu, ctx)
    return normalize(TensorOf((seed, FrobTwist(outer))), ctx)


def cw_mnabla_filtration(nu: Weight, ctx: EllContext) -> dict[Label, int]:
    """The three dual Weyl factors of M_nabla(nu)."""
    _require_a2(ctx)
    nu = tuple(nu)
    check_alcove_weight(nu, ctx)
    ws = bdm_weights(nu, ctx)
    return {DualWeyl(ws[k]): 1 for k in ("u", "us", "ut")}


def generic_summand_nabla_restricted(x: ExtAffineElement, y: ExtAffineElement,
                                     ctx: EllContext) -> Label:
    """G_nabla(x, y) for x, y in {e, u} Omega."""
    _require_a2(ctx)
    eps, om, lam = _split(x, ctx)
    eps2, om2, mu = _split(y, ctx)
    if any(lam) or any(mu):
        raise ScopeError("dual Weyl generic summands are only known for x, y in {e, u} Omega")
    zero = ctx.rs.zero
    seed = [DualWeyl(zero), DualWeyl(bdm_weights(zero, ctx)["u"]), CwMnabla(zero)][eps + eps2]
    return translate_label(om * om2, seed, ctx)
