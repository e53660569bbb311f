"""Verlinde fusion coefficients by alcove folding, and translated regular parts."""
from __future__ import annotations

from functools import lru_cache

from .alcove import (EllContext, ExtAffineElement, check_alcove_weight, ell_dot,
                     in_fundamental_alcove, locate)
from .characters import into_weyl_basis, weyl_character
from .core_lie import Weight
from .errors import BlockError, EngineScopeError
from .labels import Decomposition, Label, dual_label, translate_to

KINDS = ("simple", "weyl", "dualweyl")


@lru_cache(maxsize=None)
def _fusion(ctx: EllContext, lam: Weight, mu: Weight) -> tuple[tuple[Weight, int], ...]:
    rs = ctx.rs
    out: dict[Weight, int] = {}
    for eta, k in into_weyl_basis(weyl_character(lam, rs) * weyl_character(mu, rs)).items():
        loc = locate(eta, ctx)
        if not loc.regular:
            continue
        nu = loc.weight
        out[nu] = out.get(nu, 0) + loc.element.w.det * k
    return tuple(sorted((nu, c) for nu, c in out.items() if c))


def fusion(lam: Weight, mu: Weight, ctx: EllContext) -> dict[Weight, int]:
    """c^nu_{lam,mu} for lam, mu in the open fundamental alcove."""
    lam, mu = tuple(lam), tuple(mu)
    check_alcove_weight(lam, ctx)
    check_alcove_weight(mu, ctx)
    return dict(_fusion(ctx, lam, mu))


def a1_closed_form(a: int, b: int, ell: int) -> dict[tuple[int], int]:
    """Type A1 fusion rule: nu in CG(a, b) with a + b + nu <= 2 ell - 4."""
    return {(c,): 1 for c in range(abs(a - b), a + b + 1, 2) if a + b + c <= 2 * ell - 4}


def alcove_weights(ctx: EllContext) -> list[Weight]:
    """The integral weights of the open fundamental alcove."""
    rs, ell = ctx.rs, ctx.ell
    out: list[Weight] = []

    def rec(prefix):
        if len(prefix) == rs.rank:
            if in_fundamental_alcove(tuple(prefix), ctx):
                out.append(tuple(prefix))
            return
        for c in range(ell):
            rec(prefix + [c])

    rec([])
    return out


def _principal_summands(x, y, ctx: EllContext, kind: str) -> list[tuple[Label, int]]:
    label = ctx.rs.label
    if label == "A1":
        from . import sl2
        if kind == "simple":
            return list(sl2.regular_part(x, y, ctx).summands)
        g = sl2.generic_summand_nabla(x, y, ctx)
    elif label == "A2":
        from . import sl3
        if kind == "simple":
            return list(sl3.regular_part(x, y, ctx).summands)
        g = sl3.generic_summand_nabla_restricted(x, y, ctx)
    else:
        raise EngineScopeError("translated regular parts are implemented for A1 and A2")
    return [(dual_label(g) if kind == "weyl" else g, 1)]


def translated_regular_part(x: ExtAffineElement, y: ExtAffineElement, lam: Weight,
                            mu: Weight, ctx: EllContext, kind: str = "simple") -> Decomposition:
    """Regular part of M(x.lam) (x) M(y.mu) as T_0^nu-translates of the principal-block one.

    ``kind`` selects simple, Weyl or dual Weyl modules; for the latter two the
    principal-block regular part is the generic summand alone.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    for z in (x, y):
        if not ctx.rs.is_dominant(ell_dot(z, ctx.rs.zero, ctx)):
            raise BlockError(f"{z} does not send 0 to a dominant weight")
    coeffs = fusion(lam, mu, ctx)
    base = _principal_summands(x, y, ctx, kind)
    items = []
    for nu, c in coeffs.items():
        for label, m in base:
            items.append((translate_to(nu, label, ctx), c * m))
    return Decomposition.build(ctx, items)
