"""Extended affine Weyl group, the l-dilated dot action and alcove geometry."""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .core_lie import RootSystem, WeylElement, Weight, wadd, wscale, wsub
from .errors import (AlcoveError, DataIntegrityError, DominanceError,
                     StructureError, UnsupportedEllError)

CASES = ("modular", "quantum")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class EllContext:
    """Root system, the integer l and whether we work modularly or with quantum groups."""

    rs: RootSystem
    ell: int
    case: str = "modular"

    def __post_init__(self):
        if self.case not in CASES:
            raise StructureError(f"case must be one of {CASES}, got {self.case!r}")
        if self.ell < self.rs.coxeter_number:
            raise UnsupportedEllError(
                f"ell={self.ell} is below the Coxeter number {self.rs.coxeter_number}")
        if self.case == "modular" and not _is_prime(self.ell):
            raise UnsupportedEllError(f"modular case needs prime ell, got {self.ell}")
        if self.case == "quantum" and self.ell % 2 == 0:
            warnings.warn(f"quantum case with even ell={self.ell} is outside the tested range",
                          stacklevel=2)

    @property
    def quantum(self) -> bool:
        return self.case == "quantum"

    def __repr__(self):
        return f"EllContext({self.rs.label}, ell={self.ell}, {self.case})"


@dataclass(frozen=True)
class ExtAffineElement:
    """The element t_gamma w of X semidirect W_fin."""

    gamma: Weight
    w: WeylElement
    rs: RootSystem = field(compare=False, repr=False)

    def __mul__(self, other: "ExtAffineElement") -> "ExtAffineElement":
        return ExtAffineElement(wadd(self.gamma, self.w.act(other.gamma)),
                                self.rs.weyl_mul(self.w, other.w), self.rs)

    def inverse(self) -> "ExtAffineElement":
        winv = self.rs.weyl_inverse(self.w)
        return ExtAffineElement(tuple(-x for x in winv.act(self.gamma)), winv, self.rs)

    def is_identity(self) -> bool:
        return not any(self.gamma) and self.w.length == 0

    def __str__(self):
        word = "".join(f"s{i + 1}" for i in self.rs.reduced_word(self.w))
        coords = ",".join(str(c) for c in self.gamma)
        return f"t:({coords}){word}"


def identity(rs: RootSystem) -> ExtAffineElement:
    return ExtAffineElement(rs.zero, rs.identity, rs)


def translation(rs: RootSystem, gamma: Weight) -> ExtAffineElement:
    return ExtAffineElement(tuple(gamma), rs.identity, rs)


def finite(rs: RootSystem, w: WeylElement) -> ExtAffineElement:
    return ExtAffineElement(rs.zero, w, rs)


def simple(rs: RootSystem, i: int) -> ExtAffineElement:
    return finite(rs, rs.simple_reflection(i))


def affine_reflection(rs: RootSystem) -> ExtAffineElement:
    """u = s_{alpha_h, 1} = t_{alpha_h} s_{alpha_h}."""
    return ExtAffineElement(rs.highest_short_root, rs.root_reflection(rs.highest_short), rs)


def generators(rs: RootSystem) -> list[ExtAffineElement]:
    """Simple reflections of W_aff: finite ones in order, then the affine one."""
    return [simple(rs, i) for i in range(rs.rank)] + [affine_reflection(rs)]


def ell_dot(x: ExtAffineElement, mu: Weight, ctx: EllContext) -> Weight:
    rs = ctx.rs
    return wadd(wsub(x.w.act(wadd(mu, rs.rho)), rs.rho), wscale(ctx.ell, x.gamma))


def length(x: ExtAffineElement, ctx: EllContext) -> int:
    """Number of hyperplanes separating C_fund from x . C_fund."""
    rs, ell = ctx.rs, ctx.ell
    p0 = rs.pairings(rs.rho)
    p1 = rs.pairings(wadd(ell_dot(x, rs.zero, ctx), rs.rho))
    total = 0
    for a, b in zip(p0, p1):
        lo, hi = min(a, b), max(a, b)
        # multiples of ell in the open interval (lo, hi)
        total += (hi - 1) // ell - lo // ell
    return total


def is_dominant_element(x: ExtAffineElement, ctx: EllContext) -> bool:
    return ctx.rs.is_dominant(ell_dot(x, ctx.rs.zero, ctx))


def in_fundamental_alcove(lam: Weight, ctx: EllContext, closed: bool = False) -> bool:
    p = ctx.rs.pairings(wadd(lam, ctx.rs.rho))
    if closed:
        return all(0 <= v <= ctx.ell for v in p)
    return all(0 < v < ctx.ell for v in p)


def is_restricted(lam: Weight, ctx: EllContext) -> bool:
    return all(0 <= c < ctx.ell for c in lam)


@lru_cache(maxsize=None)
def omega_group(ctx: EllContext) -> tuple[ExtAffineElement, ...]:
    """Length-zero elements of W_ext, i.e. the stabilizer of C_fund."""
    rs = ctx.rs
    reps = [rs.zero] + [tuple(int(i == j) for j in range(rs.rank)) for i in range(rs.rank)]
    found: list[ExtAffineElement] = []
    for gamma in reps:
        for w in rs.finite_weyl_elements():
            x = ExtAffineElement(gamma, w, rs)
            if length(x, ctx) == 0 and x not in found:
                found.append(x)
    if len(found) != rs.fundamental_group_order:
        raise DataIntegrityError(
            f"found {len(found)} length-zero elements, expected {rs.fundamental_group_order}")
    return tuple(found)


def omega_of(x: ExtAffineElement, ctx: EllContext) -> ExtAffineElement:
    """The unique omega in Omega with x omega^{-1} in W_aff."""
    for om in omega_group(ctx):
        if ctx.rs.in_root_lattice(wsub(x.gamma, om.gamma)):
            return om
    raise DataIntegrityError(f"no Omega component for {x}")


def in_affine_weyl_group(x: ExtAffineElement, ctx: EllContext) -> bool:
    return ctx.rs.in_root_lattice(x.gamma)


class Located(NamedTuple):
    element: ExtAffineElement
    weight: Weight
    regular: bool


def locate(mu: Weight, ctx: EllContext) -> Located:
    """Write mu = x . lam with x in W_aff and lam in the closed fundamental alcove."""
    rs, ell = ctx.rs, ctx.ell
    gens = generators(rs)
    u = gens[-1]
    hcor = rs.highest_short_coroot
    y = list(wadd(tuple(mu), rs.rho))
    g = identity(rs)
    while True:
        i = next((k for k in range(rs.rank) if y[k] < 0), None)
        if i is not None:
            k = y[i]
            y = [a - k * b for a, b in zip(y, rs.simple_roots[i])]
            g = gens[i] * g
            continue
        h = sum(a * b for a, b in zip(y, hcor))
        if h > ell:
            # affine reflection in the shifted coordinates
            y = [a - (h - ell) * b for a, b in zip(y, rs.highest_short_root)]
            g = u * g
            continue
        break
    lam = wsub(tuple(y), rs.rho)
    x = g.inverse()
    regular = in_fundamental_alcove(lam, ctx)
    if not regular:
        x = _shortest_in_coset(x, lam, ctx)
    return Located(x, lam, regular)


def _shortest_in_coset(x: ExtAffineElement, lam: Weight, ctx: EllContext) -> ExtAffineElement:
    stab = [s for s in generators(ctx.rs) if ell_dot(s, lam, ctx) == lam]
    cur = length(x, ctx)
    improved = True
    while improved:
        improved = False
        for s in stab:
            cand = x * s
            n = length(cand, ctx)
            if n < cur:
                x, cur, improved = cand, n, True
                break
    return x


class SteinbergFactor(NamedTuple):
    x0: ExtAffineElement
    lam: Weight
    eps: int | None
    omega: ExtAffineElement


def steinberg_factor(x: ExtAffineElement, ctx: EllContext) -> SteinbergFactor:
    """Split x = t_lam x0 with x0 . 0 restricted; classify x0 = u^eps omega."""
    rs, ell = ctx.rs, ctx.ell
    mu = ell_dot(x, rs.zero, ctx)
    if not rs.is_dominant(mu):
        raise DominanceError(f"{x} is not in W_ext^+ (x.0 = {mu})")
    lam = tuple(c // ell for c in mu)
    x0 = translation(rs, tuple(-c for c in lam)) * x
    om = omega_of(x0, ctx)
    rest = x0 * om.inverse()
    eps = None
    if rest.is_identity():
        eps = 0
    elif rest == affine_reflection(rs):
        eps = 1
    return SteinbergFactor(x0, lam, eps, om)


def element_from_weight(mu: Weight, ctx: EllContext) -> ExtAffineElement:
    """The element y in W_ext with y . 0 = mu, when mu is in the orbit of 0."""
    loc = locate(mu, ctx)
    for om in omega_group(ctx):
        if ell_dot(om, ctx.rs.zero, ctx) == loc.weight:
            return loc.element * om
    from .errors import BlockError
    raise BlockError(f"{mu} is not in the extended principal block")


_TOKEN = re.compile(r"\s*(s\d*|u|e)\s*")


def parse_weight(text: str) -> Weight:
    """Parse ``(a,b)`` or a bare integer list ``a,b`` into a weight."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    try:
        return tuple(int(p) for p in body.split(",") if p.strip() != "")
    except ValueError:
        raise StructureError(f"cannot parse weight {text!r}") from None


def parse_element(text: str, rs: RootSystem) -> ExtAffineElement:
    """Parse ``t:(coords)`` followed by a word over s1, s2, ... and u."""
    s = text.strip()
    x = identity(rs)
    if s.startswith("t:"):
        end = s.find(")")
        if end < 0:
            raise StructureError(f"unterminated translation in {text!r}")
        gamma = parse_weight(s[2:end + 1])
        if len(gamma) != rs.rank:
            raise StructureError(f"translation {gamma} has wrong rank")
        x = translation(rs, gamma)
        s = s[end + 1:]
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise StructureError(f"cannot parse element {text!r}")
        tok = m.group(1)
        if tok == "u":
            x = x * affine_reflection(rs)
        elif tok.startswith("s"):
            i = int(tok[1:]) - 1 if len(tok) > 1 else 0
            if not 0 <= i < rs.rank:
                raise StructureError(f"no simple reflection {tok}")
            x = x * simple(rs, i)
        pos = m.end()
    return x


def check_alcove_weight(lam: Weight, ctx: EllContext) -> None:
    if not in_fundamental_alcove(lam, ctx):
        raise AlcoveError(f"{lam} is not in the open fundamental alcove")
