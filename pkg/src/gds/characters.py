"""Character arithmetic: Weyl characters, simple characters at l, tiltings in rank one."""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from . import cache
from .alcove import EllContext, affine_reflection, ell_dot, in_fundamental_alcove
from .core_lie import RootSystem, Weight, wadd, wscale, wsub
from .errors import (DataIntegrityError, DominanceError, EngineScopeError,
                     InvarianceError, RangeError, RootSystemMismatch)


class _Unknown:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Unknown"

    def __reduce__(self):
        return (_Unknown, ())


UNKNOWN = _Unknown()


class Character:
    """Finite integer combination of weights, e.g. the formal character of a module."""

    __slots__ = ("rs", "mults")

    def __init__(self, rs: RootSystem, mults: Mapping[Weight, int] | None = None):
        self.rs = rs
        self.mults = {k: v for k, v in (mults or {}).items() if v}

    @classmethod
    def unit(cls, rs: RootSystem) -> "Character":
        return cls(rs, {rs.zero: 1})

    def __getitem__(self, mu: Weight) -> int:
        return self.mults.get(mu, 0)

    def items(self):
        return self.mults.items()

    def __len__(self):
        return len(self.mults)

    def dim(self) -> int:
        return sum(self.mults.values())

    def _check(self, other: "Character"):
        if self.rs != other.rs:
            raise RootSystemMismatch(f"{self.rs} vs {other.rs}")

    def __add__(self, other: "Character") -> "Character":
        self._check(other)
        out = dict(self.mults)
        for k, v in other.mults.items():
            out[k] = out.get(k, 0) + v
        return Character(self.rs, out)

    def __sub__(self, other: "Character") -> "Character":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, k: int) -> "Character":
        return Character(self.rs, {w: k * v for w, v in self.mults.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return product(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Character) and self.rs == other.rs and self.mults == other.mults

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self.mults.items()))
        return f"Character({{{body}}})"

    def dominant_part(self) -> dict[Weight, int]:
        return {k: v for k, v in self.mults.items() if all(c >= 0 for c in k)}

    def is_invariant(self) -> bool:
        rs = self.rs
        return all(self.mults.get(rs.reflect(mu, i), 0) == m
                   for mu, m in self.mults.items() for i in range(rs.rank))

    def is_nonnegative(self) -> bool:
        return all(v > 0 for v in self.mults.values())


def product(c1: Character, c2: Character) -> Character:
    c1._check(c2)
    if len(c1) > len(c2):
        c1, c2 = c2, c1
    out: dict[Weight, int] = defaultdict(int)
    if c1.rs.rank == 1:
        for (a,), m in c1.mults.items():
            for (b,), n in c2.mults.items():
                out[(a + b,)] += m * n
    else:
        for a, m in c1.mults.items():
            for b, n in c2.mults.items():
                out[tuple(x + y for x, y in zip(a, b))] += m * n
    return Character(c1.rs, out)


def frobenius_stretch(c: Character, ctx: EllContext | int, power: int = 1) -> Character:
    ell = ctx if isinstance(ctx, int) else ctx.ell
    f = ell ** power
    return Character(c.rs, {wscale(f, k): v for k, v in c.mults.items()})


# Weyl characters


def _dominant_weights_below(rs: RootSystem, lam: Weight) -> list[Weight]:
    seen = {lam}
    stack = [lam]
    while stack:
        mu = stack.pop()
        for a in rs.positive_roots:
            nu = wsub(mu, a)
            if nu not in seen and all(c >= 0 for c in nu):
                seen.add(nu)
                stack.append(nu)
    return sorted(seen, key=lambda mu: (-rs.rho_check_pairing2(mu), mu))


@lru_cache(maxsize=None)
def _dominant_multiplicities(rs: RootSystem, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    """Freudenthal's recursion on the dominant weights of Delta(lam)."""
    doms = _dominant_weights_below(rs, lam)
    mult: dict[Weight, int] = {}
    lr = wadd(lam, rs.rho)
    top = rs.inner(lr, lr)
    for mu in doms:
        if mu == lam:
            mult[mu] = 1
            continue
        rhs = Fraction(0)
        for a in rs.positive_roots:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a))
                m = mult.get(rs.dominant_conjugate(nu), 0)
                if m == 0:
                    break
                rhs += m * rs.inner(nu, a)
                k += 1
        mr = wadd(mu, rs.rho)
        val = 2 * rhs / (top - rs.inner(mr, mr))
        if val.denominator != 1:
            raise DataIntegrityError(f"non-integral multiplicity at {mu} in Delta({lam})")
        mult[mu] = int(val)
    return tuple((mu, m) for mu, m in mult.items() if m)


@lru_cache(maxsize=None)
def _weyl_character(rs: RootSystem, lam: Weight) -> Character:
    out = {}
    for mu, m in _dominant_multiplicities(rs, lam):
        for nu in rs.orbit(mu):
            out[nu] = m
    ch = Character(rs, out)
    if ch.dim() != rs.weyl_dimension(lam):
        raise DataIntegrityError(f"Freudenthal and Weyl dimension disagree at {lam}")
    return ch


def weyl_character(lam: Weight, rs: RootSystem) -> Character:
    """chi(lam), the character of the Weyl module of highest weight lam."""
    lam = tuple(lam)
    if not rs.is_dominant(lam):
        raise DominanceError(f"{lam} is not dominant")
    return _weyl_character(rs, lam)


def weyl_character_any(mu: Weight, rs: RootSystem) -> Character:
    """chi extended to all weights: chi(w.mu) = det(w) chi(mu), zero on rho-singular weights."""
    d = rs.dominate(tuple(mu))
    if d.parity is None:
        return Character(rs)
    ch = _weyl_character(rs, d.weight)
    return ch if d.parity == 1 else ch.scale(-1)


def _eliminate(c: Character, basis: Callable[[Weight], Character]) -> dict[Weight, int]:
    if not c.is_invariant():
        raise InvarianceError("character is not invariant under the finite Weyl group")
    rs = c.rs
    rest = c.dominant_part()
    out: dict[Weight, int] = {}
    while rest:
        top = max(rest, key=lambda mu: (rs.rho_check_pairing2(mu), mu))
        k = rest[top]
        out[top] = out.get(top, 0) + k
        for mu, m in basis(top).dominant_part().items():
            v = rest.get(mu, 0) - k * m
            if v:
                rest[mu] = v
            else:
                rest.pop(mu, None)
    return {k: v for k, v in out.items() if v}


def into_weyl_basis(c: Character) -> dict[Weight, int]:
    """Coefficients c_lam with c = sum c_lam chi(lam)."""
    return _eliminate(c, lambda mu: _weyl_character(c.rs, mu))


def from_weyl_basis(coeffs: Mapping[Weight, int], rs: RootSystem) -> Character:
    out = Character(rs)
    for lam, k in coeffs.items():
        out = out + _weyl_character(rs, tuple(lam)).scale(k)
    return out


# characters at l


def _require_engine_type(ctx: EllContext):
    if ctx.rs.label not in ("A1", "A2"):
        raise EngineScopeError(f"engines support A1 and A2 only, not {ctx.rs.label}")


def digits(lam: Weight, ell: int) -> list[Weight]:
    """l-adic digits lam = sum ell^i lam_i, little-endian; [] for lam = 0."""
    out = []
    cur = tuple(lam)
    while any(cur):
        out.append(tuple(c % ell for c in cur))
        cur = tuple(c // ell for c in cur)
    return out


def jsf_oracle(lam: Weight, ctx: EllContext) -> Character:
    """Sum of the characters of the Jantzen filtration layers Delta(lam)^i, i > 0."""
    rs, ell = ctx.rs, ctx.ell
    lam = tuple(lam)
    if not rs.is_dominant(lam):
        raise DominanceError(f"{lam} is not dominant")
    out = Character(rs)
    shifted = wadd(lam, rs.rho)
    for a, p in zip(rs.positive_roots, rs.pairings(shifted)):
        m = 1
        while m * ell < p:
            if ctx.quantum:
                coeff = 1
            else:
                coeff, q = 1, m
                while q % ell == 0:
                    coeff += 1
                    q //= ell
            target = wsub(lam, wscale(p - m * ell, a))
            out = out + weyl_character_any(target, rs).scale(coeff)
            m += 1
    return out


def _restricted_weights(ctx: EllContext) -> list[Weight]:
    rs, ell = ctx.rs, ctx.ell
    pts = [()]
    for _ in range(rs.rank):
        pts = [p + (c,) for p in pts for c in range(ell)]
    return sorted(pts, key=lambda mu: (rs.rho_check_pairing2(mu), mu))


def _two_alcove_simple(lam: Weight, ctx: EllContext) -> Character:
    rs = ctx.rs
    if in_fundamental_alcove(lam, ctx, closed=True):
        return _weyl_character(rs, lam)
    refl = ell_dot(affine_reflection(rs), lam, ctx)
    return _weyl_character(rs, lam) - weyl_character_any(refl, rs)


def _build_restricted_table(ctx: EllContext) -> dict[Weight, dict[Weight, int]]:
    table = {lam: _two_alcove_simple(lam, ctx) for lam in _restricted_weights(ctx)}

    def simple(mu):
        return _steinberg(mu, ctx, table)

    for lam in table:
        problem = jsf_violation(lam, ctx, simple)
        if problem:
            raise DataIntegrityError(f"restricted simple character of {lam}: {problem}")
    return {lam: ch.mults for lam, ch in table.items()}


@lru_cache(maxsize=None)
def restricted_simple_table(ctx: EllContext) -> dict[Weight, Character]:
    _require_engine_type(ctx)
    key = f"restricted-simples:{ctx.rs.cartan}:{ctx.ell}:{ctx.case}"
    raw = cache.cached(key, lambda: _build_restricted_table(ctx))
    return {lam: Character(ctx.rs, m) for lam, m in raw.items()}


def _steinberg(lam: Weight, ctx: EllContext, table: Mapping[Weight, Character]) -> Character:
    rs, ell = ctx.rs, ctx.ell
    ds = digits(lam, ell)
    if not ds:
        return Character.unit(rs)
    if ctx.quantum:
        lam1 = tuple(c // ell for c in lam)
        return table[ds[0]] * frobenius_stretch(_weyl_character(rs, lam1), ell)
    out = table[ds[0]]
    for i, d in enumerate(ds[1:], start=1):
        if any(d):
            out = out * frobenius_stretch(table[d], ell, i)
    return out


@lru_cache(maxsize=None)
def _simple_character(ctx: EllContext, lam: Weight) -> Character:
    return _steinberg(lam, ctx, restricted_simple_table(ctx))


def simple_character(lam: Weight, ctx: EllContext) -> Character:
    """ch L(lam) via the Steinberg (modular) or Lusztig (quantum) factorization."""
    _require_engine_type(ctx)
    lam = tuple(lam)
    if not ctx.rs.is_dominant(lam):
        raise DominanceError(f"{lam} is not dominant")
    return _simple_character(ctx, lam)


def into_simple_basis(c: Character, ctx: EllContext,
                      simple: Callable[[Weight], Character] | None = None) -> dict[Weight, int]:
    """Composition multiplicities of a character in terms of simple characters."""
    return _eliminate(c, simple or (lambda mu: _simple_character(ctx, mu)))


def weyl_into_simples(lam: Weight, ctx: EllContext) -> dict[Weight, int]:
    """[Delta(lam) : L(mu)] for all mu."""
    _require_engine_type(ctx)
    return into_simple_basis(weyl_character(tuple(lam), ctx.rs), ctx)


def jsf_violation(lam: Weight, ctx: EllContext,
                  simple: Callable[[Weight], Character] | None = None) -> str | None:
    """Check a simple-character table against the sum formula at lam.

    Returns a description of the first violated constraint, or None.  With
    c_mu the coefficients of the sum in simple characters and d_mu the
    decomposition numbers implied by the table: d_lam = 1, c_mu >= 0,
    d_mu > 0 iff c_mu > 0 for mu != lam, d_mu <= c_mu.
    """
    simple = simple or (lambda mu: _simple_character(ctx, mu))
    c = into_simple_basis(jsf_oracle(lam, ctx), ctx, simple)
    d = into_simple_basis(weyl_character(tuple(lam), ctx.rs), ctx, simple)
    if d.get(lam) != 1:
        return f"[Delta:L(lam)] = {d.get(lam)}"
    for mu in set(c) | set(d):
        if mu == lam:
            if c.get(mu, 0):
                return "sum formula contains the head"
            continue
        cm, dm = c.get(mu, 0), d.get(mu, 0)
        if cm < 0 or dm < 0:
            return f"negative coefficient at {mu}"
        if (cm > 0) != (dm > 0) or dm > cm:
            return f"multiplicity at {mu}: table {dm}, sum formula {cm}"
    return None


# tilting characters


def tilting_character_a1(c: int, ctx: EllContext) -> Character:
    """ch T(c) for 0 <= c <= 2l-2 in type A1."""
    if ctx.rs.label != "A1":
        raise EngineScopeError("tilting table is for type A1")
    ell = ctx.ell
    if not 0 <= c <= 2 * ell - 2:
        raise RangeError(f"tilting weight {c} outside [0, {2 * ell - 2}]")
    return _tilting_a1(ctx, c)


@lru_cache(maxsize=None)
def _tilting_a1(ctx: EllContext, c: int) -> Character:
    rs, ell = ctx.rs, ctx.ell
    ch = _weyl_character(rs, (c,))
    if c >= ell:
        ch = ch + _weyl_character(rs, (2 * ell - 2 - c,))
    return ch


def validate_tilting_a1(ctx: EllContext) -> None:
    """Check the rank-one tilting table against the sum formula and its Loewy shape.

    Above the Steinberg weight T(c) has Delta-factors Delta(c) and
    Delta(2l-2-c) (the sum-formula term of Delta(c)) and composition factors
    L(c) once and L(2l-2-c) twice.
    """
    ell = ctx.ell
    for c in range(2 * ell - 1):
        ch = tilting_character_a1(c, ctx)
        lower = ch - weyl_character((c,), ctx.rs)
        if lower != jsf_oracle((c,), ctx):
            raise DataIntegrityError(f"T({c}) Delta-factors disagree with the sum formula")
        expected = {(c,): 1} if c < ell else {(c,): 1, (2 * ell - 2 - c,): 2}
        if into_simple_basis(ch, ctx) != expected:
            raise DataIntegrityError(f"T({c}) has unexpected composition factors")


def in_upper_alcove(lam: Weight, ctx: EllContext, closed: bool = False) -> bool:
    """Membership in u . C_fund (u the affine simple reflection)."""
    return in_fundamental_alcove(ell_dot(affine_reflection(ctx.rs), tuple(lam), ctx), ctx, closed)


def tilting_character_a2(lam: Weight, ctx: EllContext):
    """ch T(lam) on the closures of C_fund and u.C_fund; UNKNOWN elsewhere."""
    rs = ctx.rs
    lam = tuple(lam)
    if in_fundamental_alcove(lam, ctx, closed=True):
        return _weyl_character(rs, lam)
    if in_upper_alcove(lam, ctx, closed=True):
        refl = ell_dot(affine_reflection(rs), lam, ctx)
        return _weyl_character(rs, lam) + weyl_character_any(refl, rs)
    return UNKNOWN


def validate_tilting_a2(ctx: EllContext) -> None:
    rs = ctx.rs
    for lam in _restricted_weights(ctx) + _upper_closure_weights(ctx):
        ch = tilting_character_a2(lam, ctx)
        if ch is UNKNOWN:
            continue
        lower = ch - weyl_character(lam, rs)
        if lower != jsf_oracle(lam, ctx):
            raise DataIntegrityError(f"T({lam}) Delta-factors disagree with the sum formula")


def _upper_closure_weights(ctx: EllContext) -> list[Weight]:
    ell = ctx.ell
    return [(a, b) for a in range(2 * ell) for b in range(2 * ell)
            if in_upper_alcove((a, b), ctx, closed=True)
            and not in_fundamental_alcove((a, b), ctx, closed=True)]


def sum_characters(chars: Iterable[Character], rs: RootSystem) -> Character:
    out: dict[Weight, int] = defaultdict(int)
    for ch in chars:
        if ch.rs != rs:
            raise RootSystemMismatch(f"{ch.rs} vs {rs}")
        for k, v in ch.mults.items():
            out[k] += v
    return Character(rs, out)
