"""Symbolic module labels, decompositions and bookkeeping on labels.

Labels are immutable and hashable.  Every label serializes to a JSON object
with a ``kind`` tag and a ``twist`` field (the Frobenius twist power, 0 when
untwisted), e.g. ``{"kind": "jmod", "u": [5], "twist": 1}``.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .alcove import (EllContext, ExtAffineElement, element_from_weight, ell_dot,
                     identity, in_fundamental_alcove, length, locate, omega_group,
                     simple, affine_reflection)
from .characters import (UNKNOWN, Character, frobenius_stretch, into_weyl_basis,
                         simple_character, sum_characters, tilting_character_a1,
                         tilting_character_a2, weyl_character, weyl_character_any)
from .core_lie import Weight, wadd, wscale
from .errors import (AlcoveError, BlockError, ParityError, RangeError, StructureError)


class Label:
    """Base class of module labels."""

    kind = "label"

    def to_obj(self) -> dict:
        raise NotImplementedError

    def dumps(self) -> str:
        return canonical_json(self.to_obj())

    def __str__(self):
        return self.pretty()

    def pretty(self) -> str:
        return self.dumps()


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class _WeightLabel(Label):
    weight: Weight

    def to_obj(self):
        return {"kind": self.kind, "weight": list(self.weight), "twist": 0}

    def pretty(self):
        return f"{self.symbol}({_fmt(self.weight)})"


@dataclass(frozen=True)
class Simple(_WeightLabel):
    kind = "simple"
    symbol = "L"


@dataclass(frozen=True)
class Weyl(_WeightLabel):
    kind = "weyl"
    symbol = "Delta"


@dataclass(frozen=True)
class DualWeyl(_WeightLabel):
    kind = "dualweyl"
    symbol = "Nabla"


@dataclass(frozen=True)
class Tilting(_WeightLabel):
    kind = "tilting"
    symbol = "T"


@dataclass(frozen=True)
class ClassicalSimple(_WeightLabel):
    kind = "classical_simple"
    symbol = "L_C"


@dataclass(frozen=True)
class Jmod(Label):
    u: tuple[int, ...]
    kind = "jmod"

    def __post_init__(self):
        u = tuple(int(x) for x in self.u)
        while u and u[-1] == 0:
            u = u[:-1]
        object.__setattr__(self, "u", u)

    def to_obj(self):
        return {"kind": self.kind, "u": list(self.u), "twist": 0}

    def pretty(self):
        return f"J({','.join(map(str, self.u))})"


@dataclass(frozen=True)
class BdmM(Label):
    nu: Weight
    kind = "bdm_m"

    def to_obj(self):
        return {"kind": self.kind, "nu": list(self.nu), "twist": 0}

    def pretty(self):
        return f"M({_fmt(self.nu)})"


@dataclass(frozen=True)
class CwMnabla(Label):
    nu: Weight
    kind = "cw_mnabla"

    def to_obj(self):
        return {"kind": self.kind, "nu": list(self.nu), "twist": 0}

    def pretty(self):
        return f"M_nabla({_fmt(self.nu)})"


@dataclass(frozen=True)
class TruncInjective(Label):
    d: int
    c: int
    kind = "trunc_injective"

    def __post_init__(self):
        if self.c < 0 or self.c > self.d or (self.d - self.c) % 2:
            raise ParityError(f"{self.c} is not in pi_{self.d}")

    def to_obj(self):
        return {"kind": self.kind, "d": self.d, "c": self.c, "twist": 0}

    def pretty(self):
        return f"I_{self.d}({self.c})"


@dataclass(frozen=True)
class FrobTwist(Label):
    inner: Label
    power: int = 1
    kind = "twist"

    def __post_init__(self):
        if self.power < 1:
            raise StructureError("Frobenius twist power must be positive")

    def to_obj(self):
        obj = self.inner.to_obj()
        obj["twist"] = obj.get("twist", 0) + self.power
        return obj

    def pretty(self):
        return f"{self.inner.pretty()}^[{self.power}]"


@dataclass(frozen=True)
class TensorOf(Label):
    parts: tuple[Label, ...]
    kind = "tensor"

    def to_obj(self):
        return {"kind": self.kind, "parts": [p.to_obj() for p in self.parts], "twist": 0}

    def pretty(self):
        return " (x) ".join(p.pretty() for p in self.parts)


@dataclass(frozen=True)
class TranslatedTo(Label):
    """T_0^nu applied to a label of the principal block."""

    nu: Weight
    inner: Label
    kind = "translated"

    def to_obj(self):
        return {"kind": self.kind, "nu": list(self.nu), "inner": self.inner.to_obj(), "twist": 0}

    def pretty(self):
        return f"T_0^{_fmt(self.nu)}[{self.inner.pretty()}]"


@dataclass(frozen=True)
class OmegaTwist(Label):
    """T^omega applied to a label, omega named by its translation part."""

    gamma: Weight
    inner: Label
    kind = "omega_twist"

    def to_obj(self):
        return {"kind": self.kind, "gamma": list(self.gamma), "inner": self.inner.to_obj(),
                "twist": 0}

    def pretty(self):
        return f"T^omega{_fmt(self.gamma)}[{self.inner.pretty()}]"


@dataclass(frozen=True)
class Dual(Label):
    """Contravariant dual of a label without a named dual."""

    inner: Label
    kind = "dual"

    def to_obj(self):
        return {"kind": self.kind, "inner": self.inner.to_obj(), "twist": 0}

    def pretty(self):
        return f"({self.inner.pretty()})^tau"


def _fmt(w: Weight) -> str:
    return str(w[0]) if len(w) == 1 else "(" + ",".join(map(str, w)) + ")"


_WEIGHT_KINDS = {cls.kind: cls for cls in (Simple, Weyl, DualWeyl, Tilting, ClassicalSimple)}


def from_obj(obj: Mapping) -> Label:
    """Inverse of ``Label.to_obj``."""
    try:
        kind = obj["kind"]
        twist = int(obj.get("twist", 0))
        if kind in _WEIGHT_KINDS:
            base: Label = _WEIGHT_KINDS[kind](tuple(int(x) for x in obj["weight"]))
        elif kind == "jmod":
            base = Jmod(tuple(obj["u"]))
        elif kind == "bdm_m":
            base = BdmM(tuple(obj["nu"]))
        elif kind == "cw_mnabla":
            base = CwMnabla(tuple(obj["nu"]))
        elif kind == "trunc_injective":
            base = TruncInjective(int(obj["d"]), int(obj["c"]))
        elif kind == "tensor":
            base = TensorOf(tuple(from_obj(p) for p in obj["parts"]))
        elif kind == "translated":
            base = TranslatedTo(tuple(obj["nu"]), from_obj(obj["inner"]))
        elif kind == "omega_twist":
            base = OmegaTwist(tuple(obj["gamma"]), from_obj(obj["inner"]))
        elif kind == "dual":
            base = Dual(from_obj(obj["inner"]))
        else:
            raise StructureError(f"unknown label kind {kind!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise StructureError(f"malformed label {obj!r}: {exc}") from None
    if twist < 0:
        raise StructureError("negative twist")
    return FrobTwist(base, twist) if twist else base


def loads(text: str) -> Label:
    return from_obj(json.loads(text))


# normalization


def jmod(u: Iterable[int], twist: int = 0) -> Label:
    """Canonical label of J(u)^[twist]: leading zeros become Frobenius twists."""
    u = tuple(u)
    while u and u[-1] == 0:
        u = u[:-1]
    k = 0
    while u and u[0] == 0:
        u, k = u[1:], k + 1
    base = Jmod(u)
    if not u:
        return base
    return FrobTwist(base, k + twist) if k + twist else base


def _is_unit(l: Label) -> bool:
    if isinstance(l, (Simple, Tilting, ClassicalSimple)):
        return not any(l.weight)
    if isinstance(l, Jmod):
        return not l.u
    return False


def _twist_power(l: Label) -> int:
    return l.power if isinstance(l, FrobTwist) else 0


def normalize(l: Label, ctx: EllContext) -> Label:
    """Rewrite a label into canonical form; the module it names is unchanged."""
    out = _norm(l, ctx)
    # a lone twisted classical simple is the quantum simple L(l nu)
    if ctx.quantum and isinstance(out, FrobTwist) and out.power == 1 \
            and isinstance(out.inner, ClassicalSimple):
        return Simple(wscale(ctx.ell, out.inner.weight))
    return out


def _norm(l: Label, ctx: EllContext) -> Label:
    if isinstance(l, Jmod):
        out = jmod(l.u)
        return Simple(ctx.rs.zero) if _is_unit(out) else out
    if isinstance(l, FrobTwist):
        inner = _norm(l.inner, ctx)
        power = l.power
        if isinstance(inner, FrobTwist):
            inner, power = inner.inner, power + inner.power
        if _is_unit(inner):
            return Simple(ctx.rs.zero)
        if isinstance(inner, Jmod):
            return jmod(inner.u, power)
        return FrobTwist(inner, power)
    if isinstance(l, TensorOf):
        flat: list[Label] = []
        for p in l.parts:
            p = _norm(p, ctx)
            if isinstance(p, TensorOf):
                flat.extend(p.parts)
            elif not _is_unit(p):
                flat.append(p)
        flat = _merge_parts(flat, ctx)
        if not flat:
            return Simple(ctx.rs.zero)
        if len(flat) == 1:
            return flat[0]
        return TensorOf(tuple(sorted(flat, key=lambda p: (_twist_power(p), p.dumps()))))
    if isinstance(l, TranslatedTo):
        inner = _norm(l.inner, ctx)
        return inner if not any(l.nu) else TranslatedTo(tuple(l.nu), inner)
    if isinstance(l, OmegaTwist):
        inner = _norm(l.inner, ctx)
        return inner if not any(l.gamma) else OmegaTwist(tuple(l.gamma), inner)
    if isinstance(l, Dual):
        return Dual(_norm(l.inner, ctx))
    return l


def _merge_parts(parts: list[Label], ctx: EllContext) -> list[Label]:
    """Fold a restricted factor into a single first-power twist when the result has a name."""
    untwisted = [p for p in parts if _twist_power(p) == 0]
    once = [p for p in parts if _twist_power(p) == 1]
    if len(untwisted) != 1 or len(once) != 1 or len(parts) != 2:
        return parts
    r, t = untwisted[0], once[0]
    ell = ctx.ell
    if ctx.quantum and isinstance(r, Simple) and isinstance(t.inner, ClassicalSimple) \
            and all(0 <= c < ell for c in r.weight):
        return [Simple(wadd(r.weight, wscale(ell, t.inner.weight)))]
    if ctx.rs.label == "A1" and not ctx.quantum and isinstance(t.inner, Jmod):
        head = None
        if isinstance(r, Simple) and 0 <= r.weight[0] <= ell - 1:
            head = r.weight[0]
        elif isinstance(r, Tilting) and 0 <= r.weight[0] <= 2 * ell - 2:
            head = r.weight[0]
        elif isinstance(r, Jmod) and len(r.u) == 1:
            head = r.u[0]
        if head is not None:
            return [jmod((head,) + t.inner.u)]
    return parts


# validation


def validate(l: Label, ctx: EllContext) -> None:
    """Raise if the label is malformed for the context."""
    rs, ell = ctx.rs, ctx.ell
    if isinstance(l, _WeightLabel):
        if len(l.weight) != rs.rank:
            raise StructureError(f"{l.pretty()} has the wrong rank")
        if not rs.is_dominant(l.weight):
            raise StructureError(f"{l.pretty()} is not dominant")
    elif isinstance(l, Jmod):
        if rs.label != "A1":
            raise StructureError("J-modules are defined in type A1")
        if any(not 0 <= x <= 2 * ell - 2 for x in l.u):
            raise RangeError(f"{l.pretty()} has a digit outside [0, 2l-2]")
    elif isinstance(l, (BdmM, CwMnabla)):
        if rs.label != "A2" or not in_fundamental_alcove(tuple(l.nu), ctx):
            raise AlcoveError(f"{l.pretty()} needs a parameter in the open fundamental alcove")
    elif isinstance(l, TruncInjective):
        if rs.label != "A1":
            raise StructureError("truncated injectives are defined in type A1")
    elif isinstance(l, (FrobTwist, Dual, OmegaTwist, TranslatedTo)):
        validate(l.inner, ctx)
    elif isinstance(l, TensorOf):
        for p in l.parts:
            validate(p, ctx)
    else:
        raise StructureError(f"unknown label {l!r}")


# A2 alcove words


def a2_word(word: str, ctx: EllContext) -> ExtAffineElement:
    """Element of W_aff from a word over s, t, u (s, t the finite simple reflections)."""
    rs = ctx.rs
    gens = {"s": simple(rs, 0), "t": simple(rs, 1), "u": affine_reflection(rs)}
    x = identity(rs)
    for ch in word:
        x = x * gens[ch]
    return x


def bdm_weights(nu: Weight, ctx: EllContext) -> dict[str, Weight]:
    return {w: ell_dot(a2_word(w, ctx), tuple(nu), ctx) for w in ("u", "us", "ut", "")}


# characters


def character_of(l: Label, ctx: EllContext):
    """Formal character of the module named by ``l``, or UNKNOWN."""
    validate(l, ctx)
    return _character_of(l, ctx)


@lru_cache(maxsize=200000)
def _character_of(l: Label, ctx: EllContext):
    rs = ctx.rs
    if isinstance(l, Simple):
        return simple_character(l.weight, ctx)
    if isinstance(l, (Weyl, DualWeyl, ClassicalSimple)):
        return weyl_character(l.weight, rs)
    if isinstance(l, Tilting):
        if rs.label == "A1":
            if l.weight[0] <= 2 * ctx.ell - 2:
                return tilting_character_a1(l.weight[0], ctx)
            return UNKNOWN
        return tilting_character_a2(l.weight, ctx)
    if isinstance(l, Jmod):
        out = Character.unit(rs)
        for i, x in enumerate(l.u):
            if x:
                out = out * frobenius_stretch(tilting_character_a1(x, ctx), ctx, i)
        return out
    if isinstance(l, BdmM):
        ws = bdm_weights(l.nu, ctx)
        return (simple_character(ws["u"], ctx).scale(2) + simple_character(ws["us"], ctx)
                + simple_character(ws["ut"], ctx) + simple_character(ws[""], ctx))
    if isinstance(l, CwMnabla):
        ws = bdm_weights(l.nu, ctx)
        return sum_characters((weyl_character(ws[k], rs) for k in ("u", "us", "ut")), rs)
    if isinstance(l, TruncInjective):
        from .sl2 import trunc_injective_filtration
        filt = trunc_injective_filtration(l.d, l.c, ctx)
        return sum_characters((weyl_character((b,), rs).scale(m) for b, m in filt.items()), rs)
    if isinstance(l, FrobTwist):
        inner = _character_of(l.inner, ctx)
        return inner if inner is UNKNOWN else frobenius_stretch(inner, ctx, l.power)
    if isinstance(l, TensorOf):
        out = Character.unit(rs)
        for p in l.parts:
            ch = _character_of(p, ctx)
            if ch is UNKNOWN:
                return UNKNOWN
            out = out * ch
        return out
    if isinstance(l, Dual):
        return _character_of(l.inner, ctx)
    if isinstance(l, OmegaTwist):
        om = omega_by_gamma(l.gamma, ctx)
        return _relabel(l.inner, ctx, lambda mu: translate_weight(om, mu, ctx))
    if isinstance(l, TranslatedTo):
        if rs.label != "A1":
            return UNKNOWN
        return _relabel(l.inner, ctx, lambda mu: translation_target(l.nu, mu, ctx))
    raise StructureError(f"unknown label {l!r}")


def _relabel(inner: Label, ctx: EllContext, move) -> Character | object:
    ch = _character_of(inner, ctx)
    if ch is UNKNOWN:
        return UNKNOWN
    out = Character(ctx.rs)
    for mu, k in into_weyl_basis(ch).items():
        out = out + weyl_character_any(move(mu), ctx.rs).scale(k)
    return out


# translation


def omega_by_gamma(gamma: Weight, ctx: EllContext) -> ExtAffineElement:
    for om in omega_group(ctx):
        if om.gamma == tuple(gamma):
            return om
    raise StructureError(f"no Omega element with translation part {gamma}")


def translate_weight(om: ExtAffineElement, mu: Weight, ctx: EllContext) -> Weight:
    """y . 0 -> y omega . 0 for y in W_ext."""
    y = element_from_weight(tuple(mu), ctx)
    return ell_dot(y * om, ctx.rs.zero, ctx)


def translation_target(nu: Weight, mu: Weight, ctx: EllContext) -> Weight:
    """Image of the weight x.(omega.0) under T_0^nu: x.(omega.nu)."""
    loc = locate(tuple(mu), ctx)
    for om in omega_group(ctx):
        if ell_dot(om, ctx.rs.zero, ctx) == loc.weight:
            return ell_dot(loc.element, ell_dot(om, tuple(nu), ctx), ctx)
    raise BlockError(f"{mu} is not in the extended principal block")


def _omega_parameter(nu: Weight, om: ExtAffineElement, ctx: EllContext) -> Weight:
    for om1 in omega_group(ctx):
        if ell_dot(om1, ctx.rs.zero, ctx) == tuple(nu):
            return ell_dot(om, tuple(nu), ctx)
    raise BlockError(f"{nu} is not an Omega-translate of 0")


def translate_label(om: ExtAffineElement, l: Label, ctx: EllContext) -> Label:
    """T^omega on labels of the extended principal block."""
    validate(l, ctx)
    if om.is_identity():
        return normalize(l, ctx)
    return normalize(_translate(om, l, ctx), ctx)


def _translate(om: ExtAffineElement, l: Label, ctx: EllContext) -> Label:
    rs = ctx.rs
    if isinstance(l, (Simple, Weyl, DualWeyl, Tilting)):
        return type(l)(translate_weight(om, l.weight, ctx))
    if isinstance(l, BdmM):
        return BdmM(_omega_parameter(l.nu, om, ctx))
    if isinstance(l, CwMnabla):
        return CwMnabla(_omega_parameter(l.nu, om, ctx))
    if isinstance(l, Jmod):
        head = l.u[0] if l.u else 0
        return jmod((translate_weight(om, (head,), ctx)[0],) + l.u[1:])
    if isinstance(l, FrobTwist):
        return TensorOf((Simple(ell_dot(om, rs.zero, ctx)), l))
    if isinstance(l, TensorOf):
        untwisted = [i for i, p in enumerate(l.parts) if _twist_power(p) == 0]
        if not untwisted:
            return TensorOf((Simple(ell_dot(om, rs.zero, ctx)),) + l.parts)
        if len(untwisted) == 1:
            i = untwisted[0]
            parts = list(l.parts)
            parts[i] = _translate(om, parts[i], ctx)
            return TensorOf(tuple(parts))
    if isinstance(l, OmegaTwist):
        total = omega_by_gamma(l.gamma, ctx) * om
        if total.is_identity():
            return l.inner
        return OmegaTwist(_omega_key(total, ctx), l.inner)
    return OmegaTwist(om.gamma, l)


def _omega_key(x: ExtAffineElement, ctx: EllContext) -> Weight:
    for om in omega_group(ctx):
        if om == x:
            return om.gamma
    raise StructureError(f"{x} is not in Omega")


def translate_to(nu: Weight, l: Label, ctx: EllContext) -> Label:
    """T_0^nu on a principal-block label; concrete in type A1, a wrapper otherwise."""
    nu = tuple(nu)
    if not any(nu):
        return normalize(l, ctx)
    if ctx.rs.label != "A1":
        return TranslatedTo(nu, normalize(l, ctx))
    return normalize(_translate_to_a1(nu, normalize(l, ctx), ctx), ctx)


def _translate_to_a1(nu: Weight, l: Label, ctx: EllContext) -> Label:
    if isinstance(l, (Simple, Weyl, DualWeyl, Tilting)):
        return type(l)(translation_target(nu, l.weight, ctx))
    if isinstance(l, Jmod):
        head = l.u[0] if l.u else 0
        return jmod((translation_target(nu, (head,), ctx)[0],) + l.u[1:])
    if isinstance(l, FrobTwist):
        return TensorOf((Simple(nu), l))
    if isinstance(l, TensorOf):
        untwisted = [i for i, p in enumerate(l.parts) if _twist_power(p) == 0]
        if len(untwisted) == 1:
            parts = list(l.parts)
            parts[untwisted[0]] = _translate_to_a1(nu, parts[untwisted[0]], ctx)
            return TensorOf(tuple(parts))
    return TranslatedTo(nu, l)


# duality and filtration dimensions


def dual_label(l: Label) -> Label:
    if isinstance(l, Weyl):
        return DualWeyl(l.weight)
    if isinstance(l, DualWeyl):
        return Weyl(l.weight)
    if isinstance(l, (Simple, Tilting, Jmod, BdmM, ClassicalSimple)):
        return l
    if isinstance(l, FrobTwist):
        return FrobTwist(dual_label(l.inner), l.power)
    if isinstance(l, TensorOf):
        return TensorOf(tuple(dual_label(p) for p in l.parts))
    if isinstance(l, TranslatedTo):
        return TranslatedTo(l.nu, dual_label(l.inner))
    if isinstance(l, OmegaTwist):
        return OmegaTwist(l.gamma, dual_label(l.inner))
    if isinstance(l, Dual):
        return l.inner
    return Dual(l)


def _regular_length(mu: Weight, ctx: EllContext):
    loc = locate(tuple(mu), ctx)
    return length(loc.element, ctx) if loc.regular else UNKNOWN


def max_rho_pairing(l: Label, ctx: EllContext):
    """max of 2(gamma, rho^vee) over composition factors L(gamma)."""
    rs = ctx.rs
    if isinstance(l, _WeightLabel):
        return rs.rho_check_pairing2(l.weight)
    if isinstance(l, Jmod):
        return rs.rho_check_pairing2((sum(x * ctx.ell ** i for i, x in enumerate(l.u)),))
    if isinstance(l, FrobTwist):
        inner = max_rho_pairing(l.inner, ctx)
        return inner if inner is UNKNOWN else ctx.ell ** l.power * inner
    if isinstance(l, TensorOf):
        vals = [max_rho_pairing(p, ctx) for p in l.parts]
        return UNKNOWN if any(v is UNKNOWN for v in vals) else sum(vals)
    if isinstance(l, Dual):
        return max_rho_pairing(l.inner, ctx)
    ch = character_of(l, ctx)
    if ch is UNKNOWN:
        return UNKNOWN
    return max(rs.rho_check_pairing2(mu) for mu in ch.mults)


def _twist_fd(l: FrobTwist, ctx: EllContext):
    if ctx.quantum:
        if l.power == 1 and isinstance(l.inner, ClassicalSimple):
            return ctx.rs.rho_check_pairing2(l.inner.weight)
        return UNKNOWN
    inner = max_rho_pairing(l.inner, ctx)
    return inner if inner is UNKNOWN else ctx.ell ** (l.power - 1) * inner


def _jmod_fd(l: Jmod, ctx: EllContext) -> int:
    # T(u_0) contributes 0; the remaining digits form a first Frobenius twist
    return sum(x * ctx.ell ** (i - 1) for i, x in enumerate(l.u) if i)


def gfd_of(l: Label, ctx: EllContext):
    """Good filtration dimension, or UNKNOWN where no exact value is available."""
    if isinstance(l, (Simple, Weyl)):
        return _regular_length(l.weight, ctx)
    if isinstance(l, Jmod):
        return _jmod_fd(l, ctx)
    if isinstance(l, (DualWeyl, Tilting, TruncInjective, CwMnabla)):
        return 0
    if isinstance(l, BdmM):
        return 2
    if isinstance(l, FrobTwist):
        return _twist_fd(l, ctx)
    if isinstance(l, TensorOf):
        vals = [gfd_of(p, ctx) for p in l.parts]
        return UNKNOWN if any(v is UNKNOWN for v in vals) else sum(vals)
    if isinstance(l, (TranslatedTo, OmegaTwist)):
        return gfd_of(l.inner, ctx)
    if isinstance(l, Dual):
        return wfd_of(l.inner, ctx)
    return UNKNOWN


def wfd_of(l: Label, ctx: EllContext):
    """Weyl filtration dimension, or UNKNOWN."""
    if isinstance(l, (Simple, DualWeyl)):
        return _regular_length(l.weight, ctx)
    if isinstance(l, Jmod):
        return _jmod_fd(l, ctx)
    if isinstance(l, (Weyl, Tilting)):
        return 0
    if isinstance(l, (BdmM, CwMnabla)):
        return 2
    if isinstance(l, TruncInjective):
        return _regular_length((l.d,), ctx) if l.c == l.d else UNKNOWN
    if isinstance(l, FrobTwist):
        return _twist_fd(l, ctx)
    if isinstance(l, TensorOf):
        vals = [wfd_of(p, ctx) for p in l.parts]
        return UNKNOWN if any(v is UNKNOWN for v in vals) else sum(vals)
    if isinstance(l, (TranslatedTo, OmegaTwist)):
        return wfd_of(l.inner, ctx)
    if isinstance(l, Dual):
        return gfd_of(l.inner, ctx)
    return UNKNOWN


# decompositions


def character_checksum(ch: Character) -> str:
    body = canonical_json(sorted([list(k), v] for k, v in ch.mults.items()))
    return hashlib.sha256(body.encode()).hexdigest()[:16]


def _sort_key(item, ctx):
    label, _ = item
    g = gfd_of(label, ctx)
    return (-(g if g is not UNKNOWN else -1), label.dumps())


@dataclass(frozen=True)
class Decomposition:
    """Multiset of labels with the character it is supposed to add up to."""

    ctx: EllContext
    summands: tuple[tuple[Label, int], ...]
    expected: Character | None = field(default=None, compare=False, repr=False)
    complete: bool = True

    @classmethod
    def build(cls, ctx: EllContext, items, expected: Character | None = None,
              complete: bool = True) -> "Decomposition":
        pairs = items.items() if isinstance(items, Mapping) else items
        acc: dict[Label, int] = {}
        for label, mult in pairs:
            label = normalize(label, ctx)
            acc[label] = acc.get(label, 0) + int(mult)
        ordered = sorted(((k, v) for k, v in acc.items() if v), key=lambda it: _sort_key(it, ctx))
        return cls(ctx, tuple(ordered), expected, complete)

    def as_dict(self) -> dict[Label, int]:
        return dict(self.summands)

    def __len__(self):
        return sum(m for _, m in self.summands)

    def labels(self) -> list[Label]:
        return [l for l, _ in self.summands]

    def unknown_count(self) -> int:
        return sum(m for l, m in self.summands if character_of(l, self.ctx) is UNKNOWN)

    def character(self):
        chars = []
        for l, m in self.summands:
            ch = character_of(l, self.ctx)
            if ch is UNKNOWN:
                return UNKNOWN
            chars.append(ch.scale(m))
        return sum_characters(chars, self.ctx.rs)

    def conserved(self) -> bool | None:
        """Whether the summand characters add up to the expected one (None if undecidable)."""
        if self.expected is None or not self.complete:
            return None
        ch = self.character()
        if ch is UNKNOWN:
            return None
        return ch == self.expected

    def to_obj(self) -> dict:
        obj = {
            "type": self.ctx.rs.label,
            "ell": self.ctx.ell,
            "case": self.ctx.case,
            "complete": self.complete,
            "summands": [{"label": l.to_obj(), "multiplicity": m,
                          "gfd": _json_value(gfd_of(l, self.ctx))}
                         for l, m in self.summands],
        }
        if self.expected is not None:
            obj["expected_checksum"] = character_checksum(self.expected)
        return obj

    def dumps(self) -> str:
        return canonical_json(self.to_obj())


def _json_value(v):
    return None if v is UNKNOWN else v


def decomposition_from_obj(obj: Mapping) -> tuple[dict[Label, int], dict]:
    """Parse the summands of a serialized decomposition (context fields returned raw)."""
    summands = {from_obj(s["label"]): int(s["multiplicity"]) for s in obj["summands"]}
    meta = {k: obj[k] for k in ("type", "ell", "case", "complete") if k in obj}
    return summands, meta
